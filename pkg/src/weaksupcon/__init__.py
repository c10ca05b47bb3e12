"""Weakly supervised contrastive representation learning for multiple-instance data."""

__version__ = "0.1.0"
