from dataclasses import dataclass, field

import numpy as np


@dataclass
class Checkpoint:
    """
    Trained parameters plus the provenance needed to rebuild the model.

    architecture describes the model (kind and widths); params maps tensor names
    to arrays in manifest order; provenance holds the config hash and loss mode.
    """

    architecture: dict
    seed: int
    epoch: int
    params: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def param_arrays(self):
        return {name: np.asarray(value, dtype=np.float64) for name, value in self.params.items()}
