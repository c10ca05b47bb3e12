from weaksupcon.mildata.assign_pseudo_labels import assign_pseudo_labels
from weaksupcon.mildata.bag import NEGATIVE, POSITIVE, Bag, DatasetSplit, SyntheticSpec
from weaksupcon.mildata.feature_store import read_feature_store, write_feature_store
from weaksupcon.mildata.generate_synthetic import generate_synthetic, witness_count
from weaksupcon.mildata.standard_benchmark import standard_benchmark

__all__ = [
    "NEGATIVE",
    "POSITIVE",
    "Bag",
    "DatasetSplit",
    "SyntheticSpec",
    "assign_pseudo_labels",
    "generate_synthetic",
    "read_feature_store",
    "standard_benchmark",
    "witness_count",
    "write_feature_store",
]
