from weaksupcon.numcore.tensor import Graph, Tensor, backward, build_graph
from weaksupcon.numcore.rng import Rng, derive_rng, rng_streams
from weaksupcon.numcore.pca import PCAResult, pca_top2
from weaksupcon.numcore.gradcheck import finite_diff_check

__all__ = [
    "Graph",
    "PCAResult",
    "Rng",
    "Tensor",
    "backward",
    "build_graph",
    "derive_rng",
    "finite_diff_check",
    "pca_top2",
    "rng_streams",
]
