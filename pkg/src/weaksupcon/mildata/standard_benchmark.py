from weaksupcon.mildata.bag import SyntheticSpec


def standard_benchmark():
    """The frozen desk-scale benchmark used by the end-to-end checks."""
    return SyntheticSpec(
        d=32,
        neg_clusters=3,
        pos_clusters=2,
        cluster_sigma=0.5,
        cluster_separation=3.0,
        witness_rate=0.1,
        bag_size_range=(40, 60),
        counts=(30, 30, 10, 10, 15, 15),
        seed=7,
    )
