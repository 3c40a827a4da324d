"""Operations on partitions of partitions: topic classes clustered into specialties.

Class relatedness is the average edge weight over all member pairs of two
classes. The class graph built from those values is re-clustered to produce
the coarse level, and every node keeps its fine class, giving a two-level
structure where each topic belongs to exactly one specialty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cluster import ClusterConfig, Partition, slm_cluster
from .graph import WeightedGraph, _from_directed


@dataclass(frozen=True)
class HierarchicalClassification:
    """Two linked levels over the same nodes.

    ``topics`` assigns each node a topic class; ``specialty_of_topic`` maps
    each topic class to its single specialty, so the topic level refines the
    specialty level by construction.
    """

    topics: Partition
    specialty_of_topic: np.ndarray

    @property
    def n_topics(self) -> int:
        return self.topics.n_classes

    @property
    def n_specialties(self) -> int:
        return int(self.specialty_of_topic.max()) + 1 if len(self.specialty_of_topic) else 0

    def node_specialties(self) -> np.ndarray:
        """Specialty label per node: the specialty of the node's topic."""
        return self.specialty_of_topic[self.topics.labels]

    def specialty_partition(self) -> Partition:
        return Partition.from_labels(self.node_specialties())


def class_relatedness(graph: WeightedGraph, partition: Partition, class_a: int, class_b: int) -> float:
    """Average weight over the m*n node pairs spanning two distinct classes."""
    if class_a == class_b:
        raise ValueError("relatedness of a class with itself is undefined")
    partition.check_total(graph)
    members_a = partition.members(class_a)
    members_b = partition.members(class_b)
    if len(members_a) == 0 or len(members_b) == 0:
        raise ValueError("relatedness requires two non-empty classes")
    in_b = np.zeros(graph.n_nodes, dtype=bool)
    in_b[members_b] = True
    total = 0.0
    for node in members_a:
        nbrs, wts = graph.neighbors(int(node))
        total += float(wts[in_b[nbrs]].sum())
    return total / (len(members_a) * len(members_b))


def aggregate_to_class_graph(graph: WeightedGraph, partition: Partition) -> WeightedGraph:
    """One node per class; edge weights are the pairwise-average relatedness.

    Class nodes have unit size: each class is a single clustering unit at the
    next level, with no reweighting by member count. Classes without cross
    edges become isolated nodes.
    """
    partition.check_total(graph)
    n_classes = partition.n_classes
    labels = partition.labels
    deg = np.diff(graph.indptr)
    src = labels[np.repeat(np.arange(graph.n_nodes), deg)]
    dst = labels[graph.indices]
    keep = src != dst
    src, dst, wts = src[keep], dst[keep], graph.weights[keep]
    counts = partition.class_sizes().astype(np.float64)
    wts = wts / (counts[src] * counts[dst])
    return _from_directed(
        n_classes,
        src,
        dst,
        wts,
        np.ones(n_classes, dtype=np.int64),
        np.arange(n_classes, dtype=np.int64),
    )


def cluster_classes(
    class_graph: WeightedGraph, config: ClusterConfig, base_partition: Partition
) -> HierarchicalClassification:
    """Cluster the class graph of ``base_partition`` into parent classes."""
    if class_graph.n_nodes != base_partition.n_classes:
        raise ValueError(
            f"class graph has {class_graph.n_nodes} nodes but the base partition "
            f"has {base_partition.n_classes} classes"
        )
    parents = slm_cluster(class_graph, config)
    return HierarchicalClassification(topics=base_partition, specialty_of_topic=parents.labels)
