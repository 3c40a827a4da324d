"""Graph partitioning by constant-Potts-model optimization with smart local moving.

The quality of a partition is

    Q = sum over same-class pairs (i, j) of  a_ij - resolution * s_i * s_j

where a_ij is the edge weight (0 for non-edges) and s_i the node size.
Raising the resolution makes smaller classes optimal. The optimizer runs
rounds of local moving, then refines every class from singletons, aggregates
the refined pieces into a reduced graph, and repeats on the reduction; outer
iterations restart the whole scheme from the previous partition until the
quality gain drops to the configured tolerance.

All randomness (node visiting order) comes from the config seed; runs are
bit-reproducible. Ties between equally good target classes go to the
smallest class id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph, _from_directed


@dataclass(frozen=True)
class ClusterConfig:
    resolution: float
    seed: int = 0
    max_outer_iterations: int = 100
    quality_tolerance: float = 1e-12

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValueError(f"resolution must be positive, got {self.resolution}")
        if self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be at least 1")
        if self.quality_tolerance < 0:
            raise ValueError("quality_tolerance must be non-negative")


@dataclass(frozen=True)
class Partition:
    """Total assignment of graph nodes to classes 0..n_classes-1, all non-empty."""

    labels: np.ndarray
    n_classes: int

    @classmethod
    def from_labels(cls, labels: np.ndarray) -> "Partition":
        """Renumber class ids densely by first appearance in node order."""
        labels = _renumber(np.asarray(labels, dtype=np.int64))
        labels.setflags(write=False)
        return cls(labels=labels, n_classes=int(labels.max()) + 1 if len(labels) else 0)

    @classmethod
    def singletons(cls, n_nodes: int) -> "Partition":
        labels = np.arange(n_nodes, dtype=np.int64)
        labels.setflags(write=False)
        return cls(labels=labels, n_classes=n_nodes)

    def class_sizes(self) -> np.ndarray:
        """Number of nodes per class."""
        return np.bincount(self.labels, minlength=self.n_classes)

    def members(self, class_id: int) -> np.ndarray:
        return np.flatnonzero(self.labels == class_id)

    def check_total(self, graph: WeightedGraph) -> None:
        if len(self.labels) != graph.n_nodes:
            raise ValueError(
                f"partition covers {len(self.labels)} nodes, graph has {graph.n_nodes}"
            )
        if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= self.n_classes):
            raise ValueError("class ids out of range")
        if self.n_classes and np.any(self.class_sizes() == 0):
            raise ValueError("empty class in partition")


def cpm_quality(graph: WeightedGraph, partition: Partition, resolution: float) -> float:
    """Constant-Potts quality of a partition; higher is better."""
    partition.check_total(graph)
    return _quality(graph, partition.labels, partition.n_classes, resolution)


def _quality(graph, labels, n_classes, resolution):
    if graph.n_nodes == 0:
        return 0.0
    u, v, w = graph.edge_list()
    intra = float(w[labels[u] == labels[v]].sum())
    sizes = graph.node_sizes.astype(np.float64)
    totals = np.bincount(labels, weights=sizes, minlength=n_classes)
    sq = np.bincount(labels, weights=sizes * sizes, minlength=n_classes)
    pair_term = float(((totals * totals - sq) / 2.0).sum())
    return intra - resolution * pair_term


def slm_cluster(graph: WeightedGraph, config: ClusterConfig) -> Partition:
    """Optimize the CPM quality of a partition of ``graph``.

    Starts from singletons. Each outer iteration runs one full
    local-moving / refinement / aggregation recursion seeded from the current
    partition and keeps the result only when it improves quality by more
    than ``config.quality_tolerance``. Isolated nodes end up in singleton
    classes; an empty graph yields an empty partition.
    """
    n = graph.n_nodes
    if n == 0:
        return Partition.from_labels(np.empty(0, dtype=np.int64))
    rng = np.random.default_rng(np.uint64(config.seed))
    gamma = config.resolution
    labels = np.arange(n, dtype=np.int64)
    quality = _quality(graph, labels, n, gamma)
    for _ in range(config.max_outer_iterations):
        candidate = _slm_round(graph, labels.copy(), gamma, config.quality_tolerance, rng)
        candidate = _renumber(candidate)
        cand_quality = _quality(graph, candidate, int(candidate.max()) + 1, gamma)
        if cand_quality - quality <= config.quality_tolerance:
            if cand_quality > quality:
                labels, quality = candidate, cand_quality
            break
        labels, quality = candidate, cand_quality
    return Partition.from_labels(labels)


def _slm_round(graph, labels, gamma, tol, rng):
    """One full local-moving + refinement + aggregation descent."""
    projections = []  # node -> reduced-node mapping, one per level
    level_graph = graph
    while True:
        labels = _local_moving(level_graph, labels, gamma, tol, rng)
        labels = _renumber(labels)
        n = level_graph.n_nodes
        n_classes = int(labels.max()) + 1
        if n_classes == n:
            break

        # split every class from singletons so aggregation can undo bad merges
        pieces = np.zeros(n, dtype=np.int64)
        parent_class = []
        next_piece = 0
        for c in range(n_classes):
            members = np.flatnonzero(labels == c)
            if len(members) == 1:
                pieces[members] = next_piece
                parent_class.append(c)
                next_piece += 1
                continue
            sub = level_graph.subgraph(members)
            sub_labels = _local_moving(sub, np.arange(len(members), dtype=np.int64), gamma, tol, rng)
            sub_labels = _renumber(sub_labels)
            pieces[members] = sub_labels + next_piece
            k = int(sub_labels.max()) + 1
            parent_class.extend([c] * k)
            next_piece += k

        if next_piece == n:
            # refinement dissolved every class; aggregating would reproduce
            # the current graph, so this round has converged
            break

        level_graph = _aggregate(level_graph, pieces, next_piece)
        projections.append(pieces)
        # nodes of the reduced graph start out grouped as their parent class
        labels = np.asarray(parent_class, dtype=np.int64)

    for pieces in reversed(projections):
        labels = labels[pieces]
    return labels


def _local_moving(graph, labels, gamma, tol, rng):
    """Move nodes between classes while any single move beats the tolerance.

    Nodes are visited in a seeded random permutation, re-drawn every pass.
    A node may move to a class it has edges into, stay put, or start a new
    empty class; equal gains resolve to the smallest class id, with the
    fresh class ranked last.
    """
    n = graph.n_nodes
    labels = _renumber(labels)
    sizes = graph.node_sizes
    indptr, indices, weights = graph.indptr, graph.indices, graph.weights
    while True:
        n_classes = int(labels.max()) + 1
        # headroom for one fresh class per node in this pass
        class_size = np.zeros(n_classes + n + 1, dtype=np.int64)
        np.add.at(class_size, labels, sizes)
        fresh = n_classes
        moved = False
        for i in rng.permutation(n):
            i = int(i)
            si = int(sizes[i])
            home = int(labels[i])
            class_size[home] -= si
            lo, hi = indptr[i], indptr[i + 1]
            acc: dict[int, float] = {}
            for j, w in zip(indices[lo:hi].tolist(), weights[lo:hi].tolist()):
                c = int(labels[j])
                acc[c] = acc.get(c, 0.0) + w
            stay_gain = acc.get(home, 0.0) - gamma * si * class_size[home]
            best_class = home
            best_gain = stay_gain
            candidates = sorted(acc.keys())
            if class_size[home] > 0:
                candidates.append(fresh)  # leaving home for a new class is an option
            for c in candidates:
                if c == home:
                    continue
                gain = acc.get(c, 0.0) - gamma * si * class_size[c]
                if gain > best_gain and gain - stay_gain > tol:
                    best_gain = gain
                    best_class = c
            if best_class != home:
                labels[i] = best_class
                class_size[best_class] += si
                if best_class == fresh:
                    fresh += 1
                moved = True
            else:
                class_size[home] += si
        labels = _renumber(labels)
        if not moved:
            return labels


def _aggregate(graph, pieces, n_pieces):
    """Reduce the graph to one node per piece; inter-piece weights are summed.

    Internal edges and internal size pairs contribute a constant to the
    quality, so dropping them leaves the optimum unchanged.
    """
    deg = np.diff(graph.indptr)
    src = pieces[np.repeat(np.arange(graph.n_nodes), deg)]
    dst = pieces[graph.indices]
    keep = src != dst
    sizes = np.bincount(pieces, weights=graph.node_sizes, minlength=n_pieces).astype(np.int64)
    return _from_directed(n_pieces, src[keep], dst[keep], graph.weights[keep], sizes, None)


def _renumber(labels):
    """Dense class ids ordered by first appearance."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first, kind="stable"), kind="stable")
    return order[inverse].astype(np.int64)
