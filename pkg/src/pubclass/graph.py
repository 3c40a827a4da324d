"""Undirected weighted graphs in compressed sparse row form.

Graphs are immutable after construction (the backing arrays are marked
read-only) and safe to share across threads. Node ids are dense integers
0..n-1; an optional ``node_ids`` array carries the caller's identifiers
(publication indices, class ids) alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric weighted graph without self-edges.

    ``indptr``/``indices``/``weights`` hold both directions of every edge,
    neighbor lists sorted by node id. ``node_sizes`` is 1 for publication
    graphs and the clustering-unit size for aggregated graphs.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    node_sizes: np.ndarray
    node_ids: np.ndarray | None = field(default=None)

    @property
    def n_nodes(self) -> int:
        return len(self.indptr) - 1

    @property
    def n_edges(self) -> int:
        """Number of undirected edges."""
        return len(self.indices) // 2

    @property
    def total_weight(self) -> float:
        """Sum of undirected edge weights."""
        return float(self.weights.sum()) / 2.0

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def isolated_nodes(self) -> np.ndarray:
        """Indices of nodes with no incident edges."""
        return np.flatnonzero(self.degrees() == 0)

    def neighbors(self, node: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[node], self.indptr[node + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def edge_weight(self, u: int, v: int) -> float:
        """Weight of edge (u, v) in either direction, 0.0 if absent."""
        nbrs, wts = self.neighbors(u)
        pos = np.searchsorted(nbrs, v)
        if pos < len(nbrs) and nbrs[pos] == v:
            return float(wts[pos])
        return 0.0

    def edge_list(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Canonical undirected edge list (u, v, w) with u < v."""
        u = np.repeat(np.arange(self.n_nodes), self.degrees())
        keep = u < self.indices
        return u[keep], self.indices[keep], self.weights[keep]

    def subgraph(self, nodes: np.ndarray) -> "WeightedGraph":
        """Induced subgraph on ``nodes``; new ids follow the order given."""
        nodes = np.asarray(nodes, dtype=np.int64)
        remap = np.full(self.n_nodes, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        us, vs, ws = [], [], []
        for new_u, old_u in enumerate(nodes):
            nbrs, wts = self.neighbors(old_u)
            inside = remap[nbrs] >= 0
            us.append(np.full(int(inside.sum()), new_u, dtype=np.int64))
            vs.append(remap[nbrs[inside]])
            ws.append(wts[inside])
        u = np.concatenate(us) if us else np.empty(0, dtype=np.int64)
        v = np.concatenate(vs) if vs else np.empty(0, dtype=np.int64)
        w = np.concatenate(ws) if ws else np.empty(0, dtype=np.float64)
        # both directions already present in the gathered arrays
        return _from_directed(len(nodes), u, v, w, self.node_sizes[nodes], None)

    def validate(self) -> None:
        """Check structural invariants; raises AssertionError on violation."""
        assert len(self.indptr) >= 1 and self.indptr[0] == 0
        assert self.indptr[-1] == len(self.indices) == len(self.weights)
        assert len(self.node_sizes) == self.n_nodes
        assert np.all(self.node_sizes > 0)
        assert np.all(self.weights >= 0)
        for i in range(self.n_nodes):
            nbrs, _ = self.neighbors(i)
            assert np.all(np.diff(nbrs) > 0), f"unsorted or duplicate neighbors at {i}"
            assert i not in nbrs, f"self-edge at {i}"
        for u, v, w in zip(*self.edge_list()):
            assert self.edge_weight(int(v), int(u)) == w, "asymmetric weight"

    @classmethod
    def from_undirected_edges(
        cls,
        n_nodes: int,
        u: np.ndarray,
        v: np.ndarray,
        w: np.ndarray,
        node_sizes: np.ndarray | None = None,
        node_ids: np.ndarray | None = None,
    ) -> "WeightedGraph":
        """Build from an undirected edge list; parallel entries get their weights summed.

        Self-pairs are rejected. Orientation of the inputs does not matter.
        """
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        w = np.asarray(w, dtype=np.float64)
        if np.any(u == v):
            raise ValueError("self-edges are not allowed")
        both_u = np.concatenate([u, v])
        both_v = np.concatenate([v, u])
        both_w = np.concatenate([w, w])
        return _from_directed(n_nodes, both_u, both_v, both_w, node_sizes, node_ids)


def _from_directed(n_nodes, u, v, w, node_sizes, node_ids):
    """Assemble CSR from directed entries that already contain both orientations."""
    key = u * np.int64(n_nodes) + v
    order = np.argsort(key, kind="stable")
    key = key[order]
    w = w[order]
    uniq, start = np.unique(key, return_index=True)
    # sum weights of duplicate entries; segment reduction over sorted keys
    seg = np.add.reduceat(w, start) if len(w) else np.empty(0, dtype=np.float64)
    su = (uniq // n_nodes).astype(np.int64)
    sv = (uniq % n_nodes).astype(np.int64)
    indptr = np.zeros(n_nodes + 1, dtype=np.int64)
    np.add.at(indptr, su + 1, 1)
    np.cumsum(indptr, out=indptr)
    if node_sizes is None:
        node_sizes = np.ones(n_nodes, dtype=np.int64)
    else:
        node_sizes = np.asarray(node_sizes, dtype=np.int64)
    graph = WeightedGraph(
        indptr=indptr,
        indices=sv,
        weights=seg,
        node_sizes=node_sizes,
        node_ids=None if node_ids is None else np.asarray(node_ids),
    )
    for arr in (graph.indptr, graph.indices, graph.weights, graph.node_sizes):
        arr.setflags(write=False)
    if graph.node_ids is not None:
        graph.node_ids.setflags(write=False)
    return graph
