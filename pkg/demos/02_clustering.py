"""
Constant-Potts clustering and the resolution parameter
======================================================

Shows how the resolution steers granularity on a graph whose best split is
obvious: two triangles joined by a single bridge edge.
"""

import numpy as np

from pubclass import ClusterConfig, WeightedGraph, cpm_quality, slm_cluster

edges = [
    (0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),   # left triangle
    (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0),   # right triangle
    (2, 3, 1.0),                              # bridge
]
u, v, w = zip(*edges)
graph = WeightedGraph.from_undirected_edges(6, u, v, w)

# The quality of a partition is the weight kept inside classes minus the
# resolution times the number of same-class pairs. At resolution 0.5 the
# two-triangle split scores 6 - 0.5*6 = 3, beating one big class (7 - 7.5).
for gamma in (0.05, 0.5, 2.0):
    part = slm_cluster(graph, ClusterConfig(resolution=gamma, seed=0))
    quality = cpm_quality(graph, part, gamma)
    print(f"resolution {gamma:<5}: {part.n_classes} classes, quality {quality:+.3f}, "
          f"labels {part.labels.tolist()}")

# low resolution merges everything; high resolution isolates every node;
# in between the bridge is cut exactly where community structure lives

# determinism: the same config always reproduces the same partition
a = slm_cluster(graph, ClusterConfig(resolution=0.5, seed=123))
b = slm_cluster(graph, ClusterConfig(resolution=0.5, seed=123))
assert np.array_equal(a.labels, b.labels)
print("\nsame seed, same partition:", a.labels.tolist())
