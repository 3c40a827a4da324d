"""
From topics to specialties: clustering the classes of a classification
=======================================================================

The coarse level is not clustered from scratch: topic classes become nodes
of a relatedness graph, and that graph is partitioned again. Every topic
then belongs to exactly one specialty, and publications inherit their
topic's specialty.
"""

import numpy as np

from pubclass import (
    ClusterConfig,
    Partition,
    WeightedGraph,
    aggregate_to_class_graph,
    class_relatedness,
    cluster_classes,
)

# a publication graph with four planted topics (0-9, 10-19, 20-29, 30-39);
# topics 0+1 form one field, topics 2+3 another
rng = np.random.default_rng(4)
edges = []
for block in range(4):
    nodes = range(block * 10, block * 10 + 10)
    for i in nodes:
        for j in nodes:
            if i < j and rng.random() < 0.6:
                edges.append((i, j, 1.0))
for a, b in [(0, 1), (2, 3)]:  # related topic pairs share some citations
    for i in range(a * 10, a * 10 + 10):
        for j in range(b * 10, b * 10 + 10):
            if rng.random() < 0.08:
                edges.append((i, j, 1.0))
u, v, w = zip(*edges)
graph = WeightedGraph.from_undirected_edges(40, u, v, w)

topics = Partition.from_labels(np.repeat(np.arange(4), 10))

# relatedness = average edge weight over all cross pairs of two topics
print("topic relatedness:")
for a in range(4):
    for b in range(a + 1, 4):
        r = class_relatedness(graph, topics, a, b)
        print(f"  topics {a}-{b}: {r:.4f}")

class_graph = aggregate_to_class_graph(graph, topics)
print(f"\nclass graph: {class_graph.n_nodes} topic nodes, {class_graph.n_edges} edges")

hier = cluster_classes(class_graph, ClusterConfig(resolution=0.02, seed=0), topics)
print(f"specialties found: {hier.n_specialties}")
print("specialty of each topic:", hier.specialty_of_topic.tolist())

# hierarchy soundness: a publication's specialty is its topic's specialty
pub_specialties = hier.node_specialties()
for t in range(hier.n_topics):
    members = np.flatnonzero(topics.labels == t)
    assert len(set(pub_specialties[members].tolist())) == 1
print("every topic sits inside exactly one specialty")
