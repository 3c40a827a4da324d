"""
Distribution reports, labels, and alluvial export
=================================================

Runs the analytics toolbox over a synthetic two-level classification:
class size statistics, topics per specialty, keyword labels, the average
baseline class profile, and the text export for sankey-style diagrams.
"""

import tempfile

import numpy as np

from pubclass import (
    BaselineConfig,
    ClusterConfig,
    Partition,
    PlantSpec,
    aggregate_to_class_graph,
    build_citation_network,
    cluster_classes,
    filter_articles,
    generate,
    load_corpus,
    run_filter_chain,
    slm_cluster,
)
from pubclass.analytics import (
    average_class_profile,
    class_size_stats,
    export_alluvial,
    label_all_classes,
    profile_flows,
    small_class_share,
    topics_per_specialty,
    yearly_class_stats,
)

workdir = tempfile.mkdtemp(prefix="pubclass_demo_")
manifest, truth = generate(PlantSpec(years=(2008, 2012), seed=9), workdir)
corpus = load_corpus(manifest)
view = filter_articles(corpus)
graph = build_citation_network(view)

topics = slm_cluster(graph, ClusterConfig(resolution=2e-3, seed=1))
hier = cluster_classes(aggregate_to_class_graph(graph, topics),
                       ClusterConfig(resolution=1.25e-4, seed=2), topics)
topic_by_pub = np.full(corpus.n_publications, -1, dtype=np.int64)
topic_by_pub[view.members] = topics.labels
spec_by_pub = np.full(corpus.n_publications, -1, dtype=np.int64)
spec_by_pub[view.members] = hier.node_specialties()

# size distributions, weighted the two ways
spec_part = Partition.from_labels(spec_by_pub[view.members])
for weighting in ("by_class", "by_article"):
    s = class_size_stats(spec_part, weighting=weighting)
    print(f"specialty sizes {weighting}: mean {s.mean:.1f}, median {s.median:.0f}, "
          f"P10 {s.p10:.0f}, P90 {s.p90:.0f}")
print(f"share of articles in classes under 100: {small_class_share(spec_part, 100):.3f}")

stats = topics_per_specialty(topic_by_pub, spec_by_pub, specialty_min=100, topic_min=20)
print(f"\ntopics per specialty: mean {stats['mean']:.1f}, median {stats['median']:.0f}, "
      f"mode {stats['mode']:.0f}")

print("\nper-year class sizes:")
for row in yearly_class_stats(spec_by_pub, corpus, [2008, 2010, 2012]):
    print(f"  {row['year']}: {row['n_articles']} articles, weighted median {row['median']:.0f}")

# keyword labels, most distinctive first
print("\nspecialty labels:")
for cl in label_all_classes(spec_by_pub, corpus, k=3):
    print(f"  {cl.class_id}: {cl.label}")

# how a typical baseline class spreads over the specialties
baseline, _ = run_filter_chain(
    corpus, BaselineConfig(year=2010, overlap_threshold=0.25, seed=3), view.members
)
profile = average_class_profile(
    {str(j): members for j, members in baseline.classes.items()}, spec_by_pub
)
print(f"\naverage baseline class spreads over {profile.spread} specialties "
      f"({profile.selected_class_count} classes selected)")
print("alluvial export:")
print(export_alluvial(profile_flows(profile)))
