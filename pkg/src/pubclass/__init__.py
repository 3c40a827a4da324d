"""Two-level publication classification from citation networks.

The library turns id-level publication tables into a topic/specialty
hierarchy: it builds a normalized direct-citation network, partitions it by
constant-Potts-model optimization with smart local moving, derives a
journal-based baseline classification, and calibrates the specialty
resolution by sweeping it against the baseline with the adjusted Rand
index. Analytics and export helpers reproduce the usual reports
(size distributions, labels, case studies, alluvial data).

See the demos/ directory for narrative walkthroughs of each capability and
the ``pubclass`` command for the staged pipeline.
"""

from .baseline import (
    BaselineClassification,
    BaselineConfig,
    JournalProfile,
    OverlapRecord,
    apply_category_exclusion,
    apply_self_citation_filter,
    apply_size_window,
    build_baseline,
    group_overlapping,
    journal_overlap,
    overlap_records,
    profile_journals,
    run_filter_chain,
)
from .cluster import ClusterConfig, Partition, cpm_quality, slm_cluster
from .corpus import (
    Corpus,
    CorpusView,
    IngestionManifest,
    build_citation_network,
    filter_articles,
    load_corpus,
)
from .errors import DataError, PubclassError, UsageError
from .evaluation import (
    ComparisonResult,
    DerivedClassification,
    SweepConfig,
    SweepResult,
    adjusted_rand_index,
    derive_classification,
    run_sweep,
)
from .graph import WeightedGraph
from .hierarchy import (
    HierarchicalClassification,
    aggregate_to_class_graph,
    class_relatedness,
    cluster_classes,
)
from .synth import GroundTruth, PlantSpec, generate, load_ground_truth

__version__ = "0.1.0"

__all__ = [
    "BaselineClassification",
    "BaselineConfig",
    "ClusterConfig",
    "ComparisonResult",
    "Corpus",
    "CorpusView",
    "DataError",
    "DerivedClassification",
    "GroundTruth",
    "HierarchicalClassification",
    "IngestionManifest",
    "JournalProfile",
    "OverlapRecord",
    "Partition",
    "PlantSpec",
    "PubclassError",
    "SweepConfig",
    "SweepResult",
    "UsageError",
    "WeightedGraph",
    "adjusted_rand_index",
    "aggregate_to_class_graph",
    "apply_category_exclusion",
    "apply_self_citation_filter",
    "apply_size_window",
    "build_baseline",
    "build_citation_network",
    "class_relatedness",
    "cluster_classes",
    "cpm_quality",
    "derive_classification",
    "filter_articles",
    "generate",
    "group_overlapping",
    "journal_overlap",
    "load_corpus",
    "load_ground_truth",
    "overlap_records",
    "profile_journals",
    "run_filter_chain",
    "run_sweep",
    "slm_cluster",
]
