"""Comparing classifications and sweeping the resolution parameter.

The adjusted Rand index is computed from the contingency table with exact
integer arithmetic: with element counts up to the hundreds of millions the
intermediate pair-count products overflow 64-bit integers, so the sums are
carried in Python integers before the final division.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytics import class_size_stats
from .baseline import BaselineClassification
from .cluster import ClusterConfig, Partition
from .errors import DataError
from .graph import WeightedGraph
from .hierarchy import HierarchicalClassification, cluster_classes

logger = logging.getLogger(__name__)

ARI_TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ComparisonResult:
    """ARI plus the four pair-count cells behind it.

    ``same_same`` counts element pairs co-classified in both partitions,
    ``same_diff`` pairs together in the first but split in the second, and
    so on. The index is 1 exactly when the partitions agree up to class
    relabeling; values below 0 mean worse-than-chance agreement.
    """

    ari: float
    same_same: int
    same_diff: int
    diff_same: int
    diff_diff: int


@dataclass(frozen=True)
class DerivedClassification:
    """A classification restricted to a baseline's article universe."""

    elements: np.ndarray  # sorted pub indices
    labels: np.ndarray  # dense class ids aligned with elements

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) + 1 if len(self.labels) else 0


@dataclass(frozen=True)
class SweepConfig:
    """Resolution ladder for specialty calibration.

    The default ladder starts at 5e-7 and climbs in 5e-7 steps for six runs.
    With ``adaptive`` set, the ladder keeps extending past an end point while
    the best value sits there, by the same step, up to ``adaptive_max_extra``
    extra runs.
    """

    resolutions: tuple[float, ...] = tuple(5e-7 * i for i in range(1, 7))
    seed: int = 0
    large_class_threshold: int = 500
    adaptive: bool = False
    adaptive_max_extra: int = 8

    def __post_init__(self):
        if len(self.resolutions) == 0:
            raise ValueError("resolution list must not be empty")
        if any(r <= 0 for r in self.resolutions):
            raise ValueError("resolutions must be positive")
        if list(self.resolutions) != sorted(self.resolutions):
            raise ValueError("resolutions must be sorted ascending")


@dataclass(frozen=True)
class SweepRow:
    resolution: float
    ari: float
    n_classes: int
    n_classes_large: int
    mean: float
    median: float
    p10: float
    p90: float


@dataclass
class SweepResult:
    rows: list[SweepRow]
    selected_index: int
    selected_hierarchy: HierarchicalClassification = field(repr=False, default=None)

    @property
    def selected(self) -> SweepRow:
        return self.rows[self.selected_index]


def derive_classification(
    labels_by_pub: np.ndarray, baseline: BaselineClassification
) -> DerivedClassification:
    """Restrict a publication classification to the baseline universe.

    Drops classes with no baseline articles and non-baseline members from
    the rest, which is exactly a restriction: two baseline articles share a
    derived class iff they share a class in the input.
    """
    universe = baseline.universe
    if len(universe) and (int(universe.max()) >= len(labels_by_pub)):
        missing = universe[universe >= len(labels_by_pub)]
        raise DataError(
            f"baseline articles missing from the classification: {_preview(missing)}"
        )
    labels = labels_by_pub[universe]
    uncovered = universe[labels < 0]
    if len(uncovered):
        raise DataError(
            f"baseline articles missing from the classification: {_preview(uncovered)}"
        )
    _, dense = np.unique(labels, return_inverse=True)
    return DerivedClassification(elements=universe, labels=dense.astype(np.int64))


def _preview(ids, limit=10):
    shown = ", ".join(str(int(i)) for i in ids[:limit])
    more = len(ids) - min(len(ids), limit)
    return shown + (f" (+{more} more)" if more > 0 else "")


def adjusted_rand_index(labels_x: np.ndarray, labels_y: np.ndarray) -> ComparisonResult:
    """Chance-adjusted Rand index between two partitions.

    Both arrays classify the same elements positionally. Degenerate total
    agreement (both partitions all-singletons or both one class) yields 1.0.
    """
    labels_x = np.asarray(labels_x)
    labels_y = np.asarray(labels_y)
    if labels_x.shape != labels_y.shape or labels_x.ndim != 1:
        raise ValueError("partitions must classify the same elements")
    n = len(labels_x)
    if n < 2:
        raise ValueError("ARI needs at least two elements")
    _, x = np.unique(labels_x, return_inverse=True)
    _, y = np.unique(labels_y, return_inverse=True)
    kx = int(x.max()) + 1
    ky = int(y.max()) + 1
    cells = np.bincount(x.astype(np.int64) * ky + y, minlength=kx * ky)
    cells = cells[cells > 0]
    row_sums = np.bincount(x, minlength=kx)
    col_sums = np.bincount(y, minlength=ky)

    index = int((cells * (cells - 1) // 2).sum())
    sum_a = int((row_sums.astype(object) * (row_sums - 1) // 2).sum())
    sum_b = int((col_sums.astype(object) * (col_sums - 1) // 2).sum())
    binom = n * (n - 1) // 2

    same_same = index
    same_diff = sum_a - index
    diff_same = sum_b - index
    diff_diff = binom - sum_a - sum_b + index

    numerator = 2 * (index * binom - sum_a * sum_b)
    denominator = (sum_a + sum_b) * binom - 2 * sum_a * sum_b
    ari = 1.0 if denominator == 0 else numerator / denominator
    return ComparisonResult(
        ari=ari,
        same_same=same_same,
        same_diff=same_diff,
        diff_same=diff_same,
        diff_diff=diff_diff,
    )


def run_sweep(
    class_graph: WeightedGraph,
    baseline: BaselineClassification,
    config: SweepConfig,
    topic_partition: Partition,
    topic_labels_by_pub: np.ndarray,
    threads: int = 1,
) -> SweepResult:
    """Cluster the class graph at every resolution and pick the best by ARI.

    Each run produces a specialty level over the fixed topic classes, lifts
    it to publications, restricts it to the baseline universe, and measures
    agreement. Ties within 1e-12 go to the smaller resolution. Runs are
    independent and can execute in parallel; rows always come back in
    resolution order.

    ``topic_labels_by_pub`` holds -1 for unclassified publications and must
    list the classified ones in the same order, with the same class ids, as
    ``topic_partition`` (classified publications ascending equals graph node
    order).
    """
    classified = topic_labels_by_pub[topic_labels_by_pub >= 0]
    if not np.array_equal(classified, topic_partition.labels):
        raise DataError(
            "publication-level topic labels disagree with the topic partition; "
            "rebuild them from the same partition file"
        )
    baseline_labels = baseline.labels()
    args = [
        (class_graph, config, topic_partition, topic_labels_by_pub, baseline, baseline_labels, gamma)
        for gamma in config.resolutions
    ]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_sweep_one, args))
    else:
        outcomes = [_sweep_one(a) for a in args]

    rows = [row for row, _ in outcomes]
    hierarchies = [h for _, h in outcomes]

    if config.adaptive:
        rows, hierarchies = _extend_adaptively(
            rows, hierarchies, class_graph, config, topic_partition, topic_labels_by_pub,
            baseline, baseline_labels,
        )

    selected = 0
    for i, row in enumerate(rows):
        if row.ari > rows[selected].ari + ARI_TIE_TOLERANCE:
            selected = i
    logger.info(
        "sweep selected resolution %.3g with ARI %.4f over %d runs",
        rows[selected].resolution, rows[selected].ari, len(rows),
    )
    return SweepResult(rows=rows, selected_index=selected, selected_hierarchy=hierarchies[selected])


def _sweep_one(args):
    class_graph, config, topic_partition, topic_labels_by_pub, baseline, baseline_labels, gamma = args
    cluster_config = ClusterConfig(resolution=gamma, seed=config.seed)
    hier = cluster_classes(class_graph, cluster_config, topic_partition)
    spec_by_pub = np.where(
        topic_labels_by_pub >= 0,
        hier.specialty_of_topic[np.maximum(topic_labels_by_pub, 0)],
        -1,
    )
    derived = derive_classification(spec_by_pub, baseline)
    ari = adjusted_rand_index(derived.labels, baseline_labels).ari
    spec_partition = hier.specialty_partition()
    stats = class_size_stats(spec_partition, weighting="by_article")
    sizes = spec_partition.class_sizes()
    row = SweepRow(
        resolution=gamma,
        ari=ari,
        n_classes=spec_partition.n_classes,
        n_classes_large=int((sizes >= config.large_class_threshold).sum()),
        mean=stats.mean,
        median=stats.median,
        p10=stats.p10,
        p90=stats.p90,
    )
    return row, hier


def _extend_adaptively(
    rows, hierarchies, class_graph, config, topic_partition, topic_labels_by_pub,
    baseline, baseline_labels,
):
    """Keep stepping past whichever ladder end holds the current best."""
    extra = 0
    while extra < config.adaptive_max_extra:
        best = max(range(len(rows)), key=lambda i: rows[i].ari)
        if best == 0 and rows[0].resolution > ARI_TIE_TOLERANCE:
            step = rows[1].resolution - rows[0].resolution if len(rows) > 1 else rows[0].resolution / 2
            gamma = rows[0].resolution - step
            if gamma <= 0:
                break
            position = 0
        elif best == len(rows) - 1:
            step = rows[-1].resolution - rows[-2].resolution if len(rows) > 1 else rows[-1].resolution
            gamma = rows[-1].resolution + step
            position = len(rows)
        else:
            break
        row, hier = _sweep_one(
            (class_graph, config, topic_partition, topic_labels_by_pub, baseline, baseline_labels, gamma)
        )
        rows.insert(position, row)
        hierarchies.insert(position, hier)
        extra += 1
    return rows, hierarchies
