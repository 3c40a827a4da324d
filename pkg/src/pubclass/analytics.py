"""Descriptive statistics, labels, and report data for classifications.

All functions are pure over immutable inputs. Percentiles follow the
nearest-rank rule throughout; "by_article" statistics weight each class by
its member count, so they describe the class size seen by a random article
rather than by a random class.
"""

from __future__ import annotations

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .cluster import Partition
from .corpus import DOC_ARTICLE, DOC_REVIEW, Corpus
from .util import nearest_rank_percentile, round_half_up, weighted_nearest_rank_percentile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassSizeStats:
    mean: float
    median: float
    p10: float
    p90: float
    weighting: str
    n_classes: int


@dataclass(frozen=True)
class AverageClassProfile:
    """How the articles of an average baseline class spread over a partition."""

    spread: int
    selected_class_count: int
    rank_averages: tuple[float, ...]

    @property
    def selected_mean_size(self) -> float:
        return float(sum(self.rank_averages))


@dataclass(frozen=True)
class ClassLabel:
    class_id: int
    components: tuple[str, ...]

    @property
    def label(self) -> str:
        return "//".join(self.components)


@dataclass(frozen=True)
class CaseStudyRow:
    rank: int
    specialty: int
    in_category: int
    total: int

    @property
    def share(self) -> float:
        return self.in_category / self.total


@dataclass(frozen=True)
class CaseStudyTopicRow:
    specialty: int
    topic: int
    in_category: int
    total: int

    @property
    def share(self) -> float:
        return self.in_category / self.total


def class_size_stats(
    partition: Partition, weighting: str = "by_article", min_size_filter: int = 0
) -> ClassSizeStats:
    """Mean, median, P10, P90 of class sizes under the chosen weighting."""
    if weighting not in ("by_class", "by_article"):
        raise ValueError(f"unknown weighting {weighting!r}")
    sizes = partition.class_sizes()
    sizes = sizes[sizes >= min_size_filter]
    if len(sizes) == 0:
        raise ValueError("no class passes the size filter")
    weights = sizes if weighting == "by_article" else np.ones_like(sizes)
    mean = float((sizes * weights).sum() / weights.sum())
    return ClassSizeStats(
        mean=mean,
        median=float(weighted_nearest_rank_percentile(sizes, weights, 50)),
        p10=float(weighted_nearest_rank_percentile(sizes, weights, 10)),
        p90=float(weighted_nearest_rank_percentile(sizes, weights, 90)),
        weighting=weighting,
        n_classes=len(sizes),
    )


def small_class_share(partition: Partition, threshold: int) -> float:
    """Fraction of articles sitting in classes strictly below the threshold."""
    sizes = partition.class_sizes()
    total = sizes.sum()
    if total == 0:
        return 0.0
    return float(sizes[sizes < threshold].sum() / total)


def topics_per_specialty(
    topic_labels: np.ndarray,
    specialty_labels: np.ndarray,
    specialty_min: int = 500,
    topic_min: int = 50,
) -> dict[str, float]:
    """Distribution of qualifying topic counts across qualifying specialties.

    Label arrays run over publications; -1 marks unclassified entries.
    Specialties below ``specialty_min`` articles and topics below
    ``topic_min`` articles are disregarded.
    """
    valid = (topic_labels >= 0) & (specialty_labels >= 0)
    topics = topic_labels[valid]
    specs = specialty_labels[valid]
    spec_sizes = Counter(specs.tolist())
    topic_sizes = Counter(topics.tolist())
    spec_of_topic = {}
    for t, s in zip(topics.tolist(), specs.tolist()):
        spec_of_topic[t] = s
    counts_by_spec = Counter()
    for t, size in topic_sizes.items():
        if size >= topic_min and spec_sizes[spec_of_topic[t]] >= specialty_min:
            counts_by_spec[spec_of_topic[t]] += 1
    qualifying = [s for s, size in spec_sizes.items() if size >= specialty_min]
    if not qualifying:
        raise ValueError("no specialty meets the size threshold")
    counts = np.sort(np.array([counts_by_spec.get(s, 0) for s in qualifying], dtype=np.int64))
    freq = Counter(counts.tolist())
    top = max(freq.values())
    mode = min(v for v, f in freq.items() if f == top)
    return {
        "n_specialties": len(counts),
        "mean": float(counts.mean()),
        "median": float(nearest_rank_percentile(counts, 50)),
        "mode": float(mode),
        "p10": float(nearest_rank_percentile(counts, 10)),
        "p90": float(nearest_rank_percentile(counts, 90)),
    }


def yearly_class_stats(
    labels_by_pub: np.ndarray, corpus: Corpus, years: list[int]
) -> list[dict[str, float]]:
    """Per-year article counts and weighted size stats of class-year slices.

    Every class is restricted to the articles of the given year; statistics
    are weighted by articles, as in the overall distribution measures. Years
    with no classified articles produce a zero row and a warning.
    """
    rows = []
    classified = labels_by_pub >= 0
    for year in years:
        mask = classified & (corpus.years == year)
        n_articles = int(mask.sum())
        if n_articles == 0:
            logger.warning("no classified articles in year %d", year)
            rows.append({"year": year, "n_articles": 0, "mean": 0.0, "median": 0.0, "p10": 0.0, "p90": 0.0})
            continue
        year_labels = labels_by_pub[mask]
        sizes = np.bincount(year_labels)
        sizes = sizes[sizes > 0]
        rows.append(
            {
                "year": year,
                "n_articles": n_articles,
                "mean": float((sizes * sizes).sum() / sizes.sum()),
                "median": float(weighted_nearest_rank_percentile(sizes, sizes, 50)),
                "p10": float(weighted_nearest_rank_percentile(sizes, sizes, 10)),
                "p90": float(weighted_nearest_rank_percentile(sizes, sizes, 90)),
            }
        )
    return rows


def average_class_profile(baseline_classes: dict, labels_by_pub: np.ndarray) -> AverageClassProfile:
    """Average distribution of a baseline class over partition classes, by rank.

    The spread is the rounded mean number of partition classes the articles
    of a baseline class fall into. Baseline classes hitting exactly that many
    partition classes are selected; their per-class article counts, sorted
    descending, are averaged rank by rank.
    """
    spreads = {}
    counts_per_class = {}
    for key in sorted(baseline_classes):
        members = np.asarray(baseline_classes[key])
        labels = labels_by_pub[members]
        if np.any(labels < 0):
            raise ValueError(f"baseline class {key} has unclassified members")
        counter = Counter(labels.tolist())
        spreads[key] = len(counter)
        counts_per_class[key] = sorted(counter.values(), reverse=True)
    spread = round_half_up(sum(spreads.values()) / len(spreads))
    selected = [key for key, s in spreads.items() if s == spread]
    if not selected:
        available = sorted(set(spreads.values()), key=lambda s: (abs(s - spread), s))
        raise ValueError(
            f"no baseline class spreads over exactly {spread} partition classes; "
            f"nearest available counts: {available[:3]}"
        )
    table = np.array([counts_per_class[key] for key in selected], dtype=np.float64)
    rank_averages = tuple(float(x) for x in table.mean(axis=0))
    return AverageClassProfile(
        spread=spread,
        selected_class_count=len(selected),
        rank_averages=rank_averages,
    )


def keyword_document_counts(corpus: Corpus) -> tuple[np.ndarray, int]:
    """Per-keyword document counts and the number of keyword-bearing documents."""
    counts = np.bincount(corpus.keyword_ids, minlength=len(corpus.keywords))
    n_docs = len(np.unique(corpus.keyword_pubs))
    return counts, n_docs


def label_class(class_id: int, members: np.ndarray, corpus: Corpus, k: int = 3) -> ClassLabel:
    """Label a class with its top-k most distinctive keywords, upper-cased.

    A keyword scores by in-class occurrence times the log inverse document
    frequency over all keyword-bearing articles; a uniform keyword scores
    zero everywhere, so ranking then falls back to in-class frequency with
    lexicographic ties.
    """
    doc_counts, n_docs = keyword_document_counts(corpus)
    member_set = np.zeros(corpus.n_publications, dtype=bool)
    member_set[members] = True
    in_class = member_set[corpus.keyword_pubs]
    occurrences = Counter(corpus.keyword_ids[in_class].tolist())
    if not occurrences:
        logger.warning("class %s has no keyword occurrences", class_id)
        return ClassLabel(class_id=class_id, components=())
    scored = []
    for kw_id, occ in occurrences.items():
        idf = math.log(n_docs / doc_counts[kw_id]) if doc_counts[kw_id] else 0.0
        scored.append((-occ * idf, -occ, corpus.keywords[kw_id]))
    scored.sort()
    components = tuple(kw.upper() for _, _, kw in scored[:k])
    return ClassLabel(class_id=class_id, components=components)


def label_all_classes(labels_by_pub: np.ndarray, corpus: Corpus, k: int = 3) -> list[ClassLabel]:
    """Labels for every class id present in the label array."""
    out = []
    for class_id in np.unique(labels_by_pub[labels_by_pub >= 0]):
        members = np.flatnonzero(labels_by_pub == class_id)
        out.append(label_class(int(class_id), members, corpus, k=k))
    return out


def category_case_study(
    category: str,
    year_range: tuple[int, int],
    topic_labels: np.ndarray,
    specialty_labels: np.ndarray,
    corpus: Corpus,
    top_n: int = 10,
    topics_per_specialty_n: int = 10,
) -> tuple[list[CaseStudyRow], list[CaseStudyTopicRow]]:
    """Distribution of a subject category's articles over specialties.

    The category set holds the classified articles published in journals
    carrying the category within the year range; specialty and topic totals
    cover the same period. Ranked by article count in the category set.
    """
    journals = corpus.journals_with_category(category)
    if not journals:
        raise ValueError(f"unknown or unassigned subject category {category!r}")
    lo, hi = year_range
    is_article = (corpus.doc_types == DOC_ARTICLE) | (corpus.doc_types == DOC_REVIEW)
    in_period = is_article & (corpus.years >= lo) & (corpus.years <= hi) & (specialty_labels >= 0)
    journal_mask = np.isin(corpus.journal_of, sorted(journals))
    in_category = in_period & journal_mask

    spec_totals = Counter(specialty_labels[in_period].tolist())
    spec_counts = Counter(specialty_labels[in_category].tolist())
    ranked = sorted(spec_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
    rows = [
        CaseStudyRow(rank=r + 1, specialty=int(s), in_category=c, total=spec_totals[s])
        for r, (s, c) in enumerate(ranked)
    ]

    topic_rows = []
    for row in rows:
        spec_mask = specialty_labels == row.specialty
        topic_totals = Counter(topic_labels[in_period & spec_mask].tolist())
        topic_counts = Counter(topic_labels[in_category & spec_mask].tolist())
        top_topics = sorted(topic_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:topics_per_specialty_n]
        for t, c in top_topics:
            topic_rows.append(
                CaseStudyTopicRow(
                    specialty=row.specialty, topic=int(t), in_category=c, total=topic_totals[t]
                )
            )
    return rows, topic_rows


def export_alluvial(flows) -> str:
    """Render flows as ``Source [amount] Target`` lines.

    Amounts are rounded half-up for display; flows that round to zero are
    omitted. Source and target names must not contain square brackets.
    """
    lines = []
    for source, amount, target in flows:
        if "[" in str(source) or "]" in str(source) or "[" in str(target) or "]" in str(target):
            raise ValueError("flow names must not contain square brackets")
        rounded = round_half_up(float(amount))
        if rounded <= 0:
            continue
        lines.append(f"{source} [{rounded}] {target}")
    return "\n".join(lines) + ("\n" if lines else "")


_ALLUVIAL_LINE = re.compile(r"^(?P<source>.*) \[(?P<amount>\d+)\] (?P<target>.*)$")


def parse_alluvial(text: str) -> list[tuple[str, int, str]]:
    """Inverse of :func:`export_alluvial`, modulo the display rounding."""
    flows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        match = _ALLUVIAL_LINE.match(line)
        if not match:
            raise ValueError(f"line {lineno} does not match 'Source [amount] Target': {line!r}")
        flows.append((match["source"], int(match["amount"]), match["target"]))
    return flows


def profile_flows(profile: AverageClassProfile, source: str = "Average baseline class"):
    """Flows of an average-class profile: one per rank."""
    return [
        (source, amount, f"Rank {rank}")
        for rank, amount in enumerate(profile.rank_averages, start=1)
    ]
