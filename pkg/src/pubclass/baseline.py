"""Journal-derived baseline classification.

A one-year slice of journals is narrowed down by a filter chain until the
survivors plausibly stand for one specialty each: category exclusion, a
size-percentile window, a self-citation ratio floor, and grouping of
journals whose reference lists overlap. One representative journal per
overlap group becomes a baseline class; its articles are intersected with
the article universe of the reference topic classification so both
classifications cover exactly the same publications.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import DOC_ARTICLE, DOC_REVIEW, Corpus
from .errors import DataError
from .util import nearest_rank_percentile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BaselineConfig:
    year: int = 2010
    excluded_categories: frozenset[str] = frozenset({"Multidisciplinary Sciences"})
    size_percentile_low: float = 5.0
    size_percentile_high: float = 50.0
    self_citation_min: float = 0.10
    overlap_threshold: float = 0.08
    seed: int = 0

    def __post_init__(self):
        if not self.size_percentile_low < self.size_percentile_high:
            raise ValueError("size_percentile_low must be below size_percentile_high")
        for name in ("self_citation_min", "overlap_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a fraction in [0, 1], got {value}")


@dataclass
class JournalProfile:
    """One journal's year slice: members, self-citations, active references."""

    journal: int
    article_ids: np.ndarray
    self_citations: int
    active_references: int
    reference_counts: dict[int, int] = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.article_ids)

    @property
    def self_citation_ratio(self) -> float | None:
        """Self-citations over active references; None when undefined."""
        if self.active_references == 0:
            return None
        return self.self_citations / self.active_references


@dataclass(frozen=True)
class OverlapRecord:
    journal_a: int
    journal_b: int
    shared: int
    refs_a: int
    refs_b: int
    overlap: float


@dataclass
class BaselineClassification:
    """Disjoint journal classes over the common article set."""

    classes: dict[int, np.ndarray]  # journal index -> sorted pub indices
    universe: np.ndarray  # sorted union of all classes

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def labels(self) -> np.ndarray:
        """Dense class label per universe element, in universe order."""
        out = np.empty(len(self.universe), dtype=np.int64)
        pos = {int(p): i for i, p in enumerate(self.universe)}
        for dense, journal in enumerate(sorted(self.classes)):
            for p in self.classes[journal]:
                out[pos[int(p)]] = dense
        return out


def profile_journals(corpus: Corpus, config: BaselineConfig) -> list[JournalProfile]:
    """Build one profile per journal with at least one article in the year slice.

    Self-citations are references from the slice articles to publications of
    the same journal (any year). Active references are all stored references
    of the slice articles; references outside the corpus were already dropped
    at ingestion.
    """
    is_article = (corpus.doc_types == DOC_ARTICLE) | (corpus.doc_types == DOC_REVIEW)
    in_slice = is_article & (corpus.years == config.year) & (corpus.journal_of >= 0)
    members: dict[int, list[int]] = {}
    for pub in np.flatnonzero(in_slice):
        members.setdefault(int(corpus.journal_of[pub]), []).append(int(pub))

    citing_in_slice = in_slice[corpus.citing]
    src_journal = corpus.journal_of[corpus.citing[citing_in_slice]]
    targets = corpus.cited[citing_in_slice]
    is_self = corpus.journal_of[targets] == src_journal

    ref_counter: dict[int, Counter] = {j: Counter() for j in members}
    self_counts: dict[int, int] = {j: 0 for j in members}
    for j, t, s in zip(src_journal.tolist(), targets.tolist(), is_self.tolist()):
        ref_counter[j][t] += 1
        if s:
            self_counts[j] += 1

    profiles = []
    for j in sorted(members):
        refs = ref_counter[j]
        profiles.append(
            JournalProfile(
                journal=j,
                article_ids=np.asarray(sorted(members[j]), dtype=np.int64),
                self_citations=self_counts[j],
                active_references=sum(refs.values()),
                reference_counts=dict(refs),
            )
        )
    return profiles


def apply_category_exclusion(
    profiles: list[JournalProfile], corpus: Corpus, config: BaselineConfig
) -> list[JournalProfile]:
    """Drop journals assigned any excluded subject category."""
    excluded = set()
    for category in config.excluded_categories:
        excluded |= corpus.journals_with_category(category)
    kept = [p for p in profiles if p.journal not in excluded]
    if not kept and profiles:
        logger.warning("category exclusion removed every journal")
    return kept


def apply_size_window(profiles: list[JournalProfile], config: BaselineConfig) -> list[JournalProfile]:
    """Keep journals inside the nearest-rank percentile window of sizes, inclusive."""
    if not profiles:
        raise ValueError("size window of an empty profile list")
    sizes = np.sort(np.array([p.size for p in profiles], dtype=np.int64))
    low = nearest_rank_percentile(sizes, config.size_percentile_low)
    high = nearest_rank_percentile(sizes, config.size_percentile_high)
    return [p for p in profiles if low <= p.size <= high]


def apply_self_citation_filter(
    profiles: list[JournalProfile], config: BaselineConfig
) -> list[JournalProfile]:
    """Keep journals whose self-citation ratio is defined and at least the floor."""
    kept = []
    for p in profiles:
        ratio = p.self_citation_ratio
        if ratio is not None and ratio >= config.self_citation_min:
            kept.append(p)
    return kept


def journal_overlap(profile_a: JournalProfile, profile_b: JournalProfile) -> OverlapRecord:
    """Reference-list overlap of two journals.

    Reference lists carry multiplicity: a target cited by three slice
    articles of the journal counts three times. The shared count per target
    is the smaller of the two multiplicities.
    """
    a1 = profile_a.active_references
    a2 = profile_b.active_references
    if a1 == 0 or a2 == 0:
        raise ValueError("overlap requires both journals to have cited references")
    ca, cb = profile_a.reference_counts, profile_b.reference_counts
    if len(cb) < len(ca):
        ca, cb = cb, ca
    shared = sum(min(n, cb[t]) for t, n in ca.items() if t in cb)
    y = 0.5 * (shared / a1 + shared / a2)
    return OverlapRecord(
        journal_a=profile_a.journal,
        journal_b=profile_b.journal,
        shared=shared,
        refs_a=a1,
        refs_b=a2,
        overlap=y,
    )


def overlap_records(profiles: list[JournalProfile]) -> list[OverlapRecord]:
    """Overlap records for every journal pair sharing at least one cited target.

    Pairs with disjoint reference lists have overlap 0 and are skipped; an
    inverted index over cited targets keeps the enumeration near-linear in
    the number of references.
    """
    by_journal = {p.journal: p for p in profiles}
    cited_by: dict[int, list[int]] = {}
    for p in profiles:
        for target in p.reference_counts:
            cited_by.setdefault(target, []).append(p.journal)
    pairs = set()
    for journals in cited_by.values():
        journals.sort()
        for i in range(len(journals)):
            for j in range(i + 1, len(journals)):
                pairs.add((journals[i], journals[j]))
    return [journal_overlap(by_journal[a], by_journal[b]) for a, b in sorted(pairs)]


def group_overlapping(
    profiles: list[JournalProfile],
    records: list[OverlapRecord],
    config: BaselineConfig,
    seed: int | None = None,
) -> list[JournalProfile]:
    """Group journals connected by overlap >= threshold; keep one per group.

    Grouping is the transitive closure of the pairwise relation, so two
    journals land together even without a direct overlap. The representative
    of each group is drawn uniformly at random from the seeded generator;
    singleton groups keep their sole journal.
    """
    index = {p.journal: i for i, p in enumerate(profiles)}
    parent = list(range(len(profiles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rec in records:
        if rec.overlap >= config.overlap_threshold:
            if rec.journal_a in index and rec.journal_b in index:
                ra, rb = find(index[rec.journal_a]), find(index[rec.journal_b])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[int]] = {}
    for i in range(len(profiles)):
        groups.setdefault(find(i), []).append(i)
    rng = np.random.default_rng(np.uint64(config.seed if seed is None else seed))
    representatives = []
    for root in sorted(groups):
        group = groups[root]
        pick = group[int(rng.integers(len(group)))] if len(group) > 1 else group[0]
        representatives.append(profiles[pick])
    return representatives


def build_baseline(
    representatives: list[JournalProfile], topic_universe: np.ndarray
) -> BaselineClassification:
    """Intersect each representative's articles with the topic universe.

    Classes that lose all their articles are dropped. Raises when nothing
    is left, since an empty baseline cannot calibrate anything.
    """
    bound = int(topic_universe.max()) + 1 if len(topic_universe) else 0
    covered = np.zeros(bound, dtype=bool)
    covered[topic_universe] = True
    classes = {}
    for p in representatives:
        ids = p.article_ids
        keep = np.zeros(len(ids), dtype=bool)
        in_range = ids < bound
        keep[in_range] = covered[ids[in_range]]
        inside = ids[keep]
        if len(inside):
            classes[p.journal] = inside
    if not classes:
        raise DataError("baseline classification is empty after intersecting with the topic universe")
    universe = np.unique(np.concatenate(list(classes.values())))
    return BaselineClassification(classes=classes, universe=universe)


def run_filter_chain(
    corpus: Corpus, config: BaselineConfig, topic_universe: np.ndarray
) -> tuple[BaselineClassification, list[tuple[str, int]]]:
    """Full chain in order, with a per-stage audit ladder of journal counts."""
    profiles = profile_journals(corpus, config)
    audit = [("year_slice", len(profiles))]
    profiles = apply_category_exclusion(profiles, corpus, config)
    audit.append(("category_exclusion", len(profiles)))
    profiles = apply_size_window(profiles, config)
    audit.append(("size_window", len(profiles)))
    profiles = apply_self_citation_filter(profiles, config)
    audit.append(("self_citation", len(profiles)))
    records = overlap_records(profiles)
    representatives = group_overlapping(profiles, records, config)
    audit.append(("overlap_grouping", len(representatives)))
    audit.append(("articles_initial", sum(p.size for p in representatives)))
    baseline = build_baseline(representatives, topic_universe)
    audit.append(("baseline_classes", baseline.n_classes))
    audit.append(("articles_final", len(baseline.universe)))
    return baseline, audit
