"""Synthetic corpora with planted two-level structure.

Articles are organized into topics nested inside specialties. Citation
edges appear with three probabilities: highest inside a topic, lower between
topics of the same specialty, lowest across specialties. Journals draw most
of their articles from one dominant specialty; keywords are topic-tagged
tokens. The emitted files use exactly the ingestion formats, plus a ground
truth table, so the whole pipeline can run against a known answer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import IngestionManifest
from .tsvio import write_tsv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlantSpec:
    n_specialties: int = 4
    topics_per_specialty: tuple[int, int] = (5, 5)
    articles_per_topic: tuple[int, int] = (60, 60)
    p_intra_topic: float = 0.15
    p_intra_specialty: float = 0.02
    p_background: float = 0.001
    n_journals: int = 20
    journal_purity: float = 0.8
    years: tuple[int, int] = (2010, 2010)
    seed: int = 0

    def __post_init__(self):
        if not (self.p_intra_topic > self.p_intra_specialty > self.p_background >= 0):
            raise ValueError(
                "edge probabilities must satisfy intra_topic > intra_specialty > background >= 0"
            )
        for name in ("n_specialties", "n_journals"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("topics_per_specialty", "articles_per_topic"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a range of positive integers")
        if not 0.0 <= self.journal_purity <= 1.0:
            raise ValueError("journal_purity must lie in [0, 1]")
        if self.years[1] < self.years[0]:
            raise ValueError("years range is inverted")


@dataclass
class GroundTruth:
    pub_ids: list[str]
    topics: np.ndarray
    specialties: np.ndarray
    journal_specialty: dict[str, int]  # journal id -> dominant specialty


def generate(spec: PlantSpec, out_dir) -> tuple[IngestionManifest, GroundTruth]:
    """Write a synthetic corpus into ``out_dir`` and return its manifest.

    Fully deterministic for a fixed spec: the same seed reproduces every
    output file byte for byte.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(np.uint64(spec.seed))

    topic_spec, topic_sizes = _plan_structure(spec, rng)
    topics = np.repeat(np.arange(len(topic_sizes)), topic_sizes)
    specialties = topic_spec[topics]
    n = len(topics)
    if spec.n_journals > n:
        raise ValueError(f"{spec.n_journals} journals cannot be filled from {n} articles")

    pub_ids = [f"p{i:06d}" for i in range(n)]
    years = rng.integers(spec.years[0], spec.years[1] + 1, size=n)
    doc_types = np.where(rng.random(n) < 0.9, "Article", "Review")

    edges = _sample_edges(spec, topics, topic_spec, rng)
    journal_of, journal_specialty = _assign_journals(spec, specialties, rng)
    keywords = _sample_keywords(topics, specialties, rng)

    write_tsv(
        out_dir / "publications.tsv",
        ("pub_id", "year", "doc_type", "journal_id"),
        (
            (pub_ids[i], int(years[i]), str(doc_types[i]), _journal_name(journal_of[i]))
            for i in range(n)
        ),
    )
    write_tsv(
        out_dir / "citations.tsv",
        ("citing_id", "cited_id"),
        ((pub_ids[u], pub_ids[v]) for u, v in edges),
    )
    write_tsv(
        out_dir / "journal_categories.tsv",
        ("journal_id", "category_name"),
        (
            (_journal_name(j), f"Field {journal_specialty[_journal_name(j)]}")
            for j in range(spec.n_journals)
        ),
    )
    write_tsv(
        out_dir / "keywords.tsv",
        ("pub_id", "keyword"),
        ((pub_ids[i], kw) for i, kw in keywords),
    )
    write_tsv(
        out_dir / "ground_truth.tsv",
        ("pub_id", "topic_id", "specialty_id"),
        ((pub_ids[i], int(topics[i]), int(specialties[i])) for i in range(n)),
    )
    manifest = IngestionManifest(
        publications=out_dir / "publications.tsv",
        citations=out_dir / "citations.tsv",
        journal_categories=out_dir / "journal_categories.tsv",
        keywords=out_dir / "keywords.tsv",
        ground_truth=out_dir / "ground_truth.tsv",
    )
    manifest.write(out_dir / "manifest.txt")
    logger.info(
        "generated %d articles, %d topics, %d specialties, %d citations",
        n, len(topic_sizes), spec.n_specialties, len(edges),
    )
    truth = GroundTruth(
        pub_ids=pub_ids,
        topics=topics,
        specialties=specialties,
        journal_specialty=journal_specialty,
    )
    return manifest, truth


def load_ground_truth(path) -> GroundTruth:
    """Read a ground_truth.tsv back into arrays (journal map not stored)."""
    from .tsvio import read_tsv_rows

    pub_ids, topics, specs = [], [], []
    for _, (pid, t, s) in read_tsv_rows(path, ("pub_id", "topic_id", "specialty_id")):
        pub_ids.append(pid)
        topics.append(int(t))
        specs.append(int(s))
    return GroundTruth(
        pub_ids=pub_ids,
        topics=np.asarray(topics, dtype=np.int64),
        specialties=np.asarray(specs, dtype=np.int64),
        journal_specialty={},
    )


def _plan_structure(spec, rng):
    lo, hi = spec.topics_per_specialty
    topics_per = rng.integers(lo, hi + 1, size=spec.n_specialties)
    topic_spec = np.repeat(np.arange(spec.n_specialties), topics_per)
    lo, hi = spec.articles_per_topic
    topic_sizes = rng.integers(lo, hi + 1, size=len(topic_spec))
    return topic_spec, topic_sizes


def _sample_edges(spec, topics, topic_spec, rng):
    """Bernoulli-sample undirected pairs block by block, then orient randomly."""
    n_topics = len(topic_spec)
    starts = np.searchsorted(topics, np.arange(n_topics))
    ends = np.searchsorted(topics, np.arange(n_topics), side="right")
    edges = []
    for a in range(n_topics):
        for b in range(a, n_topics):
            if a == b:
                p = spec.p_intra_topic
            elif topic_spec[a] == topic_spec[b]:
                p = spec.p_intra_specialty
            else:
                p = spec.p_background
            if p == 0.0:
                continue
            rows = np.arange(starts[a], ends[a])
            cols = np.arange(starts[b], ends[b])
            hits = rng.random((len(rows), len(cols))) < p
            if a == b:
                hits = np.triu(hits, k=1)
            ui, vi = np.nonzero(hits)
            for u, v in zip(rows[ui].tolist(), cols[vi].tolist()):
                edges.append((u, v))
    flip = rng.random(len(edges)) < 0.5
    return [(v, u) if f else (u, v) for (u, v), f in zip(edges, flip)]


def _assign_journals(spec, specialties, rng):
    """Fill journal slots, drawing the purity share from the dominant specialty."""
    n = len(specialties)
    n_journals = spec.n_journals
    dominant = np.arange(n_journals) % spec.n_specialties
    slots = np.full(n_journals, n // n_journals, dtype=np.int64)
    slots[: n % n_journals] += 1

    pools = {s: list(np.flatnonzero(specialties == s)) for s in range(spec.n_specialties)}
    journal_of = np.full(n, -1, dtype=np.int64)
    spill = 0
    for j in range(n_journals):
        n_pure = int(round(spec.journal_purity * slots[j]))
        pool = pools[int(dominant[j])]
        take = min(n_pure, len(pool))
        spill += n_pure - take
        picked = rng.choice(len(pool), size=take, replace=False) if take else np.array([], dtype=int)
        for idx in sorted(picked.tolist(), reverse=True):
            journal_of[pool.pop(idx)] = j
    if spill:
        logger.warning("dominant-specialty pools ran short by %d slots; filling uniformly", spill)
    # distribute the rest uniformly over remaining capacity
    unassigned = np.flatnonzero(journal_of < 0)
    unassigned = unassigned[rng.permutation(len(unassigned))]
    capacity = slots - np.bincount(journal_of[journal_of >= 0], minlength=n_journals)
    targets = np.repeat(np.arange(n_journals), capacity)
    for pub, j in zip(unassigned.tolist(), targets.tolist()):
        journal_of[pub] = j
    journal_specialty = {_journal_name(j): int(dominant[j]) for j in range(n_journals)}
    return journal_of, journal_specialty


def _sample_keywords(topics, specialties, rng):
    keywords = []
    for i in range(len(topics)):
        keywords.append((i, f"topic {int(topics[i])} term"))
        if rng.random() < 0.5:
            keywords.append((i, f"field {int(specialties[i])} theme"))
        if rng.random() < 0.2:
            keywords.append((i, f"misc {int(rng.integers(10))}"))
    return keywords


def _journal_name(j):
    return f"J{j:03d}"
