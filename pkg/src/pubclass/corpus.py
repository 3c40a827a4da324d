"""Publication corpus: ingestion, indexing, and the direct-citation network.

The corpus starts from four resolved id-level TSV tables (publications,
citations, journal categories, keywords) named by a small key=value manifest.
External opaque ids are re-indexed to dense integers internally; the mapping
is kept on the corpus and restored on export.
"""

from __future__ import annotations

import array
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .graph import WeightedGraph
from .tsvio import read_tsv_rows

logger = logging.getLogger(__name__)

DOC_ARTICLE = 0
DOC_REVIEW = 1
DOC_OTHER = 2
DOC_TYPE_CODES = {"Article": DOC_ARTICLE, "Review": DOC_REVIEW, "Other": DOC_OTHER}
DOC_TYPE_NAMES = {v: k for k, v in DOC_TYPE_CODES.items()}

PUBLICATIONS_HEADER = ("pub_id", "year", "doc_type", "journal_id")
CITATIONS_HEADER = ("citing_id", "cited_id")
JOURNAL_CATEGORIES_HEADER = ("journal_id", "category_name")
KEYWORDS_HEADER = ("pub_id", "keyword")


@dataclass
class IngestionManifest:
    """Paths of the four input tables plus ingestion policies."""

    publications: Path
    citations: Path
    journal_categories: Path
    keywords: Path
    ground_truth: Path | None = None
    dangling_policy: str = "drop"  # "drop" (warn) or "reject"
    year_min: int = 1900
    year_max: int = 2100

    def __post_init__(self):
        if self.dangling_policy not in ("drop", "reject"):
            raise DataError(f"unknown dangling_policy {self.dangling_policy!r}")
        if self.year_min > self.year_max:
            raise DataError("year_min must not exceed year_max")

    @classmethod
    def load(cls, path) -> "IngestionManifest":
        """Parse a key=value manifest; relative paths resolve against its directory."""
        path = Path(path)
        if not path.exists():
            raise DataError("manifest file not found", path=str(path))
        base = path.parent
        values: dict[str, str] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise DataError(f"expected key=value, got {line!r}", path=str(path), line=lineno)
                key, _, value = line.partition("=")
                values[key.strip()] = value.strip()
        missing = [k for k in ("publications", "citations", "journal_categories", "keywords") if k not in values]
        if missing:
            raise DataError(f"manifest missing keys: {', '.join(missing)}", path=str(path))
        kwargs = {
            "publications": base / values["publications"],
            "citations": base / values["citations"],
            "journal_categories": base / values["journal_categories"],
            "keywords": base / values["keywords"],
        }
        if values.get("ground_truth"):
            kwargs["ground_truth"] = base / values["ground_truth"]
        if "dangling_policy" in values:
            kwargs["dangling_policy"] = values["dangling_policy"]
        for key in ("year_min", "year_max"):
            if key in values:
                try:
                    kwargs[key] = int(values[key])
                except ValueError:
                    raise DataError(f"{key} must be an integer", path=str(path)) from None
        return cls(**kwargs)

    def write(self, path) -> None:
        from .tsvio import atomic_open

        path = Path(path)
        with atomic_open(path) as fh:
            for key in ("publications", "citations", "journal_categories", "keywords", "ground_truth"):
                value = getattr(self, key)
                if value is not None:
                    fh.write(f"{key}={Path(value).name}\n")
            fh.write(f"dangling_policy={self.dangling_policy}\n")
            fh.write(f"year_min={self.year_min}\n")
            fh.write(f"year_max={self.year_max}\n")


@dataclass
class Corpus:
    """Loaded, validated, densely indexed corpus. Immutable after construction."""

    pub_ids: list[str]
    pub_index: dict[str, int]
    years: np.ndarray
    doc_types: np.ndarray
    journal_of: np.ndarray  # journal index per publication, -1 when absent
    journal_ids: list[str]
    journal_index: dict[str, int]
    citing: np.ndarray  # directed, deduplicated, self-loops removed
    cited: np.ndarray
    journal_categories: dict[int, tuple[str, ...]]
    keyword_pubs: np.ndarray  # parallel arrays of deduplicated (publication, keyword) pairs
    keyword_ids: np.ndarray
    keywords: list[str]
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def n_publications(self) -> int:
        return len(self.pub_ids)

    @property
    def n_citations(self) -> int:
        return len(self.citing)

    def journals_with_category(self, category: str) -> set[int]:
        return {j for j, cats in self.journal_categories.items() if category in cats}


@dataclass
class CorpusView:
    """Subset of a corpus's publications, in ascending corpus-index order."""

    corpus: Corpus
    members: np.ndarray

    @property
    def size(self) -> int:
        return len(self.members)

    def positions(self) -> np.ndarray:
        """corpus index -> view position, -1 outside the view."""
        pos = np.full(self.corpus.n_publications, -1, dtype=np.int64)
        pos[self.members] = np.arange(len(self.members))
        return pos


def load_corpus(manifest: IngestionManifest) -> Corpus:
    """Load and cross-validate the four input tables.

    Duplicate rows are collapsed. Relation rows naming unknown publications
    follow the manifest's dangling policy: "drop" keeps going with a warning,
    "reject" fails on the first one. Self-citations are always removed.
    """
    pub_ids, pub_index, years, doc_types, journal_of, journal_ids, journal_index = _load_publications(manifest)
    citing, cited, n_rows, n_dangling, n_self, n_dup = _load_citations(manifest, pub_index)
    categories, n_cat_rows = _load_journal_categories(manifest, journal_index, journal_ids)
    kw_pubs, kw_ids, keywords, n_kw_rows, n_kw_dangling = _load_keywords(manifest, pub_index)

    counts = {
        "publications": len(pub_ids),
        "citation_rows": n_rows,
        "citations": len(citing),
        "citations_dropped_dangling": n_dangling,
        "citations_dropped_self": n_self,
        "citations_dropped_duplicate": n_dup,
        "journals": len(journal_ids),
        "journal_category_rows": n_cat_rows,
        "categories": len({c for cats in categories.values() for c in cats}),
        "keyword_rows": n_kw_rows,
        "keyword_assignments": len(kw_pubs),
        "keywords_dropped_dangling": n_kw_dangling,
        "distinct_keywords": len(keywords),
    }
    corpus = Corpus(
        pub_ids=pub_ids,
        pub_index=pub_index,
        years=years,
        doc_types=doc_types,
        journal_of=journal_of,
        journal_ids=journal_ids,
        journal_index=journal_index,
        citing=citing,
        cited=cited,
        journal_categories=categories,
        keyword_pubs=kw_pubs,
        keyword_ids=kw_ids,
        keywords=keywords,
        counts=counts,
    )
    logger.info(
        "loaded corpus: %d publications, %d citations, %d journals, %d keyword assignments",
        counts["publications"], counts["citations"], counts["journals"], counts["keyword_assignments"],
    )
    return corpus


def _load_publications(manifest):
    pub_ids: list[str] = []
    pub_index: dict[str, int] = {}
    years: list[int] = []
    doc_types: list[int] = []
    journal_raw: list[str] = []
    path = str(manifest.publications)
    for lineno, (pid, year_s, doc_s, jid) in read_tsv_rows(manifest.publications, PUBLICATIONS_HEADER):
        pid = pid.strip()
        if not pid:
            raise DataError("empty pub_id", path=path, line=lineno)
        try:
            year = int(year_s)
        except ValueError:
            raise DataError(f"year {year_s!r} is not an integer", path=path, line=lineno) from None
        if not manifest.year_min <= year <= manifest.year_max:
            raise DataError(
                f"year {year} outside allowed range {manifest.year_min}-{manifest.year_max}",
                path=path,
                line=lineno,
            )
        if doc_s not in DOC_TYPE_CODES:
            raise DataError(f"unknown doc_type {doc_s!r}", path=path, line=lineno)
        jid = jid.strip()
        if pid in pub_index:
            idx = pub_index[pid]
            same = years[idx] == year and doc_types[idx] == DOC_TYPE_CODES[doc_s] and journal_raw[idx] == jid
            if same:
                continue  # exact duplicate row, drop silently
            raise DataError(f"conflicting duplicate publication {pid!r}", path=path, line=lineno)
        pub_index[pid] = len(pub_ids)
        pub_ids.append(pid)
        years.append(year)
        doc_types.append(DOC_TYPE_CODES[doc_s])
        journal_raw.append(jid)

    journal_ids: list[str] = []
    journal_index: dict[str, int] = {}
    journal_of = np.full(len(pub_ids), -1, dtype=np.int64)
    for i, jid in enumerate(journal_raw):
        if not jid:
            continue
        if jid not in journal_index:
            journal_index[jid] = len(journal_ids)
            journal_ids.append(jid)
        journal_of[i] = journal_index[jid]
    return (
        pub_ids,
        pub_index,
        np.asarray(years, dtype=np.int32),
        np.asarray(doc_types, dtype=np.int8),
        journal_of,
        journal_ids,
        journal_index,
    )


def _load_citations(manifest, pub_index):
    path = str(manifest.citations)
    # compact int buffers: corpora reach tens of millions of rows
    citing = array.array("q")
    cited = array.array("q")
    n_rows = 0
    n_dangling = 0
    n_self = 0
    for lineno, (src, dst) in read_tsv_rows(manifest.citations, CITATIONS_HEADER):
        n_rows += 1
        u = pub_index.get(src.strip())
        v = pub_index.get(dst.strip())
        if u is None or v is None:
            if manifest.dangling_policy == "reject":
                missing = src if u is None else dst
                raise DataError(f"citation names unknown publication {missing!r}", path=path, line=lineno)
            n_dangling += 1
            continue
        if u == v:
            n_self += 1
            continue
        citing.append(u)
        cited.append(v)
    if n_dangling:
        logger.warning("%s: dropped %d citation rows naming unknown publications", path, n_dangling)
    if n_self:
        logger.debug("%s: dropped %d self-citation rows", path, n_self)
    citing_arr = np.asarray(citing, dtype=np.int64)
    cited_arr = np.asarray(cited, dtype=np.int64)
    # deduplicate directed pairs, preserving nothing but the set
    if len(citing_arr):
        key = citing_arr * np.int64(len(pub_index)) + cited_arr
        uniq = np.unique(key)
        n_dup = len(citing_arr) - len(uniq)
        citing_arr = (uniq // len(pub_index)).astype(np.int64)
        cited_arr = (uniq % len(pub_index)).astype(np.int64)
    else:
        n_dup = 0
    return citing_arr, cited_arr, n_rows, n_dangling, n_self, n_dup


def _load_journal_categories(manifest, journal_index, journal_ids):
    path = str(manifest.journal_categories)
    pairs: set[tuple[int, str]] = set()
    n_rows = 0
    for lineno, (jid, cat) in read_tsv_rows(manifest.journal_categories, JOURNAL_CATEGORIES_HEADER):
        n_rows += 1
        jid = jid.strip()
        cat = cat.strip()
        if not cat:
            raise DataError("empty category_name", path=path, line=lineno)
        if jid not in journal_index:
            # journal carries no publication in this corpus; index it anyway so
            # category listings stay complete
            journal_index[jid] = len(journal_ids)
            journal_ids.append(jid)
        pairs.add((journal_index[jid], cat))
    categories: dict[int, tuple[str, ...]] = {}
    for j, cat in sorted(pairs):
        categories.setdefault(j, ())
        categories[j] = categories[j] + (cat,)
    return categories, n_rows


def _load_keywords(manifest, pub_index):
    path = str(manifest.keywords)
    kw_index: dict[str, int] = {}
    keywords: list[str] = []
    pairs: set[tuple[int, int]] = set()
    n_rows = 0
    n_dangling = 0
    for lineno, (pid, kw) in read_tsv_rows(manifest.keywords, KEYWORDS_HEADER):
        n_rows += 1
        kw = kw.strip()
        if not kw:
            raise DataError("empty keyword", path=path, line=lineno)
        idx = pub_index.get(pid.strip())
        if idx is None:
            if manifest.dangling_policy == "reject":
                raise DataError(f"keyword row names unknown publication {pid!r}", path=path, line=lineno)
            n_dangling += 1
            continue
        if kw not in kw_index:
            kw_index[kw] = len(keywords)
            keywords.append(kw)
        pairs.add((idx, kw_index[kw]))
    if n_dangling:
        logger.warning("%s: dropped %d keyword rows naming unknown publications", path, n_dangling)
    if pairs:
        arr = np.array(sorted(pairs), dtype=np.int64)
        return arr[:, 0], arr[:, 1], keywords, n_rows, n_dangling
    return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), keywords, n_rows, n_dangling


def filter_articles(corpus: Corpus) -> CorpusView:
    """View of the publications with doc_type Article or Review."""
    mask = (corpus.doc_types == DOC_ARTICLE) | (corpus.doc_types == DOC_REVIEW)
    return CorpusView(corpus=corpus, members=np.flatnonzero(mask))


def build_citation_network(view: CorpusView) -> WeightedGraph:
    """Undirected normalized direct-citation network over a view.

    A pair of publications is linked iff at least one citation exists between
    them in either direction; direction and multiplicity are collapsed. The
    weight of edge (i, j) is (1/k_i + 1/k_j) / 2 with k_i the number of
    distinct publications linked to i, so each publication spreads one unit
    of influence over its neighborhood. Publications without any link stay
    in the graph as isolated nodes.
    """
    if view.size == 0:
        raise DataError("cannot build a citation network from an empty view")
    corpus = view.corpus
    pos = view.positions()
    u = pos[corpus.citing]
    v = pos[corpus.cited]
    keep = (u >= 0) & (v >= 0)
    u, v = u[keep], v[keep]
    n = view.size
    # collapse direction and multiplicity: canonical (low, high) pairs
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    key = np.unique(lo * np.int64(n) + hi)
    lo = (key // n).astype(np.int64)
    hi = (key % n).astype(np.int64)
    k = np.zeros(n, dtype=np.int64)
    np.add.at(k, lo, 1)
    np.add.at(k, hi, 1)
    with np.errstate(divide="ignore"):
        side = np.where(k > 0, 1.0 / np.maximum(k, 1), 0.0)
    w = 0.5 * (side[lo] + side[hi])
    graph = WeightedGraph.from_undirected_edges(n, lo, hi, w, node_ids=view.members)
    isolated = graph.isolated_nodes()
    if len(isolated):
        logger.warning("citation network has %d isolated publications (no citation relations)", len(isolated))
    return graph
