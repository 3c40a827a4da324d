import numpy as np
import pytest

from pubclass.corpus import (
    DOC_ARTICLE,
    DOC_REVIEW,
    IngestionManifest,
    build_citation_network,
    filter_articles,
    load_corpus,
)
from pubclass.errors import DataError


def write_corpus(tmp_path, publications, citations, categories=(), keywords=(), **manifest_kwargs):
    """Lay out the four tables plus a manifest in tmp_path."""
    def dump(name, header, rows):
        lines = ["\t".join(header)] + ["\t".join(str(c) for c in row) for row in rows]
        (tmp_path / name).write_text("\n".join(lines) + "\n", encoding="utf-8")

    dump("publications.tsv", ("pub_id", "year", "doc_type", "journal_id"), publications)
    dump("citations.tsv", ("citing_id", "cited_id"), citations)
    dump("journal_categories.tsv", ("journal_id", "category_name"), categories)
    dump("keywords.tsv", ("pub_id", "keyword"), keywords)
    manifest = IngestionManifest(
        publications=tmp_path / "publications.tsv",
        citations=tmp_path / "citations.tsv",
        journal_categories=tmp_path / "journal_categories.tsv",
        keywords=tmp_path / "keywords.tsv",
        **manifest_kwargs,
    )
    return manifest


def test_load_counts(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", "J1"), ("b", 2011, "Review", "J1"), ("c", 2012, "Other", "")],
        citations=[("a", "b"), ("b", "c")],
    )
    corpus = load_corpus(manifest)
    assert corpus.n_publications == 3
    assert corpus.n_citations == 2
    assert corpus.counts["journals"] == 1


def test_dangling_dropped_with_warning(tmp_path, caplog):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", ""), ("b", 2010, "Article", "")],
        citations=[("a", "b"), ("a", "ghost")],
    )
    with caplog.at_level("WARNING"):
        corpus = load_corpus(manifest)
    assert corpus.n_citations == 1
    assert corpus.counts["citations_dropped_dangling"] == 1
    assert any("unknown publications" in r.message for r in caplog.records)


def test_dangling_rejected(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", "")],
        citations=[("a", "ghost")],
        dangling_policy="reject",
    )
    with pytest.raises(DataError, match="ghost"):
        load_corpus(manifest)


def test_self_citations_dropped(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", "")],
        citations=[("a", "a")],
    )
    corpus = load_corpus(manifest)
    assert corpus.n_citations == 0
    assert corpus.counts["citations_dropped_self"] == 1


def test_duplicate_rows_deduplicated(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", ""), ("a", 2010, "Article", ""), ("b", 2010, "Article", "")],
        citations=[("a", "b"), ("a", "b")],
        keywords=[("a", "topic models"), ("a", "topic models")],
    )
    corpus = load_corpus(manifest)
    assert corpus.n_publications == 2
    assert corpus.n_citations == 1
    assert corpus.counts["citations_dropped_duplicate"] == 1
    assert len(corpus.keyword_pubs) == 1


def test_conflicting_duplicate_pub_rejected(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", ""), ("a", 2011, "Article", "")],
        citations=[],
    )
    with pytest.raises(DataError, match="publications.tsv:3"):
        load_corpus(manifest)


def test_malformed_row_reports_file_and_line(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", "twenty-ten", "Article", "")],
        citations=[],
    )
    with pytest.raises(DataError, match="publications.tsv:2"):
        load_corpus(manifest)


def test_year_range_enforced(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 1850, "Article", "")],
        citations=[],
    )
    with pytest.raises(DataError, match="1850"):
        load_corpus(manifest)


def test_manifest_round_trip(tmp_path):
    manifest = write_corpus(tmp_path, publications=[("a", 2010, "Article", "")], citations=[])
    manifest.write(tmp_path / "manifest.txt")
    loaded = IngestionManifest.load(tmp_path / "manifest.txt")
    assert loaded.publications == manifest.publications
    assert loaded.dangling_policy == "drop"
    assert loaded.year_min == 1900


def test_filter_articles_definition(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Article", ""), ("b", 2010, "Review", ""), ("c", 2010, "Other", "")],
        citations=[],
    )
    corpus = load_corpus(manifest)
    view = filter_articles(corpus)
    assert view.size == 2
    kept_types = corpus.doc_types[view.members]
    assert set(kept_types.tolist()) <= {DOC_ARTICLE, DOC_REVIEW}


def test_filter_articles_all_other(tmp_path):
    manifest = write_corpus(
        tmp_path,
        publications=[("a", 2010, "Other", ""), ("b", 2010, "Other", "")],
        citations=[],
    )
    view = filter_articles(load_corpus(manifest))
    assert view.size == 0


def test_filter_articles_mixed_count(tmp_path):
    rows = [(f"p{i}", 2010, "Article" if i < 5 else ("Review" if i < 7 else "Other"), "") for i in range(10)]
    manifest = write_corpus(tmp_path, publications=rows, citations=[])
    assert filter_articles(load_corpus(manifest)).size == 7


def network_from(tmp_path, publications, citations):
    corpus = load_corpus(write_corpus(tmp_path, publications=publications, citations=citations))
    return build_citation_network(filter_articles(corpus))


def test_bidirectional_citations_collapse(tmp_path):
    g = network_from(
        tmp_path,
        [("a", 2010, "Article", ""), ("b", 2010, "Article", "")],
        [("a", "b"), ("b", "a")],
    )
    assert g.n_edges == 1
    # both endpoints have a single relation, so the weight is 1/2 + 1/2 over two
    assert g.edge_weight(0, 1) == pytest.approx(1.0)


def test_side_contribution_quarter(tmp_path):
    # hub cites four leaves: the hub side of every edge contributes 1/4
    pubs = [(x, 2010, "Article", "") for x in "habcd"]
    cites = [("h", x) for x in "abcd"]
    g = network_from(tmp_path, pubs, cites)
    hub = 0  # "h" is the first publication
    nbrs, wts = g.neighbors(hub)
    assert len(nbrs) == 4
    for w in wts:
        assert w == pytest.approx(0.5 * (1 / 4 + 1 / 1))


def test_unit_influence_invariant(tmp_path):
    rng = np.random.default_rng(7)
    n = 40
    pubs = [(f"p{i}", 2010, "Article", "") for i in range(n)]
    pairs = {(int(a), int(b)) for a, b in rng.integers(0, n, size=(150, 2)) if a != b}
    cites = [(f"p{a}", f"p{b}") for a, b in pairs]
    g = network_from(tmp_path, pubs, cites)
    k = g.degrees()
    for i in range(n):
        if k[i] == 0:
            continue
        nbrs, wts = g.neighbors(i)
        side_sum = sum(2 * w - 1 / k[j] for w, j in zip(wts, nbrs))
        assert side_sum == pytest.approx(1.0, abs=1e-9)


def test_empty_edge_set_gives_isolated_flagged(tmp_path, caplog):
    with caplog.at_level("WARNING"):
        g = network_from(tmp_path, [("a", 2010, "Article", ""), ("b", 2010, "Article", "")], [])
    assert g.n_edges == 0
    assert len(g.isolated_nodes()) == 2
    assert any("isolated" in r.message for r in caplog.records)


def test_network_build_idempotent(tmp_path):
    pubs = [(f"p{i}", 2010, "Article", "") for i in range(20)]
    rng = np.random.default_rng(3)
    cites = [(f"p{a}", f"p{b}") for a, b in rng.integers(0, 20, size=(60, 2)) if a != b]
    corpus = load_corpus(write_corpus(tmp_path, publications=pubs, citations=cites))
    view = filter_articles(corpus)
    g1 = build_citation_network(view)
    g2 = build_citation_network(view)
    assert np.array_equal(g1.indptr, g2.indptr)
    assert np.array_equal(g1.indices, g2.indices)
    assert np.array_equal(g1.weights, g2.weights)


def test_network_excludes_non_articles(tmp_path):
    g = network_from(
        tmp_path,
        [("a", 2010, "Article", ""), ("b", 2010, "Other", ""), ("c", 2010, "Article", "")],
        [("a", "b"), ("a", "c")],
    )
    # "b" is outside the view, so only the a-c edge remains
    assert g.n_nodes == 2
    assert g.n_edges == 1
