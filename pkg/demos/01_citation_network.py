"""
Building a normalized direct-citation network
=============================================

Walks through corpus ingestion and network construction on a corpus small
enough to check by hand.
"""

import tempfile
from pathlib import Path

from pubclass import IngestionManifest, build_citation_network, filter_articles, load_corpus

# Five publications; "e" has doc_type Other and stays out of the network.
publications = """\
pub_id\tyear\tdoc_type\tjournal_id
a\t2010\tArticle\tJ1
b\t2010\tArticle\tJ1
c\t2011\tReview\tJ2
d\t2011\tArticle\tJ2
e\t2011\tOther\t
"""

# a cites b twice (duplicate rows collapse), b cites a back (direction
# collapses), and d cites a publication we do not have (dropped, warned)
citations = """\
citing_id\tcited_id
a\tb
a\tb
b\ta
a\tc
c\td
d\tmissing
"""

workdir = Path(tempfile.mkdtemp(prefix="pubclass_demo_"))
(workdir / "publications.tsv").write_text(publications)
(workdir / "citations.tsv").write_text(citations)
(workdir / "journal_categories.tsv").write_text("journal_id\tcategory_name\nJ1\tPhysics\n")
(workdir / "keywords.tsv").write_text("pub_id\tkeyword\na\tgraphene\n")
(workdir / "manifest.txt").write_text(
    "publications=publications.tsv\ncitations=citations.tsv\n"
    "journal_categories=journal_categories.tsv\nkeywords=keywords.tsv\n"
)

corpus = load_corpus(IngestionManifest.load(workdir / "manifest.txt"))
print("ingestion counts:")
for metric, value in sorted(corpus.counts.items()):
    print(f"  {metric} = {value}")

# only articles and reviews take part in clustering
view = filter_articles(corpus)
print(f"\narticle view: {view.size} of {corpus.n_publications} publications")

graph = build_citation_network(view)
print(f"network: {graph.n_nodes} nodes, {graph.n_edges} edges")

# Each publication spreads one unit of influence over its distinct partners:
# the weight of (i, j) is the average of 1/k_i and 1/k_j.
print("\nedges (by external id):")
for u, v, w in zip(*graph.edge_list()):
    pid_u = corpus.pub_ids[int(graph.node_ids[u])]
    pid_v = corpus.pub_ids[int(graph.node_ids[v])]
    print(f"  {pid_u} -- {pid_v}: weight {w:.4f}")

# "a" has partners b and c (k=2), "b" only a (k=1): weight = (1/2 + 1/1)/2
print("\nweight of a--b:", graph.edge_weight(0, 1), "= (1/2 + 1/1) / 2")
