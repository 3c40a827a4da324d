"""Independent brute-force reference implementations used only by tests.

Everything here is deliberately naive: exhaustive enumeration, all-pairs
loops, dictionary counting. These stay decoupled from the library code so
they can serve as oracles for it.
"""

from __future__ import annotations

import itertools
from math import comb

import numpy as np


def set_partitions(n):
    """Yield every partition of range(n) as a label tuple (restricted growth strings)."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, max_used):
        if i == n:
            yield tuple(labels)
            return
        for c in range(max_used + 2):
            labels[i] = c
            yield from rec(i + 1, max(max_used, c))

    yield from rec(1, 0)


def brute_cpm_quality(edges, n, labels, resolution, sizes=None):
    """CPM quality by looping over every node pair."""
    if sizes is None:
        sizes = [1] * n
    weight = {}
    for u, v, w in edges:
        weight[frozenset((u, v))] = w
    q = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            if labels[i] == labels[j]:
                q += weight.get(frozenset((i, j)), 0.0) - resolution * sizes[i] * sizes[j]
    return q


def best_partition_by_enumeration(edges, n, resolution, sizes=None):
    """Exhaustive optimum of the CPM quality over all set partitions."""
    best_q = -np.inf
    best = None
    for labels in set_partitions(n):
        q = brute_cpm_quality(edges, n, labels, resolution, sizes)
        if q > best_q + 1e-12:
            best_q = q
            best = labels
    return best, best_q


def brute_ari(labels_x, labels_y):
    """Adjusted Rand index by enumerating all element pairs."""
    n = len(labels_x)
    assert n == len(labels_y)
    n11 = n10 = n01 = n00 = 0
    for i in range(n):
        for j in range(i + 1, n):
            same_x = labels_x[i] == labels_x[j]
            same_y = labels_y[i] == labels_y[j]
            if same_x and same_y:
                n11 += 1
            elif same_x:
                n10 += 1
            elif same_y:
                n01 += 1
            else:
                n00 += 1
    total = comb(n, 2)
    sum_a = n11 + n10
    sum_b = n11 + n01
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        return 1.0
    return (n11 - expected) / (max_index - expected)


def random_labels(rng, n, max_classes=None):
    """Random surjective-ish labeling, densely renumbered."""
    k = rng.integers(1, (max_classes or n) + 1)
    raw = rng.integers(0, k, size=n)
    _, dense = np.unique(raw, return_inverse=True)
    return dense


def canonical_form(labels):
    """Partition as a frozenset of frozensets, for label-free comparison."""
    groups = {}
    for i, c in enumerate(labels):
        groups.setdefault(c, set()).add(i)
    return frozenset(frozenset(g) for g in groups.values())


def journal_profile_by_hand(articles_by_journal, citations, journal_of):
    """Self-citation counts recomputed straightforwardly from raw rows.

    articles_by_journal: journal -> iterable of pub ids (the year slice)
    citations: iterable of (citing, cited) pairs, already corpus-resolved
    journal_of: pub id -> journal id (or None)
    Returns journal -> (self_citations, active_references).
    """
    out = {}
    for journal, articles in articles_by_journal.items():
        members = set(articles)
        self_cites = 0
        active = 0
        for citing, cited in citations:
            if citing in members:
                active += 1
                if journal_of.get(cited) == journal:
                    self_cites += 1
        out[journal] = (self_cites, active)
    return out


def journal_overlap_by_hand(refs_a, refs_b):
    """Overlap of two reference multisets: y = (m/A1 + m/A2) / 2."""
    from collections import Counter

    ca, cb = Counter(refs_a), Counter(refs_b)
    shared = sum(min(ca[t], cb[t]) for t in set(ca) & set(cb))
    a1, a2 = sum(ca.values()), sum(cb.values())
    return shared, a1, a2, 0.5 * (shared / a1 + shared / a2)
