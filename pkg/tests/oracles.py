"""Independent brute-force oracles, deliberately naive.

Nothing here imports the search code: copies of small patterns are listed by
``itertools`` over vertex subsets, and every 2-colouring of ``K_n`` is
enumerated as a bit vector with numpy.
"""

from __future__ import annotations

import itertools

import numpy as np


def pairs(n):
    return list(itertools.combinations(range(n), 2))


def triangle_copies(n):
    return [[(a, b), (a, c), (b, c)] for a, b, c in itertools.combinations(range(n), 3)]


def c4_copies(n):
    out = []
    for quad in itertools.combinations(range(n), 4):
        a = quad[0]
        for b, c, d in itertools.permutations(quad[1:]):
            if b < d:  # each 4-cycle a-b-c-d-a once
                out.append([tuple(sorted(e)) for e in ((a, b), (b, c), (c, d), (d, a))])
    return out


def nim_max_two_colours(n, copies):
    """Max NIM-edge count over all 2-colourings of ``K_n``, same pattern in both colours.

    ``copies`` lists the edge sets of every copy of the pattern in ``K_n``.
    Returns ``(value, number of optimal colourings)``.
    """
    index = {e: i for i, e in enumerate(pairs(n))}
    m = len(index)
    codes = np.arange(1 << m, dtype=np.uint32)
    bits = [((codes >> i) & 1).astype(np.uint8) for i in range(m)]
    covered = [np.zeros(1 << m, dtype=bool) for _ in range(m)]
    for copy in copies:
        idx = [index[e] for e in copy]
        first = bits[idx[0]]
        mono = np.ones(1 << m, dtype=bool)
        for j in idx[1:]:
            mono &= bits[j] == first
        for j in idx:
            covered[j] |= mono
    nim = np.zeros(1 << m, dtype=np.int16)
    for c in covered:
        nim += ~c
    best = int(nim.max())
    return best, int((nim == best).sum())


def max_free_graph(n, copies):
    """``ex(n, H)`` by sweeping every graph on ``[n]``."""
    index = {e: i for i, e in enumerate(pairs(n))}
    m = len(index)
    codes = np.arange(1 << m, dtype=np.uint32)
    free = np.ones(1 << m, dtype=bool)
    for copy in copies:
        mask = 0
        for e in copy:
            mask |= 1 << index[e]
        free &= (codes & np.uint32(mask)) != mask
    sizes = np.zeros(1 << m, dtype=np.int8)
    for i in range(m):
        sizes += ((codes >> i) & 1).astype(np.int8)
    return int(sizes[free].max())


def max_clique(adj_sets, n):
    best = 0
    for size in range(1, n + 1):
        if any(all(b in adj_sets[a] for a, b in itertools.combinations(s, 2)) for s in itertools.combinations(range(n), size)):
            best = size
        else:
            break
    return best


def edit_distance(n, e1, e2):
    e2 = {tuple(sorted(e)) for e in e2}
    best = None
    for perm in itertools.permutations(range(n)):
        image = {tuple(sorted((perm[a], perm[b]))) for a, b in e1}
        d = len(image ^ e2)
        best = d if best is None else min(best, d)
    return best


def copies(n, h_n, h_edges):
    """Edge sets of every copy of a pattern in ``K_n``, deduplicated."""
    found = set()
    for img in itertools.permutations(range(n), h_n):
        found.add(frozenset(tuple(sorted((img[a], img[b]))) for a, b in h_edges))
    return [sorted(c) for c in found]
