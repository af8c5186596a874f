"""Exact Turán numbers for small host orders.

Complete graphs use Turán's theorem directly.  Everything else goes through a
branch and bound over the pairs of ``[n]`` in lexicographic order: a pair is
added when that creates no forbidden copy, and a branch is cut when its edges
plus all undecided pairs cannot beat the incumbent.  Vertex 0's neighbourhood
is forced to be an initial segment ``{1, ..., d}``, which loses nothing since
vertices ``1..n-1`` may be relabelled freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ParameterError
from .graph import Graph, canonical_form, complete_multipartite, turan_number, turan_part_sizes
from .hom import contains_copy, copy_through_edge

DEFAULT_BUDGET = 20_000_000


@dataclass
class ExResult:
    value: int
    witness: Graph
    optimal: bool
    nodes: int = 0


def _is_clique(h: Graph) -> bool:
    return h.num_edges == h.n * (h.n - 1) // 2


def _dedupe(hs: Sequence[Graph]) -> list[Graph]:
    seen = {}
    for h in hs:
        seen.setdefault(canonical_form(h), h)
    return list(seen.values())


def _check_free(g: Graph, hs: Sequence[Graph]) -> None:
    for h in hs:
        if contains_copy(h, g) is not None:
            raise AssertionError(f"extremal witness contains a forbidden copy on {h.n} vertices")


def ex_exact(n: int, h: Graph, budget: Optional[int] = DEFAULT_BUDGET) -> ExResult:
    """``ex(n, h)`` with a maximum ``h``-free witness.

    >>> from nimramsey.graph import build
    >>> ex_exact(5, build("complete:3")).value
    6
    """
    return ex_exact_family(n, [h], budget)


def ex_exact_family(n: int, hs: Sequence[Graph], budget: Optional[int] = DEFAULT_BUDGET) -> ExResult:
    """Maximum number of edges of an ``n``-vertex graph containing none of ``hs``."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    hs = _dedupe(hs)
    if not hs:
        raise ParameterError("need at least one forbidden graph")
    for h in hs:
        if not h.edges():
            raise ParameterError("forbidden graphs must have at least one edge")
    if len(hs) == 1 and _is_clique(hs[0]):
        r = max(1, min(hs[0].n - 1, n))
        witness = complete_multipartite(turan_part_sizes(n, r)) if n else Graph.empty(0)
        if n and witness.num_edges != turan_number(n, r):
            raise AssertionError("Turán graph edge count mismatch")
        _check_free(witness, hs)
        return ExResult(witness.num_edges, witness, True, 0)
    return _BranchAndBound(n, hs, budget).run()


class _BranchAndBound:
    def __init__(self, n: int, hs: list[Graph], budget: Optional[int]):
        self.n = n
        self.hs = sorted(hs, key=lambda h: (h.num_edges, h.n))
        self.pairs = list(itertools.combinations(range(n), 2))
        self.budget = budget
        self.nodes = 0
        self.hit = False
        self.adj = [0] * n
        self.chosen: list[tuple[int, int]] = []
        self.best_value = -1
        self.best: list[tuple[int, int]] = []

    def _creates_copy(self, u: int, v: int) -> bool:
        return any(h.n <= self.n and copy_through_edge(h, self.adj, (u, v)) is not None for h in self.hs)

    def run(self) -> ExResult:
        self._rec(0, True)
        witness = Graph.from_edges(self.n, self.best)
        _check_free(witness, self.hs)
        return ExResult(self.best_value, witness, not self.hit, self.nodes)

    def _rec(self, depth: int, row0_open: bool) -> None:
        if self.budget is not None and self.nodes >= self.budget:
            self.hit = True
            return
        self.nodes += 1
        if len(self.chosen) + len(self.pairs) - depth <= self.best_value:
            return
        if depth == len(self.pairs):
            self.best_value = len(self.chosen)
            self.best = list(self.chosen)
            return
        u, v = self.pairs[depth]
        if u > 0 or row0_open:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
            if not self._creates_copy(u, v):
                self.chosen.append((u, v))
                self._rec(depth + 1, row0_open)
                self.chosen.pop()
            self.adj[u] &= ~(1 << v)
            self.adj[v] &= ~(1 << u)
        self._rec(depth + 1, row0_open and u > 0)
