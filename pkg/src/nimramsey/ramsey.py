"""Homomorphic Ramsey numbers, the point-and-pair variant ``r*``, and niceness.

A template on ``r`` points is feasible for ``(H_1, ..., H_k)`` when no colour-``i``
pair graph receives a homomorphism from ``H_i`` and no pair has the colour of
one of its points.  ``r*`` is the largest ``r`` with a feasible template;
``r_hom`` drops the point colours and the second condition.

Both are computed incrementally: find a witness at ``r = 1, 2, ...`` and stop
at the first ``r`` whose symmetry-reduced search space is exhausted without one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .colouring import EdgeColouring, TemplateColouring, is_feasible
from .errors import BudgetExceeded, ParameterError
from .graph import Graph, is_bipartite
from .hom import homomorphism_through_edge
from .nim import colour_groups

DEFAULT_BUDGET = 5_000_000


@dataclass
class RamseyStarResult:
    """``value`` with a witness on ``value`` points.

    ``exhausted_above`` is true only when the search at ``value + 1`` points
    finished without a witness.
    """

    value: int
    witness: object
    exhausted_above: bool
    nodes: int = 0


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0
        self.hit = False

    def tick(self) -> bool:
        if self.limit is not None and self.nodes >= self.limit:
            self.hit = True
            return False
        self.nodes += 1
        return True


class _PairSearch:
    """Backtracking over the pair colours of ``[r]``.

    ``vcolour`` (optional) fixes point colours and enforces that no pair shares
    a colour with its points.  ``free_prev[c]`` names the colour that must
    already be in use before ``c`` may appear (0 when unrestricted), which
    encodes first-use ordering of interchangeable colours.  With
    ``sort_row0`` the colours on pairs ``(0, v)`` must be non-decreasing; that
    only combines soundly with first-use ordering when row 0 comes first, so
    it requires lexicographic pair order.  Otherwise pairs go in colex order
    (by larger endpoint), which closes each prefix of points before the next.
    """

    def __init__(self, r, graphs, vcolour, free_prev, sort_row0, budget: _Budget):
        self.r = r
        self.k = len(graphs)
        self.graphs = graphs
        self.vcolour = vcolour
        self.free_prev = free_prev
        self.sort_row0 = sort_row0
        self.budget = budget
        self.pairs = list(itertools.combinations(range(r), 2))
        if not sort_row0:
            self.pairs.sort(key=lambda p: (p[1], p[0]))
        self.pair_ok = [bool(g.edges()) and not is_bipartite(g) for g in graphs]
        self.adj = [[0] * r for _ in range(self.k + 1)]
        self.assign = [0] * len(self.pairs)
        self.used = [False] * (self.k + 1)
        self.used[0] = True

    def options(self, depth: int) -> list[int]:
        u, v = self.pairs[depth]
        out = []
        for c in range(1, self.k + 1):
            if not self.pair_ok[c - 1] or not self.used[self.free_prev[c]]:
                continue
            if self.vcolour is not None and c in (self.vcolour[u], self.vcolour[v]):
                continue
            if self.sort_row0 and u == 0 and v >= 2 and c < self.assign[depth - 1]:
                continue
            out.append(c)
        return out

    def search(self) -> Optional[tuple[int, ...]]:
        """First feasible pair colouring in search order, or ``None``."""
        return self._rec(0)

    def _rec(self, depth: int) -> Optional[tuple[int, ...]]:
        if depth == len(self.pairs):
            order = {p: i for i, p in enumerate(self.pairs)}
            return tuple(self.assign[order[p]] for p in itertools.combinations(range(self.r), 2))
        u, v = self.pairs[depth]
        for c in self.options(depth):
            if not self.budget.tick():
                return None
            adj = self.adj[c]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            if homomorphism_through_edge(self.graphs[c - 1], adj, u, v) is None:
                was = self.used[c]
                self.used[c] = True
                self.assign[depth] = c
                found = self._rec(depth + 1)
                self.used[c] = was
                self.assign[depth] = 0
                if found is not None:
                    adj[u] &= ~(1 << v)
                    adj[v] &= ~(1 << u)
                    return found
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            if self.budget.hit:
                return None
        return None


def _check_graphs(graphs: Sequence[Graph]) -> list[Graph]:
    graphs = list(graphs)
    if not graphs:
        raise ParameterError("need at least one graph")
    for g in graphs:
        if not g.edges():
            raise ParameterError("forbidden graphs must have at least one edge")
    return graphs


def _group_lists(graphs: Sequence[Graph]) -> list[list[int]]:
    """Colours (1-based) grouped by isomorphism class of their graph, groups in first-colour order."""
    group = colour_groups(graphs)
    out: dict[int, list[int]] = {}
    for c, g in enumerate(group, 1):
        out.setdefault(g, []).append(c)
    return list(out.values())


def _first_use_prev(k: int, groups: list[list[int]], eligible=lambda c: True) -> list[int]:
    prev = [0] * (k + 1)
    for members in groups:
        chain = [c for c in members if eligible(c)]
        for a, b in zip(chain, chain[1:]):
            prev[b] = a
    return prev


# ---------------------------------------------------------------------------
# r_hom


def find_homomorphic_free(graphs: Sequence[Graph], r: int, budget: _Budget) -> Optional[EdgeColouring]:
    """A pair colouring of ``[r]`` with no colour-``i`` homomorphic image of ``H_i``."""
    graphs = _check_graphs(graphs)
    k = len(graphs)
    prev = _first_use_prev(k, _group_lists(graphs))
    found = _PairSearch(r, graphs, None, prev, True, budget).search()
    return None if found is None else EdgeColouring(r, k, found)


def r_hom(graphs: Sequence[Graph], budget: Optional[int] = DEFAULT_BUDGET) -> RamseyStarResult:
    """Largest ``r`` with an ``(H_1..H_k)``-homomorphic-free colouring of the pairs of ``[r]``."""
    graphs = _check_graphs(graphs)
    bip = [i + 1 for i, g in enumerate(graphs) if is_bipartite(g)]
    if bip:
        raise ParameterError(f"r_hom needs non-bipartite graphs; colour(s) {bip} are bipartite")
    b = _Budget(budget)
    best = EdgeColouring(1, len(graphs), ())
    r = 1
    while True:
        found = find_homomorphic_free(graphs, r + 1, b)
        if found is None:
            return RamseyStarResult(r, best, not b.hit, b.nodes)
        best, r = found, r + 1


# ---------------------------------------------------------------------------
# r* and niceness


def _count_vectors(r: int, k: int, groups: list[list[int]]) -> Iterator[tuple[int, ...]]:
    """Point-colour counts with counts non-increasing inside each group, largest first."""
    vectors = []
    for counts in _compositions(r, k):
        if all(
            all(counts[a - 1] >= counts[b - 1] for a, b in zip(members, members[1:])) for members in groups
        ):
            vectors.append(counts)
    return iter(sorted(vectors, reverse=True))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _templates_search(
    graphs: list[Graph], r: int, budget: _Budget, mixed_only: bool = False
) -> Optional[TemplateColouring]:
    """First feasible template on ``r`` points, over canonical point colourings.

    Points are sorted by colour, point-colour counts are canonical within
    groups of interchangeable colours, and colours unused on points enter the
    pairs in first-use order.  With ``mixed_only`` only point colourings using
    at least two colours are tried.
    """
    k = len(graphs)
    groups = _group_lists(graphs)
    for counts in _count_vectors(r, k, groups):
        if mixed_only and sum(1 for c in counts if c) < 2:
            continue
        vcolour = tuple(c for c, m in enumerate(counts, 1) for _ in range(m))
        prev = _first_use_prev(k, groups, lambda c: counts[c - 1] == 0)
        found = _PairSearch(r, graphs, vcolour, prev, False, budget).search()
        if found is not None:
            return TemplateColouring(r, k, vcolour, found)
        if budget.hit:
            return None
    return None


def r_star(graphs: Sequence[Graph], budget: Optional[int] = DEFAULT_BUDGET) -> RamseyStarResult:
    """Largest ``r`` admitting a feasible template on ``[r]``.

    Bipartite graphs are accepted: their colour can never sit on a pair.
    """
    graphs = _check_graphs(graphs)
    b = _Budget(budget)
    k = len(graphs)
    best = TemplateColouring(1, k, (1,), ())
    r = 1
    while True:
        found = _templates_search(graphs, r + 1, b)
        if found is None:
            result = RamseyStarResult(r, best, not b.hit, b.nodes)
            break
        best, r = found, r + 1
    if not is_feasible(best, graphs):
        raise AssertionError("r* witness failed the feasibility re-check")
    return result


def is_nice(
    graphs: Sequence[Graph], r_star_value: int, budget: Optional[int] = DEFAULT_BUDGET
) -> tuple[bool, Optional[TemplateColouring]]:
    """Whether every feasible template on ``r_star_value`` points is monochromatic on points.

    Returns ``(False, counterexample)`` or ``(True, None)``; requires an
    exhaustive search, so running out of budget raises :class:`BudgetExceeded`.
    """
    graphs = _check_graphs(graphs)
    if r_star_value < 1:
        raise ParameterError("r* value must be >= 1")
    b = _Budget(budget)
    found = _templates_search(graphs, r_star_value, b, mixed_only=True)
    if b.hit:
        raise BudgetExceeded(f"niceness search exceeded {budget} nodes")
    if found is None:
        return True, None
    if not is_feasible(found, graphs):
        raise AssertionError("niceness counterexample failed the feasibility re-check")
    return False, found


# ---------------------------------------------------------------------------
# GF(16) construction

_GF16_MODULUS = 0b10011  # x^4 + x + 1, primitive


def gf16_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & 0b10000:
            a ^= _GF16_MODULUS
    return out


def gf16_log_table() -> dict[int, int]:
    """Discrete logarithms base ``x`` of the 15 non-zero elements."""
    logs = {}
    e = 1
    for i in range(15):
        logs[e] = i
        e = gf16_mul(e, 0b10)
    if len(logs) != 15:
        raise AssertionError("x is not a generator of GF(16)*")
    return logs


def gf16_witness(check: bool = True) -> TemplateColouring:
    """16-point template for four triangles built from the cubic residues of GF(16).

    Points are field elements; a pair ``{x, y}`` gets ``1 + (log(x + y) mod 3)``,
    i.e. the coset of the order-5 subgroup containing ``x + y``, and every point
    gets colour 4.  The cosets are sum-free, so each pair colour is triangle-free.
    """
    logs = gf16_log_table()
    xi = TemplateColouring.from_function(16, 4, [4] * 16, lambda x, y: 1 + logs[x ^ y] % 3)
    if check:
        from .graph import build

        k3 = build("complete:3")
        if not is_feasible(xi, [k3] * 4):
            raise AssertionError("GF(16) template is not feasible")
    return xi


# ---------------------------------------------------------------------------
# Classical Ramsey numbers


@dataclass
class KnownRamseyTable:
    """Classical Ramsey numbers ``R(a_1, ..., a_k)`` keyed by sorted clique sizes.

    Each entry records where it came from: ``"literature"`` for values quoted from
    the literature, ``"search"`` for values certified here by exhaustive search.
    """

    entries: dict = field(default_factory=dict)

    @classmethod
    def default(cls) -> "KnownRamseyTable":
        table = cls()
        table.add((3, 3), 6, "literature")
        table.add((3, 3, 3), 17, "literature")
        return table

    def add(self, sizes: Sequence[int], value: int, provenance: str) -> None:
        key = tuple(sorted(sizes))
        old = self.entries.get(key)
        if old is not None and old[0] != value:
            raise AssertionError(f"conflicting values for R{key}: {old[0]} vs {value}")
        tags = set(old[1]) if old else set()
        tags.add(provenance)
        self.entries[key] = (value, tuple(sorted(tags)))

    def R(self, *sizes: int) -> int:
        key = tuple(sorted(sizes))
        if key not in self.entries:
            raise KeyError(key)
        return self.entries[key][0]

    def r(self, *sizes: int) -> int:
        """``R - 1``: the largest clique with a colouring avoiding every ``K_{a_i}`` in colour ``i``."""
        return self.R(*sizes) - 1

    def provenance(self, *sizes: int) -> tuple[str, ...]:
        return self.entries[tuple(sorted(sizes))][1]

    def __contains__(self, sizes) -> bool:
        return tuple(sorted(sizes)) in self.entries

    def certify(self, sizes: Sequence[int], budget: Optional[int] = DEFAULT_BUDGET) -> bool:
        """Compute ``r_hom`` over cliques by search and record ``R = r_hom + 1`` if exhausted.

        A ``K_2`` colour can never be used on a pair, so those entries are dropped
        before searching (and ``R(2, ..., 2) = 2``).
        """
        from .graph import build

        if any(a < 2 for a in sizes):
            raise ParameterError("clique sizes must be >= 2")
        graphs = [build(f"complete:{a}") for a in sizes if a > 2]
        if not graphs:
            self.add(sizes, 2, "search")
            return True
        res = r_hom(graphs, budget)
        if res.exhausted_above:
            self.add(sizes, res.value + 1, "search")
        return res.exhausted_above
