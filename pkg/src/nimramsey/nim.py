"""NIM-edges of edge-coloured complete graphs and the maximisation of their number.

An edge of colour ``i`` is a NIM-edge when it lies in no colour-``i`` copy of
``H_i``.  This module evaluates NIM sets, solves the maximisation exactly for
small ``n`` by branch and bound, and provides the constructions that certify
lower bounds (template blow-ups, packings of forest-free hosts, star packings).
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .colouring import EdgeColouring, TemplateColouring, blow_up, is_feasible, pair_index
from .errors import ConstructionError, ParameterError
from .graph import (
    Graph,
    canonical_form,
    complete_multipartite,
    disjoint_union,
    is_connected,
    is_tree,
    iter_bits,
    turan_min_degree,
    turan_number,
    turan_part_sizes,
)
from .hom import _copy_through_arc, _verify, edges_in_copies_through


@dataclass(frozen=True)
class NimReport:
    """NIM-edges of a colouring together with a witness copy for every other edge.

    ``witnesses[(u, v)]`` is an injective copy of ``H[c-1]`` inside colour
    class ``c = phi(uv)`` whose image contains ``uv`` as an edge.
    """

    nim_edges: tuple[tuple[int, int], ...]
    per_colour_nim: tuple[Graph, ...]
    witnesses: dict = field(compare=False)

    @property
    def count(self) -> int:
        return len(self.nim_edges)

    def nim_graph(self, n: int) -> Graph:
        return Graph.from_edges(n, self.nim_edges)

    def nim_degrees(self, n: int) -> list[int]:
        deg = [0] * n
        for u, v in self.nim_edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _check_graphs(phi_k: int, graphs: Sequence[Graph]) -> None:
    if len(graphs) != phi_k:
        raise ParameterError(f"{len(graphs)} forbidden graphs given for {phi_k} colours")


def nim_set(phi: EdgeColouring, graphs: Sequence[Graph]) -> NimReport:
    """Compute the NIM-edges of ``phi`` with respect to ``graphs``.

    A copy found for one edge is reused as the witness for every other edge it
    covers, which keeps dense colour classes cheap.
    """
    _check_graphs(phi.k, graphs)
    n = phi.n
    witnesses: dict = {}
    nim = []
    for (u, v), c in phi.items():
        if (u, v) in witnesses:
            continue
        h = graphs[c - 1]
        adj = phi.class_adjacency(c)
        img = _copy_through_arc(h, adj, n, u, v)
        if img is None:
            nim.append((u, v))
            continue
        for x, y in h.edges():
            a, b = img[x], img[y]
            witnesses.setdefault((a, b) if a < b else (b, a), img)
    per_colour = tuple(
        Graph.from_edges(n, [e for e in nim if phi.colour(*e) == c]) for c in range(1, phi.k + 1)
    )
    return NimReport(tuple(nim), per_colour, witnesses)


def verify_report(phi: EdgeColouring, graphs: Sequence[Graph], report: NimReport) -> None:
    """Re-check every witness of ``report``; raises ``AssertionError`` on the first bad one."""
    nim = set(report.nim_edges)
    for (u, v), c in phi.items():
        if (u, v) in nim:
            if (u, v) in report.witnesses:
                raise AssertionError(f"NIM-edge {u}{v} also has a witness")
            continue
        img = report.witnesses[(u, v)]
        h = graphs[c - 1]
        _verify(h, phi.class_adjacency(c), img, True)
        if not any({img[x], img[y]} == {u, v} for x, y in h.edges()):
            raise AssertionError(f"witness misses {u}{v}")
    for c, g in enumerate(report.per_colour_nim, 1):
        if not all(phi.colour(a, b) == c for a, b in g.edges()):
            raise AssertionError(f"colour-{c} NIM graph has an edge of another colour")
    if sum(g.num_edges for g in report.per_colour_nim) != len(nim):
        raise AssertionError("per-colour NIM graphs do not partition the NIM-edges")


def nim_count(phi: EdgeColouring, graphs: Sequence[Graph]) -> int:
    return nim_set(phi, graphs).count


# ---------------------------------------------------------------------------
# Exact maximisation


@dataclass
class SearchOutcome:
    """Result of a budgeted exhaustive search.

    ``optimal`` is set only when the symmetry-reduced search space was
    exhausted; ``budget_hit`` when the node limit stopped it first.
    """

    value: int
    witness: object
    optimal: bool
    nodes: int
    budget_hit: bool


def colour_groups(graphs: Sequence[Graph]) -> list[int]:
    """For each colour (0-based), the index of the first colour with an isomorphic graph."""
    keys = []
    for g in graphs:
        try:
            keys.append(canonical_form(g, max_order=9))
        except Exception:
            keys.append(("raw", g.n, g.adj))
    return [keys.index(key) for key in keys]


class _NimSearch:
    """Depth-first branch and bound over pair colours in lexicographic pair order.

    Symmetry reduction: colours with isomorphic forbidden graphs are introduced
    in increasing label order, and the colours on pairs ``(0, v)`` are
    non-decreasing in ``v``.  Every colouring is equivalent to one obeying both.
    Bound: an edge already lying in a monochromatic copy of its graph stays
    dead in every completion, so ``C(n,2) - dead`` bounds the final count.
    """

    def __init__(self, n: int, graphs: Sequence[Graph], budget: Optional[int], incumbent: int):
        self.n = n
        self.k = len(graphs)
        self.graphs = list(graphs)
        self.pairs = list(itertools.combinations(range(n), 2))
        self.total = len(self.pairs)
        self.budget = budget
        self.best_value = incumbent
        self.best = None
        self.nodes = 0
        self.budget_hit = False
        group = colour_groups(graphs)
        # colours 1..k; predecessor in the same group, or 0 if first of group
        self.group_prev = [0] * (self.k + 1)
        for c in range(1, self.k + 1):
            earlier = [d for d in range(1, c) if group[d - 1] == group[c - 1]]
            self.group_prev[c] = earlier[-1] if earlier else 0
        self.adj = [[0] * n for _ in range(self.k + 1)]
        self.assign = [0] * self.total
        self.dead = bytearray(self.total)
        self.dead_count = 0
        self.used = [False] * (self.k + 1)
        self.used[0] = True

    def run(self, prefix: Sequence[int] = ()) -> None:
        for depth, c in enumerate(prefix):
            self._apply(depth, c)
            self.used[c] = True
        self._rec(len(prefix))

    def allowed(self, depth: int) -> list[int]:
        u, v = self.pairs[depth]
        out = []
        for c in range(1, self.k + 1):
            if not self.used[self.group_prev[c]]:
                continue
            if u == 0 and v >= 2 and c < self.assign[depth - 1]:
                continue
            out.append(c)
        return out

    def _apply(self, depth: int, c: int) -> list[int]:
        u, v = self.pairs[depth]
        adj = self.adj[c]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        self.assign[depth] = c
        newly = []
        covered = edges_in_copies_through(self.graphs[c - 1], adj, self.n, u, v)
        for a, b in covered:
            i = pair_index(self.n, a, b)
            if not self.dead[i]:
                self.dead[i] = 1
                newly.append(i)
        self.dead_count += len(newly)
        return newly

    def _undo(self, depth: int, c: int, newly: list[int]) -> None:
        u, v = self.pairs[depth]
        self.adj[c][u] &= ~(1 << v)
        self.adj[c][v] &= ~(1 << u)
        self.assign[depth] = 0
        for i in newly:
            self.dead[i] = 0
        self.dead_count -= len(newly)

    def _rec(self, depth: int) -> None:
        if self.budget_hit:
            return
        if depth == self.total:
            value = self.total - self.dead_count
            if value > self.best_value:
                self.best_value = value
                self.best = tuple(self.assign)
            return
        for c in self.allowed(depth):
            if self.budget is not None and self.nodes >= self.budget:
                self.budget_hit = True
                return
            self.nodes += 1
            was_used = self.used[c]
            newly = self._apply(depth, c)
            self.used[c] = True
            if self.total - self.dead_count > self.best_value:
                self._rec(depth + 1)
            self.used[c] = was_used
            self._undo(depth, c, newly)
            if self.budget_hit:
                return


def _seed_incumbent(n: int, graphs: Sequence[Graph], tries: int = 64) -> tuple[int, Optional[EdgeColouring]]:
    """A quick lower bound from seeded random colourings improved by single-pair recolouring."""
    k = len(graphs)
    if n < 2:
        return 0, None
    rng = random.Random(0x5EED)
    best_val, best_phi = -1, None
    for _ in range(tries):
        cols = [rng.randint(1, k) for _ in range(math.comb(n, 2))]
        val = nim_count(EdgeColouring(n, k, tuple(cols)), graphs)
        improved = True
        while improved:
            improved = False
            for i in range(len(cols)):
                for c in range(1, k + 1):
                    if c == cols[i]:
                        continue
                    old = cols[i]
                    cols[i] = c
                    cand = nim_count(EdgeColouring(n, k, tuple(cols)), graphs)
                    if cand > val:
                        val, improved = cand, True
                    else:
                        cols[i] = old
        if val > best_val:
            best_val, best_phi = val, EdgeColouring(n, k, tuple(cols))
    return best_val, best_phi


def _prefixes(search: _NimSearch, depth: int) -> list[tuple[int, ...]]:
    """Symmetry-respecting assignments of the first ``depth`` pairs, in search order."""
    out = []

    def rec(d: int, acc: list[int]) -> None:
        if d == depth:
            out.append(tuple(acc))
            return
        for c in search.allowed(d):
            was = search.used[c]
            search.used[c] = True
            search.assign[d] = c
            acc.append(c)
            rec(d + 1, acc)
            acc.pop()
            search.assign[d] = 0
            search.used[c] = was

    rec(0, [])
    return out


def _solve_prefix(args):
    n, graphs, budget, incumbent, prefix = args
    s = _NimSearch(n, graphs, budget, incumbent)
    s.run(prefix)
    return s.best_value, s.best, s.nodes, s.budget_hit


def nim_max_exact(
    n: int,
    graphs: Sequence[Graph],
    budget: Optional[int] = None,
    workers: int = 1,
) -> SearchOutcome:
    """Maximum number of NIM-edges over all ``len(graphs)``-colourings of ``K_n``.

    Returns the lexicographically least optimal colouring (in the reduced
    search space) as witness.  With ``workers > 1`` the top of the tree is
    split across processes; value and witness do not depend on the worker count.
    """
    k = len(graphs)
    if n < 0 or k < 1:
        raise ParameterError("need n >= 0 and at least one graph")
    if budget is not None and budget < 1:
        raise ParameterError("budget must be positive")
    total = math.comb(n, 2)
    if total == 0:
        return SearchOutcome(0, EdgeColouring(n, k, ()), True, 0, False)
    seed_value, seed_phi = _seed_incumbent(n, graphs)
    # one below the seed so that the least optimal colouring is still reached
    incumbent = seed_value - 1
    if workers <= 1:
        s = _NimSearch(n, graphs, budget, incumbent)
        s.run()
        results = [(s.best_value, s.best, s.nodes, s.budget_hit)]
    else:
        probe = _NimSearch(n, graphs, budget, incumbent)
        prefixes = _prefixes(probe, min(total, 4))
        jobs = [(n, list(graphs), budget, incumbent, p) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_prefix, jobs))
    best_value, best, nodes, hit = -1, None, 0, False
    for value, witness, sub_nodes, sub_hit in results:
        nodes += sub_nodes
        hit = hit or sub_hit
        # results come in search order, so strict improvement keeps the least witness
        if witness is not None and value > best_value:
            best_value, best = value, witness
    if best is None or seed_value > best_value:
        # only possible when the budget cut the search short
        best_value, witness = seed_value, seed_phi
    else:
        witness = EdgeColouring(n, k, best)
    if witness is not None and nim_count(witness, graphs) != best_value:
        raise AssertionError("witness does not realise the reported value")
    return SearchOutcome(best_value, witness, not hit, nodes, hit)


# ---------------------------------------------------------------------------
# Constructions


def blowup_lower_bound(
    graphs: Sequence[Graph], xi: TemplateColouring, n: int
) -> tuple[EdgeColouring, int]:
    """Balanced blow-up of a feasible template on ``n`` vertices and its NIM count.

    When every forbidden graph is connected, or all points share one colour,
    the count is checked to reach ``t(n, r)``.
    """
    verdict = is_feasible(xi, graphs)
    if not verdict:
        raise ParameterError(f"template is not feasible: {verdict.violation.describe()}")
    if n < xi.r:
        raise ParameterError(f"need n >= r = {xi.r} for a balanced blow-up")
    phi = blow_up(xi, turan_part_sizes(n, xi.r))
    count = nim_count(phi, graphs)
    if all(is_connected(h) for h in graphs) or len(set(xi.vcolour)) == 1:
        target = turan_number(n, xi.r)
        if count < target:
            raise AssertionError(f"blow-up has {count} NIM-edges, below t({n},{xi.r}) = {target}")
    return phi, count


@dataclass(frozen=True)
class OverlayResult:
    colouring: EdgeColouring
    placements: tuple[Graph, ...]
    switches: int


def overlay_placements(
    tree: Graph, k: int, n: int, seed: int = 0, host: Optional[Graph] = None
) -> OverlayResult:
    """Pack ``k - 1`` edge-disjoint copies of a tree-free host into ``K_n``.

    The host defaults to ``n // h`` disjoint copies of ``K_h`` where the tree
    has ``h + 1`` vertices.  Placements start as random injections (Python's
    Mersenne Twister seeded with ``seed``); while two placements share an
    edge ``uv``, the lowest vertex ``w`` at distance at least 3 from ``v`` in the
    union is swapped with ``v`` inside the lower-numbered placement.  Such a swap
    removes every conflict at ``v`` and ``w`` and creates none, so the loop ends.
    Colour ``i < k`` is placement ``i``; everything else gets colour ``k``.
    """
    if not is_tree(tree):
        raise ParameterError("overlay construction needs a tree")
    if k < 1:
        raise ParameterError("need k >= 1")
    h = tree.n - 1
    if host is None:
        if h < 1:
            raise ParameterError("tree must have at least one edge")
        host = disjoint_union([complete_multipartite([1] * h)] * (n // h))
    if host.n > n:
        raise ParameterError(f"host has {host.n} vertices, more than n = {n}")
    rng = random.Random(seed)
    maps = [rng.sample(range(n), host.n) for _ in range(k - 1)]
    hedges = host.edges()

    def placed_edges(f):
        return {(min(f[x], f[y]), max(f[x], f[y])) for x, y in hedges}

    edge_sets = [placed_edges(f) for f in maps]
    switches = 0
    limit = 10 * (len(hedges) * max(1, k - 1)) + 10
    while True:
        conflict = None
        for i, j in itertools.combinations(range(k - 1), 2):
            shared = edge_sets[i] & edge_sets[j]
            if shared:
                e = min(shared)
                if conflict is None or (e, i, j) < conflict:
                    conflict = (e, i, j)
        if conflict is None:
            break
        (_, v), i, _ = conflict
        union = [0] * n
        for es in edge_sets:
            for a, b in es:
                union[a] |= 1 << b
                union[b] |= 1 << a
        near = 1 << v | union[v]
        for x in iter_bits(union[v]):
            near |= union[x]
        free = ~near & ((1 << n) - 1)
        if not free:
            raise ConstructionError(f"no vertex at distance >= 3 from {v}; n = {n} is too small")
        w = (free & -free).bit_length() - 1
        maps[i] = [w if t == v else v if t == w else t for t in maps[i]]
        edge_sets[i] = placed_edges(maps[i])
        switches += 1
        if switches > limit:
            raise ConstructionError("conflict switching did not terminate")
    placements = tuple(Graph.from_edges(n, sorted(es)) for es in edge_sets)
    phi = EdgeColouring.from_classes(n, k, {i + 1: g for i, g in enumerate(placements)}, default=k)
    return OverlayResult(phi, placements, switches)


def overlay_construction(tree: Graph, k: int, n: int, seed: int = 0, host: Optional[Graph] = None) -> EdgeColouring:
    return overlay_placements(tree, k, n, seed, host).colouring


def star_packing_colouring(n: int, k: int) -> EdgeColouring:
    """Colour ``i < k`` is the star from vertex ``i - 1`` to all later vertices; the rest get ``k``.

    Each star is matching-free of size 2, so for ``M_2`` every edge in colours
    ``1..k-1`` is a NIM-edge: ``sum_{i=0}^{k-2} (n - 1 - i)`` of them.
    """
    if n < k - 1:
        raise ParameterError("need n >= k - 1")

    def colour(u: int, v: int) -> int:
        return u + 1 if u < k - 1 else k

    return EdgeColouring.from_function(n, k, colour)


@dataclass(frozen=True)
class PeelStep:
    order: int
    nim: int
    removed: Optional[int]  # original label of the vertex removed next, None at the end


def peel_min_degree(phi: EdgeColouring, graphs: Sequence[Graph], r: int) -> list[PeelStep]:
    """Repeatedly delete the lowest vertex whose NIM-degree is below ``delta(T(i, r))``.

    NIM-edges are recomputed from scratch on each restriction.  The last step
    records the order at which no vertex qualifies.
    """
    if r < 1:
        raise ParameterError("r must be >= 1")
    alive = list(range(phi.n))
    current = phi
    trace = []
    while True:
        report = nim_set(current, graphs)
        deg = report.nim_degrees(current.n)
        threshold = turan_min_degree(current.n, r)
        low = next((i for i, d in enumerate(deg) if d < threshold), None)
        if low is None:
            trace.append(PeelStep(current.n, report.count, None))
            return trace
        trace.append(PeelStep(current.n, report.count, alive[low]))
        keep = [i for i in range(current.n) if i != low]
        alive = [alive[i] for i in keep]
        current = current.restrict(keep)
