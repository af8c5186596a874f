"""The acceptance checks behind ``nimramsey verify-paper``.

Each check returns a :class:`Check`; :func:`run_all` prints one PASS/FAIL line
per check and, with ``fail_fast``, stops at the first failure.  Runtime limits
are part of each check.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .colouring import EdgeColouring, colour_class, is_feasible, part_blocks
from .graph import (
    Graph,
    build,
    contains_complete_bipartite,
    iter_bits,
    parse_graph_list,
    popcount,
    turan_number,
    turan_part_sizes,
)
from .nim import (
    blowup_lower_bound,
    nim_count,
    nim_max_exact,
    nim_set,
    overlay_placements,
    star_packing_colouring,
    verify_report,
)
from .ramsey import gf16_witness, is_nice, r_hom, r_star
from .turan import ex_exact


@dataclass
class Check:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" [{self.note}]" if self.note else ""
        return f"{status} {self.number:>2} {self.name}: {self.detail} ({self.seconds:.1f}s){extra}"


def load_baseline() -> dict:
    """Frozen exhaustive optima, keyed ``"<n> <graph list>"``."""
    text = resources.files("nimramsey").joinpath("data/baseline.json").read_text()
    return json.loads(text)


def _graphs(text: str) -> list[Graph]:
    return parse_graph_list(text)


def _timed(number: int, name: str, limit: float, fn: Callable[[], tuple[bool, str]]) -> Check:
    start = time.perf_counter()
    try:
        ok, detail = fn()
        note = ""
    except Exception as exc:  # a crash is a failed criterion, reported by name
        ok, detail, note = False, f"raised {type(exc).__name__}: {exc}", ""
    took = time.perf_counter() - start
    if took > limit:
        ok, note = False, f"over the {limit:.0f}s limit"
    return Check(number, name, ok, detail, took, note)


# ---------------------------------------------------------------------------
# Criteria


def check_rstar_triangles() -> tuple[bool, str]:
    gs = _graphs("complete:3,complete:3,complete:3")
    res = r_star(gs)
    nice, _ = is_nice(gs, res.value)
    ok = res.value == 5 and res.exhausted_above and nice and bool(is_feasible(res.witness, gs))
    return ok, f"r*={res.value} exhausted={res.exhausted_above} nice={nice} nodes={res.nodes}"


def check_rstar_c5() -> tuple[bool, str]:
    gs = _graphs("cycle:5,cycle:5,cycle:5")
    res = r_star(gs)
    nice, cex = is_nice(gs, res.value)
    two_colours = cex is not None and len(set(cex.vcolour)) >= 2 and bool(is_feasible(cex, gs))
    ok = res.value == 4 and res.exhausted_above and res.witness.r == 4 and not nice and two_colours
    shown = "".join(map(str, cex.vcolour)) if cex else "-"
    return ok, f"r*={res.value} exhausted={res.exhausted_above} nice={nice} counterexample points={shown}"


def check_rhom_triangles() -> tuple[bool, str]:
    res = r_hom(_graphs("complete:3,complete:3"))
    return res.value == 5 and res.exhausted_above, f"r_hom={res.value} exhausted={res.exhausted_above}"


def check_gf16() -> tuple[bool, str]:
    xi = gf16_witness()
    k3 = build("complete:3")
    feasible = bool(is_feasible(xi, [k3] * 4))
    shape = xi.r == 16 and set(xi.pcolour) == {1, 2, 3} and len(xi.pcolour) == 120 and set(xi.vcolour) == {4}
    triples = list(itertools.combinations(range(16), 3))
    mono = sum(
        1 for a, b, c in triples if xi.pair_colour(a, b) == xi.pair_colour(a, c) == xi.pair_colour(b, c)
    )
    ok = feasible and shape and len(triples) == 560 and mono == 0
    return ok, f"feasible={feasible} triples={len(triples)} monochromatic={mono} (17-point bound taken from the literature)"


def check_blowup() -> tuple[bool, str]:
    gs = _graphs("complete:3,complete:3,complete:3")
    xi = r_star(gs).witness
    phi, count = blowup_lower_bound(gs, xi, 50)
    report = nim_set(phi, gs)
    blocks = part_blocks(turan_part_sizes(50, xi.r))
    part = {v: i for i, b in enumerate(blocks) for v in b}
    nim = set(report.nim_edges)
    cross = sum(1 for u, v in itertools.combinations(range(50), 2) if part[u] != part[v])
    cross_nim = all(((u, v) in nim) == (part[u] != part[v]) for u, v in itertools.combinations(range(50), 2))
    target = turan_number(50, 5)
    ok = count == target == 1000 and cross == target and cross_nim
    return ok, f"nim={count} t(50,5)={target} cross pairs NIM and inside pairs not: {cross_nim}"


def check_nim_triangles(baseline: Optional[dict] = None) -> tuple[bool, str]:
    baseline = baseline or load_baseline()
    gs = _graphs("complete:3,complete:3")
    parts, ok = [], True
    for n in (5, 6, 7):
        out = nim_max_exact(n, gs)
        ex = ex_exact(n, gs[0]).value
        frozen = baseline[f"{n} complete:3,complete:3"]
        stable = out.value == frozen["value"] and list(out.witness.colours) == frozen["witness"]
        ok &= out.optimal and out.value >= ex and stable
        ok &= n != 5 or out.value == 10
        parts.append(f"n={n} nim={out.value} ex={ex} optimal={out.optimal} stable={stable}")
    return ok, "; ".join(parts)


def check_c4(baseline: Optional[dict] = None) -> tuple[bool, str]:
    baseline = baseline or load_baseline()
    c4 = build("cycle:4")
    ex = ex_exact(7, c4)
    out = nim_max_exact(7, [c4, c4])
    frozen = baseline["7 cycle:4,cycle:4"]
    stable = out.value == frozen["value"] and list(out.witness.colours) == frozen["witness"]
    ok = ex.value == 9 and ex.optimal and out.optimal and out.value >= 9 and stable
    verdict = "equals ex(7,C4)" if out.value == ex.value else "DIFFERS from ex(7,C4), investigate"
    return ok, f"ex(7,C4)={ex.value} nim={out.value} optimal={out.optimal} stable={stable}; optimum {verdict}"


def _random_colouring(rng: random.Random, n: int, k: int) -> EdgeColouring:
    return EdgeColouring(n, k, tuple(rng.randint(1, k) for _ in range(n * (n - 1) // 2)))


_PROPERTY_FAMILIES = ("complete:3", "cycle:4", "cycle:5", "path:4", "star:3", "matching:2", "cm:1-1-2")


def property_prop31(rng: random.Random) -> Optional[str]:
    """No ``K_{4,2}`` in colour ``i`` between a NIM-``i`` neighbourhood and the rest (padded ``C_4``)."""
    n = rng.randint(4, 14)
    c4 = build("cycle:4")
    phi = _random_colouring(rng, n, 2)
    report = nim_set(phi, [c4, c4])
    nim = set(report.nim_edges)
    everyone = (1 << n) - 1
    for i in (1, 2):
        g = colour_class(phi, i)
        for v in range(n):
            u_mask = 0
            for w in range(n):
                if w != v and (min(v, w), max(v, w)) in nim and phi.colour(v, w) == i:
                    u_mask |= 1 << w
            rest = everyone & ~u_mask & ~(1 << v)
            for s, t in ((4, 2), (2, 4)):
                if contains_complete_bipartite(g, u_mask, rest, s, t):
                    return f"(ii) fails: n={n} v={v} colour={i}"
            for u in range(n):
                if not u_mask >> u & 1:
                    continue
                left = g.adj[v] & ~(1 << u)
                right = g.adj[u] & ~(1 << v)
                for s, t in ((4, 2), (2, 4)):
                    if _bipartite_pair_has(g, left, right, s, t):
                        return f"(i) fails: n={n} v={v} u={u} colour={i}"
    return None


def _bipartite_pair_has(g: Graph, left: int, right: int, s: int, t: int) -> bool:
    """``K_{s,t}`` with ``s`` distinct vertices from ``left`` and ``t`` from ``right``; the sides may overlap."""
    for combo in itertools.combinations(iter_bits(left), s):
        common = right
        for x in combo:
            common &= g.adj[x]
        for x in combo:
            common &= ~(1 << x)
        if popcount(common) >= t:
            return True
    return False


def _random_instance(rng: random.Random) -> tuple[EdgeColouring, list[Graph]]:
    n = rng.randint(2, 14)
    k = rng.randint(1, 3)
    gs = [build(rng.choice(_PROPERTY_FAMILIES)) for _ in range(k)]
    return _random_colouring(rng, n, k), gs


def property_restriction(rng: random.Random) -> Optional[str]:
    """A NIM-edge stays NIM in every induced sub-colouring containing it."""
    phi, gs = _random_instance(rng)
    nim = set(nim_set(phi, gs).nim_edges)
    keep = sorted(rng.sample(range(phi.n), rng.randint(2, phi.n)))
    sub = set(nim_set(phi.restrict(keep), gs).nim_edges)
    for a, b in itertools.combinations(range(len(keep)), 2):
        if (keep[a], keep[b]) in nim and (a, b) not in sub:
            return f"edge {keep[a]}{keep[b]} lost NIM status on restriction"
    return None


def property_invariance(rng: random.Random) -> Optional[str]:
    """NIM counts ignore vertex relabelling and a matching permutation of colours and graphs."""
    phi, gs = _random_instance(rng)
    base = nim_count(phi, gs)
    perm = list(range(phi.n))
    rng.shuffle(perm)
    if nim_count(phi.relabel(perm), gs) != base:
        return "vertex relabelling changed the count"
    order = list(range(phi.k))
    rng.shuffle(order)
    # colour c becomes sigma[c]; graph list permuted to match
    sigma = {c + 1: order.index(c) + 1 for c in range(phi.k)}
    moved = [gs[order[j]] for j in range(phi.k)]
    if nim_count(phi.permute_colours(sigma), moved) != base:
        return "colour permutation changed the count"
    return None


def property_witnesses(rng: random.Random) -> Optional[str]:
    """Every non-NIM edge has a witness copy that re-verifies."""
    phi, gs = _random_instance(rng)
    try:
        verify_report(phi, gs, nim_set(phi, gs))
    except AssertionError as exc:
        return str(exc)
    return None


PROPERTIES = {
    "K_{h,h/2}-freeness": property_prop31,
    "restriction monotonicity": property_restriction,
    "relabelling invariance": property_invariance,
    "witness re-verification": property_witnesses,
}


def check_properties(instances: int = 1000, seed: int = 2024) -> tuple[bool, str]:
    parts, ok = [], True
    for offset, (name, prop) in enumerate(PROPERTIES.items()):
        rng = random.Random(seed + offset)
        failures = [msg for _ in range(instances) if (msg := prop(rng)) is not None]
        ok &= not failures
        parts.append(f"{name} {instances - len(failures)}/{instances}" + (f" first: {failures[0]}" if failures else ""))
    return ok, "; ".join(parts)


def check_overlay() -> tuple[bool, str]:
    tree, k, n = build("path:4"), 3, 81
    h = tree.n - 1
    res = overlay_placements(tree, k, n, seed=0)
    edge_sets = [set(p.edges()) for p in res.placements]
    disjoint = all(not (a & b) for a, b in itertools.combinations(edge_sets, 2))
    ex_measured = (n // h) * h * (h - 1) // 2
    bound = (k - 1) * ex_measured - k * k * h * h
    count = nim_count(res.colouring, [tree] * k)
    ok = disjoint and count >= bound
    return ok, f"switches={res.switches} disjoint={disjoint} nim={count} bound={bound}"


def check_matching() -> tuple[bool, str]:
    n, k = 12, 3
    phi = star_packing_colouring(n, k)
    count = nim_count(phi, [build("matching:2")] * k)
    target = (k - 1) * (n - 1) - (k - 1) * (k - 2) // 2
    return count >= target == 21, f"nim={count} target={target}"


CRITERIA = [
    (1, "r*(K3,K3,K3)=5 and nice", 300, check_rstar_triangles),
    (2, "r*(C5,C5,C5)=4 and not nice", 60, check_rstar_c5),
    (3, "r_hom(K3,K3)=5", 60, check_rhom_triangles),
    (4, "GF(16) template feasible", 1, check_gf16),
    (5, "blow-up reaches t(50,5)", 10, check_blowup),
    (6, "nim(n;K3,K3) exact for n=5,6,7", 600, check_nim_triangles),
    (7, "ex(7,C4)=9 and nim(7;C4,C4)", 900, check_c4),
    (8, "property suites", 300, check_properties),
    (9, "overlay packing for P4", 60, check_overlay),
    (10, "M2 star packing", 1, check_matching),
]


def run_criterion(number: int) -> Check:
    for num, name, limit, fn in CRITERIA:
        if num == number:
            return _timed(num, name, limit, fn)
    raise KeyError(number)


def run_all(fail_fast: bool = True, only: Optional[list[int]] = None, echo=print) -> list[Check]:
    results = []
    for num, name, limit, fn in CRITERIA:
        if only and num not in only:
            continue
        check = _timed(num, name, limit, fn)
        echo(check.line())
        results.append(check)
        if fail_fast and not check.ok:
            echo(f"criterion {num} ({name}) failed")
            break
    return results
