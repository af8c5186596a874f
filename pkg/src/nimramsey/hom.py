"""Homomorphism and subgraph-copy search over bitmask adjacency.

The search routines accept either a :class:`~nimramsey.graph.Graph` or a raw
adjacency sequence for the host, so that the colouring searches can test
their mutable colour classes without building ``Graph`` objects at every node.

Embeddings are tuples ``img`` with ``img[x]`` the host vertex assigned to
pattern vertex ``x``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import BudgetExceeded, ParameterError
from .graph import Graph, canonical_form, is_bipartite, iter_bits

Embedding = tuple
Plan = tuple  # ((vertex, (placed neighbours...)), ...)


@lru_cache(maxsize=None)
def _plan(h: Graph, fixed: tuple[int, ...], include_isolated: bool) -> Plan:
    """Order the free vertices of ``h`` most-constrained first.

    Each step picks the vertex with the most already-placed neighbours, then
    the highest degree, then the lowest index.
    """
    placed = set(fixed)
    todo = [v for v in range(h.n) if v not in placed and (include_isolated or h.adj[v])]
    deg = h.degrees()
    steps = []
    while todo:
        v = max(todo, key=lambda x: (sum(1 for u in iter_bits(h.adj[x]) if u in placed), deg[x], -x))
        steps.append((v, tuple(u for u in iter_bits(h.adj[v]) if u in placed)))
        placed.add(v)
        todo.remove(v)
    return tuple(steps)


def _find(plan: Plan, adj: Sequence[int], everything: int, img: list, used: int, injective: bool, pos: int) -> bool:
    if pos == len(plan):
        return True
    v, nbrs = plan[pos]
    cand = everything
    for p in nbrs:
        cand &= adj[img[p]]
    if injective:
        cand &= ~used
    while cand:
        low = cand & -cand
        w = low.bit_length() - 1
        img[v] = w
        if _find(plan, adj, everything, img, used | low, injective, pos + 1):
            return True
        cand ^= low
    return False


def _enumerate(
    plan: Plan, adj: Sequence[int], everything: int, img: list, used: int, injective: bool, pos: int = 0
) -> Iterator[list]:
    if pos == len(plan):
        yield img
        return
    v, nbrs = plan[pos]
    cand = everything
    for p in nbrs:
        cand &= adj[img[p]]
    if injective:
        cand &= ~used
    while cand:
        low = cand & -cand
        img[v] = low.bit_length() - 1
        yield from _enumerate(plan, adj, everything, img, used | low, injective, pos + 1)
        cand ^= low


def _host(g) -> tuple[Sequence[int], int]:
    if isinstance(g, Graph):
        return g.adj, g.n
    return g, len(g)


def _verify(h: Graph, adj: Sequence[int], img: Sequence[int], injective: bool) -> None:
    for x, y in h.edges():
        if not adj[img[x]] >> img[y] & 1:
            raise AssertionError(f"embedding {img} does not preserve edge {x}{y}")
    if injective and len(set(img)) != len(img):
        raise AssertionError(f"embedding {img} is not injective")


@lru_cache(maxsize=None)
def automorphisms(h: Graph) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of ``h`` (as image tuples); intended for small patterns."""
    plan = _plan(h, (), True)
    img = [0] * h.n
    out = []
    degs = h.degrees()
    for m in _enumerate(plan, h.adj, (1 << h.n) - 1, img, 0, True):
        if all(degs[m[v]] == degs[v] for v in range(h.n)):
            out.append(tuple(m))
    return tuple(out)


@lru_cache(maxsize=None)
def arc_orbit_representatives(h: Graph) -> tuple[tuple[int, int], ...]:
    """One arc ``(a, b)`` per orbit of ``Aut(h)`` on ordered edges.

    Every copy of ``h`` through a host arc ``(u, v)`` maps some representative
    ``(a, b)`` onto ``(u, v)``.
    """
    arcs = [(a, b) for a, b in h.edges()] + [(b, a) for a, b in h.edges()]
    if h.n > 9:
        return tuple(sorted(arcs))
    auts = automorphisms(h)
    seen = set()
    reps = []
    for arc in sorted(arcs):
        if arc in seen:
            continue
        reps.append(arc)
        for s in auts:
            seen.add((s[arc[0]], s[arc[1]]))
    return tuple(reps)


# ---------------------------------------------------------------------------
# Homomorphisms


def homomorphism_exists(h: Graph, g) -> Optional[Embedding]:
    """A homomorphism ``h -> g`` or ``None``.

    Isolated vertices of ``h`` are sent to host vertex 0.

    >>> from nimramsey.graph import build
    >>> homomorphism_exists(build("cycle:5"), build("complete:3")) is not None
    True
    >>> homomorphism_exists(build("complete:3"), build("cycle:5")) is None
    True
    """
    adj, n = _host(g)
    if h.n == 0:
        return ()
    if n == 0:
        return None
    plan = _plan(h, (), False)
    img = [0] * h.n
    if not _find(plan, adj, (1 << n) - 1, img, 0, False, 0):
        return None
    _verify(h, adj, img, False)
    return tuple(img)


def homomorphism_through_edge(h: Graph, g, u: int, v: int) -> Optional[Embedding]:
    """A homomorphism ``h -> g`` sending some edge of ``h`` onto host edge ``uv``."""
    adj, n = _host(g)
    everything = (1 << n) - 1
    img = [0] * h.n
    for a, b in arc_orbit_representatives(h):
        img[a], img[b] = u, v
        if _find(_plan(h, (a, b), False), adj, everything, img, 0, False, 0):
            _verify(h, adj, img, False)
            return tuple(img)
    return None


def iter_homomorphisms(h: Graph, g) -> Iterator[Embedding]:
    """Every homomorphism ``h -> g``, isolated vertices included."""
    adj, n = _host(g)
    img = [0] * h.n
    for m in _enumerate(_plan(h, (), True), adj, (1 << n) - 1, img, 0, False):
        yield tuple(m)


# ---------------------------------------------------------------------------
# Injective copies


def copy_through_edge(h: Graph, g, e: tuple[int, int]) -> Optional[Embedding]:
    """An injective copy of ``h`` in ``g`` having ``e`` as the image of an edge of ``h``."""
    adj, n = _host(g)
    u, v = e
    if not (0 <= u < n and 0 <= v < n) or not adj[u] >> v & 1:
        raise ParameterError(f"{u}{v} is not an edge of the host graph")
    img = _copy_through_arc(h, adj, n, u, v)
    if img is not None:
        _verify(h, adj, img, True)
    return img


def _copy_through_arc(h: Graph, adj: Sequence[int], n: int, u: int, v: int) -> Optional[Embedding]:
    if h.n > n:
        return None
    everything = (1 << n) - 1
    img = [0] * h.n
    used = 1 << u | 1 << v
    for a, b in arc_orbit_representatives(h):
        img[a], img[b] = u, v
        if _find(_plan(h, (a, b), True), adj, everything, img, used, True, 0):
            return tuple(img)
    return None


def copies_through_edge(h: Graph, g, u: int, v: int) -> Iterator[Embedding]:
    """Every injective copy of ``h`` through host edge ``uv`` (possibly with repeats
    of the same image under automorphisms of ``h``)."""
    adj, n = _host(g)
    if h.n > n:
        return
    everything = (1 << n) - 1
    img = [0] * h.n
    used = 1 << u | 1 << v
    for a, b in arc_orbit_representatives(h):
        img[a], img[b] = u, v
        for m in _enumerate(_plan(h, (a, b), True), adj, everything, img, used, True):
            yield tuple(m)


def edges_in_copies_through(h: Graph, adj: Sequence[int], n: int, u: int, v: int) -> set:
    """Host edges covered by copies of ``h`` through ``uv`` (empty set if none)."""
    covered = set()
    hedges = h.edges()
    for img in copies_through_edge(h, adj, u, v):
        for x, y in hedges:
            a, b = img[x], img[y]
            covered.add((a, b) if a < b else (b, a))
    return covered


def contains_copy(h: Graph, g) -> Optional[Embedding]:
    """Any injective copy of ``h`` in ``g``."""
    adj, n = _host(g)
    if h.n > n:
        return None
    if not h.edges():
        return tuple(range(h.n))
    img = [0] * h.n
    if _find(_plan(h, (), True), adj, (1 << n) - 1, img, 0, True, 0):
        _verify(h, adj, img, True)
        return tuple(img)
    return None


def format_embedding(img: Embedding) -> str:
    return " ".join(f"{x}->{w}" for x, w in enumerate(img))


# ---------------------------------------------------------------------------
# Minimal homomorphic images and homomorphism-criticality


def _independent_partitions(h: Graph, max_blocks: int) -> Iterator[list[int]]:
    """Restricted-growth labellings of ``V(h)`` whose blocks are independent sets."""
    block_of = [0] * h.n
    members = []

    def rec(v: int) -> Iterator[list[int]]:
        if v == h.n:
            yield block_of
            return
        for b in range(len(members)):
            if not members[b] & h.adj[v]:
                block_of[v] = b
                members[b] |= 1 << v
                yield from rec(v + 1)
                members[b] &= ~(1 << v)
        if len(members) < max_blocks:
            block_of[v] = len(members)
            members.append(1 << v)
            yield from rec(v + 1)
            members.pop()

    yield from rec(0)


def quotient(h: Graph, block_of: Sequence[int]) -> Graph:
    m = max(block_of) + 1 if block_of else 0
    return Graph.from_edges(m, {(block_of[x], block_of[y]) for x, y in h.edges()})


def is_minimal_homomorphic_image(h: Graph, f: Graph) -> bool:
    """``h -> f`` holds but no proper subgraph of ``f`` receives a homomorphism."""
    if homomorphism_exists(h, f) is None:
        return False
    if not h.edges():
        return f.n == 1
    if f.isolated_vertices():
        return False
    return all(homomorphism_exists(h, f.remove_edge(a, b)) is None for a, b in f.edges())


def minimal_homomorphic_images(h: Graph, max_order: int) -> list[Graph]:
    """All minimal homomorphic images of ``h`` with at most ``max_order`` vertices, up to isomorphism.

    A minimal image is the image of a homomorphism, hence a quotient of ``h``
    by a partition into independent sets; quotients are generated and then
    filtered for minimality.
    """
    if max_order < 1:
        raise ParameterError("max_order must be >= 1")
    if h.n > 8:
        raise BudgetExceeded(f"minimal_homomorphic_images limited to 8 pattern vertices, got {h.n}")
    found: dict = {}
    for block_of in _independent_partitions(h, max_order):
        f = quotient(h, block_of)
        key = canonical_form(f)
        if key in found:
            continue
        found[key] = f if is_minimal_homomorphic_image(h, f) else None
    images = [f for f in found.values() if f is not None]
    return sorted(images, key=lambda f: (f.n, f.num_edges, canonical_form(f)))


def is_homomorphism_critical(h: Graph) -> bool:
    """Every minimal image ``F`` has, for each edge ``uv``, a homomorphism with singleton preimages at ``u`` and ``v``."""
    if is_bipartite(h):
        raise ParameterError("homomorphism-criticality is only defined here for non-bipartite graphs")
    if h.n > 8:
        raise BudgetExceeded(f"is_homomorphism_critical limited to 8 vertices, got {h.n}")
    for f in minimal_homomorphic_images(h, h.n):
        pending = set(f.edges())
        for img in iter_homomorphisms(h, f):
            counts = [0] * f.n
            for w in img:
                counts[w] += 1
            pending = {(a, b) for a, b in pending if counts[a] != 1 or counts[b] != 1}
            if not pending:
                break
        if pending:
            return False
    return True
