"""Simple undirected graphs on ``0..n-1`` with bitmask adjacency.

Each vertex's neighbourhood is stored as a Python int whose bit ``u`` is set
iff ``u`` is adjacent.  Graphs are immutable and hashable, so they can be used
as cache keys by the search routines.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, ParameterError, ParseError

#: Largest graph order accepted by :class:`Graph`.
MAX_ORDER = 256


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]
    _edges: tuple[tuple[int, int], ...] = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise ParameterError(f"graph order {self.n} outside [0, {MAX_ORDER}]")
        if len(self.adj) != self.n:
            raise ParameterError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full or nb < 0:
                raise ParameterError(f"vertex {v} has a neighbour outside [0, {self.n})")
            if nb >> v & 1:
                raise ParameterError(f"loop at vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ParameterError(f"adjacency not symmetric at {v},{u}")
        edges = tuple((v, u) for v in range(self.n) for u in iter_bits(self.adj[v] >> (v + 1) << (v + 1)))
        object.__setattr__(self, "_edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, strict: bool = False) -> "Graph":
        """Build a graph from an edge list.

        With ``strict=True`` duplicate edges raise instead of being merged.
        """
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge {u},{v} outside [0, {n})")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if strict and adj[u] >> v & 1:
                raise ParameterError(f"duplicate edge {min(u, v)},{max(u, v)}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj)))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled ``0..len-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices), ((index[u], index[v]) for u, v in self._edges if u in index and v in index)
        )

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self._edges))

    def remove_edge(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def __str__(self):
        return format_graph(self)


# ---------------------------------------------------------------------------
# Named families


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family with its size parameters, or a graph file."""

    tag: str
    params: tuple[int, ...] = ()
    path: str | None = None


_ARITY = {
    "complete": 1,
    "cycle": 1,
    "path": 1,
    "star": 1,
    "matching": 1,
    "empty": 1,
    "turan": 2,
}
_ALIASES = {"complete_multipartite": "cm", "multipartite": "cm", "K": "complete", "C": "cycle", "P": "path"}


def parse_family(text: str) -> FamilySpec:
    """Parse the shorthand ``tag:p1-p2-...`` (or ``file:<path>``)."""
    text = text.strip()
    tag, sep, rest = text.partition(":")
    if not sep:
        raise ParameterError(f"family shorthand {text!r} lacks ':'")
    tag = _ALIASES.get(tag, tag)
    if tag == "file":
        return FamilySpec("file", path=rest)
    try:
        params = tuple(int(p) for p in rest.replace(",", "-").split("-") if p != "")
    except ValueError:
        raise ParameterError(f"non-integer parameter in {text!r}") from None
    return FamilySpec(tag, params)


def parse_graph_list(text: str) -> list[Graph]:
    """Parse a comma-separated list of family shorthands into graphs."""
    return [build(parse_family(part)) for part in text.split(",") if part.strip()]


def turan_part_sizes(n: int, r: int) -> list[int]:
    """Balanced part sizes of ``T(n, r)``, larger parts first."""
    if r < 1 or n < 0:
        raise ParameterError(f"invalid Turán parameters n={n}, r={r}")
    q, rem = divmod(n, r)
    return [q + 1] * rem + [q] * (r - rem)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph with consecutive vertex blocks as parts."""
    if any(s < 0 for s in sizes):
        raise ParameterError("part sizes must be non-negative")
    n = sum(sizes)
    adj = []
    start = 0
    full = (1 << n) - 1
    for s in sizes:
        block = ((1 << s) - 1) << start
        adj.extend([full & ~block] * s)
        start += s
    return Graph(n, tuple(adj))


def build(spec: FamilySpec | str) -> Graph:
    """Construct the graph named by ``spec``.

    >>> build("complete:3").num_edges
    3
    >>> build("turan:5-2").num_edges
    6
    """
    if isinstance(spec, str):
        spec = parse_family(spec)
    tag, p = spec.tag, spec.params
    if tag == "file":
        return read_graph(spec.path)
    if tag == "cm":
        if not p or any(a < 1 for a in p):
            raise ParameterError("complete multipartite parts must all be >= 1")
        return complete_multipartite(p)
    if tag not in _ARITY:
        raise ParameterError(f"unknown graph family {tag!r}")
    if len(p) != _ARITY[tag]:
        raise ParameterError(f"{tag} expects {_ARITY[tag]} parameter(s), got {len(p)}")
    if tag == "turan":
        n, r = p
        if r < 1 or n < 1 or r > n:
            raise ParameterError(f"turan requires 1 <= r <= n, got n={n}, r={r}")
        return complete_multipartite(turan_part_sizes(n, r))
    (a,) = p
    minimum = {"cycle": 3}.get(tag, 1)
    if a < minimum:
        raise ParameterError(f"{tag}:{a} invalid, parameter must be >= {minimum}")
    if tag == "complete":
        return complete_multipartite([1] * a)
    if tag == "empty":
        return Graph.empty(a)
    if tag == "cycle":
        return Graph.from_edges(a, [(i, (i + 1) % a) for i in range(a)])
    if tag == "path":
        return Graph.from_edges(a, [(i, i + 1) for i in range(a - 1)])
    if tag == "star":
        return Graph.from_edges(a + 1, [(0, i) for i in range(1, a + 1)])
    # matching
    return Graph.from_edges(2 * a, [(2 * i, 2 * i + 1) for i in range(a)])


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# ---------------------------------------------------------------------------
# Metrics


def turan_number(n: int, r: int) -> int:
    """Number of edges of the Turán graph ``T(n, r)``.

    >>> turan_number(50, 5)
    1000
    """
    if r < 1 or n < 1 or r > n:
        raise ParameterError(f"turan_number requires 1 <= r <= n, got n={n}, r={r}")
    return math.comb(n, 2) - sum(math.comb(s, 2) for s in turan_part_sizes(n, r))


def turan_min_degree(n: int, r: int) -> int:
    """Minimum degree of ``T(n, r)``; for ``r >= n`` this is ``n - 1`` (a clique)."""
    if n <= 0:
        return 0
    return n - (n + r - 1) // r


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in iter_bits(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges == g.n - 1 and is_connected(g)


def chromatic_number(g: Graph, max_order: int = 16) -> int:
    """Exact chromatic number by backtracking; refuses graphs above ``max_order``."""
    if g.n > max_order:
        raise BudgetExceeded(f"chromatic_number limited to {max_order} vertices, got {g.n}")
    if g.n == 0:
        return 0
    if g.num_edges == 0:
        return 1
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    lower = max(2, _greedy_clique_size(g))
    for k in range(lower, g.n + 1):
        if _colourable(g, order, k):
            return k
    return g.n


def _greedy_clique_size(g: Graph) -> int:
    best = 1
    for v in range(g.n):
        cand = g.adj[v]
        size = 1
        while cand:
            u = max(iter_bits(cand), key=lambda w: popcount(g.adj[w] & cand))
            size += 1
            cand &= g.adj[u]
        best = max(best, size)
    return best


def _colourable(g: Graph, order: list[int], k: int) -> bool:
    colour = [-1] * g.n

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        forbidden = {colour[u] for u in iter_bits(g.adj[v])}
        # a fresh colour is interchangeable with any other unused one
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colour[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        colour[v] = -1
        return False

    return rec(0, 0)


def edit_distance(g: Graph, h: Graph, max_order: int = 10) -> int:
    """Minimum ``|E(g) ^ sigma(E(h))|`` over all bijections ``sigma``.

    Branch and bound over partial bijections; exact, so limited to small orders.
    """
    if g.n != h.n:
        raise ParameterError(f"edit_distance needs equal orders, got {g.n} and {h.n}")
    if g.n > max_order:
        raise BudgetExceeded(f"edit_distance limited to {max_order} vertices, got {g.n}")
    n = g.n
    # map h's vertices in degree-descending order; it tightens the bound early
    order = sorted(range(n), key=lambda v: (-h.degree(v), v))
    best = [popcount_sym_diff(g, h)]
    floor = abs(g.num_edges - h.num_edges)
    image = [0] * n

    def rec(i: int, used: int, cost: int) -> None:
        if cost >= best[0]:
            return
        if i == n:
            best[0] = cost
            return
        v = order[i]
        for w in range(n):
            if used >> w & 1:
                continue
            extra = 0
            for j in range(i):
                u = order[j]
                if h.has_edge(v, u) != g.has_edge(w, image[u]):
                    extra += 1
            image[v] = w
            rec(i + 1, used | 1 << w, cost + extra)
            if best[0] == floor:
                return

    if best[0] > floor:
        rec(0, 0, 0)
    return best[0]


def popcount_sym_diff(g: Graph, h: Graph) -> int:
    """``|E(g) ^ E(h)|`` under the identity bijection."""
    return sum(popcount(a ^ b) for a, b in zip(g.adj, h.adj)) // 2


def contains_complete_bipartite(g: Graph, left: int, right: int, s: int, t: int) -> bool:
    """Whether ``g`` has ``s`` vertices in ``left`` all adjacent to ``t`` common vertices in ``right``.

    ``left`` and ``right`` are disjoint vertex bitmasks.
    """
    if s == 0:
        return popcount(right) >= t
    for combo in itertools.combinations(iter_bits(left), s):
        common = right
        for v in combo:
            common &= g.adj[v]
            if popcount(common) < t:
                break
        else:
            return True
    return False


# ---------------------------------------------------------------------------
# Isomorphism at small orders


def canonical_form(g: Graph, max_order: int = 10) -> tuple[int, int]:
    """Isomorphism-invariant key ``(n, code)`` by brute force within degree cells."""
    if g.n > max_order:
        raise BudgetExceeded(f"canonical_form limited to {max_order} vertices, got {g.n}")
    n = g.n
    deg = g.degrees()
    inv = [(deg[v], tuple(sorted(deg[u] for u in iter_bits(g.adj[v])))) for v in range(n)]
    keys = sorted(set(inv))
    cells = [[v for v in range(n) if inv[v] == key] for key in keys]
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in parts for v in part]
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        code = 0
        for u, v in g.edges():
            a, b = sorted((pos[u], pos[v]))
            code |= 1 << (a * n + b)
        if best is None or code < best:
            best = code
    return n, best or 0


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# File format: "graph <n>" then "e <u> <v>" lines; '#' starts a comment.


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if n is None:
                if tok[0] != "graph" or len(tok) != 2:
                    raise ParseError(f"line {lineno}: expected 'graph <n>'")
                n = int(tok[1])
                if n < 0:
                    raise ParseError(f"line {lineno}: negative order")
                continue
            if tok[0] != "e" or len(tok) != 3:
                raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = int(tok[1]), int(tok[2])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        if not 0 <= u < v < n:
            raise ParseError(f"line {lineno}: edge must satisfy 0 <= u < v < {n}")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'graph <n>' header")
    return Graph.from_edges(n, edges)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
