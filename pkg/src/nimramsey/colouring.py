"""Edge colourings of complete graphs and template colourings on points and pairs.

Colours are 1-based (``1..k``); vertices and template points are 0-based.
Pairs are stored in lexicographic order ``(0,1), (0,2), ..., (n-2,n-1)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from .errors import ParameterError, ParseError
from .graph import Graph
from .hom import homomorphism_exists


def pair_index(n: int, u: int, v: int) -> int:
    """Position of pair ``{u, v}`` in lexicographic order over ``[n]``."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def _class_masks(n: int, k: int, colours: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    adj = [[0] * n for _ in range(k + 1)]
    for (u, v), c in zip(itertools.combinations(range(n), 2), colours):
        adj[c][u] |= 1 << v
        adj[c][v] |= 1 << u
    return tuple(tuple(a) for a in adj)


@dataclass(frozen=True)
class EdgeColouring:
    """A total map from the pairs of ``[n]`` to colours ``1..k``."""

    n: int
    k: int
    colours: tuple[int, ...]
    _masks: tuple = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("need at least one colour")
        if len(self.colours) != math.comb(self.n, 2):
            raise ParameterError(f"expected {math.comb(self.n, 2)} pair colours, got {len(self.colours)}")
        bad = [c for c in self.colours if not 1 <= c <= self.k]
        if bad:
            raise ParameterError(f"colour {bad[0]} outside [1, {self.k}]")
        object.__setattr__(self, "_masks", _class_masks(self.n, self.k, self.colours))

    @classmethod
    def from_function(cls, n: int, k: int, fn: Callable[[int, int], int]) -> "EdgeColouring":
        return cls(n, k, tuple(fn(u, v) for u, v in itertools.combinations(range(n), 2)))

    @classmethod
    def constant(cls, n: int, k: int, c: int = 1) -> "EdgeColouring":
        return cls(n, k, (c,) * math.comb(n, 2))

    @classmethod
    def from_classes(cls, n: int, k: int, classes: dict[int, Graph], default: int) -> "EdgeColouring":
        """Colour the edges of ``classes[c]`` with ``c`` and everything else ``default``.

        The graphs in ``classes`` must be edge-disjoint.
        """
        colours = [0] * math.comb(n, 2)
        for c, g in classes.items():
            for u, v in g.edges():
                i = pair_index(n, u, v)
                if colours[i]:
                    raise ParameterError(f"pair {u}{v} assigned two colours")
                colours[i] = c
        return cls(n, k, tuple(c or default for c in colours))

    def colour(self, u: int, v: int) -> int:
        if u == v:
            raise ParameterError("a pair needs two distinct vertices")
        return self.colours[pair_index(self.n, u, v)]

    def class_adjacency(self, i: int) -> tuple[int, ...]:
        """Neighbour bitmasks of the colour-``i`` graph."""
        if not 1 <= i <= self.k:
            raise ParameterError(f"colour {i} outside [1, {self.k}]")
        return self._masks[i]

    def items(self):
        return zip(itertools.combinations(range(self.n), 2), self.colours)

    def restrict(self, vertices: Sequence[int]) -> "EdgeColouring":
        """Sub-colouring on ``vertices``, relabelled ``0..len-1`` in the given order."""
        return EdgeColouring.from_function(len(vertices), self.k, lambda a, b: self.colour(vertices[a], vertices[b]))

    def relabel(self, perm: Sequence[int]) -> "EdgeColouring":
        """Colouring in which vertex ``v`` is renamed ``perm[v]``."""
        inverse = [0] * self.n
        for v, p in enumerate(perm):
            inverse[p] = v
        return EdgeColouring.from_function(self.n, self.k, lambda a, b: self.colour(inverse[a], inverse[b]))

    def permute_colours(self, perm: dict[int, int] | Sequence[int]) -> "EdgeColouring":
        """Apply ``c -> perm[c]`` (a mapping, or a sequence indexed by ``c - 1``)."""
        mapping = perm if isinstance(perm, dict) else {c + 1: p for c, p in enumerate(perm)}
        return EdgeColouring(self.n, self.k, tuple(mapping[c] for c in self.colours))


def colour_class(phi: EdgeColouring, i: int) -> Graph:
    """Spanning subgraph of ``K_n`` formed by the colour-``i`` pairs."""
    return Graph(phi.n, phi.class_adjacency(i))


@dataclass(frozen=True)
class TemplateColouring:
    """Colours on the points and pairs of ``[r]``."""

    r: int
    k: int
    vcolour: tuple[int, ...]
    pcolour: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError("need at least one colour")
        if len(self.vcolour) != self.r:
            raise ParameterError(f"expected {self.r} point colours, got {len(self.vcolour)}")
        if len(self.pcolour) != math.comb(self.r, 2):
            raise ParameterError(f"expected {math.comb(self.r, 2)} pair colours, got {len(self.pcolour)}")
        for c in self.vcolour + self.pcolour:
            if not 1 <= c <= self.k:
                raise ParameterError(f"colour {c} outside [1, {self.k}]")

    @classmethod
    def from_function(cls, r: int, k: int, vcolour: Sequence[int], fn: Callable[[int, int], int]) -> "TemplateColouring":
        return cls(r, k, tuple(vcolour), tuple(fn(i, j) for i, j in itertools.combinations(range(r), 2)))

    def pair_colour(self, i: int, j: int) -> int:
        return self.pcolour[pair_index(self.r, i, j)]

    def pair_colouring(self) -> EdgeColouring:
        return EdgeColouring(self.r, self.k, self.pcolour)

    def pair_class(self, c: int) -> Graph:
        return colour_class(self.pair_colouring(), c)

    def permute_points(self, perm: Sequence[int]) -> "TemplateColouring":
        """Template with point ``i`` renamed ``perm[i]``."""
        inverse = [0] * self.r
        for i, p in enumerate(perm):
            inverse[p] = i
        return TemplateColouring.from_function(
            self.r, self.k, [self.vcolour[inverse[a]] for a in range(self.r)],
            lambda a, b: self.pair_colour(inverse[a], inverse[b]),
        )

    def point_colours_used(self) -> set[int]:
        return set(self.vcolour)


@dataclass(frozen=True)
class Violation:
    """Why a template is infeasible.

    ``kind`` is ``"P1"`` (a monochromatic homomorphic image of ``H[colour-1]``,
    with the homomorphism in ``embedding``) or ``"P2"`` (``pair`` shares its
    colour with ``point``).
    """

    kind: str
    colour: int
    embedding: Optional[tuple[int, ...]] = None
    pair: Optional[tuple[int, int]] = None
    point: Optional[int] = None

    def describe(self) -> str:
        if self.kind == "P2":
            return f"P2: pair {self.pair} has colour {self.colour}, same as point {self.point}"
        return f"P1: colour {self.colour} pairs contain a homomorphic image {self.embedding}"


@dataclass(frozen=True)
class FeasibilityVerdict:
    feasible: bool
    violation: Optional[Violation] = None

    def __bool__(self):
        return self.feasible


def is_feasible(xi: TemplateColouring, graphs: Sequence[Graph]) -> FeasibilityVerdict:
    """Check that no pair shares a colour with one of its points, and that no
    colour-``i`` pair graph receives a homomorphism from ``graphs[i-1]``."""
    if len(graphs) != xi.k:
        raise ParameterError(f"{len(graphs)} graphs given for {xi.k} colours")
    for (i, j), c in zip(itertools.combinations(range(xi.r), 2), xi.pcolour):
        for p in (i, j):
            if xi.vcolour[p] == c:
                return FeasibilityVerdict(False, Violation("P2", c, pair=(i, j), point=p))
    pc = xi.pair_colouring()
    for c in range(1, xi.k + 1):
        img = homomorphism_exists(graphs[c - 1], pc.class_adjacency(c))
        if img is not None:
            return FeasibilityVerdict(False, Violation("P1", c, embedding=img))
    return FeasibilityVerdict(True)


def blow_up(xi: TemplateColouring, sizes: Sequence[int]) -> EdgeColouring:
    """Replace point ``i`` by a block of ``sizes[i]`` consecutive vertices.

    Pairs across blocks ``i, j`` get the pair colour of ``ij``, pairs inside
    block ``i`` get the colour of point ``i``.
    """
    if len(sizes) != xi.r:
        raise ParameterError(f"{len(sizes)} part sizes given for a template on {xi.r} points")
    if any(s < 1 for s in sizes):
        raise ParameterError("all part sizes must be >= 1")
    part = [i for i, s in enumerate(sizes) for _ in range(s)]

    def colour(a: int, b: int) -> int:
        pa, pb = part[a], part[b]
        return xi.vcolour[pa] if pa == pb else xi.pair_colour(pa, pb)

    return EdgeColouring.from_function(len(part), xi.k, colour)


def part_blocks(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


# ---------------------------------------------------------------------------
# File formats


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tok: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tok]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer field") from None


def format_colouring(phi: EdgeColouring) -> str:
    lines = [f"colouring {phi.n} {phi.k}"]
    lines.extend(f"{u} {v} {c}" for (u, v), c in phi.items())
    return "\n".join(lines) + "\n"


def parse_colouring(text: str) -> EdgeColouring:
    lines = iter(_content_lines(text))
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("empty colouring file") from None
    if head[0] != "colouring" or len(head) != 3:
        raise ParseError(f"line {lineno}: expected 'colouring <n> <k>'")
    n, k = _ints(head[1:], lineno)
    if n < 0 or k < 1:
        raise ParseError(f"line {lineno}: invalid n or k")
    colours = [0] * math.comb(n, 2)
    for lineno, tok in lines:
        if len(tok) != 3:
            raise ParseError(f"line {lineno}: expected '<u> <v> <c>'")
        u, v, c = _ints(tok, lineno)
        if not 0 <= u < v < n:
            raise ParseError(f"line {lineno}: pair must satisfy 0 <= u < v < {n}")
        if not 1 <= c <= k:
            raise ParseError(f"line {lineno}: colour {c} outside [1, {k}]")
        i = pair_index(n, u, v)
        if colours[i]:
            raise ParseError(f"line {lineno}: pair {u} {v} coloured twice")
        colours[i] = c
    missing = [p for p, c in zip(pairs(n), colours) if not c]
    if missing:
        raise ParseError(f"pair {missing[0]} has no colour ({len(missing)} missing)")
    return EdgeColouring(n, k, tuple(colours))


def format_template(xi: TemplateColouring) -> str:
    lines = [f"template {xi.r} {xi.k}"]
    lines.extend(f"v {i} {c}" for i, c in enumerate(xi.vcolour))
    lines.extend(f"p {i} {j} {c}" for (i, j), c in zip(pairs(xi.r), xi.pcolour))
    return "\n".join(lines) + "\n"


def parse_template(text: str) -> TemplateColouring:
    lines = iter(_content_lines(text))
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise ParseError("empty template file") from None
    if head[0] != "template" or len(head) != 3:
        raise ParseError(f"line {lineno}: expected 'template <r> <k>'")
    r, k = _ints(head[1:], lineno)
    if r < 0 or k < 1:
        raise ParseError(f"line {lineno}: invalid r or k")
    vcol = [0] * r
    pcol = [0] * math.comb(r, 2)
    for lineno, tok in lines:
        if tok[0] == "v" and len(tok) == 3:
            i, c = _ints(tok[1:], lineno)
            if not 0 <= i < r:
                raise ParseError(f"line {lineno}: point {i} outside [0, {r})")
            slot, idx = vcol, i
        elif tok[0] == "p" and len(tok) == 4:
            i, j, c = _ints(tok[1:], lineno)
            if not 0 <= i < j < r:
                raise ParseError(f"line {lineno}: pair must satisfy 0 <= i < j < {r}")
            slot, idx = pcol, pair_index(r, i, j)
        else:
            raise ParseError(f"line {lineno}: expected 'v <i> <c>' or 'p <i> <j> <c>'")
        if not 1 <= c <= k:
            raise ParseError(f"line {lineno}: colour {c} outside [1, {k}]")
        if slot[idx]:
            raise ParseError(f"line {lineno}: entry coloured twice")
        slot[idx] = c
    if not all(vcol) or not all(pcol):
        raise ParseError("template file does not colour every point and pair")
    return TemplateColouring(r, k, tuple(vcol), tuple(pcol))


def read_colouring(path: str | Path) -> EdgeColouring:
    return parse_colouring(Path(path).read_text())


def write_colouring(phi: EdgeColouring, path: str | Path) -> None:
    Path(path).write_text(format_colouring(phi))


def read_template(path: str | Path) -> TemplateColouring:
    return parse_template(Path(path).read_text())


def write_template(xi: TemplateColouring, path: str | Path) -> None:
    Path(path).write_text(format_template(xi))
