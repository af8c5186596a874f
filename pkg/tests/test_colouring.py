from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from nimramsey.colouring import (
    EdgeColouring,
    TemplateColouring,
    blow_up,
    colour_class,
    format_colouring,
    format_template,
    is_feasible,
    pair_index,
    parse_colouring,
    parse_template,
    read_colouring,
    read_template,
    write_colouring,
    write_template,
)
from nimramsey.errors import ParameterError, ParseError
from nimramsey.graph import build, is_isomorphic

K3, C5 = build("complete:3"), build("cycle:5")


def c5_colouring(n_colour_other=2, k=2):
    """K_5 with C_5 in colour 1 and its complement in colour 2."""
    c5 = build("cycle:5")
    return EdgeColouring.from_function(5, k, lambda u, v: 1 if c5.has_edge(u, v) else n_colour_other)


def triangle_template():
    """Five points of colour 3; pairs: C_5 in colour 1, complement in colour 2."""
    return TemplateColouring.from_function(5, 3, [3] * 5, lambda u, v: 1 if C5.has_edge(u, v) else 2)


def figure_one():
    return TemplateColouring(4, 3, (1, 1, 2, 2), (2, 3, 3, 3, 3, 1))


@st.composite
def edge_colourings(draw, max_n=8, max_k=4):
    n = draw(st.integers(0, max_n))
    k = draw(st.integers(1, max_k))
    cs = draw(st.lists(st.integers(1, k), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return EdgeColouring(n, k, tuple(cs))


@st.composite
def templates(draw, max_r=6, max_k=4):
    r = draw(st.integers(1, max_r))
    k = draw(st.integers(1, max_k))
    vs = draw(st.lists(st.integers(1, k), min_size=r, max_size=r))
    ps = draw(st.lists(st.integers(1, k), min_size=r * (r - 1) // 2, max_size=r * (r - 1) // 2))
    return TemplateColouring(r, k, tuple(vs), tuple(ps))


class TestEdgeColouring:
    def test_pair_index_is_lex(self):
        n = 6
        for i, (u, v) in enumerate(itertools.combinations(range(n), 2)):
            assert pair_index(n, u, v) == i == pair_index(n, v, u)

    def test_colour_classes(self):
        mono = EdgeColouring.constant(4, 2, 1)
        assert colour_class(mono, 1) == build("complete:4")
        assert colour_class(mono, 2) == build("empty:4")
        c1 = colour_class(c5_colouring(), 1)
        assert c1.num_edges == 5 and is_isomorphic(c1, C5)

    def test_colour_out_of_range(self):
        with pytest.raises(ParameterError):
            colour_class(EdgeColouring.constant(3, 2), 3)
        with pytest.raises(ParameterError):
            EdgeColouring(3, 2, (1, 2, 3))
        with pytest.raises(ParameterError):
            EdgeColouring(3, 2, (1, 2))

    def test_from_classes(self):
        phi = EdgeColouring.from_classes(4, 3, {1: build("matching:2")}, default=3)
        assert phi.colour(0, 1) == phi.colour(2, 3) == 1 and phi.colour(0, 2) == 3

    def test_restrict_and_relabel(self):
        phi = c5_colouring()
        sub = phi.restrict([0, 1, 2])
        assert sub.colours == (1, 2, 1)
        perm = [1, 2, 3, 4, 0]
        moved = phi.relabel(perm)
        assert all(moved.colour(perm[u], perm[v]) == c for (u, v), c in phi.items())

    def test_permute_colours(self):
        phi = c5_colouring()
        swapped = phi.permute_colours({1: 2, 2: 1})
        assert colour_class(swapped, 2) == colour_class(phi, 1)

    @given(edge_colourings())
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, phi):
        assert parse_colouring(format_colouring(phi)) == phi

    def test_file_round_trip(self, tmp_path):
        phi = c5_colouring()
        write_colouring(phi, tmp_path / "c.col")
        assert read_colouring(tmp_path / "c.col") == phi

    @pytest.mark.parametrize(
        "text",
        [
            "colouring 3 2\n0 1 1\n0 2 1\n",  # missing pair
            "colouring 3 2\n0 1 1\n0 2 1\n1 2 3\n",  # colour out of range
            "colouring 3 2\n0 1 1\n0 1 2\n0 2 1\n1 2 1\n",  # duplicate
            "colouring 2 2\n1 0 1\n",  # u > v
            "graph 2\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_colouring(text)


class TestTemplates:
    @given(templates())
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, xi):
        assert parse_template(format_template(xi)) == xi

    def test_file_round_trip(self, tmp_path):
        xi = figure_one()
        write_template(xi, tmp_path / "t.tpl")
        assert read_template(tmp_path / "t.tpl") == xi

    def test_file_format(self):
        text = format_template(TemplateColouring(2, 2, (1, 1), (2,)))
        assert text.splitlines() == ["template 2 2", "v 0 1", "v 1 1", "p 0 1 2"]

    @pytest.mark.parametrize("text", ["template 2 2\nv 0 1\np 0 1 2\n", "template 2 2\nv 0 1\nv 1 3\np 0 1 2\n"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_template(text)


class TestFeasibility:
    def test_triangle_template(self):
        assert is_feasible(triangle_template(), [K3] * 3)

    def test_p2(self):
        verdict = is_feasible(TemplateColouring(2, 1, (1, 1), (1,)), [K3])
        assert not verdict
        assert verdict.violation.kind == "P2" and verdict.violation.pair == (0, 1)
        assert "P2" in verdict.violation.describe()

    def test_p1(self):
        xi = TemplateColouring.from_function(3, 2, [2, 2, 2], lambda u, v: 1)
        verdict = is_feasible(xi, [K3, K3])
        assert not verdict and verdict.violation.kind == "P1" and verdict.violation.colour == 1

    def test_figure_one_stand_in(self):
        c5s = [C5] * 3
        xi = figure_one()
        assert is_feasible(xi, c5s)
        # no colour class of pairs has an odd cycle of length <= 5
        for c in (1, 2, 3):
            g = xi.pair_class(c)
            for length in (3, 5):
                for cyc in itertools.permutations(range(4), min(length, 4)):
                    if len(cyc) == length:
                        assert not all(g.has_edge(cyc[i], cyc[(i + 1) % length]) for i in range(length))
        assert len(set(xi.vcolour)) == 2

    def test_invariant_under_point_permutations(self):
        rng = random.Random(7)
        graphs = [K3, C5, build("cm:1-1-2")]
        for _ in range(200):
            r = rng.randint(1, 6)
            xi = TemplateColouring.from_function(r, 3, [rng.randint(1, 3) for _ in range(r)], lambda u, v: rng.randint(1, 3))
            perm = list(range(r))
            rng.shuffle(perm)
            assert bool(is_feasible(xi, graphs)) == bool(is_feasible(xi.permute_points(perm), graphs))

    def test_clique_p1_matches_clique_finder(self):
        rng = random.Random(8)
        for _ in range(200):
            r = rng.randint(2, 8)
            sizes = [rng.randint(2, 4) for _ in range(2)]
            graphs = [build(f"complete:{a}") for a in sizes]
            xi = TemplateColouring.from_function(r, 3, [3] * r, lambda u, v: rng.randint(1, 2))
            expected = True
            for c, a in zip((1, 2), sizes):
                g = xi.pair_class(c)
                sets = [set(g.neighbours(v)) for v in range(r)]
                if oracles.max_clique(sets, r) >= a:
                    expected = False
            graphs.append(K3)
            assert bool(is_feasible(xi, graphs)) == expected


class TestBlowUp:
    def test_two_points(self):
        phi = blow_up(TemplateColouring(2, 2, (1, 1), (2,)), [2, 2])
        assert colour_class(phi, 2).edges() == ((0, 2), (0, 3), (1, 2), (1, 3))
        assert colour_class(phi, 1).edges() == ((0, 1), (2, 3))

    def test_unit_sizes(self):
        xi = triangle_template()
        assert blow_up(xi, [1] * 5).colours == xi.pcolour

    def test_part_arithmetic(self):
        phi = blow_up(triangle_template(), [10] * 5)
        counts = {c: colour_class(phi, c).num_edges for c in (1, 2, 3)}
        assert counts[1] + counts[2] == 1000 and counts[3] == 225

    def test_size_mismatch(self):
        with pytest.raises(ParameterError):
            blow_up(triangle_template(), [1, 2])
        with pytest.raises(ParameterError):
            blow_up(triangle_template(), [1, 1, 1, 1, 0])

    @given(templates(max_r=5, max_k=3), st.data())
    @settings(max_examples=60, deadline=None)
    def test_representatives_recover_pairs(self, xi, data):
        sizes = data.draw(st.lists(st.integers(1, 3), min_size=xi.r, max_size=xi.r))
        phi = blow_up(xi, sizes)
        starts = [sum(sizes[:i]) for i in range(xi.r)]
        reps = [s + data.draw(st.integers(0, sizes[i] - 1)) for i, s in enumerate(starts)]
        assert phi.restrict(reps).colours == xi.pcolour

    def test_point_only_colour_gives_disjoint_cliques(self):
        rng = random.Random(9)
        graphs = [K3, K3, K3]
        tried = 0
        while tried < 40:
            r = rng.randint(2, 5)
            xi = TemplateColouring.from_function(r, 3, [3] * r, lambda u, v: rng.randint(1, 2))
            if not is_feasible(xi, graphs):
                continue
            tried += 1
            sizes = [rng.randint(1, 4) for _ in range(r)]
            g = colour_class(blow_up(xi, sizes), 3)
            start = 0
            for s in sizes:
                block = list(range(start, start + s))
                assert g.induced(block).num_edges == s * (s - 1) // 2
                for v in block:
                    assert all(start <= u < start + s for u in g.neighbours(v))
                start += s
