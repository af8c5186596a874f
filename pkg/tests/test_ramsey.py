from __future__ import annotations

import itertools

import pytest

from nimramsey.colouring import colour_class, is_feasible
from nimramsey.errors import BudgetExceeded, ParameterError
from nimramsey.graph import build, chromatic_number
from nimramsey.hom import homomorphism_exists
from nimramsey.ramsey import (
    KnownRamseyTable,
    gf16_log_table,
    gf16_mul,
    gf16_witness,
    is_nice,
    r_hom,
    r_star,
)

K3, K4, C4, C5, C7 = (build(s) for s in ("complete:3", "complete:4", "cycle:4", "cycle:5", "cycle:7"))


def homomorphic_free(phi, graphs):
    return all(homomorphism_exists(h, colour_class(phi, c)) is None for c, h in enumerate(graphs, 1))


class TestRHom:
    def test_triangles(self):
        res = r_hom([K3, K3])
        assert (res.value, res.exhausted_above) == (5, True)
        assert homomorphic_free(res.witness, [K3, K3])

    def test_pentagons(self):
        res = r_hom([C5, C5])
        assert (res.value, res.exhausted_above) == (4, True)
        assert homomorphic_free(res.witness, [C5, C5])

    def test_single_colour(self):
        assert r_hom([K3]).value == 2

    def test_rejects_bipartite(self):
        with pytest.raises(ParameterError, match="bipartite"):
            r_hom([K3, C4])

    def test_rejects_edgeless(self):
        with pytest.raises(ParameterError):
            r_hom([build("empty:3")])

    def test_budget(self):
        res = r_hom([K3, K3], budget=20)
        assert not res.exhausted_above and res.value < 5


class TestRStar:
    def test_three_triangles(self):
        res = r_star([K3] * 3)
        assert (res.value, res.exhausted_above) == (5, True)
        assert is_feasible(res.witness, [K3] * 3)

    def test_three_pentagons(self):
        res = r_star([C5] * 3)
        assert (res.value, res.exhausted_above) == (4, True)
        assert res.witness.r == 4 and is_feasible(res.witness, [C5] * 3)

    def test_two_colours(self):
        assert r_star([K3, K4]).value == 3

    def test_budget(self):
        res = r_star([K3] * 3, budget=30)
        assert not res.exhausted_above
        assert is_feasible(res.witness, [K3] * 3)

    def test_bipartite_colour_unused_on_pairs(self):
        res = r_star([K3, K3, C4])
        assert 3 not in res.witness.pcolour
        assert res.value >= r_hom([K3, K3]).value

    def test_two_colour_closed_form(self):
        pool = [K3, K4, C5, C7, build("cm:1-1-2"), build("cm:2-2-2"), build("cm:1-2-3")]
        for a, b in itertools.combinations_with_replacement(pool, 2):
            expected = max(chromatic_number(a), chromatic_number(b)) - 1
            res = r_star([a, b])
            assert res.exhausted_above and res.value == expected

    def test_monotone_in_k(self):
        base = r_star([C5, C5]).value
        assert r_star([C5, C5, K3]).value >= base
        assert r_star([K3, K3, K3]).value >= r_star([K3, K3]).value

    def test_lower_bound_from_r_hom(self):
        # fixing one colour on every point reduces to r_hom of the others
        for graphs in ([K3, K3, K3], [K3, K4], [K3, K3], [C5, C5, C5]):
            star = r_star(graphs).value
            others = [r_hom(graphs[:i] + graphs[i + 1 :]).value for i in range(len(graphs)) if len(graphs) > 1]
            assert star >= max(others)


class TestNice:
    def test_three_triangles(self):
        assert is_nice([K3] * 3, 5) == (True, None)

    def test_pentagons_not_nice(self):
        nice, cex = is_nice([C5] * 3, 4)
        assert not nice
        assert len(set(cex.vcolour)) == 2 and is_feasible(cex, [C5] * 3)

    def test_two_colours_always_nice(self):
        assert is_nice([K3, K3], 2) == (True, None)
        assert is_nice([K3, K4], 3) == (True, None)

    def test_budget_raises(self):
        with pytest.raises(BudgetExceeded):
            is_nice([K3] * 3, 5, budget=10)


class TestGF16:
    def test_field(self):
        logs = gf16_log_table()
        assert sorted(logs) == list(range(1, 16))
        for a in range(16):
            for b in range(16):
                assert gf16_mul(a, b) == gf16_mul(b, a)
                for c in (1, 2, 7, 15):
                    assert gf16_mul(a, b ^ c) == gf16_mul(a, b) ^ gf16_mul(a, c)

    def test_shape(self):
        xi = gf16_witness()
        assert xi.r == 16 and len(xi.pcolour) == 120
        assert set(xi.pcolour) == {1, 2, 3} and set(xi.vcolour) == {4}

    def test_triangle_free_classes(self):
        xi = gf16_witness()
        triples = list(itertools.combinations(range(16), 3))
        assert len(triples) == 560
        for a, b, c in triples:
            assert len({xi.pair_colour(a, b), xi.pair_colour(a, c), xi.pair_colour(b, c)}) > 1

    def test_feasible(self):
        assert is_feasible(gf16_witness(), [K3] * 4)

    def test_cosets_are_sum_free(self):
        logs = gf16_log_table()
        cosets = [{x for x in range(1, 16) if logs[x] % 3 == j} for j in range(3)]
        for s in cosets:
            assert len(s) == 5
            assert not any(x ^ y in s for x in s for y in s if x != y)


@pytest.fixture(scope="module")
def certified():
    table = KnownRamseyTable.default()
    for sizes in [(3, 3), (3, 4)] + [(2, b) for b in range(2, 7)]:
        assert table.certify(sizes)
    return table


class TestKnownTable:
    def test_defaults(self):
        table = KnownRamseyTable.default()
        assert table.R(3, 3) == 6 and table.r(3, 3, 3) == 16
        assert table.provenance(3, 3) == ("literature",)

    def test_search_agrees_with_literature(self, certified):
        assert certified.R(3, 3) == 6
        assert certified.provenance(3, 3) == ("literature", "search")

    def test_three_four(self, certified):
        assert certified.R(4, 3) == 9
        assert certified.provenance(3, 4) == ("search",)

    def test_trivial_entries(self, certified):
        assert [certified.R(2, b) for b in range(2, 7)] == [2, 3, 4, 5, 6]

    def test_conflict(self):
        table = KnownRamseyTable.default()
        with pytest.raises(AssertionError):
            table.add((3, 3), 7, "search")

    def test_inequalities(self, certified):
        r = certified.r
        # r(a,b) + r(a,c) <= r(a, b+c-1) wherever all three are known
        checked = 0
        for a, b, c in itertools.product(range(2, 5), repeat=3):
            if all((a, x) in certified for x in (b, c, b + c - 1)):
                assert r(a, b) + r(a, c) <= r(a, b + c - 1)
                checked += 1
        for a, b in itertools.product(range(2, 5), repeat=2):
            if (a, b) in certified and (a + 1, b) in certified:
                assert r(a, b) < r(a + 1, b)
                checked += 1
        assert checked >= 10

    def test_rejects_small(self):
        with pytest.raises(ParameterError):
            KnownRamseyTable().certify((1, 3))
