import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from sergeev.algebra import Element, Token, commutator, new_context
from sergeev.linalg import rank_of_dicts
from sergeev.report import RankTable
from sergeev import structure
from sergeev.structure import (
    all_reduced_words, center_even_basis, center_even_rank, check_generator_reduction,
    check_top_coordinates, class_elements, cocenter_rank, even_commutator_rank, expected_counts,
    rank_reports, supercocenter_rank, verify_class_basis,
)

SMALL = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1)]


class TestCommutatorRank:
    def test_examples(self):
        h12 = new_context(1, 2)
        assert even_commutator_rank(h12, graded=False) == 1
        assert even_commutator_rank(h12, graded=True) == 1
        assert even_commutator_rank(new_context(1, 1), graded=False) == 0

    @pytest.mark.parametrize("n,d", SMALL)
    def test_generator_partners_match_all_pairs(self, n, d):
        assert check_generator_reduction(new_context(n, d)).status == "pass"

    @pytest.mark.parametrize("graded", [False, True])
    def test_bracket_identity_on_short_words(self, graded):
        ctx = new_context(2, 2, {0: mpq(3, 4)})
        gens = [ctx.gen(g.kind, g.index) for g in ctx.generators()]

        def sign(a, b):
            return -1 if (graded and a.parity and b.parity) else 1

        @settings(max_examples=60, deadline=None)
        @given(st.lists(st.integers(0, len(gens) - 1), min_size=1, max_size=3),
               st.integers(0, len(gens) - 1), st.integers(0, len(gens) - 1))
        def check(word, gi, hi):
            u = ctx.one()
            for i in word:
                u = u * gens[i]
            g, h = gens[gi], gens[hi]
            lhs = commutator(ctx, u, g * h, graded)
            rhs = commutator(ctx, u * g, h, graded) + sign(u * g, h) * commutator(ctx, h * u, g, graded)
            assert lhs == rhs

        check()


class TestRanks:
    @pytest.mark.parametrize("n,d,want", [(1, 2, 1), (2, 3, 4), (2, 1, 1), (2, 2, 2), (3, 1, 2)])
    def test_cocenter(self, n, d, want):
        assert cocenter_rank(new_context(n, d)) == want

    @pytest.mark.parametrize("n,d,want", [(1, 2, 1), (2, 1, 0), (3, 1, 1), (1, 1, 0)])
    def test_supercocenter(self, n, d, want):
        assert supercocenter_rank(new_context(n, d)) == want

    @pytest.mark.parametrize("n,d,want", [(1, 2, 1), (2, 1, 1), (2, 3, 4), (3, 1, 2)])
    def test_center(self, n, d, want):
        assert center_even_rank(new_context(n, d)) == want

    def test_center_elements_commute(self):
        ctx = new_context(2, 3, {1: mpq(-1, 2)})
        gens = [ctx.gen(g.kind, g.index) for g in ctx.generators()]
        basis = center_even_basis(ctx)
        assert rank_of_dicts([z.terms for z in basis], ctx.dim) == len(basis)
        for z in basis:
            assert z.parity == 0
            assert all(z * g == g * z for g in gens)

    def test_level_two_center_is_scalars(self):
        ctx = new_context(1, 2)
        (z,) = center_even_basis(ctx)
        assert z == z.coefficient(ctx.one_index()) * ctx.one()

    @pytest.mark.parametrize("n,d", SMALL)
    def test_rank_reports_pass(self, n, d):
        table = RankTable()
        reps = rank_reports(new_context(n, d), "x^d", table)
        assert not [r.line() for r in reps if r.status == "fail"]
        assert all(r.provenance in ("PAPER", "TRIVIAL", "DERIVED") for r in table.rows)

    def test_duality_odd_level(self):
        for n, d in [(1, 3), (2, 3), (3, 1)]:
            ctx = new_context(n, d)
            assert center_even_rank(ctx) == cocenter_rank(ctx)

    def test_duality_even_level(self):
        for n, d in [(1, 2), (1, 4), (2, 2)]:
            ctx = new_context(n, d)
            assert center_even_rank(ctx) == supercocenter_rank(ctx)

    def test_expected_counts(self):
        c = expected_counts(2, 2)
        assert (c["tilde"], c["hat"], c["P0m"]) == (2, 2, 2)


class TestClassBases:
    def test_tilde_examples(self):
        rep = verify_class_basis(new_context(2, 2), "tilde")
        assert rep.status == "pass" and rep.computed == 2
        rep = verify_class_basis(new_context(1, 2), "tilde")
        assert rep.status == "pass" and rep.computed == 1

    def test_hat_vacuous_at_level_one(self):
        rep = verify_class_basis(new_context(2, 1), "hat")
        assert rep.status == "pass" and rep.computed == 0 and rep.details["set_size"] == 0

    def test_tilde_identity_class(self):
        ctx = new_context(1, 2)
        ((beta, el),) = class_elements(ctx, "tilde")
        assert el == ctx.one()

    def test_hat_elements_are_even(self):
        for beta, el in class_elements(new_context(3, 2), "hat"):
            assert el.parity == 0

    def test_failure_carries_witness(self):
        # the commutator space plus a redundant copy of its own rows cannot grow
        ctx = new_context(2, 2)
        rep = verify_class_basis(ctx, "tilde")
        assert rep.witness is None


class TestIdentities:
    @pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (2, 3), (3, 1)])
    def test_top_coordinates(self, n, d):
        assert check_top_coordinates(new_context(n, d)).status == "pass"

    def test_reduced_word_enumeration(self):
        words = all_reduced_words((3, 2, 1))
        assert sorted(words) == [[1, 2, 1], [2, 1, 2]]
        assert len(all_reduced_words((4, 3, 2, 1))) == 16


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (2, 3), (3, 1)])
def test_integrality_of_generator_tables(n, d):
    rep = structure.check_integrality(new_context(n, d))
    assert rep.status == "pass" and rep.computed == 0


def test_integrality_flags_odd_denominators():
    ctx = new_context(1, 2, {0: mpq(1, 3)})
    assert structure.check_integrality(ctx).status == "fail"
