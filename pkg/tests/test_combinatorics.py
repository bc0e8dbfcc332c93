from itertools import product

import pytest
from hypothesis import given, strategies as st

from sergeev.combinatorics import (
    ColoredSemiBipartition as CSB, C, S, S0, X, Token, clifford_decorated_word, colored_from_json,
    count_index_set, count_multipartitions, enum_colored_semibipartitions, enum_multipartitions,
    enum_partitions, filter_index_set, format_word, in_hat, minimal_word, parse_word, theta_bijection,
    word_length,
)


def brute_partitions(n):
    """Partitions as sorted multisets of compositions: an oracle independent of the recursion."""
    out = set()

    def rec(rest, acc):
        if rest == 0:
            out.add(tuple(sorted(acc, reverse=True)))
            return
        for k in range(1, rest + 1):
            rec(rest - k, acc + [k])

    rec(n, [])
    return out


def euler_partition_numbers(n):
    p = [1] + [0] * n
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            p[i] += p[i - k]
    return p


class TestPartitions:
    def test_examples(self):
        assert enum_partitions(3) == [(3,), (2, 1), (1, 1, 1)]
        assert enum_partitions(3, "strict") == [(3,), (2, 1)]
        assert enum_partitions(0) == [()]

    @pytest.mark.parametrize("n", range(0, 9))
    def test_complete_and_duplicate_free(self, n):
        got = enum_partitions(n)
        assert len(got) == len(set(got))
        assert set(got) == brute_partitions(n)

    def test_counts_match_generating_function(self):
        p = euler_partition_numbers(15)
        assert [len(enum_partitions(n)) for n in range(16)] == p

    def test_filters(self):
        assert enum_partitions(6, "odd") == [(5, 1), (3, 3), (3, 1, 1, 1), (1,) * 6]
        assert enum_partitions(4, "even") == [(4,), (2, 2)]
        # strict and odd partitions are equinumerous
        for n in range(12):
            assert len(enum_partitions(n, "strict")) == len(enum_partitions(n, "odd"))

    def test_bad_filter(self):
        with pytest.raises(ValueError):
            enum_partitions(3, "prime")


class TestIndexSets:
    def test_examples(self):
        assert count_index_set(2, 3, "Psm") == 4
        assert count_index_set(1, 2, "P0m") == 1
        assert count_index_set(2, 1, "MPsm") == 0

    def test_level_zero_rejected(self):
        with pytest.raises(ValueError, match="level must be >= 1"):
            count_index_set(2, 0, "P0m")

    @pytest.mark.parametrize("n,m", [(0, 0), (3, 0), (3, 1), (4, 2), (5, 3)])
    def test_multipartition_count(self, n, m):
        got = enum_multipartitions(n, m)
        assert len(got) == len(set(got)) == count_multipartitions(n, m)
        assert all(sum(map(sum, mp)) == n and len(mp) == m for mp in got)

    def test_mp0_equals_p0(self):
        for n in range(6):
            for d in range(1, 6):
                assert count_index_set(n, d, "MP0m") == count_index_set(n, d, "P0m")


class TestColoredSemiBipartitions:
    def test_examples(self):
        assert enum_colored_semibipartitions(1, 2) == [CSB((), (), (1,)), CSB((1,), (1,), ())]
        assert enum_colored_semibipartitions(2, 1) == [CSB((), (), (2,)), CSB((), (), (1, 1))]
        assert enum_colored_semibipartitions(0, 3) == [CSB()]

    def test_validation(self):
        with pytest.raises(ValueError):
            CSB((2, 1), (1, 1), ())        # not opposite
        with pytest.raises(ValueError):
            CSB((1, 1), (1, 2), ())        # colors increase on equal rows
        with pytest.raises(ValueError):
            CSB((1,), (), ())              # missing color

    def test_derived_fields(self):
        beta = CSB((1, 2), (2, 1), (2, 1))
        assert beta.n == 6
        assert beta.bar_alpha == (1, 2, 2, 1)
        assert beta.epsilon == (2, 1, 0, 0)
        assert beta.r == (0, 1, 3, 5, 6)

    def test_filter_examples(self):
        betas = enum_colored_semibipartitions(2, 2)
        assert set(filter_index_set(betas, "tilde")) == {CSB((2,), (1,), ()), CSB((), (), (1, 1))}
        assert set(filter_index_set(betas, "hat")) == {CSB((2,), (1,), ()), CSB((1, 1), (1, 1), ())}
        assert len(filter_index_set(enum_colored_semibipartitions(2, 3), "tilde")) == 4

    @pytest.mark.parametrize("n", range(0, 9))
    @pytest.mark.parametrize("d", range(1, 6))
    def test_tilde_size_matches_multipartition_count(self, n, d):
        tilde = filter_index_set(enum_colored_semibipartitions(n, d), "tilde")
        want = count_index_set(n, d, "P0m" if d % 2 == 0 else "Psm")
        assert len(tilde) == want

    @pytest.mark.parametrize("n", range(0, 7))
    @pytest.mark.parametrize("d", range(1, 5))
    def test_theta_bijection(self, n, d):
        betas = enum_colored_semibipartitions(n, d)
        images = {theta_bijection(b, d) for b in betas}
        assert len(images) == len(betas) == count_multipartitions(n, d)
        assert images == set(enum_multipartitions(n, d))

    def test_theta_examples(self):
        assert theta_bijection(CSB((1,), (1,), (1,)), 2) == ((1,), (1,))
        assert theta_bijection(CSB((), (), (2, 1)), 3) == ((2, 1), (), ())
        assert theta_bijection(CSB((2, 2), (2, 1), (1,)), 3) == ((1,), (2,), (2,))

    @pytest.mark.parametrize("n", range(0, 9))
    def test_hat_at_level_one(self, n):
        hat = filter_index_set(enum_colored_semibipartitions(n, 1), "hat")
        strict_even = [p for p in enum_partitions(n, "strict") if len(p) % 2 == 0]
        assert sorted(b.mu for b in hat) == sorted(strict_even)
        assert len(hat) == count_index_set(n, 1, "MPsm")

    def test_json_round_trip(self):
        for beta in enum_colored_semibipartitions(3, 3):
            assert colored_from_json(beta.to_json()) == beta


class TestWords:
    def test_minimal_word_examples(self):
        assert minimal_word(CSB((1,), (1,), (1,))) == [S0(1)]
        assert minimal_word(CSB((), (), (2,))) == [S(1)]
        assert minimal_word(CSB((2,), (1,), ())) == [S0(1), S(1)]

    def test_s_prime_block(self):
        # (1,2) colored (1,2): r = (0,1,3); second block is s'_{1,2} s_2
        assert minimal_word(CSB((1, 2), (1, 2), ())) == [S0(1), S(1), S0(2), S(1), S(2)]

    def test_clifford_examples(self):
        assert clifford_decorated_word(CSB((2,), (1,), ())) == ([S0(1), S(1)], ())
        assert clifford_decorated_word(CSB((1,), (2,), (1,))) == ([S0(2)], (1, 2))
        assert clifford_decorated_word(CSB((), (), (2, 1))) == ([S(1)], (2, 3))

    def test_clifford_rejects_non_hat(self):
        with pytest.raises(ValueError):
            clifford_decorated_word(CSB((), (), (1, 1)))

    @pytest.mark.parametrize("n,d", [(3, 3), (4, 2), (4, 1)])
    def test_hat_masks_have_even_size(self, n, d):
        for beta in enum_colored_semibipartitions(n, d):
            if in_hat(beta):
                assert len(clifford_decorated_word(beta)[1]) % 2 == 0

    def test_word_length(self):
        assert word_length([S0(3), S(1), X(2)]) == 5

    @pytest.mark.parametrize("n,d", [(3, 3), (4, 2)])
    def test_length_reproducible(self, n, d):
        for beta in enum_colored_semibipartitions(n, d):
            assert word_length(minimal_word(beta)) == word_length(minimal_word(beta))
            expected = sum(2 * lo + eps + (hi - lo - 1) if eps else hi - lo - 1
                           for lo, hi, eps in zip(beta.r, beta.r[1:], beta.epsilon))
            assert word_length(minimal_word(beta)) == expected

    tokens = st.one_of(
        st.builds(S0, st.integers(1, 5)),
        st.builds(lambda i: Token("s", i), st.integers(1, 9)),
        st.builds(X, st.integers(1, 9)),
        st.builds(C, st.integers(1, 9)),
    )

    @given(st.lists(tokens, max_size=8))
    def test_parse_format_round_trip(self, word):
        assert parse_word(format_word(word)) == word

    def test_parse_examples(self):
        assert parse_word("s0 s0^3 s2 x1 c12") == [S0(1), S0(3), S(2), X(1), C(12)]

    @pytest.mark.parametrize("bad", ["y1", "s", "s0^0", "x", "c1a"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_word(bad)
