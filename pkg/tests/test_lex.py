"""Lexicographic enumeration: variants, tail solvers, search invariants."""

import random

import pytest

from diobasis.core import Equation, WeightVector, build_weights, oracle_basis
from diobasis.lex import (
    ALL_VARIANTS,
    BoundKind,
    LexStats,
    LexVariant,
    TailKind,
    lex_solve,
    solve_two_var,
    tail_solve_one,
    tail_solve_two,
)

HUET_ONE = LexVariant(BoundKind.HUET, TailKind.LAST_ONE)
LAMBERT_TWO = LexVariant(BoundKind.LAMBERT, TailKind.LAST_TWO)


def random_equation(rng, max_coeff=7, max_side=3):
    lhs = tuple(rng.randint(1, max_coeff) for _ in range(rng.randint(1, max_side)))
    rhs = tuple(rng.randint(1, max_coeff) for _ in range(rng.randint(1, max_side)))
    return Equation(lhs, rhs)


class TestLexSolve:
    def test_four_combinations_exist(self):
        assert len(ALL_VARIANTS) == 4
        assert len(set(ALL_VARIANTS)) == 4

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_one_equals_two(self, variant):
        eq = Equation((1,), (2,))
        assert lex_solve(eq, variant) == oracle_basis(eq) == [(2, 1)]

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_gcd_forced(self, variant):
        assert lex_solve(Equation((2,), (2,)), variant) == [(1, 1)]

    @pytest.mark.parametrize("variant", ALL_VARIANTS)
    def test_three_unknowns(self, variant):
        eq = Equation((2, 1), (1,))
        assert lex_solve(eq, variant) == oracle_basis(eq) == [(0, 1, 1), (1, 0, 2)]

    def test_all_variants_agree_and_match_oracle(self):
        rng = random.Random(1905)
        for _ in range(60):
            eq = random_equation(rng)
            want = oracle_basis(eq)
            for variant in ALL_VARIANTS:
                assert lex_solve(eq, variant) == want, (eq.text(), variant)

    def test_insertion_never_evicts(self):
        # Dominance implies lex order, so a later emission cannot push out a
        # stored solution.
        rng = random.Random(77)
        for _ in range(40):
            eq = random_equation(rng)
            for variant in ALL_VARIANTS:
                stats = LexStats()
                lex_solve(eq, variant, stats=stats)
                assert stats.insert.evicted == 0

    def test_lambert_explores_subset_of_huet(self):
        rng = random.Random(40)
        for _ in range(40):
            eq = random_equation(rng)
            for tail in TailKind:
                huet = LexStats()
                lambert = LexStats()
                lex_solve(eq, LexVariant(BoundKind.HUET, tail), stats=huet)
                lex_solve(eq, LexVariant(BoundKind.LAMBERT, tail), stats=lambert)
                assert lambert.prefixes <= huet.prefixes


class TestTailSolveOne:
    def test_exact_division(self):
        w = WeightVector((1, -2))
        assert tail_solve_one(w, (2,), HUET_ONE) == (2, 1)

    def test_indivisible_residual(self):
        assert tail_solve_one(WeightVector((1, -2)), (1,), HUET_ONE) is None

    def test_zero_vector_excluded(self):
        assert tail_solve_one(WeightVector((1, -2)), (0,), HUET_ONE) is None

    def test_bound_enforced(self):
        # Residual forces the last coordinate above the per-coordinate cap.
        w = build_weights(Equation((5,), (1,)))
        assert tail_solve_one(w, (2,), HUET_ONE) is None  # needs y=10 > max_a=5
        assert tail_solve_one(w, (1,), HUET_ONE) == (1, 5)


class TestTailSolveTwo:
    def test_bound_can_empty_the_solution_set(self):
        # y - 2z = -3 has (y, z) = (1, 2), which the cap z <= 1 rejects.
        assert solve_two_var(1, -2, -3, 2, 1) == []
        assert solve_two_var(1, -2, -3, 2, 2) == [(1, 2)]

    def test_homogeneous_positive_pair(self):
        assert solve_two_var(3, 5, 0, 10, 10) == [(0, 0)]

    def test_positive_right_hand_side(self):
        # Frozen from a direct scan of the box x <= 5, y <= 3.
        scan = [
            (x, y)
            for x in range(6)
            for y in range(4)
            if 3 * x + 5 * y == 15
        ]
        assert scan == [(0, 3), (5, 0)]
        assert sorted(solve_two_var(3, 5, 15, 5, 3)) == scan

    def test_progression_not_scanned(self):
        # Large caps with few solutions: the parametrized walk stays short.
        got = solve_two_var(991, -997, 0, 100000, 100000)
        assert got == [(997 * t, 991 * t) for t in range(100000 // 997 + 1)]

    def test_sum_cap(self):
        assert solve_two_var(1, 1, 4, 4, 4) == [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
        assert solve_two_var(1, 1, 4, 4, 4, sum_cap=3) == []

    def test_equation_level_completions(self):
        # Prefix x=1 of 5x = 3y + 2z leaves 3y + 2z = 5, whose only natural
        # solution is (1, 1).
        w = build_weights(Equation((5,), (3, 2)))
        assert tail_solve_two(w, (1,), LAMBERT_TWO) == [(1, 1, 1)]

    def test_zero_prefix_drops_zero_completion(self):
        w = build_weights(Equation((5,), (3, 2)))
        got = tail_solve_two(w, (0,), LAMBERT_TWO)
        assert (0, 0, 0) not in got


class TestTwoVarEdgeCases:
    def test_matches_brute_scan(self):
        from hypothesis import given
        from hypothesis import strategies as st

        nonzero = st.integers(-9, 9).filter(lambda v: v != 0)

        @given(nonzero, nonzero, st.integers(-30, 30), st.integers(0, 12), st.integers(0, 12))
        def check(s, t, c, bx, by):
            scan = [
                (x, y)
                for x in range(bx + 1)
                for y in range(by + 1)
                if s * x + t * y == c
            ]
            assert solve_two_var(s, t, c, bx, by) == scan

        check()

    def test_no_solution_when_gcd_fails(self):
        assert solve_two_var(4, 6, 3, 100, 100) == []

    def test_mixed_signs(self):
        got = solve_two_var(3, -2, 1, 10, 10)
        assert all(3 * x - 2 * y == 1 for x, y in got)
        scan = [(x, y) for x in range(11) for y in range(11) if 3 * x - 2 * y == 1]
        assert sorted(got) == scan

    def test_rejects_zero_coefficients(self):
        with pytest.raises(ValueError):
            solve_two_var(0, 1, 0, 1, 1)
