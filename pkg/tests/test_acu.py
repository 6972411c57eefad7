"""Top-most ACU problems: equation mapping, unifier construction, soundness."""

import random

import pytest

from diobasis.acu import (
    TopMostProblem,
    basis_to_unifier,
    equation_to_problem,
    format_unifier,
    problem_to_equation,
    verify_unifier,
)
from diobasis.core import Equation, oracle_basis


class TestProblemToEquation:
    def test_application_problem(self):
        p = TopMostProblem("f", (104, 167), (165, 154, 148, 159, 174, 150))
        assert problem_to_equation(p) == Equation(
            (104, 167), (165, 154, 148, 159, 174, 150)
        )

    def test_plain_variables(self):
        assert problem_to_equation(TopMostProblem("f", (1,), (1,))) == Equation((1,), (1,))

    def test_repeated_argument(self):
        assert problem_to_equation(TopMostProblem("f", (2,), (1, 1))) == Equation(
            (2,), (1, 1)
        )

    def test_round_trip(self):
        eq = Equation((3, 1), (2, 2))
        assert problem_to_equation(equation_to_problem(eq)) == eq

    def test_rejects_zero_multiplicity(self):
        with pytest.raises(ValueError):
            TopMostProblem("f", (0,), (1,))


class TestBasisToUnifier:
    def test_trivial_problem(self):
        p = TopMostProblem("f", (1,), (1,))
        u = basis_to_unifier(p, [(1, 1)])
        assert u.fresh_names == ("z1",)
        assert u.assignments == {"u1": {"z1": 1}, "v1": {"z1": 1}}
        assert verify_unifier(p, u)

    def test_doubling_problem(self):
        p = TopMostProblem("f", (2,), (1, 1))
        basis = oracle_basis(problem_to_equation(p))
        assert basis == [(1, 0, 2), (1, 1, 1), (1, 2, 0)]
        u = basis_to_unifier(p, basis)
        assert u.fresh_names == ("z1", "z2", "z3")
        assert u.assignments["u1"] == {"z1": 1, "z2": 1, "z3": 1}
        assert u.assignments["v1"] == {"z2": 1, "z3": 2}
        assert u.assignments["v2"] == {"z1": 2, "z2": 1}
        assert verify_unifier(p, u)


class TestVerifyUnifier:
    def test_corrupted_multiplicity_detected(self):
        p = TopMostProblem("f", (2,), (1, 1))
        u = basis_to_unifier(p, oracle_basis(problem_to_equation(p)))
        u.assignments["v1"]["z2"] += 1
        assert not verify_unifier(p, u)

    def test_unknown_fresh_variable_detected(self):
        p = TopMostProblem("f", (1,), (1,))
        u = basis_to_unifier(p, [(1, 1)])
        u.assignments["u1"]["z99"] = 1
        u.assignments["v1"]["z99"] = 1
        assert not verify_unifier(p, u)

    def test_soundness_on_random_problems(self):
        rng = random.Random(42)
        for _ in range(60):
            l = rng.randint(1, 2)
            k = rng.randint(1, 5 - l)
            p = TopMostProblem(
                "f",
                tuple(rng.randint(1, 7) for _ in range(l)),
                tuple(rng.randint(1, 7) for _ in range(k)),
            )
            basis = oracle_basis(problem_to_equation(p))
            u = basis_to_unifier(p, basis)
            assert len(u.fresh_names) == len(basis)
            assert verify_unifier(p, u)

    def test_unit_usage(self):
        # A fresh variable is absent from a variable's multiset exactly when
        # the corresponding basis coordinate is zero.
        p = TopMostProblem("f", (2,), (1, 1))
        basis = oracle_basis(problem_to_equation(p))
        u = basis_to_unifier(p, basis)
        names = p.variable_names
        for j, sol in enumerate(sorted(basis)):
            for i, name in enumerate(names):
                present = u.fresh_names[j] in u.assignments[name]
                assert present == (sol[i] > 0)


class TestFormatUnifier:
    def test_multiplicity_rendering(self):
        p = TopMostProblem("f", (2,), (1, 1))
        u = basis_to_unifier(p, oracle_basis(problem_to_equation(p)))
        lines = format_unifier(u).splitlines()
        assert lines[0] == "u1 = z1 + z2 + z3"
        assert lines[1] == "v1 = z2 + 2*z3"
        assert lines[2] == "v2 = 2*z1 + z2"

    def test_empty_multiset_renders_unit(self):
        u = basis_to_unifier(TopMostProblem("f", (1,), (1,)), [(1, 1)])
        u.assignments["u1"] = {}
        assert "u1 = e" in format_unifier(u)
