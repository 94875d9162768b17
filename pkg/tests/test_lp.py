"""Feasibility kernel: simplex examples, oracle agreement, scaling."""

import random
from fractions import Fraction

import pytest

from colorgames import (ContractError, LinearSystem, integer_scale,
                        solve_feasibility)
from oracles import fm_feasible, random_system


def system_of(num_vars, *rows):
    system = LinearSystem(num_vars)
    for coeffs, rel, rhs in rows:
        system.add(coeffs, rel, rhs)
    return system


def test_single_variable():
    system = system_of(1, ([1], "=", 1), ([1], ">=", 0))
    result = solve_feasibility(system)
    assert result.feasible
    assert result.assignment == (Fraction(1),)


def test_two_variable_feasible():
    system = system_of(2, ([1, 1], "=", 1), ([1, -1], "=", 1),
                       ([1, 0], ">=", 0), ([0, 1], ">=", 0))
    result = solve_feasibility(system)
    assert result.feasible
    assert result.assignment == (Fraction(1), Fraction(0))


def test_two_variable_infeasible():
    system = system_of(2, ([1, 1], "=", 1), ([1, -1], "=", 2),
                       ([1, 0], ">=", 0), ([0, 1], ">=", 0))
    assert not solve_feasibility(system).feasible


def test_free_variables():
    system = system_of(2, ([1, 1], "=", 0), ([1, -1], "<=", -3))
    result = solve_feasibility(system)
    assert result.feasible
    assert system.satisfied_by(result.assignment)


def test_degenerate_pivots_terminate():
    # classic cycling-prone shape: many ties at zero
    system = system_of(
        3,
        ([1, 1, 1], "=", 0),
        ([1, -1, 0], "=", 0),
        ([0, 1, -1], "=", 0),
        ([1, 0, 0], ">=", 0), ([0, 1, 0], ">=", 0), ([0, 0, 1], ">=", 0),
    )
    result = solve_feasibility(system)
    assert result.feasible
    assert result.assignment == (Fraction(0),) * 3


def test_feasible_results_recheck_exactly():
    rng = random.Random(5)
    for _ in range(200):
        system = random_system(rng)
        result = solve_feasibility(system)
        if result.feasible:
            assert system.satisfied_by(result.assignment)


def test_agreement_with_fourier_motzkin():
    rng = random.Random(17)
    for _ in range(300):
        system = random_system(rng)
        assert solve_feasibility(system).feasible == fm_feasible(system)


def test_homogeneous_scale_invariance():
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(1, 4)
        system = LinearSystem(n)
        for _ in range(rng.randint(1, 5)):
            system.add([rng.randint(-4, 4) for _ in range(n)],
                       rng.choice(["=", ">=", "<="]), 0)
        result = solve_feasibility(system)
        assert result.feasible  # zero always works
        for c in (2, Fraction(1, 3), 7):
            scaled = tuple(c * v for v in result.assignment)
            assert system.satisfied_by(scaled)


def test_integer_scale_basic():
    system = system_of(2, ([1, -1], "=", 0), ([1, 0], ">=", 0),
                       ([0, 1], ">=", 0), ([1, 1], "=", 1))
    vec = integer_scale((Fraction(1, 2), Fraction(1, 2)), system)
    assert vec == [1, 1]
    vec = integer_scale((Fraction(1, 3), Fraction(2, 3)),
                        system_of(2, ([2, -1], "=", 0), ([1, 1], "=", 1)))
    assert vec == [1, 2]


def test_integer_scale_rejects_nonhomogeneous():
    system = system_of(2, ([1, 0], "=", 1), ([0, 1], "=", 1))
    with pytest.raises(ContractError):
        integer_scale((Fraction(1), Fraction(1)), system)


def test_integer_scale_needs_positive_entry():
    system = system_of(1, ([1], "=", 0))
    with pytest.raises(ContractError):
        integer_scale((Fraction(0),), system)
