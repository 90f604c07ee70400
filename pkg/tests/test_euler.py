from fractions import Fraction

import pytest
import sympy

from qeuler.characters import DirichletCharacter, enumerate_characters
from qeuler.errors import DomainError, PoleError, PrecisionError
from qeuler.euler import (
    CLOSED,
    SERIES,
    EulerParams,
    classical_euler_polynomial,
    classical_twisted_euler,
    comparison_scale,
    distribution_check,
    evaluate,
    find_pole,
    generalized_twisted_q_euler,
    generalized_twisted_q_euler_series,
    twisted_q_euler_poly,
    twisted_q_euler_series,
)
from qeuler.qcore import QParam, RootOfUnity, as_complex

CLASSICAL = (Fraction(1), Fraction(-1, 2), Fraction(0), Fraction(1, 4), Fraction(0), Fraction(-1, 2))
TWISTS = (RootOfUnity.one(), RootOfUnity(4, 1), RootOfUnity(3, 1), RootOfUnity(2, 1))


def _scaled(a, b, n, q):
    return abs(as_complex(a) - as_complex(b)) / comparison_scale(n, q)


def test_degree_zero_is_one(half):
    assert twisted_q_euler_poly(EulerParams(0, half)) == 1


def test_classical_numbers():
    for n, expected in enumerate(CLASSICAL):
        assert classical_twisted_euler(n) == expected


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 3), Fraction(1), Fraction(-2, 5)])
def test_classical_polynomials_match_sympy(n, x):
    expected = sympy.euler(n, sympy.Rational(x.numerator, x.denominator))
    assert classical_euler_polynomial(n, x) == Fraction(int(expected.p), int(expected.q))


def test_literal_recurrence_agrees_for_modulus_one():
    for n in range(5):
        assert classical_twisted_euler(n, literal=True) == classical_twisted_euler(n)


def test_classical_recurrence_degenerates_at_minus_one():
    with pytest.raises(PoleError):
        classical_twisted_euler(2, w=RootOfUnity(2, 1))


@pytest.mark.parametrize("h", [0, 1, 2])
@pytest.mark.parametrize("w", TWISTS)
@pytest.mark.parametrize("x", [0, Fraction(1, 3), Fraction(1, 2)])
def test_closed_form_equals_series(half, h, w, x):
    for n in range(6):
        params = EulerParams(n, half, h, x, w)
        if find_pole(params) is not None:
            with pytest.raises(PoleError):
                twisted_q_euler_poly(params)
            continue
        closed = twisted_q_euler_poly(params)
        series = twisted_q_euler_series(params, tol=1e-13)
        assert _scaled(closed, series.value, n, half) < 1e-10


def test_complex_q_matches_exact_q(half):
    for n in range(6):
        exact = twisted_q_euler_poly(EulerParams(n, half, 1, 0, RootOfUnity(4, 1)))
        inexact = twisted_q_euler_poly(EulerParams(n, QParam.complex(0.5), 1, 0, RootOfUnity(4, 1)))
        assert _scaled(exact, inexact, n, half) < 1e-12


def test_pole_at_h_zero_and_w_minus_one(half):
    params = EulerParams(1, half, 0, 0, RootOfUnity(2, 1))
    assert find_pole(params) == 0
    with pytest.raises(PoleError):
        twisted_q_euler_poly(params)
    with pytest.raises(PoleError):
        twisted_q_euler_series(params)


def test_classical_limit():
    q = QParam.exact(1 - Fraction(1, 10**6))
    for n in range(5):
        value = twisted_q_euler_poly(EulerParams(n, q, 1, 0))
        assert abs(as_complex(value) - float(CLASSICAL[n])) < 1e-4
    chi = DirichletCharacter.parse("3;1")
    for n in range(4):
        value = generalized_twisted_q_euler(n, chi, 1, q, RootOfUnity.one())
        assert abs(as_complex(value) - as_complex(classical_twisted_euler(n, chi))) < 1e-4


@pytest.mark.parametrize("n", [5, 6])
def test_generalized_limit_closes_linearly_in_one_minus_q(n):
    chi = DirichletCharacter.parse("3;1")
    expected = as_complex(classical_twisted_euler(n, chi))
    gaps = []
    for digits in (6, 9):
        q = QParam.exact(1 - Fraction(1, 10**digits))
        value = generalized_twisted_q_euler(n, chi, 1, q, RootOfUnity.one())
        gaps.append(abs(as_complex(value) - expected))
    assert gaps[1] < 1e-4
    assert 900 < gaps[0] / gaps[1] < 1100


def test_trivial_character_gives_the_polynomial_at_zero(half):
    trivial = DirichletCharacter.trivial()
    w = RootOfUnity(4, 1)
    for n in range(5):
        generalized = generalized_twisted_q_euler(n, trivial, 1, half, w)
        assert generalized == twisted_q_euler_poly(EulerParams(n, half, 1, 0, w))


@pytest.mark.parametrize("f", [3, 5])
def test_generalized_finite_sum_equals_series(half, f):
    for chi in enumerate_characters(f):
        for w in (RootOfUnity.one(), RootOfUnity(4, 1)):
            for n in range(5):
                finite = generalized_twisted_q_euler(n, chi, 1, half, w)
                series = generalized_twisted_q_euler_series(n, chi, 1, half, w, tol=1e-13)
                assert _scaled(finite, series.value, n, half) < 1e-10


@pytest.mark.parametrize("d", [1, 3, 5])
@pytest.mark.parametrize("w", [RootOfUnity.one(), RootOfUnity(4, 1)])
@pytest.mark.parametrize("x", [0, Fraction(1, 3)])
def test_distribution_relation(half, d, w, x):
    for n in range(5):
        lhs, rhs = distribution_check(n, x, 1, half, w, d)
        assert _scaled(lhs, rhs, n, half) < 1e-10


def test_distribution_arguments(half):
    with pytest.raises(DomainError):
        distribution_check(1, 0, 1, half, RootOfUnity.one(), 2)
    with pytest.raises(DomainError):
        distribution_check(1, 1, 1, half, RootOfUnity.one(), 3)


def test_parameter_validation(half):
    with pytest.raises(DomainError):
        EulerParams(-1, half)
    with pytest.raises(DomainError):
        EulerParams(1, half, 1, Fraction(1, 2), RootOfUnity.one(), DirichletCharacter.parse("3;1"))
    padic = QParam.padic(4, 3, 12)
    with pytest.raises(DomainError):
        EulerParams(1, padic, Fraction(1, 2))
    with pytest.raises(DomainError):
        EulerParams(1, padic, 1, Fraction(1, 3))
    with pytest.raises(DomainError):
        twisted_q_euler_series(EulerParams(1, padic))


def test_padic_precision_budget():
    q = QParam.padic(4, 3, 6)
    with pytest.raises(PrecisionError):
        twisted_q_euler_poly(EulerParams(4, q), target_valuation=4)


def test_evaluate_paths(half):
    params = EulerParams(2, half, 1, 0, RootOfUnity(4, 1))
    closed = evaluate(params)
    series = evaluate(params, SERIES, tol=1e-13)
    assert closed.path == CLOSED and series.path == SERIES
    assert closed.error_bound == 0.0
    assert series.terms > 0
    assert abs(closed.complex() - series.complex()) < 1e-11
    inexact = evaluate(EulerParams(2, QParam.complex(0.5), 1, 0, RootOfUnity(4, 1)))
    assert 0 < inexact.error_bound < 1e-12
    with pytest.raises(DomainError):
        evaluate(params, "bogus")
