from fractions import Fraction

import pytest

from qeuler.characters import DirichletCharacter, enumerate_characters
from qeuler.errors import DomainError, PoleError, VerificationError
from qeuler.euler import comparison_scale
from qeuler.lfunctions import (
    DIRECT,
    ZetaParams,
    hurwitz_zeta,
    hurwitz_zeta_raw,
    interpolate_at_negatives,
    l_function,
    l_function_paths,
    zeta,
)
from qeuler.qcore import QParam, RootOfUnity


def test_zeta_at_zero_is_minus_q(half):
    value = zeta(ZetaParams(0, half, 1))
    assert abs(value + 0.5) < 1e-12


def test_zeta_is_a_shifted_hurwitz_zeta(half):
    w = RootOfUnity(4, 1)
    params = ZetaParams(2 + 1j, half, 1, None, w)
    shifted = -w.to_complex() * 0.5 * hurwitz_zeta(params.replace(x=1), 1e-13)
    value = zeta(params, 1e-13)
    assert abs(value - shifted) < 1e-10 * max(1.0, abs(value))


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(1, 2), 1])
@pytest.mark.parametrize("w", [RootOfUnity.one(), RootOfUnity(4, 1)])
def test_hurwitz_interpolates_the_polynomials(half, x, w):
    rows = interpolate_at_negatives(5, ZetaParams(0, half, 1, x, w), tol=1e-13)
    assert [row.n for row in rows] == list(range(6))
    for row in rows:
        assert row.difference / comparison_scale(row.n, half) < 1e-9


@pytest.mark.parametrize("h", [0, 1, 2])
def test_zeta_interpolates_the_numbers(half, h):
    for row in interpolate_at_negatives(5, ZetaParams(0, half, h, None, RootOfUnity(3, 1)), tol=1e-13):
        assert row.difference / comparison_scale(row.n, half) < 1e-9


@pytest.mark.parametrize("f", [3, 5])
def test_l_function_interpolates_the_generalized_numbers(half, f):
    for chi in enumerate_characters(f):
        for row in interpolate_at_negatives(4, ZetaParams(0, half, 1, None, RootOfUnity(2, 1), chi), tol=1e-13):
            assert row.difference / comparison_scale(row.n, half) < 1e-9


@pytest.mark.parametrize("s", [2 + 1j, -1.5 + 0.5j, 0.5 - 3j])
@pytest.mark.parametrize("text", ["3;1", "5;1", "15;1,3"])
def test_l_function_paths_agree(s, text):
    params = ZetaParams(s, QParam.complex(0.6), 1, None, RootOfUnity(4, 1), DirichletCharacter.parse(text))
    paths = l_function_paths(params, 1e-13)
    assert paths.difference < 1e-9 * max(1.0, abs(paths.direct))


def test_cross_checked_l_function(half):
    params = ZetaParams(2 + 1j, half, 1, None, RootOfUnity.one(), DirichletCharacter.parse("5;1"))
    value = l_function(params, 1e-10, cross_check=True)
    assert abs(value - l_function(params, 1e-10, DIRECT)) < 1e-9


def test_cross_check_reports_disagreement(half, monkeypatch):
    import qeuler.lfunctions as lfunctions

    params = ZetaParams(2, half, 1, None, RootOfUnity.one(), DirichletCharacter.parse("3;1"))
    monkeypatch.setattr(lfunctions, "_l_direct", lambda *args: 1.0 + 0j)
    with pytest.raises(VerificationError):
        l_function(params, 1e-12, cross_check=True)


def test_l_function_arguments(half):
    params = ZetaParams(2, half, 1)
    with pytest.raises(DomainError):
        l_function(params)
    with pytest.raises(DomainError):
        l_function(params.replace(chi=DirichletCharacter.parse("3;1")), path="sideways")


@pytest.mark.parametrize("s", [2 - 0.5j, 0.5 + 2j, -2 + 0.5j])
def test_raw_and_regularized_hurwitz_agree(half, s):
    params = ZetaParams(s, half, 1, Fraction(1, 2), RootOfUnity(3, 1))
    regularized = hurwitz_zeta(params, 1e-13)
    raw = hurwitz_zeta_raw(params, 1e-13)
    assert abs(regularized - raw) < 1e-9 * max(1.0, abs(raw))


def test_raw_series_needs_positive_h(half):
    with pytest.raises(DomainError):
        hurwitz_zeta_raw(ZetaParams(2, half, 0, Fraction(1, 2)))


def test_conjugation_symmetry():
    q = QParam.complex(0.5)
    s = 1.5 + 2j
    value = hurwitz_zeta(ZetaParams(s, q, 1, Fraction(1, 3), RootOfUnity(5, 2)), 1e-13)
    mirror = hurwitz_zeta(ZetaParams(s.conjugate(), q, 1, Fraction(1, 3), RootOfUnity(5, 3)), 1e-13)
    assert abs(value.conjugate() - mirror) < 1e-10 * max(1.0, abs(value))


def test_pole_at_w_q_h_minus_one(half):
    with pytest.raises(PoleError):
        zeta(ZetaParams(2, half, 0, None, RootOfUnity(2, 1)))


def test_parameter_validation(half):
    with pytest.raises(DomainError):
        ZetaParams(2, QParam.exact(Fraction(-1, 2)))
    with pytest.raises(DomainError):
        ZetaParams(2, QParam.complex(0.5 + 0.1j))
    with pytest.raises(DomainError):
        ZetaParams(2, half, -1)
    with pytest.raises(DomainError):
        ZetaParams(2, half, 1, 0)
    with pytest.raises(DomainError):
        ZetaParams(2, half, 1, Fraction(3, 2))
    with pytest.raises(DomainError):
        ZetaParams(2, half, 1, Fraction(1, 2), RootOfUnity.one(), DirichletCharacter.parse("3;1"))
    with pytest.raises(DomainError):
        hurwitz_zeta(ZetaParams(2, half))
    with pytest.raises(DomainError):
        interpolate_at_negatives(21, ZetaParams(0, half))


@pytest.mark.parametrize("x", [None, Fraction(1, 3)])
def test_untwisted_h_zero_reaches_high_degrees(x):
    # |w q^h| = 1: the regularized terms bottom out at rounding level
    q = QParam.exact(Fraction(4, 5))
    params = ZetaParams(-8, q, 0, x, RootOfUnity(1, 0))
    value = zeta(params) if x is None else hurwitz_zeta(params)
    rows = interpolate_at_negatives(8, params.replace(s=0), tol=1e-13)
    assert abs(value - rows[8].zeta_value) / comparison_scale(8, q) < 1e-9
    for row in rows:
        assert row.difference / comparison_scale(row.n, q) < 1e-9


def test_hurwitz_default_tolerance(half):
    params = ZetaParams(2 + 1j, half, 1, Fraction(1, 3), RootOfUnity(4, 1))
    assert hurwitz_zeta(params) == hurwitz_zeta(params, 1e-11)
