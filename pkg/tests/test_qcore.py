import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeuler.errors import DomainError, EmbeddingError
from qeuler.padic import PadicField
from qeuler.qcore import (
    ExactField,
    QParam,
    RootOfUnity,
    as_complex,
    binomial,
    geometric_sum,
    normalize_exponent,
    q_number,
    q_number_neg,
    two_q,
    working_field,
)

rational_q = st.fractions(min_value=Fraction(-99, 100), max_value=Fraction(99, 100)).filter(lambda q: q != 0)
disk_q = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False).filter(lambda z: abs(z) > 0.05)


def test_q_number_examples(half):
    assert q_number(3, half) == Fraction(7, 4)
    assert q_number(0, half) == 0
    assert q_number(1, half) == 1
    # ⌈-2⌉_q = (1 - q^-2)/(1 - q)
    assert q_number(-2, half) == -6


def test_q_number_neg_examples(half):
    assert q_number_neg(2, half) == Fraction(1, 2)
    assert q_number_neg(3, half) == Fraction(3, 4)
    with pytest.raises(DomainError):
        q_number_neg(Fraction(1, 2), half)


def test_two_q_and_binomial(half):
    assert two_q(half) == Fraction(3, 2)
    assert binomial(30, 15) == 155117520
    assert binomial(4, 0) == 1
    with pytest.raises(DomainError):
        binomial(3, 5)
    with pytest.raises(DomainError):
        binomial(-1, 0)


def test_non_integer_q_number_uses_the_complex_carrier(half):
    expected = (1 - 0.5**2.5) / 0.5
    assert abs(q_number(2.5, QParam.complex(0.5)) - expected) < 1e-14
    assert abs(q_number(Fraction(5, 2), half) - expected) < 1e-14


def test_geometric_sum_on_integers():
    assert geometric_sum(2, 5, 1) == 31
    assert geometric_sum(3, 0, 1) == 0


@settings(deadline=None, max_examples=60)
@given(rational_q, st.integers(0, 12), st.integers(0, 12))
def test_cocycle_is_exact(q_value, x, y):
    q = QParam.exact(q_value)
    assert q_number(x + y, q) == q_number(x, q) + q_value**x * q_number(y, q)


@settings(deadline=None, max_examples=60)
@given(disk_q, st.integers(0, 30))
def test_complex_q_number_is_a_geometric_sum(z, x):
    explicit = sum(z**i for i in range(x))
    assert abs(q_number(x, QParam.complex(z)) - explicit) <= 1e-12 * max(1.0, abs(explicit))


def test_q_parameter_validation():
    with pytest.raises(DomainError):
        QParam.exact(1)
    with pytest.raises(DomainError):
        QParam.exact(0)
    with pytest.raises(DomainError):
        QParam.complex(1.5)
    with pytest.raises(DomainError):
        QParam.padic(2, 3, 10)
    assert QParam.padic(4, 3, 10).is_padic


def test_padic_q_number_matches_the_sum():
    q = QParam.padic(4, 3, 10)
    assert q_number(5, q) == 1 + 4 + 16 + 64 + 256


def test_root_of_unity_text_and_equality():
    w = RootOfUnity.parse("4:1")
    assert w.to_complex() == 1j
    assert str(w) == "4:1"
    assert RootOfUnity(4, 2) == RootOfUnity(2, 1)
    assert hash(RootOfUnity(4, 2)) == hash(RootOfUnity(2, 1))
    assert RootOfUnity.parse("4:5") == w
    assert RootOfUnity(6, 2).exact_order == 3
    with pytest.raises(DomainError):
        RootOfUnity.parse("x")
    with pytest.raises(DomainError):
        RootOfUnity(0, 0)


@given(st.integers(1, 24), st.integers(0, 200))
def test_root_of_unity_powers(order, index):
    w = RootOfUnity(order, index % order)
    assert abs(w.to_complex() ** order - 1) < 1e-12
    assert abs(w.to_complex() - cmath.exp(2j * cmath.pi * (index % order) / order)) < 1e-12
    assert (w.power(order)).is_one()
    assert w.power(3) == RootOfUnity(order, (3 * index) % order)
    assert abs(w.to_complex() * w.inverse().to_complex() - 1) < 1e-12


def test_exact_roots_of_unity():
    field = ExactField(12)
    for k in range(12):
        w = RootOfUnity(12, k)
        assert field.root_of_unity(w) ** 12 == 1
    with pytest.raises(EmbeddingError):
        ExactField(4).root_of_unity(RootOfUnity(3, 1))


def test_working_field_picks_the_carrier(half):
    assert working_field(half, RootOfUnity(4, 1)) == ExactField(4)
    assert working_field(QParam.padic(4, 3, 10), RootOfUnity(3, 1)) == PadicField(3, 10, 3)


def test_normalize_exponent():
    assert normalize_exponent(Fraction(4, 2)) == 2
    assert isinstance(normalize_exponent(Fraction(4, 2)), int)
    assert normalize_exponent(2.0) == 2
    assert normalize_exponent(complex(1.5, 0)) == 1.5
    assert normalize_exponent(Fraction(1, 3)) == Fraction(1, 3)
    assert normalize_exponent(1 + 2j) == 1 + 2j
    with pytest.raises(DomainError):
        normalize_exponent("a")


def test_as_complex():
    assert as_complex(Fraction(1, 4)) == 0.25
    assert as_complex(ExactField(4).root_of_unity(RootOfUnity(4, 1))) == pytest.approx(1j)
    with pytest.raises(EmbeddingError):
        as_complex("x")
