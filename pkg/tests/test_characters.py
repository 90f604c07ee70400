import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuler.characters import DirichletCharacter, enumerate_characters, evaluate, unit_group
from qeuler.errors import DomainError, UnsupportedCharacterError
from qeuler.padic import PadicField
from qeuler.qcore import ComplexField, ExactField, RootOfUnity

MODULI = (1, 3, 5, 7, 9, 15, 21, 25, 45)


def test_character_counts():
    assert len(enumerate_characters(9)) == 6
    assert len(enumerate_characters(15)) == 8
    assert len(enumerate_characters(1)) == 1
    assert enumerate_characters(9)[0].is_trivial


def test_even_moduli_are_rejected():
    with pytest.raises(DomainError):
        unit_group(2)
    with pytest.raises(DomainError):
        enumerate_characters(12)
    with pytest.raises(DomainError):
        unit_group(0)


def test_unit_group_generators():
    group = unit_group(15)
    assert group.components == (3, 5)
    assert group.orders == (2, 4)
    assert group.exponent == 4
    for generator, component, order in zip(group.generators, group.components, group.orders):
        assert math.gcd(generator, 15) == 1
        assert pow(generator, order, component) == 1


def test_quadratic_character_mod_3():
    chi = DirichletCharacter.parse("3;1")
    assert chi.real_values() == (0, 1, -1)
    assert chi.is_real
    assert chi.order == 2


def test_complex_character_is_not_real():
    chi = DirichletCharacter.parse("5;1")
    assert chi.order == 4
    assert not chi.is_real
    with pytest.raises(UnsupportedCharacterError):
        chi.real_values()


def test_text_form():
    chi = DirichletCharacter.parse("9;3")
    assert chi.serialize() == "9;3"
    assert str(DirichletCharacter.parse("15;1,2")) == "15;1,2"
    assert DirichletCharacter.parse("1;").is_trivial
    for text in ("9", "9;6", "9;1,1", "a;1"):
        with pytest.raises(DomainError):
            DirichletCharacter.parse(text)


@pytest.mark.parametrize("f", MODULI)
def test_orthogonality(f):
    characters = enumerate_characters(f)
    phi = len(characters)
    for a in range(f):
        total = sum(chi.complex_values()[a] for chi in characters)
        expected = phi if a % f == 1 % f else 0
        assert abs(total - expected) < 1e-9


def _product(left, right):
    if left is None or right is None:
        return None
    assert left.order == right.order
    return RootOfUnity(left.order, (left.index + right.index) % left.order)


@given(st.sampled_from(MODULI), st.data())
def test_multiplicativity(f, data):
    characters = enumerate_characters(f)
    chi = data.draw(st.sampled_from(characters))
    a = data.draw(st.integers(0, 300))
    b = data.draw(st.integers(0, 300))
    assert chi.value(a * b) == _product(chi.value(a), chi.value(b))
    assert chi.value(a + f) == chi.value(a)


def test_evaluate_in_each_field():
    chi = DirichletCharacter.parse("3;1")
    assert evaluate(chi, 2, ExactField(2)) == -1
    assert evaluate(chi, 3, ExactField(2)) == 0
    assert evaluate(chi, 4, ComplexField()) == 1
    assert evaluate(chi, 2, PadicField(5, 6)) == -1
    with pytest.raises(UnsupportedCharacterError):
        evaluate(DirichletCharacter.parse("5;1"), 2, PadicField(7, 6))
