"""Arithmetic in quotient rings R[x]/Φ_m(x) shared by the exact and p-adic carriers."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Optional, Sequence, Tuple, TypeVar

from sympy import Poly, Symbol, cyclotomic_poly

from .errors import EmbeddingError, PoleError

T = TypeVar("T")
E = TypeVar("E", bound="CyclotomicArithmetic")

_X = Symbol("x")


@lru_cache(maxsize=None)
def cyclotomic_coefficients(order: int) -> Tuple[int, ...]:
    """Coefficients of Φ_order, lowest degree first (monic)."""
    if order < 1:
        raise ValueError(f"cyclotomic order must be positive, got {order}")
    poly = Poly(cyclotomic_poly(order, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def cyclotomic_degree(order: int) -> int:
    return len(cyclotomic_coefficients(order)) - 1


def reduce_polynomial(coeffs: Sequence[T], order: int) -> List[T]:
    """Remainder of ``coeffs`` modulo Φ_order, as exactly φ(order) coefficients."""
    modulus = cyclotomic_coefficients(order)
    degree = len(modulus) - 1
    work: List[Any] = list(coeffs)
    for top in range(len(work) - 1, degree - 1, -1):
        lead = work[top]
        if not lead:
            continue
        base = top - degree
        for i in range(degree):
            if modulus[i]:
                work[base + i] -= lead * modulus[i]
        work[top] = 0
    if len(work) < degree:
        work.extend([0] * (degree - len(work)))
    return work[:degree]


def multiply_polynomials(left: Sequence[T], right: Sequence[T], order: int) -> List[T]:
    product: List[Any] = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if not a:
            continue
        for j, b in enumerate(right):
            if b:
                product[i + j] += a * b
    return reduce_polynomial(product, order)


def monomial(exponent: int, order: int) -> List[int]:
    coeffs = [0] * order
    coeffs[exponent % order] = 1
    return reduce_polynomial(coeffs, order)


def galois_conjugate(coeffs: Sequence[T], order: int, k: int) -> List[T]:
    """Apply ζ ↦ ζ^k to an element written in the power basis."""
    spread: List[Any] = [0] * order
    for i, c in enumerate(coeffs):
        if c:
            spread[(i * k) % order] += c
    return reduce_polynomial(spread, order)


def galois_exponents(order: int) -> List[int]:
    return [k for k in range(2, order) if math.gcd(k, order) == 1]


class CyclotomicArithmetic:
    """Ring operations on power-basis coefficient tuples.

    Subclasses provide ``order`` and ``coeffs`` attributes plus three hooks:
    ``_like`` builds a normalized element of the same kind, ``_pair`` brings
    an operand to a common representation (or returns None), and
    ``_invert_constant`` inverts a constant coefficient or raises.
    """

    order: int
    coeffs: Tuple[Any, ...]

    def _like(self: E, coeffs: Sequence[Any]) -> E:
        raise NotImplementedError

    def _pair(self: E, other: Any) -> Optional[Tuple[E, E]]:
        raise NotImplementedError

    def _invert_constant(self, value: Any) -> Any:
        raise NotImplementedError

    def __add__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs._like([a + b for a, b in zip(lhs.coeffs, rhs.coeffs)])

    __radd__ = __add__

    def __sub__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs._like([a - b for a, b in zip(lhs.coeffs, rhs.coeffs)])

    def __rsub__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs._like([b - a for a, b in zip(lhs.coeffs, rhs.coeffs)])

    def __neg__(self: E) -> E:
        return self._like([-a for a in self.coeffs])

    def __mul__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        if len(lhs.coeffs) == 1:
            return lhs._like([lhs.coeffs[0] * rhs.coeffs[0]])
        return lhs._like(multiply_polynomials(lhs.coeffs, rhs.coeffs, lhs.order))

    __rmul__ = __mul__

    def __pow__(self: E, exponent: int) -> E:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self._like([1])
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __truediv__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs * rhs.inverse()

    def __rtruediv__(self: E, other: Any) -> E:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return rhs * lhs.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def conjugate_by(self: E, k: int) -> E:
        return self._like(galois_conjugate(self.coeffs, self.order, k))

    def norm_cofactor(self: E) -> E:
        """Product of the non-identity Galois conjugates."""
        cofactor = self._like([1])
        for k in galois_exponents(self.order):
            cofactor = cofactor * self.conjugate_by(k)
        return cofactor

    def inverse(self: E) -> E:
        cofactor = self.norm_cofactor()
        norm = (self * cofactor).coeffs[0]
        return cofactor * self._like([self._invert_constant(norm)])

    def constant(self) -> Any:
        return self.coeffs[0]

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])


class CycloRational(CyclotomicArithmetic):
    """Exact element of ℚ(ζ_m), coefficients are Fractions in the power basis."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Any]) -> None:
        reduced = reduce_polynomial([Fraction(c) for c in coeffs], order)
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in reduced)

    @classmethod
    def constant_of(cls, order: int, value: Any) -> "CycloRational":
        return cls(order, [Fraction(value)])

    @classmethod
    def root_of_unity(cls, order: int, exponent: int) -> "CycloRational":
        return cls(order, monomial(exponent, order))

    def _like(self, coeffs: Sequence[Any]) -> "CycloRational":
        return CycloRational(self.order, coeffs)

    def _pair(self, other: Any) -> Optional[Tuple["CycloRational", "CycloRational"]]:
        if isinstance(other, CycloRational):
            if other.order != self.order:
                raise EmbeddingError(
                    f"cannot combine elements of Q(zeta_{self.order}) and Q(zeta_{other.order})"
                )
            return self, other
        if isinstance(other, (int, Fraction)):
            return self, CycloRational(self.order, [other])
        return None

    def _invert_constant(self, value: Any) -> Fraction:
        if value == 0:
            raise PoleError("division by zero in an exact cyclotomic field")
        return 1 / Fraction(value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloRational):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        angle = 2 * math.pi / self.order
        total = 0j
        for i, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(1j * angle * i)
        return total

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"CycloRational(order={self.order}, coeffs=[{terms}])"
