"""q-numbers, roots of unity and the scalar fields every other module computes in."""
from __future__ import annotations

import cmath
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterable, Optional, Union

from .cyclotomic import CycloRational
from .errors import DomainError, EmbeddingError, InexactPowerError, PoleError, QDivisionError

if TYPE_CHECKING:
    from .padic import CycloPadic

Scalar = Union[complex, CycloRational, "CycloPadic"]
Exponent = Union[int, Fraction, float, complex]

DEFAULT_POLE_TOL = 1e-8

# exact values at quarter turns keep w = ±1, ±i free of rounding noise
_QUARTER_TURNS = {(1, 0): 1 + 0j, (4, 1): 1j, (2, 1): -1 + 0j, (4, 3): -1j}


@dataclass(frozen=True, eq=False)
class RootOfUnity:
    """The twist w = exp(2πi·index/order), stored as given."""

    order: int
    index: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise DomainError(f"root of unity order must be positive, got {self.order}")
        if not 0 <= self.index < self.order:
            raise DomainError(f"root of unity index must lie in [0, {self.order}), got {self.index}")

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    @classmethod
    def parse(cls, text: str) -> "RootOfUnity":
        try:
            order_text, index_text = text.split(":")
            order, index = int(order_text), int(index_text)
        except ValueError as exc:
            raise DomainError(f"root of unity must be written 'm:k', got {text!r}") from exc
        return cls(order, index % order if order > 0 else index)

    @property
    def reduced(self) -> tuple[int, int]:
        """(order, index) of the same root in lowest terms."""
        g = math.gcd(self.index, self.order)
        return self.order // g, self.index // g

    @property
    def exact_order(self) -> int:
        return self.reduced[0]

    def power(self, exponent: int) -> "RootOfUnity":
        return RootOfUnity(self.order, (self.index * exponent) % self.order)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, (-self.index) % self.order)

    def is_one(self) -> bool:
        return self.index == 0

    def to_complex(self) -> complex:
        order, index = self.reduced
        if (order, index) in _QUARTER_TURNS:
            return _QUARTER_TURNS[(order, index)]
        if order == 1:
            return 1 + 0j
        # symmetric representative so that conjugate roots embed to exact conjugates
        signed = index if 2 * index <= order else index - order
        angle = 2 * math.pi * signed / order
        return complex(math.cos(angle), math.sin(angle))

    def embed(self, field: "ScalarField") -> Scalar:
        return field.root_of_unity(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootOfUnity):
            return NotImplemented
        return self.reduced == other.reduced

    def __hash__(self) -> int:
        return hash(self.reduced)

    def __str__(self) -> str:
        return f"{self.order}:{self.index}"


class Regime(Enum):
    COMPLEX_DISK = "complex"
    PADIC_NEAR_1 = "padic"


class ScalarField(ABC):
    """A carrier for scalars: complex floats, exact cyclotomic rationals or cyclotomic p-adics."""

    kind: str = ""

    @abstractmethod
    def zero(self) -> Scalar: ...

    @abstractmethod
    def one(self) -> Scalar: ...

    @abstractmethod
    def from_int(self, value: int) -> Scalar: ...

    @abstractmethod
    def from_rational(self, value: Fraction) -> Scalar: ...

    @abstractmethod
    def root_of_unity(self, root: RootOfUnity) -> Scalar: ...

    @abstractmethod
    def is_zero(self, value: Scalar) -> bool: ...

    @abstractmethod
    def power(self, base: Scalar, exponent: Exponent) -> Scalar: ...

    def coerce(self, value: Any) -> Scalar:
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_rational(value)
        return value

    def divide(self, numerator: Scalar, denominator: Scalar) -> Scalar:
        if self.is_zero(denominator):
            raise PoleError("denominator vanishes")
        return numerator / denominator

    def exact_quotient(self, numerator: Scalar, denominator: Scalar) -> Scalar:
        """Quotient known to be exact even when the denominator is not a unit."""
        return self.divide(numerator, denominator)

    def to_complex(self, value: Scalar) -> complex:
        raise EmbeddingError(f"{self.kind} scalars have no complex embedding")


@dataclass(frozen=True)
class ComplexField(ScalarField):
    pole_tol: float = DEFAULT_POLE_TOL
    kind = "complex"

    def zero(self) -> complex:
        return 0j

    def one(self) -> complex:
        return 1 + 0j

    def from_int(self, value: int) -> complex:
        return complex(value)

    def from_rational(self, value: Fraction) -> complex:
        return complex(float(value))

    def coerce(self, value: Any) -> complex:
        if isinstance(value, (CycloRational,)):
            return value.to_complex()
        if isinstance(value, Fraction):
            return complex(float(value))
        return complex(value)

    def root_of_unity(self, root: RootOfUnity) -> complex:
        return root.to_complex()

    def is_zero(self, value: complex) -> bool:
        return abs(value) < self.pole_tol

    def power(self, base: complex, exponent: Exponent) -> complex:
        if isinstance(exponent, int):
            return base**exponent
        if base == 0:
            raise DomainError("non-integer power of zero")
        return cmath.exp(complex(exponent) * cmath.log(base))

    def to_complex(self, value: complex) -> complex:
        return complex(value)


@dataclass(frozen=True)
class ExactField(ScalarField):
    """ℚ(ζ_order); order 1 is ℚ itself."""

    order: int = 1
    kind = "exact"

    def zero(self) -> CycloRational:
        return CycloRational(self.order, [0])

    def one(self) -> CycloRational:
        return CycloRational(self.order, [1])

    def from_int(self, value: int) -> CycloRational:
        return CycloRational(self.order, [value])

    def from_rational(self, value: Fraction) -> CycloRational:
        return CycloRational(self.order, [value])

    def root_of_unity(self, root: RootOfUnity) -> CycloRational:
        order, index = root.reduced
        if self.order % order:
            raise EmbeddingError(f"root of order {order} does not lie in Q(zeta_{self.order})")
        return CycloRational.root_of_unity(self.order, index * (self.order // order))

    def is_zero(self, value: CycloRational) -> bool:
        return value.is_zero()

    def power(self, base: CycloRational, exponent: Exponent) -> CycloRational:
        if isinstance(exponent, Fraction) and exponent.denominator == 1:
            exponent = int(exponent)
        if not isinstance(exponent, int):
            raise InexactPowerError(f"exponent {exponent} is not an integer")
        return base**exponent

    def to_complex(self, value: CycloRational) -> complex:
        return value.to_complex()


@dataclass(frozen=True)
class QParam:
    """The deformation parameter q together with its regime."""

    value: Any
    regime: Regime

    def __post_init__(self) -> None:
        if self.regime is Regime.PADIC_NEAR_1:
            if not hasattr(self.value, "prime"):
                raise DomainError("p-adic q must be a PadicInt")
            if (1 - self.value).valuation() < 1:
                raise DomainError(f"p-adic q must satisfy |1-q|_p < 1, got {self.value}")

    @classmethod
    def complex(cls, value: Union[complex, float, Fraction], *, strict: bool = True) -> "QParam":
        q = complex(float(value)) if isinstance(value, Fraction) else complex(value)
        if strict and not 0 < abs(q) < 1:
            raise DomainError(f"complex q must satisfy 0 < |q| < 1, got {q}")
        return cls(q, Regime.COMPLEX_DISK)

    @classmethod
    def exact(cls, value: Union[int, Fraction, str], *, strict: bool = True) -> "QParam":
        q = Fraction(value)
        if strict and not (q != 0 and abs(q) < 1):
            raise DomainError(f"q must satisfy 0 < |q| < 1, got {q}")
        return cls(q, Regime.COMPLEX_DISK)

    @classmethod
    def padic(cls, value: int, prime: int, precision: int) -> "QParam":
        from .padic import PadicInt

        return cls(PadicInt.of(value, prime, precision), Regime.PADIC_NEAR_1)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def is_padic(self) -> bool:
        return self.regime is Regime.PADIC_NEAR_1

    def as_complex(self) -> "QParam":
        if self.is_padic:
            raise EmbeddingError("p-adic q has no complex embedding")
        return QParam(complex(float(self.value)) if self.is_exact else self.value, Regime.COMPLEX_DISK)

    def field(self, order: int = 1, pole_tol: float = DEFAULT_POLE_TOL) -> ScalarField:
        if self.is_padic:
            return self.value.field_for(order)
        if self.is_exact:
            return ExactField(order)
        return ComplexField(pole_tol)

    def embed(self, field: ScalarField) -> Scalar:
        if self.is_padic:
            return field.coerce(self.value)
        if self.is_exact:
            return field.from_rational(self.value)
        return field.coerce(self.value)

    def complex_value(self) -> complex:
        return self.as_complex().value

    def __str__(self) -> str:
        return str(self.value)


def common_order(roots: Iterable[Optional[RootOfUnity]], prime: Optional[int] = None) -> int:
    """Smallest cyclotomic order containing every root (p-power part only in p-adic mode)."""
    order = 1
    for root in roots:
        if root is None:
            continue
        m = root.exact_order
        if prime is not None:
            while m % prime == 0 and m > 1:
                m //= prime
            m = root.exact_order // m
        order = order * m // math.gcd(order, m)
    return order


def working_field(
    q: QParam,
    *roots: Optional[RootOfUnity],
    pole_tol: float = DEFAULT_POLE_TOL,
) -> ScalarField:
    """The field an evaluation with parameter q and twists ``roots`` runs in."""
    prime = q.value.prime if q.is_padic else None
    return q.field(common_order(roots, prime), pole_tol)


def geometric_sum(base: Scalar, count: int, one: Scalar) -> Scalar:
    """1 + base + ... + base^(count-1) in O(log count) multiplications."""
    total = one - one
    prefix_power = one
    block_sum, block_power = one, base
    while count:
        if count & 1:
            total = total + prefix_power * block_sum
            prefix_power = prefix_power * block_power
        count >>= 1
        if count:
            block_sum = block_sum * (one + block_power)
            block_power = block_power * block_power
    return total


def _is_integral(x: Any) -> bool:
    if isinstance(x, bool):
        return True
    if isinstance(x, int):
        return True
    return isinstance(x, Fraction) and x.denominator == 1


def q_number(x: Exponent, q: QParam, field: Optional[ScalarField] = None) -> Scalar:
    """⌈x⌉_q = (1 - q^x)/(1 - q)."""
    field = field or q.field()
    qv = q.embed(field)
    one = field.one()
    if _is_integral(x):
        n = int(x)
        if n >= 0:
            return geometric_sum(qv, n, one)
        # ⌈-n⌉_q = -q^{-n} ⌈n⌉_q
        return -(field.power(qv, n) * geometric_sum(qv, -n, one))
    if q.is_padic:
        return geometric_sum(qv, q.value.exponent_residue(x), one)
    if q.is_exact:
        return q_number(x, q.as_complex())
    if qv == one:
        raise QDivisionError("q = 1 on the non-integer q-number path")
    return (one - field.power(qv, x)) / (one - qv)


def q_number_neg(x: int, q: QParam, field: Optional[ScalarField] = None) -> Scalar:
    """⌈x⌉_{-q} = (1 - (-q)^x)/(1 + q), defined for integers x only."""
    if not _is_integral(x):
        raise DomainError("q_number_neg is defined for integer x only")
    field = field or q.field()
    qv = q.embed(field)
    one = field.one()
    if field.is_zero(one + qv):
        raise QDivisionError("q = -1 in the alternating q-number")
    n = int(x)
    if n >= 0:
        return geometric_sum(-qv, n, one)
    return field.divide(one - field.power(-qv, n), one + qv)


def two_q(q: QParam, field: Optional[ScalarField] = None) -> Scalar:
    """⌈2⌉_q = 1 + q."""
    field = field or q.field()
    return field.one() + q.embed(field)


def binomial(n: int, j: int) -> int:
    if n < 0 or j < 0:
        raise DomainError(f"binomial arguments must be non-negative, got ({n}, {j})")
    if j > n:
        raise DomainError(f"binomial index {j} exceeds {n}")
    return math.comb(n, j)


def as_complex(value: Any) -> complex:
    """Complex embedding of a complex or exact scalar."""
    if isinstance(value, CycloRational):
        return value.to_complex()
    if isinstance(value, Fraction):
        return complex(float(value))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise EmbeddingError(f"{type(value).__name__} values have no complex embedding")


def normalize_exponent(value: Any) -> Exponent:
    """Integral Fractions, floats and real complexes become ints; other values pass through."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, complex):
        if value.imag != 0:
            return value
        value = value.real
    if isinstance(value, float):
        return int(value) if value.is_integer() else value
    raise DomainError(f"unsupported exponent {value!r}")
