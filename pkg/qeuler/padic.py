"""Fixed-precision p-adic arithmetic and fermionic integrals as finite-level Riemann sums.

Elements of ℤ_p are residues modulo p^M (``PadicInt``); elements of
ℤ_p[ζ_{p^r}] are coefficient vectors reduced modulo Φ_{p^r} (``CycloPadic``).
A fermionic integral is the limit of its level sums
S_N(f) = (1/⌈d p^N⌉_{-q}) Σ_{x < d p^N} f(x) (-q)^x, and the limit is detected
by two consecutive levels agreeing to a requested valuation.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

from sympy import multiplicity

from .configuration import EvalConfig
from .cyclotomic import CyclotomicArithmetic, monomial, reduce_polynomial
from .errors import (
    DomainError,
    EmbeddingError,
    NonConvergenceError,
    NonUnitError,
    PoleError,
    PrecisionError,
)
from .qcore import Exponent, QParam, RootOfUnity, ScalarField, geometric_sum

logger = logging.getLogger(__name__)

INFINITE_VALUATION = math.inf


def _valuation_of_int(value: int, prime: int, cap: int) -> int:
    if value == 0:
        return cap
    return min(int(multiplicity(prime, value)), cap)


@dataclass(frozen=True, eq=False)
class PadicInt:
    """An element of ℤ_p known modulo p^precision."""

    prime: int
    precision: int
    residue: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise DomainError("p-adic precision must be at least 1")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def of(cls, value: Union[int, Fraction, "PadicInt"], prime: int, precision: int) -> "PadicInt":
        if isinstance(value, PadicInt):
            return cls(prime, min(precision, value.precision), value.residue)
        if isinstance(value, Fraction):
            if value.denominator % prime == 0:
                raise NonUnitError(f"{value} is not a p-adic integer for p={prime}")
            modulus = prime**precision
            return cls(prime, precision, value.numerator * pow(value.denominator, -1, modulus))
        return cls(prime, precision, int(value))

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def valuation(self) -> int:
        return _valuation_of_int(self.residue, self.prime, self.precision)

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    def _other(self, other: Any) -> Optional["PadicInt"]:
        if isinstance(other, PadicInt):
            if other.prime != self.prime:
                raise DomainError(f"cannot mix {self.prime}-adic and {other.prime}-adic numbers")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicInt.of(other, self.prime, self.precision)
        return None

    def _build(self, other: "PadicInt", residue: int) -> "PadicInt":
        return PadicInt(self.prime, min(self.precision, other.precision), residue)

    def __add__(self, other: Any) -> "PadicInt":
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self._build(rhs, self.residue + rhs.residue)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "PadicInt":
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self._build(rhs, self.residue - rhs.residue)

    def __rsub__(self, other: Any) -> "PadicInt":
        lhs = self._other(other)
        if lhs is None:
            return NotImplemented
        return self._build(lhs, lhs.residue - self.residue)

    def __neg__(self) -> "PadicInt":
        return PadicInt(self.prime, self.precision, -self.residue)

    def __mul__(self, other: Any) -> "PadicInt":
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self._build(rhs, self.residue * rhs.residue)

    __rmul__ = __mul__

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NonUnitError(f"{self} is not a unit")
        return PadicInt(self.prime, self.precision, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other: Any) -> "PadicInt":
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __pow__(self, exponent: int) -> "PadicInt":
        if exponent < 0:
            return PadicInt(self.prime, self.precision, pow(self.inverse().residue, -exponent, self.modulus))
        return PadicInt(self.prime, self.precision, pow(self.residue, exponent, self.modulus))

    def exponent_residue(self, exponent: Exponent) -> int:
        """Integer representative of an exponent in ℤ_p, valid for bases ≡ 1 mod p."""
        if isinstance(exponent, Fraction):
            if exponent.denominator % self.prime == 0:
                raise DomainError(f"exponent {exponent} is not a p-adic integer")
            return PadicInt.of(exponent, self.prime, self.precision).residue
        if isinstance(exponent, int):
            return exponent % self.modulus
        raise DomainError(f"p-adic exponents must be rational, got {exponent!r}")

    def field_for(self, order: int) -> "PadicField":
        return PadicField(self.prime, self.precision, order)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, PadicInt)):
            rhs = self._other(other)
            precision = min(self.precision, rhs.precision)
            return (self.residue - rhs.residue) % self.prime**precision == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.prime)

    def __int__(self) -> int:
        return self.residue

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.prime}^{self.precision})"


class CycloPadic(CyclotomicArithmetic):
    """An element of ℤ_p[ζ] with ζ of order ``order`` = p^r, known modulo p^precision."""

    __slots__ = ("prime", "precision", "order", "coeffs")

    def __init__(self, prime: int, precision: int, order: int, coeffs: Sequence[int]) -> None:
        modulus = prime**precision
        reduced = reduce_polynomial([int(c) for c in coeffs], order)
        self.prime = prime
        self.precision = precision
        self.order = order
        self.coeffs = tuple(c % modulus for c in reduced)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def _like(self, coeffs: Sequence[int]) -> "CycloPadic":
        return CycloPadic(self.prime, self.precision, self.order, coeffs)

    def _at(self, precision: int, order: int) -> "CycloPadic":
        if precision == self.precision and order == self.order:
            return self
        if order != self.order:
            if not self.is_constant():
                raise EmbeddingError(f"cannot move an element of order {self.order} to order {order}")
            return CycloPadic(self.prime, precision, order, [self.coeffs[0]])
        return CycloPadic(self.prime, precision, order, self.coeffs)

    def _pair(self, other: Any) -> Optional[Tuple["CycloPadic", "CycloPadic"]]:
        if isinstance(other, CycloPadic):
            if other.prime != self.prime:
                raise DomainError(f"cannot mix {self.prime}-adic and {other.prime}-adic numbers")
            precision = min(self.precision, other.precision)
            order = max(self.order, other.order)
            if order % min(self.order, other.order):
                raise EmbeddingError("incompatible cyclotomic orders")
            return self._at(precision, order), other._at(precision, order)
        if isinstance(other, PadicInt):
            precision = min(self.precision, other.precision)
            return self._at(precision, self.order), CycloPadic(self.prime, precision, self.order, [other.residue])
        if isinstance(other, (int, Fraction)):
            constant = PadicInt.of(other, self.prime, self.precision)
            return self, self._like([constant.residue])
        return None

    def _invert_constant(self, value: int) -> int:
        if value % self.prime == 0:
            raise NonUnitError(f"cannot invert a non-unit in Z_{self.prime}[zeta_{self.order}]")
        return pow(value, -1, self.modulus)

    def valuation(self) -> int:
        """Largest v ≤ precision with every coordinate divisible by p^v."""
        return min(_valuation_of_int(c, self.prime, self.precision) for c in self.coeffs)

    def exact_divide_by_prime_power(self, exponent: int) -> "CycloPadic":
        if exponent == 0:
            return self
        if self.valuation() < exponent:
            raise PrecisionError(
                f"value is not divisible by {self.prime}^{exponent} at precision {self.precision}"
            )
        if exponent >= self.precision:
            raise PrecisionError(f"dividing by {self.prime}^{exponent} leaves no significant digits")
        divisor = self.prime**exponent
        return CycloPadic(self.prime, self.precision - exponent, self.order, [c // divisor for c in self.coeffs])

    def to_padic_int(self) -> PadicInt:
        if not self.is_constant():
            raise EmbeddingError("element does not lie in Z_p")
        return PadicInt(self.prime, self.precision, self.coeffs[0])

    def serialize(self) -> str:
        twist_exponent = round(math.log(self.order, self.prime)) if self.order > 1 else 0
        body = ",".join(str(c) for c in self.coeffs)
        return f"{self.prime}^{self.precision}; {self.prime}^{twist_exponent}; {body}"

    @classmethod
    def parse(cls, text: str) -> "CycloPadic":
        try:
            base_text, twist_text, body = (part.strip() for part in text.split(";"))
            prime_text, precision_text = base_text.split("^")
            twist_prime_text, twist_exponent_text = twist_text.split("^")
            prime, precision = int(prime_text), int(precision_text)
            if int(twist_prime_text) != prime:
                raise ValueError("twist order must be a power of the same prime")
            coeffs = [int(c) for c in body.split(",")] if body else [0]
        except ValueError as exc:
            raise DomainError(f"cannot parse cyclotomic p-adic value {text!r}") from exc
        return cls(prime, precision, prime ** int(twist_exponent_text), coeffs)

    def __eq__(self, other: object) -> bool:
        pair = self._pair(other) if isinstance(other, (CycloPadic, PadicInt, int, Fraction)) else None
        if pair is None:
            return NotImplemented
        lhs, rhs = pair
        return lhs.coeffs == rhs.coeffs

    def __hash__(self) -> int:
        return hash((self.prime, self.order))

    def __repr__(self) -> str:
        return f"CycloPadic({self.serialize()})"


@dataclass(frozen=True)
class PadicField(ScalarField):
    """ℤ_p[ζ_order] modulo p^precision; order is a power of p (1 allowed)."""

    prime: int
    precision: int
    order: int = 1
    kind = "padic"

    def __post_init__(self) -> None:
        m = self.order
        while m % self.prime == 0:
            m //= self.prime
        if m != 1:
            raise EmbeddingError(f"twist order {self.order} is not a power of {self.prime}")

    def _element(self, coeffs: Sequence[int]) -> CycloPadic:
        return CycloPadic(self.prime, self.precision, self.order, coeffs)

    def zero(self) -> CycloPadic:
        return self._element([0])

    def one(self) -> CycloPadic:
        return self._element([1])

    def from_int(self, value: int) -> CycloPadic:
        return self._element([value])

    def from_rational(self, value: Fraction) -> CycloPadic:
        return self._element([PadicInt.of(value, self.prime, self.precision).residue])

    def coerce(self, value: Any) -> CycloPadic:
        if isinstance(value, PadicInt):
            return CycloPadic(self.prime, min(self.precision, value.precision), self.order, [value.residue])
        if isinstance(value, CycloPadic):
            return value._at(min(self.precision, value.precision), max(self.order, value.order))
        return super().coerce(value)

    def root_of_unity(self, root: RootOfUnity) -> CycloPadic:
        order, index = root.reduced
        if order == 1:
            return self.one()
        if order == 2:
            return -self.one()
        if self.order % order:
            raise EmbeddingError(
                f"root of order {order} is not available in Z_{self.prime}[zeta_{self.order}]"
            )
        return self._element(monomial(index * (self.order // order), self.order))

    def is_zero(self, value: CycloPadic) -> bool:
        return value.is_zero()

    def power(self, base: CycloPadic, exponent: Exponent) -> CycloPadic:
        if isinstance(exponent, Fraction) and exponent.denominator == 1:
            exponent = int(exponent)
        if isinstance(exponent, int):
            return base**exponent
        if not base.is_constant() or (base - 1).valuation() < 1:
            raise DomainError("p-adic non-integer powers need a base congruent to 1 mod p")
        return base ** base.to_padic_int().exponent_residue(exponent)

    def exact_quotient(self, numerator: CycloPadic, denominator: CycloPadic) -> CycloPadic:
        denominator = self.coerce(denominator)
        if not denominator.is_constant():
            return self.divide(numerator, denominator)
        if denominator.is_zero():
            raise PoleError("exact quotient by zero")
        shift = denominator.valuation()
        unit = denominator.coeffs[0] // self.prime**shift
        quotient = self.coerce(numerator).exact_divide_by_prime_power(shift)
        return quotient * PadicInt(self.prime, quotient.precision, unit).inverse()


def padic_valuation(value: Any, prime: int) -> float:
    """p-adic valuation of an int, Fraction, PadicInt or CycloPadic (exact zero is +inf)."""
    if isinstance(value, (PadicInt, CycloPadic)):
        return value.valuation()
    if isinstance(value, Fraction):
        if value == 0:
            return INFINITE_VALUATION
        return int(multiplicity(prime, value.numerator)) - int(multiplicity(prime, value.denominator))
    if isinstance(value, int):
        return INFINITE_VALUATION if value == 0 else int(multiplicity(prime, value))
    raise DomainError(f"no p-adic valuation for {type(value).__name__}")


class MeasureKind(Enum):
    MU_MINUS_1 = "mu_-1"
    MU_MINUS_Q = "mu_-q"


@dataclass(frozen=True)
class FermionicMeasure:
    """μ_{-1} or μ_{-q} on X_d = lim ℤ/d p^N ℤ (stride d = 1 is ℤ_p)."""

    prime: int
    kind: MeasureKind = MeasureKind.MU_MINUS_1
    q: Optional[QParam] = None
    stride: int = 1

    def __post_init__(self) -> None:
        if self.prime < 3 or self.prime % 2 == 0:
            raise DomainError(f"the fermionic measure needs an odd prime, got {self.prime}")
        if self.stride < 1 or self.stride % 2 == 0 or math.gcd(self.stride, self.prime) != 1:
            raise DomainError(f"stride must be odd, positive and prime to p, got {self.stride}")
        if self.kind is MeasureKind.MU_MINUS_Q:
            if self.q is None or not self.q.is_padic:
                raise DomainError("mu_-q needs a p-adic q")
            if self.q.value.prime != self.prime:
                raise DomainError("q and the measure live over different primes")

    @classmethod
    def minus_one(cls, prime: int, stride: int = 1) -> "FermionicMeasure":
        return cls(prime, MeasureKind.MU_MINUS_1, None, stride)

    @classmethod
    def minus_q(cls, q: QParam, stride: int = 1) -> "FermionicMeasure":
        return cls(q.value.prime, MeasureKind.MU_MINUS_Q, q, stride)

    def domain_size(self, level: int) -> int:
        return self.stride * self.prime**level


@dataclass(frozen=True)
class FermionicIntegral:
    value: Any
    level: int


def level_sum(fn: Callable[[int], Any], measure: FermionicMeasure, level: int) -> Any:
    if level < 1:
        raise DomainError(f"level must be at least 1, got {level}")
    count = measure.domain_size(level)
    if measure.kind is MeasureKind.MU_MINUS_1:
        total: Any = 0
        for x in range(count):
            if x & 1:
                total = total - fn(x)
            else:
                total = total + fn(x)
        return total
    q = measure.q
    field = q.field()
    step = -q.embed(field)
    weight = field.one()
    total = field.zero()
    for x in range(count):
        total = total + field.coerce(fn(x)) * weight
        weight = weight * step
    normalizer = geometric_sum(step, count, field.one())
    if not normalizer.valuation() == 0:
        raise NonUnitError(f"normalizer [{count}]_(-q) is not a unit")
    return total / normalizer


def _check_budget(level: int, measure: FermionicMeasure, max_summands: int) -> None:
    if measure.domain_size(level) > max_summands:
        raise NonConvergenceError(
            f"level {level} needs {measure.domain_size(level)} summands, above the cap {max_summands}"
        )


def fermionic_integral(
    fn: Callable[[int], Any],
    measure: FermionicMeasure,
    target_valuation: int,
    config: Optional[EvalConfig] = None,
) -> FermionicIntegral:
    """Level sums refined until level N - 1 agrees with level N to ``target_valuation``.

    The result is the level N - 1 sum, so a constant integrand is reported at
    level 1. Rational sums (always the case under mu_-1 with integer or
    rational integrands) come back as a PadicInt.
    """
    config = config or EvalConfig()
    precision_floor = max(config.padic_precision, target_valuation)
    previous = None
    for level in range(1, config.padic_level_cap + 1):
        _check_budget(level, measure, config.padic_max_summands)
        current = level_sum(fn, measure, level)
        if isinstance(current, (int, Fraction)):
            current = PadicInt.of(current, measure.prime, precision_floor)
        precision = getattr(current, "precision", None)
        if precision is not None and precision < target_valuation:
            raise PrecisionError(f"precision {precision} is below the target valuation {target_valuation}")
        if previous is not None:
            agreement = padic_valuation(current - previous, measure.prime)
            logger.debug("level %d agrees with level %d to valuation %s", level, level - 1, agreement)
            if agreement >= target_valuation:
                return FermionicIntegral(previous, level - 1)
        previous = current
    raise NonConvergenceError(
        f"level sums did not stabilize to valuation {target_valuation} by level {config.padic_level_cap}"
    )


def _require_minus_one(measure: FermionicMeasure) -> None:
    if measure.kind is not MeasureKind.MU_MINUS_1:
        raise DomainError("the shift identity is stated for mu_-1")


def shift_defect(fn: Callable[[int], Any], measure: FermionicMeasure, n: int, level: int) -> Any:
    """S_N(f(·+n)) - [(-1)^n S_N(f) + 2 Σ_{l<n} (-1)^{n-1-l} f(l)]."""
    _require_minus_one(measure)
    if n < 1:
        raise DomainError(f"shift must be at least 1, got {n}")
    shifted = level_sum(lambda x: fn(x + n), measure, level)
    base = level_sum(fn, measure, level)
    correction: Any = 0
    for l in range(n):
        correction = correction + (-1) ** (n - 1 - l) * fn(l)
    return shifted - ((-1) ** n * base + 2 * correction)


def shift_boundary(fn: Callable[[int], Any], measure: FermionicMeasure, n: int, level: int) -> Any:
    """The exact value of ``shift_defect``: Σ_{l<n} (-1)^{n-1-l} (f(l + d p^N) - f(l))."""
    _require_minus_one(measure)
    m = measure.domain_size(level)
    boundary: Any = 0
    for l in range(n):
        boundary = boundary + (-1) ** (n - 1 - l) * (fn(l + m) - fn(l))
    return boundary


@lru_cache(maxsize=512)
def _moment_table(
    prime: int,
    precision: int,
    q_residue: int,
    h: int,
    x_residue: int,
    signs: Optional[Tuple[int, ...]],
    stride: int,
    twist_order: int,
    level: int,
    degree: int,
) -> Tuple[Tuple[int, ...], ...]:
    """Level sums of χ(y)(-1)^y q^{hy} ⌈x+y⌉_q^k grouped by y mod twist_order, for k ≤ degree."""
    modulus = prime**precision
    count = stride * prime**level
    logger.debug("moment table p=%d level=%d: %d summands", prime, level, count)
    acc = [[0] * twist_order for _ in range(degree + 1)]
    q = q_residue % modulus
    q_h = pow(q, h, modulus)
    weight = 1
    bracket = geometric_sum(PadicInt(prime, precision, q), x_residue, PadicInt(prime, precision, 1)).residue
    q_shift = pow(q, x_residue, modulus)
    for y in range(count):
        c = weight if signs is None else weight * signs[y % stride]
        if c:
            b = y % twist_order
            value = c
            for k in range(degree + 1):
                acc[k][b] += value
                value = value * bracket % modulus
        bracket = (bracket + q_shift) % modulus
        q_shift = q_shift * q % modulus
        weight = -weight * q_h % modulus
    step = PadicInt(prime, precision, -q)
    normalizer = geometric_sum(step, count, PadicInt(prime, precision, 1))
    scale = normalizer.inverse().residue
    return tuple(tuple(v * scale % modulus for v in row) for row in acc)


@dataclass(frozen=True)
class MomentSeries:
    """Stabilized moments of degrees 0..len(values)-1 and the level that achieved them."""

    values: Tuple[CycloPadic, ...]
    level: int


def _twist_exponent(field: PadicField, w: RootOfUnity) -> int:
    field.root_of_unity(w)
    order, index = w.reduced
    if order <= 1:
        return 0
    if order == 2:
        raise EmbeddingError("w = -1 is not a p-power root of unity")
    return index * (field.order // order)


def _combine(row: Sequence[int], field: PadicField, exponent: int) -> CycloPadic:
    coeffs = [0] * field.order
    for b, value in enumerate(row):
        if value:
            coeffs[(b * exponent) % field.order] += value
    return CycloPadic(field.prime, field.precision, field.order, coeffs)


def _character_signs(chi: Any) -> Tuple[Optional[Tuple[int, ...]], int]:
    if chi is None:
        return None, 1
    return chi.real_values(), chi.modulus


def _stabilized_moments(
    *,
    n_max: int,
    prime: int,
    precision: int,
    q_residue: int,
    h: int,
    x_residue: int,
    chi: Any,
    w: RootOfUnity,
    target_valuation: int,
    config: EvalConfig,
) -> MomentSeries:
    if n_max < 0:
        raise DomainError(f"degree must be non-negative, got {n_max}")
    if target_valuation > precision:
        raise PrecisionError(f"target valuation {target_valuation} exceeds precision {precision}")
    signs, stride = _character_signs(chi)
    if stride % prime == 0:
        raise DomainError(f"character modulus {stride} must be prime to p={prime}")
    order = 1
    reduced_order = w.exact_order
    if reduced_order > 2:
        order = reduced_order
    field = PadicField(prime, precision, order)
    exponent = _twist_exponent(field, w)
    measure = FermionicMeasure.minus_one(prime, stride)
    previous: Optional[List[CycloPadic]] = None
    for level in range(1, config.padic_level_cap + 1):
        _check_budget(level, measure, config.padic_max_summands)
        table = _moment_table(prime, precision, q_residue, h, x_residue, signs, stride, field.order, level, n_max)
        current = [_combine(row, field, exponent) for row in table]
        if previous is not None:
            agreement = min((c - p).valuation() for c, p in zip(current, previous))
            logger.debug("moments at level %d agree to valuation %d", level, agreement)
            if agreement >= target_valuation:
                return MomentSeries(tuple(current), level)
        previous = current
    raise NonConvergenceError(
        f"moments did not stabilize to valuation {target_valuation} by level {config.padic_level_cap}"
    )


def _integral_h(h: Any) -> int:
    if isinstance(h, Fraction) and h.denominator == 1:
        return int(h)
    if isinstance(h, int):
        return h
    raise DomainError(f"p-adic mode needs an integer h, got {h!r}")


def twisted_moment(
    n: int,
    w: RootOfUnity,
    chi: Any,
    measure: FermionicMeasure,
    target_valuation: int,
    precision: Optional[int] = None,
    config: Optional[EvalConfig] = None,
) -> CycloPadic:
    """∫_X x^n w^x χ(x) dμ_{-1}(x) with X = X_f, f the modulus of χ."""
    config = config or EvalConfig()
    if measure.kind is not MeasureKind.MU_MINUS_1:
        raise DomainError("twisted moments integrate against mu_-1")
    modulus = 1 if chi is None else chi.modulus
    if measure.stride != modulus:
        raise DomainError(f"measure stride {measure.stride} must equal the character modulus {modulus}")
    series = _stabilized_moments(
        n_max=n,
        prime=measure.prime,
        precision=precision or config.padic_precision,
        q_residue=1,
        h=0,
        x_residue=0,
        chi=chi,
        w=w,
        target_valuation=target_valuation,
        config=config,
    )
    return series.values[n]


def twisted_q_moments(
    n_max: int,
    x: Union[int, Fraction],
    h: int,
    q: QParam,
    w: RootOfUnity,
    target_valuation: int,
    config: Optional[EvalConfig] = None,
) -> MomentSeries:
    """∫_{ℤ_p} q^{(h-1)y} w^y ⌈x+y⌉_q^n dμ_{-q}(y) for n = 0..n_max."""
    if not q.is_padic:
        raise DomainError("twisted q-moments need a p-adic q")
    value: PadicInt = q.value
    return _stabilized_moments(
        n_max=n_max,
        prime=value.prime,
        precision=value.precision,
        q_residue=value.residue,
        h=_integral_h(h),
        x_residue=value.exponent_residue(x),
        chi=None,
        w=w,
        target_valuation=target_valuation,
        config=config or EvalConfig(),
    )


def twisted_q_moment(
    n: int,
    x: Union[int, Fraction],
    h: int,
    q: QParam,
    w: RootOfUnity,
    target_valuation: int,
    config: Optional[EvalConfig] = None,
) -> CycloPadic:
    return twisted_q_moments(n, x, h, q, w, target_valuation, config).values[n]


def generalized_twisted_q_moments(
    n_max: int,
    chi: Any,
    h: int,
    q: QParam,
    w: RootOfUnity,
    target_valuation: int,
    config: Optional[EvalConfig] = None,
) -> MomentSeries:
    """∫_X χ(x) q^{(h-1)x} w^x ⌈x⌉_q^n dμ_{-q}(x) with X = X_f, for n = 0..n_max."""
    if not q.is_padic:
        raise DomainError("generalized q-moments need a p-adic q")
    value: PadicInt = q.value
    return _stabilized_moments(
        n_max=n_max,
        prime=value.prime,
        precision=value.precision,
        q_residue=value.residue,
        h=_integral_h(h),
        x_residue=0,
        chi=chi,
        w=w,
        target_valuation=target_valuation,
        config=config or EvalConfig(),
    )


def generalized_twisted_q_moment(
    n: int,
    chi: Any,
    h: int,
    q: QParam,
    w: RootOfUnity,
    target_valuation: int,
    config: Optional[EvalConfig] = None,
) -> CycloPadic:
    return generalized_twisted_q_moments(n, chi, h, q, w, target_valuation, config).values[n]
