"""Twisted q-Euler numbers and polynomials.

Three families live here:

* E_n(x) = E^{(h,1)}_{n,w,q}(x), by its closed form
  ⌈2⌉_q (1-q)^{-n} Σ_j C(n,j) (-1)^j q^{xj} / (1 + q^{h+j} w)
  or by the series ⌈2⌉_q Σ_{k≥0} (-1)^k w^k q^{hk} ⌈x+k⌉_q^n;
* the classical twisted numbers E_{n,χ,w}, by exact recurrence;
* the generalized numbers E^{(h,1)}_{n,w,χ,q}, by decomposition over residues
  mod f or by the series ⌈2⌉_q Σ_{k≥1} χ(k) (-1)^k w^k q^{hk} ⌈k⌉_q^n.

Closed forms run in whichever carrier the parameters allow: cyclotomic
p-adics for a p-adic q, exact cyclotomic rationals for a rational q with
integral exponents, complex floats otherwise.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence, Tuple

from .characters import DirichletCharacter, evaluate as character_value
from .configuration import EvalConfig
from .errors import DomainError, PoleError, PrecisionError, QDivisionError
from .padic import padic_valuation
from .qcore import (
    ComplexField,
    ExactField,
    Exponent,
    QParam,
    RootOfUnity,
    Scalar,
    ScalarField,
    as_complex,
    binomial,
    normalize_exponent,
    q_number,
    two_q,
    working_field,
)
from .series import alternating_q_series

logger = logging.getLogger(__name__)

DOUBLE_EPSILON = 2.0**-52

CLOSED = "closed"
SERIES = "series"
PATHS = (CLOSED, SERIES)


def _integral(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class EulerParams:
    """Parameters of E^{(h,1)}_{n,w,q}(x); with ``chi`` set, of the generalized numbers."""

    n: int
    q: QParam
    h: Exponent = 1
    x: Exponent = 0
    w: RootOfUnity = RootOfUnity(1, 0)
    chi: Optional[DirichletCharacter] = None

    def __post_init__(self) -> None:
        if not _integral(self.n) or self.n < 0:
            raise DomainError(f"degree n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "h", normalize_exponent(self.h))
        object.__setattr__(self, "x", normalize_exponent(self.x))
        if self.chi is not None and self.x != 0:
            raise DomainError("generalized numbers are taken at x = 0")
        if self.q.is_padic:
            prime = self.q.value.prime
            if not _integral(self.h):
                raise DomainError(f"p-adic mode needs an integer h, got {self.h}")
            if not (_integral(self.x) or (isinstance(self.x, Fraction) and self.x.denominator % prime)):
                raise DomainError(f"x = {self.x} is not a {prime}-adic integer")


@dataclass(frozen=True)
class EulerValue:
    """A computed value, the path that produced it and an absolute error estimate."""

    value: Scalar
    path: str
    error_bound: float = 0.0
    terms: int = 0

    def complex(self) -> complex:
        return as_complex(self.value)


def comparison_scale(n: int, q: QParam) -> float:
    """|⌈2⌉_q| (1-|q|)^{-n}: the magnitude both evaluation paths lose digits against."""
    qc = q.complex_value()
    return abs(1 + qc) * (1 - abs(qc)) ** (-n)


def _carrier(
    q: QParam,
    exponents: Sequence[Exponent],
    roots: Sequence[RootOfUnity],
    value_order: int,
    pole_tol: float,
) -> Tuple[ScalarField, QParam]:
    """Pick the field for a closed-form evaluation and the q to use in it."""
    if q.is_padic:
        return working_field(q, *roots), q
    if q.is_exact and all(_integral(e) for e in exponents):
        order = math.lcm(value_order, *(root.exact_order for root in roots))
        return ExactField(order), q
    return ComplexField(pole_tol), q.as_complex()


def _closed_form(
    n: int,
    field: ScalarField,
    q: Scalar,
    qx: Scalar,
    h: Exponent,
    w: Scalar,
) -> Scalar:
    """⌈2⌉_q (1-q)^{-n} Σ_j C(n,j) (-1)^j qx^j / (1 + q^{h+j} w), with qx = q^x given."""
    one = field.one()
    q_h = field.power(q, h)
    total = field.zero()
    q_j = one
    qx_j = one
    for j in range(n + 1):
        denominator = one + q_h * q_j * w
        if field.is_zero(denominator):
            raise PoleError(f"1 + q^(h+{j}) w vanishes")
        term = field.divide(qx_j, denominator) * binomial(n, j)
        total = total - term if j & 1 else total + term
        q_j = q_j * q
        qx_j = qx_j * qx
    numerator = (one + q) * total
    if n == 0:
        return numerator
    one_minus_q = one - q
    if field.is_zero(one_minus_q):
        raise QDivisionError("q = 1 in the closed form")
    return field.exact_quotient(numerator, one_minus_q**n)


def _check_budget(params: EulerParams, target_valuation: Optional[int]) -> None:
    if target_valuation is None or not params.q.is_padic:
        return
    value = params.q.value
    loss = params.n * (1 - value).valuation()
    if value.precision < target_valuation + loss:
        raise PrecisionError(
            f"precision {value.precision} cannot deliver valuation {target_valuation} "
            f"after dividing by (1-q)^{params.n} (needs {target_valuation + loss})"
        )


def find_pole(params: EulerParams, pole_tol: float = 1e-8) -> Optional[int]:
    """First j ≤ n with 1 + Q^{h+j} W = 0 at the evaluation base, or None.

    The base is (q, w) for E^{(h,1)}_{n,w,q}(x) and (q^f, w^f) for the
    generalized numbers.
    """
    f = 1 if params.chi is None else params.chi.modulus
    if params.q.is_padic:
        return None
    q = params.q.complex_value() ** f
    w = params.w.power(f).to_complex()
    q_h = ComplexField(pole_tol).power(q, params.h)
    for j in range(params.n + 1):
        if abs(1 + q_h * q**j * w) < pole_tol:
            return j
    return None


def twisted_q_euler_poly(
    params: EulerParams,
    target_valuation: Optional[int] = None,
    config: Optional[EvalConfig] = None,
) -> Scalar:
    """E^{(h,1)}_{n,w,q}(x) by its closed form, in the natural carrier of ``params``."""
    config = config or EvalConfig()
    if params.chi is not None:
        return generalized_twisted_q_euler(
            params.n, params.chi, params.h, params.q, params.w, target_valuation, config
        )
    _check_budget(params, target_valuation)
    return _poly_value(params.n, params.h, params.x, params.q, params.w, config.pole_tol)


@lru_cache(maxsize=2048)
def _cached_poly(
    n: int, h: Exponent, x: Exponent, q_value: Any, exact: bool, w: RootOfUnity, pole_tol: float
) -> Scalar:
    q = QParam.exact(q_value, strict=False) if exact else QParam.complex(q_value, strict=False)
    return _compute_poly(n, h, x, q, w, pole_tol)


def _compute_poly(n: int, h: Exponent, x: Exponent, q: QParam, w: RootOfUnity, pole_tol: float) -> Scalar:
    field, q = _carrier(q, (h, x), (w,), 1, pole_tol)
    qv = q.embed(field)
    return _closed_form(n, field, qv, field.power(qv, x), h, field.root_of_unity(w))


def _poly_value(n: int, h: Exponent, x: Exponent, q: QParam, w: RootOfUnity, pole_tol: float) -> Scalar:
    if q.is_padic:
        return _compute_poly(n, h, x, q, w, pole_tol)
    # the regime flag keeps exact 1/2 and complex 0.5 apart in the cache
    return _cached_poly(n, h, x, q.value, q.is_exact, w, pole_tol)


def twisted_q_euler_series(
    params: EulerParams,
    tol: Optional[float] = None,
    config: Optional[EvalConfig] = None,
) -> EulerValue:
    """⌈2⌉_q Σ_{k≥0} (-1)^k w^k q^{hk} ⌈x+k⌉_q^n with the regularized tail."""
    config = config or EvalConfig()
    if params.chi is not None:
        return generalized_twisted_q_euler_series(
            params.n, params.chi, params.h, params.q, params.w, tol, config
        )
    if params.q.is_padic:
        raise DomainError("the series form needs a complex q")
    q = params.q.complex_value()
    field = ComplexField(config.pole_tol)
    ratio = -params.w.to_complex() * field.power(q, params.h)
    shift = params.x if isinstance(params.x, complex) else float(params.x)
    result = alternating_q_series(
        exponent=params.n,
        q=q,
        ratio=ratio,
        shift=shift,
        tol=tol or config.tol,
        max_terms=config.max_terms,
        pole_tol=config.pole_tol,
        scale=(1 - abs(q)) ** (-params.n),
    )
    factor = 1 + q
    return EulerValue(factor * result.value, SERIES, abs(factor) * result.error_bound, result.terms)


@lru_cache(maxsize=256)
def _classical_sequence(
    n_max: int,
    chi: DirichletCharacter,
    w: RootOfUnity,
    field: ScalarField,
    literal: bool,
) -> Tuple[Scalar, ...]:
    f = chi.modulus
    one = field.one()
    w_elem = field.root_of_unity(w)
    w_f = w_elem**f
    denominator = one + w_f
    if field.is_zero(denominator):
        raise PoleError(f"w^{f} = -1 makes the classical recurrence degenerate")
    weights = []
    for i in range(f):
        weight = character_value(chi, i, field) * w_elem**i
        if i & 1 and not literal:
            weight = -weight
        weights.append(weight)
    values = []
    for n in range(n_max + 1):
        head = field.zero()
        for i, weight in enumerate(weights):
            head = head + weight * (i**n)
        correction = field.zero()
        for k in range(n):
            correction = correction + values[k] * (binomial(n, k) * f ** (n - k))
        values.append(field.divide(2 * head - w_f * correction, denominator))
    return tuple(values)


def classical_twisted_euler(
    n: int,
    chi: Optional[DirichletCharacter] = None,
    w: Optional[RootOfUnity] = None,
    field: Optional[ScalarField] = None,
    literal: bool = False,
) -> Scalar:
    """E_{n,χ,w}, the n-th moment of χ(x) w^x against μ_{-1} on X_f.

    Solved from (1 + w^f) E_n = 2 Σ_i (-1)^i χ(i) w^i i^n - w^f Σ_{k<n} C(n,k) f^{n-k} E_k.
    ``literal=True`` drops the (-1)^i; both agree when f = 1. The default field
    is exact: ℚ(ζ_m) with m covering the values of χ and w.
    """
    if not _integral(n) or n < 0:
        raise DomainError(f"degree n must be a non-negative integer, got {n!r}")
    chi = chi or DirichletCharacter.trivial()
    w = w or RootOfUnity.one()
    if field is None:
        field = ExactField(math.lcm(chi.value_order, w.exact_order))
    return _classical_sequence(n, chi, w, field, literal)[n]


def classical_euler_polynomial(n: int, x: Any = 0) -> Fraction:
    """E_n(x) from 2 e^{xt}/(e^t + 1), as Σ_k C(n,k) E_k(0) x^{n-k}."""
    x = Fraction(x)
    numbers = _classical_sequence(n, DirichletCharacter.trivial(), RootOfUnity.one(), ExactField(1), False)
    return sum(
        (binomial(n, k) * numbers[k].to_fraction() * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def generalized_twisted_q_euler(
    n: int,
    chi: DirichletCharacter,
    h: Exponent,
    q: QParam,
    w: RootOfUnity,
    target_valuation: Optional[int] = None,
    config: Optional[EvalConfig] = None,
) -> Scalar:
    """E^{(h,1)}_{n,w,χ,q} by decomposition over residues a mod f:

    ⌈f⌉_q^n (⌈2⌉_q/⌈2⌉_{q^f}) Σ_a q^{ha} w^a χ(a) (-1)^a E^{(h,1)}_{n,w^f,q^f}(a/f).
    """
    config = config or EvalConfig()
    params = EulerParams(n, q, h, 0, w, chi)
    _check_budget(params, target_valuation)
    f = chi.modulus
    h = params.h
    field, q = _carrier(q, (h,), (w,), chi.value_order, config.pole_tol)
    qv = q.embed(field)
    big_q = qv**f
    w_elem = field.root_of_unity(w)
    w_f = field.root_of_unity(w.power(f))
    q_h = field.power(qv, h)
    total = field.zero()
    q_a = field.one()
    weight = field.one()
    for a in range(f):
        chi_a = character_value(chi, a, field)
        if not field.is_zero(chi_a):
            inner = _closed_form(n, field, big_q, q_a, h, w_f)
            term = weight * chi_a * inner
            total = total - term if a & 1 else total + term
        q_a = q_a * qv
        weight = weight * q_h * w_elem
    scale = q_number(f, q, field) ** n * field.divide(two_q(q, field), field.one() + big_q)
    return scale * total


def generalized_twisted_q_euler_series(
    n: int,
    chi: DirichletCharacter,
    h: Exponent,
    q: QParam,
    w: RootOfUnity,
    tol: Optional[float] = None,
    config: Optional[EvalConfig] = None,
) -> EulerValue:
    """⌈2⌉_q Σ_{k≥1} χ(k) (-1)^k w^k q^{hk} ⌈k⌉_q^n."""
    config = config or EvalConfig()
    if q.is_padic:
        raise DomainError("the series form needs a complex q")
    qc = q.complex_value()
    field = ComplexField(config.pole_tol)
    ratio = -w.to_complex() * field.power(qc, normalize_exponent(h))
    result = alternating_q_series(
        exponent=n,
        q=qc,
        ratio=ratio,
        weights=chi.complex_values(),
        start=1,
        tol=tol or config.tol,
        max_terms=config.max_terms,
        pole_tol=config.pole_tol,
        scale=(1 - abs(qc)) ** (-n),
    )
    factor = 1 + qc
    return EulerValue(factor * result.value, SERIES, abs(factor) * result.error_bound, result.terms)


def distribution_check(
    n: int,
    x: Exponent,
    h: Exponent,
    q: QParam,
    w: RootOfUnity,
    d: int,
    strict: bool = False,
    config: Optional[EvalConfig] = None,
) -> Tuple[Scalar, Scalar]:
    """Both sides of the distribution relation for odd d.

    rhs = (⌈2⌉_q/⌈2⌉_{q^d}) ⌈d⌉_q^n Σ_{a<d} q^{ha} w^a (-1)^a E^{(h,1)}_{n,W,q^d}((x+a)/d)
    with W = w^d; ``strict=True`` uses W = 1 instead.
    """
    config = config or EvalConfig()
    if not _integral(d) or d < 1 or d % 2 == 0:
        raise DomainError(f"d must be an odd positive integer, got {d!r}")
    params = EulerParams(n, q, h, x, w)
    x, h = params.x, params.h
    if not isinstance(x, complex) and not 0 <= x < 1:
        raise DomainError(f"x must lie in [0, 1), got {x}")
    base_twist = RootOfUnity.one() if strict else w.power(d)
    lhs = twisted_q_euler_poly(params, config=config)
    field, q = _carrier(q, (h, x), (w, base_twist), 1, config.pole_tol)
    qv = q.embed(field)
    big_q = qv**d
    w_elem = field.root_of_unity(w)
    big_w = field.root_of_unity(base_twist)
    q_h = field.power(qv, h)
    q_shift = field.power(qv, x)
    total = field.zero()
    weight = field.one()
    for a in range(d):
        term = weight * _closed_form(n, field, big_q, q_shift, h, big_w)
        total = total - term if a & 1 else total + term
        q_shift = q_shift * qv
        weight = weight * q_h * w_elem
    scale = q_number(d, q, field) ** n * field.divide(two_q(q, field), field.one() + big_q)
    rhs = scale * total
    if isinstance(lhs, complex) or isinstance(rhs, complex):
        return as_complex(lhs), as_complex(rhs)
    return lhs, rhs


def evaluate(
    params: EulerParams,
    path: str = CLOSED,
    tol: Optional[float] = None,
    target_valuation: Optional[int] = None,
    config: Optional[EvalConfig] = None,
) -> EulerValue:
    """Evaluate ``params`` along ``path`` ("closed" or "series")."""
    config = config or EvalConfig()
    if path not in PATHS:
        raise DomainError(f"path must be one of {', '.join(PATHS)}, got {path!r}")
    if path == SERIES:
        value = twisted_q_euler_series(params, tol, config)
        logger.debug("series path used %d terms", value.terms)
        return value
    result = twisted_q_euler_poly(params, target_valuation, config)
    if params.q.is_padic or not isinstance(result, complex):
        return EulerValue(result, CLOSED, 0.0)
    bound = 4 * (params.n + 2) * DOUBLE_EPSILON * comparison_scale(params.n, params.q)
    return EulerValue(result, CLOSED, bound)


def padic_agreement(left: Any, right: Any, prime: int) -> float:
    """Valuation of the difference of two p-adic values."""
    return padic_valuation(left - right, prime)
