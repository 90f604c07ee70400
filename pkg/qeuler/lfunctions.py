"""Twisted q-Euler zeta, Hurwitz zeta and q-l-functions for real 0 < q < 1.

All three are alternating series in ⌈·⌉_q^{-s}; they are summed with the
regularized kernel of ``qeuler.series``, which continues them to every s.
At s = -n they return the twisted q-Euler numbers and polynomials.
"""
from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Union

from .characters import DirichletCharacter
from .configuration import EvalConfig
from .errors import DomainError, PoleError, VerificationError
from .euler import EulerParams, generalized_twisted_q_euler, twisted_q_euler_poly
from .qcore import ComplexField, Exponent, QParam, RootOfUnity, as_complex, normalize_exponent
from .series import SeriesResult, alternating_q_series

logger = logging.getLogger(__name__)

MAX_INTERPOLATION_DEGREE = 20
HURWITZ_TOL = 1e-11

DIRECT = "direct"
DECOMPOSED = "decomposed"
L_PATHS = (DIRECT, DECOMPOSED)


def _real_q(q: Union[QParam, float, Fraction]) -> QParam:
    if not isinstance(q, QParam):
        q = QParam.exact(q) if isinstance(q, (int, Fraction)) else QParam.complex(q)
    if q.is_padic:
        raise DomainError("zeta and l-functions are evaluated for real q")
    value = q.complex_value()
    if value.imag != 0 or not 0 < value.real < 1:
        raise DomainError(f"q must be real with 0 < q < 1, got {value}")
    return q


@dataclass(frozen=True)
class ZetaParams:
    """Point and parameters of ζ^{(h,1)}_{E,q,w}(s, x) or of l^{(h,1)}_{q,w}(s, χ).

    ``x = None`` selects the one-variable zeta Σ_{k≥1}; ``chi`` selects the l-function.
    """

    s: complex
    q: QParam
    h: Exponent = 1
    x: Optional[Exponent] = None
    w: RootOfUnity = RootOfUnity(1, 0)
    chi: Optional[DirichletCharacter] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "q", _real_q(self.q))
        object.__setattr__(self, "h", normalize_exponent(self.h))
        if complex(self.h).real < 0:
            raise DomainError(f"Re(h) must be non-negative, got {self.h}")
        if self.x is not None:
            x = normalize_exponent(self.x)
            if isinstance(x, complex) or not 0 < x <= 1:
                raise DomainError(f"x must be real with 0 < x <= 1, got {self.x}")
            object.__setattr__(self, "x", x)
        if self.x is not None and self.chi is not None:
            raise DomainError("the l-function takes no Hurwitz shift")

    @property
    def q_value(self) -> float:
        return self.q.complex_value().real

    def ratio(self) -> complex:
        """r = -w q^h, the ratio of consecutive signed twist weights."""
        return -self.w.to_complex() * ComplexField().power(complex(self.q_value), self.h)

    def exponent(self) -> Union[int, complex]:
        """-s, as an int when s is a real integer."""
        minus_s = -self.s
        if minus_s.imag == 0 and float(minus_s.real).is_integer():
            return int(minus_s.real)
        return minus_s

    def replace(self, **changes: Any) -> "ZetaParams":
        fields = dict(s=self.s, q=self.q, h=self.h, x=self.x, w=self.w, chi=self.chi)
        fields.update(changes)
        return ZetaParams(**fields)


def _check_regular(params: ZetaParams, config: EvalConfig) -> None:
    if abs(1 - params.ratio()) < config.pole_tol:
        raise PoleError(f"w q^h = -1 (within {config.pole_tol}) is a pole")


def _sum(
    params: ZetaParams,
    *,
    shift: float,
    start: int,
    tol: Optional[float],
    config: EvalConfig,
    weights=(1.0,),
    regularize: bool = True,
) -> SeriesResult:
    _check_regular(params, config)
    result = alternating_q_series(
        exponent=params.exponent(),
        q=complex(params.q_value),
        ratio=params.ratio(),
        shift=shift,
        weights=weights,
        start=start,
        tol=tol or config.tol,
        max_terms=config.max_terms,
        pole_tol=config.pole_tol,
        regularize=regularize,
        # |L| = |(1 - q)^s|, the size the summands settle at
        scale=max(1.0, (1 - params.q_value) ** params.s.real),
    )
    logger.debug("s=%s: %d terms", params.s, result.terms)
    return result


def hurwitz_zeta(params: ZetaParams, tol: Optional[float] = None, config: Optional[EvalConfig] = None) -> complex:
    """ζ(s, x) = ⌈2⌉_q Σ_{k≥0} (-1)^k w^k q^{hk} ⌈x+k⌉_q^{-s}, continued by tail regularization."""
    config = config or EvalConfig()
    if params.x is None:
        raise DomainError("the Hurwitz zeta needs x")
    if tol is None:
        tol = min(config.tol, HURWITZ_TOL)
    result = _sum(params, shift=float(params.x), start=0, tol=tol, config=config)
    return (1 + params.q_value) * result.value


def hurwitz_zeta_raw(params: ZetaParams, tol: Optional[float] = None, config: Optional[EvalConfig] = None) -> complex:
    """The same series summed term by term; converges only for Re(h) > 0."""
    config = config or EvalConfig()
    if params.x is None:
        raise DomainError("the Hurwitz zeta needs x")
    if not complex(params.h).real > 0:
        raise DomainError("the unregularized series needs Re(h) > 0")
    result = _sum(params, shift=float(params.x), start=0, tol=tol, config=config, regularize=False)
    return (1 + params.q_value) * result.value


def zeta(params: ZetaParams, tol: Optional[float] = None, config: Optional[EvalConfig] = None) -> complex:
    """ζ(s) = ⌈2⌉_q Σ_{k≥1} (-1)^k w^k q^{hk} ⌈k⌉_q^{-s}."""
    config = config or EvalConfig()
    result = _sum(params, shift=0.0, start=1, tol=tol, config=config)
    return (1 + params.q_value) * result.value


def _l_direct(params: ZetaParams, tol: Optional[float], config: EvalConfig) -> complex:
    result = _sum(params, shift=0.0, start=1, tol=tol, config=config, weights=params.chi.complex_values())
    return (1 + params.q_value) * result.value


def _l_decomposed(params: ZetaParams, tol: Optional[float], config: EvalConfig) -> complex:
    chi = params.chi
    f = chi.modulus
    q = params.q_value
    big_q = Fraction(params.q.value) ** f if params.q.is_exact else q**f
    base = params.replace(q=QParam.exact(big_q) if params.q.is_exact else QParam.complex(big_q), w=params.w.power(f))
    r = params.ratio()
    total = 0j
    for a in range(1, f + 1):
        value = chi.value(a)
        if value is None:
            continue
        shifted = base.replace(x=Fraction(a, f), chi=None)
        total += value.to_complex() * r**a * hurwitz_zeta(shifted, tol, config)
    bracket_f = (1 - q**f) / (1 - q)
    scale = cmath.exp(-params.s * cmath.log(bracket_f)) * (1 + q) / (1 + base.q_value)
    return scale * total


def l_function_paths(
    params: ZetaParams, tol: Optional[float] = None, config: Optional[EvalConfig] = None
) -> "LPaths":
    config = config or EvalConfig()
    _require_character(params)
    return LPaths(_l_direct(params, tol, config), _l_decomposed(params, tol, config))


@dataclass(frozen=True)
class LPaths:
    direct: complex
    decomposed: complex

    @property
    def difference(self) -> float:
        return abs(self.direct - self.decomposed)


def _require_character(params: ZetaParams) -> None:
    if params.chi is None:
        raise DomainError("the l-function needs a character")


def l_function(
    params: ZetaParams,
    tol: Optional[float] = None,
    path: str = DECOMPOSED,
    config: Optional[EvalConfig] = None,
    cross_check: Optional[bool] = None,
) -> complex:
    """l(s, χ) = ⌈2⌉_q Σ_{k≥1} χ(k) (-1)^k w^k q^{hk} ⌈k⌉_q^{-s}.

    ``path="decomposed"`` sums f Hurwitz zetas at base (q^f, w^f);
    ``path="direct"`` sums the series itself. With cross-checking on, both are
    computed and a disagreement beyond 10·tol raises VerificationError.
    """
    config = config or EvalConfig()
    _require_character(params)
    if path not in L_PATHS:
        raise DomainError(f"path must be one of {', '.join(L_PATHS)}, got {path!r}")
    if cross_check is None:
        cross_check = config.cross_check
    if not cross_check:
        return _l_direct(params, tol, config) if path == DIRECT else _l_decomposed(params, tol, config)
    paths = l_function_paths(params, tol, config)
    value = paths.direct if path == DIRECT else paths.decomposed
    limit = 10 * (tol or config.tol) * max(1.0, abs(value))
    if paths.difference > limit:
        raise VerificationError(
            f"l-function paths disagree at s={params.s}: |direct - decomposed| = {paths.difference:.3g}"
        )
    return value


@dataclass(frozen=True)
class InterpolationRow:
    n: int
    zeta_value: complex
    euler_value: complex

    @property
    def difference(self) -> float:
        return abs(self.zeta_value - self.euler_value)


def interpolate_at_negatives(
    n_max: int,
    params: ZetaParams,
    tol: Optional[float] = None,
    config: Optional[EvalConfig] = None,
) -> List[InterpolationRow]:
    """Rows (n, value at s = -n, Euler value, difference) for n = 0..n_max.

    The Euler side is E^{(h,1)}_{n,w,q}(x) for the Hurwitz zeta,
    E^{(h,1)}_{n,w,χ,q} for the l-function, and E^{(h,1)}_{n,w,q}(0) less its
    k = 0 summand for the one-variable zeta.
    """
    config = config or EvalConfig()
    if not 0 <= n_max <= MAX_INTERPOLATION_DEGREE:
        raise DomainError(f"n_max must lie in [0, {MAX_INTERPOLATION_DEGREE}], got {n_max}")
    rows = []
    for n in range(n_max + 1):
        point = params.replace(s=complex(-n))
        if params.chi is not None:
            left = l_function(point, tol, config=config, cross_check=False)
            right = generalized_twisted_q_euler(n, params.chi, params.h, params.q, params.w, config=config)
        elif params.x is None:
            left = zeta(point, tol, config)
            right = twisted_q_euler_poly(EulerParams(n, params.q, params.h, 0, params.w), config=config)
            if n == 0:
                right = as_complex(right) - (1 + params.q_value)
        else:
            left = hurwitz_zeta(point, tol, config)
            right = twisted_q_euler_poly(EulerParams(n, params.q, params.h, params.x, params.w), config=config)
        rows.append(InterpolationRow(n, complex(left), as_complex(right)))
    return rows
