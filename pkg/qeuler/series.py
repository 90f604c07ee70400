"""Alternating q-series with periodic weights and tail regularization.

Every series in the package has the shape

    Σ_{k ≥ start} c_{k mod f} · r^k · ⌈shift + k⌉_q^e

with r = -w q^h. As k grows ⌈shift + k⌉_q^e tends to L = (1 - q)^{-e}, so the
summands are rewritten as c r^k (⌈shift + k⌉_q^e - L) plus the closed
geometric tail L · Σ c_{k mod f} r^k. The rewritten terms decay like (|r||q|)^k
for every exponent e, which continues the series analytically in e.
"""
from __future__ import annotations

import cmath
import logging
import sys
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DomainError, PoleError, TruncationError

logger = logging.getLogger(__name__)

MIN_TERMS = 16
SAFETY = 0.1
EPSILON = sys.float_info.epsilon


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms: int
    error_bound: float


def _power(base: complex, exponent: Union[int, complex]) -> complex:
    if isinstance(exponent, int):
        return base**exponent
    return cmath.exp(exponent * cmath.log(base))


def alternating_q_series(
    *,
    exponent: Union[int, complex],
    q: complex,
    ratio: complex,
    shift: Union[float, complex] = 0.0,
    weights: Sequence[complex] = (1.0,),
    start: int = 0,
    tol: float = 1e-10,
    max_terms: int = 1_000_000,
    pole_tol: float = 1e-8,
    regularize: bool = True,
    scale: float = 1.0,
) -> SeriesResult:
    """Sum Σ_{k≥start} weights[k mod f] · ratio^k · ⌈shift+k⌉_q^exponent.

    ``tol`` is relative to max(scale, |sum|). A regularized sum also stops once
    |q^k| drops below machine epsilon: from there on its terms are rounding
    noise of size |L| eps. With ``regularize=False`` the raw terms are summed,
    which needs |ratio| < 1.
    """
    q = complex(q)
    ratio = complex(ratio)
    period = len(weights)
    if period < 1:
        raise DomainError("at least one weight is required")
    if not 0 < abs(q) < 1:
        raise DomainError(f"series evaluation needs 0 < |q| < 1, got {q}")
    exponent_value = exponent if isinstance(exponent, int) else complex(exponent)

    if regularize:
        limit = _power(1 - q, -exponent_value)
        contraction = abs(ratio) * abs(q)
        cycle = ratio**period
        if abs(1 - cycle) < pole_tol:
            raise PoleError(f"1 - r^{period} vanishes for r = {ratio}")
        head = sum(weights[a % period] * ratio**a for a in range(start, start + period))
        tail = limit * head / (1 - cycle)
    else:
        limit = 0j
        contraction = abs(ratio)
        tail = 0j
    if contraction >= 1:
        raise DomainError(f"series terms do not decay (contraction {contraction:.6g})")

    one_minus_q = 1 - q
    q_power = _power(q, shift + start) if shift + start != 0 else 1 + 0j
    r_power = ratio**start
    total = 0j
    window = [0.0] * period
    bound = float("inf")
    for count in range(1, max_terms + 1):
        k = start + count - 1
        bracket = (1 - q_power) / one_minus_q
        c = weights[k % period]
        if c:
            term = c * r_power * (_power(bracket, exponent_value) - limit)
        else:
            term = 0j
        total += term
        window[k % period] = abs(term)
        if count >= MIN_TERMS + period:
            bound = max(window) * contraction / (1 - contraction)
            if bound <= SAFETY * tol * max(scale, abs(total + tail)):
                logger.debug("series converged after %d terms (bound %.3g)", count, bound)
                return SeriesResult(total + tail, count, bound)
            if regularize and abs(q_power) < EPSILON:
                logger.debug("series reached the rounding floor after %d terms (bound %.3g)", count, bound)
                return SeriesResult(total + tail, count, bound)
        q_power *= q
        r_power *= ratio
    raise TruncationError(f"series did not reach tolerance {tol} within {max_terms} terms (bound {bound:.3g})")
