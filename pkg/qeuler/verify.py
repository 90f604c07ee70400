"""Identity checks run by ``qeuler verify``.

Each check evaluates one identity over a parameter grid and reports the
largest error it saw. Complex comparisons are scaled by
|⌈2⌉_q| (1-|q|)^{-n}; p-adic ones report the valuation of the difference.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, TypeVar

from .characters import DirichletCharacter, enumerate_characters
from .configuration import EvalConfig
from .cyclotomic import cyclotomic_coefficients
from .errors import DomainError, PoleError, QEulerError
from .euler import (
    EulerParams,
    classical_euler_polynomial,
    classical_twisted_euler,
    comparison_scale,
    distribution_check,
    find_pole,
    generalized_twisted_q_euler,
    generalized_twisted_q_euler_series,
    twisted_q_euler_poly,
    twisted_q_euler_series,
)
from .lfunctions import (
    ZetaParams,
    hurwitz_zeta,
    hurwitz_zeta_raw,
    interpolate_at_negatives,
    l_function,
    l_function_paths,
    zeta,
)
from .padic import (
    CycloPadic,
    FermionicMeasure,
    PadicField,
    PadicInt,
    level_sum,
    shift_boundary,
    shift_defect,
    twisted_moment,
    twisted_q_moments,
    generalized_twisted_q_moment,
)
from .qcore import (
    ExactField,
    QParam,
    RootOfUnity,
    as_complex,
    q_number,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

SUITE_NAMES = ("qcore", "characters", "padic", "euler", "lfunctions")
GRID_NAMES = ("small", "full")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """map() that may fan out to threads; results keep input order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Grid:
    name: str
    degrees: Tuple[int, ...]
    hs: Tuple[int, ...]
    qs: Tuple[str, ...]
    twists: Tuple[RootOfUnity, ...]
    xs: Tuple[Fraction, ...]
    distribution_ds: Tuple[int, ...]
    limit_degrees: Tuple[int, ...]
    character_moduli: Tuple[int, ...]
    multiplicativity_max: int
    primes: Tuple[int, ...]
    moment_degrees: Tuple[int, ...]
    moment_target: int
    shift_polynomials: int
    shift_max_level: int
    convergence_levels: Dict[int, int]
    oracle_primes: Tuple[int, ...]
    oracle_degree: int
    oracle_target: int
    l_degrees: int
    s_points: int
    raw_points: int


def _twists(max_order: int) -> Tuple[RootOfUnity, ...]:
    return tuple(
        RootOfUnity(m, k) for m in range(1, max_order + 1) for k in range(m) if math.gcd(m, k) == 1
    )


SMALL = Grid(
    name="small",
    degrees=tuple(range(5)),
    hs=(0, 1),
    qs=("0.5",),
    twists=(RootOfUnity(1, 0), RootOfUnity(2, 1), RootOfUnity(4, 1)),
    xs=(Fraction(0), Fraction(1, 3)),
    distribution_ds=(1, 3),
    limit_degrees=tuple(range(4)),
    character_moduli=(1, 3, 5, 9, 15),
    multiplicativity_max=15,
    primes=(3, 5),
    moment_degrees=tuple(range(4)),
    moment_target=4,
    shift_polynomials=10,
    shift_max_level=3,
    convergence_levels={3: 5, 5: 3},
    oracle_primes=(3,),
    oracle_degree=2,
    oracle_target=5,
    l_degrees=3,
    s_points=4,
    raw_points=6,
)

FULL = Grid(
    name="full",
    degrees=tuple(range(9)),
    hs=(0, 1, 2, 3),
    qs=("0.3", "0.5", "0.8"),
    twists=_twists(4),
    xs=(Fraction(0), Fraction(1, 3), Fraction(1, 2)),
    distribution_ds=(1, 3, 5),
    limit_degrees=tuple(range(7)),
    character_moduli=tuple(range(1, 46, 2)),
    multiplicativity_max=45,
    primes=(3, 5),
    moment_degrees=tuple(range(7)),
    moment_target=6,
    shift_polynomials=50,
    shift_max_level=6,
    convergence_levels={3: 8, 5: 6, 7: 5},
    oracle_primes=(3, 5),
    oracle_degree=4,
    oracle_target=8,
    l_degrees=5,
    s_points=20,
    raw_points=30,
)

GRIDS = {"small": SMALL, "full": FULL}


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    max_error: float = 0.0
    cases: int = 0
    detail: str = ""
    seconds: float = 0.0

    def to_record(self) -> Dict[str, object]:
        return {
            "suite": self.suite,
            "check": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "cases": self.cases,
            "detail": self.detail,
        }


@dataclass
class _Tally:
    """Accumulates errors of one check against a threshold."""

    threshold: float
    max_error: float = 0.0
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    def add(self, error: float, label: str = "") -> None:
        self.cases += 1
        if math.isnan(error) or error > self.threshold:
            self.failures.append(f"{label}: {error:.3g}")
        if not math.isnan(error):
            self.max_error = max(self.max_error, error)

    def require(self, condition: bool, label: str) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(label)

    def result(self, suite: str, name: str) -> CheckResult:
        detail = "; ".join(self.failures[:5])
        return CheckResult(suite, name, not self.failures, self.max_error, self.cases, detail)


CheckFn = Callable[[Grid, EvalConfig], _Tally]
REGISTRY: Dict[str, List[Tuple[str, CheckFn]]] = {name: [] for name in SUITE_NAMES}


def check(suite: str, name: str) -> Callable[[CheckFn], CheckFn]:
    def register(fn: CheckFn) -> CheckFn:
        REGISTRY[suite].append((name, fn))
        return fn

    return register


def _q(text: str) -> QParam:
    return QParam.exact(Fraction(text))


def _scaled(a: object, b: object, n: int, q: QParam) -> float:
    return abs(as_complex(a) - as_complex(b)) / comparison_scale(n, q)


# qcore


@check("qcore", "q-number equals its geometric sum")
def _check_geometric(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-13)
    for q in (QParam.complex(0.5 + 0.25j), QParam.complex(0.9)):
        for x in range(25):
            explicit = sum(q.value**i for i in range(x))
            value = q_number(x, q)
            tally.add(abs(value - explicit) / max(1.0, abs(explicit)), f"q={q}, x={x}")
    for p in grid.primes:
        q = QParam.padic(1 + p, p, 10)
        for x in range(25):
            explicit = sum((q.value**i for i in range(x)), PadicInt(p, 10, 0))
            tally.require(q_number(x, q) == explicit, f"p={p}, x={x}")
    return tally


@check("qcore", "cocycle identity")
def _check_cocycle(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-13)
    q = QParam.complex(0.7 - 0.2j)
    exact = _q("2/3")
    for x, y in itertools.product(range(8), repeat=2):
        lhs = q_number(x + y, q)
        rhs = q_number(x, q) + q.value**x * q_number(y, q)
        tally.add(abs(lhs - rhs) / max(1.0, abs(lhs)), f"x={x}, y={y}")
        exact_rhs = q_number(x, exact) + exact.value**x * q_number(y, exact)
        tally.require(q_number(x + y, exact) == exact_rhs, f"exact x={x}, y={y}")
    return tally


@check("qcore", "q-number tends to x as q -> 1")
def _check_limit(grid: Grid, config: EvalConfig) -> _Tally:
    epsilon = 1e-8
    tally = _Tally(0.0)
    q = QParam.complex(1 - epsilon)
    for x in range(1, 101):
        gap = abs(q_number(x, q) - x) - epsilon * x * x
        tally.add(max(gap, 0.0), f"x={x}")
    return tally


@check("qcore", "root of unity embeddings")
def _check_roots(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-12)
    for m in range(1, 13):
        exact = ExactField(m)
        for k in range(m):
            w, inverse = RootOfUnity(m, k), RootOfUnity(m, (m - k) % m)
            z = w.to_complex()
            tally.add(abs(z**m - 1), f"complex {w}")
            tally.add(abs(z * inverse.to_complex() - 1), f"complex inverse {w}")
            tally.require(exact.root_of_unity(w) ** m == 1, f"exact {w}")
            tally.require(exact.root_of_unity(w) * exact.root_of_unity(inverse) == 1, f"exact inverse {w}")
    for p in grid.primes:
        padic = PadicField(p, 8, p * p)
        for k in range(p * p):
            w = RootOfUnity(p * p, k)
            tally.require(padic.root_of_unity(w) ** (p * p) == 1, f"p-adic {w}")
    return tally


# characters


@check("characters", "orthogonality")
def _check_orthogonality(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-12)
    for f in grid.character_moduli:
        characters = enumerate_characters(f)
        phi = sum(1 for a in range(f) if math.gcd(a, f) == 1)
        tally.require(len(characters) == phi, f"f={f}: {len(characters)} characters")
        for chi in characters:
            expected = phi if chi.is_trivial else 0
            tally.add(abs(sum(chi.complex_values()) - expected), f"chi={chi}")
            if chi.is_real:
                tally.require(sum(chi.real_values()) == expected, f"exact chi={chi}")
    return tally


@check("characters", "multiplicativity on units")
def _check_multiplicativity(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    for f in range(1, grid.multiplicativity_max + 1, 2):
        units = [a for a in range(f) if math.gcd(a, f) == 1]
        for chi in enumerate_characters(f):
            tally.require(chi.value(1) == RootOfUnity.one(), f"chi={chi} at 1")
            for a, b in itertools.product(units, repeat=2):
                tally.require(_multiplies(chi, a, b), f"chi={chi}, a={a}, b={b}")
    return tally


def _multiplies(chi: DirichletCharacter, a: int, b: int) -> bool:
    left, right, product = chi.value(a), chi.value(b), chi.value(a * b)
    m = chi.value_order
    k = (left.index * (m // left.order) + right.index * (m // right.order)) % m
    return product == RootOfUnity(m, k)


# padic


def _random_polynomial(rng: random.Random, degree: int) -> Callable[[int], int]:
    coefficients = [rng.randint(-50, 50) for _ in range(degree + 1)]

    def fn(x: int) -> int:
        value = 0
        for c in reversed(coefficients):
            value = value * x + c
        return value

    return fn


@check("padic", "finite-level shift identity")
def _check_shift(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    rng = random.Random(20240611)
    for index in range(grid.shift_polynomials):
        p = rng.choice((3, 5, 7))
        level = rng.randint(1, grid.shift_max_level if p < 7 else min(grid.shift_max_level, 5))
        stride = rng.choice((1, 1, 11)) if level <= 3 else 1
        fn = _random_polynomial(rng, rng.randint(0, 6))
        measure = FermionicMeasure.minus_one(p, stride)
        lhs = level_sum(lambda x: fn(x + 1), measure, level) + level_sum(fn, measure, level)
        rhs = fn(0) + fn(measure.domain_size(level))
        tally.require(lhs == rhs, f"poly {index}: p={p}, N={level}, d={stride}")
        for n in (2, 3):
            defect = shift_defect(fn, measure, n, level)
            tally.require(defect == shift_boundary(fn, measure, n, level), f"poly {index}: shift {n}")
    return tally


@check("padic", "level sums agree mod p^N")
def _check_convergence(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    rng = random.Random(7)
    for p, top in grid.convergence_levels.items():
        fn = _random_polynomial(rng, 10)
        measure = FermionicMeasure.minus_one(p)
        sums = [level_sum(fn, measure, level) for level in range(1, top + 1)]
        for level, (current, following) in enumerate(zip(sums, sums[1:]), start=1):
            difference = following - current
            tally.require(difference % p**level == 0, f"p={p}, N={level}")
    return tally


@check("padic", "fermionic moments are the Euler numbers")
def _check_moments(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    target = grid.moment_target
    for p in grid.primes:
        measure = FermionicMeasure.minus_one(p)
        for n in grid.moment_degrees:
            moment = twisted_moment(n, RootOfUnity.one(), None, measure, target, config=config)
            expected = PadicInt.of(classical_euler_polynomial(n, 0), p, target)
            tally.require((moment - expected).valuation() >= target, f"p={p}, n={n}")
    chi = DirichletCharacter.parse("3;1")
    field = PadicField(5, config.padic_precision)
    for n in range(3):
        moment = twisted_moment(n, RootOfUnity.one(), chi, FermionicMeasure.minus_one(5, 3), target, config=config)
        expected = classical_twisted_euler(n, chi, RootOfUnity.one(), field)
        tally.require((moment - expected).valuation() >= target, f"chi={chi}, n={n}")
    w = RootOfUnity(3, 1)
    field = PadicField(3, config.padic_precision, 3)
    for n in range(3):
        moment = twisted_moment(n, w, None, FermionicMeasure.minus_one(3), target, config=config)
        expected = classical_twisted_euler(n, None, w, field)
        tally.require((moment - expected).valuation() >= target, f"w={w}, n={n}")
    return tally


@check("padic", "q-moments equal the closed form")
def _check_q_moments(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    target = grid.oracle_target
    for p in grid.oracle_primes:
        q = QParam.padic(1 + p, p, target + grid.oracle_degree)
        for w, h in itertools.product((RootOfUnity.one(), RootOfUnity(p, 1)), (1, 2)):
            moments = twisted_q_moments(grid.oracle_degree, 0, h, q, w, target, config)
            for n, moment in enumerate(moments.values):
                closed = twisted_q_euler_poly(EulerParams(n, q, h, 0, w), target, config)
                tally.require((moment - closed).valuation() >= target, f"p={p}, w={w}, h={h}, n={n}")
    q = QParam.padic(6, 5, 8)
    chi = DirichletCharacter.parse("3;1")
    for n in range(3):
        moment = generalized_twisted_q_moment(n, chi, 1, q, RootOfUnity.one(), 4, config)
        closed = generalized_twisted_q_euler(n, chi, 1, q, RootOfUnity.one(), 4, config)
        tally.require((moment - closed).valuation() >= 4, f"generalized chi={chi}, n={n}")
    one = QParam.padic(1, 3, 8)
    series = twisted_q_moments(3, 0, 1, one, RootOfUnity.one(), 5, config)
    for n, value in enumerate(series.values):
        plain = twisted_moment(n, RootOfUnity.one(), None, FermionicMeasure.minus_one(3), 5, precision=8, config=config)
        tally.require((value - plain).valuation() >= 5, f"q=1 specialization, n={n}")
    return tally


@check("padic", "cyclotomic ring axioms")
def _check_ring(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    rng = random.Random(3)
    for p in grid.primes:
        order = p * p
        modulus = p**10
        root = CycloPadic(p, 10, order, [0, 1])
        phi = cyclotomic_coefficients(order)
        tally.require(sum((c * root**i for i, c in enumerate(phi)), CycloPadic(p, 10, order, [0])).is_zero(), f"Phi_{order}")
        tally.require(root**order == 1, f"zeta^{order}")
        for _ in range(5):
            a, b, c = (
                CycloPadic(p, 10, order, [rng.randrange(modulus) for _ in range(order - order // p)])
                for _ in range(3)
            )
            tally.require((a + b) + c == a + (b + c), "associativity")
            tally.require(a * root**order == a, "a zeta^m = a")
            tally.require(a * (b + c) == a * b + a * c, "distributivity")
    return tally


# euler


def _euler_grid(grid: Grid) -> List[Tuple[int, int, str, RootOfUnity, Fraction]]:
    return list(itertools.product(grid.degrees, grid.hs, grid.qs, grid.twists, grid.xs))


@check("euler", "closed form equals series")
def _check_closed_series(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    poles = 0

    def one(point: Tuple[int, int, str, RootOfUnity, Fraction]) -> Optional[Tuple[float, str]]:
        n, h, q_text, w, x = point
        params = EulerParams(n, _q(q_text), h, x, w)
        if find_pole(params, config.pole_tol) is not None:
            return None
        closed = twisted_q_euler_poly(params, config=config)
        series = twisted_q_euler_series(params, tol=1e-13, config=config)
        return _scaled(closed, series.value, n, params.q), f"n={n}, h={h}, q={q_text}, w={w}, x={x}"

    for outcome in ordered_map(one, _euler_grid(grid), config.workers):
        if outcome is None:
            poles += 1
            continue
        tally.add(*outcome)
    logger.info("closed/series grid skipped %d pole combinations", poles)
    return tally


@check("euler", "pole combinations raise")
def _check_poles(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    minus_one = RootOfUnity(2, 1)
    for q_text in grid.qs:
        params = EulerParams(1, _q(q_text), 0, 0, minus_one)
        for evaluate in (
            lambda: twisted_q_euler_poly(params, config=config),
            lambda: twisted_q_euler_poly(EulerParams(1, params.q.as_complex(), 0, 0, minus_one), config=config),
            lambda: twisted_q_euler_series(params, config=config),
        ):
            try:
                evaluate()
            except PoleError:
                tally.require(True, "")
            else:
                tally.require(False, f"q={q_text}: h=0, w=-1 returned a value")
    return tally


@check("euler", "distribution relation")
def _check_distribution(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    points = [
        (n, h, q, w, x, d)
        for (n, h, q, w, x), d in itertools.product(_euler_grid(grid), grid.distribution_ds)
    ]

    def one(point):
        n, h, q_text, w, x, d = point
        q = _q(q_text)
        if find_pole(EulerParams(n, q, h, x, w), config.pole_tol) is not None:
            return None
        if find_pole(EulerParams(n, QParam.exact(q.value**d), h, 0, w.power(d)), config.pole_tol) is not None:
            return None
        lhs, rhs = distribution_check(n, x, h, q, w, d, config=config)
        return _scaled(lhs, rhs, n, q), f"n={n}, h={h}, q={q_text}, w={w}, x={x}, d={d}"

    for outcome in ordered_map(one, points, config.workers):
        if outcome is not None:
            tally.add(*outcome)
    return tally


@check("euler", "q -> 1 limits")
def _check_classical_limit(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-4)
    q = QParam.exact(1 - Fraction(1, 10**6))
    for n in grid.limit_degrees:
        for x in (0, 1):
            value = twisted_q_euler_poly(EulerParams(n, q, 1, x), config=config)
            tally.add(abs(as_complex(value) - float(classical_euler_polynomial(n, x))), f"n={n}, x={x}")
    # the generalized numbers sit about 4e3 (1 - q) from their limit at n = 5
    # and the gap is linear in 1 - q; evaluate them closer to 1
    chi = DirichletCharacter.parse("3;1")
    near_one = QParam.exact(1 - Fraction(1, 10**9))
    for n in grid.limit_degrees:
        value = generalized_twisted_q_euler(n, chi, 1, near_one, RootOfUnity.one(), config=config)
        expected = classical_twisted_euler(n, chi, RootOfUnity.one())
        tally.add(abs(as_complex(value) - as_complex(expected)), f"chi={chi}, n={n}")
    return tally


@check("euler", "generalized finite sum equals series")
def _check_generalized(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    for f in (1, 3, 5):
        for chi, w in itertools.product(enumerate_characters(f), grid.twists):
            for n in grid.degrees:
                if n == 0 and f == 1:
                    continue
                for q_text in grid.qs:
                    q = _q(q_text)
                    params = EulerParams(n, q, 1, 0, w, chi)
                    if find_pole(params, config.pole_tol) is not None:
                        continue
                    finite = generalized_twisted_q_euler(n, chi, 1, q, w, config=config)
                    series = generalized_twisted_q_euler_series(n, chi, 1, q, w, tol=1e-13, config=config)
                    tally.add(_scaled(finite, series.value, n, q), f"chi={chi}, w={w}, n={n}, q={q_text}")
    return tally


# lfunctions


@check("lfunctions", "zeta at -n equals the Euler numbers")
def _check_interpolation(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-9)
    n_max = max(grid.degrees)
    points = list(itertools.product(grid.hs, grid.qs, grid.twists, grid.xs))

    def one(point):
        h, q_text, w, x = point
        q = _q(q_text)
        if find_pole(EulerParams(0, q, h, 0, w), config.pole_tol) is not None:
            return []
        params = ZetaParams(0, q, h, x if x > 0 else None, w)
        rows = interpolate_at_negatives(n_max, params, tol=1e-13, config=config)
        return [
            (row.difference / comparison_scale(row.n, q), f"n={row.n}, h={h}, q={q_text}, w={w}, x={x}")
            for row in rows
        ]

    for outcome in ordered_map(one, points, config.workers):
        for error, label in outcome:
            tally.add(error, label)
    return tally


@check("lfunctions", "l-function at -n equals the generalized numbers")
def _check_l_interpolation(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-9)
    q = _q("0.5")
    for f, w in itertools.product((3, 5), (RootOfUnity(4, 1), RootOfUnity(1, 0))):
        for chi in enumerate_characters(f):
            rows = interpolate_at_negatives(grid.l_degrees, ZetaParams(0, q, 1, None, w, chi), tol=1e-13, config=config)
            for row in rows:
                tally.add(row.difference / comparison_scale(row.n, q), f"chi={chi}, w={w}, n={row.n}")
    return tally


def _s_points(count: int, seed: int, real: Tuple[float, float], imag: Tuple[float, float]) -> List[complex]:
    rng = random.Random(seed)
    return [complex(rng.uniform(*real), rng.uniform(*imag)) for _ in range(count)]


@check("lfunctions", "direct and decomposed l-function agree")
def _check_l_paths(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-9)
    q = _q("0.5")
    characters = enumerate_characters(3) + enumerate_characters(5)
    for index, s in enumerate(_s_points(grid.s_points, 11, (-3.0, 4.0), (-3.0, 3.0))):
        chi = characters[index % len(characters)]
        w = (RootOfUnity(4, 1), RootOfUnity(3, 2), RootOfUnity(1, 0))[index % 3]
        paths = l_function_paths(ZetaParams(s, q, 1, None, w, chi), tol=1e-13, config=config)
        tally.add(paths.difference / max(1.0, abs(paths.direct)), f"s={s:.3f}, chi={chi}, w={w}")
    return tally


@check("lfunctions", "regularized and raw Hurwitz series agree")
def _check_raw(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    q = _q("0.5")
    for index, s in enumerate(_s_points(grid.raw_points, 5, (-4.0, -1.1), (-2.0, 2.0))):
        w = (RootOfUnity(1, 0), RootOfUnity(4, 3), RootOfUnity(3, 1))[index % 3]
        params = ZetaParams(s, q, 1 + index % 2, Fraction(1 + index % 3, 3), w)
        regular = hurwitz_zeta(params, tol=1e-13, config=config)
        raw = hurwitz_zeta_raw(params, tol=1e-13, config=config)
        tally.add(abs(regular - raw) / max(1.0, abs(raw)), f"s={s:.3f}, w={w}")
    return tally


@check("lfunctions", "conjugation symmetry")
def _check_conjugation(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    q = _q("0.5")
    for s in _s_points(6, 17, (-3.0, 3.0), (-2.0, 2.0)):
        for m, k in ((4, 1), (3, 1), (5, 2)):
            left = hurwitz_zeta(ZetaParams(s.conjugate(), q, 1, Fraction(1, 2), RootOfUnity(m, k)), 1e-13, config)
            right = hurwitz_zeta(ZetaParams(s, q, 1, Fraction(1, 2), RootOfUnity(m, m - k)), 1e-13, config)
            tally.add(abs(left - right.conjugate()) / max(1.0, abs(left)), f"s={s:.3f}, w={m}:{k}")
    return tally


@check("lfunctions", "poles raise")
def _check_zeta_poles(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(0.0)
    minus_one = RootOfUnity(2, 1)
    for q_text in grid.qs:
        params = ZetaParams(complex(2, 1), _q(q_text), 0, 1, minus_one)
        for evaluate in (
            lambda: hurwitz_zeta(params, config=config),
            lambda: zeta(params.replace(x=None), config=config),
            lambda: l_function(params.replace(x=None, chi=DirichletCharacter.trivial()), config=config),
        ):
            try:
                evaluate()
            except PoleError:
                tally.require(True, "")
            else:
                tally.require(False, f"q={q_text}: w q^h = -1 returned a value")
    return tally


@check("lfunctions", "specializations")
def _check_specializations(grid: Grid, config: EvalConfig) -> _Tally:
    tally = _Tally(1e-10)
    q = _q("0.5")
    trivial = DirichletCharacter.trivial()
    for s, w in itertools.product((complex(2, 1), complex(-2, 0), complex(0.5, -3)), (RootOfUnity(1, 0), RootOfUnity(4, 1))):
        params = ZetaParams(s, q, 1, None, w)
        z = zeta(params, 1e-13, config)
        for path in ("direct", "decomposed"):
            value = l_function(params.replace(chi=trivial), 1e-13, path, config)
            tally.add(abs(value - z) / max(1.0, abs(z)), f"s={s}, w={w}, {path}")
        shifted = -w.to_complex() * 0.5 * hurwitz_zeta(params.replace(x=1), 1e-13, config)
        tally.add(abs(shifted - z) / max(1.0, abs(z)), f"s={s}, w={w}, zeta from Hurwitz at x=1")
    return tally


def run_suite(suite: str, grid: str = "small", config: Optional[EvalConfig] = None) -> List[CheckResult]:
    """Run one suite (or "all") and return a result per check."""
    config = config or EvalConfig()
    if grid not in GRIDS:
        raise DomainError(f"grid must be one of {', '.join(GRID_NAMES)}, got {grid!r}")
    names: Sequence[str] = SUITE_NAMES if suite == "all" else (suite,)
    for name in names:
        if name not in REGISTRY:
            raise DomainError(f"unknown suite {name!r}")
    results: List[CheckResult] = []
    for name in names:
        logger.info("suite %s (%s grid) started", name, grid)
        for check_name, fn in REGISTRY[name]:
            started = time.perf_counter()
            try:
                result = fn(GRIDS[grid], config).result(name, check_name)
            except QEulerError as exc:
                result = CheckResult(name, check_name, False, detail=f"{type(exc).__name__}: {exc}")
            result.seconds = time.perf_counter() - started
            results.append(result)
        logger.info("suite %s finished", name)
    return results
