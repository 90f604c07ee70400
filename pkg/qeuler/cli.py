from __future__ import annotations

import argparse
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from .characters import DirichletCharacter
from .configuration import OUTPUT_FORMATS, EvalConfig
from .errors import EXIT_DOMAIN, EXIT_OK, EXIT_VERIFICATION, DomainError, QEulerError, exit_code_for
from .euler import (
    CLOSED,
    SERIES,
    EulerParams,
    comparison_scale,
    evaluate,
    generalized_twisted_q_euler,
    padic_agreement,
    twisted_q_euler_poly,
)
from .lfunctions import (
    DECOMPOSED,
    DIRECT,
    ZetaParams,
    hurwitz_zeta,
    hurwitz_zeta_raw,
    l_function,
    l_function_paths,
    zeta,
)
from .output import ResultRecord, render_checks, render_error, render_records
from .padic import generalized_twisted_q_moments, twisted_q_moments
from .qcore import Exponent, QParam, RootOfUnity, normalize_exponent
from .verify import GRID_NAMES, SUITE_NAMES, ordered_map, run_suite

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
DEFAULT_MOMENT_TARGET = 8
# options whose values may start with a minus sign ("--s -3,0")
SIGNED_VALUE_FLAGS = ("--s", "--x", "--h", "--q")
_SIGNED_NUMBER = re.compile(r"^-[\d.]")


def parse_number(text: str) -> Union[Fraction, complex]:
    """Exact rational first ("1/2", "0.999999", "3"), complex otherwise ("0.5+0.2j")."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise DomainError(f"cannot read {text!r} as a rational or complex number") from exc


def parse_exponent(text: str) -> Exponent:
    return normalize_exponent(parse_number(text))


def parse_q(text: str, prime: Optional[int] = None, precision: Optional[int] = None) -> QParam:
    value = parse_number(text)
    if prime is not None:
        if isinstance(value, complex):
            raise DomainError(f"a p-adic q must be rational, got {text!r}")
        return QParam.padic(value, prime, precision)
    if isinstance(value, Fraction):
        return QParam.exact(value)
    return QParam.complex(value)


def parse_s(text: str) -> complex:
    """``re,im`` or a bare real part."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise DomainError(f"s must be written 're,im', got {text!r}") from exc
    raise DomainError(f"s must be written 're,im', got {text!r}")


def parse_range(text: str) -> List[int]:
    """``a..b`` (inclusive, empty when b < a) or a single degree."""
    try:
        if ".." in text:
            low_text, high_text = text.split("..", 1)
            low, high = int(low_text), int(high_text)
        else:
            low = high = int(text)
    except ValueError as exc:
        raise DomainError(f"range must be written 'a..b', got {text!r}") from exc
    if low < 0:
        raise DomainError(f"degrees must be non-negative, got {low}")
    return list(range(low, high + 1))


def _parse_chi(text: Optional[str]) -> Optional[DirichletCharacter]:
    return DirichletCharacter.parse(text) if text else None


def _attach_signed_values(argv: Sequence[str]) -> List[str]:
    result: List[str] = []
    tokens = iter(range(len(argv)))
    for i in tokens:
        token = argv[i]
        if token in SIGNED_VALUE_FLAGS and i + 1 < len(argv) and _SIGNED_NUMBER.match(argv[i + 1]):
            result.append(f"{token}={argv[i + 1]}")
            next(tokens, None)
            continue
        result.append(token)
    return result


def _euler_params(params: EulerParams) -> Dict[str, Any]:
    return {"n": params.n, "q": params.q, "h": params.h, "x": params.x, "w": params.w, "chi": params.chi}


def _zeta_params(params: ZetaParams) -> Dict[str, Any]:
    return {"s": params.s, "q": params.q, "h": params.h, "x": params.x, "w": params.w, "chi": params.chi}


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def cmd_euler(args: argparse.Namespace, config: EvalConfig) -> int:
    prime = config.padic_prime if args.padic else None
    q = parse_q(args.q, prime, config.padic_precision)
    params = EulerParams(
        args.n, q, parse_exponent(args.h), parse_exponent(args.x), RootOfUnity.parse(args.w), _parse_chi(args.chi)
    )
    name = "euler" if params.chi is None else "generalized-euler"
    paths = (CLOSED, SERIES) if args.mode == "both" else (args.mode,)
    values = [evaluate(params, path, config.tol, args.target, config) for path in paths]
    records = [ResultRecord.of(name, _euler_params(params), v.value, v.error_bound, v.path) for v in values]
    if len(values) == 2:
        difference = abs(values[0].complex() - values[1].complex())
        records.append(
            ResultRecord.of(
                f"{name}-difference",
                _euler_params(params),
                difference,
                path=f"{CLOSED}-{SERIES}",
                scaled=difference / comparison_scale(params.n, q),
            )
        )
    _emit(render_records(records, config.output))
    return EXIT_OK


def cmd_zeta(args: argparse.Namespace, config: EvalConfig) -> int:
    x = parse_exponent(args.x) if args.x is not None else None
    params = ZetaParams(parse_s(args.s), parse_q(args.q), parse_exponent(args.h), x, RootOfUnity.parse(args.w))
    if x is None:
        if args.raw:
            raise DomainError("--raw applies to the Hurwitz zeta; pass --x")
        name, path, value = "zeta", "regularized", zeta(params, config.tol, config)
    elif args.raw:
        name, path, value = "hurwitz-zeta", "raw", hurwitz_zeta_raw(params, config.tol, config)
    else:
        name, path, value = "hurwitz-zeta", "regularized", hurwitz_zeta(params, config.tol, config)
    _emit(render_records([ResultRecord.of(name, _zeta_params(params), value, config.tol, path)], config.output))
    return EXIT_OK


def cmd_l(args: argparse.Namespace, config: EvalConfig) -> int:
    chi = _parse_chi(args.chi)
    if chi is None:
        raise DomainError("the l-function needs --chi")
    params = ZetaParams(parse_s(args.s), parse_q(args.q), parse_exponent(args.h), None, RootOfUnity.parse(args.w), chi)
    fields = _zeta_params(params)
    if args.path == "both":
        paths = l_function_paths(params, config.tol, config)
        records = [
            ResultRecord.of("l", fields, paths.direct, config.tol, DIRECT),
            ResultRecord.of("l", fields, paths.decomposed, config.tol, DECOMPOSED),
            ResultRecord.of("l-difference", fields, paths.difference, path=f"{DIRECT}-{DECOMPOSED}"),
        ]
    else:
        value = l_function(params, config.tol, args.path, config)
        records = [ResultRecord.of("l", fields, value, config.tol, args.path)]
    _emit(render_records(records, config.output))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: EvalConfig) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    batches = ordered_map(lambda name: run_suite(name, args.grid, config), names, config.workers)
    results = [result for batch in batches for result in batch]
    _emit(render_checks([result.to_record() for result in results], config.output))
    failed = [result for result in results if not result.passed]
    for result in failed:
        logger.warning("check failed: %s / %s", result.suite, result.name)
    return EXIT_VERIFICATION if failed else EXIT_OK


def cmd_table(args: argparse.Namespace, config: EvalConfig) -> int:
    degrees = parse_range(args.n)
    q = parse_q(args.q)
    h = parse_exponent(args.h)
    w = RootOfUnity.parse(args.w)
    chi = _parse_chi(args.chi)

    if args.object == "euler":
        x = parse_exponent(args.x) if args.x is not None else 0

        def row(n: int) -> ResultRecord:
            params = EulerParams(n, q, h, x, w, chi)
            value = evaluate(params, CLOSED, config.tol, None, config)
            return ResultRecord.of("euler", _euler_params(params), value.value, value.error_bound, value.path)

    else:
        if args.object == "l" and chi is None:
            raise DomainError("an l-function table needs --chi")
        x = parse_exponent(args.x) if args.x is not None and args.object == "zeta" else None
        base = ZetaParams(0j, q, h, x, w, chi if args.object == "l" else None)

        def row(n: int) -> ResultRecord:
            params = base.replace(s=complex(-n))
            if args.object == "l":
                value = l_function(params, config.tol, DECOMPOSED, config)
            elif x is None:
                value = zeta(params, config.tol, config)
            else:
                value = hurwitz_zeta(params, config.tol, config)
            return ResultRecord.of(args.object, _zeta_params(params), value, config.tol, "regularized")

    records = ordered_map(row, degrees, config.workers)
    _emit(render_records(records, config.output))
    return EXIT_OK


def cmd_moment(args: argparse.Namespace, config: EvalConfig) -> int:
    prime, precision = config.padic_prime, config.padic_precision
    target = args.target if args.target is not None else min(DEFAULT_MOMENT_TARGET, precision)
    q = parse_q(args.q, prime, precision)
    h = parse_exponent(args.h)
    x = parse_exponent(args.x)
    w = RootOfUnity.parse(args.w)
    chi = _parse_chi(args.chi)
    if chi is None:
        series = twisted_q_moments(args.n, x, h, q, w, target, config)
        closed = twisted_q_euler_poly(EulerParams(args.n, q, h, x, w), target, config)
    else:
        if x != 0:
            raise DomainError("generalized moments are taken at x = 0")
        series = generalized_twisted_q_moments(args.n, chi, h, q, w, target, config)
        closed = generalized_twisted_q_euler(args.n, chi, h, q, w, target, config)
    moment = series.values[args.n]
    valuation = padic_agreement(moment, closed, prime)
    logger.info("moment stabilized at level %d; agreement to valuation %s", series.level, valuation)
    fields = {"n": args.n, "q": q, "h": h, "x": x, "w": w, "chi": chi, "p": prime, "M": precision}
    record = ResultRecord.of(
        "moment",
        fields,
        moment,
        path="level-sum",
        closed=closed.serialize(),
        level=series.level,
        valuation=valuation,
    )
    _emit(render_records([record], config.output))
    return EXIT_OK if valuation >= target else EXIT_VERIFICATION


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML (or key=value) configuration file.")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format (default from config: plain).")
    common.add_argument("--tol", type=float, help="Target tolerance for series evaluations.")
    common.add_argument("--workers", type=int, help="Threads used for table rows and verify suites.")
    common.add_argument("--prime", type=int, help="Odd prime for p-adic evaluations.")
    common.add_argument("--precision", type=int, help="p-adic precision M (values known mod p^M).")
    common.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING", help="Logging level on stderr.")
    return common


def _parameter_options(parser: argparse.ArgumentParser, *, q_required: bool = True) -> None:
    parser.add_argument("--q", required=q_required, help="Deformation parameter: rational '1/2', decimal or complex.")
    parser.add_argument("--h", default="1", help="Weight exponent h (default 1).")
    parser.add_argument("--w", default="1:0", help="Twist root of unity 'm:k' = exp(2 pi i k/m) (default 1:0).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qeuler",
        description="Evaluate twisted q-Euler numbers, their zeta and l-functions, and check their identities.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    euler = subparsers.add_parser("euler", parents=[common], help="Twisted q-Euler numbers and polynomials.")
    euler.add_argument("--n", type=int, required=True, help="Degree n >= 0.")
    euler.add_argument("--x", default="0", help="Polynomial variable x (default 0).")
    _parameter_options(euler)
    euler.add_argument("--chi", help="Dirichlet character 'f;k1,k2,...' for the generalized numbers.")
    euler.add_argument("--mode", choices=(CLOSED, SERIES, "both"), default=CLOSED)
    euler.add_argument("--padic", action="store_true", help="Read q as a p-adic integer (prime and precision from config).")
    euler.add_argument("--target", type=int, help="Valuation the p-adic result must be known to.")
    euler.set_defaults(handler=cmd_euler)

    zeta_parser = subparsers.add_parser("zeta", parents=[common], help="Twisted q-Euler zeta and Hurwitz zeta.")
    zeta_parser.add_argument("--s", required=True, help="Complex point 're,im'.")
    zeta_parser.add_argument("--x", help="Hurwitz shift 0 < x <= 1; omit for the one-variable zeta.")
    _parameter_options(zeta_parser)
    zeta_parser.add_argument("--raw", action="store_true", help="Sum the Hurwitz series without regularization.")
    zeta_parser.set_defaults(handler=cmd_zeta)

    l_parser = subparsers.add_parser("l", parents=[common], help="Twisted q-l-function of a Dirichlet character.")
    l_parser.add_argument("--s", required=True, help="Complex point 're,im'.")
    l_parser.add_argument("--chi", required=True, help="Dirichlet character 'f;k1,k2,...'.")
    _parameter_options(l_parser)
    l_parser.add_argument("--path", choices=(DIRECT, DECOMPOSED, "both"), default=DECOMPOSED)
    l_parser.set_defaults(handler=cmd_l)

    verify = subparsers.add_parser("verify", parents=[common], help="Run identity checks.")
    verify.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    verify.add_argument("--grid", choices=GRID_NAMES, default="small")
    verify.set_defaults(handler=cmd_verify)

    table = subparsers.add_parser("table", parents=[common], help="Tabulate values over a degree range.")
    table.add_argument("--object", choices=("euler", "zeta", "l"), required=True)
    table.add_argument("--n", default="0..8", help="Degree range 'a..b'; zeta and l rows are taken at s = -n.")
    table.add_argument("--x", help="Polynomial variable (euler) or Hurwitz shift (zeta).")
    _parameter_options(table)
    table.add_argument("--chi", help="Dirichlet character 'f;k1,k2,...'.")
    table.set_defaults(handler=cmd_table)

    moment = subparsers.add_parser("moment", parents=[common], help="p-adic moment against the closed form.")
    moment.add_argument("--n", type=int, required=True, help="Degree n >= 0.")
    moment.add_argument("--x", default="0", help="p-integral shift x (default 0).")
    _parameter_options(moment)
    moment.add_argument("--chi", help="Real Dirichlet character 'f;k' with f prime to p.")
    moment.add_argument("--target", type=int, help=f"Target valuation (default min({DEFAULT_MOMENT_TARGET}, M)).")
    moment.set_defaults(handler=cmd_moment)

    return parser


def load_config(args: argparse.Namespace) -> EvalConfig:
    """Defaults, then --config, then $QEULER_CONFIG, then explicit flags."""
    base = EvalConfig.load(Path(args.config)) if args.config else EvalConfig()
    config = EvalConfig.from_env(base)
    return config.merged(
        {
            "tol": args.tol,
            "output": args.format,
            "workers": args.workers,
            "padic_prime": args.prime,
            "padic_precision": args.precision,
        }
    )


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    tokens = list(argv) if argv is not None else sys.argv[1:]
    args = parser.parse_args(_attach_signed_values(tokens))
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_config(args)
    except (ValueError, OSError) as exc:
        _emit(render_error(exc, args.format or "plain"))
        return EXIT_DOMAIN

    try:
        return args.handler(args, config)
    except QEulerError as exc:
        logger.debug("%s failed", args.command, exc_info=True)
        _emit(render_error(exc, config.output))
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
