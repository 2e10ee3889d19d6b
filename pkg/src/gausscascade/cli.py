"""Command-line interface.

Exit codes: 0 success, 1 residual/verification failure, 2 parse or parameter
error, 3 invalid state, 4 dimension mismatch, 5 unstable drift.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path


from . import schema
from .dynamics import DEFAULT_DT, convergence_report
from .errors import (
    CascadeError,
    InvalidStateError,
    ParameterError,
    SchemaError,
    ShapeError,
    StabilityError,
)
from .gaussian import (
    CovarianceMatrix,
    PureGaussianState,
    covariance_from_xy,
    heisenberg_valid,
    thermal_covariance,
    two_mode_squeezed_xy,
    xy_from_covariance,
)
from .slh import char_poly, qsde_matrices
from .mats import spectral_abscissa
from .synthesis import realization1, realization2, synthesize_cascade, verify_synthesis

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_PARSE = 2
EXIT_STATE = 3
EXIT_DIMENSION = 4
EXIT_STABILITY = 5

DEFAULT_TOLS = {"residual": 1e-8, "hurwitz_margin": 1e-10, "purity": 1e-6}
EXAMPLES = {"realization1": realization1, "realization2": realization2}


def _load_json(source: str, what: str):
    """``source`` is a path, ``-`` for stdin, or inline JSON starting with ``{``."""
    if source.lstrip().startswith("{"):
        text, origin = source, f"inline {what}"
    elif source == "-":
        text, origin = sys.stdin.read(), "stdin"
    else:
        try:
            text, origin = Path(source).read_text(encoding="utf-8"), source
        except OSError as exc:
            raise ParameterError(f"cannot read {what} '{source}': {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{origin}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _parse_tols(items: list[str] | None) -> dict[str, float]:
    tols = dict(DEFAULT_TOLS)
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or key not in tols:
            raise ParameterError(f"--tol expects KEY=VAL with KEY in {sorted(tols)}, got {item!r}")
        try:
            tols[key] = float(value)
        except ValueError:
            raise ParameterError(f"--tol {key}: not a number: {value!r}") from None
        if not math.isfinite(tols[key]) or tols[key] < 0:
            raise ParameterError(f"--tol {key}: must be finite and non-negative")
    return tols


def _target(doc, tols) -> PureGaussianState:
    state = schema.state_from_json(doc)
    if isinstance(state, CovarianceMatrix):
        state = xy_from_covariance(state, purity_tol=tols["purity"])
    return state


def _verification_doc(report, tols) -> tuple[dict, int]:
    doc = schema.report_to_json(report)
    passed = report.hurwitz and report.target_residual < tols["residual"]
    doc["passed"] = passed
    return doc, EXIT_OK if passed else EXIT_RESIDUAL


def cmd_synthesize(args, tols) -> int:
    target = _target(_load_json(args.input, "state"), tols)
    system = synthesize_cascade(target)
    report = verify_synthesis(system, target, hurwitz_margin=tols["hurwitz_margin"])
    report_doc, code = _verification_doc(report, tols)
    out = {
        "target": schema.state_to_json(target),
        "system": schema.system_to_json(system),
        "composed": schema.composed_to_json(system),
        "report": report_doc,
    }
    _write(schema.dumps(out), args.output)
    return code


def cmd_compose(args, tols) -> int:
    doc = _load_json(args.input, "system")
    system = schema.system_from_json(doc.get("system", doc) if isinstance(doc, dict) else doc)
    q = qsde_matrices(system)
    abscissa = spectral_abscissa(q.A)
    out = schema.composed_to_json(system)
    out.update(
        {
            "A": schema.real_matrix(q.A),
            "B": schema.complex_matrix(q.B),
            "noise_quadratic": schema.real_matrix(q.noise_quadratic),
            "char_poly": [schema.num(c) for c in char_poly(q.A)],
            "spectral_abscissa": schema.num(abscissa),
            "hurwitz": bool(abscissa < -tols["hurwitz_margin"]),
        }
    )
    _write(schema.dumps(out), args.output)
    return EXIT_OK


def cmd_verify(args, tols) -> int:
    doc = _load_json(args.input, "system")
    if isinstance(doc, dict) and "system" in doc:
        system_doc, target_doc = doc["system"], doc.get("target")
    else:
        system_doc, target_doc = doc, None
    if args.target is not None:
        target_doc = _load_json(args.target, "target")
    if target_doc is None:
        raise SchemaError("verify needs a target state: pass --target or include a 'target' field")
    system = schema.system_from_json(system_doc)
    target = _target(target_doc, tols)
    report = verify_synthesis(system, target, hurwitz_margin=tols["hurwitz_margin"])
    out, code = _verification_doc(report, tols)
    _write(schema.dumps(out), args.output)
    return code


def _initial_covariance(spec: str, n: int, tols) -> CovarianceMatrix:
    if spec == "vacuum":
        V0 = thermal_covariance(n, 1.0)
    elif spec.startswith("thermal:"):
        try:
            nu = float(spec.split(":", 1)[1])
        except ValueError:
            raise InvalidStateError(f"--v0 {spec!r}: thermal factor is not a number") from None
        if not math.isfinite(nu):
            raise InvalidStateError(f"--v0 {spec!r}: thermal factor must be finite")
        V0 = thermal_covariance(n, nu)
    else:
        state = schema.state_from_json(_load_json(spec, "initial state"))
        V0 = covariance_from_xy(state) if isinstance(state, PureGaussianState) else state
    if V0.n != n:
        raise ShapeError(f"initial covariance has {V0.n} modes but the system has {n}")
    if not heisenberg_valid(V0):
        raise InvalidStateError(f"--v0 {spec!r} violates the uncertainty relation")
    return V0


def cmd_simulate(args, tols) -> int:
    doc = _load_json(args.input, "system")
    system = schema.system_from_json(doc.get("system", doc) if isinstance(doc, dict) else doc)
    if not (math.isfinite(args.dt) and args.dt > 0):
        raise ParameterError(f"--dt must be positive and finite, got {args.dt}")
    if not (math.isfinite(args.t_end) and args.t_end >= args.dt):
        raise ParameterError(f"--t-end must be finite and at least --dt, got {args.t_end}")
    V0 = _initial_covariance(args.v0, system.n, tols)
    rep = convergence_report(system, V0, args.t_end, args.dt)
    _write(schema.trajectory_to_csv(rep.trajectory), args.output)
    summary = {
        "n": system.n,
        "samples": len(rep.times),
        "t_end": schema.num(rep.times[-1]),
        "dt": schema.num(args.dt),
        "initial_residual": schema.num(rep.residuals[0]),
        "final_residual": schema.num(rep.final_residual),
        "decay_exponent": schema.num(rep.decay_exponent),
    }
    text = schema.dumps(summary)
    if args.summary is not None:
        _write(text, args.summary)
    elif args.output is None or args.output == "-":
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_example(args, tols) -> int:
    if not math.isfinite(args.alpha):
        raise ParameterError("--alpha must be finite")
    system = EXAMPLES[args.name](args.alpha)
    target = two_mode_squeezed_xy(args.alpha)
    report = verify_synthesis(system, target, hurwitz_margin=tols["hurwitz_margin"])
    report_doc, code = _verification_doc(report, tols)
    out = {
        "example": args.name,
        "alpha": schema.num(args.alpha),
        "target": schema.state_to_json(target),
        "system": schema.system_to_json(system),
        "composed": schema.composed_to_json(system),
        "report": report_doc,
    }
    _write(schema.dumps(out), args.output)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausscascade",
        description="Synthesize and verify cascades of oscillators that prepare pure Gaussian states.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
    common.add_argument(
        "--tol", metavar="KEY=VAL", action="append", help=f"override a tolerance {sorted(DEFAULT_TOLS)}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", parents=[common], help="build a cascade for a target state")
    p.add_argument("--input", required=True, metavar="PATH", help="state JSON (path, '-' or inline)")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("compose", parents=[common], help="compose a cascade and print its QSDE matrices")
    p.add_argument("--input", required=True, metavar="PATH", help="system JSON")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", parents=[common], help="check a cascade's steady state against a target")
    p.add_argument("--input", required=True, metavar="PATH", help="system JSON, or {system, target}")
    p.add_argument("--target", metavar="PATH", help="target state JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="integrate the moment equations to CSV")
    p.add_argument("--input", required=True, metavar="PATH", help="system JSON")
    p.add_argument("--v0", default="vacuum", help="vacuum | thermal:NU | PATH (default: vacuum)")
    p.add_argument("--t-end", type=float, default=10.0, dest="t_end")
    p.add_argument("--dt", type=float, default=DEFAULT_DT)
    p.add_argument("--summary", metavar="PATH", help="summary JSON file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("example", parents=[common], help="built-in two-mode squeezed state realizations")
    p.add_argument("name", choices=sorted(EXAMPLES))
    p.add_argument("--alpha", type=float, default=0.5, help="squeezing parameter (default: 0.5)")
    p.set_defaults(func=cmd_example)
    return parser


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ParameterError):
        return EXIT_PARSE
    if isinstance(exc, InvalidStateError):
        return EXIT_STATE
    if isinstance(exc, ShapeError):
        return EXIT_DIMENSION
    if isinstance(exc, StabilityError):
        return EXIT_STABILITY
    return EXIT_PARSE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        tols = _parse_tols(args.tol)
        return args.func(args, tols)
    except CascadeError as exc:
        label = getattr(exc, "invariant", None)
        prefix = f"invalid state ({label})" if isinstance(exc, InvalidStateError) else "error"
        print(f"gausscascade {args.command}: {prefix}: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
