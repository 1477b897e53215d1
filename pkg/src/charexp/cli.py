"""Command-line front end.

Examples::

    charexp char --N 2 --label 1,0 --phases 0.0,3.14159265
    charexp expand --N 2 --seq geometric --param z=0.5 --max-boxes 3
    charexp reconstruct --N 2 --seq exponential --param x=0.7 --phases 0.3,2.0 --max-boxes 30
    charexp verify-orthogonality --N 2 --max-boxes 3 --integrator torus --grid 128
    charexp extract --N 2 --seq geometric --param z=0.5 --label 2,0

The default seed comes from ``CHAREXP_SEED`` when set, else 0.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import (
    ConvergenceDomainError,
    InvalidLabelError,
    ResourceLimitError,
    SingularEvaluationError,
    SingularInputError,
    UnsupportedRankError,
    UnsupportedSupportError,
)
from .expansion import coefficient, direct_product, expand, reconstruct
from .genfunc import BUILTINS, from_name
from .haar import extract_coefficient, gram_matrix
from .partitions import enumerate_partitions, format_label, from_exponents, parse_label
from .symfunc import (
    DEGENERATE_TOL,
    EigenvalueSet,
    char_jacobi_trudi,
    char_weyl,
    min_separation,
)

SEED_ENV = "CHAREXP_SEED"

_USER_ERRORS = (
    ValueError,
    KeyError,
    ConvergenceDomainError,
    InvalidLabelError,
    ResourceLimitError,
    SingularEvaluationError,
    SingularInputError,
    UnsupportedRankError,
    UnsupportedSupportError,
)


class ToleranceFailure(Exception):
    pass


# ---------------------------------------------------------------- parsing


def _phases(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"phases must be comma-separated reals: {text!r}")


def _range(text: str) -> tuple[int, int]:
    sep = ":" if ":" in text else ","
    try:
        lo, hi = (int(tok) for tok in text.split(sep))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI integers, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _param(text: str) -> tuple[str, complex | float]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"parameters look like name=value, got {text!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        pass
    try:
        return key.strip(), complex(value.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad parameter value in {text!r}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"charexp: {SEED_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charexp",
        description="U(N) characters and character expansions of prod_i G(t_i).",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, *, seq=False, phases=False, cutoffs=False, integrator=False):
        p.add_argument("--N", type=int, required=True, help="group rank (number of eigenvalues)")
        if seq:
            p.add_argument("--seq", required=True, choices=sorted(BUILTINS),
                           help="builtin generating function")
            p.add_argument("--param", type=_param, action="append", default=[],
                           metavar="NAME=VALUE",
                           help="sequence parameter, e.g. z=0.5 or x=0.3 (repeatable)")
        if phases:
            p.add_argument("--phases", type=_phases, required=True,
                           help="eigenvalue phases in radians, comma-separated")
        if cutoffs:
            p.add_argument("--max-boxes", type=int, required=True,
                           help="largest number of boxes kept in the truncation")
            p.add_argument("--det-power-range", type=_range, default=None, metavar="LO,HI",
                           help="det U powers to include, e.g. --det-power-range=-2,2; omit "
                                "for one-sided series to sum over partitions directly")
        if integrator:
            p.add_argument("--integrator", choices=["torus", "mc"], default="torus",
                           help="torus quadrature (N <= 3) or Monte Carlo")
            p.add_argument("--grid", type=int, default=None,
                           help="grid points per eigenphase for torus quadrature")
            p.add_argument("--samples", type=int, default=100_000,
                           help="number of Haar samples for Monte Carlo")
            p.add_argument("--seed", type=int, default=None,
                           help=f"Monte Carlo seed (default ${SEED_ENV} or 0)")
        p.add_argument("--tolerance", type=float, default=None,
                       help="exit with status 1 when the checked error exceeds this")
        p.add_argument("--output", choices=["json", "csv", "table"], default="json",
                       help="report format")
        p.add_argument("--out", default=None, metavar="FILE", help="write the report here")

    p = sub.add_parser("char", help="evaluate a character by both determinant formulas",
                       allow_abbrev=False)
    common(p, phases=True)
    p.add_argument("--label", required=True, help='irrep label such as "2,1,0" or "1,0@-1"')

    p = sub.add_parser("expand", help="list expansion coefficients", allow_abbrev=False)
    common(p, seq=True, cutoffs=True)

    p = sub.add_parser("reconstruct", help="compare a truncated expansion with prod G(t_i)",
                       allow_abbrev=False)
    common(p, seq=True, phases=True, cutoffs=True)

    p = sub.add_parser("verify-orthogonality", help="Gram matrix of characters",
                       allow_abbrev=False)
    common(p, integrator=True)
    p.add_argument("--max-boxes", type=int, default=3,
                   help="use every partition with at most this many boxes")

    p = sub.add_parser("extract", help="coefficient by group integration vs determinant",
                       allow_abbrev=False)
    common(p, seq=True, integrator=True)
    p.add_argument("--label", required=True, help='irrep label such as "2,0" or "1,0@-1"')
    p.add_argument("--radius", type=float, default=1.0,
                   help="contour radius for the projection integral (default 1)")
    return parser


# ---------------------------------------------------------------- commands


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _sequence(args):
    return from_name(args.seq, dict(args.param))


def _eigenvalues(args) -> EigenvalueSet:
    if len(args.phases) != args.N:
        raise ValueError(f"--phases has {len(args.phases)} values but --N is {args.N}")
    return EigenvalueSet.from_phases(args.phases)


def _label(args):
    g = parse_label(args.label)
    if g.N != args.N:
        raise InvalidLabelError(f"label {args.label!r} has {g.N} rows but --N is {args.N}")
    return g


def cmd_char(args) -> dict:
    g = _label(args)
    t = _eigenvalues(args)
    det_factor = complex(np.prod(t.values)) ** g.det_power
    jt = det_factor * char_jacobi_trudi(g.shape, t)
    if min_separation(t) >= DEGENERATE_TOL:
        weyl = det_factor * char_weyl(g.shape, t)
        diff = abs(weyl - jt)
        value = weyl
    else:
        weyl, diff, value = None, None, jt
    report = {
        "command": "char",
        "N": args.N,
        "label": format_label(g),
        "phases": list(args.phases),
        "value": _pair(value),
        "weyl": None if weyl is None else _pair(weyl),
        "jacobi_trudi": _pair(jt),
        "difference": diff,
    }
    if args.tolerance is not None and diff is not None and diff > args.tolerance:
        raise ToleranceFailure(report, f"formulas differ by {diff:.3g}")
    return report


def cmd_expand(args):
    seq = _sequence(args)
    return expand(seq, args.N, args.max_boxes, args.det_power_range)


def cmd_reconstruct(args) -> dict:
    seq = _sequence(args)
    t = _eigenvalues(args)
    e = expand(seq, args.N, args.max_boxes, args.det_power_range)
    partial = reconstruct(e, seq, t)
    exact = direct_product(seq, t)
    err = abs(partial - exact)
    report = {
        "command": "reconstruct",
        "N": args.N,
        "source_name": seq.name,
        "phases": list(args.phases),
        "cutoffs": {"max_boxes": e.max_boxes, "det_power_range": list(e.det_power_range)},
        "n_terms": len(e),
        "truncated_sum": _pair(partial),
        "direct_product": _pair(exact),
        "abs_error": err,
    }
    if args.tolerance is not None and not err <= args.tolerance:
        raise ToleranceFailure(report, f"reconstruction error {err:.3g} exceeds {args.tolerance:g}")
    return report


def cmd_verify_orthogonality(args) -> dict:
    labels = [from_exponents(p.parts) for p in enumerate_partitions(args.N, args.max_boxes)]
    seed = args.seed if args.seed is not None else _default_seed()
    if args.integrator == "torus":
        gram, se = gram_matrix(labels, args.N, "torus", grid=args.grid or 128)
    else:
        gram, se = gram_matrix(labels, args.N, "mc", n_samples=args.samples, seed=seed)
    dev = np.abs(gram - np.eye(len(labels)))
    max_dev = float(dev.max())
    report = {
        "command": "verify-orthogonality",
        "N": args.N,
        "method": "torus_quadrature" if args.integrator == "torus" else "monte_carlo",
        "labels": [format_label(g) for g in labels],
        "gram": [[_pair(v) for v in row] for row in gram],
        "std_error": se.tolist(),
        "max_deviation": max_dev,
        "seed": None if args.integrator == "torus" else seed,
    }
    if args.integrator == "torus":
        tol = 1e-6 if args.tolerance is None else args.tolerance
        failed = max_dev > tol
        report["tolerance"] = tol
    else:
        # default acceptance band: five standard errors per entry
        band = 5 * se if args.tolerance is None else np.full_like(se, args.tolerance)
        failed = bool(np.any(dev > band))
        report["tolerance"] = "5 std_error" if args.tolerance is None else args.tolerance
    report["passed"] = not failed
    if failed:
        raise ToleranceFailure(report, f"Gram matrix deviates from identity by {max_dev:.3g}")
    return report


def cmd_extract(args) -> dict:
    seq = _sequence(args)
    g = _label(args)
    seed = args.seed if args.seed is not None else _default_seed()
    method = "torus" if args.integrator == "torus" else "mc"
    est = extract_coefficient(seq, g, method, grid=args.grid, n_samples=args.samples,
                              seed=seed, radius=args.radius, full=True)
    det_coeff = coefficient(seq, g)
    diff = abs(complex(est.value) - det_coeff)
    report = {
        "command": "extract",
        "N": args.N,
        "source_name": seq.name,
        "label": format_label(g),
        "radius": args.radius,
        "integral": est.to_json_dict(),
        "determinant": _pair(det_coeff),
        "abs_difference": diff,
    }
    if args.tolerance is not None and diff > args.tolerance:
        raise ToleranceFailure(report, f"integral and determinant differ by {diff:.3g}")
    return report


COMMANDS = {
    "char": cmd_char,
    "expand": cmd_expand,
    "reconstruct": cmd_reconstruct,
    "verify-orthogonality": cmd_verify_orthogonality,
    "extract": cmd_extract,
}


# ---------------------------------------------------------------- output


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        re_, im = v
        return f"{re_:.10g}{im:+.10g}j"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _flat_rows(report: dict) -> list[tuple[str, str]]:
    rows = []
    for key, value in report.items():
        if key == "gram":
            for i, row in enumerate(value):
                rows.append((f"gram[{report['labels'][i]}]", "  ".join(_fmt(x) for x in row)))
        elif key == "std_error" and isinstance(value, list):
            continue
        elif key == "phases":
            rows.append((key, ", ".join(f"{v:.10g}" for v in value)))
        else:
            rows.append((key, _fmt(value)))
    return rows


def render(result, fmt: str) -> str:
    if hasattr(result, "to_json_dict"):
        if fmt == "json":
            return result.to_json() + "\n"
        if fmt == "csv":
            return result.to_csv()
        lines = [f"# N={result.N} source={result.source_name} "
                 f"max_boxes={result.max_boxes} det_power_range={list(result.det_power_range)}"]
        lines.append(f"{'label':<16} {'coefficient':>36}  zero")
        for t in result.terms:
            c = t.coefficient
            lines.append(f"{format_label(t.label):<16} {c.real:>17.10g} {c.imag:+17.10g}j  "
                         f"{'*' if t.flagged_zero else ''}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    rows = _flat_rows(result)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["field", "value"])
        for key, value in result.items():
            writer.writerow([key, json.dumps(value)])
        return buf.getvalue()
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.N < 1:
        parser.error("--N must be positive")
    try:
        result = COMMANDS[args.command](args)
    except ToleranceFailure as exc:
        report, message = exc.args
        _emit(render(report, args.output), args.out)
        print(f"charexp {args.command}: FAILED: {message}", file=sys.stderr)
        return 1
    except _USER_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"charexp {args.command}: error: {msg}", file=sys.stderr)
        return 2
    _emit(render(result, args.output), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
