"""Command-line front end: point evaluation, method comparison, identity
certification, and parameter sweeps.

Exit codes: 0 ok, 1 usage error, 2 domain error, 3 cross-method
disagreement beyond 10x tolerance.  Complex values are written "re,im" on
the command line, {"re": .., "im": ..} in JSON, and as paired columns in
CSV.  LERCH_TOL overrides the default tolerance of 1e-10.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import os
import random
import sys

from . import engine, identities
from .errors import DomainError, LerchError, ToleranceNotMet
from .result import EvalResult

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_DEVIATION = 3

_SUITES = ("all", "symmetry", "recurrences", "reflections", "theorem1")

_SWEEP_FIELDS = (
    "z_re", "z_im", "n", "a_re", "a_im",
    "value_re", "value_im", "err", "method", "terms_or_nodes",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract here is exit 1."""

    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(
        f"expected a complex number as 're,im', got {text!r}"
    )


def _parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected a range as 'lo:hi:count', got {text!r}"
        )
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if count < 0:
        raise argparse.ArgumentTypeError("range count must be >= 0")
    if count == 0:
        return []
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _complex_json(z: complex):
    return {"re": z.real, "im": z.imag}


def _evaluate(method: str, z: complex, n: int, a: complex, tol: float) -> EvalResult:
    if method == "auto":
        return engine.phi(z, n, a, tol)
    if method == "series":
        return engine.phi_series(z, n, a, tol)
    if method == "integral":
        return engine.phi_integral(z, n, a, tol)
    if method == "pv":
        return engine.phi_pv(z, n, a, tol)
    if method == "inverse":
        return engine.phi_inverse(z, n, a, tol)
    if method == "integer-a":
        k = round(a.real)
        if k < 1 or abs(a - k) > 1e-8:
            raise DomainError(
                f"method integer-a needs a at a positive integer, got a = {a}"
            )
        return engine.phi_integer_a(z, n, k, tol)
    raise DomainError(f"unknown method {method!r}")


def _degraded(res: EvalResult) -> EvalResult:
    if res.method.endswith("(degraded)"):
        return res
    return EvalResult(res.value, res.err_estimate, res.method + " (degraded)",
                      res.terms_or_nodes)


# ---------------------------------------------------------------------------
# eval

def _emit_eval(res: EvalResult, fmt: str, out) -> None:
    if fmt == "json":
        rec = {
            "value": _complex_json(res.value),
            "err_estimate": res.err_estimate,
            "method": res.method,
            "terms_or_nodes": res.terms_or_nodes,
        }
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["value_re", "value_im", "err", "method",
                         "terms_or_nodes"])
        writer.writerow([_fmt(res.value.real), _fmt(res.value.imag),
                         _fmt(res.err_estimate), res.method,
                         res.terms_or_nodes])
    else:
        out.write(f"value = {_fmt(res.value.real)} {_fmt(res.value.imag)}i\n")
        out.write(f"err_estimate = {_fmt(res.err_estimate)}\n")
        out.write(f"method = {res.method}\n")
        out.write(f"terms_or_nodes = {res.terms_or_nodes}\n")


def _cmd_eval(args) -> int:
    try:
        res = _evaluate(args.method, args.z, args.n, args.a, args.tol)
    except ToleranceNotMet as exc:
        if exc.result is None:
            print(f"domain error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        res = _degraded(exc.result)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit_eval(res, args.format, sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare

def _cmd_compare(args) -> int:
    rows = []
    for name in ("series", "integral", "pv", "inverse", "integer-a"):
        try:
            res = _evaluate(name, args.z, args.n, args.a, args.tol)
        except ToleranceNotMet as exc:
            if exc.result is None:
                continue
            res = _degraded(exc.result)
        except DomainError:
            continue
        rows.append((name, res))
    if not rows:
        print("domain error: no method admits this point", file=sys.stderr)
        return EXIT_DOMAIN

    certified = [
        r for _, r in rows
        if r.err_estimate <= 10 * args.tol * max(1.0, abs(r.value))
    ]
    deviation = 0.0
    scale = 1.0
    if len(certified) >= 2:
        for i in range(len(certified)):
            for j in range(i + 1, len(certified)):
                deviation = max(
                    deviation, abs(certified[i].value - certified[j].value)
                )
                scale = max(scale, abs(certified[i].value))

    if args.format == "json":
        rec = {
            "methods": [
                {
                    "method": name,
                    "value": _complex_json(res.value),
                    "err_estimate": res.err_estimate,
                    "terms_or_nodes": res.terms_or_nodes,
                }
                for name, res in rows
            ],
            "max_pairwise_deviation": deviation,
        }
        sys.stdout.write(json.dumps(rec, sort_keys=True) + "\n")
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["method", "value_re", "value_im", "err",
                         "terms_or_nodes"])
        for name, res in rows:
            writer.writerow([name, _fmt(res.value.real), _fmt(res.value.imag),
                             _fmt(res.err_estimate), res.terms_or_nodes])
        writer.writerow(["max_pairwise_deviation", _fmt(deviation), "", "", ""])
    else:
        for name, res in rows:
            sys.stdout.write(
                f"{name:10s} value = {_fmt(res.value.real)} "
                f"{_fmt(res.value.imag)}i   err = {_fmt(res.err_estimate)}   "
                f"work = {res.terms_or_nodes}\n"
            )
        sys.stdout.write(f"max pairwise deviation = {_fmt(deviation)}\n")

    if len(certified) >= 2 and deviation > 10 * args.tol * scale:
        return EXIT_DEVIATION
    return EXIT_OK


# ---------------------------------------------------------------------------
# check

def _sample_disc_z(rng) -> complex:
    r = rng.uniform(0.15, 0.85)
    theta = rng.choice((1, -1)) * rng.uniform(0.15, math.pi - 0.15)
    return r * cmath.exp(1j * theta)


def _sample_exterior_z(rng) -> complex:
    r = rng.uniform(1.3, 4.0)
    theta = rng.choice((1, -1)) * rng.uniform(0.2, math.pi - 0.2)
    return r * cmath.exp(1j * theta)


def _sample_shift(rng) -> complex:
    return complex(rng.uniform(0.08, 0.92), rng.uniform(-0.45, 0.45))


def _record(identity, point, residual, tol):
    return {
        "identity": identity,
        "point": point,
        "residual": residual,
        "tol": tol,
        "pass": bool(residual <= tol),
    }


def _point(z=None, n=None, a=None, m=None):
    point = {}
    if z is not None:
        point["z"] = _complex_json(z)
    if n is not None:
        point["n"] = n
    if a is not None:
        point["a"] = _complex_json(a)
    if m is not None:
        point["m"] = m
    return point


def _check_symmetry(rng, grid, tol):
    gate = tol if tol is not None else 1e-9
    for _ in range(grid):
        z = _sample_disc_z(rng)
        n = rng.randint(1, 5)
        a = _sample_shift(rng)
        res = identities.residual_symmetry(z, n, a)
        yield _record("symmetry", _point(z=z, n=n, a=a), res, gate)


def _check_theorem1(rng, grid, tol):
    gate = tol if tol is not None else 1e-8
    count = 0
    while count < grid:
        z = _sample_disc_z(rng)
        phi_angle = cmath.phase(-cmath.log(z))
        # keep the shift away from the pole at 0: the representation scales
        # like |a|^-n and the gate is absolute
        a = complex(rng.uniform(0.5, 0.85), rng.uniform(-0.35, 0.35))
        if ((a - 1) * cmath.exp(1j * phi_angle)).real > -0.2:
            continue
        count += 1
        n = 1 + count % 3
        v_pv = engine.phi_pv(z, n, a, 1e-9).value
        v_series = engine.phi_series(z, n, a, 1e-11).value
        yield _record("theorem1", _point(z=z, n=n, a=a),
                      abs(v_pv - v_series), gate)


def _check_recurrences(rng, grid, tol):
    for i in range(grid):
        z = _sample_disc_z(rng) if i % 2 == 0 else _sample_exterior_z(rng)
        a = _sample_shift(rng)
        n_shift = rng.randint(1, 4)
        res = identities.residual_shift(z, n_shift, a)
        yield _record("shift", _point(z=z, n=n_shift, a=a), res,
                      tol if tol is not None else 1e-10)
        n_ladder = rng.randint(2, 4)
        down, up = identities.residual_s_ladder(z, n_ladder, a)
        gate = tol if tol is not None else 1e-6
        yield _record("s-ladder-down", _point(z=z, n=n_ladder, a=a), down, gate)
        yield _record("s-ladder-up", _point(z=z, n=n_ladder, a=a), up, gate)
        n_pde = rng.randint(1, 3)
        res = identities.residual_pde(z, n_pde, a)
        yield _record("pde", _point(z=z, n=n_pde, a=a), res, gate)


def _check_reflections(rng, grid, tol):
    gate = tol if tol is not None else 1e-9
    # fixed spot value: zeta(2, 1/4) + zeta(2, 3/4) = 2 pi^2
    res = identities.residual_hurwitz_reflection(2, 0.25)
    yield _record("hurwitz-reflection", _point(n=2, a=0.25 + 0j), res,
                  tol if tol is not None else 1e-10)
    for _ in range(grid):
        n = rng.randint(2, 5)
        a = _sample_shift(rng)
        res = identities.residual_hurwitz_reflection(n, a)
        yield _record("hurwitz-reflection", _point(n=n, a=a), res, gate)
        m = rng.randint(1, 3)
        res = identities.residual_polygamma_reflection(m, a)
        yield _record("polygamma-reflection", _point(a=a, m=m), res, gate)


def _cmd_check(args) -> int:
    rng = random.Random(args.seed)
    generators = {
        "symmetry": _check_symmetry,
        "theorem1": _check_theorem1,
        "recurrences": _check_recurrences,
        "reflections": _check_reflections,
    }
    names = (
        ("symmetry", "recurrences", "reflections", "theorem1")
        if args.suite == "all"
        else (args.suite,)
    )
    all_pass = True
    for name in names:
        for rec in generators[name](rng, args.grid, args.tol):
            sys.stdout.write(json.dumps(rec, sort_keys=True) + "\n")
            all_pass = all_pass and rec["pass"]
    return EXIT_OK if all_pass else EXIT_DEVIATION


# ---------------------------------------------------------------------------
# sweep

def _cmd_sweep(args) -> int:
    grid = [
        (r, theta, are, aim)
        for r in args.abs_z
        for theta in args.arg_z
        for are in args.a_re
        for aim in args.a_im
    ]
    rows = []
    for r, theta, are, aim in grid:
        z = r * cmath.exp(1j * theta)
        a = complex(are, aim)
        row = {
            "z_re": z.real, "z_im": z.imag, "n": args.n,
            "a_re": are, "a_im": aim,
        }
        try:
            res = engine.phi(z, args.n, a, args.tol)
        except ToleranceNotMet as exc:
            res = _degraded(exc.result) if exc.result is not None else None
            if res is None:
                row.update(value_re=None, value_im=None, err=None,
                           method=f"error: {exc}", terms_or_nodes=None)
        except LerchError as exc:
            res = None
            row.update(value_re=None, value_im=None, err=None,
                       method=f"error: {exc}", terms_or_nodes=None)
        if res is not None:
            row.update(
                value_re=res.value.real, value_im=res.value.imag,
                err=res.err_estimate, method=res.method,
                terms_or_nodes=res.terms_or_nodes,
            )
        rows.append(row)

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        if args.format == "jsonl":
            for row in rows:
                rec = {
                    "z": {"re": row["z_re"], "im": row["z_im"]},
                    "n": row["n"],
                    "a": {"re": row["a_re"], "im": row["a_im"]},
                    "value": (
                        None if row["value_re"] is None
                        else {"re": row["value_re"], "im": row["value_im"]}
                    ),
                    "err": row["err"],
                    "method": row["method"],
                    "terms_or_nodes": row["terms_or_nodes"],
                }
                out.write(json.dumps(rec, sort_keys=True) + "\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(_SWEEP_FIELDS)
            for row in rows:
                writer.writerow([
                    _fmt(row["z_re"]), _fmt(row["z_im"]), row["n"],
                    _fmt(row["a_re"]), _fmt(row["a_im"]),
                    "" if row["value_re"] is None else _fmt(row["value_re"]),
                    "" if row["value_im"] is None else _fmt(row["value_im"]),
                    "" if row["err"] is None else _fmt(row["err"]),
                    row["method"],
                    "" if row["terms_or_nodes"] is None
                    else row["terms_or_nodes"],
                ])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser(default_tol: float) -> _Parser:
    parser = _Parser(prog="lerchphi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def add_point_flags(p):
        p.add_argument("--z", type=_parse_complex, required=True,
                       metavar="RE,IM")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=_parse_complex, required=True,
                       metavar="RE,IM")
        p.add_argument("--tol", type=float, default=default_tol)

    p_eval = sub.add_parser("eval", help="evaluate Phi(z, n, a)")
    add_point_flags(p_eval)
    p_eval.add_argument(
        "--method", default="auto",
        choices=["auto", "series", "integral", "pv", "inverse", "integer-a"],
    )
    p_eval.add_argument("--format", default="plain",
                        choices=["plain", "json", "csv"])
    p_eval.set_defaults(func=_cmd_eval)

    p_cmp = sub.add_parser("compare",
                           help="run every admissible method at one point")
    add_point_flags(p_cmp)
    p_cmp.add_argument("--format", default="plain",
                       choices=["plain", "json", "csv"])
    p_cmp.set_defaults(func=_cmd_compare)

    p_check = sub.add_parser("check", help="certify the identity web")
    p_check.add_argument("--suite", default="all", choices=list(_SUITES))
    p_check.add_argument("--grid", type=int, default=20)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--tol", type=float, default=None)
    p_check.set_defaults(func=_cmd_check)

    p_sweep = sub.add_parser("sweep", help="tabulate Phi over a grid")
    p_sweep.add_argument("--abs-z", type=_parse_range, required=True,
                         metavar="LO:HI:COUNT")
    p_sweep.add_argument("--arg-z", type=_parse_range, required=True,
                         metavar="LO:HI:COUNT")
    p_sweep.add_argument("--a-re", type=_parse_range, required=True,
                         metavar="LO:HI:COUNT")
    p_sweep.add_argument("--a-im", type=_parse_range, required=True,
                         metavar="LO:HI:COUNT")
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--tol", type=float, default=default_tol)
    p_sweep.add_argument("--format", default="csv", choices=["csv", "jsonl"])
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    default_tol = float(os.environ.get("LERCH_TOL", "1e-10"))
    parser = _build_parser(default_tol)
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
