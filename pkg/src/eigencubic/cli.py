"""Command line front end: ``eigencubic <analyze|solve|tables|grass|fit>``.

Exit codes: 0 success, 1 reference mismatch (``tables``), 2 parse error,
3 precondition violation, 4 wrong dimension, 5 numerical failure.

Tensors are built from the unscaled gradient of the cubic; the customary
1/n factor only rescales eigenvalues and is omitted.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from . import corpus, grassmann
from .exact import QQ, field_from_spec, format_rational
from .groebner import GREVLEX, HilbertData, Ideal
from .matrix import NoConvergence
from .poly import ParseError, UnknownVariable, VariableContext, infer_context, parse
from .solve import (NotZeroDimensional, SolverConfig, count_real, rational_recover,
                    solve_projective)
from .tensor import (CubicForm, PartiallySymmetricTensor, analyze, cubic_from_points,
                     regular_ideal)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_PRECONDITION, EXIT_DIMENSION, EXIT_NUMERIC = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- input handling --

def _field(args):
    try:
        return field_from_spec(args.field)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc


def _read_input(args) -> str:
    if getattr(args, "input_file", None):
        with open(args.input_file, encoding="ascii") as fh:
            return fh.read().strip()
    if args.input is None:
        raise CliError("no input given", EXIT_PARSE)
    return args.input


def _load(args) -> tuple[object, str]:
    """The cubic form or tensor named on the command line, with its source text."""
    if getattr(args, "example", None):
        instances = corpus.named_instances()
        if args.example not in instances:
            raise CliError(f"unknown example {args.example!r}; known: {', '.join(instances)}",
                           EXIT_PARSE)
        if args.example == "table2:delta-1-eps0" and args.reduced:
            return corpus.theta_cell_reduced(), args.example
        entry = instances[args.example]
        return corpus.cell_cubic(entry), entry.text
    text = _read_input(args)
    field = _field(args)
    parts = [p for p in text.split(";")]
    if len(parts) > 1:
        n = len(parts) - 1
        ctx = VariableContext.projective(n)
        quadrics = tuple(parse(p, ctx, field) for p in parts)
        try:
            return PartiallySymmetricTensor(quadrics), text
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from exc
    ctx = VariableContext.projective(args.n) if args.n is not None else infer_context(text)
    f = parse(text, ctx, field)
    try:
        return CubicForm(f), text
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc


def _cfg(args) -> SolverConfig:
    return SolverConfig(seed=args.seed, residual_tol=args.tol, real_tol=args.real_tol)


# -- serialisation --

def _num(c) -> str:
    if isinstance(c, int):
        c = mpq(c)
    return format_rational(c) if isinstance(c, type(mpq(0))) else c.field.format(c)


def _float(x: float) -> float:
    v = round(float(x), 12)
    return 0.0 if v == 0 else v


def _complex(z: complex) -> list[float]:
    return [_float(z.real), _float(z.imag)]


def _hilbert(h: HilbertData) -> dict:
    return {"dimension": h.projective_dimension, "degree": h.degree}


def _ideal(I: Ideal, h: HilbertData) -> dict:
    gb = I.groebner(GREVLEX)
    return {"generators": [str(g) for g in gb.elements], **_hilbert(h)}


def _emit(args, payload: dict, out=None):
    out = out or sys.stdout
    payload = {"schemaVersion": SCHEMA_VERSION, **payload}
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        _write_text(payload, out)


def _write_text(payload, out, indent: str = ""):
    for key, value in payload.items():
        if isinstance(value, dict):
            out.write(f"{indent}{key}:\n")
            _write_text(value, out, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.write(f"{indent}{key}:\n")
            for item in value:
                out.write(f"{indent}  -\n")
                _write_text(item, out, indent + "    ")
        else:
            out.write(f"{indent}{key}: {value}\n")


# -- commands --

def cmd_analyze(args) -> int:
    obj, source = _load(args)
    report = analyze(obj)
    _emit(args, {
        "command": "analyze",
        "input": source,
        "field": getattr(report.tensor.field, "name", "QQ"),
        "n": report.tensor.n,
        "delta": report.delta,
        "epsilon": report.epsilon,
        "eigenscheme": _ideal(report.eigen, report.eigen_hilbert),
        "eigenpairScheme": _ideal(report.eigenpair, report.eigenpair_hilbert),
        "irregular": _ideal(report.irregular, report.irregular_hilbert),
        "regular": _ideal(report.regular, report.regular_hilbert),
    })
    return EXIT_OK


def cmd_solve(args) -> int:
    obj, source = _load(args)
    R = regular_ideal(obj)
    try:
        S = solve_projective(R, _cfg(args))
    except NotZeroDimensional as exc:
        raise CliError(f"the regular eigenscheme is not zero-dimensional ({exc}); "
                       "use 'analyze' to inspect it", EXIT_DIMENSION) from exc
    points = []
    for p, m, r in zip(S.points, S.multiplicities, S.residuals):
        exact = rational_recover(p, args.denominator_bound, R)
        points.append({
            "coordinates": [_complex(z) for z in p.coordinates],
            "multiplicity": m,
            "residual": float(f"{r:.3e}"),
            "real": p.is_real(args.real_tol),
            "exact": [format_rational(c) for c in exact] if exact else None,
        })
    _emit(args, {"command": "solve", "input": source, "degree": S.total_degree,
                 "pointCount": len(S.points), "realCount": count_real(S, _cfg(args)),
                 "points": points})
    return EXIT_OK


def _table_rows(which: str):
    if which == "1":
        return [(c.key, c, (c.delta, c.epsilon)) for c in corpus.DIMENSIONS_TERNARY]
    if which == "2":
        return [(c.key, c, (c.delta, c.epsilon)) for c in corpus.DIMENSIONS_QUATERNARY]
    if which == "3":
        return [(f"table3:{r.real_count}", r, r.real_count) for r in corpus.REAL_COUNTS]
    raise CliError("tables takes 1, 2 or 3", EXIT_PARSE)


def cmd_tables(args) -> int:
    cells = []
    failures = 0
    for key, entry, expected in _table_rows(args.which):
        start = time.perf_counter()
        f = corpus.cell_cubic(entry)
        if isinstance(expected, tuple):
            report = analyze(f)
            got = (report.delta, report.epsilon)
            observed = {"delta": got[0], "epsilon": got[1]}
            wanted = {"delta": expected[0], "epsilon": expected[1]}
        else:
            S = solve_projective(regular_ideal(f), _cfg(args))
            got = count_real(S, _cfg(args))
            observed, wanted = {"realCount": got}, {"realCount": expected}
        ok = got == expected
        failures += not ok
        cells.append({"key": key, "cubic": entry.text, "expected": wanted, "observed": observed,
                      "pass": ok, "seconds": round(time.perf_counter() - start, 2)
                      if args.timings else None})
    for c in cells:
        if c["seconds"] is None:
            del c["seconds"]
    _emit(args, {"command": "tables", "table": int(args.which), "passed": len(cells) - failures,
                 "total": len(cells), "cells": cells})
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _matrix_from_file(path: str, field) -> list[list]:
    with open(path, encoding="ascii") as fh:
        data = json.load(fh)
    try:
        return [[field(mpq(str(v))) for v in row] for row in data]
    except ValueError as exc:
        raise CliError(f"bad matrix entry: {exc}", EXIT_PARSE) from exc


def _plane_matrix(args):
    if args.matrix:
        return _matrix_from_file(args.matrix, _field(args))
    obj, _ = _load(args)
    try:
        return grassmann.plane_from_tensor(obj).as_lists()
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from exc


def _rows(M) -> list[list[str]]:
    return [[_num(v) for v in row] for row in M]


def _tensor_payload(T: PartiallySymmetricTensor) -> dict:
    return {"quadrics": [str(q) for q in T.quadrics], "tensor": ";".join(str(q) for q in T.quadrics)}


def cmd_grass(args) -> int:
    sub = args.sub
    if sub == "binary-hurwitz":
        rep = grassmann.compare_conjecture(corpus.HURWITZ_DISPLAY)
        _emit(args, {
            "command": "grass binary-hurwitz",
            "eigendiscriminant": str(rep.eigendiscriminant),
            "hurwitz": str(rep.hurwitz),
            "termCount": len(rep.eigendiscriminant),
            "rawRatio": _num(rep.raw_ratio) if rep.raw_ratio is not None else None,
            "normalizedRatio": _num(rep.normalized_ratio) if rep.normalized_ratio is not None else None,
            "printedTermsDiffering": [{"printed": t, "computedCoefficient": _num(c) if c else "0"}
                                      for t, c in rep.unmatched_printed],
            "computedTermsMissing": [str(grassmann.Polynomial(grassmann.COEFF_CONTEXT, QQ, {e: c}))
                                     for e, c in rep.uncovered_computed],
        })
        return EXIT_OK
    M = _plane_matrix(args)
    if sub == "plane":
        _emit(args, {"command": "grass plane", "basis": grassmann.basis_labels(), "matrix": _rows(M)})
        return EXIT_OK
    if sub == "pluecker":
        coords = grassmann.pluecker_coordinates(M)
        _emit(args, {"command": "grass pluecker", "order": "lexicographic 4-subsets of columns",
                     "basis": grassmann.basis_labels(), "coordinates": [_num(c) for c in coords]})
        return EXIT_OK
    if sub == "check":
        cond = grassmann.check_eigenplane_conditions(M)
        _emit(args, {"command": "grass check",
                     "lambdaSquaredColumnZero": cond.lambda_squared_column_zero,
                     "lambdaBlockNonsingular": cond.lambda_block_nonsingular})
        return EXIT_OK if cond.ok else EXIT_PRECONDITION
    if sub == "recover":
        try:
            T = grassmann.tensor_from_plane(M, _field(args))
        except grassmann.ConditionsViolated as exc:
            raise CliError(str(exc), EXIT_PRECONDITION) from exc
        _emit(args, {"command": "grass recover", **_tensor_payload(T)})
        return EXIT_OK
    if sub == "symmetric":
        T = grassmann.tensor_from_plane(M, _field(args))
        sym = grassmann.is_symmetric_point(T)
        _emit(args, {"command": "grass symmetric", "symmetric": sym,
                     "violations": [list(p) for p in grassmann.symmetry_violations(T)],
                     "cubic": str(grassmann.cubic_witness(T)) if sym else None})
        return EXIT_OK
    raise CliError(f"unknown grass subcommand {sub!r}", EXIT_PARSE)


def _read_points(path: str) -> list[list[mpq]]:
    points = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                points.append([mpq(Fraction(tok.strip())) for tok in line.split(",")])
            except ValueError as exc:
                raise CliError(f"line {lineno}: {exc}", EXIT_PARSE) from exc
    if not points:
        raise CliError("no points given", EXIT_PARSE)
    if len({len(p) for p in points}) != 1:
        raise CliError("points have different lengths", EXIT_PRECONDITION)
    return points


def cmd_fit(args) -> int:
    points = _read_points(args.points)
    n = len(points[0]) - 1
    forms, rank = cubic_from_points(points, n)
    _emit(args, {"command": "fit", "n": n, "pointCount": len(points), "rank": rank,
                 "nullity": len(forms), "cubics": [str(f) for f in forms]})
    return EXIT_OK


# -- argument parsing --

def _common(p: argparse.ArgumentParser, with_input: bool = True):
    p.add_argument("--field", default="rational",
                   help="rational, gaussian, theta or ext:c0,c1,...[@root]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8, help="residual tolerance")
    p.add_argument("--real-tol", type=float, default=1e-6)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    p.set_defaults(format="json")
    if with_input:
        p.add_argument("input", nargs="?", help="cubic, or quadrics q0;q1;...;qn")
        p.add_argument("--input-file")
        p.add_argument("--n", type=int, help="projective dimension (default: inferred)")
        p.add_argument("--example", help="built-in instance, e.g. table2:delta-1-eps0")
        p.add_argument("--reduced", action="store_true",
                       help="use the Q(theta) form of the theta instance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigencubic",
                                     description="Eigenschemes of cubic forms and tensors.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="dimensions and degrees of E, E~, Irr and Reg")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("solve", help="numerical regular eigenpoints and the real count")
    _common(p)
    p.add_argument("--denominator-bound", type=int, default=1000)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("tables", help="recompute the reference tables")
    _common(p, with_input=False)
    p.add_argument("which", choices=["1", "2", "3"])
    p.add_argument("--timings", action="store_true", help="include per-cell seconds")
    p.set_defaults(func=cmd_tables)

    p = subs.add_parser("grass", help="Grassmannian parameterisation")
    p.add_argument("sub", choices=["plane", "pluecker", "check", "recover", "symmetric",
                                   "binary-hurwitz"])
    _common(p)
    p.add_argument("--matrix", help="JSON file with a 4x15 matrix of rationals")
    p.set_defaults(func=cmd_grass)

    p = subs.add_parser("fit", help="cubics whose eigenscheme contains the given points")
    _common(p, with_input=False)
    p.add_argument("points", help="file with one comma-separated point per line")
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"eigencubic: {exc}", file=sys.stderr)
        return exc.code
    except (ParseError, UnknownVariable) as exc:
        print(f"eigencubic: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotZeroDimensional as exc:
        print(f"eigencubic: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except NoConvergence as exc:
        print(f"eigencubic: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"eigencubic: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
