"""Command-line front end.

    mahler solve --input job.json [--out result.json] [--format text|json]
    mahler entry-eq --input job.json --i I --j J
    mahler verify --input job.json --basis result.json

A job file looks like
    {"p": 2, "field": {"kind": "rationals"}, "coeffs": ["1", "z-1", "-2*z"], "order": 9}

Exit codes: 0 success, 1 input error (or failed verification),
2 unsupported field extension.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import InputError, MahlerError, UnsupportedExtension
from .fields import field_from_json
from .newton import MahlerEquation, build_companion
from .parse import parse_expression
from .solver import BasisResult, entry_equation, solve_equation, verify_basis
from .window import admissible_pair


@dataclass
class JobSpec:
    p: int
    field: object
    coeffs: list
    order: int
    equation: MahlerEquation
    outputs: tuple = ("basis",)
    fmt: str = "text"


def parse_job(source):
    """Build a JobSpec from a dict, a JSON string or a path to a JSON file."""
    if isinstance(source, dict):
        obj = source
    else:
        text = source
        if not str(source).lstrip().startswith("{"):
            try:
                with open(source, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError("cannot read job file: %s" % exc) from None
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("malformed JSON: %s (line %d, column %d)"
                             % (exc.msg, exc.lineno, exc.colno)) from None
    if not isinstance(obj, dict):
        raise InputError("job must be a JSON object")
    for key in ("p", "coeffs"):
        if key not in obj:
            raise InputError("job is missing %r" % key)
    p = obj["p"]
    if isinstance(p, bool) or not isinstance(p, int) or p < 2:
        raise InputError("p must be an integer >= 2, got %r" % (p,))
    field = field_from_json(obj.get("field", {"kind": "rationals"}))
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list) or not all(isinstance(c, str) for c in coeffs):
        raise InputError("coeffs must be a list of expression strings")
    parsed = []
    for k, c in enumerate(coeffs):
        try:
            parsed.append(parse_expression(c, field))
        except InputError as exc:
            raise InputError("coefficient a_%d: %s" % (k, exc)) from None
    order = obj.get("order", 10)
    if isinstance(order, bool) or not isinstance(order, int) or order < 0:
        raise InputError("order must be a non-negative integer")
    eq = MahlerEquation(p, parsed, field)
    outputs = tuple(obj.get("outputs", ("basis",)))
    return JobSpec(p, field, coeffs, order, eq, outputs, obj.get("format", "text"))


def run_and_emit(spec, out=None, fmt=None, stream=None):
    """Solve the job and write the basis; returns the exit code."""
    stream = stream or sys.stdout
    fmt = fmt or spec.fmt
    res = solve_equation(spec.equation, spec.order)
    if fmt == "json":
        text = json.dumps(res.to_json(), indent=2, ensure_ascii=False) + "\n"
    else:
        text = res.format() + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)
    return 0


def _cmd_solve(args, stream):
    spec = parse_job(args.input)
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") else spec.fmt
    return run_and_emit(spec, args.out, fmt, stream)


def _cmd_entry(args, stream):
    spec = parse_job(args.input)
    m = spec.equation.order
    if not (1 <= args.i <= m and 1 <= args.j <= m):
        raise InputError("entry indices must lie in 1..%d" % m)
    sys_ = build_companion(spec.equation)
    pair = admissible_pair(sys_)
    eq = entry_equation(pair, sys_, args.i - 1, args.j - 1)
    stream.write(repr(eq) + "\n")
    return 0


def _cmd_verify(args, stream):
    spec = parse_job(args.input)
    try:
        with open(args.basis, encoding="utf-8") as fh:
            res = BasisResult.from_json(json.load(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError("cannot read basis file: %s" % exc) from None
    rep = verify_basis(spec.equation, res)
    stream.write(str(rep) + "\n")
    return 0 if rep.ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="mahler", description="Bases of solutions of linear Mahler equations.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    s = sub.add_parser("solve", help="compute a basis of solutions")
    s.add_argument("--input", required=True)
    s.add_argument("--out")
    s.add_argument("--format", choices=("text", "json"))
    s.set_defaults(run=_cmd_solve)
    e = sub.add_parser("entry-eq", help="Mahler equation for an entry of the gauge matrix")
    e.add_argument("--input", required=True)
    e.add_argument("--i", type=int, required=True)
    e.add_argument("--j", type=int, required=True)
    e.set_defaults(run=_cmd_entry)
    v = sub.add_parser("verify", help="check a stored basis against the equation")
    v.add_argument("--input", required=True)
    v.add_argument("--basis", required=True)
    v.set_defaults(run=_cmd_verify)
    return ap


def main(argv=None, stream=None, err=None):
    stream = stream or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, stream)
    except UnsupportedExtension as exc:
        err.write("unsupported extension: %s\n" % exc)
        return 2
    except InputError as exc:
        err.write("input error: %s\n" % exc)
        return 1
    except MahlerError as exc:
        err.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
