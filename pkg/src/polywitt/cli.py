"""Command-line front end.

Every command parses its inputs, calls the library and prints or writes the
result.  Exit codes: 0 success, 1 failed invariant, 2 usage or schema error,
3 cap exceeded, 4 parameter mismatch, 5 range error.
"""
from __future__ import annotations

import argparse
import ast
import json
import sys
from pathlib import Path
from typing import Sequence

from .base_ring import (MAX_LENGTH, FiniteField, WittScalar, scalar_frobenius, scalar_restrict,
                        scalar_verschiebung, teichmuller_scalar, to_zpn)
from .cocycle import solve_cocycles, verify_cocycle_identity
from .errors import CapExceeded, ParameterMismatch, RangeError, SchemaError, WittError
from .orbits import enumerate_aperiodic_necklaces
from .suites import SUITES, SuiteConfig, make_field, run_suite
from .witt_functor import BasedSpace, LinearMap, WittElement, apply_map, restriction, teichmuller
from .witt_structure import frobenius_map, multiply, pairing, tau, verschiebung

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_MISMATCH, EXIT_RANGE = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    """Bad command line or unparsable expression."""


# -- classical scalars -------------------------------------------------------------------

_UNARY = {"F": scalar_frobenius, "V": scalar_verschiebung, "R": scalar_restrict,
          "restrict": scalar_restrict}


def evaluate_expression(expr: str, field: FiniteField, n: int) -> WittScalar:
    """Evaluate an expression in +, -, *, **, F, V, R, w (Teichmuller) and
    coordinate lists [a0, a1, ...].  Bare integers are images of Z and take the
    length of whatever they are combined with, defaulting to n."""
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise UsageError(f"cannot parse {expr!r}: {exc.msg}") from exc

    def as_scalar(v):
        return WittScalar.from_int(field, n, v) if isinstance(v, int) else v

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.List):
            return WittScalar.make(field, [_const(e) for e in node.elts])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Pow) and isinstance(b, int) and b >= 0:
                return a**b
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and len(node.args) == 1 and not node.keywords:
            name = node.func.id
            if name in ("w", "omega"):
                return teichmuller_scalar(field, field.element(_const(node.args[0])), n)
            if name in _UNARY:
                return _UNARY[name](as_scalar(ev(node.args[0])))
        raise UsageError(f"unsupported syntax in {expr!r}: {ast.dump(node)[:60]}")

    return as_scalar(ev(tree))


def _const(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.List):
        return [_const(e) for e in node.elts]
    raise UsageError("coordinates must be integer literals")


def cmd_classical(p: int, n: int, q: int | None, expr: str, modulus=None) -> dict:
    if not 1 <= n <= MAX_LENGTH:
        raise RangeError(f"length {n} outside 1..{MAX_LENGTH}")
    field = make_field(p, q, modulus)
    a = evaluate_expression(expr, field, n)
    out = {"scalar": a.to_dict(), "coords": [field.serialize(c) for c in a.coords]}
    if field.d == 1:
        out["value"] = to_zpn(a)
    return out


# -- element verbs -----------------------------------------------------------------------

ELEMENT_VERBS = ("teichmuller", "add", "neg", "mul", "apply", "restrict", "V", "F", "tau", "pair")


def load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def load_element(path: str) -> WittElement:
    return WittElement.from_dict(load_json(path))


def parse_vector(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc


def parse_matrix(text: str) -> list[list[int]]:
    return [parse_vector(r) for r in text.split(";")]


def cmd_element(verb: str, inputs: Sequence[WittElement], *, field: FiniteField | None = None,
                m: int | None = None, vec: Sequence[int] | None = None,
                labels: Sequence[str] | None = None, level: int = 0,
                fmap: LinearMap | None = None, split: int = 1):
    """Run one element verb; returns a WittElement or, for ``pair``, a WittScalar."""
    need = {"teichmuller": 0, "add": 2, "neg": 1, "mul": 2, "apply": 1, "restrict": 1,
            "V": 1, "F": 1, "tau": 1, "pair": 2}
    if verb not in need:
        raise UsageError(f"unknown verb {verb!r}")
    if len(inputs) != need[verb]:
        raise UsageError(f"{verb} takes {need[verb]} input file(s), got {len(inputs)}")
    if verb == "teichmuller":
        if field is None or m is None or vec is None:
            raise UsageError("teichmuller needs --p/--q, --m and --vec")
        space = BasedSpace(field, tuple(labels)) if labels else \
            BasedSpace.standard(field, len(vec))
        return teichmuller(space, vec, m, level=level)
    x = inputs[0]
    if verb == "add":
        return x + inputs[1]
    if verb == "neg":
        return -x
    if verb == "mul":
        return multiply(x, inputs[1])
    if verb == "apply":
        if fmap is None:
            raise UsageError("apply needs --map or --matrix")
        return apply_map(fmap, x)
    if verb == "restrict":
        return restriction(x)
    if verb == "V":
        return verschiebung(x)
    if verb == "F":
        return frobenius_map(x)
    if verb == "tau":
        return tau(x, split)
    return pairing(x, inputs[1])


# -- verify, necklaces, cocycles ------------------------------------------------------------

def cmd_verify(cfg: SuiteConfig, fmt: str = "text") -> tuple[str, int]:
    """Run one suite, or every suite for ``cfg.suite == "all"``; returns (report, exit)."""
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    if any(s not in SUITES for s in names):
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from all, {', '.join(SUITES)}")
    results = [run_suite(SuiteConfig(s, cfg.p, cfg.q, cfg.m, cfg.dim, cfg.seed, cfg.cases,
                                      cfg.modulus)) for s in names]
    if fmt == "json":
        body = [json.loads(r.json()) for r in results]
        report = json.dumps(body[0] if len(body) == 1 else body, indent=2, sort_keys=True) + "\n"
    else:
        report = "".join(r.text() for r in results)
    return report, EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_necklaces(b: int, p: int, i: int) -> list[dict]:
    return [n.to_dict() for n in enumerate_aperiodic_necklaces(b, p, i)]


def cmd_cocycle(p: int, depth: int) -> list[dict]:
    cs = solve_cocycles(p, depth)
    for n in range(1, depth + 1):
        if not verify_cocycle_identity(cs, n):
            raise WittError(f"cocycle identity fails at depth {n}")
    return [c.to_dict() for c in cs]


# -- argument parsing ------------------------------------------------------------------------

def _field_args(ap: argparse.ArgumentParser, p_required: bool = False) -> None:
    ap.add_argument("--p", type=int, required=p_required, help="characteristic (2, 3 or 5)")
    ap.add_argument("--q", type=int, help="field size p or p^2 (default p)")
    ap.add_argument("--modulus", help="monic quadratic for q = p^2, e.g. 1,1,1")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polywitt",
                                 description="Witt vectors of based F_q vector spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classical", help="evaluate a W_n(F_q) expression")
    _field_args(c, True)
    c.add_argument("--n", type=int, required=True, help="Witt length")
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("expr")

    e = sub.add_parser("element", help="compute with serialized W_m(E) elements")
    e.add_argument("verb", choices=ELEMENT_VERBS)
    _field_args(e)
    e.add_argument("--m", type=int)
    e.add_argument("--vec", help="comma-separated coordinates for teichmuller")
    e.add_argument("--labels", help="comma-separated basis labels for teichmuller")
    e.add_argument("--level", type=int, default=0)
    e.add_argument("--in", dest="inputs", action="append", default=[], help="input file")
    e.add_argument("--map", help="LinearMap file for apply")
    e.add_argument("--matrix", help="rows separated by ';' for apply (target labels t0, t1, ...)")
    e.add_argument("--split", type=int, default=1, help="number of leading factors moved by tau")
    e.add_argument("--out", help="output file")
    e.add_argument("--format", choices=("json", "text"), default="text")

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", default="all", help=f"all or one of {', '.join(SUITES)}")
    _field_args(v)
    v.add_argument("--m", type=int, help="largest m in the grid")
    v.add_argument("--dim", type=int, help="largest dim E in the grid")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=20, help="random cases per configuration")
    v.add_argument("--out", help="write the full report here")
    v.add_argument("--format", choices=("json", "text"), default="text")

    n = sub.add_parser("necklaces", help="aperiodic necklaces of length p^i")
    n.add_argument("--dim", "--b", dest="b", type=int, required=True, help="alphabet size")
    n.add_argument("--p", type=int, required=True)
    n.add_argument("--i", type=int, required=True)
    n.add_argument("--out")
    n.add_argument("--format", choices=("json", "text"), default="text")

    k = sub.add_parser("cocycle", help="solve and verify the universal cocycles c_1..c_N")
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--N", "--m", dest="depth", type=int, required=True)
    k.add_argument("--out", help="directory for c_1.json, c_2.json, ...")
    k.add_argument("--format", choices=("json", "text"), default="text")
    return ap


def _modulus(text: str | None):
    return None if text is None else tuple(parse_vector(text))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    if args.command == "classical":
        res = cmd_classical(args.p, args.n, args.q, args.expr, _modulus(args.modulus))
        if args.format == "json":
            print(json.dumps(res, sort_keys=True))
        else:
            print("coords", tuple(res["coords"]))
            if "value" in res:
                print("value", res["value"])
        return EXIT_OK

    if args.command == "element":
        inputs = [load_element(path) for path in args.inputs]
        field = None
        if args.p is not None or args.q is not None:
            p = args.p or next(x for x in (2, 3, 5) if args.q in (x, x * x))
            field = make_field(p, args.q, _modulus(args.modulus))
        fmap = None
        if args.map:
            fmap = LinearMap.from_dict(load_json(args.map), inputs[0].field if inputs else None)
        elif args.matrix:
            if not inputs:
                raise UsageError("--matrix needs an input element")
            rows = parse_matrix(args.matrix)
            src = inputs[0].space
            fmap = LinearMap.make(src, BasedSpace.standard(src.field, len(rows), "t"), rows)
        res = cmd_element(args.verb, inputs, field=field, m=args.m,
                          vec=parse_vector(args.vec) if args.vec else None,
                          labels=args.labels.split(",") if args.labels else None,
                          level=args.level, fmap=fmap, split=args.split)
        if isinstance(res, WittScalar):
            data = res.to_dict()
            table = f"  {list(res.coords)}"
        else:
            data = res.to_dict()
            table = res.table()
        text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
        if args.out:
            _emit(text, args.out)
        if args.format == "json" and not args.out:
            sys.stdout.write(text)
        else:
            print(table)
        return EXIT_OK

    if args.command == "verify":
        cfg = SuiteConfig(args.suite, args.p, args.q, args.m, args.dim, args.seed, args.cases,
                          _modulus(args.modulus))
        report, code = cmd_verify(cfg, args.format)
        if args.out:
            _emit(report, args.out)
            print("FAIL" if code else "ok", f"report written to {args.out}")
        else:
            sys.stdout.write(report)
        return code

    if args.command == "necklaces":
        res = cmd_necklaces(args.b, args.p, args.i)
        if args.format == "json":
            _emit(json.dumps(res) + "\n", args.out)
        else:
            lines = [" ".join(map(str, r["letters"])) for r in res]
            _emit("\n".join(lines + [f"# {len(res)} necklaces"]) + "\n", args.out)
        return EXIT_OK

    if args.command == "cocycle":
        res = cmd_cocycle(args.p, args.depth)
        if args.out:
            d = Path(args.out)
            d.mkdir(parents=True, exist_ok=True)
            for c in res:
                (d / f"c_{c['i']}.json").write_text(json.dumps(c, indent=2) + "\n",
                                                   encoding="utf-8")
        if args.format == "json":
            print(json.dumps(res))
        else:
            for c in res:
                print(f"c_{c['i']}: {len(c['terms'])} terms, identity verified")
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _run(args)
    except (UsageError, WittError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code(exc)


def exit_code(exc: Exception) -> int:
    for kind, code in ((UsageError, EXIT_USAGE), (SchemaError, EXIT_USAGE),
                       (CapExceeded, EXIT_CAP), (ParameterMismatch, EXIT_MISMATCH),
                       (RangeError, EXIT_RANGE)):
        if isinstance(exc, kind):
            return code
    return EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
