"""Command-line front end.

Exit codes: 0 pass/true/found, 1 fail/false/none, 2 usage or configuration
error, 3 inconclusive search.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import analysis, boolfn, dimacs, generators, search, sigma3
from .boolfn import BoolFn, parity_fn
from .cnf import Encoding, computes, encodes
from .solver import SolverConfigError, SolverError, solve_external

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _function(args) -> BoolFn:
    if getattr(args, "fn_file", None):
        return boolfn.loads(_read(args.fn_file))
    if args.fn is None or args.n is None:
        raise UsageError("need --fn parity --n <n> or --fn-file")
    if args.fn == "parity":
        f = parity_fn(args.n)
    elif args.fn == "nparity":
        f = ~parity_fn(args.n)
    else:
        raise UsageError(f"unknown function {args.fn!r}")
    return f


def _add_fn(p, required_n=False):
    p.add_argument("--fn", choices=["parity", "nparity"], default="parity")
    p.add_argument("--n", type=int, required=required_n)
    p.add_argument("--fn-file", help="truth table file ('fn n=<n>' format)")


def cmd_gen(args) -> int:
    if args.kind == "block":
        if args.n is None or args.s is None:
            raise UsageError("gen block needs --n and --s")
        part = [int(b) for b in args.partition.split(",")] if args.partition else None
        E = generators.block_parity_encoding(args.n, args.s, part)
    elif args.kind == "canonical":
        f = _function(args)
        E = Encoding(f.n, 0, generators.canonical_cnf(f))
    else:
        if not args.circuit:
            raise UsageError("gen tseitin needs --circuit FILE")
        c = generators.loads_circuit(_read(args.circuit))
        E = generators.tseitin(c, propagate_output=not args.no_propagate)
    _write(dimacs.write_dimacs(E), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    E = dimacs.parse_dimacs(_read(args.file))
    f = _function(args)
    if f.n != E.n:
        raise UsageError(f"function arity {f.n} does not match encoding n={E.n}")
    ok = computes(E.cnf, f) if E.s == 0 else encodes(E, f)
    print(f"{'computes' if E.s == 0 else 'encodes'} = {str(ok).lower()}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_expand(args) -> int:
    E = dimacs.parse_dimacs(_read(args.file))
    obj = sigma3.expand_circuit(E) if args.mode == "circuit" else sigma3.expand_formula(E)
    _write(sigma3.dumps(obj), args.output)
    return EXIT_OK


def cmd_convert(args) -> int:
    obj = sigma3.loads(_read(args.file))
    E = sigma3.circuit_to_encoding(obj) if isinstance(obj, sigma3.Sigma3Circuit) else sigma3.formula_to_encoding(obj)
    _write(dimacs.write_dimacs(E), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    E = dimacs.parse_dimacs(_read(args.file))
    f = _function(args)
    if f.n != E.n:
        raise UsageError(f"function arity {f.n} does not match encoding n={E.n}")
    if not encodes(E, f):
        print("encodes = false")
        return EXIT_FALSE
    eps = Fraction(args.eps) if args.eps else Fraction(1, E.n)
    ok = True
    print(f"encodes = true\nn = {E.n}\ns = {E.s}\nm = {E.m}\nk = {E.k}")
    if boolfn.is_fully_sensitive(f):
        for rep in analysis.weight_reports(E, f.ones()):
            print("weight " + rep.format())
        hl = analysis.heavy_light_check(E, f, eps)
        ok &= hl["heavy_pass"] and hl["light_pass"]
        print(f"heavy_light eps={eps} H={hl['H']} L={hl['L']} "
              f"heavy_pass={str(hl['heavy_pass']).lower()} light_pass={str(hl['light_pass']).lower()}")
    width_ok = analysis.check_width_bound(E)
    ok &= width_ok
    print(f"width_bound k*(s+1) >= n: {str(width_ok).lower()}")
    sm = analysis.check_sm_bound(E, eps)
    print("sm_bound: " + ("n/a" if sm is None else str(sm).lower()))
    ok &= sm is not False
    phi = sigma3.expand_formula(E)
    for j, Fj in enumerate(phi.branches):
        count, bound, passed = analysis.check_isolated_bound(Fj, max(Fj.width, 1))
        ok &= passed
        weights = analysis.plain_weights(Fj)
        mu_ok = all(analysis.check_weight_bound(Fj, Fraction(i, 4), weights)[2] for i in range(4 * E.n + 1))
        ok &= mu_ok
        print(f"branch {j}: isolated={count} isolated_bound={bound:g} isolated_pass={str(passed).lower()} "
              f"weight_pass={str(mu_ok).lower()}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_bounds(args) -> int:
    eps = Fraction(args.eps) if args.eps else None
    sys.stdout.write(analysis.bounds_report(args.n, args.s, eps).format())
    return EXIT_OK


def cmd_search(args) -> int:
    f = _function(args)
    cfg = search.SearchConfig(
        f, args.s, args.m_max, args.k_max if args.k_max is not None else f.n + args.s,
        mode=args.mode, canonicalize=not args.no_canonicalize, max_nodes=args.max_nodes,
        solver=args.solver, workers=args.workers)
    res = search.find_encoding(cfg)
    sys.stdout.write(res.format())
    if res.found is not None:
        return EXIT_OK
    return EXIT_FALSE if res.exhausted else EXIT_INCONCLUSIVE


def cmd_solve(args) -> int:
    doc = dimacs.read_document(_read(args.file))
    res = solve_external(doc, args.solver, timeout=args.timeout)
    print("s SATISFIABLE" if res.sat else "s UNSATISFIABLE")
    if res.sat:
        bits = res.model.bits
        print("v " + " ".join(str(v if (bits >> (v - 1)) & 1 else -v) for v in range(1, doc.n_vars + 1)) + " 0")
    return EXIT_OK if res.sat else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xorenc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an encoding as DIMACS")
    g.add_argument("kind", choices=["block", "canonical", "tseitin"])
    _add_fn(g)
    g.add_argument("--s", type=int)
    g.add_argument("--partition", help="comma-separated block sizes")
    g.add_argument("--circuit", help="xor-circuit file for tseitin")
    g.add_argument("--no-propagate", action="store_true", help="keep output gate variable and add a unit clause")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check that a DIMACS file computes/encodes a function")
    v.add_argument("file")
    _add_fn(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", help="expand an encoding into a depth-3 formula or circuit")
    e.add_argument("file")
    e.add_argument("--mode", choices=["formula", "circuit"], default="formula")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_expand)

    c = sub.add_parser("convert", help="convert sigma3 text back into an encoding")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_convert)

    a = sub.add_parser("analyze", help="weights, heavy/light split and isolated-point bound checks")
    a.add_argument("file")
    _add_fn(a)
    a.add_argument("--eps", help="rational epsilon, default 1/n")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="lower and upper bounds for (n, s)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--s", type=int, required=True)
    b.add_argument("--eps", help="rational epsilon, default 1/n")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="search for a small encoding")
    _add_fn(s)
    s.add_argument("--s", type=int, default=0)
    s.add_argument("--m-max", type=int, required=True)
    s.add_argument("--k-max", type=int)
    s.add_argument("--mode", choices=["exhaustive", "cegar"], default="exhaustive")
    s.add_argument("--no-canonicalize", action="store_true")
    s.add_argument("--max-nodes", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--solver")
    s.set_defaults(func=cmd_search)

    so = sub.add_parser("solve", help="run an external SAT solver on a DIMACS file")
    so.add_argument("file")
    so.add_argument("--solver", help="solver executable (overrides $XORENC_SAT_SOLVER)")
    so.add_argument("--timeout", type=float)
    so.set_defaults(func=cmd_solve)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, SolverConfigError, search.SearchLimitError) as exc:
        print(f"xorenc {args.command}: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, SolverError) as exc:
        print(f"xorenc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
