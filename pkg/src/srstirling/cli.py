"""Command-line front end.

Every subcommand emits one record ``{"command", "params", "result",
"method"}``; numbers are always decimal strings so big integers and
rationals survive JSON untouched.

    srstirling stirling2 --set "{1,3,8}" --r 2 --n 8 --k 1
    srstirling matrix --kind second --set odd --r 2 --size 9 --inverse
    srstirling verify mobius --set odd --r 2 --n 4
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import graphcombi as gc
from . import identities, polyseq, posets, riordan, stirling
from .indexset import IndexSet, IndexSetError, parse
from .polynomial import IntPolynomial
from .series import DEFAULT_ORDER

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _set_arg(text: str) -> IndexSet:
    try:
        return parse(text)
    except IndexSetError as e:
        raise argparse.ArgumentTypeError(str(e))


# -- rendering ----------------------------------------------------------------
def _dec(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return _dec(v)
    if isinstance(v, IntPolynomial):
        return {"coefficients": [_dec(c) for c in v.coeffs], "text": str(v)}
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _rows(result) -> tuple[list[str], list[list[str]]]:
    """Header and rows for the csv/plain views."""
    if isinstance(result, IntPolynomial):
        return ["degree", "coefficient"], [[str(i), _dec(c)] for i, c in enumerate(result.coeffs)]
    if isinstance(result, dict):
        return ["key", "value"], [[k, json.dumps(_jsonable(v)) if isinstance(v, (dict, list)) else _dec(v)]
                                  for k, v in result.items()]
    if isinstance(result, list):
        if result and isinstance(result[0], list):
            width = max(len(r) for r in result)
            return (["row"] + [f"c{j}" for j in range(width)],
                    [[str(i)] + [_dec(x) for x in r] + [""] * (width - len(r)) for i, r in enumerate(result)])
        return ["index", "value"], [[str(i), _dec(x)] for i, x in enumerate(result)]
    return ["value"], [[_dec(result)]]


def emit(record: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        obj = dict(record)
        obj["result"] = _jsonable(record["result"])
        obj["params"] = _jsonable(record["params"])
        out.write(json.dumps(obj) + "\n")
        return
    header, rows = _rows(record["result"])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    if isinstance(record["result"], IntPolynomial):
        out.write(str(record["result"]) + "\n")
    elif header == ["value"]:
        out.write(rows[0][0] + "\n")
    elif header[0] == "row":
        for r in rows:
            out.write(" ".join(x for x in r[1:] if x != "") + "\n")
    else:
        for r in rows:
            out.write(" ".join(r) + "\n")


def _record(args, params: dict, result, method: str) -> dict:
    base = {"set": str(args.S), "r": args.r}
    base.update(params)
    return {"command": args.command, "params": base, "result": result, "method": method}


def _ctx(args, n: int = 0) -> stirling.SRContext:
    if n > args.order:
        raise ValueError(f"n = {n} exceeds truncation order {args.order}; raise --order")
    return stirling.SRContext(args.S, args.r, args.order)


# -- compute subcommands ------------------------------------------------------
def cmd_stirling(args):
    ctx = _ctx(args, args.n)
    fn = stirling.stirling2 if args.command == "stirling2" else stirling.stirling1
    if args.k is None:
        result = [fn(ctx, args.n, k) for k in range(args.n + 1)]
    else:
        result = fn(ctx, args.n, args.k)
    return _record(args, {"n": args.n, "k": args.k}, result, "egf")


def cmd_bell(args):
    ctx = _ctx(args, args.n)
    method = args.method
    result = [stirling.bell(ctx, m, method) for m in range(args.n + 1)] if args.upto else stirling.bell(ctx, args.n, method)
    return _record(args, {"n": args.n, "upto": args.upto}, result, method)


def cmd_poly(args):
    ctx = _ctx(args, args.n)
    first = args.command == "factpoly"
    if args.method == "determinant":
        fn = riordan.factorial_poly_determinant if first else riordan.bell_poly_determinant
    else:
        fn = stirling.factorial_polynomial if first else stirling.bell_polynomial
    method = "determinant" if args.method == "determinant" else "sum"
    if args.upto:
        return _record(args, {"n": args.n, "upto": True}, [str(fn(ctx, m)) for m in range(args.n + 1)], method)
    return _record(args, {"n": args.n}, fn(ctx, args.n), method)


def cmd_matrix(args):
    ctx = _ctx(args, args.size - 1)
    if args.kind == "second":
        m = riordan.matrix_T(ctx, args.size) if args.inverse else riordan.matrix_M(ctx, args.size)
    else:
        m = riordan.matrix_U(ctx, args.size) if args.inverse else riordan.matrix_L(ctx, args.size)
    rows = [list(r) for r in m.rows]
    return _record(args, {"kind": args.kind, "inverse": args.inverse, "size": args.size}, rows, "egf")


def _poly_values(args, sum_fn, egf_fn):
    if args.method == "egf":
        s = egf_fn(args.S, args.r, args.mu, args.order)
        vals = [s.egf(m) for m in range(args.n + 1)]
    else:
        vals = [sum_fn(args.S, args.r, args.mu, m, args.order) for m in range(args.n + 1)]
    return vals if args.upto else vals[-1]


def cmd_polyb(args):
    _ctx(args, args.n)
    result = _poly_values(args, polyseq.poly_bernoulli, polyseq.poly_bernoulli_egf)
    return _record(args, {"mu": args.mu, "n": args.n, "upto": args.upto}, result, args.method)


def cmd_polyc(args):
    _ctx(args, args.n)
    if args.kind == "first":
        result = _poly_values(args, polyseq.poly_cauchy_first, polyseq.poly_cauchy_first_egf)
    else:
        result = _poly_values(args, polyseq.poly_cauchy_second, polyseq.poly_cauchy_second_egf)
    return _record(args, {"kind": args.kind, "mu": args.mu, "n": args.n, "upto": args.upto}, result, args.method)


def cmd_orientations(args):
    if args.constrained:
        brute = gc.count_constrained_orientations(args.n1, args.n2, args.r, args.S, guard=args.guard)
        return _record(args, {"n1": args.n1, "n2": args.n2, "constrained": True}, brute, "oracle")
    g = gc.complete_bipartite(args.n1, args.n2)
    n = gc.count_acyclic_orientations(g, guard=args.guard)
    return _record(args, {"n1": args.n1, "n2": args.n2, "graph": "complete_bipartite"}, n, "oracle")


_GRAPHS = {
    "join": lambda n, r: gc.join_complete_empty(n, r),
    "path": lambda n, r: gc.path_graph(n),
    "complete": lambda n, r: gc.complete_graph(n),
    "empty": lambda n, r: gc.empty_graph(n),
}


def cmd_cliqueparts(args):
    g = _GRAPHS[args.graph](args.n, args.r)
    if args.k is None:
        result = gc.clique_partition_total(g, args.S, guard=args.guard)
    else:
        result = gc.clique_partition_count(g, args.k, args.S, guard=args.guard)
    return _record(args, {"graph": args.graph, "n": args.n, "k": args.k}, result, "oracle")


def cmd_oracle(args):
    ctx = _ctx(args, args.n)
    if args.what == "bell":
        result = stirling.oracle_bell(ctx, args.n, guard=args.guard)
    else:
        fn = stirling.oracle_partitions if args.what == "partitions" else stirling.oracle_permutations
        ks = range(args.n + 1) if args.k is None else [args.k]
        vals = [fn(ctx, args.n, k, guard=args.guard) for k in ks]
        result = vals if args.k is None else vals[0]
    return _record(args, {"what": args.what, "n": args.n, "k": args.k}, result, "oracle")


# -- verification -------------------------------------------------------------
def _verify_recurrences(args):
    checked, bad = 0, []
    for name, items in identities.check_all(args.S, args.r, args.n).items():
        checked += 1
        bad += [str(m) for m in items]
    return checked, bad


def _verify_orthogonality(args):
    size = args.n + 1
    ctx = _ctx(args, args.n)
    bad = []
    checked = 0
    for kind in ("second", "first"):
        A = riordan.matrix_M(ctx, size) if kind == "second" else riordan.matrix_L(ctx, size)
        B = riordan.invert(A)
        for name, P in (("A*inv", riordan.multiply(A, B)), ("inv*A", riordan.multiply(B, A))):
            checked += 1
            if P != riordan.TriMatrix.identity(size):
                n, k = next((n, k) for n in range(size) for k in range(n + 1)
                            if P[n, k] != (1 if n == k else 0))
                bad.append(f"{kind} {name} at ({n},{k}): lhs={P[n, k]} rhs={int(n == k)}")
        if 1 in args.S:
            checked += 1
            built = riordan.build(riordan.riordan_pair(ctx, kind), size)
            if built != A:
                bad.append(f"{kind}: Riordan pair disagrees with the entrywise matrix")
            inv = riordan.build(riordan.riordan_pair(ctx, kind).inverse(), size)
            checked += 1
            if inv != B:
                bad.append(f"{kind}: inverse Riordan pair disagrees with forward substitution")
    return checked, bad


def _verify_mobius(args):
    size = args.n + 1
    ctx = _ctx(args, args.n)
    bad = []
    checked = 0
    for kind in args.kinds:
        P = posets.build_poset(args.S, args.r, args.n, ordered=(kind == "first"),
                               allow_bounded=args.allow_bounded, guard=args.guard)
        inv = riordan.matrix_T(ctx, size) if kind == "second" else riordan.matrix_U(ctx, size)
        for k in range(args.n + 1):
            checked += 1
            lhs, rhs = P.column_sum(k), inv[args.n, k]
            if lhs != rhs:
                bad.append(f"mobius[{kind}](S={args.S}, r={args.r}, n={args.n}, k={k}): lhs={lhs} rhs={_dec(rhs)}")
    return checked, bad


def _verify_orientations(args):
    bad = []
    checked = 0
    for n1 in range(1, args.n1 + 1):
        for n2 in range(1, args.n2 + 1):
            checked += 1
            lhs = gc.count_constrained_orientations(n1, n2, args.r, args.S, guard=args.guard)
            rhs = gc.constrained_orientation_formula(n1, n2, args.r, args.S)
            if lhs != rhs:
                bad.append(f"orientations(S={args.S}, n1={n1}, n2={n2}, r={args.r}): lhs={lhs} rhs={rhs}")
    return checked, bad


def _verify_polyegf(args):
    bad = []
    checked = 0
    for fam in polyseq.SUMS:
        for mu in range(-2, 3):
            checked += 1
            for n, a, b in polyseq.egf_mismatches(args.S, args.r, mu, args.n, fam):
                bad.append(f"{fam}(S={args.S}, r={args.r}, mu={mu}, n={n}): lhs={a} rhs={b}")
    return checked, bad


_VERIFIERS = {
    "recurrences": _verify_recurrences,
    "orthogonality": _verify_orthogonality,
    "mobius": _verify_mobius,
    "orientations": _verify_orientations,
    "polyegf": _verify_polyegf,
}


def cmd_verify(args):
    args.kinds = ["second", "first"] if args.kind == "both" else [args.kind]
    checked, bad = _VERIFIERS[args.target](args)
    result = {"target": args.target, "checks": checked, "mismatches": len(bad),
              "first_counterexample": bad[0] if bad else None, "ok": not bad}
    rec = _record(args, {"target": args.target, "n": args.n}, result, "egf vs oracle")
    rec["_failed"] = bool(bad)
    return rec


# -- parser -------------------------------------------------------------------
def _globals() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--set", dest="S", type=_set_arg, default=parse("all"), metavar="GRAMMAR",
                   help="index set: all | odd | even | 1..m | m.. | mod q | {a,b,c} (default all)")
    g.add_argument("--r", type=int, default=0, help="number of special elements (default 0)")
    g.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    g.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    g.add_argument("--guard", type=int, default=None, help="override enumeration guards")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    parser = _Parser(prog="srstirling", description="(S,r)-Stirling numbers, matrices and related counts.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    for name, kind in (("stirling2", "second"), ("stirling1", "first")):
        sp = add(name, cmd_stirling, f"{kind}-kind (S,r)-Stirling numbers")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, default=None, help="omit for the whole row")

    sp = add("bell", cmd_bell, "(S,r)-Bell numbers")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--upto", action="store_true", help="emit B_0..B_n")
    sp.add_argument("--method", choices=("sum", "egf"), default="sum")

    for name, help_ in (("bellpoly", "(S,r)-Bell polynomials"), ("factpoly", "(S,r)-factorial polynomials")):
        sp = add(name, cmd_poly, help_)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--upto", action="store_true")
        sp.add_argument("--method", choices=("sum", "determinant"), default="sum")

    sp = add("matrix", cmd_matrix, "Stirling matrices M, L and inverses T, U")
    sp.add_argument("--kind", choices=("second", "first"), default="second")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--size", type=int, default=9)

    sp = add("polyb", cmd_polyb, "(S,r)-poly-Bernoulli numbers")
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--upto", action="store_true")
    sp.add_argument("--method", choices=("sum", "egf"), default="sum")

    sp = add("polyc", cmd_polyc, "(S,r)-poly-Cauchy numbers")
    sp.add_argument("--kind", choices=("first", "second"), default="first")
    sp.add_argument("--mu", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--upto", action="store_true")
    sp.add_argument("--method", choices=("sum", "egf"), default="sum")

    sp = add("orientations", cmd_orientations, "acyclic orientations by brute force")
    sp.add_argument("--constrained", action="store_true", help="hat-graph orientations under [S] and [r]")
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--n2", type=int, required=True)

    sp = add("cliqueparts", cmd_cliqueparts, "partitions of a graph into cliques with sizes in S")
    sp.add_argument("--graph", choices=sorted(_GRAPHS), default="join", help="join is K_n + E_r")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=None, help="number of cliques; omit for the total")

    sp = add("verify", cmd_verify, "cross-check computed values against independent paths")
    sp.add_argument("target", choices=sorted(_VERIFIERS))
    sp.add_argument("--n", type=int, default=6, help="largest n (or matrix row) checked")
    sp.add_argument("--kind", choices=("second", "first", "both"), default="both", help="mobius only")
    sp.add_argument("--n1", type=int, default=2, help="orientations only")
    sp.add_argument("--n2", type=int, default=2, help="orientations only")
    sp.add_argument("--allow-bounded", action="store_true",
                    help="accept sets whose +1-monoid check only succeeds up to a bound")

    sp = add("oracle", cmd_oracle, "direct enumeration counts")
    sp.add_argument("what", choices=("partitions", "permutations", "bell"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, default=None)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        err.write(str(e) + "\n")
        return EXIT_USAGE
    except SystemExit as e:        # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    if args.guard is not None:
        err.write(f"warning: enumeration guard overridden to {args.guard}; large values may run for a long time\n")
    try:
        rec = args.func(args)
    except (ValueError, ArithmeticError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    failed = rec.pop("_failed", False)
    emit(rec, args.format, out)
    if failed:
        err.write(f"mismatch: {rec['result']['first_counterexample']}\n")
        return EXIT_MISMATCH
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
