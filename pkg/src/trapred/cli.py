"""Command-line interface: ``trapred {bound,scan,construct,oracle,table1}``.

Exit codes: 0 success or clean scan, 1 violations found, 2 usage/domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bounds, construct, gf2core, oracle, trapscan
from .codecs import CATALOG_NAMES, catalog, emit_alist, read_matrix
from .errors import TrapredError, UnknownCodeError
from .gf2core import LinearCode, minimum_distance
from .trapscan import TrapProfile

TABLE1_ROWS = ((6, 5), (8, 5), (12, 5), (14, 5))
MARGULIS_N, MARGULIS_K = 2640, 1320

EPILOG = """\
environment:
  TRAPRED_ENUM_LIMIT_BITS     log2 of the largest codeword enumeration (default 24)
  TRAPRED_SCAN_WARN_SUBSETS   subset count above which scans carry a warning (default 10^7)
  TRAPRED_ORACLE_NODES        search-node budget of the exhaustive oracle (default 5*10^6)

exit codes: 0 success / clean, 1 violations found, 2 usage or domain error
"""


class UsageError(Exception):
    pass


def _budgets() -> dict:
    return {
        "enum_limit_bits": gf2core.ENUMERATION_LIMIT_BITS,
        "scan_warn_subsets": trapscan.SCAN_WARN_SUBSETS,
        "oracle_node_budget": oracle.DEFAULT_NODE_BUDGET,
    }


def _envelope(command: str, result: dict, *, seed: Optional[int] = None,
              mode: Optional[str] = None, assumptions: Sequence[str] = ()) -> dict:
    return {
        "command": command,
        "seed": seed,
        "mode": mode,
        "assumptions": list(assumptions),
        "budgets": _budgets(),
        "result": result,
    }


def _dump_json(obj: dict, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=True, default=str)
    out.write("\n")


def _csv(rows: Sequence[Sequence], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    for r in rows:
        w.writerow(r)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _load_code(source: str) -> LinearCode:
    """A catalog name, or a path to a parity-check matrix in alist/dense form."""
    try:
        return catalog(source)
    except UnknownCodeError:
        if source != "-" and not Path(source).exists():
            raise
    H = read_matrix(_read_input(source))
    code = LinearCode.from_parity_check(H, name=source)
    if code.k >= 1 and code.k <= gf2core.ENUMERATION_LIMIT_BITS:
        code = code.with_distance(minimum_distance(code), True)
    return code


# ---------------------------------------------------------------------------
# subcommands


def cmd_bound(args, out) -> int:
    fam = args.family
    if fam == "gv":
        if args.n is None or args.k is None or args.d is None:
            raise UsageError("gv needs -n, -k and -d")
        holds = bounds.gv_check(args.n, args.k, args.d)
        result = {"family": "gv", "params": {"n": args.n, "k": args.k, "d": args.d}, "holds": holds}
        if args.format == "json":
            _dump_json(_envelope("bound", result, mode=bounds.EXACT), out)
        elif args.format == "csv":
            _csv([("family", "n", "k", "d", "holds"), ("gv", args.n, args.k, args.d, holds)], out)
        else:
            out.write(f"gv n={args.n} k={args.k} d={args.d}: holds={str(holds).lower()}\n")
        return 0

    for flag in ("n", "k", "a", "b"):
        if getattr(args, flag) is None:
            raise UsageError(f"--family {fam} needs -{flag}")
    d_exact = not args.d_unverified
    if fam == "theorem1":
        rep = bounds.theorem1_bound(args.n, args.k, args.a, args.b, d=args.d,
                                    d_exact=d_exact, mode=args.mode)
    elif fam == "lll":
        rep = bounds.lll_bound(args.n, args.k, args.a, args.b, d=args.d, d_exact=d_exact)
    else:
        holds, lhs = bounds.corollary2_check(args.n, args.k, args.a, args.b, mode=args.mode,
                                             d=args.d, d_exact=d_exact)
        mode = bounds.resolve_mode(args.mode, args.n - args.k, args.n - args.k)
        result = {"family": "corollary2",
                  "params": {"n": args.n, "k": args.k, "a": args.a, "b": args.b, "d": args.d},
                  "holds": holds, "lhs": float(lhs), "lhs_exact": str(lhs) if mode == bounds.EXACT else None}
        assumptions = bounds.distance_assumptions(args.a, args.d, d_exact, (args.d or 0) - 1,
                                                   "a <= d-1", True)
        if args.format == "json":
            _dump_json(_envelope("bound", result, mode=mode, assumptions=assumptions), out)
        elif args.format == "csv":
            _csv([("family", "n", "k", "a", "b", "holds", "lhs"),
                  ("corollary2", args.n, args.k, args.a, args.b, holds, float(lhs))], out)
        else:
            out.write(f"corollary2 n={args.n} k={args.k} a={args.a} b={args.b}: "
                      f"holds={str(holds).lower()} lhs={float(lhs):.6g} ({mode})\n")
            for note in assumptions:
                out.write(f"  assumption: {note}\n")
        return 0

    if args.format == "json":
        _dump_json(_envelope("bound", rep.as_dict(), mode=rep.mode, assumptions=rep.assumptions), out)
    elif args.format == "csv":
        _csv([("family", "n", "k", "a", "b", "value", "optimizer_t", "mode"),
              (rep.family, args.n, args.k, args.a, args.b, rep.value, rep.optimizer_t, rep.mode)], out)
    else:
        line = f"{rep.family} n={args.n} k={args.k} a={args.a} b={args.b}: value={rep.value}"
        if rep.optimizer_t is not None:
            line += f" t={rep.optimizer_t}"
        if "lll_m" in rep.extra:
            line += f" m={rep.extra['lll_m']}"
        out.write(f"{line} ({rep.mode})\n")
        if rep.expectation_breakdown is not None:
            rm, rd = rep.expectation_breakdown
            out.write(f"  E[repair mass]={bounds.format_rational(rm)} "
                      f"E[rank deficiency]={bounds.format_rational(rd)}\n")
        for note in rep.assumptions:
            out.write(f"  assumption: {note}\n")
    return 0


def cmd_scan(args, out) -> int:
    H = read_matrix(_read_input(args.inp), args.in_format)
    rep = trapscan.scan(H, TrapProfile(args.a, args.b), cap=args.cap)
    if args.format == "json":
        res = rep.as_dict()
        res.update({"rows": H.rows, "cols": H.cols, "a": args.a, "b": args.b})
        _dump_json(_envelope("scan", res, assumptions=rep.warnings), out)
    elif args.format == "csv":
        _csv([("columns", "size", "odd_count")]
             + [(" ".join(str(j) for j in S), len(S), c) for S, c in rep.violations], out)
    else:
        status = "clean" if rep.clean else f"{len(rep.violations)} violation(s)"
        out.write(f"scan {H.rows}x{H.cols} a={args.a} b={args.b}: {status}, "
                  f"{rep.scanned_subsets} subsets scanned"
                  f"{' (stopped at cap)' if rep.truncated else ''}\n")
        for S, c in rep.violations:
            out.write(f"  columns {{{', '.join(map(str, S))}}}: odd rows {c}\n")
        for w in rep.warnings:
            out.write(f"  warning: {w}\n")
    return 0 if rep.clean else 1


def cmd_construct(args, out) -> int:
    code = _load_code(args.code)
    profile = TrapProfile(args.a, args.b)
    _, seed = construct.make_rng(args.seed)
    if args.las_vegas:
        res = construct.las_vegas_minimal(code, profile, seed, max_attempts=args.max_attempts)
        t = code.redundancy
    else:
        t = args.t
        if t is None:
            t = bounds.theorem1_bound(code.n, code.k, args.a, args.b, d=code.d_known,
                                      d_exact=code.d_exact).optimizer_t
        res = construct.sample_and_repair(code, profile, t, seed)
    meta = res.as_dict()
    meta.update({"code": args.code, "n": code.n, "k": code.k, "a": args.a, "b": args.b, "t": t,
                 "method": "las-vegas" if args.las_vegas else "sample-and-repair"})
    alist = emit_alist(res.matrix).decode("ascii")
    if args.format == "json":
        meta["alist"] = alist
        _dump_json(_envelope("construct", meta, seed=seed), out)
    else:
        out.write(alist)
        sys.stderr.write(
            f"# {meta['method']} {args.code} a={args.a} b={args.b} seed={seed}: "
            f"{res.matrix.rows} rows ({res.sampled_rows} sampled, "
            f"{res.repair_rows_added} repair, {res.attempts} attempt(s))\n")
    return 0


def cmd_oracle(args, out) -> int:
    code = _load_code(args.code)
    mode = "multiset" if args.multiset else "distinct"
    if args.collective:
        res = oracle.exact_collective(code, TrapProfile(args.a, args.b), args.max_rows, mode)
    else:
        res = oracle.exact_plain(code, args.a, args.b, args.max_rows, mode)
    if args.format == "json":
        d = res.as_dict()
        d.update({"code": args.code, "a": args.a, "b": args.b})
        _dump_json(_envelope("oracle", d), out)
    elif args.format == "csv":
        _csv([("code", "a", "b", "criterion", "mode", "value"),
              (args.code, args.a, args.b, res.search_space["criterion"], mode, res.value)], out)
    else:
        out.write(f"{res.value}\n")
        out.write(f"# {res.search_space['criterion']} {args.code} a={args.a} b={args.b} "
                  f"({mode}, {res.search_space['nodes']} nodes)\n")
        for r in res.as_dict()["witness"]:
            out.write(f"# {r}\n")
    return 0


def table1_rows(mode: str = "auto") -> list[tuple[int, int, int, int, int]]:
    rows = []
    for a, b in TABLE1_ROWS:
        th = bounds.theorem1_bound(MARGULIS_N, MARGULIS_K, a, b, mode=mode)
        ll = bounds.lll_bound(MARGULIS_N, MARGULIS_K, a, b)
        rows.append((a, b, MARGULIS_N - MARGULIS_K, th.value, ll.value))
    return rows


def cmd_table1(args, out) -> int:
    rows = table1_rows(args.mode)
    header = ("a", "b", "trivial_lower_bound", "theorem1", "lll")
    if args.format == "json":
        res = {"n": MARGULIS_N, "k": MARGULIS_K,
               "rows": [dict(zip(header, r)) for r in rows]}
        mode = bounds.resolve_mode(args.mode, MARGULIS_N - MARGULIS_K, MARGULIS_N - MARGULIS_K)
        _dump_json(_envelope("table1", res, mode=mode,
                             assumptions=["a <= d-1 assumed; minimum distance not verified"]), out)
    elif args.format == "csv":
        _csv([header] + rows, out)
    else:
        out.write(f"Trapping redundancy bounds, n={MARGULIS_N} k={MARGULIS_K}\n")
        out.write(f"{'a':>3} {'b':>3} {'lower':>6} {'thm1':>6} {'LLL':>6}\n")
        for r in rows:
            out.write(f"{r[0]:>3} {r[1]:>3} {r[2]:>6} {r[3]:>6} {r[4]:>6}\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="trapred",
        description="Trapping redundancy bounds, scans and constructions for binary linear codes.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, choices=("human", "json", "csv")):
        sp.add_argument("--format", choices=choices, default="human")

    def mode(sp):
        sp.add_argument("--mode", choices=("auto", "exact", "certified"), default="auto",
                        help="arithmetic mode (auto: exact when t*(n-k) <= 2^16)")

    b = sub.add_parser("bound", help="evaluate a bound or existence condition")
    b.add_argument("--family", choices=("theorem1", "lll", "corollary2", "gv"), required=True)
    b.add_argument("-n", type=int)
    b.add_argument("-k", type=int)
    b.add_argument("-a", type=int)
    b.add_argument("-b", type=int)
    b.add_argument("-d", type=int, help="minimum distance (exact unless --d-unverified)")
    b.add_argument("--d-unverified", action="store_true",
                   help="treat -d as an asserted lower bound")
    mode(b)
    fmt(b)

    s = sub.add_parser("scan", help="list small trapping sets of a matrix")
    s.add_argument("--in", dest="inp", required=True, help="alist or dense file, '-' for stdin")
    s.add_argument("--in-format", choices=("auto", "alist", "dense"), default="auto")
    s.add_argument("-a", type=int, required=True)
    s.add_argument("-b", type=int, required=True)
    s.add_argument("--cap", type=int, help="stop after this many violations")
    fmt(s)

    c = sub.add_parser("construct", help="build a trapping-set-free parity-check matrix")
    c.add_argument("--code", required=True, help=f"catalog name ({', '.join(CATALOG_NAMES)}) or matrix file")
    c.add_argument("-a", type=int, required=True)
    c.add_argument("-b", type=int, required=True)
    c.add_argument("-t", type=int, help="initial sampled rows (default: the bound's optimizing t)")
    c.add_argument("--seed", type=int, help="random seed (drawn from entropy and reported if omitted)")
    c.add_argument("--las-vegas", action="store_true", help="resample exactly n-k rows until clean")
    c.add_argument("--max-attempts", type=int, default=1000)
    fmt(c, ("human", "json"))

    o = sub.add_parser("oracle", help="exact trapping redundancy by exhaustive search")
    o.add_argument("--code", required=True)
    o.add_argument("-a", type=int, required=True)
    o.add_argument("-b", type=int, required=True)
    o.add_argument("--collective", action="store_true", help="forbid all subset sizes up to a")
    o.add_argument("--multiset", action="store_true", help="allow repeated rows")
    o.add_argument("--max-rows", type=int)
    fmt(o)

    t = sub.add_parser("table1", help="bounds for the length-2640 dimension-1320 code")
    mode(t)
    fmt(t)
    return p


HANDLERS = {
    "bound": cmd_bound,
    "scan": cmd_scan,
    "construct": cmd_construct,
    "oracle": cmd_oracle,
    "table1": cmd_table1,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return HANDLERS[args.command](args, out)
    except (TrapredError, UsageError, OSError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        sys.stderr.write(f"trapred {args.command}: error: {msg}\n")
        return 2


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process, returning (exit code, standard output)."""
    buf = io.StringIO()
    code = main(list(argv), buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
