"""Command-line front end.  Every command writes one JSON report:

    {"command": ..., "inputs": ..., "results": ..., "log": [...], "timing": ...}

Exit codes: 0 exact success, 1 validation error or golden-file mismatch,
2 undecided (rank interval, inconclusive candidate, torsion not settled).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from importlib import resources
from typing import List, Optional

from .counting import BadReductionError, zeta_data
from .descent import SearchBounds, generators, run_descent
from .family import (
    FamilyError,
    FamilyParams,
    InadmissibleError,
    admissible,
    bad_primes,
    display_product,
    pair_from_params,
    specialize,
)
from .quadrank import (
    TorsionUndecided,
    candidate_for,
    check_l_conditions,
    decide_rank_over_L,
    m_search,
    table_rows,
    torsion_over_L,
)

EXIT_OK, EXIT_INVALID, EXIT_UNDECIDED = 0, 1, 2
TABLE_NS = (0, 6, 9)


class Failure(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID, results: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.results = results


def _curve_dict(curve) -> dict:
    return {
        "model": display_product(curve.F2, curve.F4),
        "F2": [str(c) for c in curve.F2.c],
        "F4": [str(c) for c in curve.F4.c],
    }


def _get_pair(args):
    if args.params is not None:
        return pair_from_params(FamilyParams.parse(args.params))
    return specialize(args.n, force=getattr(args, "force", False))


def cmd_build(args) -> tuple:
    pair = _get_pair(args)
    results = {"C": _curve_dict(pair.C), "Cprime": _curve_dict(pair.Cprime)}
    if pair.n is not None:
        adm = admissible(pair.n)
        results.update(q=pair.q, r=pair.r, admissible=adm.ok, diagnostics=list(adm.diagnostics))
    results["bad_primes"] = sorted(bad_primes(pair))
    return results, [], EXIT_OK


def cmd_rank_q(args) -> tuple:
    pair = specialize(args.n)
    state, rank = run_descent(pair, SearchBounds(args.search_bound))
    doc = state.as_dict()
    results = {
        "n": args.n,
        "rank": rank.as_dict(),
        "I": doc["I"],
        "Iprime": doc["I'"],
        "certificates": doc["certificates"],
    }
    return results, doc["log"], EXIT_OK if rank.exact else EXIT_UNDECIDED


def cmd_rank_l(args) -> tuple:
    cond = check_l_conditions(args.n, args.l)
    if not cond:
        raise Failure(f"l = {args.l} fails the conditions: " + "; ".join(cond.diagnostics))
    if args.m is not None:
        cands = [candidate_for(args.n, args.l, Fraction(args.m))]
    else:
        cands = table_rows([c for c in m_search(args.n, args.num_bound, args.den_bound, 10**30) if c.l == args.l])
        if not cands:
            raise Failure(f"no m in the search box gives l = {args.l}", EXIT_UNDECIDED)
    torsion = torsion_over_L(args.n, args.l)
    try:
        res = decide_rank_over_L(args.n, args.l, cands[0], torsion)
    except TorsionUndecided as e:
        raise Failure(f"torsion undecided: {e}", EXIT_UNDECIDED, {"torsion": torsion.as_dict()})
    results = res.as_dict()
    results["conditions"] = list(cond.diagnostics)
    return results, list(torsion.diagnostics), EXIT_OK if res.conclusive else EXIT_UNDECIDED


def cmd_search_m(args) -> tuple:
    bound = 10**args.l_digits - 1
    cands = m_search(args.n, args.num_bound, args.den_bound, bound)
    results = {
        "n": args.n,
        "candidates": [c.as_dict() for c in cands],
        "l_values": sorted({c.l for c in cands}),
    }
    return results, [], EXIT_OK


def cmd_count(args) -> tuple:
    pair = specialize(args.n)
    try:
        zC, zCp = zeta_data(pair.C, args.p), zeta_data(pair.Cprime, args.p)
    except BadReductionError as e:
        raise Failure(str(e))
    results = {"n": args.n, "p": args.p, "C": zC.as_dict(), "Cprime": zCp.as_dict(), "jacobian_order": zC.jacobian_order}
    return results, [], EXIT_OK


def load_golden(n: int) -> dict:
    text = resources.files("genus2descent").joinpath("fixtures", f"table_n{n}.json").read_text()
    return json.loads(text)


def _compact(s: str) -> str:
    return "".join(s.split())


def reproduce_table(n: int) -> dict:
    pair = specialize(n)
    rows = []
    for c in table_rows(m_search(n)):
        t = torsion_over_L(n, c.l)
        res = decide_rank_over_L(n, c.l, c, t)
        rows.append(
            {
                "l": c.l,
                "m": str(c.m),
                "x": str(c.x),
                "y_coeff": str(c.y_coeff),
                "p": t.table_p,
                "jacobian_order": t.table_order,
                "rank": res.rank,
            }
        )
    return {
        "n": n,
        "C": _compact(display_product(pair.C.F2, pair.C.F4)),
        "Cprime": _compact(display_product(pair.Cprime.F2, pair.Cprime.F4)),
        "q": pair.q,
        "r": pair.r,
        "rows": rows,
    }


def diff_table(got: dict, want: dict) -> List[str]:
    out = []
    for key in ("C", "Cprime", "q", "r"):
        if got[key] != want[key]:
            out.append(f"n={want['n']}: {key}: expected {want[key]!r}, got {got[key]!r}")
    if len(got["rows"]) != len(want["rows"]):
        out.append(f"n={want['n']}: {len(want['rows'])} rows expected, got {len(got['rows'])}")
    for i, (g, w) in enumerate(zip(got["rows"], want["rows"])):
        for key in ("l", "m", "x", "y_coeff", "p", "jacobian_order"):
            if g[key] != w[key]:
                out.append(f"n={want['n']} row {i}: {key}: expected {w[key]!r}, got {g[key]!r}")
        if g["rank"] != 4:
            out.append(f"n={want['n']} row {i}: rank over L is {g['rank']}, expected 4")
    return out


def cmd_reproduce(args) -> tuple:
    ns = TABLE_NS if args.table == "all" else (int(args.table),)
    blocks, diffs = [], []
    for n in ns:
        if n not in TABLE_NS:
            raise Failure(f"no golden table for n = {n}")
        got = reproduce_table(n)
        d = diff_table(got, load_golden(n))
        blocks.append({"table": got, "match": not d})
        diffs.extend(d)
    results = {"tables": blocks, "diff": diffs, "match": not diffs}
    return results, diffs, EXIT_OK if not diffs else EXIT_INVALID


def _add_family_args(p, allow_params=False):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    if allow_params:
        g.add_argument("--params", metavar="U,V,W,Delta")
    p.set_defaults(params=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="genus2descent", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="curve models, q, r and bad primes")
    _add_family_args(p, allow_params=True)
    p.add_argument("--force", action="store_true", help="build even if n is not admissible")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("rank-q", help="descent over Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--search-bound", type=int, default=60)
    p.set_defaults(func=cmd_rank_q)

    p = sub.add_parser("rank-l", help="rank over Q(sqrt l)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", help="rational parameter of the point, e.g. -1/3")
    p.add_argument("--num-bound", type=int, default=10)
    p.add_argument("--den-bound", type=int, default=10)
    p.set_defaults(func=cmd_rank_l)

    p = sub.add_parser("search-m", help="search m for points over quadratic fields")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--num-bound", type=int, default=10)
    p.add_argument("--den-bound", type=int, default=10)
    p.add_argument("--l-digits", type=int, default=6)
    p.set_defaults(func=cmd_search_m)

    p = sub.add_parser("count", help="zeta data and |J(F_p)| at a good prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reproduce", help="regenerate the reference tables and diff against the golden files")
    p.add_argument("--table", default="all", help="all, 0, 6 or 9")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _inputs(args) -> dict:
    skip = {"func", "out", "timing", "format", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"exit: {report['exit_code']}"]
    if report.get("error"):
        lines.append(f"error: {report['error']}")

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(f"{prefix}{i}.", v)
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk("", report.get("results") or {})
    for entry in report.get("log", []):
        lines.append(f"log: {entry}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    report = {"command": args.command, "inputs": _inputs(args), "results": None, "log": [], "timing": None}
    try:
        results, log, code = args.func(args)
        report["results"], report["log"] = results, log
    except InadmissibleError as e:
        code = EXIT_INVALID
        report["error"] = str(e)
        report["results"] = {"admissible": False, "diagnostics": e.diagnostics}
    except Failure as e:
        code = e.code
        report["error"] = str(e)
        report["results"] = e.results
    except (FamilyError, ValueError) as e:
        code = EXIT_INVALID
        report["error"] = str(e)
    report["exit_code"] = code
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = json.dumps(report, indent=2) + "\n" if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
