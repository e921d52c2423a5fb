"""Command line entry point: `artinres <subcommand> --r R --a A ...`.

Exit codes: 0 when every check passes, 1 on a failed check (a JSON
report with a witness goes to stdout), 2 on bad input."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from . import artin as art
from . import deform as dfm
from . import fixtures as fxt
from . import groebner as gb
from .combinatorics import GroupParams, InvalidGroupError, build_quiver, hj_dual, hj_expand

SCHEMA = 1


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str | None = None):
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))


def _group(args) -> GroupParams:
    if args.r is None or args.a is None:
        raise UsageError("--r and --a are required")
    try:
        return GroupParams(args.r, args.a)
    except InvalidGroupError as exc:
        raise UsageError(str(exc)) from None


def _lambda(args, g, required: bool = False):
    if args.lam is None:
        if required:
            raise UsageError("--lambda is required")
        return None
    if args.lam == "random":
        return dfm.DeformationParams.random(g, args.seed)
    try:
        lam = dfm.DeformationParams.parse(args.lam)
        lam.check_shape(art.artin(g).beta)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --lambda: {exc}") from None
    return lam


def _table(rows: list[str], cols: list[str], M) -> str:
    w = max(len(c) for c in cols + [str(x) for r in M for x in r]) + 1
    lw = max(len(r) for r in rows) + 1
    out = [" " * lw + "".join(f"{c:>{w}}" for c in cols)]
    for name, row in zip(rows, M):
        out.append(f"{name:<{lw}}" + "".join(f"{x:>{w}}" for x in row))
    return "\n".join(out)


# subcommands

def cmd_hj(args) -> int:
    g = _group(args)
    alpha, beta = hj_expand(g.r, g.a).coeffs, hj_dual(g).coeffs
    _emit(args, {"r": g.r, "a": g.a, "alpha": list(alpha), "beta": list(beta)},
          f"{g.r}/{g.a} = {list(alpha)}\n{g.r}/{g.r - g.a} = {list(beta)}")
    return 0


def cmd_quiver(args) -> int:
    q = build_quiver(_group(args))
    _emit(args, {"quiver": q.to_dict()}, q.pretty())
    return 0


def cmd_generators(args) -> int:
    A = art.artin(_group(args))
    gens = [{"name": z.name, "degree": A.degrees[z.name], "path": list(z.path)} for z in A.generators]
    text = "\n".join(f"{z['name']:<8}deg {z['degree']:<4}{'*'.join(z['path'])}" for z in gens)
    _emit(args, {"r": A.group.r, "a": A.group.a, "generators": gens}, text)
    return 0


def cmd_qdet(args) -> int:
    g = _group(args)
    A = art.artin(g)
    Q = A.quasimatrix
    rels = [str(f) for f in art.qdet_ideal(g)]
    E = str(art.saturating_product_E(g))
    payload = {"r": g.r, "a": g.a,
               "quasimatrix": {"top": list(Q.top), "middle": [list(w) for w in Q.middle],
                               "bottom": list(Q.bottom)},
               "qdet": rels, "E": E}
    _emit(args, payload, Q.render() + "\n\n" + "\n".join(rels) + f"\n\nE = {E}")
    return 0


def cmd_matrix_m(args) -> int:
    g = _group(args)
    rows, cols, M = art.m_rows(g), art.m_columns(g), art.build_M(g)
    _emit(args, {"r": g.r, "a": g.a, "rows": rows, "columns": cols, "M": M}, _table(rows, cols, M))
    return 0


def cmd_matrix_k(args) -> int:
    g = _group(args)
    cols, K = art.m_columns(g), art.build_K(g)
    rels = [f"f{i}_{j}" for i, j in art.k_relations(g)]
    _emit(args, {"r": g.r, "a": g.a, "rows": cols, "relations": rels, "K": K}, _table(cols, rels, K))
    return 0


def cmd_verify(args) -> int:
    rep = art.verify_theorem(_group(args), args.mode, args.max_pairs)
    _emit(args, {"report": rep.to_dict()}, f"{'PASS' if rep.ok else 'FAIL'} {rep.r} {rep.a} {rep.mode}")
    return 0 if rep.ok else 1


def cmd_deform(args) -> int:
    g = _group(args)
    lam = _lambda(args, g)
    rels = dfm.deformed_relations(g, lam)
    payload = {"r": g.r, "a": g.a, "lambda": lam.to_json() if lam else "symbolic",
               "relations": [{"step": x.step, "index": x.index, "relation": str(x.poly)} for x in rels]}
    if lam is not None:
        payload["empty_check"] = dfm.rep_variety_empty_check(g, lam)
    _emit(args, payload, "\n".join(x.render() for x in rels))
    return 0


def cmd_charts(args) -> int:
    g = _group(args)
    lam = _lambda(args, g) or dfm.DeformationParams.zero(g)
    if args.units:
        res = dfm.chart_eliminate_custom(g, args.units.split(","), lam)
        ring, residual = dfm.residual_in_free_ring(res)
        out = res.to_dict()
        if residual and all(f.evaluate({x: 0 for x in ring.names}) == 0 for f in residual):
            out["singular_at_origin"] = dfm.jacobian_singular_at(residual, {x: 0 for x in ring.names})
        _emit(args, {"r": g.r, "a": g.a, "charts": [out]},
              f"units {res.units}: free {res.free}, residual {[str(p) for p in res.residual]}")
        return 0
    try:
        todo = [dfm.chart_by_name(g, args.chart)] if args.chart else dfm.charts(g)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    results = [dfm.chart_eliminate(g, c, lam) for c in todo]
    ok = all(r.certified and len(r.free) == 2 for r in results)
    text = "\n".join(f"{'PASS' if r.certified else 'FAIL'} {r.chart} units={','.join(r.units)} "
                     f"coords={','.join(r.free)}" for r in results)
    _emit(args, {"r": g.r, "a": g.a, "lambda": lam.to_json(), "ok": ok,
                 "charts": [r.to_dict() for r in results]}, text)
    return 0 if ok else 1


def cmd_fiber(args) -> int:
    g = _group(args)
    lam = _lambda(args, g) or dfm.DeformationParams.zero(g)
    if not lam.in_delta():
        raise UsageError("lambda is not in Delta: each step must sum to zero")
    ideal = dfm.pi_fiber_ideal(g, lam)
    dim = dfm.fiber_dimension(g, lam, args.max_pairs)
    red = dfm.closing_relation_redundant(g, lam)
    _emit(args, {"r": g.r, "a": g.a, "lambda": lam.to_json(), "ideal": [str(f) for f in ideal],
                 "dimension": dim, "closing_relation_redundant": red},
          "\n".join(str(f) for f in ideal) + f"\n\ndimension {dim}")
    return 0 if red else 1


def cmd_pi(args) -> int:
    g = _group(args)
    A = art.artin(g)
    if args.point is None:
        raise UsageError("--point is required")
    try:
        data = json.loads(args.point)
        if isinstance(data, list):
            data = dict(zip(A.names, data, strict=True))
        point = {k: Fraction(str(v)) for k, v in data.items()}
        lam = dfm.pi_map_eval(g, point)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --point: {exc}") from None
    _emit(args, {"r": g.r, "a": g.a, "lambda": lam.to_json(), "in_delta": lam.in_delta()},
          json.dumps(lam.to_json()))
    return 0


def _sweep_one(job):
    r, a, mode, max_pairs = job
    try:
        rep = art.verify_theorem(GroupParams(r, a), mode, max_pairs)
        return rep.to_dict()
    except Exception as exc:  # keep the batch going
        return {"r": r, "a": a, "mode": mode, "ok": False, "error": f"{type(exc).__name__}: {exc}"}


def cmd_sweep(args) -> int:
    if args.max_r is None or args.max_r < 2:
        raise UsageError("--max-r must be at least 2")
    jobs = [(r, a, args.mode, args.max_pairs) for r in range(2, args.max_r + 1)
            for a in range(1, r) if gcd(r, a) == 1]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    failed = [x for x in results if not x["ok"]]
    text = "\n".join(f"{'PASS' if x['ok'] else 'FAIL'} {x['r']} {x['a']}" for x in results)
    _emit(args, {"mode": args.mode, "groups": len(results), "failed": len(failed),
                 "results": [{"r": x["r"], "a": x["a"], "ok": x["ok"]} for x in results],
                 "failures": failed}, text)
    return 1 if failed else 0


def cmd_fixtures(args) -> int:
    checks = fxt.replay(args.path)
    failed = [c for c in checks if not c.ok]
    text = "\n".join(f"{'PASS' if c.ok else 'FAIL'} {c.group[0]},{c.group[1]} {c.name}" for c in checks)
    _emit(args, {"checks": len(checks), "failed": len(failed),
                 "results": [c.to_dict() for c in checks]}, text)
    return 1 if failed else 0


COMMANDS = {
    "hj": cmd_hj, "quiver": cmd_quiver, "generators": cmd_generators, "qdet": cmd_qdet,
    "matrix-m": cmd_matrix_m, "matrix-k": cmd_matrix_k, "verify": cmd_verify,
    "deform": cmd_deform, "charts": cmd_charts, "fiber": cmd_fiber, "pi": cmd_pi,
    "sweep": cmd_sweep, "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-pairs", type=int, default=None,
                        help="cap on S-pairs (default from ARTINRES_MAX_PAIRS)")

    p = argparse.ArgumentParser(prog="artinres", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("verify", "sweep"):
            sp.add_argument("--mode", choices=["buchberger_only", "full_oracle"], default="buchberger_only")
        if name == "sweep":
            sp.add_argument("--max-r", type=int, required=True)
            sp.add_argument("--jobs", type=int, default=1)
        if name in ("deform", "charts", "fiber"):
            sp.add_argument("--lambda", dest="lam", help="JSON list of lists of rational strings, or 'random' (uses --seed)")
        if name == "charts":
            sp.add_argument("--chart", help="chart name such as W0")
            sp.add_argument("--units", help="comma separated arrows set to 1 (custom normalisation)")
        if name == "pi":
            sp.add_argument("--point", help="JSON object generator->rational, or list in generator order")
        if name == "fixtures":
            sp.add_argument("--path", help="fixture file (default: the bundled one)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"artinres {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except gb.ResourceCapExceeded as exc:
        print(json.dumps({"schema": SCHEMA, "ok": False, "error": f"resource cap: {exc}"}, indent=2))
        return 1
    except AssertionError as exc:
        print(json.dumps({"schema": SCHEMA, "ok": False, "error": str(exc)}, indent=2))
        return 1


if __name__ == "__main__":
    sys.exit(main())
