"""Command-line front end: ``slt <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from .changemaker import (DEFAULT_MAX_RANK, build_changemaker, genus, genus_bound_B,
                          genus_consistent, recover_torsion, uniqueness_search)
from .knot_invariants import (KnotModel, alex_from_torsion, build_dtable, lens_d,
                              sum_identity_sides)
from .linear_lattice import (LinearLattice, class_key, count_tables, enumerate_C, f_image,
                             left_full)
from .rationals_cf import expand_neg_cf, format_rational, parse_slope, split_slope, trailing_one
from .slope_pipeline import TorusKnot, slope_verdict
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_knot(spec: str) -> KnotModel:
    """``torus:r,s`` | ``alex:a0,a1,...`` | ``v:v0,v1,...`` | ``unknot``."""
    spec = spec.strip()
    if spec == "unknot":
        return KnotModel.unknot()
    kind, _, body = spec.partition(":")
    try:
        nums = [int(x) for x in body.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad knot spec {spec!r}") from None
    try:
        if kind == "torus" and len(nums) == 2:
            return KnotModel.torus(*nums)
        if kind == "alex" and nums:
            return KnotModel.from_alex(nums)
        if kind == "v":
            return KnotModel.from_v(nums)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"bad knot spec {spec!r}")


def parse_sigma(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad sigma {text!r}") from None


def _slope(text: str) -> Fraction:
    try:
        return parse_slope(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad slope {text!r}: {exc}") from None


def _rat(x) -> str:
    return format_rational(x)


def _dec(x) -> str:
    x = Fraction(x)
    return _rat(x) if x.denominator == 1 else f"{_rat(x)} ({float(x):.4f})"


def _table(rows, headers) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def cmd_contfrac(args):
    r = _slope(args.slope)
    cf = expand_neg_cf(r)
    n, rem, q = split_slope(r)
    t1 = trailing_one(cf)
    data = {"slope": _rat(r), "terms": list(cf.terms), "n": n, "r": rem, "q": q,
            "trailingOne": list(t1.terms), "trailingOneValue": _rat(t1.value)}
    text = (f"{_rat(r)} = {cf}\n"
            f"split: {n} - {rem}/{q}\n"
            f"trailing one: {t1} = {_rat(t1.value)}")
    return data, text, t1.value == r


def cmd_spinc(args):
    r = _slope(args.slope)
    lat = LinearLattice.from_slope(r)
    C = enumerate_C(lat)
    rows = []
    for s in C:
        rows.append({"c": list(s), "leftFull": left_full(lat, s), "f": list(f_image(lat, s)),
                     "lensD": _rat(lens_d(lat, s))})
    table = count_tables(lat)
    counts = {str(c): {"C": [v[0], v[1]], "leftFull": [v[2], v[3]], "F": [v[4], v[5]]}
              for c, v in table.items()}
    ok = True
    if args.check:
        ok = (len(C) == lat.p
              and len({class_key(lat, s) for s in C}) == lat.p
              and all(v[0] == v[1] and v[2] == v[3] and v[4] == v[5] for v in table.values()))
    data = {"slope": _rat(r), "terms": list(lat.terms), "size": len(C), "rows": rows,
            "counts": counts, "checked": bool(args.check), "ok": ok}
    lines = [f"{_rat(r)} = {expand_neg_cf(r)}, |C| = {len(C)}",
             _table([(r_["c"], "y" if r_["leftFull"] else "", r_["f"], r_["lensD"]) for r_ in rows],
                    ["C element", "left-full", "F element", "lens d"]),
             "",
             _table([(c, f"{v[0]}/{v[1]}", f"{v[2]}/{v[3]}", f"{v[4]}/{v[5]}")
                     for c, v in table.items()],
                    ["c0", "C obs/exp", "left-full obs/exp", "F obs/exp"])]
    if args.check:
        lines.append("counts: " + ("OK" if ok else "FAILED"))
    return data, "\n".join(lines), ok


def cmd_dinv(args):
    r = _slope(args.slope)
    knot = parse_knot(args.knot)
    tab = build_dtable(r, knot.V)
    lhs, rhs = sum_identity_sides(r, knot.V)
    agree = tab.multisets_agree()
    data = dict(tab.to_json(), knot=knot.name, multisetsAgree=agree,
                sumIdentity={"lhs": _rat(lhs), "rhs": _rat(rhs), "ok": lhs == rhs})
    counts = Counter(tab.by_residue)
    text = "\n".join([
        f"{knot.name} at {_rat(r)}",
        "by residue: " + " ".join(_rat(x) for x in tab.by_residue),
        "multiset: " + ", ".join(f"{_rat(v)} x{k}" for v, k in sorted(counts.items())),
        f"class route agrees: {'yes' if agree else 'NO'}",
        f"sum identity: {_rat(lhs)} = {_rat(rhs)} {'OK' if lhs == rhs else 'FAILED'}",
    ])
    return data, text, agree and lhs == rhs


def _build_cm(slope, sigma):
    try:
        return build_changemaker(slope, sigma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_recover(args):
    r = _slope(args.slope)
    sigma = parse_sigma(args.sigma)
    cm = _build_cm(r, sigma)
    if cm.n < 2:
        raise UsageError("torsion recovery needs n >= 2")
    t = recover_torsion(cm)
    try:
        alex = alex_from_torsion(t)
    except ValueError:
        alex = None
    B = genus_bound_B(cm)
    consistent = genus_consistent(cm)
    data = {"slope": _rat(r), "sigma": list(sigma), "N": cm.N, "torsion": list(t.values),
            "alexander": list(alex.coeffs) if alex else None,
            "alexanderText": str(alex) if alex else None,
            "genus": genus(cm), "genusConsistent": consistent,
            "stable": list(cm.stable), "B": _rat(B), "emptyStable": not cm.stable,
            "hypothesisMet": r >= B}
    text = "\n".join([
        f"sigma {sigma} at {_rat(r)}: ambient rank {cm.N}, complement rank {len(cm.gram)}",
        f"torsion t = {t.values}",
        f"Alexander polynomial: {alex if alex else 'not of L-space form'}",
        f"genus {genus(cm)} ({'consistent' if consistent else 'INCONSISTENT'} with torsion)",
        f"B = {_rat(B)}" + (" (no stable coefficients)" if not cm.stable else ""),
    ])
    return data, text, consistent


def cmd_uniq(args):
    r = _slope(args.slope)
    if args.gram:
        try:
            G = json.loads(args.gram)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad gram JSON: {exc}") from None
        B = None
    elif args.sigma:
        cm = _build_cm(r, parse_sigma(args.sigma))
        G = cm.gram
        B = genus_bound_B(cm)
    else:
        raise UsageError("give --sigma or --gram")
    try:
        found = uniqueness_search(r, G, max_rank=args.max_rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    met = None if B is None else r >= B
    data = {"slope": _rat(r), "gram": G, "structures": [list(v.sigma) for v in found],
            "count": len(found), "B": None if B is None else _rat(B), "hypothesisMet": met}
    lines = [f"{len(found)} changemaker structure(s) at {_rat(r)}:"]
    lines += ["  " + ",".join(map(str, v.sigma)) for v in found]
    if met is False:
        lines.append(f"note: uniqueness hypothesis not met ({_rat(r)} < B = {_rat(B)})")
    ok = bool(found) and (met is not True or len(found) == 1)
    return data, "\n".join(lines), ok


def cmd_charslope(args):
    try:
        tk = TorusKnot(args.r, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = slope_verdict(tk, _slope(args.slope))
    data = v.to_json()
    rows = [(k, "-" if x is None else ("yes" if x else "no")) for k, x in v.checks.items()]
    lines = [f"{tk} at {_dec(v.slope)}",
             _table([(k, _dec(x)) for k, x in v.thresholds.items()], ["threshold", "value"]),
             "",
             _table(rows, ["check", "holds"])]
    if v.chain is not None:
        lines.append("satellite chain: " + " >= ".join(_dec(x) for x in v.chain.values))
    ok = v.chain is None or (all(v.chain.lines_ok) and v.chain.holds)
    return data, "\n".join(lines), ok


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        res = run_suite(name, quick=args.quick, pmax=args.pmax, qmax=args.qmax, seed=args.seed)
        results.append(res)
    ok = all(r.ok for r in results)
    data = {"seed": args.seed, "quick": args.quick, "suites": [r.to_json() for r in results],
            "ok": ok}
    lines = [f"seed {args.seed}"]
    for r in results:
        lines.append(f"{r.name:<10} {'PASS' if r.ok else 'FAIL'}  {r.checks} checks  {r.params}")
        lines += [f"    {f}" for f in r.failures[:10]]
    return data, "\n".join(lines), ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slt", description="Exact surgery lattice computations.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("contfrac", help="negative continued fraction of a slope")
    c.add_argument("slope")
    c.set_defaults(func=cmd_contfrac)

    c = sub.add_parser("spinc", help="C- and F-set representatives with count tables")
    c.add_argument("slope")
    c.add_argument("--check", action="store_true", help="assert the counting tables")
    c.set_defaults(func=cmd_spinc)

    c = sub.add_parser("dinv", help="d-invariant corrections by both routes")
    c.add_argument("slope")
    c.add_argument("--knot", default="unknot", help="torus:r,s | alex:a0,a1,.. | v:v0,v1,.. | unknot")
    c.set_defaults(func=cmd_dinv)

    c = sub.add_parser("recover", help="torsion coefficients from a changemaker vector")
    c.add_argument("slope")
    c.add_argument("--sigma", required=True, help="comma separated changemaker coefficients")
    c.set_defaults(func=cmd_recover)

    c = sub.add_parser("uniq", help="all changemaker structures with isometric complement")
    c.add_argument("slope")
    c.add_argument("--sigma", help="build the Gram matrix from this changemaker vector")
    c.add_argument("--gram", help="Gram matrix as a JSON array of rows")
    c.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)
    c.set_defaults(func=cmd_uniq)

    c = sub.add_parser("charslope", help="slope thresholds and verdict for a torus knot")
    c.add_argument("r", type=int)
    c.add_argument("s", type=int)
    c.add_argument("slope")
    c.set_defaults(func=cmd_charslope)

    c = sub.add_parser("verify", help="run property suites")
    c.add_argument("suite", choices=SUITES + ("all",))
    c.add_argument("--quick", action="store_true")
    c.add_argument("--pmax", type=int, help="numerator bound (dp-oracle: n bound; chains: rs + pmax)")
    c.add_argument("--qmax", type=int, help="denominator bound (dp-oracle: ambient rank bound)")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        data, text, ok = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
