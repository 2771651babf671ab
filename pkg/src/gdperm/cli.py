"""Command line entry point: ``gdperm <subcommand> [flags]``.

Exit codes: 0 success, 2 invalid input, 3 search budget exhausted,
4 a family failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds, capacity, constructions, solver
from .distance_sets import parse
from .perm_core import (
    read_family,
    verify_family,
    verify_strong_certificate,
    write_family,
)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_VIOLATION = 0, 2, 3, 4
EXHAUSTIVE_LIMIT = 200_000


class UsageError(ValueError):
    pass


def parse_n_list(text: str) -> list[int]:
    """``5``, ``1-10`` or ``4,16``; ranges and lists may be mixed."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise UsageError(f"bad n list {text!r}")
    return out


def _rate(x: float) -> str:
    return f"{x:.6f}"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _single_n(args) -> int:
    ns = parse_n_list(args.n)
    if len(ns) != 1:
        raise UsageError("this subcommand takes a single --n")
    return ns[0]


# -- construct / verify ---------------------------------------------------

CONSTRUCTIONS = ("thm1", "corollary", "even-positions", "hookup", "valuation", "residue-concat")


def _build(args):
    n = _single_n(args)
    kind = args.kind
    if kind == "thm1":
        return constructions.construct_theorem1(n), bounds.formula_theorem1(n)
    if kind == "corollary":
        return constructions.construct_corollary(n, args.q), bounds.formula_corollary(n, args.q)
    if kind == "even-positions":
        return constructions.construct_even_positions(n), bounds.formula_binomial_middle(n)
    if kind == "hookup":
        return constructions.construct_hookup(n), bounds.hookup_size(n)
    if kind == "valuation":
        small, large = bounds.valuation_sizes(n, args.p, args.q)
        fam = constructions.construct_valuation(n, args.p, args.q)
        return fam, math.factorial(small) ** large
    if kind == "residue-concat":
        fam = constructions.construct_residue_concat(n, args.q)
        return fam, len(fam)
    raise UsageError(f"unknown construction {kind!r}")


def _verified_flag(fam, D, seed, samples):
    if len(fam) <= EXHAUSTIVE_LIMIT:
        return verify_family(fam, D).ok
    rep = verify_family(fam, D, mode="sampled", samples=samples, seed=seed)
    return "sampled" if rep.ok else False


def cmd_construct(args) -> int:
    fam, formula = _build(args)
    verified = _verified_flag(fam, fam.claimed_D, args.seed, args.samples)
    sidecar = {
        "n": fam.n,
        "D": fam.claimed_D.spec,
        "provenance": fam.provenance,
        "claimed_size": fam.claimed_size,
        "formula_size": formula,
        "verified": verified,
    }
    if args.out:
        write_family(fam, args.out)
        with open(args.out + ".json", "w") as fh:
            fh.write(_dump(sidecar))
    elif args.format == "json":
        sys.stdout.write(_dump(sidecar))
    else:
        write_family(fam, sys.stdout)
    return EXIT_OK if verified else EXIT_VIOLATION


def cmd_verify(args) -> int:
    fam = read_family(args.family)
    D = parse(args.d) if args.d else fam.claimed_D
    if D is None:
        raise UsageError("family file has D=none; pass --d")
    if args.strong:
        ok = verify_strong_certificate(fam, D, args.mode, args.samples, args.seed)
        report = {"strong_certificate": ok, "D": D.spec, "size": len(fam)}
        _emit(_dump(report), args.out)
        return EXIT_OK if ok else EXIT_VIOLATION
    if args.mode == "auto":
        verified = _verified_flag(fam, D, args.seed, args.samples)
        rep = None
    else:
        rep = verify_family(fam, D, args.mode, args.samples, args.seed, args.workers)
        verified = (rep.ok and rep.status != "Sampled") or ("sampled" if rep.ok else False)
    report = {"D": D.spec, "size": len(fam), "verified": verified}
    if rep is not None:
        report.update(
            status=rep.status,
            pairs_checked=rep.pairs_checked,
            witness=[list(w) for w in rep.witness] if rep.witness else None,
        )
    _emit(_dump(report), args.out)
    return EXIT_OK if verified else EXIT_VIOLATION


# -- solve ------------------------------------------------------------------

def cmd_solve(args) -> int:
    n = _single_n(args)
    D = parse(args.d)
    g = solver.build_conflict_graph(n, D)
    res = solver.max_clique(g, max_nodes=args.budget_nodes, time_limit=args.budget_secs)
    witness_file = None
    if args.out:
        from .perm_core import PermFamily

        witness_file = args.out
        write_family(PermFamily.from_rows(res.clique_witness, n, D, "solver"), witness_file)
    report = {
        "n": n,
        "D": D.spec,
        "value": res.clique_size,
        "exact": res.exact,
        "proof_bound": res.proof_bound,
        "bound_source": res.bound_source,
        "witness_file": witness_file,
    }
    if D == parse("finite:1"):
        ref = bounds.formula_binomial_middle(n)
        report["conjecture_ref"] = ref
        report["conjecture_match"] = res.exact and res.clique_size == ref
    sys.stdout.write(_dump(report))
    return EXIT_OK if res.exact else EXIT_BUDGET


# -- bounds / split -------------------------------------------------------

BOUND_FIELDS = ["n", "D", "lower", "lower_source", "upper", "upper_source", "log2_lower", "log2_upper"]


def _bound_row(rep):
    return {
        "n": rep.n,
        "D": rep.D,
        "lower": rep.lower.value,
        "lower_source": rep.lower.source,
        "upper": rep.upper.value,
        "upper_source": rep.upper.source,
        "log2_lower": _rate(rep.log2_lower),
        "log2_upper": _rate(rep.log2_upper),
    }


def _table(rows, fields, fmt):
    if fmt == "json":
        return _dump(rows)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_bounds(args) -> int:
    specs = args.d or ["cofinite:1", "finite:1", "residue:2:0", "residue:2:1"]
    rows = []
    for n in parse_n_list(args.n):
        for spec in specs:
            rows.append(_bound_row(bounds.bound_report(n, parse(spec))))
    _emit(_table(rows, BOUND_FIELDS, args.format), args.out)
    return EXIT_OK


SPLIT_FIELDS = ["n", "D", "lo", "hi", "label"]


def cmd_split(args) -> int:
    specs = args.d or ["finite:1", "residue:2:0"]
    rows = []
    for n in parse_n_list(args.n):
        for spec in specs:
            D = parse(spec)
            est = bounds.split_strength(
                n, bounds.bound_report(n, D), bounds.bound_report(n, D.complement())
            )
            rows.append({"n": n, "D": est.D, "lo": _rate(est.lo), "hi": _rate(est.hi), "label": est.label})
    _emit(_table(rows, SPLIT_FIELDS, args.format), args.out)
    return EXIT_OK


# -- capacity -------------------------------------------------------------

CAPACITY_FIELDS = ["n", "omega", "exact", "rate", "reference"]


def cmd_capacity(args) -> int:
    M = capacity.QuotientGraph.parse(args.m)
    rows = []
    budget_hit = False
    for n in parse_n_list(args.n):
        res = capacity.typed_max_clique(
            M, n, max_nodes=args.budget_nodes, time_limit=args.budget_secs
        )
        budget_hit |= not res.exact
        rate = math.log2(res.clique_size) / n if res.clique_size else 0.0
        ref = bounds.PENTAGON_RATE if M == capacity.QuotientGraph.cycle(5) else None
        rows.append({
            "n": n,
            "omega": res.clique_size,
            "exact": res.exact,
            "rate": _rate(rate),
            "reference": _rate(ref) if ref is not None else "",
        })
        if args.witness_dir and M.distance_set() is not None:
            fam = capacity.lift_to_permutations(res.clique_witness, M, n)
            write_family(fam, f"{args.witness_dir}/capacity_n{n}.txt")
    _emit(_table(rows, CAPACITY_FIELDS, args.format), args.out)
    return EXIT_BUDGET if budget_hit else EXIT_OK


# -- table ------------------------------------------------------------------

def summary_tables(capacity_n=(1, 2, 3, 4, 5)) -> str:
    out = []
    out.append("# complement of {1}: n!/2^floor(n/2)")
    out.append(_table(
        [{"n": n, "T": bounds.formula_theorem1(n)} for n in range(1, 11)], ["n", "T"], "csv"))
    out.append("# complement of {q}: closed form")
    out.append(_table(
        [{"n": n, "q": q, "T": bounds.formula_corollary(n, q)} for n in range(1, 9) for q in range(1, 5)],
        ["n", "q", "T"], "csv"))
    out.append("# even differences: hookup sandwich")
    out.append(_table([_bound_row(bounds.hookup_bounds(n)) for n in range(2, 11)], BOUND_FIELDS, "csv"))
    out.append("# valuation set E and its complement")
    rows = []
    for n in (4, 16):
        rows.extend(_bound_row(r) for r in bounds.valuation_bounds(n, 1, 2))
    out.append(_table(rows, BOUND_FIELDS, "csv"))
    lo, hi = bounds.prop1_reference_interval()
    out.append("# split strength of {1}: asymptotic reference interval")
    out.append(_table([{"lo": _rate(lo), "hi": _rate(hi)}], ["lo", "hi"], "csv"))
    out.append("# pentagon residue graph: typed clique profile")
    prof = capacity.capacity_profile(capacity.QuotientGraph.cycle(5), capacity_n)
    out.append(_table(
        [{"n": r.n, "omega": r.omega, "exact": r.exact, "rate": _rate(r.rate),
          "reference": _rate(r.reference)} for r in prof],
        CAPACITY_FIELDS, "csv"))
    return "\n".join(out)


def cmd_table(args) -> int:
    _emit(summary_tables(), args.out)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gdperm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, n_required=True):
        p.add_argument("--n", required=n_required, help="n, a range a-b, or a list")
        p.add_argument("--out")
        p.add_argument("--format", choices=["json", "csv", "family-file"], default="csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget-secs", type=float, default=solver.DEFAULT_TIME_LIMIT)
        p.add_argument("--budget-nodes", type=int, default=solver.DEFAULT_MAX_NODES)

    p = sub.add_parser("construct", help="build a family and write it with a JSON sidecar")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    for kind in CONSTRUCTIONS:
        group.add_argument(f"--{kind}", dest="kind", action="store_const", const=kind)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a family file")
    p.add_argument("family")
    p.add_argument("--d")
    p.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strong", action="store_true", help="check the positionwise certificate")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="exact maximum family by clique search")
    common(p)
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="lower/upper bound table")
    common(p)
    p.add_argument("--d", action="append")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("split", help="finite-n split strength intervals")
    common(p)
    p.add_argument("--d", action="append")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("capacity", help="typed clique profile of a residue graph")
    common(p)
    p.add_argument("--m", required=True, help="cycle:5, complete:3, edges:4:0-1,1-2 ...")
    p.add_argument("--witness-dir")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("table", help="one-shot summary of all closed forms and bounds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"gdperm: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
