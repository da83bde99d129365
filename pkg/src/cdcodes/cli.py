"""Command-line entry point: bounds, the comparison table, code construction and verification.

Exit status: 0 success or pass, 1 verification failure or golden mismatch,
2 usage error (including refused enumerations).
"""

from __future__ import annotations

import argparse
import sys

from . import bounds, codefile, constructions
from .qcount import gaussian_binomial
from .rank_metric import BudgetExceeded
from .verify import DEFAULT_SAMPLES, verify_cdc, verify_matrices

LOWER = ("lemma13", "corollary2", "corollary3", "corollary4", "corollary5", "corollary6", "theorem2")
BOUNDS = ("gaussian",) + LOWER + ("upper-lemma1", "ratio")
CONSTRUCTIONS = ("lifted-mrd", "parallel", "lemma13", "theorem2", "corollary3", "corollary4", "corollary5",
                 "corollary6")


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")


def build_family(name: str, q: int, n=None, k=None, delta=None) -> constructions.CodeFamily:
    """Named construction with the parameters it takes."""
    ns = argparse.Namespace(q=q, n=n, k=k, delta=delta)
    if name in ("lifted-mrd", "parallel", "lemma13", "corollary3"):
        _need(ns, "n", "k", "delta")
        if name == "lifted-mrd":
            return constructions.lifted_mrd(q, n, k, delta)
        if name == "parallel":
            return constructions.parallel(q, n, k, delta)
        if name == "corollary3":
            return constructions.corollary3(q, n, k, delta)
        return constructions.multilevel(q, n, k, delta, constructions.lemma13_vectors(n, k, delta),
                                        targets=constructions.lemma13_dims(n, k, delta), name="lemma13")
    if name == "theorem2":
        return constructions.theorem2(q, 3 if delta is None else delta)
    if name in ("corollary4", "corollary5", "corollary6"):
        return constructions.corollary_family(q, int(name[-1]))
    raise UsageError(f"unknown construction {name!r}")


# ---------------------------------------------------------------------------
# Subcommands


def cmd_bound(args) -> int:
    q = args.q
    if args.which == "gaussian":
        _need(args, "n", "k")
        print(gaussian_binomial(q, args.n, args.k))
        return 0
    if args.which in LOWER:
        params = {}
        if args.which in ("lemma13", "corollary3"):
            _need(args, "n", "k", "delta")
            params = dict(n=args.n, k=args.k, delta=args.delta)
        elif args.which == "theorem2" and args.delta is not None:
            params = dict(delta=args.delta)
        if args.old:
            print(bounds.old_lower_bound(args.which, q))
        else:
            print(bounds.lower_bound(args.which, q, **params))
        return 0
    oracle = bounds.BoundOracle(fallback=args.fallback)
    if args.which == "upper-lemma1":
        _need(args, "n", "k", "delta")
        ub = bounds.upper_bound_lemma1(q, args.n, args.delta, args.k, oracle)
        print(ub.value)
        for name, val, prov in ub.terms:
            print(f"  {name} = {val}" + (f"  [{prov}]" if prov else ""), file=sys.stderr)
        return 0
    r = bounds.ratio_remark3(q, oracle)
    print(f"ratio = {r.value.numerator}/{r.value.denominator}")
    print(f"decimal = {r.decimal(6)}")
    print(f"lower = {r.lower}")
    print(f"upper = {r.upper.value} (case {r.upper.case})")
    for name, val, prov in r.upper.terms:
        print(f"  {name} = {val}" + (f"  [{prov}]" if prov else ""))
    print(f"meets 0.94548: {'yes' if r.meets('0.94548') else 'no'}")
    return 0


def _parse_row(text: str) -> tuple[int, int, int]:
    try:
        n, d, k = (int(x) for x in text.split(","))
    except ValueError as e:
        raise UsageError(f"--row expects n,d,k, got {text!r}") from e
    return n, d, k


def cmd_table1(args) -> int:
    rows = [_parse_row(r) for r in args.row] if args.row else None
    rep = bounds.table1(args.q, rows)
    print(rep.to_json() if args.json else rep.to_text())
    return 0 if rep.ok else 1


def cmd_construct(args) -> int:
    fam = build_family(args.construction, args.q, args.n, args.k, args.delta)
    mats = list(fam.members(budget=args.budget, limit=args.limit))
    text = codefile.render(fam.q, fam.n, fam.k, mats)
    if args.out == "-":
        sys.stdout.write(text)
        out = sys.stderr
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        out = sys.stdout
    print(f"formula size: {fam.size}", file=out)
    print(f"formula: {fam.size_formula}", file=out)
    print(f"written: {len(mats)}", file=out)
    return 0


def cmd_verify(args) -> int:
    if (args.infile is None) == (args.construction is None):
        raise UsageError("give exactly one of --in and --construction")
    if args.infile is not None:
        if args.mode != "exhaustive":
            raise UsageError("code files are verified exhaustively")
        _need(args, "distance")
        with open(args.infile) as fh:
            _, _, _, mats = codefile.read_code(fh)
        rep = verify_matrices(mats, args.distance, budget=args.budget, subject=args.infile)
    else:
        fam = build_family(args.construction, args.q, args.n, args.k, args.delta)
        rep = verify_cdc(fam, args.distance, mode=args.mode, seed=args.seed, samples=args.samples,
                         budget=args.budget, weighting=args.weighting)
    print(rep.to_json() if args.json else rep.to_text())
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------


def _params(p: argparse.ArgumentParser, q_required: bool = True) -> None:
    p.add_argument("--q", type=int, required=q_required, help="field size (prime power)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int, help="half the subspace distance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cdcodes", description="Constant-dimension subspace codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate a bound exactly")
    b.add_argument("--which", required=True, choices=BOUNDS)
    _params(b)
    b.add_argument("--old", action="store_true", help="the previously known bound instead")
    b.add_argument("--fallback", default="singleton", choices=bounds.FALLBACKS, help="oracle fallback rule")
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("table1", help="reproduce the bound table against the golden values")
    t.add_argument("--q", type=int, nargs="*", help="restrict to these q (none given: empty report)")
    t.add_argument("--row", action="append", help="restrict to a row n,d,k (repeatable)")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table1)

    c = sub.add_parser("construct", help="enumerate a construction into a code file")
    c.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    _params(c)
    c.add_argument("--out", required=True, help="output path, or - for stdout")
    c.add_argument("--limit", type=int, help="write only the first N members")
    c.add_argument("--budget", type=int, help="enumeration budget (default from CDCODES_BUDGET)")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the minimum subspace distance")
    v.add_argument("--in", dest="infile", help="code file to check")
    v.add_argument("--construction", choices=CONSTRUCTIONS)
    _params(v, q_required=False)
    v.add_argument("--distance", type=int, help="claimed minimum subspace distance (default 2 delta)")
    v.add_argument("--mode", default="exhaustive", choices=("exhaustive", "sampled"))
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--weighting", default="uniform", choices=("uniform", "size"))
    v.add_argument("--budget", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    try:
        if getattr(args, "command", None) == "verify" and args.construction and args.q is None:
            raise UsageError("--construction needs --q")
        return args.func(args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"cdcodes: error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"cdcodes: refused: {e}; use --limit or raise the budget", file=sys.stderr)
        return 2
    except (ValueError, constructions.ConstructionError) as e:
        print(f"cdcodes: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
