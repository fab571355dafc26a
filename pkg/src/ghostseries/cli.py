"""Command-line surface: exact JSON/CSV emission for every computation.

Exit codes: 0 success, 1 comparison mismatch, 2 usage error,
3 certification/precision/external-data failure.  Rationals are always
serialized as {"num", "den"} integer pairs, never as floats.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .boundary import ap_check, boundary_polygon, halo_profile, scan_burn_in, ap_parameters
from .dims import dim_cusp_eta8, dim_cusp_gamma0, dim_pnew, gamma0_invariants
from .errors import CertificationError, ComponentMismatch, ExternalDataError, GhostError, PrecisionError
from .modified import Weight2SeedSlopes, bundled_seed, load_seed, modified_coefficient
from .polygon import DEFAULT_CAP, SlopeList, classical_ghost_slopes, ghost_slopes
from .series import coefficient_divisor
from .weightspace import (
    Annulus,
    CharClassical,
    Classical,
    ComponentLabel,
    EtaEight,
    ExplicitW,
    PrimeContext,
    WeightPoint,
)


class UsageError(ValueError):
    pass


def _rat(x) -> dict:
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def _slopes_json(slopes: SlopeList) -> list[dict]:
    return [
        {"index": j + 1, "slope": _rat(s), "certified": j < slopes.certified_count}
        for j, s in enumerate(slopes.slopes)
    ]


def parse_weight(spec: str, ctx: PrimeContext) -> WeightPoint:
    """Parse the weight grammar:

    k=<int> | annulus:<k0>:<num>/<den> | char:<k>:<p^t> | eta8:<k>
    | w:<int>:prec=<m>[:eps=<r>]
    """
    m = re.fullmatch(r"k=(-?\d+)", spec)
    if m:
        return Classical(int(m.group(1)))
    m = re.fullmatch(r"annulus:(-?\d+):(-?\d+)/(\d+)", spec)
    if m:
        return Annulus(int(m.group(1)), Fraction(int(m.group(2)), int(m.group(3))))
    m = re.fullmatch(r"char:(-?\d+):(\d+)(?:\^(\d+))?", spec)
    if m:
        k = int(m.group(1))
        if m.group(3) is not None:
            base, t = int(m.group(2)), int(m.group(3))
            cond = base ** t
        else:
            cond = int(m.group(2))
            base, t = ctx.p, 0
            while cond % ctx.p == 0 and cond > 1:
                cond //= ctx.p
                t += 1
            if cond != 1:
                raise UsageError(f"conductor in {spec!r} is not a power of p = {ctx.p}")
            base, cond = ctx.p, base ** 0
        if base != ctx.p:
            raise UsageError(f"conductor base {base} differs from p = {ctx.p}")
        return CharClassical(k, t)
    m = re.fullmatch(r"eta8:(\d+)", spec)
    if m:
        return EtaEight(int(m.group(1)))
    m = re.fullmatch(r"w:(-?\d+):prec=(\d+)(?::eps=(\d+))?", spec)
    if m:
        residue = int(m.group(3)) if m.group(3) is not None else None
        return ExplicitW(int(m.group(1)), int(m.group(2)), residue)
    raise UsageError(f"cannot parse weight specification {spec!r}")


def _context(args) -> PrimeContext:
    return PrimeContext(args.p, args.N)


def _cap(args) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get("GHOST_CAP")
    return int(env) if env else DEFAULT_CAP


def _seed(args, ctx: PrimeContext) -> Weight2SeedSlopes | None:
    if not getattr(args, "modified", False):
        return None
    if ctx.p != 2:
        raise UsageError("--modified applies only to p = 2")
    if getattr(args, "seed", None):
        seed = load_seed(args.seed)
        if seed.N != ctx.N:
            raise UsageError(f"seed file is for N = {seed.N}, not N = {ctx.N}")
        return seed
    return bundled_seed(ctx.N)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_slopes(args) -> int:
    ctx = _context(args)
    seed = _seed(args, ctx)
    weight = parse_weight(args.weight, ctx)
    if args.mode == "overconvergent":
        if args.count is None:
            raise UsageError("--count is required in overconvergent mode")
        slopes = ghost_slopes(ctx, weight, args.count, seed=seed, cap=_cap(args))
    else:
        if not isinstance(weight, Classical):
            raise UsageError(f"mode {args.mode!r} needs a classical weight k=<int>")
        slopes = classical_ghost_slopes(ctx, weight.k, args.mode, seed=seed, cap=_cap(args))
    if args.format == "csv":
        print("index,slope,certified")
        for j, s in enumerate(slopes.slopes, start=1):
            print(f"{j},{s},{str(j <= slopes.certified_count).lower()}")
    else:
        print(json.dumps(_slopes_json(slopes), indent=2))
    return 0


def _cmd_series(args) -> int:
    ctx = _context(args)
    seed = _seed(args, ctx)
    eps = ComponentLabel(args.component, ctx.p)
    for i in range(1, args.up_to + 1):
        if seed is not None:
            coef = modified_coefficient(ctx, i, seed)
        else:
            coef = coefficient_divisor(ctx, eps, i)
        zeros = []
        for z, mult in coef.zeros.items():
            kind = "eta8" if isinstance(z, EtaEight) else "classical"
            zeros.append({"type": kind, "k": z.k, "mult": mult})
        print(json.dumps({"i": i, "lambda": coef.lam, "zeros": zeros}))
    return 0


def _cmd_dims(args) -> int:
    ctx = _context(args)
    inv_n = gamma0_invariants(ctx.N)
    inv_np = gamma0_invariants(ctx.N * ctx.p)

    def inv_json(inv) -> dict:
        return {
            "level": inv.level,
            "index": inv.index,
            "nu2": inv.nu2,
            "nu3": inv.nu3,
            "cusps": inv.cusps,
            "genus": inv.genus,
        }

    table = []
    include_eta8 = ctx.p == 2 and ctx.N % 2 == 1
    for k in range(2, args.k_max + 1, 2):
        row = {
            "k": k,
            "dim_tame": dim_cusp_gamma0(ctx.N, k),
            "dim_level_Np": dim_cusp_gamma0(ctx.N * ctx.p, k),
            "dim_pnew": dim_pnew(ctx, k),
        }
        if include_eta8:
            row["dim_eta8"] = dim_cusp_eta8(ctx.N, k, 1)
        table.append(row)
    doc = {
        "command": "dims",
        "p": ctx.p,
        "N": ctx.N,
        "invariants": {"tame": inv_json(inv_n), "full": inv_json(inv_np)},
        "dimensions": table,
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_boundary(args) -> int:
    ctx = _context(args)
    seed = _seed(args, ctx)
    eps = ComponentLabel(args.component, ctx.p)
    result = boundary_polygon(ctx, eps, args.count, seed=seed, cap=_cap(args))
    doc = {
        "command": "boundary",
        "p": ctx.p,
        "N": ctx.N,
        "component": eps.residue,
        "modified": seed is not None,
        "slopes": _slopes_json(result.slopes),
    }
    if args.ap:
        if (args.n_ap is None) != (args.delta is None):
            raise UsageError("--n-ap and --delta must be supplied together")
        if args.n_ap is not None:
            n_ap, delta = args.n_ap, args.delta
        else:
            n_ap, delta = ap_parameters(ctx)
        burn = scan_burn_in(result.slopes, n_ap, delta, args.burn_in_max)
        if burn is None:
            doc["ap_report"] = {"n_ap": n_ap, "delta": _rat(delta), "verified": False}
        else:
            report = ap_check(result.slopes, n_ap, delta, burn)
            doc["ap_report"] = {
                "n_ap": report.n_ap,
                "delta": _rat(report.delta),
                "burn_in": report.burn_in,
                "verified_through": report.verified_through,
                "verified": report.verified,
            }
    print(json.dumps(doc, indent=2))
    return 0


def _halo_csv(profile, n: int) -> str:
    lines = ["v," + ",".join(f"s{t}" for t in range(1, n + 1))]
    for v, slopes in profile.rows:
        lines.append(",".join([str(v)] + [str(s) for s in slopes.slopes]))
    return "\n".join(lines) + "\n"


def _cmd_halo(args) -> int:
    ctx = _context(args)
    seed = _seed(args, ctx)
    intervals = args.interval or [0]
    if len(intervals) > 1 and not args.out_dir:
        raise UsageError("--out-dir is required when sampling several intervals")
    for r in intervals:
        profile = halo_profile(
            ctx, args.center, r, samples=args.samples, n=args.count, seed=seed, cap=_cap(args)
        )
        text = _halo_csv(profile, args.count)
        if args.out_dir:
            path = Path(args.out_dir) / f"halo_c{args.center}_r{r}.csv"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            print(f"wrote {path}")
        else:
            sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# fixture comparison

@dataclass(frozen=True)
class ComparisonReport:
    fixture: str
    computed: SlopeList
    compared: int
    diffs: tuple[tuple[int, Fraction, Fraction], ...]  # (index, expected, computed)
    first_mismatch: int | None
    truncated: str | None

    @property
    def match(self) -> bool:
        return self.first_mismatch is None


def compare(fixture: dict, computed: SlopeList, fixture_name: str = "<fixture>") -> ComparisonReport:
    """Exact rational comparison of computed slopes against a fixture list."""
    try:
        expected = [Fraction(int(s["num"]), int(s["den"])) for s in fixture["slopes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed fixture: {exc}") from exc
    compared = min(len(expected), len(computed))
    truncated = None
    if len(expected) < len(computed):
        truncated = f"fixture lists {len(expected)} slopes; compared that prefix"
    elif len(expected) > len(computed):
        truncated = f"computed {len(computed)} slopes; compared that prefix"
    diffs = tuple((j + 1, expected[j], computed[j]) for j in range(compared))
    first_mismatch = None
    for j in range(compared):
        if expected[j] != computed[j]:
            first_mismatch = j
            break
    return ComparisonReport(fixture_name, computed, compared, diffs, first_mismatch, truncated)


def _cmd_compare(args) -> int:
    ctx = _context(args)
    seed = _seed(args, ctx)
    weight = parse_weight(args.weight, ctx)
    with open(args.fixture, "r", encoding="utf-8") as handle:
        fixture = json.load(handle)
    if args.mode == "overconvergent":
        if args.count is None:
            raise UsageError("--count is required in overconvergent mode")
        computed = ghost_slopes(ctx, weight, args.count, seed=seed, cap=_cap(args))
    else:
        if not isinstance(weight, Classical):
            raise UsageError(f"mode {args.mode!r} needs a classical weight k=<int>")
        computed = classical_ghost_slopes(ctx, weight.k, args.mode, seed=seed, cap=_cap(args))
    report = compare(fixture, computed, args.fixture)
    doc = {
        "command": "compare",
        "fixture": args.fixture,
        "description": fixture.get("description", ""),
        "source": fixture.get("source", ""),
        "match": report.match,
        "compared": report.compared,
        "first_mismatch": report.first_mismatch,
        "truncated": report.truncated,
        "diffs": [
            {"index": j, "expected": _rat(e), "computed": _rat(c), "equal": e == c}
            for j, e, c in report.diffs
        ],
    }
    print(json.dumps(doc, indent=2))
    return 0 if report.match else 1


# ---------------------------------------------------------------------------
# parser and dispatch

def _add_common(sub) -> None:
    sub.add_argument("--p", type=int, required=True, help="the prime p")
    sub.add_argument("--N", type=int, default=1, help="tame level N coprime to p")
    sub.add_argument("--cap", type=int, default=None, help="truncation degree cap (default 10000, env GHOST_CAP)")
    sub.add_argument("--modified", action="store_true", help="use the modified p=2 series")
    sub.add_argument("--seed", type=str, default=None, help="weight-2 slope seed file (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghostseries",
        description="Exact slope predictions from the ghost series: Newton polygons, "
        "boundary polygons and halo profiles, all in exact rational arithmetic.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("slopes", help="slopes of the Newton polygon at a weight")
    _add_common(sp)
    sp.add_argument("--weight", required=True, help="weight spec, e.g. k=0 or annulus:0:1/2")
    sp.add_argument("--count", type=int, default=None, help="number of slopes")
    sp.add_argument("--mode", choices=["tame", "full", "overconvergent"], default="overconvergent")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=_cmd_slopes)

    sp = subs.add_parser("series", help="coefficient divisors as JSON lines")
    _add_common(sp)
    sp.add_argument("--up-to", type=int, required=True, help="largest coefficient index")
    sp.add_argument("--component", type=int, default=0, help="even residue mod p-1")
    sp.set_defaults(func=_cmd_series)

    sp = subs.add_parser("dims", help="dimension tables and curve invariants")
    _add_common(sp)
    sp.add_argument("--k-max", type=int, default=30)
    sp.set_defaults(func=_cmd_dims)

    sp = subs.add_parser("boundary", help="w-adic slopes of the boundary polygon")
    _add_common(sp)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--component", type=int, default=0)
    sp.add_argument("--ap", action="store_true", help="attach an arithmetic-progression report (odd p)")
    sp.add_argument("--burn-in-max", type=int, default=100)
    sp.add_argument("--n-ap", type=int, default=None, help="override the progression count")
    sp.add_argument("--delta", type=int, default=None, help="override the common difference")
    sp.set_defaults(func=_cmd_boundary)

    sp = subs.add_parser("halo", help="slope rows over annuli r < v < r+1 as CSV")
    _add_common(sp)
    sp.add_argument("--center", type=int, default=0, help="even integer center k0")
    sp.add_argument("--interval", type=int, action="append", help="interval r (repeatable)")
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--out-dir", type=str, default=None, help="write one CSV per interval here")
    sp.set_defaults(func=_cmd_halo)

    sp = subs.add_parser("compare", help="compare computed slopes against a fixture file")
    _add_common(sp)
    sp.add_argument("--fixture", required=True)
    sp.add_argument("--weight", required=True)
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--mode", choices=["tame", "full", "overconvergent"], default="overconvergent")
    sp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (PrecisionError, CertificationError, ExternalDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ComponentMismatch, GhostError, ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
