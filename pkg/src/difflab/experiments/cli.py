"""``difflab <experiment> [options]``: run one experiment and write its report.

Exit status is ``0`` iff every row passes, ``1`` if some row fails and ``2``
for usage or parameter errors.
"""

from __future__ import annotations

import argparse
import sys

from .runs import (
    run_ac_continuity,
    run_bv_discontinuity,
    run_change_of_variables,
    run_separated_family,
    run_variation_invariance,
    run_wiener_young,
)


def _separated(a):
    kw = {"seed": a.seed}
    if a.depth is not None:
        kw["depth"] = a.depth
    if a.trials is not None:
        kw["num_h"] = a.trials
    return run_separated_family(**kw)


def _wiener_young(a):
    kw = {"seed": a.seed}
    if a.depth is not None:
        kw["depth"] = a.depth
    if a.trials is not None:
        kw["num_h"] = a.trials
    return run_wiener_young(**kw)


def _discontinuity(a):
    kw = {"seed": a.seed, "manifold": a.manifold or "circle"}
    if a.depth is not None:
        kw["depth"] = a.depth
    return run_bv_discontinuity(**kw)


def _ac(a):
    return run_ac_continuity(k=a.k or 1, seed=a.seed, manifold=a.manifold or "interval")


def _cov(a):
    kw = {"seed": a.seed, "manifold": a.manifold}
    if a.trials is not None:
        kw["trials"] = a.trials
    return run_change_of_variables(**kw)


def _invariance(a):
    kw = {"seed": a.seed}
    if a.trials is not None:
        kw["trials"] = a.trials
    if a.depth is not None:
        kw["depth"] = a.depth
    return run_variation_invariance(**kw)


EXPERIMENTS = {
    "separated-family": _separated,
    "wiener-young": _wiener_young,
    "bv-discontinuity": _discontinuity,
    "ac-continuity": _ac,
    "change-of-variables": _cov,
    "variation-invariance": _invariance,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="difflab", description=__doc__.splitlines()[0])
    p.add_argument("experiment", choices=sorted(EXPERIMENTS))
    p.add_argument("--depth", type=int, help="staircase truncation depth")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, help="regularity order (ac-continuity)")
    p.add_argument("--trials", type=int, help="number of trials or sampled shifts")
    p.add_argument("--manifold", choices=["interval", "circle"])
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = EXPERIMENTS[args.experiment](args)
    except ValueError as exc:
        print(f"difflab: {exc}", file=sys.stderr)
        return 2
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    verdict = "pass" if report.passed else f"FAIL ({report.verdicts.count(False)}/{len(report.verdicts)} rows)"
    print(f"{args.experiment}: {verdict}", file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
