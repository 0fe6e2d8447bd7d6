"""Acceptance criteria 1-10, at their stated tolerances.

Each test appends one ``criterion N: PASS|FAIL ...`` line, printed in the
terminal summary, then asserts.  Criterion 1 is expected to fail at finite
depth; see the project decision log.
"""

import time

import numpy as np
import pytest

from difflab.diffeo import compose, invert
from difflab.experiments import (
    run_ac_continuity,
    run_bv_discontinuity,
    run_change_of_variables,
    run_separated_family,
    run_variation_invariance,
    run_wiener_young,
)
from difflab.metrics import dist_1_bv, dist_ck, dist_k_ac, manifold_distance
from difflab.realfn import derivative_ae, l1_norm, total_variation
from difflab.sampling import random_bvfunc, random_diffeo


def _record(log, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    log.append(line)
    print(line)
    return ok


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def test_criterion_01_separated_family(criterion_log):
    rep, secs = _timed(run_separated_family, r=1.0, num_h=8, depth=16, seed=0)
    singles = [r for r in rep.records() if r["kind"] == "single"]
    pairs = [r for r in rep.records() if r["kind"] == "pair"]
    single_err = max(abs(r["value"] - 1.0) for r in singles)
    pair_err = max(abs(r["value"] - 2.0) for r in pairs)
    ok = len(singles) == 8 and len(pairs) == 28 and single_err < 1e-9 and pair_err < 1e-6 and secs < 30
    _record(criterion_log, 1, ok, f"single err {single_err:.2e}, pair err {pair_err:.2e}, {secs:.1f}s")
    assert len(pairs) == 28
    assert single_err < 1e-9
    assert pair_err < 1e-6
    assert secs < 30


def test_criterion_02_wiener_young(criterion_log):
    rep, secs = _timed(run_wiener_young, depth=16, num_h=20, seed=0)
    err = max(abs(r - 1.0) for r in rep.column("ratio"))
    ok = len(rep.rows) == 20 and err < 1e-6 and secs < 30
    _record(criterion_log, 2, ok, f"max |ratio - 1| {err:.2e}, {secs:.1f}s")
    assert ok


def test_criterion_03_bv_discontinuity(criterion_log):
    details, ok = [], True
    for manifold in ("circle", "interval"):
        rep, secs = _timed(run_bv_discontinuity, depth=12, manifold=manifold, seed=0)
        dist = rep.column("dist_1_bv")
        gap = rep.column("gap")
        this = (
            rep.column("h") == [2.0**-n for n in range(3, 13)]
            and all(a > b for a, b in zip(dist, dist[1:]))
            and dist[-1] < 0.05
            and min(gap) >= 1.0
            and secs < 60
        )
        ok &= this
        details.append(f"{manifold}: final dist {dist[-1]:.2e}, min gap {min(gap):.3f}, {secs:.1f}s")
    _record(criterion_log, 3, ok, "; ".join(details))
    assert ok


@pytest.mark.parametrize("k", [1, 2])
def test_criterion_04_ac_continuity(criterion_log, k):
    rep, secs = _timed(run_ac_continuity, k=k, seed=0)
    rows = rep.records()
    last = rows[-1]
    tail = rows[-5:]
    monotone = all(
        a[c] > b[c] for c in ("d_inverse", "d_right_translate") for a, b in zip(tail, tail[1:])
    )
    ok = (
        last["n"] == 64
        and last["d_fn_f0"] < 1e-3
        and last["d_inverse"] < 1e-2
        and last["d_right_translate"] < 1e-2
        and monotone
        and secs < 120
    )
    _record(
        criterion_log,
        4,
        ok,
        f"k={k}: d(f64,f0) {last['d_fn_f0']:.2e}, inverse {last['d_inverse']:.2e}, "
        f"right translate {last['d_right_translate']:.2e}, monotone {monotone}, {secs:.1f}s",
    )
    assert ok


def test_criterion_05_change_of_variables(criterion_log):
    rep, secs = _timed(run_change_of_variables, trials=100, seed=0)
    subs = [r for r in rep.records() if r["kind"] == "substitution"]
    per_manifold = {m: sum(r["manifold"] == m for r in subs) for m in ("interval", "circle")}
    worst = max(r["value"] for r in subs)
    ok = per_manifold == {"interval": 100, "circle": 100} and worst < 1e-7 and secs < 30
    _record(criterion_log, 5, ok, f"trials {per_manifold}, max residual {worst:.2e}, {secs:.1f}s")
    assert ok


def test_criterion_06_variation_calculus(criterion_log):
    rep, secs = _timed(run_variation_invariance, trials=200, seed=0)
    kinds = set(rep.column("kind"))
    worst = max(rep.column("residual"))
    monotone = all(rep.column("oracle_monotone"))
    ok = {"additivity", "scaling", "shift", "composition"} <= kinds and worst < 1e-7 and monotone
    _record(criterion_log, 6, ok, f"{len(rep.rows)} cases, max residual {worst:.2e}, oracle monotone {monotone}, {secs:.1f}s")
    assert len(set(rep.column("trial"))) == 200
    assert ok


def _order(h, x, j):
    return h.lift(x) if j == 0 else h.jet(x, j)[j - 1]


def test_criterion_07_derivative_towers(criterion_log):
    rng = np.random.default_rng(7)
    delta = 1e-3
    ratios, roundtrip = [], 0.0
    xs = np.linspace(0.0, 1.0, 2001)
    for probe in range(50):
        k = int(rng.integers(1, 4))
        manifold = ("interval", "circle")[int(rng.integers(2))]
        f, g = random_diffeo(rng, manifold, k), random_diffeo(rng, manifold, k)
        h = (f, compose(f, g), invert(f))[probe % 3]
        pts = h.structural_points
        x = rng.uniform(0.05, 0.95)
        while np.min(np.abs(pts - x)) <= 8 * delta:
            x = rng.uniform(0.05, 0.95)
        x = np.array([x])
        for j in range(1, k + 2):
            exact = _order(h, x, j)[0]
            errs = [
                abs((_order(h, x + d, j - 1)[0] - _order(h, x - d, j - 1)[0]) / (2 * d) - exact)
                for d in (delta, delta / 2)
            ]
            ratios.append(errs[0] / errs[1])
        for a, b in ((invert(h), h), (h, invert(h))):
            roundtrip = max(roundtrip, float(np.max(manifold_distance(h.manifold, compose(a, b).lift(xs), xs))))
    ok = all(3.2 <= r <= 4.8 for r in ratios) and roundtrip < 1e-8
    _record(criterion_log, 7, ok, f"{len(ratios)} ratios in [{min(ratios):.3f}, {max(ratios):.3f}], round trip {roundtrip:.2e}")
    assert ok


def test_criterion_08_ac_variation_identity(criterion_log):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(50):
        F = random_bvfunc(rng, staircases=0, pieces=int(rng.integers(1, 6)), degree=int(rng.integers(1, 7)))
        worst = max(worst, abs(total_variation(F) - l1_norm(derivative_ae(F))))
    ok = worst < 1e-6
    _record(criterion_log, 8, ok, f"max |V - int|F'|| {worst:.2e}")
    assert ok


def test_criterion_09_metric_axioms(criterion_log):
    rng = np.random.default_rng(9)
    asym = excess = dominance = 0.0
    for i in range(50):
        manifold = ("interval", "circle")[i % 2]
        k = 1 + i % 3
        f, g, h = (random_diffeo(rng, manifold, k) for _ in range(3))
        s, t, u = (random_diffeo(rng, manifold, 1, singular=(j == 0)) for j in range(3))
        families = (
            ((f, g, h), lambda a, b: dist_ck(a, b, k).total),
            ((f, g, h), lambda a, b: dist_k_ac(a, b, k).total),
            ((s, t, u), lambda a, b: dist_1_bv(a, b).total),
        )
        for (a, b, c), d in families:
            ab, bc, ac = d(a, b), d(b, c), d(a, c)
            asym = max(asym, abs(ab - d(b, a)))
            excess = max(excess, ac - ab - bc, ab - ac - bc, bc - ab - ac)
        for a, b in ((f, g), (g, h), (f, h)):
            dominance = max(dominance, dist_ck(a, b, k).total - dist_k_ac(a, b, k).total)
    ok = asym == 0.0 and excess <= 1e-7 and dominance <= 0.0
    _record(criterion_log, 9, ok, f"asymmetry {asym:.1e}, triangle excess {excess:.2e}, C^k over k+AC {dominance:.1e}")
    assert ok


RERUNS = {
    "separated-family": lambda: run_separated_family(num_h=4, depth=10, seed=3),
    "wiener-young": lambda: run_wiener_young(depth=10, num_h=4, seed=3),
    "bv-discontinuity": lambda: run_bv_discontinuity(depth=8, seed=3),
    "ac-continuity": lambda: run_ac_continuity(k=1, seed=3, n_values=(1, 2, 4, 8)),
    "change-of-variables": lambda: run_change_of_variables(trials=10, seed=3),
    "variation-invariance": lambda: run_variation_invariance(trials=10, seed=3),
}


def test_criterion_10_determinism(criterion_log):
    differing = [name for name, run in RERUNS.items() if run().to_csv() != run().to_csv()]
    ok = not differing
    _record(criterion_log, 10, ok, f"{len(RERUNS)} experiments rerun, differing: {differing or 'none'}")
    assert ok
