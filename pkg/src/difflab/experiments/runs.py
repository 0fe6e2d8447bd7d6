"""The six seeded experiments.

Each runner returns an :class:`ExperimentReport` whose verdicts are
recomputable from the numeric columns with :func:`recompute_verdicts`.
Every trial draws from its own :class:`numpy.random.SeedSequence` child, so
rows do not depend on the order in which trials run.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from ..diffeo import (
    Manifold,
    change_of_variables,
    compose,
    derivative_tower,
    from_log_derivative,
    identity,
    interval_shift_map,
    invert,
    rotation,
)
from ..metrics import dist_1_bv, dist_k_ac, log_derivative_gap
from ..realfn import (
    BVFunc,
    ComposedFunction,
    Difference,
    SingularStaircase,
    bv_norm,
    l1_norm,
    linear_combine,
    rise_overlap,
    separated_family_member,
    structural_points,
    total_variation,
    variation_oracle,
)
from ..sampling import periodize, random_bvfunc, random_diffeo, random_piecewise_polynomial
from .report import ExperimentReport, resolve_tol

SEPARATION_FACTOR = 10.0
MAX_RESAMPLES = 1000


def _children(seed: int, n: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def _min_shift(depth: int) -> float:
    return SEPARATION_FACTOR * 3.0**-depth


# -- separated family ------------------------------------------------------------


def sample_separated(rng: np.random.Generator, num_h: int, depth: int, half_width: float = 1.0 / 6.0) -> np.ndarray:
    """``num_h`` uniform draws from ``[-half_width, half_width]`` with pairwise gaps above ``10 * 3**-depth``."""
    gap = _min_shift(depth)
    if (num_h - 1) * gap >= 2.0 * half_width:
        raise ValueError(f"cannot separate {num_h} shifts by {gap:g} inside the parameter interval")
    for _ in range(MAX_RESAMPLES):
        h = np.sort(rng.uniform(-half_width, half_width, num_h))
        if num_h < 2 or np.min(np.diff(h)) > gap:
            return h
    raise ValueError(f"separation unattainable for num_h={num_h}; reduce num_h or raise depth")


def run_separated_family(r: float = 1.0, num_h: int = 8, depth: int = 16, seed: int = 0, *, tol: float | None = None) -> ExperimentReport:
    """``||F_h|| = r`` for each sampled ``h`` and ``||F_h1 - F_h2||_BV = 2r`` for each pair."""
    pair_tol = resolve_tol(1e-6) if tol is None else tol
    single_tol = min(pair_tol, 1e-9)
    (rng,) = _children(seed, 1)
    hs = sample_separated(rng, num_h, depth)
    members = [separated_family_member(r, float(h), depth) for h in hs]
    rows, verdicts = [], []
    for h, F in zip(hs, members):
        value = bv_norm(F)
        rows.append(("single", float(h), float(h), value, r, abs(value - r)))
        verdicts.append(abs(value - r) < single_tol)
    for i in range(num_h):
        for j in range(i + 1, num_h):
            value = bv_norm(linear_combine([1.0, -1.0], [members[i], members[j]]))
            rows.append(("pair", float(hs[i]), float(hs[j]), value, 2.0 * r, abs(value - 2.0 * r)))
            verdicts.append(abs(value - 2.0 * r) < pair_tol)
    params = {"r": r, "num_h": num_h, "depth": depth, "seed": seed, "pair_tol": pair_tol, "single_tol": single_tol}
    return ExperimentReport("separated-family", params, ("kind", "h1", "h2", "value", "target", "error"), tuple(rows), tuple(verdicts))


# -- Wiener-Young doubling ---------------------------------------------------------

WY_HULL = (1.0 / 3.0, 2.0 / 3.0)


def misaligned_shift(rng: np.random.Generator, g: SingularStaircase, lo: float, hi: float) -> tuple[float, float]:
    """A shift in ``[lo, hi]`` whose translate has rise intervals disjoint from ``g``'s.

    A uniform draw is snapped to the nearest odd multiple of the rise-interval
    length ``u = 3**-D (b - a)``; such shifts carry every rise interval onto a
    plateau.  The overlap is then measured and the draw rejected if it is not
    zero up to rounding.
    """
    u = g.width * 3.0**-g.depth
    floor = max(_min_shift(g.depth), u)
    for _ in range(MAX_RESAMPLES):
        raw = rng.uniform(lo, hi)
        if abs(raw) <= floor:
            continue
        h = (2.0 * round((raw / u - 1.0) / 2.0) + 1.0) * u
        if not (lo <= h <= hi) or abs(h) <= floor:
            continue
        overlap = rise_overlap(g, g.translated(h))
        if overlap <= 1e-9 * u:
            return float(h), overlap
    raise ValueError("misalignment resampling exhausted")


def run_wiener_young(depth: int = 16, num_h: int = 20, seed: int = 0, *, tol: float | None = None) -> ExperimentReport:
    """``V(g_h - g) = 2 V(g)`` for misaligned shifts of a truncated Cantor staircase."""
    tol = resolve_tol(1e-6) if tol is None else tol
    g = SingularStaircase(depth, WY_HULL[0], WY_HULL[1], 1.0)
    G = BVFunc.staircase(g)
    vg = total_variation(G)
    reach = WY_HULL[0] / 2.0
    rows, verdicts = [], []
    for rng in _children(seed, num_h):
        h, overlap = misaligned_shift(rng, g, -reach, reach)
        diff = Difference(BVFunc.staircase(g.translated(h)), G)
        v = variation_oracle(diff, (0.0, 1.0)).estimate
        ratio = v / (2.0 * vg)
        rows.append((h, v, ratio, overlap))
        verdicts.append(abs(ratio - 1.0) < tol)
    params = {"depth": depth, "num_h": num_h, "seed": seed, "tol": tol}
    return ExperimentReport("wiener-young", params, ("h", "variation", "ratio", "rise_overlap"), tuple(rows), tuple(verdicts))


# -- discontinuity of left multiplication ------------------------------------------------


def bv_witness(rng: np.random.Generator, manifold: Manifold, depth: int, r: float = 1.0, alpha_scale: float = 0.25):
    """``g`` with ``log g' = alpha + gamma``: ``gamma`` the separated-family tent of variation ``r``."""
    alpha = periodize(random_piecewise_polynomial(rng, pieces=2, degree=3, smoothness=1, scale=alpha_scale), 1)
    gamma = separated_family_member(r, 0.0, depth)
    G = BVFunc(alpha, gamma.singular)
    return from_log_derivative(G, manifold, 0.0, 1), gamma


def default_h_sequence(depth: int, n_min: int = 3, n_max: int = 12) -> list[float]:
    """``2**-n`` for ``n = n_min..n_max``, cut off where the shift reaches ``10 * 3**-depth``."""
    return [2.0**-n for n in range(n_min, n_max + 1) if 2.0**-n > _min_shift(depth)]


def run_bv_discontinuity(
    depth: int = 12,
    h_sequence: Sequence[float] | None = None,
    manifold="circle",
    seed: int = 0,
    *,
    final_threshold: float = 0.05,
) -> ExperimentReport:
    """``f_n -> e`` in ``d_{1+BV}`` while ``||log(g o f_n)' - log g'||_BV`` stays above ``eps``."""
    manifold = Manifold.parse(manifold)
    hs = default_h_sequence(depth) if h_sequence is None else [float(h) for h in h_sequence]
    if not hs or min(hs) <= _min_shift(depth):
        raise ValueError(f"misalignment precondition violated: every h must exceed {_min_shift(depth):g}")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("h_sequence must be strictly decreasing")
    (rng,) = _children(seed, 1)
    g, gamma = bv_witness(rng, manifold, depth)
    eps = total_variation(gamma, (1.0 / 6.0, 5.0 / 6.0))
    e = identity(manifold)
    rows = []
    for n, h in enumerate(hs, start=1):
        f = rotation(h) if manifold.is_circle else interval_shift_map(h)
        d = dist_1_bv(f, e)
        gap = log_derivative_gap(compose(g, f), g)
        rows.append((n, h, d.total, d["sup"], d["BV"], gap, eps))
    verdicts = _discontinuity_verdicts(rows, final_threshold)
    params = {"depth": depth, "manifold": manifold.value, "seed": seed, "h_sequence": hs, "final_threshold": final_threshold}
    cols = ("n", "h", "dist_1_bv", "sup_term", "log_fn_bv", "gap", "eps")
    return ExperimentReport("bv-discontinuity", params, cols, tuple(rows), verdicts)


def _discontinuity_verdicts(rows, final_threshold: float) -> tuple[bool, ...]:
    out = []
    for i, row in enumerate(rows):
        dist, gap, eps = row[2], row[5], row[6]
        ok = gap >= eps and (i == 0 or dist < rows[i - 1][2])
        if i == len(rows) - 1:
            ok = ok and dist < final_threshold
        out.append(ok)
    return tuple(out)


# -- continuity of the group operations in d_{k+AC} ------------------------------------------


def run_ac_continuity(
    k: int = 1,
    seed: int = 0,
    *,
    manifold="interval",
    n_values: Sequence[int] = (1, 2, 4, 8, 16, 32, 64),
    perturbation_scale: float = 0.01,
) -> ExperimentReport:
    """``f_n = exp-integral of (G + P/n)`` tends to ``f_0``; inverses and right translates follow."""
    manifold = Manifold.parse(manifold)
    rng_f, rng_p, rng_g = _children(seed, 3)
    base = random_diffeo(rng_f, manifold, k, amplitude=0.5)
    P = random_piecewise_polynomial(rng_p, pieces=1, degree=k + 2, smoothness=k - 1)
    if manifold.is_circle:
        P = periodize(P, k)
    # normalize the C^k size of the perturbation, which bounds d(f_1, f_0) up to a constant
    P = P.scale(perturbation_scale / sum(P.derivative(j).sup_abs() if j else P.sup_abs() for j in range(k + 1)))
    g = random_diffeo(rng_g, manifold, k, amplitude=0.5)
    f0, f0_inv, f0_g = base, invert(base), compose(base, g)
    rows = []
    for n in n_values:
        fn = from_log_derivative(BVFunc(base.G.ac + P.scale(1.0 / n)), manifold, base.offset, k)
        rows.append((
            int(n),
            dist_k_ac(fn, f0, k).total,
            dist_k_ac(invert(fn), f0_inv, k).total,
            dist_k_ac(compose(fn, g), f0_g, k).total,
        ))
    params = {"k": k, "seed": seed, "manifold": manifold.value, "n_values": list(n_values), "perturbation_scale": perturbation_scale}
    cols = ("n", "d_fn_f0", "d_inverse", "d_right_translate")
    return ExperimentReport("ac-continuity", params, cols, tuple(rows), _ac_verdicts(rows))


def _ac_verdicts(rows) -> tuple[bool, ...]:
    return tuple(r[2] <= 10.0 * r[1] + 1e-6 and r[3] <= 10.0 * r[1] + 1e-6 for r in rows)


# -- change of variables, substitution continuity, products ------------------------------------

CONTINUITY_STEPS = (1, 2, 4, 8, 16)


def _manifolds(manifold) -> list[Manifold]:
    return [Manifold.INTERVAL, Manifold.CIRCLE] if manifold in (None, "both") else [Manifold.parse(manifold)]


def run_change_of_variables(trials: int = 100, seed: int = 0, *, manifold=None, tol: float | None = None) -> ExperimentReport:
    """Substitution residuals, continuity of ``u -> (g o u) u'`` and of products in ``L^1``."""
    tol = resolve_tol(1e-7) if tol is None else tol
    rows = []
    for manifold_i, M in enumerate(_manifolds(manifold)):
        for t, rng in enumerate(_children(seed + 7919 * manifold_i, trials)):
            g = random_piecewise_polynomial(rng, pieces=int(rng.integers(1, 5)), degree=int(rng.integers(1, 5)))
            u = random_diffeo(rng, M, 1, amplitude=1.0)
            if M.is_circle:
                sub = change_of_variables(g, u)
            else:
                a, b = np.sort(rng.uniform(0.0, 1.0, 2))
                if rng.random() < 0.5:
                    a, b = 0.0, 1.0
                sub = change_of_variables(g, u, (float(a), float(b)))
            rows.append((M.value, "substitution", t, 0, sub.residual))
            if t < trials // 10:
                rows.extend(_continuity_rows(rng, M, t, g, u))
    verdicts = _cov_verdicts(rows, tol)
    params = {"trials": trials, "seed": seed, "manifold": manifold or "both", "tol": tol, "steps": list(CONTINUITY_STEPS)}
    return ExperimentReport("change-of-variables", params, ("manifold", "kind", "trial", "m", "value"), tuple(rows), verdicts)


def _pulled_back(g, u):
    return ComposedFunction(g, u), derivative_tower(u, 1)


class _Product:
    """``x -> a(x) * b(x)`` with the union of both structural point sets."""

    def __init__(self, a, b):
        self.a, self.b = a, b

    def __call__(self, x):
        return np.asarray(self.a(x), dtype=float) * np.asarray(self.b(x), dtype=float)

    def breakpoints(self, lo: float = 0.0, hi: float = 1.0):
        return np.union1d(structural_points(self.a, lo, hi), structural_points(self.b, lo, hi))


def _continuity_rows(rng, M: Manifold, t: int, g, u) -> list[tuple]:
    out = []
    P = random_piecewise_polynomial(rng, pieces=1, degree=3, smoothness=0, scale=0.5)
    if M.is_circle:
        P = periodize(P, 1)
    target = _Product(*_pulled_back(g, u))
    for m in CONTINUITY_STEPS:
        um = from_log_derivative(BVFunc(u.G.ac + P.scale(1.0 / m)), M, u.offset, 1)
        out.append((M.value, "continuity", t, m, l1_norm(Difference(_Product(*_pulled_back(g, um)), target))))
    q = random_piecewise_polynomial(rng, pieces=2, degree=2)
    c = random_piecewise_polynomial(rng, pieces=1, degree=3)
    b = random_piecewise_polynomial(rng, pieces=3, degree=3)
    base = _Product(g, b)
    for m in CONTINUITY_STEPS:
        gm, bm = g + q.scale(1.0 / m), b + c.scale(1.0 / m)
        out.append((M.value, "product", t, m, l1_norm(Difference(_Product(gm, bm), base))))
    return out


def _cov_verdicts(rows, tol: float) -> tuple[bool, ...]:
    out = []
    for i, (_, kind, _, m, value) in enumerate(rows):
        if kind == "substitution":
            out.append(value < tol)
        else:
            out.append(m == CONTINUITY_STEPS[0] or value < rows[i - 1][4])
    return tuple(out)


# -- invariance of variation ----------------------------------------------------------------------


def run_variation_invariance(trials: int = 200, seed: int = 0, *, depth: int = 6, tol: float | None = None) -> ExperimentReport:
    """Composition, additivity, scaling and constant-shift identities of ``V``.

    Each trial draws one random function and checks all four identities; the
    composed variation is computed by the partition oracle and compared with
    the structural variation of the function itself.
    """
    tol = resolve_tol(1e-7) if tol is None else tol
    rows = []
    for t, rng in enumerate(_children(seed, trials)):
        M = Manifold.CIRCLE if t % 2 else Manifold.INTERVAL
        F = _random_invariance_function(rng, M, depth)
        u = _random_homeo(rng, M, t)
        vF = total_variation(F)
        oracle = variation_oracle(ComposedFunction(F, u), (0.0, 1.0))
        mono = bool(np.all(np.diff(oracle.lower_bounds) >= 0.0))
        rows.append((t, M.value, "composition", abs(oracle.estimate - vF), mono))
        e = float(rng.uniform(0.0, 1.0))
        split = total_variation(F, (0.0, e)) + total_variation(F, (e, 1.0))
        rows.append((t, M.value, "additivity", abs(split - vF), True))
        K = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 5.0))
        rows.append((t, M.value, "scaling", abs(total_variation(F * K) - abs(K) * vF), True))
        c = float(rng.normal())
        rows.append((t, M.value, "shift", abs(total_variation(F + c) - vF), True))
    verdicts = tuple(r[3] < tol and r[4] for r in rows)
    params = {"trials": trials, "seed": seed, "depth": depth, "tol": tol}
    return ExperimentReport("variation-invariance", params, ("trial", "manifold", "kind", "residual", "oracle_monotone"), tuple(rows), verdicts)


def _random_invariance_function(rng, M: Manifold, depth: int) -> BVFunc:
    if M.is_circle:
        ac = periodize(random_piecewise_polynomial(rng, pieces=int(rng.integers(1, 4)), degree=3), 1)
        tent = separated_family_member(float(rng.uniform(0.2, 1.5)), float(rng.uniform(-1 / 6, 1 / 6)), depth)
        return BVFunc(ac, tent.singular)
    return random_bvfunc(rng, staircases=int(rng.integers(0, 3)), depth=depth, pieces=int(rng.integers(1, 4)))


def _random_homeo(rng, M: Manifold, t: int):
    if M.is_circle and t % 4 == 1:
        return rotation(float(rng.uniform(0.0, 1.0)))
    return random_diffeo(rng, M, 1, amplitude=1.0)


# -- registry ----------------------------------------------------------------------------------------

VERDICTS: dict[str, Callable] = {
    "separated-family": lambda rep: tuple(
        r[5] < (rep.params["single_tol"] if r[0] == "single" else rep.params["pair_tol"]) for r in rep.rows
    ),
    "wiener-young": lambda rep: tuple(abs(r[2] - 1.0) < rep.params["tol"] for r in rep.rows),
    "bv-discontinuity": lambda rep: _discontinuity_verdicts(rep.rows, rep.params["final_threshold"]),
    "ac-continuity": lambda rep: _ac_verdicts(rep.rows),
    "change-of-variables": lambda rep: _cov_verdicts(rep.rows, rep.params["tol"]),
    "variation-invariance": lambda rep: tuple(r[3] < rep.params["tol"] and r[4] for r in rep.rows),
}


def recompute_verdicts(report: ExperimentReport) -> tuple[bool, ...]:
    """Verdicts derived again from the numeric columns and the stored parameters."""
    return VERDICTS[report.experiment](report)
