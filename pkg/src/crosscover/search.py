"""Heuristic search for coverings below the best known ratio.

Everything in this module is floating point and proves nothing: a zero
sampled deficiency is evidence, not a theorem.  The bridge back to exact
arithmetic is snap_and_verify, which rounds centers to small-denominator
rationals (continued-fraction best approximations), rounds the ratio
upward, and hands the result to the exact verifier.  Only that Covered
verdict may be reported as a proven upper bound.

Sampling is boundary-only: every tight point of the known constructions
lies on the boundary, and whenever all centers contain the origin an
uncovered interior point scales outward to an uncovered boundary point,
so the boundary is decisive exactly where the search operates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constructions import best_known
from .rational import rat
from .verifier import Covered, Covering, Mode, verify_covering

DEFAULT_SEED = 20240817


@dataclass(frozen=True)
class SearchConfig:
    d: int
    m: int
    lambda_hi: float
    lambda_lo: float
    iterations: int = 3000
    restarts: int = 3
    sample_count: int = 2000
    seed: int = DEFAULT_SEED
    max_denominator: int = 64

    def __post_init__(self):
        if self.d < 2 or self.m < 1:
            raise ValueError("need d >= 2 and m >= 1")
        if not self.lambda_lo < self.lambda_hi:
            raise ValueError("lambda_lo must be below lambda_hi")
        if self.sample_count < 1000:
            raise ValueError("sample_count must be at least 1000")
        if self.max_denominator < 1:
            raise ValueError("max_denominator must be positive")


@dataclass
class SearchReport:
    best_lambda_float: float
    centers_float: list
    snapped: Covering | None = None
    exact_verdict: object | None = None
    deficiency_curve: list = field(default_factory=list)


def boundary_samples(d: int, count: int, seed) -> np.ndarray:
    """Uniform points on the boundary of the l1 ball, facet by facet.

    Each sample picks a facet sign vector uniformly and barycentric
    weights from the flat Dirichlet (normalized exponentials).
    """
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=(count, d)) * 2 - 1
    w = rng.exponential(size=(count, d))
    w /= w.sum(axis=1, keepdims=True)
    return signs * w


def _signed_worst_margin(samples: np.ndarray, centers: np.ndarray, lam: float) -> float:
    """max over samples of (distance to nearest center - lambda); may be
    negative when every sample is covered with slack."""
    dists = np.abs(samples[:, None, :] - centers[None, :, :]).sum(axis=2)
    return float(dists.min(axis=1).max() - lam)


def deficiency(centers, lam: float, d: int, sample_count: int, seed) -> float:
    """Clamped sampled covering defect: 0 means no sampled violation."""
    samples = boundary_samples(d, sample_count, seed)
    c = np.asarray(centers, dtype=float).reshape(-1, d)
    return max(0.0, _signed_worst_margin(samples, c, lam))


def _clip_to_ball(u: np.ndarray) -> None:
    norm = np.abs(u).sum()
    if norm > 1.0:
        u /= norm


def _initial_centers(cfg: SearchConfig, rng, restart: int) -> np.ndarray:
    try:
        seedc = best_known(cfg.d, cfg.m).covering.centers
        base = np.array([[float(Fraction(int(c.numerator), int(c.denominator)))
                          for c in u] for u in seedc])
    except ValueError:
        base = None
    if base is None:
        pts = rng.uniform(-1, 1, size=(cfg.m, cfg.d))
        for u in pts:
            _clip_to_ball(u)
        return pts
    pts = base.copy()
    if restart > 0:
        pts += rng.normal(scale=0.02 * restart, size=pts.shape)
        for u in pts:
            _clip_to_ball(u)
    return pts


def _anneal_once(cfg: SearchConfig, lam: float, samples: np.ndarray, restart: int):
    """One simulated-annealing run; deterministic in (cfg.seed, lam, restart).

    Geometric cooling; each move perturbs a single center coordinate with
    Gaussian noise and clips the center back into the ball.  The signed
    worst margin is minimized so that, once the sampled deficiency hits
    zero, further moves still deepen the covering slack (which is what
    lets the rational snap survive verification).
    """
    rng = np.random.default_rng((cfg.seed, restart, int(lam * 1e9) & 0x7FFFFFFF))
    centers = _initial_centers(cfg, rng, restart)
    dists = np.abs(samples[:, None, :] - centers[None, :, :]).sum(axis=2)
    cost = float(dists.min(axis=1).max() - lam)
    best_centers = centers.copy()
    best_cost = cost

    t0, t_end = 0.05, 1e-4
    alpha = (t_end / t0) ** (1.0 / max(cfg.iterations, 1))
    temp = t0
    for _ in range(cfg.iterations):
        j = int(rng.integers(cfg.m))
        k = int(rng.integers(cfg.d))
        old_coord = centers[j, k]
        old_col = dists[:, j].copy()
        centers[j, k] += rng.normal(scale=0.05 + temp)
        _clip_to_ball(centers[j])
        dists[:, j] = np.abs(samples - centers[j]).sum(axis=1)
        new_cost = float(dists.min(axis=1).max() - lam)
        dc = new_cost - cost
        if dc <= 0 or rng.random() < math.exp(-dc / temp):
            cost = new_cost
            if cost < best_cost:
                best_cost = cost
                best_centers = centers.copy()
        else:
            centers[j, k] = old_coord
            dists[:, j] = old_col
        temp *= alpha
        if best_cost < -0.05:
            break  # comfortably covered; deeper slack buys nothing
    return best_centers, best_cost


def optimize_centers(cfg: SearchConfig, lam: float):
    """Best centers over all restarts for a fixed ratio.

    Returns (centers, clamped deficiency).  Restarts are reduced in
    restart order, so the result does not depend on scheduling.
    """
    samples = boundary_samples(cfg.d, cfg.sample_count, cfg.seed)
    best = None
    for r in range(cfg.restarts):
        centers, cost = _anneal_once(cfg, lam, samples, r)
        if best is None or cost < best[1]:
            best = (centers, cost)
        if best[1] <= 0:
            break
    return best[0], max(0.0, best[1])


def snap_lambda_up(lam: float, max_denominator: int):
    """Least rational >= lam with denominator <= max_denominator."""
    if lam > 1:
        return rat(1)
    exact = Fraction(lam)
    best = None
    for q in range(1, max_denominator + 1):
        p = math.ceil(exact * q)
        cand = Fraction(p, q)
        if best is None or cand < best:
            best = cand
    return rat(min(best, Fraction(1)))


def snap_centers(centers, max_denominator: int):
    snapped = []
    for u in np.asarray(centers, dtype=float):
        snapped.append(
            tuple(rat(Fraction(float(c)).limit_denominator(max_denominator)) for c in u)
        )
    return tuple(snapped)


def snap_and_verify(centers, lam: float, max_denominator: int):
    """Round a float covering to rationals and verify it exactly.

    Centers snap to nearest (continued-fraction best approximation with
    bounded denominator); the ratio snaps upward so the claim is never
    stronger than the floats support.  An Uncovered verdict is a valid
    outcome, not an error.
    """
    arr = np.asarray(centers, dtype=float)
    ratio = snap_lambda_up(lam, max_denominator)
    covering = Covering(arr.shape[1], ratio, snap_centers(arr, max_denominator))
    return covering, verify_covering(covering, mode=Mode.FULL_BODY)


def bisect_lambda(cfg: SearchConfig) -> SearchReport:
    """Binary search for the smallest ratio the annealer can still cover.

    lambda_hi must succeed from the seeded start (error otherwise); the
    final report carries the full deficiency curve, the best float ratio,
    and, when a rational snap of the best covering verifies, the exact
    Covered verdict that makes the upper bound a proven one.
    """
    curve = []
    hi = cfg.lambda_hi
    lo = cfg.lambda_lo
    centers, defc = optimize_centers(cfg, hi)
    curve.append((hi, defc))
    if defc > 0:
        raise ValueError(
            f"lambda_hi={hi} admits no covering from the seeded start; "
            "raise the starting ratio"
        )
    best_centers = centers
    tol = max(1.0 / (2 * cfg.max_denominator), 0.004)
    while hi - lo > tol:
        mid = (hi + lo) / 2
        centers, defc = optimize_centers(cfg, mid)
        curve.append((mid, defc))
        if defc <= 0:
            hi = mid
            best_centers = centers
        else:
            lo = mid

    report = SearchReport(
        best_lambda_float=hi,
        centers_float=[list(map(float, u)) for u in best_centers],
        deficiency_curve=curve,
    )
    # try the honest snap first, then climb by single denominator steps:
    # the floats sit within tol of the boundary, where nearest-rounding
    # of centers can cost a little coverage slack
    for bump in range(4):
        lam_try = hi + bump / cfg.max_denominator
        covering, verdict = snap_and_verify(best_centers, lam_try, cfg.max_denominator)
        report.snapped = covering
        report.exact_verdict = verdict
        if isinstance(verdict, Covered):
            break
    return report
