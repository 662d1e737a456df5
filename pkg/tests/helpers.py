"""Shared independent oracles and samplers for the test suite.

Everything here is deliberately implemented without the package's LP or
verifier machinery, so tests cross-check two unrelated computations.
"""

from __future__ import annotations

import itertools
import random

from gmpy2 import mpq


def solve_square_system(matrix, rhs):
    """Gaussian elimination over exact rationals; None if singular."""
    n = len(matrix)
    A = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = mpq(1) / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return tuple(A[i][n] for i in range(n))


def enumerate_vertices(halfspaces, dim):
    """All vertices of an H-polytope by brute-force basis enumeration."""
    verts = set()
    for subset in itertools.combinations(halfspaces, dim):
        sol = solve_square_system([h.normal for h in subset], [h.offset for h in subset])
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(h.normal, sol)) <= h.offset for h in halfspaces):
            verts.add(sol)
    return sorted(verts)


def brute_force_max(halfspaces, dim, objective):
    """Exact LP oracle for bounded feasible regions: max over all vertices."""
    verts = enumerate_vertices(halfspaces, dim)
    if not verts:
        return None
    return max(sum(c * x for c, x in zip(objective, v)) for v in verts)


def grid_points(d, denom, limit=1):
    """All rational grid points with the given denominator inside the l1 ball."""
    rng = range(-denom * limit, denom * limit + 1)
    for combo in itertools.product(rng, repeat=d):
        if sum(abs(c) for c in combo) <= denom * limit:
            yield tuple(mpq(c, denom) for c in combo)


def sample_ball_numerators(d, count, seed, denom=1024):
    """Integer numerators of pseudo-random rational ball points.

    Uses exact spacings of sorted uniform integers, so points are uniform
    on the ball up to the denominator quantization and all coordinates
    share the single denominator `denom`.
    """
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        cuts = sorted(rng.randint(0, denom) for _ in range(d))
        prev = 0
        coords = []
        for c in cuts:
            mag = c - prev
            prev = c
            sign = 1 if rng.random() < 0.5 else -1
            coords.append(sign * mag)
        pts.append(tuple(coords))
    return pts


def sample_ball_points(d, count, seed, denom=1024):
    """Pseudo-random rational points of the l1 unit ball with a fixed seed."""
    return [
        tuple(mpq(c, denom) for c in nums)
        for nums in sample_ball_numerators(d, count, seed, denom)
    ]


def exact_uncovered_count(numerators, denom, centers, lam):
    """How many sampled points every homothet misses, exactly.

    Scales points, centers, and the ratio to one common denominator and
    compares integers; no floating point is involved anywhere.
    """
    import numpy as np
    from gmpy2 import lcm

    D = lcm(denom, lam.denominator)
    for u in centers:
        for c in u:
            D = lcm(D, c.denominator)
    D = int(D)
    scale = D // denom
    P = np.asarray(numerators, dtype=np.int64) * scale
    C = np.asarray(
        [[int(c.numerator) * (D // int(c.denominator)) for c in u] for u in centers],
        dtype=np.int64,
    )
    lam_scaled = int(lam.numerator) * (D // int(lam.denominator))
    dmin = np.abs(P[:, None, :] - C[None, :, :]).sum(axis=2).min(axis=1)
    return int((dmin > lam_scaled).sum())


def min_violation(pt, centers, lam):
    """min over centers of (l1 distance - lam); positive means uncovered."""
    best = None
    for u in centers:
        dist = sum(abs(a - b) for a, b in zip(pt, u))
        val = dist - lam
        if best is None or val < best:
            best = val
    return best


def closed_region_contains(halfspaces, pt):
    for h in halfspaces:
        lhs = sum(a * x for a, x in zip(h.normal, pt))
        if h.strict:
            if not lhs < h.offset:
                return False
        elif not lhs <= h.offset:
            return False
    return True
