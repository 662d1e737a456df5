"""Exact rational linear programming.

A dense-tableau two-phase simplex over exact rationals with Bland's
pivoting rule, which guarantees termination on the heavily degenerate
geometry this package produces (covering verification constantly lands
on vertices where many constraints tie).  Big-M is never used.

On top of the solver sits the verifier's core primitive: deciding
whether a region given by a mix of closed and strict halfspaces is
empty.  Strictness is encoded with a single margin variable t: every
constraint is scaled so its normal has l1 norm 1, strict constraints are
tightened by t, and t is maximized.  The strict region is nonempty
exactly when the optimum t is positive, in which case the optimal point
is a witness and t its margin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Halfspace, Point
from .rational import Rat, rat

_ZERO = rat(0)
_ONE = rat(1)


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to closed halfspace constraints."""

    constraints: tuple
    objective: tuple
    dim: int


@dataclass(frozen=True)
class Optimal:
    value: Rat
    point: Point


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Witness:
    point: Point
    margin: Rat


EMPTY = Empty()
INFEASIBLE = Infeasible()
UNBOUNDED = Unbounded()


def _pivot(T, rhs, obj, basis, r, e):
    """Pivot row r on column e; returns the objective value gained."""
    piv = T[r][e]
    row = T[r]
    if piv != 1:
        inv = _ONE / piv
        T[r] = row = [v * inv for v in row]
        rhs[r] = rhs[r] * inv
    theta = rhs[r]
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][e]
        if f:
            Ti = T[i]
            T[i] = [a - f * b for a, b in zip(Ti, row)]
            rhs[i] = rhs[i] - f * theta
    gain = obj[e] * theta
    f = obj[e]
    if f:
        obj[:] = [a - f * b for a, b in zip(obj, row)]
    basis[r] = e
    return gain


def _price_out(T, rhs, basis, cost):
    """Reduced-cost row and objective value for the current basis."""
    obj = list(cost)
    value = _ZERO
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            value += cb * rhs[i]
            Ti = T[i]
            obj = [o - cb * t for o, t in zip(obj, Ti)]
    return obj, value


def _simplex_loop(T, rhs, obj, value, basis, stop_when_positive=False):
    """Run Bland-rule pivots to optimality; returns (status, value)."""
    m = len(T)
    ncols = len(obj)
    while True:
        if stop_when_positive and value > 0:
            return "optimal", value
        e = None
        for j in range(ncols):
            if obj[j] > 0:
                e = j
                break
        if e is None:
            return "optimal", value
        r = None
        best = None
        for i in range(m):
            coef = T[i][e]
            if coef > 0:
                ratio = rhs[i] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                    best = ratio
                    r = i
        if r is None:
            return "unbounded", value
        value += _pivot(T, rhs, obj, basis, r, e)


def simplex_max(rows, rhs_in, cost, stop_when_positive=False):
    """maximize cost . y subject to rows . y <= rhs, y >= 0, exactly.

    Returns (status, value, y) with status "optimal", "infeasible" or
    "unbounded"; y is a basic solution of the standard-form system.
    """
    m = len(rows)
    n = len(cost)
    rhs = list(rhs_in)
    negatives = [i for i in range(m) if rhs[i] < 0]
    n_art = len(negatives)
    art_start = n + m
    ncols = art_start + n_art

    T = []
    basis = [0] * m
    art_col = {}
    for k, i in enumerate(negatives):
        art_col[i] = art_start + k
    for i in range(m):
        row = [_ZERO] * ncols
        flip = i in art_col
        for j, a in enumerate(rows[i]):
            if a:
                row[j] = -a if flip else a
        row[n + i] = -_ONE if flip else _ONE
        if flip:
            rhs[i] = -rhs[i]
            row[art_col[i]] = _ONE
            basis[i] = art_col[i]
        else:
            basis[i] = n + i
        T.append(row)

    if n_art:
        phase1_cost = [_ZERO] * art_start + [-_ONE] * n_art
        obj, value = _price_out(T, rhs, basis, phase1_cost)
        status, value = _simplex_loop(T, rhs, obj, value, basis)
        if value < 0:
            return "infeasible", None, None
        # drive any leftover artificial basics out (their value is 0)
        dead = []
        for i in range(m):
            if basis[i] >= art_start:
                e = next((j for j in range(art_start) if T[i][j] != 0), None)
                if e is None:
                    dead.append(i)
                else:
                    _pivot(T, rhs, obj, basis, i, e)
        for i in sorted(dead, reverse=True):
            del T[i], rhs[i], basis[i]
        T = [row[:art_start] for row in T]

    full_cost = list(cost) + [_ZERO] * (len(T[0]) - n if T else 0)
    obj, value = _price_out(T, rhs, basis, full_cost)
    status, value = _simplex_loop(T, rhs, obj, value, basis, stop_when_positive)
    if status == "unbounded":
        return "unbounded", None, None
    y = [_ZERO] * len(full_cost)
    for i, b in enumerate(basis):
        y[b] = rhs[i]
    return "optimal", value, y[:n]


def lp_solve(lp: LinearProgram):
    """Exact optimum of a closed-constraint LP over free variables.

    Free variables are split into positive and negative parts before the
    standard-form solve, so the returned point is an exact optimizer of
    the original program (not necessarily a vertex of its feasible set).
    """
    d = lp.dim
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if len(lp.objective) != d:
        raise ValueError("objective dimension mismatch")
    rows = []
    rhs = []
    for hs in lp.constraints:
        if hs.strict:
            raise ValueError("lp_solve accepts closed constraints only")
        if hs.dim != d:
            raise ValueError("constraint dimension mismatch")
        a = [rat(c) for c in hs.normal]
        rows.append(a + [-c for c in a])
        rhs.append(rat(hs.offset))
    cost = [rat(c) for c in lp.objective]
    cost = cost + [-c for c in cost]

    status, value, y = simplex_max(rows, rhs, cost)
    if status == "infeasible":
        return INFEASIBLE
    if status == "unbounded":
        return UNBOUNDED
    x = tuple(y[i] - y[d + i] for i in range(d))
    return Optimal(value, x)


def region_emptiness(region: Sequence[Halfspace], dim: int, decide: bool = False):
    """Decide emptiness of a mixed strict/closed convex region.

    The caller guarantees the closed relaxation is bounded (regions here
    are always subsets of the crosspolytope).  Returns EMPTY or a
    Witness whose point satisfies every closed constraint and every
    strict constraint with normalized slack >= margin > 0.

    With decide=True the solve stops at the first basic solution whose
    margin is positive; the witness is exact but its margin may be
    smaller than optimal.  Pruning in the verifier only needs the
    verdict, so this saves most of the pivoting work.
    """
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    rows = []
    rhs = []
    tcol = 2 * dim
    for hs in region:
        if hs.dim != dim:
            raise ValueError("constraint dimension mismatch")
        norm = sum((c if c >= 0 else -c) for c in hs.normal)
        if norm == 0:
            raise ValueError("halfspace normal must be nonzero")
        a = [rat(c) / norm for c in hs.normal]
        row = a + [-c for c in a] + [_ONE if hs.strict else _ZERO]
        rows.append(row)
        rhs.append(rat(hs.offset) / norm)
    rows.append([_ZERO] * tcol + [_ONE])
    rhs.append(_ONE)
    cost = [_ZERO] * tcol + [_ONE]

    status, value, y = simplex_max(rows, rhs, cost, stop_when_positive=decide)
    if status == "infeasible":
        return EMPTY
    if status == "unbounded":
        raise RuntimeError("unbounded relaxation: region is not inside a bounded set")
    if value <= 0:
        return EMPTY
    x = tuple(y[i] - y[dim + i] for i in range(dim))
    return Witness(x, value)
