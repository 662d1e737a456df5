"""The known explicit coverings of K by smaller copies, parametric in d.

Three families:

  * trivial   - one unit copy (padded), best possible below 2d copies;
  * gamma2d   - 2d copies of ratio (d-1)/d centered at (1/d) * (+-e_i),
                tight at every facet center and vertex;
  * plus4     - for d >= 4, the 2d axis copies of ratio (2d-3)/(2d-1) at
                distance 2/(2d-1), plus four copies in the (x1, x2)
                coordinate plane at (+-3/(2(2d-1)), +-3/(2(2d-1)), 0, ...).

Unused copies are padded at the origin so a construction always carries
exactly m centers: the covering functional is defined over m-tuples and
certificates keep m explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Point, origin
from .rational import Rat, rat
from .verifier import Covering

TRIVIAL = "trivial"
GAMMA2D = "gamma2d"
PLUS4 = "plus4"


@dataclass(frozen=True)
class KnownConstruction:
    name: str
    d: int
    m: int
    ratio: Rat
    covering: Covering

    def __post_init__(self):
        if self.covering.ratio != self.ratio or self.covering.m != self.m:
            raise ValueError("construction metadata disagrees with its covering")


def _axis_centers(d: int, offset: Rat) -> list[Point]:
    out = []
    for sign in (1, -1):
        for i in range(d):
            u = [rat(0)] * d
            u[i] = sign * offset
            out.append(tuple(u))
    return out


def _padded(centers: list[Point], d: int, m: int) -> tuple[Point, ...]:
    if len(centers) > m:
        raise ValueError("more real centers than copies")
    return tuple(centers) + (origin(d),) * (m - len(centers))


def construct_trivial(d: int, m: int) -> KnownConstruction:
    """One unit copy at the origin, duplicated up to m copies.

    Below 2d copies no ratio under 1 suffices, so the unit copy is
    optimal there; at 2d copies and beyond a real construction exists.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if not 1 <= m < 2 * d:
        raise ValueError(f"trivial construction applies to 1 <= m < 2d, got m={m}")
    ratio = rat(1)
    return KnownConstruction(
        TRIVIAL, d, m, ratio, Covering(d, ratio, _padded([origin(d)], d, m))
    )


def construct_gamma2d(d: int) -> KnownConstruction:
    """2d copies of ratio (d-1)/d at the points (1/d) * (+-e_i)."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    ratio = rat(d - 1, d)
    centers = _axis_centers(d, rat(1, d))
    return KnownConstruction(
        GAMMA2D, d, 2 * d, ratio, Covering(d, ratio, tuple(centers))
    )


def construct_plus4(d: int) -> KnownConstruction:
    """2d+4 copies of ratio (2d-3)/(2d-1) for d >= 4.

    The axis copies sit at distance 2/(2d-1); the four extra copies sit
    at (+-3/(2(2d-1)), +-3/(2(2d-1)), 0, ..., 0) and pick up the part of
    each facet around the touch points n_i that the axis copies miss.
    """
    if d < 4:
        raise ValueError("plus4 construction needs d >= 4")
    q = 2 * d - 1
    ratio = rat(2 * d - 3, q)
    centers = _axis_centers(d, rat(2, q))
    corner = rat(3, 2 * q)
    for s1, s2 in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        u = [rat(0)] * d
        u[0] = s1 * corner
        u[1] = s2 * corner
        centers.append(tuple(u))
    return KnownConstruction(
        PLUS4, d, 2 * d + 4, ratio, Covering(d, ratio, tuple(centers))
    )


def touch_points(d: int) -> list[Point]:
    """The d points n_i of the all-plus facet where the plus4 axis copies
    and the first corner copy all touch: coordinate 1/(2d-1) at position
    i and 2/(2d-1) elsewhere."""
    q = 2 * d - 1
    out = []
    for i in range(d):
        p = [rat(2, q)] * d
        p[i] = rat(1, q)
        out.append(tuple(p))
    return out


def best_known(d: int, m: int) -> KnownConstruction:
    """The smallest proven ratio achievable with at most m copies.

    Extra copies are padded at the origin.  The plus4 family exists only
    for d >= 4; below that gamma2d remains the best known here for every
    m >= 2d.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    if m < 2 * d:
        return construct_trivial(d, m)
    if d >= 4 and m >= 2 * d + 4:
        base = construct_plus4(d)
    else:
        base = construct_gamma2d(d)
    if m == base.m:
        return base
    return KnownConstruction(
        base.name,
        d,
        m,
        base.ratio,
        Covering(d, base.ratio, _padded(list(base.covering.centers), d, m)),
    )
