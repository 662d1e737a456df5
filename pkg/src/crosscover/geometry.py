"""Exact geometry of the d-dimensional crosspolytope (the unit l1 ball).

The crosspolytope K = {x : |x_1| + ... + |x_d| <= 1} has 2d vertices
(the signed unit vectors) and 2^d facets, one per sign vector sigma: the
facet is K intersected with {x : sigma . x = 1}.  Homothets lambda*K + u,
facets, and shrunken facets all carry halfspace (H-)representations built
from the same sign-vector machinery.  Everything here is exact rational;
no predicate in this module ever rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .rational import Rat, fmt_rat, parse_rat, rat

_ZERO = rat(0)
_ONE = rat(1)

# A point is a tuple of Rat of length d (d >= 1; the library targets d >= 2).
Point = tuple


def point(coords) -> Point:
    return tuple(rat(c) if not isinstance(c, type(_ZERO)) else c for c in coords)


def origin(d: int) -> Point:
    return (_ZERO,) * d


def fmt_point(p: Point) -> list[str]:
    return [fmt_rat(c) for c in p]


def parse_point(items: Sequence[str]) -> Point:
    return tuple(parse_rat(s) for s in items)


def _check_same_dim(p: Point, q: Point) -> None:
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")


def l1_norm(p: Point) -> Rat:
    return sum((c if c >= 0 else -c) for c in p) if p else _ZERO


def l1_distance(p: Point, q: Point) -> Rat:
    """Exact l1 distance sum_i |p_i - q_i|.

    This is also the crosspolytope-induced distance between p and q: the
    width of K along any direction is measured so that translates of
    (dist/2)*K are the smallest homothets containing both points.
    """
    _check_same_dim(p, q)
    total = _ZERO
    for a, b in zip(p, q):
        diff = a - b
        total += diff if diff >= 0 else -diff
    return total


def dot(a: Sequence, p: Point) -> Rat:
    return sum((ai * pi for ai, pi in zip(a, p)), _ZERO)


def vertices(d: int) -> list[Point]:
    """The 2d vertices of K: +e_1 .. +e_d, then -e_1 .. -e_d."""
    out = []
    for sign in (1, -1):
        for i in range(d):
            v = [_ZERO] * d
            v[i] = rat(sign)
            out.append(tuple(v))
    return out


def sign_vectors(d: int) -> Iterator[tuple[int, ...]]:
    """All sigma in {+1, -1}^d in canonical order (lexicographic, + before -)."""
    return itertools.product((1, -1), repeat=d)


@dataclass(frozen=True)
class Halfspace:
    """One linear constraint: normal . x <= offset, or < offset when strict."""

    normal: tuple
    offset: Rat
    strict: bool = False

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise ValueError("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def holds(self, p: Point) -> bool:
        lhs = dot(self.normal, p)
        return lhs < self.offset if self.strict else lhs <= self.offset


@dataclass(frozen=True)
class HPolytope:
    """A convex region as an intersection of halfspaces."""

    halfspaces: tuple
    dim: int

    def contains(self, p: Point) -> bool:
        if len(p) != self.dim:
            raise ValueError(f"dimension mismatch: {len(p)} vs {self.dim}")
        return all(h.holds(p) for h in self.halfspaces)


@dataclass(frozen=True)
class Homothet:
    """A scaled translate ratio*K + center, as a closed set.

    As a point set this is {x : ||x - center||_1 <= ratio}.  The ratio is
    restricted to (0, 1]: larger copies never arise when covering K by
    smaller copies of itself.
    """

    ratio: Rat
    center: Point

    def __post_init__(self):
        if not (0 < self.ratio <= 1):
            raise ValueError(f"homothet ratio must be in (0, 1], got {self.ratio}")

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, p: Point) -> bool:
        return l1_distance(self.center, p) <= self.ratio


def homothet_contains(h: Homothet, p: Point) -> bool:
    """Closed containment test: ||center - p||_1 <= ratio."""
    return h.contains(p)


def homothet_halfspaces(h: Homothet) -> HPolytope:
    """H-form of a homothet: sigma . x <= ratio + sigma . center, all sigma.

    The 2^d closed halfspaces are emitted in canonical sign order; their
    intersection equals the homothet as a set.
    """
    d = h.dim
    out = []
    for sigma in sign_vectors(d):
        nrm = tuple(rat(s) for s in sigma)
        out.append(Halfspace(nrm, h.ratio + dot(sigma, h.center)))
    return HPolytope(tuple(out), d)


def crosspolytope(d: int) -> HPolytope:
    """K itself: sigma . x <= 1 over all 2^d sign vectors."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return homothet_halfspaces(Homothet(_ONE, origin(d)))


@dataclass(frozen=True)
class FacetId:
    """A facet of K, named by its sign vector sigma: K intersect {sigma.x = 1}."""

    signs: tuple

    def __post_init__(self):
        if not self.signs or any(s not in (1, -1) for s in self.signs):
            raise ValueError("facet signs must be a nonempty tuple of +-1")

    @property
    def dim(self) -> int:
        return len(self.signs)

    def vertex(self, index: int) -> Point:
        """The facet vertex sigma_i * e_i for 1-based index i."""
        d = self.dim
        if not 1 <= index <= d:
            raise ValueError(f"vertex index must be in 1..{d}, got {index}")
        v = [_ZERO] * d
        v[index - 1] = rat(self.signs[index - 1])
        return tuple(v)


def facet_ids(d: int) -> list[FacetId]:
    return [FacetId(sigma) for sigma in sign_vectors(d)]


def facet_center(f: FacetId) -> Point:
    """The barycenter (sigma_1/d, ..., sigma_d/d) of the facet simplex."""
    d = f.dim
    return tuple(rat(s, d) for s in f.signs)


def facet_polytope(f: FacetId) -> HPolytope:
    """H-form of a facet: sigma.x = 1 (two opposite halfspaces) and sigma_i x_i >= 0."""
    d = f.dim
    sigma = tuple(rat(s) for s in f.signs)
    neg_sigma = tuple(-c for c in sigma)
    out = [Halfspace(sigma, _ONE), Halfspace(neg_sigma, -_ONE)]
    for i in range(d):
        nrm = [_ZERO] * d
        nrm[i] = -sigma[i]
        out.append(Halfspace(tuple(nrm), _ZERO))
    return HPolytope(tuple(out), d)


def shrunk_facet(f: FacetId, vertex_index: int, ratio: Rat) -> HPolytope:
    """The image of a facet under the homothety with center at one of its
    vertices and the given ratio.

    For vertex v = sigma_i e_i the image is the sub-simplex of the facet
    where sigma_i x_i >= 1 - ratio; the other coordinate constraints and
    the facet hyperplane are unchanged.
    """
    ratio = rat(ratio) if not isinstance(ratio, type(_ZERO)) else ratio
    if not (0 < ratio < 1):
        raise ValueError(f"shrink ratio must be in (0, 1), got {ratio}")
    d = f.dim
    if not 1 <= vertex_index <= d:
        raise ValueError(f"vertex index must be in 1..{d}, got {vertex_index}")
    sigma = tuple(rat(s) for s in f.signs)
    neg_sigma = tuple(-c for c in sigma)
    out = [Halfspace(sigma, _ONE), Halfspace(neg_sigma, -_ONE)]
    for i in range(d):
        nrm = [_ZERO] * d
        nrm[i] = -sigma[i]
        bound = -( _ONE - ratio) if i == vertex_index - 1 else _ZERO
        out.append(Halfspace(tuple(nrm), bound))
    return HPolytope(tuple(out), d)
