"""Exact covering verification by region subtraction.

To decide whether the crosspolytope K is covered by homothets
lambda*K + u_i, the verifier maintains a worklist of convex regions
whose union is exactly the part of K not yet covered.  Subtracting one
homothet h from a region R rewrites R minus h as the disjoint pieces

    R_j = R  intersect  H_1 ... H_{j-1}  intersect  (complement of H_j)

over the closed facet halfspaces H_j of h, where each complement is
strict.  Pieces proven empty by exact LP are pruned immediately.  K is
covered exactly when the worklist empties; otherwise any surviving
region yields a rational witness point that every homothet misses.

Touch points (distance to the nearest center exactly lambda) are covered
because homothets are closed while complements are strict; there is no
epsilon anywhere.

Regions are stored as a map from primitive integer normal to the
tightest (offset, strict) pair for that direction.  All normals arising
here are sign vectors or signed unit vectors, so the map stays small and
duplicate directions collapse for free.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from enum import Enum

from gmpy2 import gcd, lcm

from .geometry import (
    FacetId,
    Halfspace,
    HPolytope,
    Homothet,
    Point,
    crosspolytope,
    dot,
    facet_center,
    facet_ids,
    facet_polytope,
    fmt_point,
    fmt_rat,
    homothet_contains,
    homothet_halfspaces,
    l1_norm,
    origin,
    parse_point,
    parse_rat,
    shrunk_facet,
    sign_vectors,
)
from .lp import Infeasible, LinearProgram, Optimal, Witness, lp_solve, region_emptiness
from .rational import Rat, rat


class Mode(Enum):
    FULL_BODY = "full"
    BOUNDARY_ONLY = "boundary"


class CoveringFormatError(ValueError):
    """Raised when covering JSON data is malformed."""


class BoundaryPreconditionError(ValueError):
    """Boundary-only mode requires every homothet to contain the origin."""


class RegionCapExceeded(RuntimeError):
    """The live-region population hit the configured cap."""


@dataclass(frozen=True)
class Covering:
    """m homothets of one ratio: dim, ratio lambda, and the m centers."""

    dim: int
    ratio: Rat
    centers: tuple

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("covering dimension must be >= 2")
        if not self.centers:
            raise ValueError("a covering needs at least one center")
        if not 0 < self.ratio <= 1:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")
        for u in self.centers:
            if len(u) != self.dim:
                raise ValueError("center dimension mismatch")

    @property
    def m(self) -> int:
        return len(self.centers)

    def homothets(self) -> list[Homothet]:
        return [Homothet(self.ratio, u) for u in self.centers]


@dataclass
class CoverTrace:
    regions_explored: int = 0
    lp_calls: int = 0
    peak_live: int = 0
    subtractions: int = 0


@dataclass(frozen=True)
class Covered:
    trace: CoverTrace


@dataclass(frozen=True)
class Uncovered:
    witness: Point
    margin: Rat
    trace: CoverTrace


CoverageResult = Covered | Uncovered


# ---------------------------------------------------------------------------
# region representation


def _primitive(normal, offset):
    """Scale a rational constraint to a primitive integer normal."""
    nums = [rat(c) for c in normal]
    mult = 1
    for c in nums:
        mult = lcm(mult, c.denominator)
    ints = [int(c * mult) for c in nums]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        raise ValueError("halfspace normal must be nonzero")
    scale = rat(mult, g)
    return tuple(v // int(g) for v in ints), rat(offset) * scale


def _add(cons: dict, normal: tuple, offset, strict: bool) -> bool:
    """Merge one constraint into the map; False when trivially empty.

    Keeps the tightest offset per direction (strict beats closed at equal
    offset) and detects contradictions against the opposite direction.
    """
    cur = cons.get(normal)
    if cur is None or offset < cur[0] or (offset == cur[0] and strict and not cur[1]):
        cons[normal] = (offset, strict)
        cur = (offset, strict)
    opp = cons.get(tuple(-v for v in normal))
    if opp is not None:
        gap = cur[0] + opp[0]
        if gap < 0 or (gap == 0 and (cur[1] or opp[1])):
            return False
    return True


def _point_in(cons: dict, p) -> bool:
    for normal, (offset, strict) in cons.items():
        lhs = dot(normal, p)
        if lhs > offset or (strict and lhs == offset):
            return False
    return True


def _halfspaces(cons: dict) -> list[Halfspace]:
    return [
        Halfspace(tuple(rat(v) for v in normal), offset, strict)
        for normal, (offset, strict) in cons.items()
    ]


@dataclass
class _Region:
    cons: dict
    witness: Point

    def to_halfspaces(self) -> list[Halfspace]:
        return _halfspaces(self.cons)


def _region_from_polytope(poly: HPolytope, witness: Point) -> _Region:
    cons: dict = {}
    for hs in poly.halfspaces:
        normal, offset = _primitive(hs.normal, hs.offset)
        if not _add(cons, normal, offset, hs.strict):
            raise ValueError("initial region is trivially empty")
    return _Region(cons, witness)


def _homothet_facets(h: Homothet) -> list[tuple[tuple, Rat]]:
    """Closed facet constraints (sigma, ratio + sigma . center) of a homothet."""
    return [
        (sigma, h.ratio + dot(sigma, h.center)) for sigma in sign_vectors(h.dim)
    ]


def _subtract(region: _Region, hfacets, dim: int, trace: CoverTrace | None):
    """Pieces of region minus the homothet, pruned exactly.

    Returns the (possibly unchanged) list of surviving regions.  Each
    surviving piece carries an exact interior witness point, inherited
    from the parent when the parent's witness lands in the piece and
    otherwise produced by the emptiness LP.
    """
    cons = region.cons
    w = region.witness

    # fast disjointness: some facet direction of h already excluded
    w_in_h = True
    for sigma, off in hfacets:
        got = cons.get(tuple(-v for v in sigma))
        if got is not None:
            lo = -got[0]
            if lo > off or (lo == off and got[1]):
                return [region]
        if w_in_h and dot(sigma, w) > off:
            w_in_h = False

    if not w_in_h:
        # witness misses h but the cheap test was inconclusive: one exact
        # check whether the region meets h at all
        probe = dict(cons)
        alive = True
        for sigma, off in hfacets:
            if not _add(probe, sigma, off, False):
                alive = False
                break
        if alive:
            if trace:
                trace.lp_calls += 1
            alive = isinstance(
                region_emptiness(_halfspaces(probe), dim, decide=True), Witness
            )
        if not alive:
            return [region]

    pieces = []
    prefix = dict(cons)
    for sigma, off in hfacets:
        piece = dict(prefix)
        complement = tuple(-v for v in sigma)
        if _add(piece, complement, -off, True):
            pw = w if _point_in(piece, w) else None
            if pw is None:
                if trace:
                    trace.lp_calls += 1
                out = region_emptiness(_halfspaces(piece), dim, decide=True)
                if isinstance(out, Witness):
                    pw = out.point
            if pw is not None:
                pieces.append(_Region(piece, pw))
        if not _add(prefix, sigma, off, False):
            break
    return pieces


def _subtract_task(args):
    region, hfacets, dim = args
    local = CoverTrace()
    pieces = _subtract(region, hfacets, dim, local)
    return pieces, local.lp_calls


# ---------------------------------------------------------------------------
# public operations


def subtract_homothet(region, h: Homothet):
    """All 2^d decomposition pieces of region minus h, before pruning.

    The j-th piece is the region plus the first j-1 closed facet
    halfspaces of h plus the strict complement of the j-th; pieces are
    pairwise disjoint and their union is region minus h.  Pieces are
    returned unpruned, so there are exactly 2^d of them.
    """
    d = h.dim
    for hs in region:
        if hs.dim != d:
            raise ValueError("dimension mismatch between region and homothet")
    pieces = []
    closed_prefix: list[Halfspace] = []
    for sigma, off in _homothet_facets(h):
        normal = tuple(rat(s) for s in sigma)
        complement = Halfspace(tuple(-c for c in normal), -off, strict=True)
        pieces.append(list(region) + closed_prefix + [complement])
        closed_prefix = closed_prefix + [Halfspace(normal, off)]
    return pieces


def verify_covering(
    covering: Covering,
    mode: Mode = Mode.FULL_BODY,
    region_cap: int = 1_000_000,
    threads: int = 1,
) -> CoverageResult:
    """Exactly decide whether the covering covers K (or its boundary).

    FULL_BODY subtracts every homothet from K itself.  BOUNDARY_ONLY
    runs the same subtraction independently on each of the 2^d facets,
    which is sound and complete when every homothet contains the origin:
    any uncovered interior point scales outward to an uncovered boundary
    point.  The precondition is checked and violating homothets are
    reported, never silently ignored.
    """
    d = covering.dim
    trace = CoverTrace()

    seen = set()
    homothets = []
    for u in covering.centers:
        if u not in seen:
            seen.add(u)
            homothets.append(Homothet(covering.ratio, u))

    if mode is Mode.BOUNDARY_ONLY:
        for i, h in enumerate(homothets):
            if l1_norm(h.center) > h.ratio:
                raise BoundaryPreconditionError(
                    f"homothet {i} (center {fmt_point(h.center)}) does not "
                    "contain the origin; boundary-only mode is unsound for it"
                )
        worklist = [
            _region_from_polytope(facet_polytope(f), facet_center(f))
            for f in facet_ids(d)
        ]
    else:
        worklist = [_region_from_polytope(crosspolytope(d), origin(d))]

    trace.regions_explored = len(worklist)
    trace.peak_live = len(worklist)

    pool = None
    if threads > 1:
        pool = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
    try:
        for h in homothets:
            hfacets = _homothet_facets(h)
            fresh: list[_Region] = []
            if pool is not None and len(worklist) > 1:
                tasks = [(r, hfacets, d) for r in worklist]
                for pieces, lp_calls in pool.map(_subtract_task, tasks, chunksize=8):
                    trace.lp_calls += lp_calls
                    trace.subtractions += 1
                    fresh.extend(pieces)
                    if len(fresh) > region_cap:
                        raise RegionCapExceeded(
                            f"live regions exceeded cap {region_cap}"
                        )
            else:
                for r in worklist:
                    trace.subtractions += 1
                    fresh.extend(_subtract(r, hfacets, d, trace))
                    if len(fresh) > region_cap:
                        raise RegionCapExceeded(
                            f"live regions exceeded cap {region_cap}"
                        )
            worklist = fresh
            trace.regions_explored += len(worklist)
            trace.peak_live = max(trace.peak_live, len(worklist))
    finally:
        if pool is not None:
            pool.shutdown()

    if not worklist:
        return Covered(trace)

    best = None
    for r in worklist:
        out = region_emptiness(r.to_halfspaces(), d)
        trace.lp_calls += 1
        if not isinstance(out, Witness):
            raise RuntimeError("surviving region unexpectedly empty")
        if best is None or out.margin > best.margin:
            best = out
    return Uncovered(best.point, best.margin, trace)


def facet_shadow_check(f: FacetId, vertex_index: int, h: Homothet) -> bool:
    """Is the part of the facet inside h contained in the facet's
    homothetic image shrunk toward the chosen vertex with h's ratio?

    Decided by one LP per constraint of the shrunken facet: maximize the
    constraint's left side over facet intersect h and compare with its
    offset.  The chosen vertex must be covered by h.
    """
    if not 0 < h.ratio < 1:
        raise ValueError(f"ratio must be in (0, 1), got {h.ratio}")
    v = f.vertex(vertex_index)
    if not homothet_contains(h, v):
        raise ValueError(
            f"vertex {fmt_point(v)} is not covered by the homothet; "
            "the shadow property assumes it is"
        )
    domain = facet_polytope(f).halfspaces + homothet_halfspaces(h).halfspaces
    shadow = shrunk_facet(f, vertex_index, h.ratio)
    for hs in shadow.halfspaces:
        out = lp_solve(LinearProgram(domain, hs.normal, f.dim))
        if isinstance(out, Infeasible):
            return True  # facet misses h entirely: containment is vacuous
        assert isinstance(out, Optimal)
        if out.value > hs.offset:
            return False
    return True


# ---------------------------------------------------------------------------
# serialization


def covering_to_json(c: Covering) -> dict:
    return {
        "d": c.dim,
        "lambda": fmt_rat(c.ratio),
        "centers": [fmt_point(u) for u in c.centers],
    }


def covering_from_json(data) -> Covering:
    try:
        d = int(data["d"])
        ratio = parse_rat(data["lambda"])
        centers = tuple(parse_point(u) for u in data["centers"])
        return Covering(d, ratio, centers)
    except CoveringFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CoveringFormatError(f"malformed covering JSON: {exc}") from exc


def result_to_json(res: CoverageResult) -> dict:
    if isinstance(res, Covered):
        return {"verdict": "covered", "regions_explored": res.trace.regions_explored}
    return {
        "verdict": "uncovered",
        "witness": fmt_point(res.witness),
        "margin": fmt_rat(res.margin),
        "regions_explored": res.trace.regions_explored,
    }
