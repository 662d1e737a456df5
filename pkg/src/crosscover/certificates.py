"""Machine-checkable lower-bound certificates for the covering functional.

A lower bound "gamma >= lambda for m copies" means: for every mu < lambda,
m homothets of ratio mu cannot cover K.  All certificates here reduce to
exact distance facts plus counting, via one observation: a segment inside
a mu-homothet has l1 length at most 2*mu, so two points at distance
>= 2*lambda can never share a copy of any ratio below lambda.

Three certificate kinds, all re-checkable from scratch without trusting
the producer:

  * complete_conflict - a set S of pairwise-conflicting points with
    m < |S|; each copy covers at most one point of S.
  * structured        - the 2d vertices (pairwise conflicting, and
    conflicting with every listed cover point) force 2d dedicated
    copies; the remaining m - 2d copies each cover at most a maximum
    compatibility clique of the cover points, and
    (m - 2d) * maxclique < |cover points| is a contradiction.
  * pigeonhole_clique - as above, but the remaining copies would induce
    a partition of the cover points into m - 2d conflict-free classes,
    i.e. a proper (m - 2d)-coloring of their conflict graph; exact
    refutation of that coloring is the contradiction.

The checker recomputes every distance, re-runs the exact clique and
coloring solvers, and re-evaluates the counting inequality; the stated
numbers in a certificate are documentation, not trusted input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import (
    Point,
    facet_center,
    facet_ids,
    fmt_point,
    l1_distance,
    l1_norm,
    parse_point,
    vertices,
)
from .rational import Rat, fmt_rat, parse_rat, rat

COMPLETE_CONFLICT = "complete_conflict"
STRUCTURED = "structured"
PIGEONHOLE_CLIQUE = "pigeonhole_clique"
MONOTONE = "monotone"

MAX_CLIQUE_POINTS = 64
MAX_COVER_POINTS = 64


class CertificateError(ValueError):
    """Raised for structurally malformed certificates."""


@dataclass(frozen=True)
class WitnessSet:
    points: tuple
    label: str = ""

    def __post_init__(self):
        if not self.points:
            raise ValueError("witness set must be nonempty")
        d = len(self.points[0])
        for p in self.points:
            if len(p) != d:
                raise ValueError("witness points must share one dimension")
            if l1_norm(p) > 1:
                raise ValueError(f"witness point {fmt_point(p)} lies outside K")
        if len(set(self.points)) != len(self.points):
            raise ValueError("witness points must be distinct")

    @property
    def dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class ConflictGraph:
    n: int
    edges: frozenset
    threshold: Rat


def conflict_graph(s: WitnessSet, lam: Rat) -> ConflictGraph:
    """Edge {i, j} exactly when the points sit at distance >= 2*lambda.

    Such a pair can never share a homothet of any ratio below lambda, so
    for lower-bound purposes conflicting points need distinct copies.
    """
    thr = 2 * rat(lam)
    edges = set()
    pts = s.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if l1_distance(pts[i], pts[j]) >= thr:
                edges.add((i, j))
    return ConflictGraph(len(pts), frozenset(edges), thr)


# ---------------------------------------------------------------------------
# exact clique and coloring solvers (bitmask branch and bound)


def _conflict_masks(pts, lam):
    thr = 2 * rat(lam)
    n = len(pts)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if l1_distance(pts[i], pts[j]) >= thr:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def _complement_masks(masks):
    n = len(masks)
    full = (1 << n) - 1
    return [(full & ~masks[i]) & ~(1 << i) for i in range(n)]


def _max_clique_masks(adj):
    """Exact maximum clique via branch and bound with greedy coloring bounds."""
    n = len(adj)
    if n == 0:
        return 0, []
    order = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    radj = [0] * n
    for i, v in enumerate(order):
        for j, w in enumerate(order):
            if i != j and (adj[v] >> w) & 1:
                radj[i] |= 1 << j
    best_size = 0
    best: list[int] = []

    def expand(cand, cur):
        nonlocal best_size, best
        if cand == 0:
            if len(cur) > best_size:
                best_size = len(cur)
                best = cur.copy()
            return
        # color candidates greedily; a clique uses each color at most once
        colored = []
        rest = cand
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                colored.append((v, color))
                rest &= ~(1 << v)
                avail &= ~(1 << v)
                avail &= ~radj[v]
        for v, c in reversed(colored):
            if len(cur) + c <= best_size:
                return
            cur.append(v)
            expand(cand & radj[v], cur)
            cur.pop()
            cand &= ~(1 << v)

    expand((1 << n) - 1, [])
    return best_size, sorted(order[i] for i in best)


def _greedy_coloring_bound(adjsets):
    n = len(adjsets)
    colors: dict[int, int] = {}
    saturation = [set() for _ in range(n)]
    while len(colors) < n:
        v = max(
            (u for u in range(n) if u not in colors),
            key=lambda u: (len(saturation[u]), len(adjsets[u])),
        )
        c = 0
        while c in saturation[v]:
            c += 1
        colors[v] = c
        for w in adjsets[v]:
            saturation[w].add(c)
    return max(colors.values()) + 1 if colors else 0


def _k_colorable(adjsets, k: int) -> bool:
    """Exact k-colorability: most-constrained-vertex backtracking with
    forward checking, new color classes opened one at a time (they are
    interchangeable)."""
    n = len(adjsets)
    if k >= n:
        return True
    if k <= 0:
        return n == 0
    assign: dict[int, int] = {}
    domains = [set(range(k)) for _ in range(n)]

    def bt(used):
        if len(assign) == n:
            return True
        v = min(
            (u for u in range(n) if u not in assign),
            key=lambda u: (len(domains[u]), -len(adjsets[u])),
        )
        for c in sorted(domains[v]):
            if c > used:
                break
            assign[v] = c
            pruned = []
            feasible = True
            for w in adjsets[v]:
                if w not in assign and c in domains[w]:
                    domains[w].discard(c)
                    pruned.append(w)
                    if not domains[w]:
                        feasible = False
            if feasible and bt(max(used, c + 1)):
                return True
            del assign[v]
            for w in pruned:
                domains[w].add(c)
        return False

    return bt(0)


def _adjsets(masks):
    return [
        {j for j in range(len(masks)) if (m >> j) & 1} for m in masks
    ]


def max_compatible_clique(s: WitnessSet, lam: Rat) -> tuple[int, list[int]]:
    """Largest subset of the witness set with pairwise distance < 2*lambda.

    This caps how many of the points one homothet of ratio below lambda
    can cover; computed by exact branch and bound.
    """
    if len(s.points) > MAX_CLIQUE_POINTS:
        raise ValueError(f"witness set exceeds clique solver cap {MAX_CLIQUE_POINTS}")
    conflict = _conflict_masks(s.points, lam)
    return _max_clique_masks(_complement_masks(conflict))


def min_clique_cover(s: WitnessSet, lam: Rat) -> int:
    """Minimum number of compatibility cliques covering the witness set.

    Equals the chromatic number of the conflict graph and lower-bounds
    the number of copies needed to cover the set with any ratio below
    lambda.  Exact: clique bound below, refutation-based search above.
    """
    if len(s.points) > MAX_COVER_POINTS:
        raise ValueError(f"witness set exceeds cover solver cap {MAX_COVER_POINTS}")
    conflict = _conflict_masks(s.points, lam)
    adjsets = _adjsets(conflict)
    clique_lo, _ = _max_clique_masks(conflict)
    largest_class, _ = _max_clique_masks(_complement_masks(conflict))
    capacity_lo = -(-len(s.points) // largest_class)
    hi = _greedy_coloring_bound(adjsets)
    for k in range(max(clique_lo, capacity_lo, 1), hi):
        if _k_colorable(adjsets, k):
            return k
    return max(hi, 1)


# ---------------------------------------------------------------------------
# certificate payloads


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Self-contained record proving gamma^d_m >= lambda (when proven).

    Unproven certificates carry the conjectured ratio and say so; the
    checker accepts them only as honestly flagged, never as proofs.
    """

    d: int
    m: int
    lam: Rat
    kind: str
    proven: bool
    witness_points: tuple = ()
    vertex_points: tuple = ()
    cover_points: tuple = ()
    sample_clique: tuple = ()
    clique_bound: int | None = None
    cover_lower_bound: int | None = None
    note: str = ""


def all_touch_points(d: int) -> list[Point]:
    """The 2^d * d facet touch points of the 2d+4 covering, canonically.

    For each facet sign vector sigma and position j, the point whose j-th
    coordinate is sigma_j/(2d-1) and whose other coordinates are
    2*sigma_k/(2d-1); the whole family follows from this one rule.
    """
    q = 2 * d - 1
    out = []
    for f in facet_ids(d):
        for j in range(d):
            out.append(
                tuple(
                    rat(s * (1 if k == j else 2), q)
                    for k, s in enumerate(f.signs)
                )
            )
    return out


def witness_quadruple(d: int = 4) -> tuple:
    """Four touch points with all six pairwise distances exactly 2*lambda.

    Only the d = 4 family is used: the quadruple lives on the facets
    (+,+,+,+), (+,-,+,-), (-,-,-,+), (-,+,-,-) with the low coordinate at
    positions 1, 3, 3, 1 respectively.
    """
    if d != 4:
        raise ValueError("the witness quadruple is defined for d = 4")
    q = 2 * d - 1
    anchors = [
        ((1, 1, 1, 1), 0),
        ((1, -1, 1, -1), 2),
        ((-1, -1, -1, 1), 2),
        ((-1, 1, -1, -1), 0),
    ]
    return tuple(
        tuple(rat(s * (1 if k == j else 2), q) for k, s in enumerate(signs))
        for signs, j in anchors
    )


def _central_facet_pair(d: int) -> list[Point]:
    return [tuple(rat(1, d) for _ in range(d)), tuple(rat(-1, d) for _ in range(d))]


def lower_bound(d: int, m: int) -> LowerBoundCertificate:
    """Strongest certificate this framework proves for (d, m).

    Dispatch: below 2d copies the vertices alone conflict pairwise at
    ratio 1; up to 2d+1 copies the vertices plus the two opposite facet
    centers conflict pairwise at (d-1)/d; at 2d+2 and 2d+3 the clique
    capacity of the 2^d facet centers closes the count; at 2d+4 (d = 4)
    the touch-point conflict graph is not 4-colorable.  Elsewhere the
    certificate is an honestly flagged conjectural bound.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")

    vs = tuple(vertices(d))

    if m < 2 * d:
        return LowerBoundCertificate(
            d, m, rat(1), COMPLETE_CONFLICT, True, witness_points=vs
        )

    lam = rat(d - 1, d)
    if m <= 2 * d + 1:
        pts = vs + tuple(_central_facet_pair(d))
        note = ""
        if d == 3:
            note = (
                "octahedron case: outside the usual d >= 4 statement, but "
                "every distance fact is checked exactly"
            )
        return LowerBoundCertificate(
            d, m, lam, COMPLETE_CONFLICT, True, witness_points=pts, note=note
        )

    if m <= 2 * d + 3 and 2**d <= MAX_CLIQUE_POINTS:
        centers = tuple(facet_center(f) for f in facet_ids(d))
        k, members = max_compatible_clique(WitnessSet(centers, "facet centers"), lam)
        counting = (m - 2 * d) * k < 2**d
        note = ""
        if d == 3:
            note = (
                "octahedron case: outside the usual d >= 4 statement, but "
                "every fact is checked exactly"
            )
        if not counting:
            note = (
                f"conjectural gap: {m - 2 * d} copies x clique capacity {k} "
                f"already reaches the {2**d} facet centers"
            )
        return LowerBoundCertificate(
            d,
            m,
            lam,
            STRUCTURED,
            counting,
            vertex_points=vs,
            cover_points=centers,
            sample_clique=tuple(members),
            clique_bound=k,
            note=note,
        )

    if d == 4 and m == 2 * d + 4:
        lam = rat(2 * d - 3, 2 * d - 1)
        touch = tuple(all_touch_points(d))
        quad = witness_quadruple(d)
        sample = tuple(touch.index(p) for p in quad)
        adjsets = _adjsets(_conflict_masks(touch, lam))
        refuted = not _k_colorable(adjsets, m - 2 * d)
        return LowerBoundCertificate(
            d,
            m,
            lam,
            PIGEONHOLE_CLIQUE,
            refuted,
            vertex_points=vs,
            cover_points=touch,
            sample_clique=sample,
            cover_lower_bound=m - 2 * d + 1,
            note="" if refuted else "conjectural gap: coloring not refuted",
        )

    # no proof available: report the conjectured continuation, flagged
    if m == 2 * d + 3:
        lam, why = rat(d - 1, d), "conjectural gap beyond the proven range"
    elif m == 2 * d + 4 and d >= 5:
        lam, why = rat(2 * d - 3, 2 * d - 1), "conjectural gap: matching bound proven only for d = 4"
    else:
        lam, why = rat(0), "no lower bound established at this m"
    return LowerBoundCertificate(d, m, lam, MONOTONE, False, note=why)


# ---------------------------------------------------------------------------
# checking


def _require(cond, message):
    if not cond:
        raise CertificateError(message)


def _pairwise_conflicting(pts, thr):
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if l1_distance(pts[i], pts[j]) < thr:
                return False
    return True


def _cross_conflicting(left, right, thr):
    return all(
        l1_distance(p, q) >= thr for p in left for q in right
    )


def check_certificate(cert: LowerBoundCertificate) -> bool:
    """Re-verify a certificate from scratch.

    Recomputes every distance, re-runs the clique/coloring solvers, and
    re-evaluates the counting inequality.  Returns False when any fact
    fails; raises CertificateError when the certificate is structurally
    malformed (wrong dimensions, empty point sets, points outside K).
    """
    _require(cert.d >= 2, "dimension must be >= 2")
    _require(cert.m >= 1, "m must be >= 1")
    _require(cert.lam >= 0, "lambda must be nonnegative")
    if cert.kind == MONOTONE:
        return not cert.proven  # a monotone record never proves anything

    _require(cert.lam > 0, "lambda must be positive")
    thr = 2 * cert.lam

    if cert.kind == COMPLETE_CONFLICT:
        pts = cert.witness_points
        _require(len(pts) >= 2, "complete conflict needs at least two points")
        WitnessSet(pts)  # dimension/ball/distinctness validation
        _require(len(pts[0]) == cert.d, "witness dimension mismatch")
        return _pairwise_conflicting(pts, thr) and cert.m < len(pts)

    if cert.kind in (STRUCTURED, PIGEONHOLE_CLIQUE):
        vs, cover = cert.vertex_points, cert.cover_points
        _require(len(vs) >= 2 and len(cover) >= 1, "missing point sets")
        WitnessSet(vs)
        WitnessSet(cover)
        _require(len(vs[0]) == cert.d and len(cover[0]) == cert.d, "dimension mismatch")
        _require(cert.m >= len(vs), "counting requires m >= number of vertices")
        if not _pairwise_conflicting(vs, thr):
            return False
        if not _cross_conflicting(vs, cover, thr):
            return False
        spare = cert.m - len(vs)
        if cert.kind == STRUCTURED:
            k, _ = max_compatible_clique(WitnessSet(cover), cert.lam)
            counting = spare * k < len(cover)
        else:
            for i in cert.sample_clique:
                _require(0 <= i < len(cover), "sample clique index out of range")
            sample = [cert.cover_points[i] for i in cert.sample_clique]
            if sample and not _pairwise_conflicting(sample, thr):
                return False
            adjsets = _adjsets(_conflict_masks(cover, cert.lam))
            counting = not _k_colorable(adjsets, spare)
        if cert.proven and not counting:
            return False
        return True

    raise CertificateError(f"unknown certificate kind: {cert.kind!r}")


# ---------------------------------------------------------------------------
# serialization


def _facts(cert: LowerBoundCertificate) -> list[dict]:
    thr = fmt_rat(2 * cert.lam)
    facts = []
    if cert.kind == COMPLETE_CONFLICT:
        facts.append(
            {"type": "distance", "set": "witness", "pairs": "all", "min_required": thr}
        )
        facts.append(
            {"type": "counting", "inequality": f"{cert.m} < {len(cert.witness_points)}"}
        )
    elif cert.kind in (STRUCTURED, PIGEONHOLE_CLIQUE):
        facts.append(
            {"type": "distance", "set": "vertices", "pairs": "all", "min_required": thr}
        )
        facts.append(
            {
                "type": "distance",
                "set": "vertices x cover",
                "pairs": "cross",
                "min_required": thr,
            }
        )
        spare = cert.m - len(cert.vertex_points)
        if cert.kind == STRUCTURED:
            facts.append(
                {"type": "maxclique", "set": "cover", "value": cert.clique_bound}
            )
            facts.append(
                {
                    "type": "counting",
                    "inequality": f"{spare} * {cert.clique_bound} < {len(cert.cover_points)}",
                }
            )
        else:
            facts.append(
                {
                    "type": "maxclique",
                    "set": "sample",
                    "value": len(cert.sample_clique),
                }
            )
            facts.append(
                {
                    "type": "counting",
                    "inequality": f"conflict graph on {len(cert.cover_points)} "
                    f"points is not {spare}-colorable",
                }
            )
    return facts


def certificate_to_json(cert: LowerBoundCertificate) -> dict:
    data = {
        "d": cert.d,
        "m": cert.m,
        "lambda": fmt_rat(cert.lam),
        "kind": cert.kind,
        "proven": cert.proven,
        "facts": _facts(cert),
    }
    if cert.witness_points:
        data["witness_points"] = [fmt_point(p) for p in cert.witness_points]
    if cert.vertex_points:
        data["vertex_points"] = [fmt_point(p) for p in cert.vertex_points]
    if cert.cover_points:
        data["cover_points"] = [fmt_point(p) for p in cert.cover_points]
    if cert.sample_clique:
        data["sample_clique"] = list(cert.sample_clique)
    if cert.clique_bound is not None:
        data["clique_bound"] = cert.clique_bound
    if cert.cover_lower_bound is not None:
        data["cover_lower_bound"] = cert.cover_lower_bound
    if cert.note:
        data["note"] = cert.note
    return data


def certificate_from_json(data) -> LowerBoundCertificate:
    try:
        return LowerBoundCertificate(
            d=int(data["d"]),
            m=int(data["m"]),
            lam=parse_rat(data["lambda"]),
            kind=str(data["kind"]),
            proven=bool(data["proven"]),
            witness_points=tuple(parse_point(p) for p in data.get("witness_points", [])),
            vertex_points=tuple(parse_point(p) for p in data.get("vertex_points", [])),
            cover_points=tuple(parse_point(p) for p in data.get("cover_points", [])),
            sample_clique=tuple(int(i) for i in data.get("sample_clique", [])),
            clique_bound=data.get("clique_bound"),
            cover_lower_bound=data.get("cover_lower_bound"),
            note=str(data.get("note", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate JSON: {exc}") from exc
