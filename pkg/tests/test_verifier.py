import json
import random

import pytest

from crosscover.geometry import (
    FacetId,
    Homothet,
    crosspolytope,
    facet_center,
    homothet_contains,
    l1_distance,
    origin,
    point,
    vertices,
)
from crosscover.verifier import (
    BoundaryPreconditionError,
    Covered,
    Covering,
    CoveringFormatError,
    Mode,
    RegionCapExceeded,
    Uncovered,
    covering_from_json,
    covering_to_json,
    facet_shadow_check,
    result_to_json,
    subtract_homothet,
    verify_covering,
)
from crosscover.rational import rat

from helpers import closed_region_contains, grid_points, min_violation, sample_ball_points


def gamma_covering(d):
    """2d copies of ratio (d-1)/d centered at (1/d) * (+-e_i)."""
    centers = []
    for sign in (1, -1):
        for i in range(d):
            u = [rat(0)] * d
            u[i] = rat(sign, d)
            centers.append(tuple(u))
    return Covering(d, rat(d - 1, d), tuple(centers))


class TestSubtractHomothet:
    def test_ball_minus_itself_all_pieces_empty(self):
        d = 3
        K = crosspolytope(d)
        pieces = subtract_homothet(list(K.halfspaces), Homothet(rat(1), origin(d)))
        assert len(pieces) == 2**d
        for piece in pieces:
            # every piece demands sigma.x > 1 for some sign vector: no
            # point of the ball qualifies
            for p in grid_points(d, 2):
                assert not closed_region_contains(piece, p)

    def test_square_minus_half_square_grid_oracle(self):
        d = 2
        K = crosspolytope(d)
        h = Homothet(rat(1, 2), origin(d))
        pieces = subtract_homothet(list(K.halfspaces), h)
        assert len(pieces) == 4
        nonempty = 0
        for piece in pieces:
            hits = [p for p in grid_points(d, 8) if closed_region_contains(piece, p)]
            if hits:
                nonempty += 1
        assert nonempty == 4  # four corner regions survive

        # the pieces partition ball-minus-homothet on the grid
        for p in grid_points(d, 8):
            inside = sum(1 for piece in pieces if closed_region_contains(piece, p))
            expected = 1 if (crosspolytope(d).contains(p) and not homothet_contains(h, p)) else 0
            assert inside == expected

    def test_dimension_mismatch(self):
        K = crosspolytope(3)
        with pytest.raises(ValueError):
            subtract_homothet(list(K.halfspaces), Homothet(rat(1, 2), origin(2)))


class TestVerifyCovering:
    def test_single_unit_copy_covers(self):
        for d in (2, 3, 4):
            c = Covering(d, rat(1), (origin(d),))
            assert isinstance(verify_covering(c), Covered)

    def test_axis_covering_covers_dimension_three_and_four(self):
        for d in (3, 4):
            res = verify_covering(gamma_covering(d))
            assert isinstance(res, Covered)

    def test_axis_covering_boundary_mode_agrees(self):
        for d in (3, 4):
            res = verify_covering(gamma_covering(d), mode=Mode.BOUNDARY_ONLY)
            assert isinstance(res, Covered)

    def test_shrunk_axis_covering_fails_at_facet_center(self):
        d = 4
        g = gamma_covering(d)
        shrunk = Covering(d, g.ratio - rat(1, 1000), g.centers)
        res = verify_covering(shrunk)
        assert isinstance(res, Uncovered)
        # witness is exactly uncovered: farther than lambda from every center
        for u in shrunk.centers:
            assert l1_distance(res.witness, u) > shrunk.ratio
        # the covering is tight exactly at the facet centers and the
        # vertices, so the leftover caps (and the witness) hug that set
        from crosscover.geometry import facet_ids

        touch = [facet_center(f) for f in facet_ids(d)] + vertices(d)
        nearest = min(l1_distance(res.witness, t) for t in touch)
        assert nearest < rat(1, 10)

    def test_too_few_copies_cannot_cover(self):
        # fewer than 2d copies below ratio 1 always leave a vertex area
        d = 4
        g = gamma_covering(d)
        c = Covering(d, g.ratio, g.centers[:7])
        res = verify_covering(c)
        assert isinstance(res, Uncovered)
        for u in c.centers:
            assert l1_distance(res.witness, u) > c.ratio

    def test_mode_agreement_on_random_shrinks(self):
        rng = random.Random(5)
        checked = 0
        for _ in range(6):
            d = rng.choice([2, 3])
            g = gamma_covering(d)
            delta = rat(rng.randint(0, 30), 1000)
            c = Covering(d, g.ratio - delta, g.centers) if delta else g
            full = verify_covering(c, mode=Mode.FULL_BODY)
            try:
                boundary = verify_covering(c, mode=Mode.BOUNDARY_ONLY)
            except BoundaryPreconditionError:
                # shrinking can push the origin out of the copies, in
                # which case boundary mode correctly refuses to run
                continue
            checked += 1
            assert isinstance(full, Covered) == isinstance(boundary, Covered)
        assert checked >= 2

    def test_boundary_mode_rejects_off_origin_homothet(self):
        d = 3
        far = tuple([rat(3, 4)] + [rat(0)] * (d - 1))
        c = Covering(d, rat(1, 2), (far,))
        with pytest.raises(BoundaryPreconditionError):
            verify_covering(c, mode=Mode.BOUNDARY_ONLY)

    def test_region_cap_aborts(self):
        d = 3
        g = gamma_covering(d)
        shrunk = Covering(d, g.ratio - rat(1, 10), g.centers)
        with pytest.raises(RegionCapExceeded):
            verify_covering(shrunk, region_cap=3)

    def test_covered_soundness_sampled(self):
        from helpers import exact_uncovered_count, sample_ball_numerators

        d = 3
        c = gamma_covering(d)
        assert isinstance(verify_covering(c), Covered)
        nums = sample_ball_numerators(d, 100_000, seed=1234)
        assert exact_uncovered_count(nums, 1024, c.centers, c.ratio) == 0

    def test_uncovered_witness_soundness_sampled(self):
        d = 3
        g = gamma_covering(d)
        c = Covering(d, g.ratio - rat(1, 100), g.centers)
        res = verify_covering(c)
        assert isinstance(res, Uncovered)
        assert min_violation(res.witness, c.centers, c.ratio) > 0

    def test_threads_reproduce_sequential_verdict(self):
        d = 3
        g = gamma_covering(d)
        seq = verify_covering(g, threads=1)
        par = verify_covering(g, threads=2)
        assert isinstance(seq, Covered) and isinstance(par, Covered)
        shrunk = Covering(d, g.ratio - rat(1, 1000), g.centers)
        seq2 = verify_covering(shrunk, threads=1)
        par2 = verify_covering(shrunk, threads=2)
        assert isinstance(seq2, Uncovered) and isinstance(par2, Uncovered)
        assert seq2.witness == par2.witness and seq2.margin == par2.margin


class TestSubtractionConservation:
    def test_worklist_plus_processed_homothets_covers_ball(self):
        # drive the internal worklist one homothet at a time: after each
        # step, every sampled ball point lies in a processed homothet or
        # in some live region
        from crosscover.verifier import (
            _homothet_facets,
            _point_in,
            _region_from_polytope,
            _subtract,
        )

        d = 3
        g = gamma_covering(d)
        c = Covering(d, g.ratio - rat(1, 50), g.centers[:4])
        pts = sample_ball_points(d, 400, seed=31)

        worklist = [_region_from_polytope(crosspolytope(d), origin(d))]
        processed = []
        for h in c.homothets():
            hfacets = _homothet_facets(h)
            fresh = []
            for r in worklist:
                fresh.extend(_subtract(r, hfacets, d, None))
            worklist = fresh
            processed.append(h)
            for p in pts:
                in_processed = any(homothet_contains(hh, p) for hh in processed)
                in_live = any(_point_in(r.cons, p) for r in worklist)
                assert in_processed or in_live


class TestFacetShadow:
    def test_shadow_holds_for_sampled_homothets(self):
        d = 4
        f = FacetId((1,) * d)
        rng = random.Random(7)
        for _ in range(6):
            idx = rng.randint(1, d)
            v = f.vertex(idx)
            lam = rat(rng.randint(5, 9), 12)
            # center the homothet somewhere that keeps the vertex covered
            u = tuple(
                c - rat(rng.randint(0, 3), 16) * (1 if c > 0 else -1) if c != 0 else rat(rng.randint(-2, 2), 16)
                for c in v
            )
            h = Homothet(lam, u)
            if not homothet_contains(h, v):
                continue
            assert facet_shadow_check(f, idx, h)

    def test_concentric_case_tight(self):
        d = 4
        f = FacetId((1,) * d)
        h = Homothet(rat(3, 4), point(["0", "0", "0", "1/4"]))
        assert homothet_contains(h, f.vertex(4))
        assert facet_shadow_check(f, 4, h)

    def test_uncovered_vertex_rejected(self):
        d = 3
        f = FacetId((1,) * d)
        h = Homothet(rat(1, 3), origin(d))
        with pytest.raises(ValueError):
            facet_shadow_check(f, 1, h)


class TestSerialization:
    def test_round_trip(self):
        c = gamma_covering(4)
        data = covering_to_json(c)
        text = json.dumps(data)
        back = covering_from_json(json.loads(text))
        assert back == c

    def test_malformed_rejected(self):
        with pytest.raises(CoveringFormatError):
            covering_from_json({"d": 3, "lambda": "2/3"})
        with pytest.raises(CoveringFormatError):
            covering_from_json({"d": 3, "lambda": "0", "centers": [["0", "0", "0"]]})

    def test_result_json_shape(self):
        res = verify_covering(gamma_covering(3))
        data = result_to_json(res)
        assert data["verdict"] == "covered"
        assert data["regions_explored"] > 0
