"""Exact covering toolkit for the d-dimensional crosspolytope.

Constructs coverings of the unit l1 ball by smaller homothetic copies,
verifies them exactly with rational linear programming, certifies lower
bounds on the covering functional, and explores smaller ratios with a
float search that snaps back to exact rationals for re-verification.
"""

from .rational import Rat, rat, rat_from_float, parse_rat, fmt_rat
from .geometry import (
    FacetId,
    Halfspace,
    Homothet,
    HPolytope,
    Point,
    crosspolytope,
    facet_center,
    facet_ids,
    facet_polytope,
    homothet_contains,
    homothet_halfspaces,
    l1_distance,
    point,
    shrunk_facet,
    vertices,
)
from .lp import (
    Empty,
    Infeasible,
    LinearProgram,
    Optimal,
    Unbounded,
    Witness,
    lp_solve,
    region_emptiness,
)
from .verifier import (
    BoundaryPreconditionError,
    CoverageResult,
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
from .constructions import (
    KnownConstruction,
    best_known,
    construct_gamma2d,
    construct_plus4,
    construct_trivial,
    touch_points,
)
from .certificates import (
    CertificateError,
    ConflictGraph,
    LowerBoundCertificate,
    WitnessSet,
    all_touch_points,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    conflict_graph,
    lower_bound,
    max_compatible_clique,
    min_clique_cover,
    witness_quadruple,
)
from .gamma import GammaInterval, gamma_interval, interval_to_json, report_data
from .search import (
    SearchConfig,
    SearchReport,
    bisect_lambda,
    deficiency,
    optimize_centers,
    snap_and_verify,
)

__version__ = "0.1.0"
