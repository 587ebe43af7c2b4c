"""Exact geometry of positive homothets: transversals, covers and VC experiments."""

from .covering import Cover, CoverCheck, CoveringBounds, covering_bounds, rz_factor, tile_cover, verify_cover
from .family import (
    BoundReport,
    CapExceeded,
    HomothetFamily,
    IndependenceCertificate,
    TransversalCertificate,
    bound_report,
    exact_independence_number,
    exact_transversal,
    greedy_max_independent,
    greedy_transversal,
    s_minus_k,
)
from .geometry import (
    ConvexPolytope,
    DegenerateBody,
    DimensionMismatch,
    Homothety,
    apply_homothety,
    common_point,
    contains_point,
    convex_hull,
    minkowski_sum,
    reflect,
    support,
    translate,
    volume,
)
from .lp import Constraint, LinearProgram, LPResult, lp_solve
from .vclab import (
    ShatterCertificate,
    build_paraboloid,
    build_touching_family,
    dual_shatter_lower,
    fit_homothet,
    is_strictly_antipodal,
    search_four_points_2d,
    shatters,
    verify_paraboloid,
)

__version__ = "0.1.0"
