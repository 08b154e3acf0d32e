"""orthokit: orthospectrum identities for the geodesic-flow hitting
distribution on hyperbolic surfaces with geodesic boundary.

The boundary length, the area, and the average time a unit-speed geodesic
spends inside the surface before hitting the boundary are all encoded in the
orthospectrum -- the lengths of arcs meeting the boundary at right angles.
This package evaluates the closed-form identity kernels (polylogarithms,
the Rogers dilogarithm, the trilogarithm kernel F), cross-checks them with
tanh-sinh quadrature, enumerates orthospectra of pairs of pants from their
Fuchsian groups, and validates everything with a Monte Carlo simulation of
the geodesic flow.
"""

__version__ = "1.0.0"

from .specfun import (
    PI, ZETA2, ZETA3, EvalTolerance,
    li2, li3, polylog, rogers_dilog, hurwitz_zeta, riemann_zeta,
)
from .kernels import (
    DivergenceError, CroftonConvention,
    sphere_volume, ball_volume, basmajian_term, crofton_constant,
    F_closed, I1_closed, I2_closed, cusp_term, avg_hitting_time,
    rogers_identity_rhs, ideal_triangle_moment, ideal_triangle_mgf,
)
from .quadrature import (
    ToleranceError, QuadratureSpec,
    F_k_numeric, F_nk_numeric, sinh_moment, indefinite_integral_checks,
)
from .geom import (
    GeometryError, Isometry, Geodesic, SurfaceModel, OrthoSpectrum,
    geodesic_distance, geodesics_disjoint, a_of_l, l_of_a,
    ideal_triangle, seam_length, build_pants, enumerate_orthospectrum,
)
from .identities import (
    Method, IdentityReport, MomentReport,
    verify_basmajian, verify_rogers, verify_moment1,
    truncated_moment, average_hitting_time_report,
)
from .mcflow import (
    FlowConfig, EmpiricalMoments,
    sample_entering_geodesic, flow_to_exit,
    estimate_moments, estimate_hitting_time, histogram_csv,
)
from .accel import HAVE_NUMBA

__all__ = [
    "__version__", "PI", "ZETA2", "ZETA3", "EvalTolerance",
    "li2", "li3", "polylog", "rogers_dilog", "hurwitz_zeta", "riemann_zeta",
    "DivergenceError", "CroftonConvention", "sphere_volume", "ball_volume",
    "basmajian_term", "crofton_constant", "F_closed", "I1_closed",
    "I2_closed", "cusp_term", "avg_hitting_time", "rogers_identity_rhs",
    "ideal_triangle_moment", "ideal_triangle_mgf",
    "ToleranceError", "QuadratureSpec", "F_k_numeric", "F_nk_numeric",
    "sinh_moment", "indefinite_integral_checks",
    "GeometryError", "Isometry", "Geodesic", "SurfaceModel", "OrthoSpectrum",
    "geodesic_distance", "geodesics_disjoint", "a_of_l", "l_of_a",
    "ideal_triangle", "seam_length", "build_pants", "enumerate_orthospectrum",
    "Method", "IdentityReport", "MomentReport", "verify_basmajian",
    "verify_rogers", "verify_moment1", "truncated_moment",
    "average_hitting_time_report",
    "FlowConfig", "EmpiricalMoments", "sample_entering_geodesic",
    "flow_to_exit", "estimate_moments", "estimate_hitting_time",
    "histogram_csv", "HAVE_NUMBA",
]
