"""Four polarities with respect to a simplex: frame, harmonic, cubic and convex."""
from .algebraic_polarity import (
    PolarKernelLevel,
    SymmetricForm,
    conic_polar_point,
    conic_pole,
    contract,
    cremona,
    cremona_via_polarities,
    cubic_polar_point,
    first_polar,
    kernel_member,
    kth_polar,
    last_polar_inverse,
    polarize_eval,
    simplex_form,
    tangent_double_root,
)
from .convex_polarity import (
    SantaloConfig,
    SantaloResult,
    barycentric_polar_point,
    centroid_in_chart_of,
    characteristic_value,
    convex_polar_hyperplane,
    convex_polar_point,
    double_polar,
    double_polar_orbit,
    dual_body,
    dual_centroid,
    dual_volume,
    santalo_point,
    simplex_convex_polar,
    solve_santalo,
    theta,
)
from .errors import *  # noqa: F401,F403
from .frame_polarity import AdaptedBasis, ProjFrame, adapted_basis, dual_frame, frame_polar_hyperplane, frame_polar_point
from .harmonic_polarity import (
    ConstructionTrace,
    fourth_harmonic,
    harmonic_points,
    harmonic_polar_hyperplane,
    harmonic_polar_point,
    harmonic_trace,
    pair_harmonics,
    replay,
    ruler_trace,
)
from .polytope import ConvexPolytope, centroid, volume
from .projective_core import (
    INFINITY,
    AffineChart,
    ProjHyperplane,
    ProjPoint,
    Simplex,
    cross_ratio,
    hyperplane,
    intersect,
    join,
    meet,
    point,
    span,
)
from .scene import Scene, dump_scene, load_scene, parse_scene
from .theorem import four_polars, four_poles, verify_theorem

__version__ = "0.1.0"
