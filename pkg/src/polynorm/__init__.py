"""polynorm: exact k-normality, very-ampleness, and regularity invariants
of lattice polytopes.

All computation is exact (arbitrary-precision integers and rationals); the
library decides k-normality by enumeration, certifies very-ampleness through
vertex-semigroup saturation at the decomposition threshold, and evaluates a
family of combinatorial upper bounds against the computed ground truth.
"""

__version__ = "0.1.0"

from .bounds import (
    InvariantReport,
    classical_bounds,
    d_P_bound_checks,
    eg_check,
    full_report,
    refined_bound,
    regularity,
    report_json_bytes,
    report_to_dict,
    smooth_bounds,
    theorem_bound,
)
from .catalog import (
    bruns_gubeladze,
    build_family,
    cube,
    higashitani,
    parse_family,
    random_polytope,
    reeve_like,
    standard_simplex,
)
from .invariants import (
    NormalityScan,
    SmoothData,
    compute_d_P,
    compute_k_P,
    compute_nu_P,
    decompose_point,
    degree,
    gamma,
    is_k_normal,
    is_smooth,
    m_prime,
    scan_normality,
    volume_ehrhart,
    volume_triangulation,
)
from .polytope import (
    EdgeFan,
    GeometryError,
    HalfSpace,
    Polytope,
    from_points,
    hrep_from_vrep,
    join,
    product,
    union_if_convex,
)
from .semigroup import (
    GeneratorSet,
    ReprCertificate,
    compute_m_P,
    generator_set,
    sigma,
    very_ample_check,
)

__all__ = [
    "InvariantReport", "classical_bounds", "d_P_bound_checks", "eg_check",
    "full_report", "refined_bound", "regularity", "report_json_bytes",
    "report_to_dict", "smooth_bounds", "theorem_bound",
    "bruns_gubeladze", "build_family", "cube", "higashitani", "parse_family",
    "random_polytope", "reeve_like", "standard_simplex",
    "NormalityScan", "SmoothData", "compute_d_P", "compute_k_P",
    "compute_nu_P", "decompose_point", "degree", "gamma", "is_k_normal",
    "is_smooth", "m_prime", "scan_normality", "volume_ehrhart",
    "volume_triangulation",
    "EdgeFan", "GeometryError", "HalfSpace", "Polytope", "from_points",
    "hrep_from_vrep", "join", "product", "union_if_convex",
    "GeneratorSet", "ReprCertificate", "compute_m_P", "generator_set",
    "sigma", "very_ample_check",
]
