"""Exact algebraic degrees of sparse polynomial optimization problems.

The package computes degree invariants of constrained polynomial
optimization purely from monomial supports: mixed volumes of Newton and
Cayley polytopes, BKK counts of Lagrange systems, toric intersection
products on smooth fans, admissibility certificates, Euclidean-distance
and sectional degrees, and degrees of sparse determinantal varieties.
All arithmetic is exact rational.
"""

from .errors import (
    ArityMismatchError,
    DimensionMismatchError,
    EmptyPolytopeError,
    FanNotCompatibleError,
    InputError,
    InternalCheckError,
    InvalidCycleError,
    InvalidInstanceError,
    InvalidOrderError,
    NotPointedError,
    ParseError,
    PolydegError,
    ResolutionBudgetExceededError,
)
from .polytope import Polytope, Support, convex_hull, face_exposed, minkowski_sum, volume
from .cone import NON_SIMPLICIAL, Cone, cone_multiplicity
from .fan import Fan, common_refinement, normal_fan
from .mixedvol import MixedVolumeResult, mixed_volume, volume_polynomial_oracle
from .polymodel import (
    LagrangeData,
    SparsePoly,
    SparseProblem,
    cayley,
    derivative_support,
    lagrange_data,
    parse_poly,
    partial_polytope,
)
from .admissibility import (
    AdmissibilityVerdict,
    init_support,
    is_admissible,
    is_strongly_admissible,
    orbit_meets_variety,
)
from .toricchow import (
    CycleClass,
    DivisorClass,
    SmoothFan,
    appropriate_fan,
    chern_degree,
    chow_degree,
    intersect_divisor,
    polytope_divisor,
    porteous_coefficients,
)
from .degrees import (
    DegreeReport,
    bkk_degree,
    cayley_degree,
    classical_bounds,
    degree_report,
    ed_degree,
    sectional_degree,
)
from .detvar import (
    CrosscheckReport,
    DetVarInstance,
    detvar_crosscheck,
    detvar_degree,
    instance_from_json,
    jacobian_instance,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityVerdict",
    "ArityMismatchError",
    "Cone",
    "CrosscheckReport",
    "CycleClass",
    "DegreeReport",
    "DetVarInstance",
    "DimensionMismatchError",
    "DivisorClass",
    "EmptyPolytopeError",
    "Fan",
    "FanNotCompatibleError",
    "InputError",
    "InternalCheckError",
    "InvalidCycleError",
    "InvalidInstanceError",
    "InvalidOrderError",
    "LagrangeData",
    "MixedVolumeResult",
    "NON_SIMPLICIAL",
    "NotPointedError",
    "ParseError",
    "PolydegError",
    "Polytope",
    "ResolutionBudgetExceededError",
    "SmoothFan",
    "SparsePoly",
    "SparseProblem",
    "Support",
    "appropriate_fan",
    "bkk_degree",
    "cayley",
    "cayley_degree",
    "chern_degree",
    "chow_degree",
    "classical_bounds",
    "common_refinement",
    "cone_multiplicity",
    "convex_hull",
    "degree_report",
    "derivative_support",
    "detvar_crosscheck",
    "detvar_degree",
    "ed_degree",
    "face_exposed",
    "init_support",
    "instance_from_json",
    "intersect_divisor",
    "is_admissible",
    "is_strongly_admissible",
    "jacobian_instance",
    "lagrange_data",
    "minkowski_sum",
    "mixed_volume",
    "normal_fan",
    "orbit_meets_variety",
    "parse_poly",
    "partial_polytope",
    "polytope_divisor",
    "porteous_coefficients",
    "sectional_degree",
    "volume",
    "volume_polynomial_oracle",
]
