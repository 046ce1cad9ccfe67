"""Finite Blaschke products on the unit disk.

Hyperbolic geometry primitives, complex polynomial and Schur-Cohn machinery,
Blaschke product construction and normal forms, hyperbolic divided
differences, elliptic/parabolic/hyperbolic classification with an
independent fixed-point oracle, and parameter-space raster rendering.
"""

from .hypgeo import (
    DiskAutomorphism,
    DiskPoint,
    UnitModulus,
    hyperbolic_distance,
    hyperbolic_midpoint,
    mobius_quotient,
    pseudo_hyperbolic,
)
from .poly import (
    ComplexPolynomial,
    RootFindingError,
    SchurReport,
    reciprocal,
    roots,
    schur_cohn,
    schur_transform,
    self_inversive_factor,
)
from .products import (
    CubicParameters,
    FiniteBlaschkeProduct,
    NormalFormError,
    QuadraticParameter,
    from_cubic_parameters,
    from_quadratic_parameter,
    unicritical_product,
)
from .hypcalc import (
    divided_difference,
    h1,
    h2,
    inflection_point_cubic,
    inflection_scan,
)
from .dynamics import (
    ClassificationResult,
    Verdict,
    cardioid_outside,
    classify,
    classify_formula,
    cubic_deltas,
    denjoy_wolff,
    fixed_point_polynomial,
    p_discriminant,
    q_polynomial,
    quadratic_deltas,
)

__version__ = "0.1.0"

__all__ = [
    "DiskAutomorphism",
    "DiskPoint",
    "UnitModulus",
    "hyperbolic_distance",
    "hyperbolic_midpoint",
    "mobius_quotient",
    "pseudo_hyperbolic",
    "ComplexPolynomial",
    "RootFindingError",
    "SchurReport",
    "reciprocal",
    "roots",
    "schur_cohn",
    "schur_transform",
    "self_inversive_factor",
    "CubicParameters",
    "FiniteBlaschkeProduct",
    "NormalFormError",
    "QuadraticParameter",
    "from_cubic_parameters",
    "from_quadratic_parameter",
    "unicritical_product",
    "divided_difference",
    "h1",
    "h2",
    "inflection_point_cubic",
    "inflection_scan",
    "ClassificationResult",
    "Verdict",
    "cardioid_outside",
    "classify",
    "classify_formula",
    "cubic_deltas",
    "denjoy_wolff",
    "fixed_point_polynomial",
    "p_discriminant",
    "q_polynomial",
    "quadratic_deltas",
    "__version__",
]
