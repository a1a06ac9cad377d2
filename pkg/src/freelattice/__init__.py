"""freelattice: a workbench for finitely generated free Banach lattices.

Symbolic elements of the free vector lattice over n generators, exact free
norms with primal-dual certificates, finite-dimensional coordinate Banach
lattices with quotients and operator norms, constructive disjoint and
projective lifting, and the circle-model symmetric norm.
"""

from .canonical import (
    Cell,
    LinearForm,
    MaxMinForm,
    arrangement_hyperplanes,
    enumerate_cells,
    expr_equal,
    is_semantically_zero,
    sup_norm,
    to_maxmin,
)
from .errors import (
    AlgorithmDefect,
    CapExceeded,
    DimensionMismatch,
    DisjointnessError,
    ExprSyntaxError,
    FreeLatticeError,
)
from .expressions import (
    LatticeExpr,
    Point,
    delta,
    eval_expr,
    parse_expr,
    point,
    print_expr,
    project_onto,
    rational,
    zero,
)
from .fdlattice import (
    FdBanachLattice,
    IdealSpec,
    LatticeHom,
    NormSpec,
    QuotientContext,
    Vector,
    apply_hom,
    compose_hom,
    hom_norm,
    identity_hom,
    norm_vec,
    quotient,
    unit_vector,
    vector,
    zero_vector,
)
from .freenorm import (
    AtomicMeasure,
    NormCertificate,
    dual_norm,
    free_norm,
    quotient_norm,
    verify_certificate,
)
from .lifting import (
    AdversarialOracle,
    CanonicalOracle,
    PreimageOracle,
    lift_disjoint,
    lift_disjoint_families,
    projective_lift,
)
from .symnorm import CircleMeasure, circle_dual_norm, circle_measure, rotate, symmetric_norm

__version__ = "0.1.0"

__all__ = [
    "AdversarialOracle",
    "AlgorithmDefect",
    "AtomicMeasure",
    "CanonicalOracle",
    "CapExceeded",
    "Cell",
    "CircleMeasure",
    "DimensionMismatch",
    "DisjointnessError",
    "ExprSyntaxError",
    "FdBanachLattice",
    "FreeLatticeError",
    "IdealSpec",
    "LatticeExpr",
    "LatticeHom",
    "LinearForm",
    "MaxMinForm",
    "NormCertificate",
    "NormSpec",
    "Point",
    "PreimageOracle",
    "QuotientContext",
    "Vector",
    "apply_hom",
    "arrangement_hyperplanes",
    "circle_dual_norm",
    "circle_measure",
    "compose_hom",
    "delta",
    "dual_norm",
    "enumerate_cells",
    "eval_expr",
    "expr_equal",
    "free_norm",
    "hom_norm",
    "identity_hom",
    "is_semantically_zero",
    "lift_disjoint",
    "lift_disjoint_families",
    "norm_vec",
    "parse_expr",
    "point",
    "print_expr",
    "project_onto",
    "projective_lift",
    "quotient",
    "quotient_norm",
    "rational",
    "rotate",
    "sup_norm",
    "symmetric_norm",
    "to_maxmin",
    "unit_vector",
    "vector",
    "verify_certificate",
    "zero",
    "zero_vector",
]
