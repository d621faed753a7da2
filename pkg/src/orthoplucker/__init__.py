"""Exact exterior algebra for the orthogonal Plucker-type relation.

Indices are 1-based; in lorentzian spaces index 1 is the timelike
direction.  Coefficients are exact rationals (or ``QSqrt3`` for su(3)).
"""
from .decomposition import Decomposition, Indeterminate, SimplePart, decompose, verify_orthogonal_sum
from .errors import (
    AmbiguousCase,
    DegreeError,
    InvalidAction,
    NotMetricInvariant,
    OrthoPluckerError,
    RelationViolated,
    SamplingExhausted,
    SpaceMismatch,
    Unsupported,
)
from .exterior import (
    Form,
    MetricSpace,
    Plane,
    Polyvector,
    contract,
    contract_blade,
    form_inner,
    hodge,
    so_action,
    support_plane,
    transform,
    wedge,
)
from .lie import (
    MetricLieAlgebra,
    NBracket,
    bracket_from_form,
    catalog,
    double_extension,
    form_from_bracket,
    jacobi_residual,
    metric_invariance_residual,
    oscillator,
    su3,
)
from .normal_forms import NormalKind, SkewNormalForm, classify_case, skew_normal_form
from .plucker import (
    ResidualReport,
    classical_plucker_check,
    coordinate_residual,
    is_simple,
    orthogonal_relation_check,
    relation_holds,
)
from .scalars import QSqrt3

__version__ = "0.1.0"
