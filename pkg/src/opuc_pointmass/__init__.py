"""Verblunsky coefficients of a measure on the unit circle after a point mass is added."""

from .errors import (
    InsufficientDataError,
    InvalidCoefficientError,
    OPUCError,
    OracleDegeneracyError,
    ParameterError,
    ParseError,
    ResolutionError,
)
from .insertion import (
    InsertionResult,
    PointMassSpec,
    SimonAuxiliary,
    decay_table,
    insert_point_mass,
    insert_point_mass_simon,
    perturbed_monic_value,
)
from .measures import CatalogEntry, MeasureSpec, catalog, load_measure, mix_in_atom, moments, moments_from_alphas
from .oracle import (
    MomentAlphas,
    RankOneStructure,
    alphas_from_moments,
    block_det,
    gram_factors,
    gram_matrix,
    monic_value_via_determinant,
    moments_of_nu,
    rank_one_inverse,
    verblunsky_via_determinant,
)
from .szego import (
    KernelPair,
    SzegoState,
    UnitCirclePoint,
    advance,
    cd_kernel,
    eval_family,
    initial_state,
    norms,
    orthonormal_values,
    verblunsky_sequence,
)

__version__ = "0.1.0"
