"""Continuous quantum walks on joins, cones and strongly regular graphs.

The walk on a graph with adjacency matrix ``A`` is ``U(t) = exp(itA)``; its
mixing matrix ``M(t)`` holds the squared moduli of ``U(t)``. This package
builds the relevant graph families, computes spectral decompositions (numeric
and closed form), and produces numerical certificates for staying at home,
local uniform mixing, periodicity and perfect state transfer.
"""
from .errors import (
    InfeasibleParameters,
    InvalidParameters,
    InvalidSize,
    InvariantViolation,
    NumericalFailure,
    ParseError,
    PreconditionViolation,
    StayHomeError,
    UnsupportedConstruction,
    ValidationFailure,
)
from .graphs import (
    Graph,
    OrthogonalArray,
    SteinerDesign,
    Violation,
    affine_plane_ag23,
    cartesian_product,
    complement,
    complete,
    components,
    cone,
    cycle,
    disjoint_copies,
    empty,
    fano_plane,
    join,
    oa_cyclic,
    oa_graph,
    petersen,
    regularity,
    star,
    steiner_block_graph,
    validate_design,
    validate_oa,
)
from .spectral import (
    JoinSpectralData,
    NotSRG,
    RatioCondition,
    SpectralDecomposition,
    SrgParams,
    decompose,
    eigenvalue_support,
    join_decomposition,
    join_idempotents,
    join_quotient_eigenvalues,
    merge_terms,
    ratio_condition,
    srg_idempotents,
    srg_recognize,
    srg_spectrum,
)
from .walks import (
    ConeAnalysis,
    MixingReport,
    abs_entry_bound,
    average_mixing,
    complement_residual,
    cone_analysis,
    default_time_grid,
    diag_lower_from_average,
    join_ab_residual,
    join_apex_entry,
    mixing_matrix,
    periodicity_check,
    psd_sandwich,
    pst_detect,
    scan_uniform_mixing,
    stay_at_home_report,
    transition_matrices,
    transition_matrix,
    verify_apex_uniform_mixing,
)
from .families import (
    FamilyDiagnostic,
    conference_diagonal,
    oa_parameters,
    oa_stayhome_check,
    offdiag_bound_verify,
    srg_diagnostic,
    steiner_parameters,
)

__version__ = "0.1.0"
