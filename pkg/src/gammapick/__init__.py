"""Structured singular values for block-scalar scalings, the derived gamma
domains, Schur-class realizations, sampled kernel triples with lurking
isometry reconstruction, rational inner-outer factorization, and matricial
Nevanlinna-Pick interpolation with gamma-domain reductions."""

from .domains import (
    E211,
    E311,
    E312,
    BlockStructure,
    GammaPoint,
    in_gamma,
    mu,
    pi_coordinates,
    tetrablock_member,
)
from .fractional import (
    SEEvaluation,
    SingularFractionError,
    se_diag,
    se_eval,
    se_values,
    se_well_defined,
)
from .hardy import InnerOuterPair, RationalFunction, blaschke_eval, inner_outer, outer_sqrt_eval
from .kernels import (
    KernelTriple,
    SampledKernel,
    SampleGrid,
    combine_k,
    kernel_rank,
    membership,
    tensor_grid,
    upper_e,
)
from .linalg import (
    IndefiniteMatrixError,
    NonHermitianError,
    gram_factor,
    is_psd,
    operator_norm,
)
from .lurking import (
    GramInconsistencyError,
    RankError,
    RankOneFactor,
    TorusFit,
    UWResult,
    UWVerification,
    rank1_factor,
    right_s,
    torus_conjugate,
    torus_fit,
    uw_construct,
    verify_uw,
)
from .nevanlinna import (
    DEFAULT_Z_GRID,
    CertificationReport,
    GammaCurve,
    GammaNodes,
    PickData,
    SlicedSchur2x2,
    UnsolvablePickError,
    build_slice_schur,
    certify_gamma5_interpolation,
    certify_gamma7_interpolation,
    gamma_curve_from_entries,
    np_solve,
    pick_matrix,
    psi3_eval,
    psi_lower3_eval,
    reduce_gamma5,
    reduce_gamma7,
    sample_curve,
    slice_coordinates,
)
from .realization import (
    RealizedSchurFunction,
    SchurNormReport,
    random_schur,
    realization_to_rational,
    verify_schur,
)

__version__ = "0.1.0"

__all__ = [
    "BlockStructure",
    "GammaPoint",
    "E211",
    "E311",
    "E312",
    "mu",
    "pi_coordinates",
    "in_gamma",
    "tetrablock_member",
    "RealizedSchurFunction",
    "SchurNormReport",
    "random_schur",
    "verify_schur",
    "realization_to_rational",
    "SEEvaluation",
    "SingularFractionError",
    "se_eval",
    "se_values",
    "se_diag",
    "se_well_defined",
    "SampleGrid",
    "SampledKernel",
    "KernelTriple",
    "tensor_grid",
    "upper_e",
    "combine_k",
    "kernel_rank",
    "membership",
    "RankError",
    "GramInconsistencyError",
    "RankOneFactor",
    "UWResult",
    "UWVerification",
    "TorusFit",
    "rank1_factor",
    "uw_construct",
    "verify_uw",
    "torus_conjugate",
    "torus_fit",
    "right_s",
    "RationalFunction",
    "InnerOuterPair",
    "blaschke_eval",
    "inner_outer",
    "outer_sqrt_eval",
    "UnsolvablePickError",
    "PickData",
    "GammaCurve",
    "GammaNodes",
    "SlicedSchur2x2",
    "CertificationReport",
    "DEFAULT_Z_GRID",
    "pick_matrix",
    "np_solve",
    "sample_curve",
    "gamma_curve_from_entries",
    "slice_coordinates",
    "psi3_eval",
    "psi_lower3_eval",
    "build_slice_schur",
    "reduce_gamma7",
    "reduce_gamma5",
    "certify_gamma7_interpolation",
    "certify_gamma5_interpolation",
    "IndefiniteMatrixError",
    "NonHermitianError",
    "operator_norm",
    "is_psd",
    "gram_factor",
]
