"""soclelab: spectral rank, trace, and projection laboratory.

Numerical workbench for block-diagonal complex matrix algebras: rank
and trace computed purely from spectra, Riesz projections by contour
quadrature, constructive commutator certificates, and trace
characterizations of linear functionals — everything certified against
classical linear-algebra oracles.
"""

from .algebra import (
    CLUSTER_TOL,
    IDEMPOTENCY_TOL,
    RANK_TOL,
    AlgebraSpec,
    Element,
    SpectrumReport,
    add,
    classical_rank,
    classical_trace,
    eigenvalues,
    frobenius_norm,
    identity,
    matrix_unit,
    multiply,
    nonzero_spectrum_count,
    operator_norm,
    resolvent,
    scale,
    spectral_radius,
    spectrum,
    subtract,
    zero,
)
from .classify import (
    IdealReport,
    VerificationReport,
    annihilating_pair_witness,
    block_support,
    generated_ideal,
    is_socle_minimal_ideal,
    orthogonal_decomposition,
    pAp_block_check,
    rank_one_subprojections,
    verify_theorems,
)
from .commutators import (
    CommutatorCertificate,
    MatrixUnit,
    RankOnePair,
    commutator_decompose,
    rank_one_commutator,
    verify_certificate,
)
from .functionals import (
    CharacterizationReport,
    ConstancyVerdict,
    Functional,
    SpectralBoundResult,
    VanishingVerdict,
    blockwise_scalar_functional,
    characterize,
    constant_on_rank_one_projections,
    counterexample_functional,
    evaluate,
    is_scalar_trace,
    is_tracial,
    random_functional,
    spectral_bound_witness,
    square_zero_basis,
    trace_functional,
    tracial_witness,
    vanishes_on_nilpotents,
    vanishes_on_square_zero,
)
from .rank import DEFAULT_PROBES, RankReport, is_maximal_finite_rank, spectral_rank
from .riesz import (
    DEFAULT_NODES,
    CompressionReport,
    Diagonalization,
    RieszReport,
    compress_to_corner,
    diagonalize_maximal,
    multiplicity,
    pAp_consistency,
    riesz_projection,
    spectral_trace,
    trace_bound_check,
)
from . import errors, jsonio, sampling

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
