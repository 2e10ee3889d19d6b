"""Cascade realizations of open quantum harmonic oscillators whose unique
steady state is a prescribed pure Gaussian state."""

from .dynamics import (
    ConvergenceReport,
    MomentTrajectory,
    convergence_report,
    evolve_moments,
    fit_decay_exponent,
    steady_state,
)
from .errors import (
    CascadeError,
    DefinitenessError,
    InvalidStateError,
    NotPureError,
    ParameterError,
    SchemaError,
    ShapeError,
    StabilityError,
    SymmetryError,
)
from .gaussian import (
    CovarianceMatrix,
    PureGaussianState,
    covariance_from_xy,
    heisenberg_valid,
    purity,
    random_pure_state,
    thermal_covariance,
    two_mode_squeezed_covariance,
    two_mode_squeezed_xy,
    vacuum_covariance,
    xy_from_covariance,
)
from .mats import (
    block_diag_j,
    inv_sqrt_spd,
    is_hurwitz,
    is_positive_definite,
    is_symmetric,
    permutation_matrix,
    solve_lyapunov,
    symplectic_form,
)
from .slh import (
    CascadeSystem,
    Oscillator,
    QsdeMatrices,
    cascade,
    char_poly,
    compose_cascade,
    qsde_matrices,
    series_product_slh,
)
from .synthesis import (
    SynthesisReport,
    realization1,
    realization1_parameters,
    realization2,
    synthesize_cascade,
    verify_synthesis,
)

__version__ = "0.1.0"
