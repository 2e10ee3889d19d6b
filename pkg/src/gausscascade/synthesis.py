"""Cascade synthesis of a prescribed pure Gaussian state and the two
two-mode squeezed state realizations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, StabilityError
from .gaussian import (
    CovarianceMatrix,
    PureGaussianState,
    covariance_from_xy,
    purity,
    two_mode_squeezed_xy,
)
from .mats import inv_sqrt_spd, solve_lyapunov, spectral_abscissa
from .slh import CascadeSystem, Oscillator, QsdeMatrices, compose_cascade, qsde_matrices

MINUS_IDENTITY_TOL = 1e-9
ZERO_HAMILTONIAN_TOL = 1e-10


def cascade_coupling(state: PureGaussianState) -> np.ndarray:
    """Composed coupling ``Y^(-1/2) [-(X + iY), I_n]`` (n x 2n, q-first)."""
    W = inv_sqrt_spd(state.Y)
    return W @ np.hstack([-(state.X + 1j * state.Y), np.eye(state.n)])


def synthesize_cascade(state: PureGaussianState) -> CascadeSystem:
    """Cascade of ``n`` Hamiltonian-free oscillators whose unique steady
    state is ``state``.

    Oscillator ``j`` takes the ``(q_j, p_j)`` column pair of
    :func:`cascade_coupling` as its ``n x 2`` coupling matrix.
    """
    n = state.n
    K = cascade_coupling(state)
    oscillators = [Oscillator(K[:, [j, n + j]], np.zeros((2, 2))) for j in range(n)]
    return compose_cascade(oscillators)


def realization1_parameters(alpha: float) -> tuple[float, float]:
    """``(Q1, Q2)`` for the single-channel realization, as printed:
    ``Q1 = sinh 2a - cosh 2a``, ``Q2 = (sinh^2 2a - sinh 2a cosh 2a) / cosh 2a``."""
    s, c = np.sinh(2 * alpha), np.cosh(2 * alpha)
    return float(s - c), float((s**2 - s * c) / c)


def realization1(alpha: float) -> CascadeSystem:
    """Two oscillators sharing one channel, with opposite Hamiltonians."""
    Q1, Q2 = realization1_parameters(alpha)
    K = np.array([[1j * Q1, 1.0]])
    R1 = np.array([[2.0, Q2], [Q2, 2.0]])
    return compose_cascade([Oscillator(K, R1), Oscillator(K, -R1)])


def realization2(alpha: float) -> CascadeSystem:
    """Two Hamiltonian-free oscillators on two channels (the general construction)."""
    return synthesize_cascade(two_mode_squeezed_xy(alpha))


@dataclass(frozen=True)
class SynthesisReport:
    system: CascadeSystem
    qsde: QsdeMatrices
    drift_is_minus_identity: bool
    hamiltonian_is_zero: bool
    hurwitz: bool
    spectral_abscissa: float
    steady_covariance: CovarianceMatrix
    target_covariance: CovarianceMatrix
    target_residual: float
    purity: float


def verify_synthesis(
    system: CascadeSystem, target: PureGaussianState, hurwitz_margin: float = 0.0
) -> SynthesisReport:
    """Check that ``target`` is the unique steady state of ``system``.

    Raises
    ------
    ShapeError
        If the system and target have different mode counts.
    StabilityError
        If the drift is not Hurwitz (with ``hurwitz_margin``).
    """
    if system.n != target.n:
        raise ShapeError(f"system has {system.n} modes but target has {target.n}")
    q = qsde_matrices(system)
    abscissa = spectral_abscissa(q.A)
    if not abscissa < -hurwitz_margin:
        raise StabilityError(
            f"drift is not Hurwitz (max real eigenvalue {abscissa:.3e}); steady state is not unique"
        )
    V = CovarianceMatrix(solve_lyapunov(q.A, q.noise_quadratic))
    Vt = covariance_from_xy(target)
    d = 2 * system.n
    return SynthesisReport(
        system=system,
        qsde=q,
        drift_is_minus_identity=bool(np.max(np.abs(q.A + np.eye(d))) < MINUS_IDENTITY_TOL),
        hamiltonian_is_zero=bool(np.max(np.abs(system.R)) < ZERO_HAMILTONIAN_TOL),
        hurwitz=True,
        spectral_abscissa=abscissa,
        steady_covariance=V,
        target_covariance=Vt,
        target_residual=float(np.max(np.abs(V.V - Vt.V))),
        purity=purity(V),
    )
