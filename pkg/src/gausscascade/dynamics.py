"""Time evolution of the first and second moments and convergence checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import ParameterError, ShapeError, StabilityError
from .gaussian import CovarianceMatrix, as_covariance
from .kernels import rk4_moments, sample_steps
from .mats import solve_lyapunov, spectral_abscissa
from .slh import CascadeSystem, qsde_matrices

DEFAULT_DT = 1e-3
MAX_SAMPLES = 2000
FIT_FLOOR = 1e-12


@dataclass(frozen=True)
class MomentTrajectory:
    times: NDArray[np.float64]
    means: NDArray[np.float64]  # (samples, 2n)
    covariances: NDArray[np.float64]  # (samples, 2n, 2n)

    def __len__(self) -> int:
        return len(self.times)


def _finite(x, name):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ParameterError(f"{name} must be finite")
    return x


def evolve_moments(
    A: ArrayLike,
    noise_quadratic: ArrayLike,
    mean0: ArrayLike,
    V0,
    t_end: float,
    dt: float = DEFAULT_DT,
    max_samples: int = MAX_SAMPLES,
    backend: str | None = None,
) -> MomentTrajectory:
    """Integrate ``dm/dt = A m`` and ``dV/dt = A V + V A^T + N`` with RK4.

    The step is adjusted down to ``t_end / ceil(t_end / dt)`` so the last
    step lands on ``t_end``. At most ``max_samples`` states are stored,
    always including the first and last.
    """
    A = _finite(A, "A")
    N = _finite(noise_quadratic, "noise_quadratic")
    m0 = _finite(mean0, "mean0").reshape(-1)
    V0 = as_covariance(V0).V
    if not (math.isfinite(dt) and dt > 0):
        raise ParameterError(f"dt must be positive and finite, got {dt}")
    if not (math.isfinite(t_end) and t_end >= dt):
        raise ParameterError(f"t_end must be finite and at least dt, got {t_end}")
    if max_samples < 2:
        raise ParameterError("max_samples must be at least 2")
    d = A.shape[0]
    if A.shape != (d, d) or N.shape != (d, d) or m0.shape != (d,) or V0.shape != (d, d):
        raise ShapeError("drift, noise, mean and covariance dimensions disagree")

    nsteps = math.ceil(t_end / dt - 1e-9)
    h = t_end / nsteps
    stride = max(1, math.ceil(nsteps / (max_samples - 1)))
    means, covs = rk4_moments(A, 0.5 * (N + N.T), m0, 0.5 * (V0 + V0.T), h, nsteps, stride, backend)
    times = sample_steps(nsteps, stride) * h
    return MomentTrajectory(times, means, covs)


def steady_state(A: ArrayLike, noise_quadratic: ArrayLike, margin: float = 0.0) -> CovarianceMatrix:
    """Stationary covariance, the solution of ``A V + V A^T + N = 0``."""
    a = spectral_abscissa(A)
    if not a < -margin:
        raise StabilityError(f"drift is not Hurwitz (max real eigenvalue {a:.3e})")
    return CovarianceMatrix(solve_lyapunov(A, noise_quadratic))


def fit_decay_exponent(times: ArrayLike, residuals: ArrayLike) -> float:
    """Least-squares slope of ``log(residual)`` against time over the final
    half of the samples; residuals below 1e-12 are ignored."""
    times = np.asarray(times, dtype=float)
    residuals = np.asarray(residuals, dtype=float)
    tail = slice(len(times) // 2, None)
    t, r = times[tail], residuals[tail]
    keep = r > FIT_FLOOR
    if np.count_nonzero(keep) < 2:
        return float("nan")
    slope, _ = np.polyfit(t[keep], np.log(r[keep]), 1)
    return float(slope)


@dataclass(frozen=True)
class ConvergenceReport:
    times: NDArray[np.float64]
    residuals: NDArray[np.float64]
    decay_exponent: float
    steady: CovarianceMatrix
    trajectory: MomentTrajectory

    @property
    def final_residual(self) -> float:
        return float(self.residuals[-1])


def convergence_report(
    system: CascadeSystem,
    V0,
    t_end: float,
    dt: float = DEFAULT_DT,
    mean0: ArrayLike | None = None,
    backend: str | None = None,
) -> ConvergenceReport:
    """Integrate from ``V0`` and track ``max|V(t) - V_inf|``."""
    q = qsde_matrices(system)
    steady = steady_state(q.A, q.noise_quadratic)
    if mean0 is None:
        mean0 = np.zeros(2 * system.n)
    traj = evolve_moments(q.A, q.noise_quadratic, mean0, V0, t_end, dt, backend=backend)
    residuals = np.max(np.abs(traj.covariances - steady.V), axis=(1, 2))
    return ConvergenceReport(
        times=traj.times,
        residuals=residuals,
        decay_exponent=fit_decay_exponent(traj.times, residuals),
        steady=steady,
        trajectory=traj,
    )
