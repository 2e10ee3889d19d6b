"""Gaussian states in the (X, Y) parametrization and as covariance matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DefinitenessError, NotPureError, ShapeError, SymmetryError
from .mats import SYMMETRY_RTOL, is_positive_definite, is_symmetric, symplectic_form

PURITY_INPUT_TOL = 1e-6
HEISENBERG_TOL = 1e-9


def _real_square(M: ArrayLike, name: str) -> NDArray[np.float64]:
    M = np.array(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ShapeError(f"{name} has non-finite entries")
    return M


@dataclass(frozen=True)
class PureGaussianState:
    """Zero-mean pure Gaussian state given by symmetric ``X`` and ``Y > 0``.

    ``x_asymmetry`` records how far ``X`` was from symmetric before it was
    symmetrized (only set by :func:`xy_from_covariance`).
    """

    X: NDArray[np.float64]
    Y: NDArray[np.float64]
    x_asymmetry: float = field(default=0.0, compare=False)

    def __post_init__(self):
        X = _real_square(self.X, "X")
        Y = _real_square(self.Y, "Y")
        if X.shape != Y.shape:
            raise ShapeError(f"X {X.shape} and Y {Y.shape} must have the same shape")
        if not is_symmetric(X, SYMMETRY_RTOL):
            raise SymmetryError("X must be symmetric")
        if not is_symmetric(Y, SYMMETRY_RTOL):
            raise SymmetryError("Y must be symmetric")
        if not is_positive_definite(Y):
            raise DefinitenessError("Y must be positive definite")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.X.shape[0]


@dataclass(frozen=True)
class CovarianceMatrix:
    """Symmetric ``2n x 2n`` covariance in q-first ordering."""

    V: NDArray[np.float64]
    ordering: str = "q-first"

    def __post_init__(self):
        V = _real_square(self.V, "V")
        if V.shape[0] % 2:
            raise ShapeError(f"covariance must be 2n x 2n, got {V.shape}")
        if self.ordering != "q-first":
            raise ShapeError(f"unsupported ordering {self.ordering!r}; only 'q-first' is accepted")
        if not is_symmetric(V, SYMMETRY_RTOL):
            raise SymmetryError("covariance matrix must be symmetric")
        object.__setattr__(self, "V", V)

    @property
    def n(self) -> int:
        return self.V.shape[0] // 2


def as_covariance(V) -> CovarianceMatrix:
    return V if isinstance(V, CovarianceMatrix) else CovarianceMatrix(V)


def covariance_from_xy(state: PureGaussianState) -> CovarianceMatrix:
    """Covariance ``V = 1/2 [[Y^-1, Y^-1 X], [X Y^-1, X Y^-1 X + Y]]``."""
    X, Y = state.X, state.Y
    try:
        Yinv = np.linalg.inv(Y)
    except np.linalg.LinAlgError as exc:
        raise DefinitenessError(f"Y is singular: {exc}") from exc
    YiX = Yinv @ X
    V = 0.5 * np.block([[Yinv, YiX], [YiX.T, X @ YiX + Y]])
    return CovarianceMatrix(0.5 * (V + V.T))


def purity_defect(V) -> float:
    """``2^(2n) det(V) - 1``, evaluated through the log-determinant."""
    cov = as_covariance(V)
    sign, logdet = np.linalg.slogdet(cov.V)
    if sign <= 0:
        raise DefinitenessError("covariance determinant is not positive")
    return float(np.expm1(2 * cov.n * np.log(2.0) + logdet))


def purity(V) -> float:
    """Purity ``1 / sqrt(2^(2n) det V)`` of a Gaussian state."""
    return float(1.0 / np.sqrt(1.0 + purity_defect(V)))


def xy_from_covariance(V, purity_tol: float = PURITY_INPUT_TOL) -> PureGaussianState:
    """Recover ``(X, Y)`` from the covariance of a pure state.

    ``Y = (2 V_qq)^-1`` and ``X = V_qq^-1 V_qp``. ``X`` is symmetrized and
    the removed asymmetry is stored on the result as ``x_asymmetry``.

    Raises
    ------
    NotPureError
        If ``|2^(2n) det V - 1| > purity_tol``.
    DefinitenessError
        If the position block ``V_qq`` is not positive definite.
    """
    cov = as_covariance(V)
    n = cov.n
    defect = purity_defect(cov)
    if abs(defect) > purity_tol:
        raise NotPureError(f"covariance is not pure: 2^(2n) det V - 1 = {defect:.3e}")
    Vqq = cov.V[:n, :n]
    Vqp = cov.V[:n, n:]
    if not is_positive_definite(Vqq):
        raise DefinitenessError("position block of the covariance is not positive definite")
    Vqq_inv = np.linalg.inv(Vqq)
    Y = 0.5 * Vqq_inv
    X = Vqq_inv @ Vqp
    asym = float(np.max(np.abs(X - X.T)))
    return PureGaussianState(0.5 * (X + X.T), 0.5 * (Y + Y.T), x_asymmetry=asym)


def heisenberg_min_eigenvalue(V) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``V + (i/2) Sigma``."""
    V = np.asarray(V.V if isinstance(V, CovarianceMatrix) else V, dtype=float)
    n = V.shape[0] // 2
    H = V + 0.5j * symplectic_form(n)
    return float(np.linalg.eigvalsh(H)[0])


def heisenberg_valid(V, tol: float = HEISENBERG_TOL) -> bool:
    """True iff ``V + (i/2) Sigma`` is positive semidefinite up to ``-tol``."""
    return heisenberg_min_eigenvalue(V) >= -tol


def vacuum_covariance(n: int) -> CovarianceMatrix:
    return CovarianceMatrix(0.5 * np.eye(2 * n))


def thermal_covariance(n: int, nu: float) -> CovarianceMatrix:
    """``nu * I / 2``; ``nu = 1`` is the vacuum, ``nu > 1`` a thermal state."""
    return CovarianceMatrix(0.5 * float(nu) * np.eye(2 * n))


def two_mode_squeezed_xy(alpha: float) -> PureGaussianState:
    """``X = 0``, ``Y = [[cosh 2a, -sinh 2a], [-sinh 2a, cosh 2a]]``."""
    c, s = np.cosh(2 * alpha), np.sinh(2 * alpha)
    return PureGaussianState(np.zeros((2, 2)), np.array([[c, -s], [-s, c]]))


def two_mode_squeezed_covariance(alpha: float) -> CovarianceMatrix:
    c, s = np.cosh(2 * alpha), np.sinh(2 * alpha)
    V = 0.5 * np.array(
        [
            [c, s, 0.0, 0.0],
            [s, c, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, -s, c],
        ]
    )
    return CovarianceMatrix(V)


def random_pure_state(n: int, rng: np.random.Generator) -> PureGaussianState:
    """Random target: ``X`` symmetric with entries in [-2, 2], ``Y = M^T M + 0.1 I``."""
    U = rng.uniform(-2.0, 2.0, size=(n, n))
    X = np.triu(U) + np.triu(U, 1).T
    M = rng.standard_normal((n, n))
    Y = M.T @ M + 0.1 * np.eye(n)
    return PureGaussianState(X, Y)
