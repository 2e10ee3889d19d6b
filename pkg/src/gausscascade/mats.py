"""Dense matrix utilities: structure matrices, predicates, SPD inverse square
root and a direct Lyapunov solver.

Quadrature vectors use the q-first ordering ``(q_1..q_n, p_1..p_n)``; the
interleaved per-oscillator ordering ``(q_1, p_1, q_2, p_2, ...)`` only appears
through :func:`permutation_matrix`.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DefinitenessError, ParameterError, ShapeError, StabilityError, SymmetryError

SYMMETRY_RTOL = 1e-9
EIGEN_RTOL = 1e-12
RESIDUAL_RTOL = 1e-9

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _check_modes(n: int) -> int:
    if int(n) != n or n < 1:
        raise ParameterError(f"mode count must be a positive integer, got {n!r}")
    return int(n)


def _square(M: ArrayLike, name: str = "matrix") -> NDArray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}")
    return M


def symplectic_form(n: int) -> NDArray[np.float64]:
    """Return ``[[0, I_n], [-I_n, 0]]``."""
    n = _check_modes(n)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def permutation_matrix(n: int) -> NDArray[np.float64]:
    """Permutation taking interleaved ``(a1, a2, ..., a2n)`` to
    ``(a1, a3, ..., a2n-1, a2, a4, ..., a2n)``.

    Left-multiplying an interleaved vector by this matrix yields the q-first
    vector; its transpose goes the other way.
    """
    n = _check_modes(n)
    P = np.zeros((2 * n, 2 * n))
    for j in range(n):
        P[j, 2 * j] = 1.0
        P[n + j, 2 * j + 1] = 1.0
    return P


def block_diag_j(n: int) -> NDArray[np.float64]:
    """Block diagonal of ``n`` copies of ``J = [[0, 1], [-1, 0]]``."""
    n = _check_modes(n)
    return np.kron(np.eye(n), J2)


def is_symmetric(M: ArrayLike, tol: float = SYMMETRY_RTOL) -> bool:
    """True iff ``max|M - M^T| <= tol * (1 + max|M|)``."""
    M = _square(M)
    if M.size == 0:
        return True
    return bool(np.max(np.abs(M - M.T)) <= tol * (1.0 + np.max(np.abs(M))))


def is_positive_definite(M: ArrayLike, rtol: float = EIGEN_RTOL, sym_tol: float = SYMMETRY_RTOL) -> bool:
    """True iff every eigenvalue of the symmetric matrix ``M`` is positive.

    Eigenvalues at or below ``rtol`` times the largest eigenvalue magnitude
    count as non-positive.

    Raises
    ------
    SymmetryError
        If ``M`` is not symmetric within ``sym_tol``.
    """
    M = np.asarray(_square(M), dtype=float)
    if not is_symmetric(M, sym_tol):
        raise SymmetryError("positive-definiteness test needs a symmetric matrix")
    w = np.linalg.eigvalsh(0.5 * (M + M.T))
    return bool(w[0] > rtol * np.max(np.abs(w)))


def spectral_abscissa(A: ArrayLike) -> float:
    """Largest real part among the eigenvalues of ``A``."""
    A = _square(A)
    return float(np.max(np.linalg.eigvals(A).real))


def is_hurwitz(A: ArrayLike, margin: float = 0.0) -> bool:
    """True iff every eigenvalue of ``A`` has real part below ``-margin``."""
    return spectral_abscissa(A) < -margin


def inv_sqrt_spd(Y: ArrayLike, rtol: float = EIGEN_RTOL) -> NDArray[np.float64]:
    """Principal inverse square root of a symmetric positive-definite matrix.

    Returns the symmetric positive-definite ``W`` with ``W @ Y @ W = I``,
    built from the eigendecomposition of ``Y``. Small eigenvalues are not
    clipped: anything below ``rtol`` times the largest one is an error.
    """
    Y = np.asarray(_square(Y, "Y"), dtype=float)
    if not is_symmetric(Y):
        raise SymmetryError("inverse square root needs a symmetric matrix")
    w, U = np.linalg.eigh(0.5 * (Y + Y.T))
    if w[-1] <= 0 or w[0] <= rtol * w[-1]:
        raise DefinitenessError(
            f"matrix is not positive definite (eigenvalues in [{w[0]:.3e}, {w[-1]:.3e}])"
        )
    W = (U / np.sqrt(w)) @ U.T
    return 0.5 * (W + W.T)


def lyapunov_residual(A: ArrayLike, V: ArrayLike, Q: ArrayLike) -> float:
    """Max-norm of ``A V + V A^T + Q``."""
    A, V, Q = (np.asarray(x) for x in (A, V, Q))
    return float(np.max(np.abs(A @ V + V @ A.T + Q)))


def solve_lyapunov(A: ArrayLike, Q: ArrayLike, rtol: float = RESIDUAL_RTOL) -> NDArray[np.float64]:
    """Solve ``A V + V A^T + Q = 0`` for symmetric ``V``.

    Uses the Kronecker form ``(I (x) A + A (x) I) vec(V) = -vec(Q)`` with
    column-major ``vec``. The dense system has size ``(2n)^2``, which is fine
    for the mode counts this package targets.

    Raises
    ------
    StabilityError
        If some eigenvalue pair of ``A`` sums to zero, so the Kronecker system
        is singular, or if the residual exceeds ``rtol * (1 + max|Q|)``.
    """
    A = np.asarray(_square(A, "A"), dtype=float)
    Q = np.asarray(_square(Q, "Q"), dtype=float)
    if A.shape != Q.shape:
        raise ShapeError(f"A {A.shape} and Q {Q.shape} differ in shape")
    if not is_symmetric(Q):
        raise SymmetryError("Lyapunov source term Q must be symmetric")
    d = A.shape[0]

    lam = np.linalg.eigvals(A)
    pair_sums = np.abs(lam[:, None] + lam[None, :])
    scale = max(1.0, float(np.max(np.abs(lam))))
    if np.min(pair_sums) <= 1e-12 * scale:
        raise StabilityError("Lyapunov operator is singular: eigenvalues of A pair to zero")

    eye = np.eye(d)
    L = np.kron(eye, A) + np.kron(A, eye)
    rhs = -Q.reshape(-1, order="F")
    try:
        v = np.linalg.solve(L, rhs)
    except np.linalg.LinAlgError as exc:
        raise StabilityError(f"Lyapunov operator is singular: {exc}") from exc
    # one step of iterative refinement is cheap and tightens badly scaled cases
    v += np.linalg.solve(L, rhs - L @ v)
    V = v.reshape(d, d, order="F")
    V = 0.5 * (V + V.T)

    bound = rtol * (1.0 + float(np.max(np.abs(Q))))
    res = lyapunov_residual(A, V, Q)
    if res > bound:
        raise StabilityError(f"Lyapunov residual {res:.3e} exceeds {bound:.3e}")
    return V
