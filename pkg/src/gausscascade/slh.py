"""Linear SLH subsystems, their series product and QSDE matrices.

Scattering is the identity everywhere. Oscillator lists are ordered from the
first system hit by the input field (``G_1``) to the last (``G_n``), so
``[g1, g2, g3]`` means ``G_3 <| G_2 <| G_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InvalidStateError, ShapeError, SymmetryError
from .mats import is_symmetric, permutation_matrix, symplectic_form

COMPOSE_TOL = 1e-10


@dataclass(frozen=True)
class Oscillator:
    """One mode with coupling ``L = K x`` and Hamiltonian ``H = x^T R x / 2``.

    ``K`` is complex ``m x 2`` acting on ``x = (q, p)``; ``R`` is real
    symmetric ``2 x 2`` (zero when omitted). Passing a non-identity ``S``
    raises, since only unit scattering is supported.
    """

    K: NDArray[np.complex128]
    R: NDArray[np.float64] = None
    S: NDArray | None = None

    def __post_init__(self):
        K = np.array(self.K, dtype=complex)
        if K.ndim == 1:
            K = K[None, :]
        if K.ndim != 2 or K.shape[1] != 2 or K.shape[0] < 1:
            raise ShapeError(f"oscillator K must be m x 2, got shape {K.shape}")
        R = np.zeros((2, 2)) if self.R is None else np.array(self.R, dtype=float)
        if R.shape != (2, 2):
            raise ShapeError(f"oscillator R must be 2 x 2, got shape {R.shape}")
        if not np.all(np.isfinite(K)) or not np.all(np.isfinite(R)):
            raise ShapeError("oscillator matrices must be finite")
        if not is_symmetric(R):
            raise SymmetryError("oscillator Hamiltonian matrix R must be symmetric")
        if self.S is not None and not np.array_equal(np.asarray(self.S), np.eye(K.shape[0])):
            raise InvalidStateError("only identity scattering matrices are supported")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "R", 0.5 * (R + R.T))
        object.__setattr__(self, "S", None)

    @property
    def m(self) -> int:
        return self.K.shape[0]


@dataclass(frozen=True)
class CascadeSystem:
    """Cascade of oscillators with its composed ``K`` (m x 2n) and ``R``
    (2n x 2n), both in q-first ordering."""

    oscillators: tuple[Oscillator, ...]
    K: NDArray[np.complex128]
    R: NDArray[np.float64]

    @property
    def n(self) -> int:
        return len(self.oscillators)

    @property
    def m(self) -> int:
        return self.K.shape[0]


def _channel_count(oscillators: Sequence[Oscillator]) -> int:
    if len(oscillators) == 0:
        raise ShapeError("a cascade needs at least one oscillator")
    ms = {g.m for g in oscillators}
    if len(ms) != 1:
        raise ShapeError(f"oscillators disagree on channel count: {sorted(ms)}")
    return ms.pop()


def compose_cascade(oscillators: Sequence[Oscillator]) -> CascadeSystem:
    """Compose ``G_n <| ... <| G_1`` from per-oscillator matrices.

    ``K = [K_1 ... K_n] P^T`` and ``R = P M P^T`` where ``M`` is block
    ``R_j`` on the diagonal and ``Im(K_j^dag K_k)`` below it (``j > k``).
    """
    oscillators = tuple(oscillators)
    _channel_count(oscillators)
    n = len(oscillators)
    P = permutation_matrix(n)

    K_interleaved = np.hstack([g.K for g in oscillators])
    M = np.zeros((2 * n, 2 * n))
    for j, gj in enumerate(oscillators):
        M[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = gj.R
        for k in range(j):
            block = (gj.K.conj().T @ oscillators[k].K).imag
            M[2 * j : 2 * j + 2, 2 * k : 2 * k + 2] = block
            M[2 * k : 2 * k + 2, 2 * j : 2 * j + 2] = block.T

    K = K_interleaved @ P.T
    R = P @ M @ P.T
    return CascadeSystem(oscillators, K, R)


def _as_system(G: Union[Oscillator, CascadeSystem]) -> CascadeSystem:
    return compose_cascade([G]) if isinstance(G, Oscillator) else G


def series_product_slh(
    G1: Union[Oscillator, CascadeSystem], G2: Union[Oscillator, CascadeSystem]
) -> CascadeSystem:
    """``G2 <| G1``: feed the output of ``G1`` into ``G2``.

    Works on the composed matrices directly: ``L = L_2 + L_1`` and the
    Hamiltonian picks up ``Im(L_2^dag L_1)``, which couples the modes of
    ``G2`` to those of ``G1`` through ``Im(K_2^dag K_1)``.
    """
    A, B = _as_system(G1), _as_system(G2)
    if A.m != B.m:
        raise ShapeError(f"channel counts differ: {A.m} vs {B.m}")
    n1, n2 = A.n, B.n
    n = n1 + n2

    # q-first index maps of each subsystem's quadratures inside the combined one
    idx1 = np.concatenate([np.arange(n1), n + np.arange(n1)])
    idx2 = np.concatenate([n1 + np.arange(n2), n + n1 + np.arange(n2)])

    K = np.zeros((A.m, 2 * n), dtype=complex)
    K[:, idx1] = A.K
    K[:, idx2] = B.K

    R = np.zeros((2 * n, 2 * n))
    R[np.ix_(idx1, idx1)] = A.R
    R[np.ix_(idx2, idx2)] = B.R
    cross = (B.K.conj().T @ A.K).imag
    R[np.ix_(idx2, idx1)] = cross
    R[np.ix_(idx1, idx2)] = cross.T
    return CascadeSystem(A.oscillators + B.oscillators, K, R)


def cascade(*systems: Union[Oscillator, CascadeSystem]) -> CascadeSystem:
    """Left-to-right chain: ``cascade(g1, g2, g3)`` is ``g3 <| g2 <| g1``."""
    if not systems:
        raise ShapeError("a cascade needs at least one oscillator")
    out = _as_system(systems[0])
    for G in systems[1:]:
        out = series_product_slh(out, G)
    return out


def check_cascade(system: CascadeSystem, tol: float = COMPOSE_TOL) -> None:
    """Raise unless ``system``'s ``K`` and ``R`` agree with recomposition."""
    ref = compose_cascade(system.oscillators)
    if system.K.shape != ref.K.shape or system.R.shape != ref.R.shape:
        raise ShapeError("composed matrices have the wrong shape")
    err = max(np.max(np.abs(system.K - ref.K)), np.max(np.abs(system.R - ref.R)))
    if err > tol:
        raise InvalidStateError(f"composed (K, R) deviate from recomposition by {err:.3e}")


@dataclass(frozen=True)
class QsdeMatrices:
    """Drift ``A``, diffusion ``B``, output ``C = K``, feedthrough ``D = I``.

    ``noise_quadratic`` is ``B B^dag / 2``, which is real for these systems.
    """

    A: NDArray[np.float64]
    B: NDArray[np.complex128]
    C: NDArray[np.complex128]
    D: NDArray[np.float64]
    noise_quadratic: NDArray[np.float64]


def qsde_matrices(system: CascadeSystem, tol: float = COMPOSE_TOL) -> QsdeMatrices:
    K, R = system.K, system.R
    n, m = system.n, system.m
    Sigma = symplectic_form(n)
    KdK = K.conj().T @ K
    if np.max(np.abs(KdK - KdK.conj().T)) > tol:
        raise InvalidStateError("K^dag K is not Hermitian")

    A = Sigma @ (R + KdK.imag)
    B = 1j * Sigma @ np.hstack([-K.conj().T, K.T])
    BBd = 0.5 * (B @ B.conj().T)
    direct = Sigma @ KdK.real @ Sigma.T
    scale = 1.0 + float(np.max(np.abs(direct)))
    if np.max(np.abs(BBd.imag)) > tol * scale or np.max(np.abs(BBd.real - direct)) > tol * scale:
        raise InvalidStateError("B B^dag / 2 disagrees with Sigma Re(K^dag K) Sigma^T")
    noise = 0.5 * (direct + direct.T)
    return QsdeMatrices(A=A, B=B, C=K.copy(), D=np.eye(m), noise_quadratic=noise)


def char_poly(A: ArrayLike, imag_tol: float = 1e-8) -> NDArray[np.float64]:
    """Monic characteristic polynomial coefficients, highest degree first.

    Expanded from the eigenvalues; imaginary residue up to ``imag_tol``
    (relative to the largest coefficient) is dropped.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"A must be square, got shape {A.shape}")
    coeffs = np.poly(np.linalg.eigvals(A))
    if np.iscomplexobj(coeffs):
        scale = max(1.0, float(np.max(np.abs(coeffs))))
        if np.max(np.abs(coeffs.imag)) > imag_tol * scale:
            raise ArithmeticError("characteristic polynomial has complex coefficients")
        coeffs = coeffs.real
    return np.asarray(coeffs, dtype=float)
