"""Fixed-step RK4 kernels for the linear moment equations.

Both kernels integrate

    dm/dt = A m
    dV/dt = A V + V A^T + Q

with the classical four-stage scheme and store every ``stride``-th step plus
the final one. ``rk4_moments_numba`` and ``rk4_moments_numpy`` produce the
same samples to rounding; :func:`rk4_moments` picks one at call time.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit, numba_enabled


def sample_steps(nsteps: int, stride: int) -> np.ndarray:
    """Step indices that get stored: 0, stride, 2*stride, ..., nsteps."""
    steps = np.arange(0, nsteps + 1, stride, dtype=np.int64)
    if steps[-1] != nsteps:
        steps = np.append(steps, np.int64(nsteps))
    return steps


@njit(cache=True)
def _lyap_rhs(A, V, Q):
    AV = np.dot(A, V)
    return AV + AV.T + Q


@njit(cache=True)
def _rk4_loop(A, Q, m0, V0, h, nsteps, stride, nsamples):
    d = A.shape[0]
    means = np.empty((nsamples, d))
    covs = np.empty((nsamples, d, d))
    m = m0.copy()
    V = V0.copy()
    means[0] = m
    covs[0] = 0.5 * (V + V.T)
    k = 1
    half = 0.5 * h
    for step in range(1, nsteps + 1):
        a1 = np.dot(A, m)
        a2 = np.dot(A, m + half * a1)
        a3 = np.dot(A, m + half * a2)
        a4 = np.dot(A, m + h * a3)
        m = m + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)

        b1 = _lyap_rhs(A, V, Q)
        b2 = _lyap_rhs(A, V + half * b1, Q)
        b3 = _lyap_rhs(A, V + half * b2, Q)
        b4 = _lyap_rhs(A, V + h * b3, Q)
        V = V + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)

        if step % stride == 0 or step == nsteps:
            means[k] = m
            covs[k] = 0.5 * (V + V.T)
            k += 1
    return means, covs


def rk4_moments_numba(A, Q, m0, V0, h, nsteps, stride):
    nsamples = len(sample_steps(nsteps, stride))
    return _rk4_loop(
        np.ascontiguousarray(A, dtype=np.float64),
        np.ascontiguousarray(Q, dtype=np.float64),
        np.ascontiguousarray(m0, dtype=np.float64),
        np.ascontiguousarray(V0, dtype=np.float64),
        float(h),
        int(nsteps),
        int(stride),
        nsamples,
    )


def rk4_moments_numpy(A, Q, m0, V0, h, nsteps, stride):
    A = np.asarray(A, dtype=np.float64)
    Q = np.asarray(Q, dtype=np.float64)
    m = np.array(m0, dtype=np.float64)
    V = np.array(V0, dtype=np.float64)
    nsamples = len(sample_steps(nsteps, stride))
    d = A.shape[0]
    means = np.empty((nsamples, d))
    covs = np.empty((nsamples, d, d))
    means[0] = m
    covs[0] = 0.5 * (V + V.T)

    def rhs(V):
        AV = A @ V
        return AV + AV.T + Q

    k = 1
    half = 0.5 * h
    for step in range(1, nsteps + 1):
        a1 = A @ m
        a2 = A @ (m + half * a1)
        a3 = A @ (m + half * a2)
        a4 = A @ (m + h * a3)
        m = m + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)

        b1 = rhs(V)
        b2 = rhs(V + half * b1)
        b3 = rhs(V + half * b2)
        b4 = rhs(V + h * b3)
        V = V + (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4)

        if step % stride == 0 or step == nsteps:
            means[k] = m
            covs[k] = 0.5 * (V + V.T)
            k += 1
    return means, covs


def rk4_moments(A, Q, m0, V0, h, nsteps, stride, backend=None):
    """Dispatch to the numba or numpy kernel.

    ``backend`` may be ``"numba"``, ``"numpy"`` or None (follow the env flag).
    """
    if backend is None:
        backend = "numba" if numba_enabled() else "numpy"
    if backend == "numba":
        return rk4_moments_numba(A, Q, m0, V0, h, nsteps, stride)
    if backend == "numpy":
        return rk4_moments_numpy(A, Q, m0, V0, h, nsteps, stride)
    raise ValueError(f"unknown backend {backend!r}")
