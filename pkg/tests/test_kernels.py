import numpy as np
import pytest

from gausscascade import _accel, evolve_moments, qsde_matrices, realization1
from gausscascade.kernels import rk4_moments, rk4_moments_numba, rk4_moments_numpy


@pytest.fixture
def problem():
    q = qsde_matrices(realization1(0.7))
    m0 = np.array([1.0, 0.0, -1.0, 0.5])
    return q.A, q.noise_quadratic, m0, 0.5 * np.eye(4)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree(problem):
    A, N, m0, V0 = problem
    a = rk4_moments_numba(A, N, m0, V0, 1e-3, 3000, 7)
    b = rk4_moments_numpy(A, N, m0, V0, 1e-3, 3000, 7)
    for x, y in zip(a, b):
        assert x.shape == y.shape
        assert np.max(np.abs(x - y)) < 1e-12


def test_env_flag_selects_numpy(problem, monkeypatch):
    monkeypatch.setenv(_accel.ENV_FLAG, "1")
    assert not _accel.numba_enabled()
    A, N, m0, V0 = problem
    ref = rk4_moments_numpy(A, N, m0, V0, 1e-2, 100, 10)
    got = rk4_moments(A, N, m0, V0, 1e-2, 100, 10)
    np.testing.assert_array_equal(got[1], ref[1])


def test_env_flag_unset_uses_numba(monkeypatch):
    monkeypatch.delenv(_accel.ENV_FLAG, raising=False)
    assert _accel.numba_enabled() == _accel.HAVE_NUMBA


def test_unknown_backend(problem):
    with pytest.raises(ValueError):
        rk4_moments(*problem, 1e-2, 10, 1, backend="cuda")


def test_evolve_moments_backend_parity(problem):
    A, N, m0, V0 = problem
    a = evolve_moments(A, N, m0, V0, 2.0, 1e-3, backend="numpy")
    b = evolve_moments(A, N, m0, V0, 2.0, 1e-3, backend="numba")
    np.testing.assert_array_equal(a.times, b.times)
    assert np.max(np.abs(a.covariances - b.covariances)) < 1e-12
