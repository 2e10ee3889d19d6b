import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscascade import (
    CovarianceMatrix,
    DefinitenessError,
    NotPureError,
    PureGaussianState,
    ShapeError,
    SymmetryError,
    covariance_from_xy,
    heisenberg_valid,
    purity,
    random_pure_state,
    symplectic_form,
    thermal_covariance,
    two_mode_squeezed_covariance,
    two_mode_squeezed_xy,
    xy_from_covariance,
)


def test_state_validation():
    with pytest.raises(SymmetryError):
        PureGaussianState([[0.0, 1.0], [0.0, 0.0]], np.eye(2))
    with pytest.raises(DefinitenessError):
        PureGaussianState(np.zeros((2, 2)), -np.eye(2))
    with pytest.raises(ShapeError):
        PureGaussianState(np.zeros((2, 2)), np.eye(3))
    with pytest.raises(ShapeError):
        PureGaussianState([[np.nan]], [[1.0]])
    with pytest.raises(SymmetryError):
        CovarianceMatrix([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(ShapeError):
        CovarianceMatrix(np.eye(3))


def test_vacuum_covariance():
    V = covariance_from_xy(PureGaussianState([[0.0]], [[1.0]]))
    np.testing.assert_array_equal(V.V, 0.5 * np.eye(2))
    assert V.n == 1


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
def test_two_mode_squeezed_covariance_matches_closed_form(alpha):
    V = covariance_from_xy(two_mode_squeezed_xy(alpha)).V
    c, s = np.cosh(2 * alpha), np.sinh(2 * alpha)
    expected = 0.5 * np.block(
        [[np.array([[c, s], [s, c]]), np.zeros((2, 2))], [np.zeros((2, 2)), np.array([[c, -s], [-s, c]])]]
    )
    np.testing.assert_allclose(V, expected, atol=1e-12 * c)
    np.testing.assert_allclose(two_mode_squeezed_covariance(alpha).V, expected, atol=0)


def test_random_state_is_pure_by_determinant(rng):
    s = random_pure_state(4, rng)
    V = covariance_from_xy(s).V
    assert abs(2 ** 8 * np.linalg.det(V) - 1) < 1e-8


def test_xy_from_covariance_examples():
    s = xy_from_covariance(0.5 * np.eye(2))
    np.testing.assert_array_equal(s.X, [[0.0]])
    np.testing.assert_array_equal(s.Y, [[1.0]])
    alpha = 0.7
    s = xy_from_covariance(two_mode_squeezed_covariance(alpha))
    target = two_mode_squeezed_xy(alpha)
    np.testing.assert_allclose(s.X, 0, atol=1e-12)
    np.testing.assert_allclose(s.Y, target.Y, atol=1e-12)


def test_xy_from_covariance_rejects_mixed_states():
    with pytest.raises(NotPureError):
        xy_from_covariance(thermal_covariance(1, 2.0))
    # slightly impure but inside the 1e-6 input gate
    V = 0.5 * (1 + 2e-7) * np.eye(2)
    assert xy_from_covariance(V).Y[0, 0] == pytest.approx(1 / (1 + 2e-7))


def test_xy_from_covariance_reports_asymmetry():
    s = random_pure_state(3, np.random.default_rng(1))
    V = covariance_from_xy(s).V.copy()
    out = xy_from_covariance(V)
    assert out.x_asymmetry < 1e-12
    np.testing.assert_array_equal(out.X, out.X.T)


@pytest.mark.parametrize("n", range(1, 7))
def test_roundtrip_random(rng, n):
    for _ in range(20):
        s = random_pure_state(n, rng)
        back = xy_from_covariance(covariance_from_xy(s))
        assert np.max(np.abs(back.X - s.X)) < 1e-8
        assert np.max(np.abs(back.Y - s.Y)) < 1e-8


def test_purity_examples():
    assert purity(0.5 * np.eye(2)) == pytest.approx(1.0, abs=1e-15)
    # det V = nu^2 / 4 for V = nu I / 2, so purity = 1 / sqrt(4 * nu^2 / 4) = 1 / nu
    assert purity(thermal_covariance(1, 2.0)) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DefinitenessError):
        purity(np.diag([1.0, -1.0]))


def test_heisenberg_examples():
    assert heisenberg_valid(0.5 * np.eye(2))
    # I/4 + (i/2) J has eigenvalues 1/4 +- 1/2
    H = 0.25 * np.eye(2) + 0.5j * symplectic_form(1)
    np.testing.assert_allclose(np.linalg.eigvalsh(H), [-0.25, 0.75], atol=1e-15)
    assert not heisenberg_valid(0.25 * np.eye(2))
    V = two_mode_squeezed_covariance(1.0).V
    assert np.min(np.linalg.eigvalsh(V + 0.5j * symplectic_form(2))) > -1e-9
    assert heisenberg_valid(V)


def _random_state(seed, n):
    return random_pure_state(n, np.random.default_rng(seed))


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_pure_state_properties(seed, n):
    s = _random_state(seed, n)
    V = covariance_from_xy(s)
    # block structure: 2 Y times the upper-left block is the identity
    assert np.max(np.abs(2 * s.Y @ V.V[:n, :n] - np.eye(n))) < 1e-10
    assert abs(purity(V) - 1) < 1e-8
    assert heisenberg_valid(V)
    back = xy_from_covariance(V)
    assert np.max(np.abs(back.X - s.X)) < 1e-8
    assert np.max(np.abs(back.Y - s.Y)) < 1e-8


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 4), nu=st.floats(1.0, 5.0))
def test_purity_bounded_for_physical_states(seed, n, nu):
    # symplectic image of a thermal state: S (nu I/2) S^T with S from a pure covariance
    s = _random_state(seed, n)
    V = nu * covariance_from_xy(s).V
    assert heisenberg_valid(V)
    assert purity(V) <= 1 + 1e-8
    assert purity(V) == pytest.approx(nu ** -n, rel=1e-8)
