import numpy as np
import pytest

from gausscascade import (
    PureGaussianState,
    ShapeError,
    StabilityError,
    compose_cascade,
    covariance_from_xy,
    inv_sqrt_spd,
    is_hurwitz,
    Oscillator,
    purity,
    qsde_matrices,
    random_pure_state,
    realization1,
    realization1_parameters,
    realization2,
    synthesize_cascade,
    two_mode_squeezed_covariance,
    two_mode_squeezed_xy,
    verify_synthesis,
)
from oracles import scipy_lyapunov


def paper_realization2_couplings(alpha):
    c, s = np.cosh(alpha), np.sinh(alpha)
    K1 = np.array([[-1j * c, c], [1j * s, s]])
    K2 = np.array([[1j * s, s], [-1j * c, c]])
    return K1, K2


def test_vacuum_single_mode():
    sys_ = synthesize_cascade(PureGaussianState([[0.0]], [[1.0]]))
    (g,) = sys_.oscillators
    np.testing.assert_allclose(g.K, [[-1j, 1.0]], atol=1e-15)
    np.testing.assert_array_equal(g.R, np.zeros((2, 2)))


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.5, 1.0, 1.7])
def test_two_mode_squeezed_reproduces_printed_couplings(alpha):
    g1, g2 = synthesize_cascade(two_mode_squeezed_xy(alpha)).oscillators
    K1, K2 = paper_realization2_couplings(alpha)
    assert np.max(np.abs(g1.K - K1)) < 1e-10
    assert np.max(np.abs(g2.K - K2)) < 1e-10


def test_realization2_alpha_zero_is_two_vacuum_channels():
    g1, g2 = realization2(0.0).oscillators
    np.testing.assert_allclose(g1.K, [[-1j, 1], [0, 0]], atol=1e-15)
    np.testing.assert_allclose(g2.K, [[0, 0], [-1j, 1]], atol=1e-15)


def test_cross_terms_vanish_for_random_target(rng):
    sys_ = synthesize_cascade(random_pure_state(5, rng))
    for j in range(5):
        for k in range(j):
            Kj, Kk = sys_.oscillators[j].K, sys_.oscillators[k].K
            assert np.max(np.abs((Kj.conj().T @ Kk).imag)) < 1e-10


def test_column_pair_reassembly(rng):
    for n in range(1, 7):
        s = random_pure_state(n, rng)
        sys_ = compose_cascade(synthesize_cascade(s).oscillators)
        expected = inv_sqrt_spd(s.Y) @ np.hstack([-(s.X + 1j * s.Y), np.eye(n)])
        assert np.max(np.abs(sys_.K - expected)) < 1e-12
        assert sys_.m == n


def test_realization1_alpha_zero():
    # sinh 0 - cosh 0 = -1; (0 - 0) / 1 = 0
    assert realization1_parameters(0.0) == (-1.0, 0.0)
    g1, g2 = realization1(0.0).oscillators
    np.testing.assert_allclose(g1.K, [[-1j, 1.0]], atol=0)
    np.testing.assert_array_equal(g1.R, 2 * np.eye(2))
    np.testing.assert_array_equal(g2.R, -2 * np.eye(2))


@pytest.mark.parametrize("alpha", np.linspace(-2, 3, 11))
def test_q2_printed_form_equals_simplified(alpha):
    _, Q2 = realization1_parameters(alpha)
    s, c = np.sinh(2 * alpha), np.cosh(2 * alpha)
    assert Q2 == pytest.approx(s * (s - c) / c, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 2.0])
def test_realization1_stability_conditions(alpha):
    Q1, Q2 = realization1_parameters(alpha)
    assert Q1 < 0
    assert Q1**2 - Q2**2 + 4 > 0
    assert is_hurwitz(qsde_matrices(realization1(alpha)).A)


def test_realization1_steady_state_is_two_mode_squeezed():
    q = qsde_matrices(realization1(0.5))
    V = scipy_lyapunov(q.A, q.noise_quadratic)
    assert np.max(np.abs(V - two_mode_squeezed_covariance(0.5).V)) < 1e-8


@pytest.mark.parametrize("alpha", [0.0, 0.4, 1.3])
def test_realization2_drift(alpha):
    sys_ = realization2(alpha)
    assert sys_.m == 2
    assert all(np.all(g.R == 0) for g in sys_.oscillators)
    assert np.max(np.abs(qsde_matrices(sys_).A + np.eye(4))) < 1e-10


def test_realization2_steady_state_alpha_one():
    q = qsde_matrices(realization2(1.0))
    V = scipy_lyapunov(q.A, q.noise_quadratic)
    assert np.max(np.abs(V - covariance_from_xy(two_mode_squeezed_xy(1.0)).V)) < 1e-8


def test_verify_theorem_system(rng):
    s = random_pure_state(4, rng)
    rep = verify_synthesis(synthesize_cascade(s), s)
    assert rep.target_residual < 1e-9
    assert rep.hamiltonian_is_zero and rep.drift_is_minus_identity and rep.hurwitz
    assert rep.purity == pytest.approx(1.0, abs=1e-8)


def test_verify_realization1():
    rep = verify_synthesis(realization1(0.5), two_mode_squeezed_xy(0.5))
    assert rep.target_residual < 1e-8
    assert not rep.hamiltonian_is_zero
    assert not rep.drift_is_minus_identity


@pytest.mark.parametrize("wrong", [0.1, 0.2, 0.8, 1.2])
def test_verify_realization1_wrong_target(wrong):
    alpha = 0.5
    rep = verify_synthesis(realization1(alpha), two_mode_squeezed_xy(wrong))
    # oracle: both covariances are known in closed form
    gap = np.max(np.abs(two_mode_squeezed_covariance(alpha).V - two_mode_squeezed_covariance(wrong).V))
    assert rep.target_residual == pytest.approx(gap, abs=1e-8)
    assert rep.target_residual > 0.1


def test_verify_rejects_unstable_and_mismatched():
    frozen = compose_cascade([Oscillator(np.zeros((1, 2)))])
    with pytest.raises(StabilityError):
        verify_synthesis(frozen, PureGaussianState([[0.0]], [[1.0]]))
    with pytest.raises(ShapeError):
        verify_synthesis(realization1(0.5), PureGaussianState([[0.0]], [[1.0]]))


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0])
def test_channel_economy(alpha):
    r1 = verify_synthesis(realization1(alpha), two_mode_squeezed_xy(alpha))
    r2 = verify_synthesis(realization2(alpha), two_mode_squeezed_xy(alpha))
    assert r1.system.m == 1 and r2.system.m == 2
    assert np.max(np.abs(r1.steady_covariance.V - r2.steady_covariance.V)) < 1e-8
    assert purity(r1.steady_covariance) == pytest.approx(1.0, abs=1e-8)
