"""Tests for the chain representation and its spectral operations."""

import numpy as np
import pytest

from alphasqg import contour
from alphasqg.errors import AccuracyGuardError


def make_circle(M=64, rho=1.0, center=(0.0, 0.0)):
    eta = contour.eta_grid(M)
    return contour.Curve(
        np.column_stack(
            [center[0] + rho * np.cos(eta), center[1] + rho * np.sin(eta)]
        )
    )


def make_front(M=64, height=0.3):
    eta = contour.eta_grid(M)
    return contour.Curve(
        np.column_stack([eta / (2.0 * np.pi), np.full(M, height)]), winding=1
    )


def test_curve_validation():
    with pytest.raises(ValueError):
        contour.Curve(np.zeros((8, 2)))
    with pytest.raises(ValueError):
        contour.Curve(np.zeros((33, 2)))
    with pytest.raises(ValueError):
        contour.Chain([])
    with pytest.raises(ValueError):
        contour.Chain([make_circle(32), make_circle(64)])
    with pytest.raises(ValueError):
        contour.Curve(np.zeros((32, 2)), min_node_spacing=1e-3)


def test_delta_basics():
    chain = contour.Chain([make_circle()])
    np.testing.assert_allclose(contour.delta(chain, 0, 5, 0.0), [0.0, 0.0], atol=1e-14)
    # unit circle chord length 2|sin(beta/2)|
    rng = np.random.default_rng(2)
    for beta in rng.uniform(-np.pi, np.pi, 8):
        for i in (0, 13, 40):
            d = contour.delta(chain, 0, i, beta)
            assert np.hypot(*d) == pytest.approx(2.0 * abs(np.sin(beta / 2.0)), abs=1e-12)


def test_delta_flat_front():
    chain = contour.Chain([make_front()])
    d = contour.delta(chain, 0, 7, 0.7)
    np.testing.assert_allclose(d, [0.7 / (2.0 * np.pi), 0.0], atol=1e-13)


def test_delta_antisymmetry():
    curve = make_circle()
    eta = contour.eta_grid(curve.M)
    rng = np.random.default_rng(6)
    for _ in range(10):
        i = rng.integers(0, curve.M)
        beta = rng.uniform(-np.pi, np.pi)
        v1 = curve.eval(np.asarray(eta[i])) - curve.eval(np.asarray(eta[i] - beta))
        # -delta_{-beta} evaluated at eta - beta
        v2 = curve.eval(np.asarray(eta[i] - beta)) - curve.eval(np.asarray(eta[i]))
        np.testing.assert_allclose(v1, -v2, atol=1e-12)


def test_delta_chord_bound():
    # |delta_beta(eta)| <= C * ||gamma||_{H^2} * |beta|, single calibrated C
    C = 1.0
    rng = np.random.default_rng(9)
    for curve in (make_circle(), make_front(), make_circle(64, 0.25, (0.1, 0.4))):
        h2 = contour.sobolev_norm(curve, 2)
        for beta in rng.uniform(-np.pi, np.pi, 5):
            d = curve.delta_samples(beta)
            assert np.max(np.hypot(d[:, 0], d[:, 1])) <= C * h2 * abs(beta)


def test_spectral_derivative():
    eta = contour.eta_grid(64)
    circ = make_circle()
    d1 = contour.spectral_derivative(circ, 1)
    np.testing.assert_allclose(
        d1, np.column_stack([-np.sin(eta), np.cos(eta)]), atol=1e-10
    )
    front = make_front()
    np.testing.assert_allclose(
        contour.spectral_derivative(front, 1),
        np.tile([1.0 / (2.0 * np.pi), 0.0], (64, 1)),
        atol=1e-13,
    )
    wav = contour.Curve(np.column_stack([np.cos(eta), np.sin(3 * eta)]))
    d2 = contour.spectral_derivative(wav, 2)
    i0 = np.argmin(np.abs(eta))
    np.testing.assert_allclose(d2[i0], [-1.0, 0.0], atol=1e-10)
    with pytest.raises(AccuracyGuardError):
        contour.spectral_derivative(circ, 20)


def test_spectral_derivative_commutes_with_rotation():
    circ = make_circle()
    rot = contour.Curve(np.roll(circ.nodes, 9, axis=0))
    np.testing.assert_allclose(
        contour.spectral_derivative(rot, 2),
        np.roll(contour.spectral_derivative(circ, 2), 9, axis=0),
        atol=1e-11,
    )


def test_sobolev_norm():
    circ = make_circle()
    assert contour.sobolev_norm(circ, 1) == pytest.approx(2.0 * np.sqrt(np.pi), rel=1e-12)
    zero = contour.Curve(np.zeros((64, 2)))
    assert contour.sobolev_norm(zero, 4) == 0.0
    rot = contour.Curve(np.roll(circ.nodes, 5, axis=0))
    assert contour.sobolev_norm(rot, 3) == pytest.approx(
        contour.sobolev_norm(circ, 3), rel=1e-12
    )
    with pytest.raises(AccuracyGuardError):
        contour.sobolev_norm(make_circle(16), 5)
    idx = contour.SobolevIndex(3)
    assert contour.sobolev_norm(circ, idx) == contour.sobolev_norm(circ, 3)
    with pytest.raises(ValueError):
        contour.SobolevIndex(2)


def test_resample():
    circ = make_circle()
    same = contour.resample(circ, 64)
    np.testing.assert_allclose(same.nodes, circ.nodes, atol=1e-13)
    up = contour.resample(circ, 128)
    r = np.hypot(up.nodes[:, 0], up.nodes[:, 1])
    np.testing.assert_allclose(r, 1.0, atol=1e-12)
    # original nodes reproduced exactly on upsampling
    np.testing.assert_allclose(up.nodes[::2], circ.nodes, atol=1e-12)
    # downsampling a band-limited curve (modes < 32) is exact
    down = contour.resample(up, 64)
    np.testing.assert_allclose(down.nodes, circ.nodes, atol=1e-12)
    front = make_front()
    fu = contour.resample(front, 96)
    assert fu.winding == 1
    eta = contour.eta_grid(96)
    np.testing.assert_allclose(
        fu.nodes, np.column_stack([eta / (2 * np.pi), np.full(96, 0.3)]), atol=1e-12
    )


def test_resample_norm_stability():
    curve = make_circle(64, 0.5, (0.2, -0.1))
    n0 = contour.sobolev_norm(curve, 3)
    n1 = contour.sobolev_norm(contour.resample(curve, 128), 3)
    assert abs(n1 - n0) <= 1e-8


def test_eval_off_grid():
    circ = make_circle()
    etas = np.array([0.123, -2.5, 3.0])
    vals = circ.eval(etas)
    np.testing.assert_allclose(
        vals, np.column_stack([np.cos(etas), np.sin(etas)]), atol=1e-12
    )
    d = circ.eval(etas, order=1)
    np.testing.assert_allclose(
        d, np.column_stack([-np.sin(etas), np.cos(etas)]), atol=1e-11
    )
