import math

import numpy as np
import pytest

from thetawave.curve import branch_points, branch_poly, chi_coeffs, validate_params
from thetawave.errors import AngleRange, ModulusOrder, NonFinite, NonPositiveModulus


def test_reference_set_is_valid():
    p = validate_params(1 / 1.3, 1.3, 0.3 * math.pi, 0.0, 0.1)
    assert p.a < p.b
    assert math.isclose(p.ab, 1.0)


@pytest.mark.parametrize("raw, exc", [
    ((1.3, 1 / 1.3, 0.3 * math.pi), ModulusOrder),
    ((0.5, 1.0, 0.2 * math.pi), AngleRange),
    ((-0.1, 1.0, 0.3 * math.pi), NonPositiveModulus),
    ((0.0, 1.0, 0.3 * math.pi), NonPositiveModulus),
    ((0.5, 1.0, math.pi / 4), AngleRange),
    ((0.5, 1.0, math.pi / 2), AngleRange),
    ((0.5, float("nan"), 0.3 * math.pi), NonFinite),
    ((0.5, float("inf"), 0.3 * math.pi), NonFinite),
])
def test_validation_rejects(raw, exc):
    with pytest.raises(exc):
        validate_params(*raw)


def test_relaxed_angle_window():
    # below pi/4 is accepted only with the relaxation flag
    with pytest.raises(AngleRange):
        validate_params(0.5, 1.0, 0.2 * math.pi)
    p = validate_params(0.5, 1.0, 0.2 * math.pi, relax_angle=True)
    assert p.phi == pytest.approx(0.2 * math.pi)


def test_branch_points_satisfy_curve_polynomial():
    params = validate_params(1.0, 2.0, math.pi / 3)
    bd = branch_points(params)
    # expected closed-form points
    e = np.exp(1j * math.pi / 3)
    expected = {1.0 * e, -1.0 * e, np.conj(e), -np.conj(e),
                2.0 * e, -2.0 * e, 2.0 * np.conj(e), -2.0 * np.conj(e)}
    for lam in bd.lambda_points:
        assert min(abs(lam - w) for w in expected) < 1e-14
    # residual oracle: substitute into the degree-8 polynomial
    scale = (params.b + abs(params.lambda0)) ** 8
    res = np.abs(branch_poly(params, bd.lambda_points))
    assert res.max() <= 1e-12 * scale


def test_branch_set_closed_under_conjugation(rng):
    for _ in range(20):
        a = rng.uniform(0.2, 1.5)
        b = a + rng.uniform(0.05, 1.5)
        phi = rng.uniform(math.pi / 4 + 1e-3, math.pi / 2 - 1e-3)
        l0 = rng.uniform(-2, 2)
        bd = branch_points(validate_params(a, b, phi, l0))
        pts = bd.lambda_points
        for lam in pts:
            assert min(abs(np.conj(lam) - w) for w in pts) < 1e-13


def test_lambda0_shift_translates_branch_points():
    base = branch_points(validate_params(0.7, 1.4, 0.4 * math.pi, 0.0))
    moved = branch_points(validate_params(0.7, 1.4, 0.4 * math.pi, 3.0))
    assert np.allclose(moved.lambda_points, base.lambda_points + 3.0, atol=1e-14)
    # t and s planes do not move with lambda0
    assert np.allclose(moved.t_points, base.t_points, atol=1e-14)
    assert np.allclose(moved.s_points, base.s_points, atol=1e-14)


def test_t_and_s_points():
    params = validate_params(1 / 1.3, 1.3, 0.3 * math.pi)
    bd = branch_points(params)
    e2 = np.exp(0.6j * math.pi)
    assert np.isclose(bd.t_points[0], params.a ** 2 * e2)
    assert np.isclose(bd.t_points[2], params.b ** 2 * e2)
    s1 = params.a ** 2 * e2 + params.b ** 2 * np.conj(e2)
    assert np.isclose(bd.s_plus[0], -2.0 * params.ab)
    assert np.isclose(bd.s_minus[0], 2.0 * params.ab)
    assert np.isclose(bd.s_plus[1], s1)
    # s-points are values of t + (ab)^2/t at the t branch points
    for t in bd.t_points:
        s = t + (params.ab ** 2) / t
        assert min(abs(s - w) for w in bd.s_points) < 1e-13


def test_chi_coeffs_closed_forms():
    params = validate_params(1 / 1.3, 1.3, 0.3 * math.pi)
    chi1, chi2 = chi_coeffs(params)
    assert chi1 == 0.0
    expected = -2.0 * (params.a ** 2 + params.b ** 2) * math.cos(0.6 * math.pi)
    assert chi2 == pytest.approx(expected, rel=1e-12)

    shifted = validate_params(1 / 1.3, 1.3, 0.3 * math.pi, lambda0=1.7)
    chi1s, chi2s = chi_coeffs(shifted)
    assert chi1s == pytest.approx(-8.0 * 1.7, rel=1e-14)
    assert chi2s == pytest.approx(28.0 * 1.7 ** 2 + expected, rel=1e-12)


def test_chi_coeffs_match_polynomial_expansion(rng):
    # the closed forms against the numerically expanded product, and
    # realness of every expanded coefficient
    for _ in range(1000):
        a = rng.uniform(0.2, 1.5)
        b = a + rng.uniform(0.05, 1.5)
        phi = rng.uniform(math.pi / 4 + 1e-3, math.pi / 2 - 1e-3)
        l0 = rng.uniform(-3, 3)
        params = validate_params(a, b, phi, l0)
        coeffs = np.poly(branch_points(params).lambda_points)
        scale = np.abs(coeffs).max()
        assert np.abs(coeffs.imag).max() <= 1e-10 * scale
        chi1, chi2 = chi_coeffs(params)  # raises if the two routes disagree
        assert np.isfinite(chi1) and np.isfinite(chi2)
