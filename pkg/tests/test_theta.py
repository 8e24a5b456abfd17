import math

import numpy as np
import pytest

from thetawave.errors import NomeOutOfRange, NotPositiveDefinite, TruncationOverflow
from thetawave.theta import (
    REDUCTION,
    half_period_alternate,
    jacobi_theta,
    nomes_from_b,
    period_matrix_from_b,
    reduce_args,
    reduced_f,
    riemann_theta,
    wrap_half,
)

B_TEST = (0.31, 0.17, 0.23)


# -- Jacobi series -----------------------------------------------------------

def test_theta1_vanishes_at_zero():
    for h in (0.0, 0.1, 0.5, 0.9):
        assert jacobi_theta(1, 0.0, h) == 0.0


def test_theta3_at_zero_is_one_for_zero_nome():
    assert jacobi_theta(3, 0.0, 0.0) == 1.0
    assert jacobi_theta(4, 0.37, 0.0) == 1.0


def test_theta3_partial_sum_value():
    # 1 + 2(0.1 + 0.1^4 + 0.1^9 + ...) summed directly
    expected = 1.0 + 2.0 * sum(0.1 ** (m * m) for m in range(1, 6))
    assert jacobi_theta(3, 0.0, 0.1) == pytest.approx(expected, abs=1e-9)
    assert jacobi_theta(3, 0.0, 0.1) == pytest.approx(1.200200002, abs=1e-9)


def test_jacobi_identity_at_zero():
    # theta2^4 + theta4^4 = theta3^4 at the origin, classic cross-check
    for h in (0.05, 0.2, 0.6):
        t2 = jacobi_theta(2, 0.0, h)
        t3 = jacobi_theta(3, 0.0, h)
        t4 = jacobi_theta(4, 0.0, h)
        assert t2 ** 4 + t4 ** 4 == pytest.approx(t3 ** 4, rel=1e-12)


def test_jacobi_periodicity_and_parity(rng):
    for kind, period in ((1, 2.0), (2, 2.0), (3, 1.0), (4, 1.0)):
        p = rng.uniform(-2, 2, 7)
        v1 = jacobi_theta(kind, p, 0.35)
        v2 = jacobi_theta(kind, p + period, 0.35)
        assert np.allclose(v1, v2, atol=1e-13)
    p = rng.uniform(-2, 2, 7)
    assert np.allclose(jacobi_theta(1, -p, 0.35), -jacobi_theta(1, p, 0.35))
    assert np.allclose(jacobi_theta(3, -p, 0.35), jacobi_theta(3, p, 0.35))


def test_jacobi_rejects_bad_nome():
    with pytest.raises(NomeOutOfRange):
        jacobi_theta(3, 0.1, 1.0)
    with pytest.raises(NomeOutOfRange):
        jacobi_theta(3, 0.1, -0.2)


def test_jacobi_eps_is_honest(rng):
    p = rng.uniform(0, 1, 50)
    for kind in (1, 2, 3, 4):
        coarse = jacobi_theta(kind, p, 0.7, eps=1e-6)
        fine = jacobi_theta(kind, p, 0.7, eps=5e-7)
        assert np.max(np.abs(coarse - fine)) <= 1e-6


def test_jacobi_complex_arguments_match_series(rng):
    # against a direct high-order partial sum at complex points
    z = rng.uniform(-1, 1, 5) + 1j * rng.uniform(-0.5, 0.5, 5)
    h = 0.2
    m = np.arange(1, 40)
    direct3 = 1 + 2 * np.sum(h ** (m * m)[None, :]
                             * np.cos(2 * np.pi * np.outer(z, m)), axis=1)
    assert np.allclose(jacobi_theta(3, z, h, eps=1e-15), direct3, rtol=1e-13)
    direct1 = 2 * np.sum(((-1.0) ** (m - 1) * h ** ((m - 0.5) ** 2))[None, :]
                         * np.sin(np.pi * np.outer(z, 2 * m - 1)), axis=1)
    assert np.allclose(jacobi_theta(1, z, h, eps=1e-15), direct1, rtol=1e-12)


# -- brute-force Riemann theta ------------------------------------------------

def test_riemann_theta_huge_imaginary_part_is_one():
    assert riemann_theta(np.zeros(1), np.array([[1e6j]])) == pytest.approx(1.0)


def test_riemann_theta_g1_matches_jacobi3():
    # Theta(p | B) = theta3(p | e^{i pi B}) for scalar B
    for y, p in ((1.0, 0.0), (0.7, 0.3), (1.3, -1.2)):
        h = math.exp(-math.pi * y)
        th = riemann_theta(np.array([p]), np.array([[1j * y]]), eps=1e-13)
        assert abs(th - jacobi_theta(3, p, h)) < 1e-12


def test_riemann_theta_integer_shift_periodicity(rng):
    B = period_matrix_from_b(B_TEST)
    p = rng.uniform(0, 1, 3)
    base = riemann_theta(p, B, eps=1e-12)
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        assert abs(riemann_theta(p + e, B, eps=1e-12) - base) < 1e-11 * abs(base)


def test_riemann_theta_quasi_periodicity(rng):
    B = period_matrix_from_b(B_TEST)
    p = rng.uniform(0, 1, 3).astype(complex)
    for k in range(3):
        n = np.zeros(3)
        n[k] = 1.0
        lhs = riemann_theta(p + B @ n, B, eps=1e-12)
        factor = np.exp(-1j * math.pi * (n @ B @ n) - 2j * math.pi * (n @ p))
        rhs = factor * riemann_theta(p, B, eps=1e-12)
        assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_riemann_theta_rejects_bad_inputs():
    with pytest.raises(NotPositiveDefinite):
        riemann_theta(np.zeros(2), np.array([[1j, 0], [0, -1j]]))
    with pytest.raises(TruncationOverflow):
        riemann_theta(np.zeros(3), 1e-9j * np.eye(3))
    with pytest.raises(TruncationOverflow):
        riemann_theta(np.zeros(5), 1j * np.eye(5))


# -- reduction ----------------------------------------------------------------

def test_reduce_args_examples():
    assert np.allclose(reduce_args([0.0, 0.0, 0.0]), [0, 0, 0])
    assert np.allclose(reduce_args([1.0, 0.0, 0.0]), [1, -1, 1])
    assert np.allclose(reduce_args([0.0, 1.0, 0.0]), [1, 1, -1])
    assert np.allclose(reduce_args([0.0, 0.0, 1.0]), [-1, 1, 1])


def test_reduction_matrix_parity():
    # the image of the integer lattice consists of equal-parity triples
    assert abs(round(np.linalg.det(REDUCTION))) == 4
    for n in ((1, 0, 0), (0, 1, 0), (2, -1, 3)):
        img = REDUCTION @ np.array(n)
        assert len(set(int(v) % 2 for v in img)) == 1


def test_reduced_f_zero_nome_is_one(rng):
    pt = rng.uniform(-1, 1, (4, 3))
    assert np.allclose(reduced_f(pt, (0.0, 0.0, 0.0)), 1.0)


def test_reduced_f_equals_lattice_sum_real(rng):
    B = period_matrix_from_b(B_TEST)
    h = nomes_from_b(B_TEST, "pi")
    for _ in range(25):
        p = rng.uniform(0, 1, 3)
        th = riemann_theta(p, B, eps=1e-13)
        fr = reduced_f(reduce_args(p), h, eps=1e-15)
        assert abs(fr - th) <= 1e-11 * abs(th)
        assert abs(th.imag) < 1e-12 * abs(th)


def test_reduced_f_equals_lattice_sum_complex(rng):
    B = period_matrix_from_b(B_TEST)
    h = nomes_from_b(B_TEST, "pi")
    for _ in range(8):
        p = rng.uniform(0, 1, 3) + 1j * rng.uniform(-0.25, 0.25, 3)
        th = riemann_theta(p, B, eps=1e-13)
        fr = reduced_f(reduce_args(p), h, eps=1e-15)
        assert abs(fr - th) <= 1e-9 * abs(th)


def test_plain_nome_convention_does_not_match_lattice_sum(rng):
    # the diagnostic 'plain' scaling must NOT satisfy the oracle identity
    B = period_matrix_from_b(B_TEST)
    h = nomes_from_b(B_TEST, "plain")
    p = rng.uniform(0, 1, 3)
    th = riemann_theta(p, B, eps=1e-12)
    fr = reduced_f(reduce_args(p), h, eps=1e-14)
    assert abs(fr - th) > 1e-3 * abs(th)


def test_reduced_f_equal_parity_shift_invariance(rng):
    h = nomes_from_b(B_TEST, "pi")
    pt = rng.uniform(-1, 1, 3)
    base = reduced_f(pt, h)
    for n in ((1, 1, 1), (2, 0, 0), (1, -1, 1), (0, 2, -2)):
        shifted = reduced_f(pt + np.array(n, dtype=float), h)
        assert shifted == pytest.approx(base, rel=1e-12)


def test_reduced_f_unreduced_unit_shifts(rng):
    # p -> p + e_k in unreduced coordinates is always a symmetry
    h = nomes_from_b(B_TEST, "pi")
    p = rng.uniform(-1, 1, 3)
    base = reduced_f(reduce_args(p), h)
    for k in range(3):
        e = np.zeros(3)
        e[k] = 1.0
        assert reduced_f(reduce_args(p + e), h) == pytest.approx(base, rel=1e-12)


def test_wrap_half_and_alternate():
    assert np.allclose(wrap_half([0.5, -0.5, 1.25]), [-0.5, -0.5, 0.25])
    d = np.array([0.1 - 0.3j, -0.2 + 0.1j, 0.4 + 0.0j])
    alt = half_period_alternate(d)
    assert np.allclose(alt - d, 0.5)
    assert np.allclose(alt.imag, d.imag)
