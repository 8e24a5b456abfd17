"""Spectral-curve parameters and branch data.

The family of genus-3 hyperelliptic curves handled here is

    chi^2 = ((L - l0)^4 - 2 a^2 (L - l0)^2 cos(2 phi) + a^4)
          * ((L - l0)^4 - 2 b^2 (L - l0)^2 cos(2 phi) + b^4),

with 0 < a < b and pi/4 < phi < pi/2.  The eight branch points are
l0 +- a e^{+-i phi} and l0 +- b e^{+-i phi}; none is real and the set is
closed under conjugation, which keeps the expanded polynomial coefficients
real.  Two quotient curves in t = (L - l0)^2 and two elliptic curves in
s = t + a^2 b^2 / t carry the cycle integrals used downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AngleRange, ModulusOrder, NonFinite, NonPositiveModulus


@dataclass(frozen=True)
class CurveParams:
    """Validated curve parameters.

    a, b are the minor/major moduli, phi the branch-point angle in radians,
    lambda0 the spectral shift, alpha the third-flow dispersion coefficient
    (used only by the Hirota-type amplitude).
    """

    a: float
    b: float
    phi: float
    lambda0: float = 0.0
    alpha: float = 0.0

    @property
    def cos2phi(self) -> float:
        return math.cos(2.0 * self.phi)

    @property
    def ab(self) -> float:
        return self.a * self.b


@dataclass(frozen=True)
class BranchData:
    """Branch points of the curve and of its quotients.

    lambda_points : 8 points of the genus-3 curve, ordered
        (+a e^{i phi}, -a e^{i phi}, +a e^{-i phi}, -a e^{-i phi},
         then the same with b), all shifted by lambda0.
    t_points : 4 points of the t-plane quotients: a^2 e^{+-2i phi},
        b^2 e^{+-2i phi}, ordered (a^2 e^{2i phi}, a^2 e^{-2i phi},
        b^2 e^{2i phi}, b^2 e^{-2i phi}).
    s_plus / s_minus : 3 finite branch points each of the two elliptic
        curves in s, ordered (-+2ab, s1, conj(s1)) with
        s1 = a^2 e^{2i phi} + b^2 e^{-2i phi}.
    """

    lambda_points: np.ndarray
    t_points: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray

    @property
    def s_points(self) -> np.ndarray:
        return np.concatenate([self.s_plus, self.s_minus])


def validate_params(a: float, b: float, phi: float, lambda0: float = 0.0,
                    alpha: float = 0.0, relax_angle: bool = False) -> CurveParams:
    """Validate the five curve parameters; never clamps silently.

    With ``relax_angle`` the angle window widens to (0, pi/2), which admits
    configurations outside the standard family (used only for special
    cancellation checks).  Boundary angles are always rejected: at
    phi = pi/4 or pi/2 branch points coalesce or fall on the axes.
    """
    raw = (a, b, phi, lambda0, alpha)
    if not all(math.isfinite(float(v)) for v in raw):
        raise NonFinite(f"parameters must be finite, got {raw}")
    a, b, phi, lambda0, alpha = map(float, raw)
    if a <= 0.0:
        raise NonPositiveModulus(f"need a > 0, got a={a}")
    if b <= a:
        raise ModulusOrder(f"need a < b, got a={a}, b={b}")
    lo = 0.0 if relax_angle else math.pi / 4.0
    if not (lo < phi < math.pi / 2.0) or (relax_angle and phi == math.pi / 4.0):
        raise AngleRange(
            f"need phi in the open interval ({lo}, {math.pi / 2.0}), got phi={phi}")
    return CurveParams(a=a, b=b, phi=phi, lambda0=lambda0, alpha=alpha)


def branch_points(params: CurveParams) -> BranchData:
    """Branch points of the curve and all its quotients."""
    a, b, l0 = params.a, params.b, params.lambda0
    e_pos = np.exp(1j * params.phi)
    e_neg = np.conj(e_pos)
    lam = l0 + np.array([
        a * e_pos, -a * e_pos, a * e_neg, -a * e_neg,
        b * e_pos, -b * e_pos, b * e_neg, -b * e_neg,
    ])
    e2 = np.exp(2j * params.phi)
    t = np.array([a * a * e2, a * a * np.conj(e2), b * b * e2, b * b * np.conj(e2)])
    s1 = a * a * e2 + b * b * np.conj(e2)
    ab = params.ab
    s_plus = np.array([-2.0 * ab, s1, np.conj(s1)])
    s_minus = np.array([2.0 * ab, s1, np.conj(s1)])
    return BranchData(lambda_points=lam, t_points=t, s_plus=s_plus, s_minus=s_minus)


def branch_poly(params: CurveParams, lam) -> np.ndarray:
    """Value of the degree-8 branch polynomial chi^2 at ``lam`` (vectorized)."""
    mu2 = (np.asarray(lam) - params.lambda0) ** 2
    c = params.cos2phi
    fa = mu2 * mu2 - 2.0 * params.a ** 2 * c * mu2 + params.a ** 4
    fb = mu2 * mu2 - 2.0 * params.b ** 2 * c * mu2 + params.b ** 4
    return fa * fb


def chi_coeffs(params: CurveParams) -> tuple[float, float]:
    """Coefficients of L^7 and L^6 in the monic degree-8 branch polynomial.

    Computed from the closed forms and cross-checked against a numerical
    expansion of the product over branch points; the two routes must agree
    to 1e-10 relative.  Both coefficients are real by conjugation symmetry.
    """
    l0 = params.lambda0
    chi1 = -8.0 * l0
    chi2 = 28.0 * l0 * l0 - 2.0 * (params.a ** 2 + params.b ** 2) * params.cos2phi

    coeffs = np.poly(branch_points(params).lambda_points)
    scale = max(1.0, abs(coeffs[1]), abs(coeffs[2]))
    if abs(coeffs[1] - chi1) > 1e-10 * scale or abs(coeffs[2] - chi2) > 1e-10 * scale:
        raise AssertionError(
            "closed-form curve coefficients disagree with polynomial expansion: "
            f"({coeffs[1]:.3e}, {coeffs[2]:.3e}) vs ({chi1:.3e}, {chi2:.3e})")
    return chi1, chi2
