"""Period data assembled from the six elliptic cycle integrals.

The genus-3 period matrix of the curve family reduces, through its quotient
coverings, to closed forms in six half-cycle integrals alpha_1..beta_3 taken
on the two elliptic quotient curves and the t-plane curve.  This module
holds those closed forms: the reduction constants c_j and b_j, the matrices
B and C, the integer covering matrices, the wave numbers and frequencies of
the three phases, and the space-time periodicity lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import CurveParams, chi_coeffs
from .errors import DegeneratePeriods, NonRealWaveNumber, NumericalError, SingularUVW
from .quadrature import all_cycle_integrals
from .theta import nomes_from_b

#: Action of the anti-holomorphic involution on the b-cycles.
K_MATRIX = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])

#: Covering transformation blocks for the two-sheeted quotient maps.
S_MATRIX = np.array([[-1, 1, 0], [1, 0, -1], [1, 0, 1]])
P_MATRIX = np.array([[0, -2, 0], [0, 0, 2], [0, 0, -2]])
Q_MATRIX = np.array([[-1, 1, 0], [0, 0, -1], [0, 0, 1]])
R_MATRIX = np.array([[0, 0, 0], [1, 1, 1], [1, 1, -1]])

#: Number of sheets of the coverings: S^T R - Q^T P = n I.
COVERING_SHEETS = 2


@dataclass(frozen=True)
class EllipticPeriods:
    """Half-cycle integrals on the quotient curves.

    alpha1, beta1 live on the s-plane curve with the root at -2ab;
    alpha2, beta2 on the t-plane curve; alpha3, beta3 on the s-plane curve
    with the root at +2ab.
    """

    alpha1: complex
    alpha2: complex
    alpha3: complex
    beta1: complex
    beta2: complex
    beta3: complex


@dataclass(frozen=True)
class ReductionConstants:
    """Derived constants: c_j (purely imaginary), b_j > 0, nomes h_j in (0,1)."""

    c1: complex
    c2: complex
    c3: complex
    b1: float
    b2: float
    b3: float
    h1: float
    h2: float
    h3: float
    nome_convention: str = "pi"

    @property
    def b(self) -> np.ndarray:
        return np.array([self.b1, self.b2, self.b3])

    @property
    def h(self) -> np.ndarray:
        return np.array([self.h1, self.h2, self.h3])

    @property
    def c(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])


@dataclass(frozen=True)
class PeriodMatrices:
    """Period matrix B, normalization matrix C, and the integer constants."""

    B: np.ndarray
    C: np.ndarray
    K: np.ndarray = field(default_factory=lambda: K_MATRIX.copy())
    S: np.ndarray = field(default_factory=lambda: S_MATRIX.copy())
    P: np.ndarray = field(default_factory=lambda: P_MATRIX.copy())
    Q: np.ndarray = field(default_factory=lambda: Q_MATRIX.copy())
    R: np.ndarray = field(default_factory=lambda: R_MATRIX.copy())


@dataclass(frozen=True)
class WaveData:
    """Everything the field evaluation needs.

    k1, k2, k3 are the wave numbers of the three theta arguments, kappa1 and
    kappa3 the frequencies of arguments 1 and 3.  For lambda0 != 0 the full
    argument map also carries the cross couplings 4*lambda0*k_j (z into
    arguments 1, 3) and 6*lambda0*k2 (t into argument 2); they are derived
    from lambda0 on the fly.  delta is the reduced offset triple (complex:
    the imaginary parts carry the quarter-period structure of the Abelian
    map, while Re(delta) is wrapped to [-1/2, 1/2)), A the amplitude scale,
    z0 an optional initial phase, h the three nomes.
    """

    k1: float
    k2: float
    k3: float
    kappa1: float
    kappa2: float  # t-coupling of argument 2; equals 6 * lambda0 * k2
    kappa3: float
    delta: np.ndarray
    A: float
    z0: np.ndarray
    h: np.ndarray
    lambda0: float
    alpha: float

    @property
    def zcouple1(self) -> float:
        return 4.0 * self.lambda0 * self.k1

    @property
    def zcouple3(self) -> float:
        return 4.0 * self.lambda0 * self.k3

    @property
    def frequencies(self) -> np.ndarray:
        """All linear coefficients entering the theta arguments."""
        return np.array([self.k1, self.k2, self.k3, self.kappa1, self.kappa3,
                         self.zcouple1, self.zcouple3, self.kappa2])


def elliptic_periods(params: CurveParams, tol: float = 1e-12) -> EllipticPeriods:
    """The six half-cycle integrals, by contour quadrature."""
    vals = all_cycle_integrals(params, tol=tol)
    ep = EllipticPeriods(**vals)
    for name, v in vals.items():
        if not np.isfinite(v) or v == 0.0:
            raise NumericalError(f"cycle integral {name} came out {v}")
    return ep


def _imaginary_part_of(v: complex, what: str, rtol: float = 1e-10) -> float:
    """Extract x from v = i x, checking v is purely imaginary."""
    if abs(v.real) > rtol * abs(v):
        raise NumericalError(
            f"{what} should be purely imaginary, got {v:.6e}")
    return float(v.imag)


def reduction_constants(ep: EllipticPeriods, nome: str = "pi") -> ReductionConstants:
    """Reduction constants c_j, b_j and the nomes h_j.

    c1 = 1/(2(alpha1 - 2 beta1)),   i b1 = alpha1 / (2(alpha1 - 2 beta1)),
    c2 = 1/(2 alpha2),              i b2 = beta2 / (2 alpha2),
    c3 = 1/(2(alpha3 - 2 beta3)),   i b3 = alpha3 / (2(alpha3 - 2 beta3)),

    and h_j = exp(-4 pi b_j) under the default convention (see
    ``theta.nomes_from_b`` for the diagnostic alternative).
    """
    d1 = ep.alpha1 - 2.0 * ep.beta1
    d3 = ep.alpha3 - 2.0 * ep.beta3
    scale = max(abs(ep.alpha1), abs(ep.alpha2), abs(ep.alpha3))
    for name, d in (("alpha1 - 2 beta1", d1), ("alpha2", ep.alpha2),
                    ("alpha3 - 2 beta3", d3)):
        if abs(d) < 1e-12 * scale:
            raise DegeneratePeriods(f"denominator {name} vanishes: {d:.3e}")
    c1 = 1.0 / (2.0 * d1)
    c2 = 1.0 / (2.0 * ep.alpha2)
    c3 = 1.0 / (2.0 * d3)
    for j, c in ((1, c1), (2, c2), (3, c3)):
        _imaginary_part_of(c, f"c{j}")
    b1 = _imaginary_part_of(ep.alpha1 * c1, "b1 * i")
    b2 = _imaginary_part_of(ep.beta2 * c2, "b2 * i")
    b3 = _imaginary_part_of(ep.alpha3 * c3, "b3 * i")
    for j, b in ((1, b1), (2, b2), (3, b3)):
        if b <= 0.0:
            raise NumericalError(
                f"b{j} = {b:.6e} is not positive; cycle orientation broken")
    h = nomes_from_b([b1, b2, b3], nome)
    return ReductionConstants(c1=c1, c2=c2, c3=c3, b1=b1, b2=b2, b3=b3,
                              h1=float(h[0]), h2=float(h[1]), h3=float(h[2]),
                              nome_convention=nome)


def period_matrices(rc: ReductionConstants, params: CurveParams) -> PeriodMatrices:
    """Assemble B and C from the reduction constants."""
    c1, c2, c3 = rc.c1, rc.c2, rc.c3
    l0 = params.lambda0
    ab = params.ab
    C = np.array([
        [c1 + c3, -2.0 * l0 * (c1 + c3),
         (l0 * l0 - ab) * c1 + (l0 * l0 + ab) * c3],
        [c1, c2 - 2.0 * l0 * c1, (l0 * l0 - ab) * c1 - l0 * c2],
        [c3, c2 - 2.0 * l0 * c3, (l0 * l0 + ab) * c3 - l0 * c2],
    ])
    b1, b2, b3 = rc.b1, rc.b2, rc.b3
    B = np.array([
        [1j * (b1 + b3), 1j * b1 - 0.5, 1j * b3 - 0.5],
        [1j * b1 - 0.5, 1j * (b1 + b2), 1j * b2 - 0.5],
        [1j * b3 - 0.5, 1j * b2 - 0.5, 1j * (b2 + b3)],
    ])
    return PeriodMatrices(B=B, C=C)


def wave_data(params: CurveParams, rc: ReductionConstants,
              delta=None, A: float = 1.0, z0=None) -> WaveData:
    """Wave numbers, frequencies, and phase data of the three-phase field.

    k1 = -4i c1, k2 = -8i c2, k3 = -4i c3 (all real);
    kappa1 = 4 k1 (3 lambda0^2 - ab + (a^2 + b^2) cos 2 phi),
    kappa3 = 4 k3 (3 lambda0^2 + ab + (a^2 + b^2) cos 2 phi),
    and the argument-2 time coupling kappa2 = 6 lambda0 k2.
    """
    if A <= 0.0:
        raise NumericalError(f"amplitude scale must be positive, got {A}")
    ks = []
    for name, v in (("k1", -4j * rc.c1), ("k2", -8j * rc.c2), ("k3", -4j * rc.c3)):
        if abs(v.imag) > 1e-8 * abs(v):
            raise NonRealWaveNumber(f"{name} = {v:.6e} is not real")
        ks.append(float(v.real))
    k1, k2, k3 = ks
    if min(abs(k1), abs(k2), abs(k3)) == 0.0:
        raise NumericalError("wave numbers must be nonzero")
    l0 = params.lambda0
    common = 3.0 * l0 * l0 + (params.a ** 2 + params.b ** 2) * params.cos2phi
    kappa1 = 4.0 * k1 * (common - params.ab)
    kappa3 = 4.0 * k3 * (common + params.ab)
    kappa2 = 6.0 * l0 * k2
    delta = np.zeros(3) if delta is None else np.asarray(delta)
    z0 = np.zeros(3) if z0 is None else np.asarray(z0, dtype=float)
    # reduced image of a vector wrapped in unreduced coordinates, plus at
    # most one half-period shift: real parts stay within [-2, 2]
    if np.any(np.abs(delta.real) > 2.0 + 1e-12):
        raise NumericalError(
            f"Re(delta) is not in reduced-wrapped form, got {delta}")
    return WaveData(k1=k1, k2=k2, k3=k3, kappa1=kappa1, kappa2=kappa2,
                    kappa3=kappa3, delta=delta, A=float(A), z0=z0,
                    h=rc.h, lambda0=l0, alpha=params.alpha)


def uvw_and_lattice(pm: PeriodMatrices, chi1: float, chi2: float,
                    paranoid: bool = True) -> tuple:
    """Wave-vector matrix (U, V, W) as columns and its inverse.

    The columns of the returned ``edges`` matrix are the space-time lattice
    vectors (X_k, Z_k, T_k) under which the field exactly recurs.  The
    inverse is computed both directly and from the closed triangular form
    against C^{-1}; with ``paranoid`` the two must agree to 1e-8.
    """
    M = np.array([
        [-2.0, 2.0 * chi1, 4.0 * chi2 - 3.0 * chi1 ** 2],
        [0.0, -4.0, 4.0 * chi1],
        [0.0, 0.0, -8.0],
    ])
    uvw_c = 1j * pm.C @ M
    scale = np.abs(uvw_c).max()
    if np.abs(uvw_c.imag).max() > 1e-10 * scale:
        raise NumericalError("wave-vector matrix is not real")
    UVW = uvw_c.real
    det = np.linalg.det(UVW)
    if abs(det) < 1e-12 * scale ** 3:
        raise SingularUVW(f"det(U,V,W) = {det:.3e} too small")
    edges = np.linalg.inv(UVW)
    if paranoid:
        N = np.array([
            [0.5, chi1 / 4.0, chi2 / 4.0 - chi1 ** 2 / 16.0],
            [0.0, 0.25, chi1 / 8.0],
            [0.0, 0.0, 0.125],
        ])
        closed = 1j * N @ np.linalg.inv(pm.C)
        if np.abs(closed.imag).max() > 1e-8 * np.abs(closed).max():
            raise NumericalError("closed-form lattice edges are not real")
        if np.abs(closed.real - edges).max() > 1e-8 * np.abs(edges).max():
            raise NumericalError(
                "direct and closed-form lattice edges disagree beyond 1e-8")
    return UVW, edges


def uvw_reduced_rows(UVW: np.ndarray) -> np.ndarray:
    """Reduced-coordinate images of the columns U, V, W.

    Row pattern of the result (reduction map applied to each column):
    column U -> (k1, 0, k3), column V -> (4 l0 k1, k2, 4 l0 k3),
    column W -> (kappa1, 6 l0 k2, kappa3).  Used as the independent route
    for cross-checking the closed-form wave numbers.
    """
    from .theta import REDUCTION
    return REDUCTION @ UVW
