"""Contour integration of Abelian differentials with branch tracking.

Every integrand here has the shape  numerator(z) / w(z)  with
w(z)^2 = prod_j (z - r_j) over the branch points of one of the curves.  The
square root is continued analytically along the path: at each evaluation
the sign closest to the previous value is chosen, and panels are kept short
enough (relative to the distance to the nearest branch point) that the
choice is unambiguous.  A fixed principal-branch convention would put cut
crossings in the middle of contours; continuation avoids that entirely.

Closed cycles are realized as polygonal ellipses enclosing exactly two
branch points, so the root returns to its starting value after one loop
(checked).  The branch at the loop start is seeded by continuation from a
curve-specific real anchor point far to the right of every branch point,
where the radicand is positive, which makes all results deterministic and
continuous in the curve parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .curve import BranchData, CurveParams, branch_points
from .errors import (
    BranchPointProximity,
    InvalidSheetSeed,
    NumericalError,
    TailNotConverged,
    ToleranceNotMet,
)

_GL_ORDER = 16
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_MAX_DEPTH = 60
#: Panels never exceed this fraction of the distance to the nearest root.
_PANEL_FRACTION = 0.35
#: Per-panel error acceptance floor relative to the panel value; stops the
#: subdivision from demanding accuracy below roundoff on long paths.
_REL_FLOOR = 1e-14


# ---------------------------------------------------------------------------
# curves, differentials, paths

@dataclass(frozen=True)
class DifferentialId:
    """One of the Abelian differentials handled by this module.

    tag is one of 'dt_over_chiPlus', 'tdt_over_chiMinus', 'ds_over_nuPlus',
    'ds_over_nuMinus', 'lamK_dlam_over_chi'; ``k`` selects the power for the
    last tag (numerator lambda^k, k = 0, 1, 2).
    """

    tag: str
    k: int | None = None


_DIFFERENTIALS = {
    "dt_over_chiPlus": "gamma1",
    "tdt_over_chiMinus": "gamma2",
    "ds_over_nuPlus": "gamma+",
    "ds_over_nuMinus": "gamma-",
    "lamK_dlam_over_chi": "gamma3",
}


def curve_roots(curve_tag: str, params: CurveParams,
                bd: BranchData | None = None) -> np.ndarray:
    """Finite branch points of the indicated curve."""
    bd = bd if bd is not None else branch_points(params)
    if curve_tag == "gamma3":
        return bd.lambda_points
    if curve_tag == "gamma1":
        return bd.t_points
    if curve_tag == "gamma2":
        return np.concatenate([[0.0 + 0.0j], bd.t_points])
    if curve_tag == "gamma+":
        return bd.s_plus
    if curve_tag == "gamma-":
        return bd.s_minus
    raise ValueError(f"unknown curve tag {curve_tag!r}")


def differential_curve(diff: DifferentialId) -> str:
    try:
        return _DIFFERENTIALS[diff.tag]
    except KeyError:
        raise ValueError(f"unknown differential tag {diff.tag!r}") from None


def _numerator(diff: DifferentialId) -> Callable[[np.ndarray], np.ndarray]:
    if diff.tag == "tdt_over_chiMinus":
        return lambda z: z
    if diff.tag == "lamK_dlam_over_chi":
        if diff.k not in (0, 1, 2):
            raise ValueError(f"lamK differential needs k in 0..2, got {diff.k}")
        k = diff.k
        return lambda z: z ** k if k else np.ones_like(z)
    return lambda z: np.ones_like(z)


@dataclass(frozen=True)
class PathSpec:
    """Polyline path on one of the curves.

    Consecutive waypoints are straight segments; ``sheet_seed`` is the value
    of the square root at the first waypoint and fixes the sheet.
    """

    waypoints: tuple
    sheet_seed: complex
    curve_tag: str

    @property
    def closed(self) -> bool:
        return bool(np.isclose(self.waypoints[0], self.waypoints[-1]))


def path_clearance(params: CurveParams, curve_tag: str) -> float:
    """Default minimum allowed distance from a path to any branch point."""
    roots = curve_roots(curve_tag, params)
    dists = [abs(p - q) for i, p in enumerate(roots) for q in roots[i + 1:]]
    return 1e-3 * min(dists)


def _segment_point_distance(a: complex, b: complex, p: complex) -> float:
    """Distance from point p to the segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * np.conj(ab)).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def validate_path(path: PathSpec, params: CurveParams,
                  clearance: float | None = None) -> None:
    """Check clearance along every segment and the sheet seed consistency."""
    roots = curve_roots(path.curve_tag, params)
    clr = clearance if clearance is not None else path_clearance(params, path.curve_tag)
    for a, b in zip(path.waypoints[:-1], path.waypoints[1:]):
        dmin = min(_segment_point_distance(a, b, r) for r in roots)
        if dmin < clr:
            raise BranchPointProximity(
                f"segment [{a:.6g}, {b:.6g}] passes within {dmin:.3e} "
                f"of a branch point (clearance {clr:.3e})")
    w0 = complex(path.sheet_seed)
    val = complex(np.prod(path.waypoints[0] - roots))
    if abs(w0 * w0 - val) > 1e-10 * max(abs(val), 1e-300):
        raise InvalidSheetSeed(
            f"seed^2 = {w0 * w0:.6g} does not match the curve value {val:.6g}")


# ---------------------------------------------------------------------------
# tracked square root and the adaptive engine

def _choose_sqrt(val: complex, w_prev: complex) -> complex:
    w = np.sqrt(val)
    return w if abs(w - w_prev) <= abs(-w - w_prev) else -w


def _track_step(sqrt_arg, z0, z1, w0, sing_dist, depth=0):
    """Continue the root from z0 to z1, bisecting until each hop is safe."""
    if depth > _MAX_DEPTH:
        raise ToleranceNotMet(f"branch tracking stalled between {z0} and {z1}")
    step = abs(z1 - z0)
    zm = 0.5 * (z0 + z1)
    if step > _PANEL_FRACTION * max(sing_dist(zm), 1e-300):
        wm = _track_step(sqrt_arg, z0, zm, w0, sing_dist, depth + 1)
        return _track_step(sqrt_arg, zm, z1, wm, sing_dist, depth + 1)
    w1 = _choose_sqrt(sqrt_arg(z1), w0)
    if abs(w1 - w0) >= 0.9 * abs(w0):  # hop too large to trust the sign choice
        wm = _track_step(sqrt_arg, z0, zm, w0, sing_dist, depth + 1)
        return _track_step(sqrt_arg, zm, z1, wm, sing_dist, depth + 1)
    return w1


def _gl_panel(numer, sqrt_arg, za, zb, wa):
    """One Gauss-Legendre panel; returns (integral, root at zb)."""
    half = 0.5 * (zb - za)
    mid = 0.5 * (za + zb)
    zs = mid + half * _GL_NODES
    w_prev = wa
    total = None
    for x, gw in zip(zs, _GL_WEIGHTS):
        w_here = _choose_sqrt(sqrt_arg(x), w_prev)
        if abs(w_here - w_prev) >= abs(w_prev):
            raise ToleranceNotMet(
                f"square root varied too fast inside a panel near {x:.6g}")
        w_prev = w_here
        contrib = gw * np.asarray(numer(x)) / w_here
        total = contrib if total is None else total + contrib
    wb = _choose_sqrt(sqrt_arg(zb), w_prev)
    return total * half, wb


def _adaptive_panel(numer, sqrt_arg, za, zb, wa, tol, sing_dist, depth=0):
    if depth > _MAX_DEPTH:
        raise ToleranceNotMet(f"adaptive refinement exhausted near {za:.6g}")
    d = min(sing_dist(za), sing_dist(0.5 * (za + zb)), sing_dist(zb))
    if abs(zb - za) > _PANEL_FRACTION * d:
        zm = 0.5 * (za + zb)
        left, wm = _adaptive_panel(numer, sqrt_arg, za, zm, wa, 0.5 * tol,
                                   sing_dist, depth + 1)
        right, wb = _adaptive_panel(numer, sqrt_arg, zm, zb, wm, 0.5 * tol,
                                    sing_dist, depth + 1)
        return left + right, wb
    coarse, _ = _gl_panel(numer, sqrt_arg, za, zb, wa)
    zm = 0.5 * (za + zb)
    left, wm = _gl_panel(numer, sqrt_arg, za, zm, wa)
    right, wb = _gl_panel(numer, sqrt_arg, zm, zb, wm)
    fine = left + right
    err = np.max(np.abs(fine - coarse))
    if err <= max(tol, _REL_FLOOR * float(np.max(np.abs(fine)))):
        return fine, wb
    halfl, wm = _adaptive_panel(numer, sqrt_arg, za, zm, wa, 0.5 * tol,
                                sing_dist, depth + 1)
    halfr, wb = _adaptive_panel(numer, sqrt_arg, zm, zb, wm, 0.5 * tol,
                                sing_dist, depth + 1)
    return halfl + halfr, wb


def integrate_tracked(numer, sqrt_arg, waypoints: Sequence[complex],
                      seed: complex, tol: float, sing_dist) -> tuple:
    """Integrate numer(z)/w(z) dz along the polyline with w continued from seed.

    Returns (value, w_end).  ``sing_dist(z)`` gives the distance from z to
    the nearest singularity of w and controls panel sizes.
    """
    pts = [complex(z) for z in waypoints]
    total_len = sum(abs(b - a) for a, b in zip(pts[:-1], pts[1:]))
    if total_len == 0.0:
        return 0.0 + 0.0j, complex(seed)
    w = complex(seed)
    value = None
    for a, b in zip(pts[:-1], pts[1:]):
        if a == b:
            continue
        seg_tol = tol * abs(b - a) / total_len
        seg_val, w = _adaptive_panel(numer, sqrt_arg, a, b, w, seg_tol, sing_dist)
        value = seg_val if value is None else value + seg_val
    return value, w


def _dist_to_roots(roots: np.ndarray):
    def dist(z):
        return float(np.min(np.abs(z - roots)))
    return dist


def track_root(sqrt_arg, waypoints: Sequence[complex], seed: complex,
               sing_dist) -> complex:
    """Continue the square root along a polyline without integrating."""
    pts = [complex(z) for z in waypoints]
    w = complex(seed)
    for a, b in zip(pts[:-1], pts[1:]):
        if a != b:
            w = _track_step(sqrt_arg, a, b, w, sing_dist)
    return w


def integrate_segment(diff: DifferentialId, path: PathSpec,
                      params: CurveParams, tol: float = 1e-12) -> complex:
    """Line integral of the differential along the path.

    The square-root branch is continued from ``path.sheet_seed``; the
    absolute error estimate is below ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    curve = differential_curve(diff)
    if curve != path.curve_tag:
        raise ValueError(
            f"differential lives on {curve!r} but path is on {path.curve_tag!r}")
    validate_path(path, params)
    roots = curve_roots(curve, params)
    sqrt_arg = _poly_from_roots(roots)
    numer = _numerator(diff)
    value, w_end = integrate_tracked(numer, sqrt_arg, path.waypoints,
                                     path.sheet_seed, tol,
                                     _dist_to_roots(roots))
    if path.closed and abs(w_end - path.sheet_seed) > 1e-6 * abs(path.sheet_seed):
        raise NumericalError(
            "contour does not close on the surface "
            "(it must enclose an even number of branch points)")
    return complex(value)


def _poly_from_roots(roots: np.ndarray):
    def val(z):
        return complex(np.prod(z - roots))
    return val


# ---------------------------------------------------------------------------
# canonical cycles

#: Which two branch points each primitive loop encloses (indices into
#: curve_roots).  'pair' encircles a conjugate pair, 'cut' the same-phase
#: pair on the t-plane curve, 'mix' an upper point together with the real
#: branch point of an s-plane curve.
_LOOP_TABLE = {
    ("gamma1", "pair"): (0, 1),   # a^2 e^{+-2i phi}
    ("gamma1", "cut"): (0, 2),    # a^2 e^{2i phi} and b^2 e^{2i phi}
    ("gamma+", "pair"): (1, 2),   # s1 and conj(s1)
    ("gamma+", "mix"): (2, 0),    # conj(s1) and -2ab
    ("gamma-", "pair"): (1, 2),
    ("gamma-", "mix"): (2, 0),
}

#: Primitive loops entering the homology cycles of each curve.
_CURVE_LOOPS = {
    "gamma1": ("pair", "cut"),
    "gamma+": ("pair", "mix"),
    "gamma-": ("pair", "mix"),
}

#: Orientation rule fixing the overall sign of the cycle pair on each
#: curve: the sign of Im(c) for the curve's reduction constant.  Frozen by
#: the reference computation (it sets the signs of the wave numbers and
#: thereby the propagation directions).
_WANT_IM_C = {"gamma+": 1.0, "gamma1": -1.0, "gamma-": 1.0}


def _anchor_point(curve_tag: str, roots: np.ndarray) -> complex:
    return complex(3.0 * float(np.max(np.abs(roots))) + 1.0)


def cycle_path(curve_tag: str, loop_tag: str, params: CurveParams,
               pad_frac: float = 0.45, n_vertices: int = 48) -> PathSpec:
    """Closed polygonal contour realizing one primitive loop.

    The contour is an inscribed polygon of the ellipse around the two branch
    points assigned to the loop, traversed counterclockwise starting from
    its rightmost vertex; the branch seed there is continued from the real
    anchor point right of all branch points (over the top of the root
    cluster, so the connecting path cannot graze a root).
    """
    key = (curve_tag, loop_tag)
    if key not in _LOOP_TABLE:
        raise ValueError(f"loop {loop_tag!r} is not defined on {curve_tag!r}")
    roots = curve_roots(curve_tag, params)
    i, j = _LOOP_TABLE[key]
    p, q = roots[i], roots[j]
    others = np.delete(roots, [i, j])
    d_other = min(_segment_point_distance(p, q, r) for r in others)
    pad = pad_frac * d_other
    center = 0.5 * (p + q)
    u = (q - p) / abs(q - p)
    semi_major = 0.5 * abs(q - p) + pad
    semi_minor = pad
    theta = 2.0 * math.pi * np.arange(n_vertices) / n_vertices
    verts = center + u * (semi_major * np.cos(theta)
                          + 1j * semi_minor * np.sin(theta))
    start = int(np.argmax(verts.real))
    verts = np.roll(verts, -start)
    loop = np.concatenate([verts, verts[:1]])

    sqrt_arg = _poly_from_roots(roots)
    dist = _dist_to_roots(roots)
    anchor = _anchor_point(curve_tag, roots)
    height = 2.0 * float(np.max(np.abs(roots))) + abs(pad)
    v0 = complex(loop[0])
    approach = [anchor, anchor.real + 1j * height, v0.real + 1j * height, v0]
    seed0 = math.sqrt(abs(sqrt_arg(anchor)))  # radicand positive at the anchor
    seed = track_root(sqrt_arg, approach, seed0, dist)
    return PathSpec(waypoints=tuple(loop), sheet_seed=seed, curve_tag=curve_tag)


_CYCLE_DIFFERENTIAL = {
    "gamma1": DifferentialId("dt_over_chiPlus"),
    "gamma+": DifferentialId("ds_over_nuPlus"),
    "gamma-": DifferentialId("ds_over_nuMinus"),
}


def loop_integral(curve_tag: str, loop_tag: str, params: CurveParams,
                  tol: float = 1e-12, pad_frac: float = 0.45) -> complex:
    """Closed integral of the curve's differential around one primitive loop."""
    path = cycle_path(curve_tag, loop_tag, params, pad_frac=pad_frac)
    diff = _CYCLE_DIFFERENTIAL[curve_tag]
    return integrate_segment(diff, path, params, tol)


def _canonical_cycle_values(curve_tag: str, v1: complex, v2: complex) -> tuple:
    """Canonical (half a-period, half b-period) from two primitive loops.

    Enumerates unimodular integer combinations of the loop values and keeps
    the one with the canonical reality structure: on the t-plane curve the
    a-value purely imaginary and the b-value real; on the s-plane curves
    the a-value real with Re(b-value) = a/2.  In both cases the derived
    period-matrix parameter must be positive and the sign of Im(c) matches
    the frozen orientation rule.  The combination adapts automatically when
    the branch geometry reorganizes across the parameter region.
    """
    want_sign = _WANT_IM_C[curve_tag]
    middle = curve_tag == "gamma1"
    scale = max(abs(v1), abs(v2))
    rtol = 1e-8 * scale
    best = None
    rng4 = range(-3, 4)
    for m1 in rng4:
        for n1 in rng4:
            for m2 in rng4:
                for n2 in rng4:
                    if abs(m1 * n2 - n1 * m2) != 1:
                        continue
                    A = 0.5 * (m1 * v1 + n1 * v2)
                    Bv = 0.5 * (m2 * v1 + n2 * v2)
                    if middle:
                        if abs(A.real) > rtol or abs(Bv.imag) > rtol:
                            continue
                        c = 1.0 / (2.0 * A)
                        bpar = (Bv * c).imag
                    else:
                        denom = A - 2.0 * Bv
                        if abs(A.imag) > rtol or abs(denom.real) > rtol:
                            continue
                        if abs(denom) < rtol:
                            continue
                        c = 1.0 / (2.0 * denom)
                        bpar = (A * c).imag
                    if bpar <= 0.0 or c.imag * want_sign <= 0.0:
                        continue
                    score = abs(m1) + abs(n1) + abs(m2) + abs(n2)
                    if best is None or score < best[0]:
                        best = (score, A, Bv)
    if best is None:
        raise NumericalError(
            f"no canonical cycle combination found on {curve_tag} "
            f"(loop values {v1:.6g}, {v2:.6g})")
    return best[1], best[2]


@lru_cache(maxsize=32)
def _cached_canonical(a: float, b: float, phi: float, tol: float,
                      pad_frac: float) -> dict:
    params = CurveParams(a=a, b=b, phi=phi)
    out = {}
    for curve_tag, (l1, l2) in _CURVE_LOOPS.items():
        v1 = loop_integral(curve_tag, l1, params, tol=tol / 4.0,
                           pad_frac=pad_frac)
        v2 = loop_integral(curve_tag, l2, params, tol=tol / 4.0,
                           pad_frac=pad_frac)
        av, bv = _canonical_cycle_values(curve_tag, v1, v2)
        out[curve_tag] = (av, bv)
    return out


def cycle_integral(curve_tag: str, cycle_tag: str, params: CurveParams,
                   tol: float = 1e-12, pad_frac: float = 0.45) -> complex:
    """Half of the closed-cycle integral over a canonical homology cycle.

    ``cycle_tag`` is one of a1/b1 (t-plane curve), a+/b+ and a-/b- (s-plane
    curves).  The one-half factor matches the normalization used by all
    period formulas downstream.
    """
    valid = {("gamma1", "a1"), ("gamma1", "b1"), ("gamma+", "a+"),
             ("gamma+", "b+"), ("gamma-", "a-"), ("gamma-", "b-")}
    if (curve_tag, cycle_tag) not in valid:
        raise ValueError(f"cycle {cycle_tag!r} is not defined on {curve_tag!r}")
    pair = _cached_canonical(params.a, params.b, params.phi, tol, pad_frac)
    av, bv = pair[curve_tag]
    return av if cycle_tag.startswith("a") else bv


# ---------------------------------------------------------------------------
# Abelian map to the point at infinity

def _reduce_mod_lattice(delta: np.ndarray, B: np.ndarray,
                        search: int = 3) -> np.ndarray:
    """Representative of delta mod Z^3 + B Z^3 with minimal imaginary part
    and real part wrapped to [-1/2, 1/2)^3."""
    best = None
    best_im = math.inf
    for n in product(range(-search, search + 1), repeat=3):
        v = delta - B @ np.array(n, dtype=float)
        im = float(np.max(np.abs(v.imag)))
        if im < best_im:
            best_im = im
            best = v
    out = best - np.floor(best.real + 0.5)
    return out


def abelian_to_infinity(params: CurveParams, C: np.ndarray, B: np.ndarray,
                        tol: float = 1e-11, path_variant: int = 0,
                        tail_switch: float = 1e6) -> np.ndarray:
    """Difference of the Abelian map between the two points at infinity.

    Integrates the normalized holomorphic differentials (rows of C against
    (lambda^2, lambda, 1) d lambda / chi) from the branch point
    E = lambda0 + a e^{i phi} out to infinity, doubles it (the map is odd
    under the hyperelliptic involution for a branch-point base), and reduces
    modulo the period lattice Z^3 + B Z^3 to a representative with minimal
    imaginary part and real part in [-1/2, 1/2)^3.

    The improper tail beyond |lambda - lambda0| = tail_switch * b uses the
    substitution lambda = lambda0 + 1/xi, after which the integrand is
    smooth through xi = 0 and the tail is computed without truncation.
    ``path_variant`` selects one of two homotopic waypoint layouts (results
    must agree modulo the lattice).
    """
    C = np.asarray(C, dtype=complex)
    bd = branch_points(params)
    roots = bd.lambda_points
    l0 = params.lambda0
    E = roots[0]
    mids = {0: l0 + (params.a + params.b),
            1: l0 + (params.a + params.b) * np.exp(-0.35j)}
    mid = complex(mids[path_variant])
    far = l0 + tail_switch * params.b

    def numer(z):
        return C @ np.array([z * z, z, 1.0], dtype=complex)

    # branch seeded at the real point mid0 right of the root cluster, where
    # the radicand is real positive; variant paths share this seed point
    mid0 = complex(l0 + (params.a + params.b))
    sqrt_arg = _poly_from_roots(roots)
    dist = _dist_to_roots(roots)
    w_mid0 = math.sqrt(abs(sqrt_arg(mid0)))
    w_mid = w_mid0 if path_variant == 0 else _track_step(
        sqrt_arg, mid0, mid, w_mid0, dist)

    # segment from the branch point E to mid, desingularized by z = E + (mid-E) s^2
    span = mid - E
    others = np.delete(roots, 0)

    def sub_sqrt_arg(s):
        lam = E + span * s * s
        return span * complex(np.prod(lam - others))

    def sub_numer(s):
        return 2.0 * span * numer(E + span * s * s)

    s_roots = np.sqrt((others - E) / span)
    s_roots = np.concatenate([s_roots, -s_roots])

    def sub_dist(s):
        return float(np.min(np.abs(s - s_roots)))

    w_sub_end = complex(np.sqrt(span) * np.sqrt(complex(np.prod(mid - others))))
    if abs(w_sub_end - w_mid) > abs(-w_sub_end - w_mid):
        w_sub_end = -w_sub_end
    val_back, _ = integrate_tracked(sub_numer, sub_sqrt_arg, [1.0, 0.0],
                                    w_sub_end, tol, sub_dist)
    seg1 = -np.asarray(val_back)

    seg2, w_far = integrate_tracked(numer, sqrt_arg, [mid, far], w_mid, tol, dist)

    # tail: lambda = lambda0 + 1/xi, chi = xi^-4 * sqrt(prod(1 - mu_j xi))
    mu = roots - l0
    xi_r = 1.0 / (far - l0)

    def tail_sqrt_arg(xi):
        return complex(np.prod(1.0 - mu * xi))

    def tail_numer(xi):
        lam_sq = C[:, 0]
        lam_lin = 2.0 * C[:, 0] * l0 + C[:, 1]
        lam_const = C @ np.array([l0 * l0, l0, 1.0], dtype=complex)
        return lam_sq + lam_lin * xi + lam_const * xi * xi

    xi_roots = 1.0 / mu

    def tail_dist(xi):
        return float(np.min(np.abs(xi - xi_roots)))

    w_tail = w_far * xi_r ** 4
    try:
        tail_back, _ = integrate_tracked(tail_numer, tail_sqrt_arg,
                                         [xi_r, 0.0], w_tail, tol, tail_dist)
    except ToleranceNotMet as exc:
        raise TailNotConverged(str(exc)) from exc
    tail = -np.asarray(tail_back)

    delta_raw = 2.0 * (np.asarray(seg1) + np.asarray(seg2) + tail)
    return _reduce_mod_lattice(delta_raw, np.asarray(B, dtype=complex))


@lru_cache(maxsize=32)
def _cached_cycles(a: float, b: float, phi: float, tol: float, pad_frac: float):
    """All six half-cycle integrals; they depend only on (a, b, phi)."""
    params = CurveParams(a=a, b=b, phi=phi)
    return {
        "alpha1": cycle_integral("gamma+", "a+", params, tol, pad_frac),
        "alpha2": cycle_integral("gamma1", "a1", params, tol, pad_frac),
        "alpha3": cycle_integral("gamma-", "a-", params, tol, pad_frac),
        "beta1": cycle_integral("gamma+", "b+", params, tol, pad_frac),
        "beta2": cycle_integral("gamma1", "b1", params, tol, pad_frac),
        "beta3": cycle_integral("gamma-", "b-", params, tol, pad_frac),
    }


def all_cycle_integrals(params: CurveParams, tol: float = 1e-12,
                        pad_frac: float = 0.45) -> dict:
    """The six cycle integrals alpha_1..beta_3 keyed by name."""
    return dict(_cached_cycles(params.a, params.b, params.phi, tol, pad_frac))
