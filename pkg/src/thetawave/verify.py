"""Independent numerical verification of the evaluated fields.

The central oracle is the residual of  3 u_zz = (4 u_t + u_xxx + 6 u u_x)_x
under high-order centered finite differences; a correct pipeline drives the
normalized residual to the FD truncation floor, while a 1% error in the
amplitude scale or a 0.01 shift of an offset inflates it by orders of
magnitude.  Normalization always uses the largest of the four PDE term
magnitudes, never u itself, so the statements are invariant under the
constant-rescale ambiguity of the theta ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FlatField, GridTooSmall, RoundoffFloor, ValidationError
from .periods import WaveData
from .solution import axis_frequencies, eval_field_array


@dataclass(frozen=True)
class ResidualReport:
    max_abs_residual: float
    normalizer: float
    normalized_residual: float
    fd_order: int
    step: float


def fd_weights(deriv: int, offsets) -> np.ndarray:
    """Finite-difference weights for the given derivative at 0 (Fornberg).

    Classical recurrence for arbitrarily spaced nodes; weights are for unit
    spacing and must be divided by h^deriv externally.
    """
    alpha = np.asarray(offsets, dtype=float)
    n = alpha.size
    if deriv >= n:
        raise ValueError("need more points than the derivative order")
    C = np.zeros((n, deriv + 1))
    C[0, 0] = 1.0
    c1 = 1.0
    c4 = alpha[0]
    for i in range(1, n):
        c2 = 1.0
        c5 = c4
        c4 = alpha[i]
        for j in range(i):
            c3 = alpha[i] - alpha[j]
            c2 *= c3
            if j == i - 1:
                for k in range(min(i, deriv), 0, -1):
                    C[i, k] = c1 * (k * C[i - 1, k - 1] - c5 * C[i - 1, k]) / c2
                C[i, 0] = -c1 * c5 * C[i - 1, 0] / c2
            for k in range(min(i, deriv), 0, -1):
                C[j, k] = (c4 * C[j, k] - k * C[j, k - 1]) / c3
            C[j, 0] = c4 * C[j, 0] / c3
        c1 = c2
    return C[:, deriv]


def central_stencil(deriv: int, order: int) -> tuple:
    """Smallest symmetric stencil of the requested truncation order.

    Returns (offsets, weights); weights are for unit spacing (divide by
    h^deriv).  A stencil exact for monomials through degree D has
    truncation order D - deriv + 1; exactness is verified directly.
    """
    half = (deriv + 1) // 2
    while True:
        offsets = np.arange(-half, half + 1)
        w = fd_weights(deriv, offsets)
        achieved = _exact_degree_surplus(offsets, w, deriv) + 1
        if achieved >= order:
            return offsets, w
        half += 1
        if half > 16:
            raise ValueError(f"no stencil of order {order} for derivative {deriv}")


def _exact_degree_surplus(offsets, w, deriv) -> int:
    """Largest s with monomials through degree deriv + s exactly annihilated.

    The deriv-th derivative of x^degree vanishes at 0 for degree > deriv, so
    the stencil applied to those monomials must give (numerically) zero.
    """
    offsets = np.asarray(offsets, dtype=float)
    s = 0
    for degree in range(deriv + 1, deriv + 13):
        val = float(np.sum(w * offsets ** degree))
        scale = float(np.sum(np.abs(w) * np.abs(offsets) ** degree))
        if abs(val) > 1e-8 * max(1.0, scale):
            break
        s = degree - deriv
    return s


def _apply_axis(u: np.ndarray, weights: np.ndarray, offsets: np.ndarray,
                h: float, deriv: int, axis: int, margin: tuple) -> np.ndarray:
    """Apply a 1-D stencil along an axis, restricted to the interior block."""
    sl_lo = [slice(m, u.shape[d] - m if m else None) for d, m in enumerate(margin)]
    out = None
    for off, w in zip(offsets, weights):
        sl = list(sl_lo)
        m = margin[axis]
        sl[axis] = slice(m + off, u.shape[axis] - m + off if m - off else None)
        term = w * u[tuple(sl)]
        out = term if out is None else out + term
    return out / h ** deriv


def kpi_residual(wave: WaveData, shape=(41, 41, 5), center=(0.0, 0.0, 0.0),
                 step=None, order: int = 6, eps: float = 1e-12) -> ResidualReport:
    """Normalized residual of the 2+1-dimensional evolution equation.

    Evaluates u = field on a uniform (x, z, t) grid whose interior has the
    requested shape, applies centered stencils of the given order, and
    reports max |3 u_zz - 4 u_xt - u_xxxx - 6 ((u_x)^2 + u u_xx)| over the
    interior divided by the largest of the four term magnitudes.  The
    nonlinear term is expanded as (u_x)^2 + u u_xx to keep the stencil
    narrow.  ``step`` is the physical spacing, either one number for every
    axis (default 1e-2 / largest argument frequency) or an (x, z, t)
    triple; per-axis steps matter when the frequencies differ strongly
    between coordinates.
    """
    if order not in (2, 4, 6):
        raise ValidationError(f"stencil order must be 2, 4 or 6, got {order}")
    nx, nz, nt = (int(v) for v in shape)
    if min(nx, nz, nt) < 1:
        raise GridTooSmall(f"interior shape {shape} is empty")
    off1, w1 = central_stencil(1, order)
    off2, w2 = central_stencil(2, order)
    off4, w4 = central_stencil(4, order)
    mx = int(max(off1.max(), off2.max(), off4.max()))
    mz = int(off2.max())
    mt = int(off1.max())
    if step is None:
        numax = float(np.max(np.abs(wave.frequencies)))
        step = 1e-2 / numax
    steps = np.broadcast_to(np.asarray(step, dtype=float), (3,))
    hx, hz, ht = (float(v) for v in steps)

    xs = center[0] + hx * (np.arange(nx + 2 * mx) - (nx + 2 * mx - 1) / 2.0)
    zs = center[1] + hz * (np.arange(nz + 2 * mz) - (nz + 2 * mz - 1) / 2.0)
    ts = center[2] + ht * (np.arange(nt + 2 * mt) - (nt + 2 * mt - 1) / 2.0)
    X, Z, T = np.meshgrid(xs, zs, ts, indexing="ij")
    u = eval_field_array("kpi_u", wave, X, Z, T, eps)

    margin = (mx, mz, mt)
    u_zz = _apply_axis(u, w2, off2, hz, 2, 1, margin)
    u_xxxx = _apply_axis(u, w4, off4, hx, 4, 0, margin)
    u_x = _apply_axis(u, w1, off1, hx, 1, 0, margin)
    u_xx = _apply_axis(u, w2, off2, hx, 2, 0, margin)
    # mixed derivative: first in t, then in x (tensor product of 1-D stencils)
    u_t_full = None
    for off, w in zip(off1, w1):
        sl = [slice(None)] * 3
        sl[2] = slice(mt + off, u.shape[2] - mt + off if mt - off else None)
        term = w * u[tuple(sl)]
        u_t_full = term if u_t_full is None else u_t_full + term
    u_t_full /= ht
    u_xt = None
    for off, w in zip(off1, w1):
        sl = [slice(mx + off, u.shape[0] - mx + off if mx - off else None),
              slice(mz, u.shape[1] - mz if mz else None), slice(None)]
        term = w * u_t_full[tuple(sl)]
        u_xt = term if u_xt is None else u_xt + term
    u_xt /= hx

    term_zz = 3.0 * u_zz
    term_xt = 4.0 * u_xt
    term_x4 = u_xxxx
    term_nl = 6.0 * (u_x * u_x
                     + u[mx:-mx or None, mz:-mz or None, mt:-mt or None] * u_xx)
    residual = term_zz - term_xt - term_x4 - term_nl
    max_abs = float(np.max(np.abs(residual)))
    normalizer = float(max(np.max(np.abs(term_zz)), np.max(np.abs(term_xt)),
                           np.max(np.abs(term_x4)), np.max(np.abs(term_nl))))
    normalized = max_abs / normalizer if normalizer > 0.0 else 0.0
    return ResidualReport(max_abs_residual=max_abs, normalizer=normalizer,
                          normalized_residual=normalized, fd_order=order,
                          step=float(np.max(steps)))


def kpi_residual_tuned(wave: WaveData, shape=(41, 41, 5), order: int = 6,
                       scales=(1e-2, 2e-2, 5e-3),
                       eps: float = 1e-12) -> ResidualReport:
    """Residual with per-axis steps tuned over a small scale scan.

    Each candidate uses steps scale / (largest frequency of that axis); the
    report with the smallest normalized residual is returned.
    """
    nu = axis_frequencies(wave)
    best = None
    for s in scales:
        rep = kpi_residual(wave, shape=shape, step=tuple(s / nu), order=order,
                           eps=eps)
        if best is None or rep.normalized_residual < best.normalized_residual:
            best = rep
    return best


def convergence_order(wave: WaveData, shape=(17, 17, 3),
                      step: float | None = None, order: int = 2,
                      eps: float = 1e-12) -> float:
    """Estimated convergence order of the residual under step halving.

    The default step per order is chosen inside the window where the
    truncation term dominates both the next-order contamination (pushes the
    estimate up) and the 1/h^4 roundoff amplification of the fourth
    derivative (drives the estimate negative).  Raises RoundoffFloor when
    both residuals sit at the roundoff-amplification floor.
    """
    numax = float(np.max(np.abs(wave.frequencies)))
    if step is None:
        step = (2e-2 if order == 2 else 4e-2) / numax
    r1 = kpi_residual(wave, shape=shape, step=step, order=order, eps=eps)
    r2 = kpi_residual(wave, shape=shape, step=step / 2.0, order=order, eps=eps)
    # roundoff amplification of the widest stencil, eps * |u| * sum|w| / h^4
    _, w4 = central_stencil(4, order)
    amp = float(np.sum(np.abs(w4)))
    u_scale = float(np.abs(eval_field_array("kpi_u", wave, 0.0, 0.0, 0.0, eps)))
    mach = np.finfo(float).eps
    floor1 = 20.0 * mach * u_scale * amp / step ** 4
    floor2 = 20.0 * mach * u_scale * amp / (step / 2.0) ** 4
    if r1.max_abs_residual < floor1 and r2.max_abs_residual < floor2:
        raise RoundoffFloor(
            f"residuals {r1.max_abs_residual:.2e}, {r2.max_abs_residual:.2e} "
            f"below the roundoff floors {floor1:.2e}, {floor2:.2e}")
    return float(np.log2(r1.max_abs_residual / r2.max_abs_residual))


def periodicity_check(wave: WaveData, edges: np.ndarray, samples: int = 50,
                      seed: int = 20240, span: float | None = None,
                      eps: float = 1e-12) -> float:
    """Max relative deviation of u under the three lattice-edge shifts.

    Sample points are uniform over a cube spanning a few lattice cells;
    deviation is |u(shifted) - u| / (1 + |u|).
    """
    edges = np.asarray(edges, dtype=float)
    rng = np.random.default_rng(seed)
    if span is None:
        span = 2.0 * float(np.max(np.abs(edges)))
    pts = rng.uniform(-span, span, size=(samples, 3))
    u0 = eval_field_array("kpi_u", wave, pts[:, 0], pts[:, 1], pts[:, 2], eps)
    worst = 0.0
    for k in range(3):
        shift = edges[:, k]
        uk = eval_field_array("kpi_u", wave, pts[:, 0] + shift[0],
                              pts[:, 1] + shift[1], pts[:, 2] + shift[2], eps)
        dev = float(np.max(np.abs(uk - u0) / (1.0 + np.abs(u0))))
        worst = max(worst, dev)
    return worst


def _moving_average(y: np.ndarray, width: int) -> np.ndarray:
    width = max(1, int(width))
    if width % 2 == 0:
        width += 1
    kernel = np.ones(width) / width
    pad = width // 2
    yp = np.pad(y, pad, mode="wrap")
    return np.convolve(yp, kernel, mode="valid")


def _envelope_component(wave: WaveData, x: np.ndarray, z: float, t: float,
                        nu_env: float, eps: float) -> complex:
    """Hann-tapered projection of the field profile onto the envelope mode."""
    u = eval_field_array("kpi_u", wave, x, z, t, eps)
    u = u - u.mean()
    taper = np.hanning(x.size)
    return complex(np.sum(u * taper * np.exp(-2j * np.pi * nu_env * x)))


def envelope_drift(wave: WaveData, t0: float, t1: float,
                   window: tuple | None = None, z: float = 0.0,
                   eps: float = 1e-12, max_substeps: int = 256) -> float:
    """Signed x-shift of the long-wave envelope between t0 and t1.

    The envelope is the slowest spatial mode of the profile, at the
    half-difference of the two x wave numbers (the theta series carry
    half-harmonics, so the spectrum lives on the half-integer combination
    lattice of k1 and k3).  The profile is band-passed around that one
    mode by a tapered projection, for which the lag maximizing the
    cross-correlation is exactly the mode's phase shift divided by its
    wave number; the displacement is accumulated over time substeps small
    enough to keep each phase step under a quarter turn, so the unwrapped
    total is unambiguous.  Positive means the envelope moved toward +x.
    """
    k1, k3 = abs(wave.k1), abs(wave.k3)
    nu_env = 0.5 * min(abs(k1 - k3), abs(k1 + k3), 2.0 * k1, 2.0 * k3)
    if nu_env == 0.0:
        raise FlatField("degenerate wave numbers leave no envelope scale")
    period = 1.0 / nu_env
    if window is None:
        window = (0.0, 6.0 * period, 4096)
    x0, x1, n = window
    if (x1 - x0) < 2.0 * period:
        raise ValidationError("window must span at least two envelope periods")
    x = np.linspace(x0, x1, int(n))

    c_prev = _envelope_component(wave, x, z, t0, nu_env, eps)
    u_scale = float(np.max(np.abs(
        eval_field_array("kpi_u", wave, x, z, t0, eps))))
    if abs(c_prev) < 1e-10 * u_scale * x.size:
        raise FlatField("profile has no envelope-band content")
    if t1 == t0:
        return 0.0

    # substep count from the envelope mode's phase velocity, so each step
    # turns the phase by well under a quarter turn
    v_env = abs(wave.kappa1 - wave.kappa3) / max(abs(k1 - k3), 1e-30)
    dt_max = 0.2 * period / max(v_env, 1e-30)
    n_sub = max(1, min(max_substeps, int(np.ceil(abs(t1 - t0) / dt_max))))
    total_phase = 0.0
    for i in range(1, n_sub + 1):
        t = t0 + (t1 - t0) * i / n_sub
        c_next = _envelope_component(wave, x, z, t, nu_env, eps)
        if abs(c_next) < 1e-10 * u_scale * x.size:
            raise FlatField("envelope-band content vanished while tracking")
        total_phase += float(np.angle(c_next / c_prev))
        c_prev = c_next
    # mode ~ exp(2 pi i nu (x - shift)): a shift by s turns the phase by
    # -2 pi nu s, so the displacement is the negated unwrapped phase
    return float(-total_phase / (2.0 * np.pi * nu_env))
