"""Acceptance suite: quantified checks of the whole pipeline.

Each criterion returns a structured result with the measured number and
the tolerance it was tested against; the CLI prints one line per result
and the test suite asserts on them.  The reference parameter set is
a = 1/1.3, b = 1.3, phi = 0.3 pi (with alpha = 0.1 where the third flow
matters).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .curve import validate_params
from .periods import wave_data
from .solution import (
    GridSpec,
    SolutionBundle,
    build_solution,
    eval_field_array,
    grid_eval,
)
from .theta import reduce_args, reduced_f, riemann_theta
from .verify import (
    convergence_order,
    envelope_drift,
    kpi_residual_tuned,
    periodicity_check,
)

REFERENCE_PARAMS = {"a": 1.0 / 1.3, "b": 1.3, "phi": 0.3 * math.pi, "alpha": 0.1}


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: str
    tol: str
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{self.name} {status}  measured={self.measured}  tol={self.tol}"
        if self.detail:
            out += f"  ({self.detail})"
        return out


def reference_bundle(nome: str = "pi", lambda0: float = 0.0,
                     scale_override: float | None = None) -> SolutionBundle:
    params = validate_params(lambda0=lambda0, **REFERENCE_PARAMS)
    return build_solution(params, nome=nome, scale_override=scale_override)


def criterion_covering_algebra(bundle: SolutionBundle) -> CriterionResult:
    """AC-1: integer covering-matrix relations, exact."""
    S, P, Q, R = bundle.matrices.S, bundle.matrices.P, bundle.matrices.Q, bundle.matrices.R
    d1 = np.abs(S.T @ Q - Q.T @ S).max()
    d2 = np.abs(R.T @ P - P.T @ R).max()
    d3 = np.abs(S.T @ R - Q.T @ P - 2 * np.eye(3, dtype=int)).max()
    dev = int(max(d1, d2, d3))
    return CriterionResult("AC-1", dev == 0, f"max deviation {dev}", "0 (exact)",
                           "S^T Q = Q^T S, R^T P = P^T R, S^T R - Q^T P = 2I")


def criterion_period_matrix(bundle: SolutionBundle) -> CriterionResult:
    """AC-2: B symmetric, Re B = -K/2, Im B positive definite."""
    B, K = bundle.matrices.B, bundle.matrices.K
    sym = float(np.abs(B - B.T).max())
    reb = float(np.abs(B.real + K / 2.0).max())
    minors = [float(np.linalg.det(B.imag[:k, :k])) for k in (1, 2, 3)]
    ok = sym <= 1e-12 and reb <= 1e-8 and all(m > 0.0 for m in minors)
    return CriterionResult(
        "AC-2", ok,
        f"asym {sym:.2e}, ReB+K/2 {reb:.2e}, minors {min(minors):.3f}..",
        "1e-12 / 1e-8 / minors > 0")


def criterion_theta_reduction(bundle: SolutionBundle, n: int = 100,
                              seed: int = 424242) -> CriterionResult:
    """AC-3: reduced f equals the brute-force lattice sum, 1e-9 relative."""
    rng = np.random.default_rng(seed)
    B = bundle.matrices.B
    h = bundle.constants.h
    worst = 0.0
    for _ in range(n):
        p = rng.uniform(0.0, 1.0, 3)
        th = riemann_theta(p, B, eps=1e-12)
        fr = reduced_f(reduce_args(p), h, eps=1e-14)
        worst = max(worst, abs(fr - th) / abs(th))
    ok = worst <= 1e-9
    return CriterionResult(
        "AC-3", ok, f"max rel err {worst:.2e} over {n} points", "1e-9",
        f"nome convention {bundle.constants.nome_convention!r}")


def criterion_kpi_residual(bundle0: SolutionBundle,
                           bundle_shifted: SolutionBundle) -> CriterionResult:
    """AC-4: residual, convergence orders, scale-fit constancy, A > 0."""
    measured = []
    ok = True
    for tag, bundle in (("l0=0", bundle0), ("l0=k2/(4k1)", bundle_shifted)):
        rep = kpi_residual_tuned(bundle.wave, shape=(41, 41, 5), order=6)
        measured.append(f"{tag}: residual {rep.normalized_residual:.2e}")
        ok &= rep.normalized_residual <= 5e-5
    for order, lo, hi in ((2, 1.5, 2.5), (4, 3.5, 4.5)):
        est = convergence_order(bundle0.wave, order=order)
        measured.append(f"order{order} est {est:.2f}")
        ok &= lo <= est <= hi
    cov = bundle0.diagnostics["scale_cov"]
    measured.append(f"scale cov {cov:.2e}")
    ok &= cov <= 1e-3
    ok &= bundle0.wave.A > 0.0
    measured.append(f"A {bundle0.wave.A:.6f}")
    return CriterionResult(
        "AC-4", bool(ok), "; ".join(measured),
        "residual 5e-5, orders +-0.5, cov 1e-3, A > 0")


def criterion_lattice_periodicity(bundle: SolutionBundle,
                                  samples: int = 50) -> CriterionResult:
    """AC-5: exact recurrence under the three space-time lattice edges."""
    dev = periodicity_check(bundle.wave, bundle.edges, samples=samples)
    return CriterionResult("AC-5", dev <= 1e-9, f"max rel deviation {dev:.2e}",
                           "1e-9", f"{samples} sample points, 3 edges")


def criterion_special_periodicity(strict_spec_periods: bool = False,
                                  seed: int = 7) -> CriterionResult:
    """AC-6: z-periodicity at lambda0 = 0; z- and t-periodicity at the
    angle where the third frequency cancels.

    The amplitude's exact periods are 2/|k2| in z and 2/|kappa1| in t: the
    reduced theta arguments may only be shifted by integer triples of equal
    parity, so a unit shift of a single argument (period 1/|k2|) is not a
    symmetry.  With ``strict_spec_periods`` the single-argument periods are
    tested literally and this criterion fails; the default tests the
    doubled periods, which carry the substance of the periodicity claims.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-3.0, 3.0, size=(40, 3))
    mult = 1.0 if strict_spec_periods else 2.0
    measured = []
    ok = True

    bundle = reference_bundle()
    wave = bundle.wave
    u0 = eval_field_array("kpi_u", wave, pts[:, 0], pts[:, 1], pts[:, 2])
    uz = eval_field_array("kpi_u", wave, pts[:, 0],
                          pts[:, 1] + mult / abs(wave.k2), pts[:, 2])
    dev_z = float(np.max(np.abs(uz - u0) / (1.0 + np.abs(u0))))
    measured.append(f"z-period dev {dev_z:.2e}")
    ok &= dev_z <= 1e-9

    a, b = REFERENCE_PARAMS["a"], REFERENCE_PARAMS["b"]
    phi_star = 0.5 * math.acos(-a * b / (a * a + b * b))
    params = validate_params(a, b, phi_star)
    bundle2 = build_solution(params)
    w2 = bundle2.wave
    ratio = abs(w2.kappa3) / abs(w2.kappa1)
    measured.append(f"kappa3/kappa1 {ratio:.2e}")
    ok &= ratio <= 1e-12
    u0 = eval_field_array("kpi_u", w2, pts[:, 0], pts[:, 1], pts[:, 2])
    ut = eval_field_array("kpi_u", w2, pts[:, 0], pts[:, 1],
                          pts[:, 2] + mult / abs(w2.kappa1))
    dev_t = float(np.max(np.abs(ut - u0) / (1.0 + np.abs(u0))))
    measured.append(f"t-period dev {dev_t:.2e}")
    ok &= dev_t <= 1e-9

    detail = ("literal single-argument periods 1/|k2|, 1/|kappa1|"
              if strict_spec_periods else
              "periods 2/|k2| and 2/|kappa1| (equal-parity shift rule)")
    return CriterionResult("AC-6", bool(ok), "; ".join(measured), "1e-9 / 1e-12",
                           detail)


def detect_peaks(values: np.ndarray, x: np.ndarray, y: np.ndarray,
                 rel_threshold: float = 0.97) -> list:
    """Sub-pixel local maxima above rel_threshold * global max."""
    thresh = rel_threshold * values.max()
    peaks = []
    for i in range(1, values.shape[0] - 1):
        for j in range(1, values.shape[1] - 1):
            v = values[i, j]
            if v > thresh and v == values[i - 1:i + 2, j - 1:j + 2].max():
                px, py = x[j], y[i]
                cm, c0, cp = values[i, j - 1], v, values[i, j + 1]
                d = cm - 2.0 * c0 + cp
                if d != 0.0:
                    px += 0.5 * (cm - cp) / d * (x[1] - x[0])
                cm, c0, cp = values[i - 1, j], v, values[i + 1, j]
                d = cm - 2.0 * c0 + cp
                if d != 0.0:
                    py += 0.5 * (cm - cp) / d * (y[1] - y[0])
                peaks.append((float(px), float(py), float(v)))
    peaks.sort(key=lambda p: -p[2])
    return peaks


def peak_lattice_deviation(bundle: SolutionBundle, grid: GridSpec) -> tuple:
    """Largest distance of the strongest peaks from the in-plane lattice.

    The fixed-t plane carries one exact generator (the z shift from the
    edge columns whose t components cancel) and one near-exact generator,
    the lattice node with the smallest t component among those with a
    nontrivial x component.  Peaks come in a point-symmetric pair of
    cosets, so distances are taken against both the anchor and its mirror.
    Returns (max deviation, generator length).
    """
    edges = bundle.edges
    fg = grid_eval("kpi_u", grid, bundle.wave)
    peaks = detect_peaks(fg.values, fg.x, fg.y)
    if not peaks:
        raise ValueError("no peaks detected on the grid")
    anchor = np.array(peaks[0][:2])
    gz = (edges[:, 1] + edges[:, 2])[:2]
    best = None
    for n in product(range(-12, 13), repeat=3):
        v = n[0] * edges[:, 0] + n[1] * edges[:, 1] + n[2] * edges[:, 2]
        if abs(v[0]) > 1.0 and (best is None or abs(v[2]) < best[0]):
            best = (abs(v[2]), v)
    gx = best[1][:2]
    worst = 0.0
    for px, py, _ in peaks:
        dbest = math.inf
        for sgn in (1.0, -1.0):
            rel = np.array([px, py]) - sgn * anchor
            for nx in range(-4, 5):
                for nz in range(-8, 9):
                    node = nx * gx + nz * gz
                    dbest = min(dbest, float(np.hypot(*(rel - node))))
        worst = max(worst, dbest)
    return worst, float(np.hypot(*gx))


def criterion_figure_reproduction(bundle: SolutionBundle) -> CriterionResult:
    """AC-7: positive envelope drift and peak-lattice consistency."""
    drift = envelope_drift(bundle.wave, 0.0, 0.3)
    grid = GridSpec(x_range=(-10.0, 10.0, 481), y_range=(-1.2, 1.2, 241),
                    y_name="z", fixed_t=0.0)
    dev, gscale = peak_lattice_deviation(bundle, grid)
    rel = dev / gscale
    # all four frame times must evaluate cleanly
    frames_ok = True
    for t in (0.0, 0.1, 0.2, 0.3):
        g = grid_eval("kpi_u", GridSpec((-10.0, 10.0, 81), (-1.2, 1.2, 41),
                                        "z", t), bundle.wave)
        frames_ok &= bool(np.all(g.values > 0.0))
    ok = drift > 0.0 and rel <= 0.02 and frames_ok
    return CriterionResult(
        "AC-7", bool(ok),
        f"drift {drift:+.3f}, peak dev {rel * 100:.3f}% of lattice pitch",
        "drift > 0, dev <= 2%",
        "frames t = 0, 0.1, 0.2, 0.3 positive" if frames_ok else "frame check failed")


def criterion_sensitivity(bundle: SolutionBundle) -> CriterionResult:
    """AC-8: the residual oracle discriminates corrupted pipelines.

    A 1% error in the amplitude scale, or a 0.01 shift of the offsets
    (applied to the imaginary part: real-part perturbations violate the
    parity constraint and make the field complex outright), must inflate
    the residual by at least 100x.
    """
    params = bundle.params
    base = kpi_residual_tuned(bundle.wave, shape=(21, 21, 3), order=6)
    wave_a = wave_data(params, bundle.constants, delta=bundle.wave.delta,
                       A=bundle.wave.A * 1.01, z0=bundle.wave.z0)
    r_a = kpi_residual_tuned(wave_a, shape=(21, 21, 3), order=6)
    wave_d = wave_data(params, bundle.constants,
                       delta=bundle.wave.delta + 0.01j, A=bundle.wave.A,
                       z0=bundle.wave.z0)
    r_d = kpi_residual_tuned(wave_d, shape=(21, 21, 3), order=6)
    infl_a = r_a.normalized_residual / base.normalized_residual
    infl_d = r_d.normalized_residual / base.normalized_residual
    ok = infl_a >= 100.0 and infl_d >= 100.0
    return CriterionResult(
        "AC-8", bool(ok),
        f"A-corruption x{infl_a:.0f}, offset-corruption x{infl_d:.0f}",
        ">= 100x each",
        f"base residual {base.normalized_residual:.2e}")


def positivity_scan(bundle: SolutionBundle, n: int = 200) -> float:
    """Minimum of the reduced theta over an n^3 grid of one period cube."""
    grid1 = np.linspace(0.0, 1.0, n, endpoint=False)
    lo = np.inf
    h = bundle.constants.h
    # scan slab by slab to bound memory
    g2, g3 = np.meshgrid(grid1, grid1, indexing="ij")
    for p1 in grid1:
        p = np.stack([np.full_like(g2, p1), g2, g3], axis=-1)
        vals = reduced_f(reduce_args(p), h, eps=1e-10)
        lo = min(lo, float(vals.min()))
    return lo


def run_all(nome: str = "pi", corrupt_scale: float | None = None,
            strict_spec_periods: bool = False,
            paranoid: bool = False) -> list:
    """Run AC-1 through AC-8 on the reference parameter set."""
    bundle = reference_bundle(nome=nome, scale_override=corrupt_scale)
    l0 = bundle.wave.k2 / (4.0 * bundle.wave.k1)
    bundle_shifted = reference_bundle(nome=nome, lambda0=l0,
                                      scale_override=corrupt_scale)
    results = [
        criterion_covering_algebra(bundle),
        criterion_period_matrix(bundle),
        criterion_theta_reduction(bundle),
        criterion_kpi_residual(bundle, bundle_shifted),
        criterion_lattice_periodicity(bundle),
        criterion_special_periodicity(strict_spec_periods=strict_spec_periods),
        criterion_figure_reproduction(bundle),
        criterion_sensitivity(bundle),
    ]
    if paranoid:
        lo = positivity_scan(bundle)
        results.append(CriterionResult(
            "theta-positivity", lo > 0.0,
            f"min f over 200^3 period cube {lo:.6f}", "> 0",
            "denominator bounded away from zero on the real section"))
    return results
