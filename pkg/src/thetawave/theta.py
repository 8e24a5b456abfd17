"""Theta functions: 1-D Jacobi series, brute-force g-dimensional lattice sum,
and the genus-3 reduction to products of 1-D thetas.

The Riemann theta here is

    Theta(p | B) = sum_{m in Z^g} exp{ pi i m^T B m + 2 pi i m^T p },

summed by ellipsoid truncation.  It exists as an oracle (g <= 4, hard cap on
lattice points), not as a production evaluation path.

For period matrices of the special shape

    B = [[i(b1+b3), i b1 - 1/2, i b3 - 1/2],
         [i b1 - 1/2, i(b1+b2), i b2 - 1/2],
         [i b3 - 1/2, i b2 - 1/2, i(b2+b3)]]

the quadratic form splits as  i b1 (m1+m2)^2 + i b2 (m2+m3)^2
+ i b3 (m1+m3)^2 - (m1 m2 + m2 m3 + m3 m1), and regrouping the lattice sum
by the parities of n = (m1+m2, m2+m3, m3+m1) factorizes the theta into four
products of Jacobi thetas with nomes h_j = exp(-4 pi b_j):

    Theta(p|B) = t4 t4 t4 - t4 t1 t1 - t1 t4 t1 - t1 t1 t4

evaluated at ptilde_j = p_j + p_{j+1} - p_{j+2} (indices mod 3).  The sign
pattern and nome scaling are pinned against the brute-force lattice sum in
the test suite; published variants of this factorization differ by
half-period conventions that only relabel the constant offsets downstream.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import NomeOutOfRange, NotPositiveDefinite, TruncationOverflow

#: Linear map behind ``reduce_args``; row j is e_j + e_{j+1} - e_{j+2}.
REDUCTION = np.array([[1, 1, -1], [-1, 1, 1], [1, -1, 1]], dtype=float)

#: Maximum lattice points the brute-force theta will sum.
LATTICE_CAP = 10_000_000

_MAX_GENUS = 4


def _check_nome(h: float) -> float:
    h = float(h)
    if not (0.0 <= h < 1.0) or not math.isfinite(h):
        raise NomeOutOfRange(f"nome must lie in [0, 1), got {h}")
    return h


def _series_cutoff(h: float, eps: float, half_shift: float,
                   im_max: float = 0.0) -> int:
    """Smallest M such that the series tail beyond M is below eps.

    Terms are bounded by 2 h^{(m - half_shift)^2} e^{(2m - 2*half_shift) pi y}
    with y the largest |Im p|; the Gaussian decay of the nome powers beats
    the exponential growth, so the tail is eventually dominated by a
    geometric series.
    """
    if h == 0.0:
        return 0
    ln_h = math.log(h)
    grow = math.pi * im_max
    m = 1
    while True:
        k = m + 1 - half_shift
        lead = 2.0 * math.exp(k * k * ln_h + 2.0 * k * grow)
        ratio = math.exp((2.0 * k + 1.0) * ln_h + 2.0 * grow)
        if ratio < 1.0 and lead / (1.0 - ratio) < eps:
            return m
        m += 1
        if m > 10_000:
            raise TruncationOverflow(
                f"Jacobi series needs more than {m} terms at h={h}")


def jacobi_theta(kind: int, p, h: float, eps: float = 1e-14):
    """Jacobi elliptic theta function of the given kind (1..4).

    Arguments use the unit-period convention: the series run over
    cos/sin(2 m pi p) and cos/sin((2m-1) pi p), so kinds 3 and 4 have period
    1 in ``p`` and kinds 1 and 2 have period 2.  ``p`` may be an array and
    may be complex (the series are entire).  Terms are accumulated
    smallest-first so the result is accurate to ``eps`` in absolute terms.
    """
    if kind not in (1, 2, 3, 4):
        raise ValueError(f"kind must be 1..4, got {kind}")
    h = _check_nome(h)
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    p = np.asarray(p)
    if np.iscomplexobj(p):
        im_max = float(np.max(np.abs(p.imag))) if p.size else 0.0
        p = p.astype(complex)
    else:
        im_max = 0.0
        p = p.astype(float)

    if kind in (1, 2):
        M = _series_cutoff(h, eps, 0.5, im_max)
        out = np.zeros_like(p)
        for m in range(M, 0, -1):
            w = 2.0 * h ** ((m - 0.5) ** 2)
            phase = (2 * m - 1) * np.pi * p
            if kind == 1:
                out += (w if m % 2 == 1 else -w) * np.sin(phase)
            else:
                out += w * np.cos(phase)
        return out if out.shape else complex(out) if im_max else float(out)

    M = _series_cutoff(h, eps, 0.0, im_max)
    out = np.zeros_like(p)
    for m in range(M, 0, -1):
        w = 2.0 * h ** (m * m)
        if kind == 4 and m % 2 == 1:
            w = -w
        out += w * np.cos(2 * m * np.pi * p)
    out += 1.0
    return out if out.shape else complex(out) if im_max else float(out)


def riemann_theta(p, B, eps: float = 1e-10) -> complex:
    """Brute-force g-dimensional theta by ellipsoid-truncated lattice sum.

    The sum is centered at the integer point nearest to -(Im B)^{-1} Im p,
    where the Gaussian weight peaks, and runs over the integer points with
    pi (m - c)^T Im(B) (m - c) <= log(1/eps) + margin.  Relative accuracy is
    eps against the leading-term magnitude.
    """
    p = np.asarray(p, dtype=complex).ravel()
    B = np.asarray(B, dtype=complex)
    g = p.size
    if B.shape != (g, g):
        raise ValueError(f"period matrix shape {B.shape} does not match p of size {g}")
    if g > _MAX_GENUS:
        raise TruncationOverflow(f"brute-force theta supports g <= {_MAX_GENUS}")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    Y = B.imag
    if not np.allclose(B, B.T, atol=1e-13 * max(1.0, np.abs(B).max())):
        raise ValueError("period matrix must be symmetric")
    try:
        L = np.linalg.cholesky(Y)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("Im(B) is not positive definite") from exc

    center = -np.linalg.solve(Y, p.imag)
    c0 = np.round(center).astype(int)
    bound = math.log(1.0 / eps) + 8.0

    # Axis-aligned bounding box of the ellipsoid pi v^T Y v <= bound.
    Yinv_diag = np.diag(np.linalg.inv(Y))
    half = np.sqrt(bound * np.abs(Yinv_diag) / math.pi)
    widths = np.floor(half).astype(int) + 1

    count = int(np.prod(2 * widths + 1))
    if count > LATTICE_CAP:
        raise TruncationOverflow(
            f"ellipsoid bounding box holds {count} points, cap is {LATTICE_CAP}")

    ranges = [np.arange(-w, w + 1) for w in widths]
    grids = np.meshgrid(*ranges, indexing="ij")
    v = np.stack([grd.ravel() for grd in grids], axis=1)  # offsets around c0
    q = math.pi * np.einsum("ij,jk,ik->i", v, Y, v)
    keep = q <= bound
    m = v[keep] + c0

    expo = (1j * math.pi * np.einsum("ij,jk,ik->i", m, B, m)
            + 2j * math.pi * (m @ p))
    terms = np.exp(expo)
    # smallest-magnitude-first accumulation keeps cancellation error near eps
    order = np.argsort(np.abs(terms))
    return complex(np.sum(terms[order]))


def reduce_args(p):
    """Map p to ptilde with ptilde_j = p_j + p_{j+1} - p_{j+2} (indices mod 3).

    Accepts arrays of shape (..., 3), real or complex; the map is linear,
    integer, and exact.
    """
    p = np.asarray(p)
    p = p.astype(complex) if np.iscomplexobj(p) else p.astype(float)
    return p @ REDUCTION.T


def reduced_f(ptilde, h, eps: float = 1e-12):
    """Genus-3 theta factorized into 1-D Jacobi products.

    ``ptilde`` has shape (..., 3) (already reduced arguments, real or
    complex), ``h`` is the triple of nomes.  Equals the brute-force lattice
    sum of the full theta at p with ptilde = reduce_args(p); the error is
    bounded by four times the 1-D series bound.
    """
    pt = np.asarray(ptilde)
    pt = pt.astype(complex) if np.iscomplexobj(pt) else pt.astype(float)
    h1, h2, h3 = (_check_nome(x) for x in h)
    t1 = [jacobi_theta(1, pt[..., j], hj, eps) for j, hj in enumerate((h1, h2, h3))]
    t4 = [jacobi_theta(4, pt[..., j], hj, eps) for j, hj in enumerate((h1, h2, h3))]
    return (t4[0] * t4[1] * t4[2]
            - t4[0] * t1[1] * t1[2]
            - t1[0] * t4[1] * t1[2]
            - t1[0] * t1[1] * t4[2])


def nomes_from_b(bvals, convention: str = "pi") -> np.ndarray:
    """Nomes h_j from the imaginary-part parameters b_j of the period matrix.

    ``pi`` gives h = exp(-4 pi b), the scaling under which ``reduced_f``
    reproduces the lattice sum; ``plain`` gives h = exp(-4 b) and is kept
    only as a diagnostic switch.
    """
    b = np.asarray(bvals, dtype=float)
    if convention == "pi":
        return np.exp(-4.0 * math.pi * b)
    if convention == "plain":
        return np.exp(-4.0 * b)
    raise ValueError(f"unknown nome convention {convention!r}")


def period_matrix_from_b(bvals) -> np.ndarray:
    """Assemble the special-shape 3x3 period matrix from (b1, b2, b3)."""
    b1, b2, b3 = (float(x) for x in bvals)
    return np.array([
        [1j * (b1 + b3), 1j * b1 - 0.5, 1j * b3 - 0.5],
        [1j * b1 - 0.5, 1j * (b1 + b2), 1j * b2 - 0.5],
        [1j * b3 - 0.5, 1j * b2 - 0.5, 1j * (b2 + b3)],
    ])


def half_period_alternate(delta) -> np.ndarray:
    """The one inequivalent half-period companion of a reduced offset vector.

    Half-integer shifts of the unreduced argument map, through the
    reduction, onto just two classes modulo the allowed (same-parity)
    integer shifts: the identity and the all-halves shift.  Returns
    delta + (1/2, 1/2, 1/2); no componentwise wrapping is applied, because
    reduced arguments may only be shifted by integer triples of equal
    parity without changing the theta product.
    """
    return np.asarray(delta) + 0.5


def wrap_half(x):
    """Wrap componentwise to the half-open interval [-1/2, 1/2)."""
    x = np.asarray(x, dtype=float)
    return x - np.floor(x + 0.5)


def _brute_reference(p, bvals, eps=1e-12):
    """Direct triple-sum theta for the special matrix; test helper."""
    B = period_matrix_from_b(bvals)
    N = 10
    tot = 0.0 + 0.0j
    for m in itertools.product(range(-N, N + 1), repeat=3):
        mv = np.array(m)
        tot += np.exp(1j * math.pi * (mv @ B @ mv) + 2j * math.pi * (mv @ np.asarray(p)))
    return tot
