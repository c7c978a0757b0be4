"""Semi-regular Dubuc-Deslauriers 2n-point subdivision.

The odd-row weights come from degree ``2n-1`` Lagrange interpolation of the
``2n`` nearest knots, evaluated at the new knot; even rows copy the old value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import (
    BandedOperator,
    IndexWindow,
    MeshConfig,
    central_window,
    irregular_index_set,
    mesh_point,
    section_window,
    to_dense,
)


class SubdivisionError(ValueError):
    pass


def midpoint_weights(nodes, x_star):
    """Lagrange basis values ``L_j(x_star)`` for the given distinct nodes.

    Uses the barycentric form, which is exact for the same polynomial space
    as the Vandermonde solve and stays well conditioned for 2n <= 16 nodes.

    >>> midpoint_weights([-1, 0, 1, 2], 0.5) * 16
    array([-1.,  9.,  9., -1.])
    """
    x = np.asarray(nodes, dtype=float)
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    if np.any(diff == 0.0):
        raise SubdivisionError("degenerate interpolation nodes")
    bary = 1.0 / np.prod(diff, axis=1)
    d = x_star - x
    hit = np.flatnonzero(d == 0.0)
    if hit.size:
        w = np.zeros(len(x))
        w[hit[0]] = 1.0
        return w
    terms = bary / d
    return terms / terms.sum()


def dd_mask_coeffs(n: int) -> np.ndarray:
    """Regular 2n-point mask on offsets ``1-2n .. 2n-1``."""
    p = np.zeros(4 * n - 1)
    for j in range(-n, n):
        nodes = np.arange(j - n + 1, j + n + 1)
        w = midpoint_weights(nodes, j + 0.5)
        p[2 * j + 1 + 2 * n - 1] = w[-(j - n + 1)]
    p[2 * n - 1] = 1.0
    return p


def build_subdivision_operator(cfg: MeshConfig) -> BandedOperator:
    """Subdivision operator of the 2n-point scheme on the mesh of ``cfg``."""
    n = cfg.n
    irr = irregular_index_set(n)
    rows = central_window(n)
    block = np.zeros((len(rows), len(irr)))
    for k in irr:
        block[2 * k - rows.lo, k - irr.lo] = 1.0
    # odd rows 2j+1 inside the central window
    for j in range((rows.lo - 1) // 2, (rows.hi - 1) // 2 + 1):
        cols = np.arange(j - n + 1, j + n + 1)
        if cols[-1] < irr.lo or cols[0] > irr.hi:
            continue
        w = midpoint_weights(mesh_point(cfg, cols), mesh_point(cfg, 2 * j + 1) / 2.0)
        for c, wc in zip(cols, w):
            if c in irr:
                block[2 * j + 1 - rows.lo, c - irr.lo] = wc
    return BandedOperator(n, dd_mask_coeffs(n), 1 - 2 * n, block)


def finite_section(op: BandedOperator) -> np.ndarray:
    """Square block ``P(m, k)`` for ``m, k`` in ``1-2n .. 2n-1``."""
    w = section_window(op.n)
    return to_dense(op, w, w)


@dataclass(frozen=True)
class ConvergenceReport:
    eigenvalues: np.ndarray
    one_is_simple: bool
    spectral_ok: bool
    cascade_diff: tuple
    cascade_decreasing: bool

    def lines(self):
        yield "eigenvalues of the finite section (by modulus):"
        for lam in self.eigenvalues:
            if abs(lam.imag) < 1e-14:
                yield f"  {lam.real: .15g}"
            else:
                yield f"  {lam.real: .15g} {lam.imag:+.15g}i"
        yield f"eigenvalue 1 simple: {self.one_is_simple}"
        yield f"spectral condition: {'ok' if self.spectral_ok else 'FAILED'}"
        yield "level  max|f_j(0)-f_j(+-1)|"
        for j, d in enumerate(self.cascade_diff, start=1):
            yield f"{j:5d}  {d:.6e}"
        yield f"cascade differences decreasing: {self.cascade_decreasing}"


def cascade_differences(section, levels=12, center=None):
    """Per-level maximum of ``|f_j(0) - f_j(+-1)|`` over unit starts, computed on the section."""
    N = section.shape[0]
    c = N // 2 if center is None else center
    nbrs = [i for i in (c - 1, c + 1) if 0 <= i < N]
    out = []
    M = np.eye(N)
    for _ in range(levels):
        M = section @ M
        if not nbrs:
            out.append(0.0)
            continue
        out.append(float(max(np.max(np.abs(M[c] - M[i])) for i in nbrs)))
    return tuple(out)


def spectral_check(section, tol=1e-8, levels=12, margin=None) -> ConvergenceReport:
    """Spectrum of a finite section: is 1 simple and everything else inside the unit disk."""
    section = np.asarray(section, dtype=float)
    if section.ndim != 2 or section.shape[0] != section.shape[1]:
        raise ValueError("spectral_check needs a square matrix")
    margin = tol if margin is None else margin
    try:
        lam = np.linalg.eigvals(section)
    except np.linalg.LinAlgError as exc:
        raise SubdivisionError("spectrum not computed") from exc
    lam = lam[np.lexsort((lam.imag, -np.abs(lam)))]
    at_one = np.abs(lam - 1.0) <= tol
    simple = int(at_one.sum()) == 1
    rest_ok = bool(np.all(np.abs(lam[~at_one]) < 1.0 - margin))
    diffs = cascade_differences(section, levels)
    decreasing = all(b <= a * (1 + 1e-12) for a, b in zip(diffs, diffs[1:]))
    return ConvergenceReport(lam, simple, simple and rest_ok, diffs, decreasing)


@dataclass(frozen=True)
class SampledFunction:
    """Values at the points ``2**-level * t(m)`` for ``m`` in ``window``."""

    level: int
    window: IndexWindow
    values: np.ndarray

    def points(self, cfg: MeshConfig) -> np.ndarray:
        return mesh_point(cfg, self.window.indices) / 2.0 ** self.level

    def at(self, m: int) -> float:
        return float(self.values[m - self.window.lo]) if m in self.window else 0.0


def cascade_sample(op: BandedOperator, coeffs, lo: int, level: int) -> SampledFunction:
    """``P**level`` applied to coefficients supported on ``lo .. lo+len(coeffs)-1``."""
    if level < 0:
        raise ValueError("level must be >= 0")
    y, y_lo = np.asarray(coeffs, dtype=float), lo
    for _ in range(level):
        y, y_lo = op.apply(y, y_lo)
    return SampledFunction(level, IndexWindow(y_lo, y_lo + len(y) - 1), y)


def unit_vector_sample(op: BandedOperator, k: int, level: int) -> SampledFunction:
    """Samples of the basic limit function for column ``k``."""
    return cascade_sample(op, [1.0], k, level)
