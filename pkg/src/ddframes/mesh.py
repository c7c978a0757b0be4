"""
Semi-regular mesh, canonical index windows and windowed bi-infinite operators.

Every bi-infinite object in this package is stored as a regular rule that
applies away from the junction at 0 plus a finite dense central block with
integer offsets. All operations take explicit finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ToleranceSet:
    """Numerical tolerances used by the construction and its verification.

    Attributes
    ----------
    verify : float
        Default residual tolerance for identities checked by the verifier.
    psd_clip : float
        Relative eigenvalue tolerance (times the spectral norm) used when
        factorizing positive semi-definite residual blocks.
    gram_residual : float
        Maximal residual of the Gramian fixed-point equation.
    parseval_limit : float
        Relative error allowed for the finest-level energy in the Parseval check.
    spectral : float
        Radius around 1 used to count eigenvalues equal to 1.
    projector : float
        Allowed deviation of the recovery matrix from a symmetric projector.
    """

    verify: float = 1e-10
    psd_clip: float = 1e-9
    gram_residual: float = 1e-11
    parseval_limit: float = 1e-2
    spectral: float = 1e-8
    projector: float = 1e-12

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not value > 0:
                raise ValueError(f"tolerance {name!r} must be strictly positive, got {value}")


@dataclass(frozen=True)
class MeshConfig:
    """Order ``n`` of the 2n-point scheme and the two mesh steps."""

    n: int
    h_left: float = 1.0
    h_right: float = 1.0
    tol: ToleranceSet = field(default_factory=ToleranceSet)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"order n must be an integer >= 1, got {self.n}")
        if not (self.h_left > 0 and self.h_right > 0):
            raise ValueError(
                f"mesh steps must be positive, got h_left={self.h_left}, h_right={self.h_right}"
            )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "h_left", float(self.h_left))
        object.__setattr__(self, "h_right", float(self.h_right))

    @property
    def is_regular(self) -> bool:
        return self.h_left == self.h_right


@dataclass(frozen=True)
class IndexWindow:
    """Inclusive range ``lo..hi`` of bi-infinite indices."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, k) -> bool:
        return self.lo <= k <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def pad(self, width: int) -> "IndexWindow":
        return IndexWindow(self.lo - width, self.hi + width)

    def position(self, k):
        """Array position(s) of index ``k`` inside the window."""
        return np.asarray(k) - self.lo

    def union(self, other: "IndexWindow") -> "IndexWindow":
        return IndexWindow(min(self.lo, other.lo), max(self.hi, other.hi))


def mesh_point(cfg: MeshConfig, k):
    """Knot ``t(k)``: ``k * h_left`` for negative ``k`` and ``k * h_right`` otherwise.

    Accepts scalars or integer arrays.
    """
    k = np.asarray(k)
    t = np.where(k < 0, k * cfg.h_left, k * cfg.h_right).astype(float)
    return float(t) if t.ndim == 0 else t


def irregular_index_set(n: int) -> IndexWindow:
    """Columns ``2-2n .. 2n-2`` where the operator may differ from the regular mask."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return IndexWindow(2 - 2 * n, 2 * n - 2)


def central_window(n: int) -> IndexWindow:
    """Rows ``5-6n .. 6n-5`` reached by the irregular columns (length ``12n-9``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return IndexWindow(5 - 6 * n, 6 * n - 5)


def section_window(n: int) -> IndexWindow:
    """Indices ``1-2n .. 2n-1`` of the finite section carrying the nonzero spectrum."""
    return IndexWindow(1 - 2 * n, 2 * n - 1)


class BandedOperator:
    """Bi-infinite 2-slanted operator with finitely many irregular columns.

    Column ``k`` outside the irregular columns holds ``regular_mask`` at rows
    ``2k + offset``. Irregular columns are stored densely over the central
    window rows.

    Parameters
    ----------
    n : int
        Order of the scheme; fixes the irregular and central windows.
    regular_mask : ndarray
        Mask coefficients, the first one sitting at relative row ``mask_offset``.
    mask_offset : int
    irregular_cols : ndarray, shape (12n-9, 4n-3)
    """

    def __init__(self, n: int, regular_mask, mask_offset: int, irregular_cols):
        self.n = n
        self.regular_mask = np.array(regular_mask, dtype=float)
        self.mask_offset = int(mask_offset)
        self.irr = irregular_index_set(n)
        self.rows = central_window(n)
        block = np.array(irregular_cols, dtype=float)
        if block.shape != (len(self.rows), len(self.irr)):
            raise ValueError(f"irregular block has shape {block.shape}")
        self.irregular_cols = block
        self.regular_mask.setflags(write=False)
        self.irregular_cols.setflags(write=False)

    def column_support(self, k: int) -> IndexWindow:
        return IndexWindow(2 * k - 2 * self.n + 1, 2 * k + 2 * self.n - 1)

    def entry(self, m: int, k: int) -> float:
        if k in self.irr:
            if m not in self.rows:
                return 0.0
            return float(self.irregular_cols[m - self.rows.lo, k - self.irr.lo])
        j = m - 2 * k - self.mask_offset
        if 0 <= j < len(self.regular_mask):
            return float(self.regular_mask[j])
        return 0.0

    def apply(self, x, lo: int):
        """Apply the operator to a vector supported on columns ``lo .. lo+len(x)-1``.

        Returns ``(y, y_lo)`` with ``y`` covering every row the columns reach.
        """
        x = np.asarray(x, dtype=float)
        hi = lo + len(x) - 1
        y_lo = 2 * lo + self.mask_offset
        y = np.zeros(2 * len(x) - 1 + len(self.regular_mask) - 1)
        xr = x.copy()
        a, b = max(lo, self.irr.lo), min(hi, self.irr.hi)
        if a <= b:
            xr[a - lo:b - lo + 1] = 0.0
        up = np.zeros(2 * len(x) - 1)
        up[::2] = xr
        y += np.convolve(up, self.regular_mask)
        if a <= b:
            contrib = self.irregular_cols[:, a - self.irr.lo:b - self.irr.lo + 1] @ x[a - lo:b - lo + 1]
            # block rows outside y's range are zero by the column-support rule
            r_lo = max(self.rows.lo, y_lo)
            r_hi = min(self.rows.hi, y_lo + len(y) - 1)
            y[r_lo - y_lo:r_hi - y_lo + 1] += contrib[r_lo - self.rows.lo:r_hi - self.rows.lo + 1]
        return y, y_lo

    def apply_transpose(self, y, lo: int):
        """Apply the transpose to a vector supported on rows ``lo .. lo+len(y)-1``.

        Returns ``(x, x_lo)`` over every column whose support meets the rows.
        """
        y = np.asarray(y, dtype=float)
        hi = lo + len(y) - 1
        L = len(self.regular_mask)
        # column k touches rows 2k+off .. 2k+off+L-1
        x_lo = -((-(lo - self.mask_offset - L + 1)) // 2)
        x_hi = (hi - self.mask_offset) // 2
        pad_lo = 2 * x_lo + self.mask_offset
        pad_hi = 2 * x_hi + self.mask_offset + L - 1
        ypad = np.zeros(pad_hi - pad_lo + 1)
        ypad[lo - pad_lo:lo - pad_lo + len(y)] = y
        corr = np.correlate(ypad, self.regular_mask, mode="valid")
        x = corr[::2].copy()
        for k in range(max(x_lo, self.irr.lo), min(x_hi, self.irr.hi) + 1):
            col = self.irregular_cols[:, k - self.irr.lo]
            r_lo, r_hi = max(lo, self.rows.lo), min(hi, self.rows.hi)
            x[k - x_lo] = 0.0
            if r_lo <= r_hi:
                x[k - x_lo] = col[r_lo - self.rows.lo:r_hi - self.rows.lo + 1] @ y[r_lo - lo:r_hi - lo + 1]
        return x, x_lo


def to_dense(op: BandedOperator, rows: IndexWindow, cols: IndexWindow) -> np.ndarray:
    """Materialize ``P(m, k)`` for ``m`` in ``rows`` and ``k`` in ``cols``."""
    out = np.zeros((len(rows), len(cols)))
    L = len(op.regular_mask)
    for jc, k in enumerate(cols):
        if k in op.irr:
            a, b = max(rows.lo, op.rows.lo), min(rows.hi, op.rows.hi)
            if a <= b:
                out[a - rows.lo:b - rows.lo + 1, jc] = op.irregular_cols[a - op.rows.lo:b - op.rows.lo + 1, k - op.irr.lo]
            continue
        start = 2 * k + op.mask_offset
        a, b = max(rows.lo, start), min(rows.hi, start + L - 1)
        if a <= b:
            out[a - rows.lo:b - rows.lo + 1, jc] = op.regular_mask[a - start:b - start + 1]
    return out
