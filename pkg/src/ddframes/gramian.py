"""
Inner products of basic limit functions, their integrals and the moment vectors.

The regular Gramian sequence comes from the transfer-operator eigenproblem;
the central block around the junction solves the finite restriction of the
two-scale fixed point ``G = 1/2 P^T G P`` with the regular entries pinned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .filters import Filter
from .mesh import BandedOperator, IndexWindow, MeshConfig, central_window, irregular_index_set, mesh_point, to_dense
from .numerics import NumericsError, solve_linear


class GramianError(ValueError):
    pass


class InadmissibleMesh(GramianError):
    """Raised when some basic limit function has non-positive integral."""


def regular_gram(p: Filter, rank_tol=1e-10) -> np.ndarray:
    """Unit-step inner products ``g(tau) = int phi_0(x) phi_0(x - tau) dx``.

    Returns ``g`` over ``tau = 2-4n .. 4n-2`` (the end values are zero).
    """
    n = (len(p) + 1) // 4
    N = 4 * n - 2
    taus = np.arange(-N, N + 1)
    pc, off = p.array, p.offset
    # T(m, l) = 1/2 sum_i p(i) p(l - 2m + i)
    T = np.zeros((len(taus), len(taus)))
    for a, m in enumerate(taus):
        for i, pi in enumerate(pc):
            for j, pj in enumerate(pc):
                l = 2 * m + (j + off) - (i + off)
                if -N <= l <= N:
                    T[a, l + N] += 0.5 * pi * pj
    null = scipy.linalg.null_space(T - np.eye(len(taus)), rcond=rank_tol)
    if null.shape[1] != 1:
        raise GramianError("Gramian eigenproblem degenerate")
    g = null[:, 0] / null[:, 0].sum()
    g = 0.5 * (g + g[::-1])
    g[0] = g[-1] = 0.0
    return g


@dataclass
class GramianWindow:
    """Gramian over the central window with regular tails.

    ``central`` covers ``window x window``; any pair with an index outside the
    window follows the regular rule: ``h_left g`` for two left indices,
    ``h_right g`` for two right indices and 0 across the junction. With
    ``normalized`` the entries are those of the scaled functions and ``d_diag``
    holds the integrals used for scaling.
    """

    n: int
    window: IndexWindow
    central: np.ndarray
    g: np.ndarray
    h_left: float
    h_right: float
    normalized: bool = False
    d_left: float = 1.0
    d_right: float = 1.0
    d_central: np.ndarray | None = None

    @property
    def band(self) -> int:
        return 4 * self.n - 3

    def d(self, ks):
        """Integrals of the basic limit functions at indices ``ks``."""
        ks = np.asarray(ks)
        if self.d_central is None:
            raise GramianError("integrals not available")
        out = np.where(ks < 0, self.d_left, self.d_right).astype(float)
        inside = (ks >= self.window.lo) & (ks <= self.window.hi)
        out[inside] = self.d_central[ks[inside] - self.window.lo]
        return out

    def _tail(self, k, m):
        N = 4 * self.n - 2
        tau = m - k
        if abs(tau) > N:
            return 0.0
        if k < 0 and m < 0:
            v = self.h_left * self.g[tau + N]
            return v / self.d_left if self.normalized else v
        if k > 0 and m > 0:
            v = self.h_right * self.g[tau + N]
            return v / self.d_right if self.normalized else v
        return 0.0

    def block(self, rows: IndexWindow, cols: IndexWindow) -> np.ndarray:
        out = np.zeros((len(rows), len(cols)))
        W = self.window
        for a, k in enumerate(rows):
            for b, m in enumerate(cols):
                if k in W and m in W:
                    out[a, b] = self.central[k - W.lo, m - W.lo]
                else:
                    out[a, b] = self._tail(k, m)
        return out

    def row_sums(self, ks) -> np.ndarray:
        """``sum_m G(k, m)`` for each ``k``."""
        ks = list(ks)
        B = self.band
        return np.array([self.block(IndexWindow(k, k), IndexWindow(k - B, k + B)).sum() for k in ks])

    def apply(self, x, lo, rows: IndexWindow) -> np.ndarray:
        """``(G x)`` on ``rows`` for ``x`` supported on ``lo .. lo+len(x)-1``."""
        cols = IndexWindow(lo, lo + len(x) - 1)
        return self.block(rows, cols) @ np.asarray(x, dtype=float)


def _known_value(k, m, g, cfg: MeshConfig, irr: IndexWindow):
    N = 4 * cfg.n - 2
    if abs(m - k) > N:
        return 0.0
    if k < irr.lo and m < irr.lo:
        return cfg.h_left * g[m - k + N]
    if k > irr.hi and m > irr.hi:
        return cfg.h_right * g[m - k + N]
    return 0.0


def semiregular_gram(op: BandedOperator, g: np.ndarray, cfg: MeshConfig) -> GramianWindow:
    """Raw Gramian of the basic limit functions on the semi-regular mesh.

    Unknowns are the pairs with an index in the irregular columns whose
    supports overlap; they solve the restriction of ``G = 1/2 P^T G P``.
    """
    n = cfg.n
    irr = irregular_index_set(n)
    C = central_window(n)
    E = IndexWindow(2 * C.lo - 2 * n + 1, 2 * C.hi + 2 * n - 1)
    band = 4 * n - 3
    ks, ms = [], []
    for k in C:
        for m in range(k, min(k + band, C.hi) + 1):
            if k in irr or m in irr:
                ks.append(k)
                ms.append(m)
    ks, ms = np.array(ks), np.array(ms)
    var = -np.ones((len(C), len(C)), dtype=int)
    var[ks - C.lo, ms - C.lo] = np.arange(len(ks))
    var[ms - C.lo, ks - C.lo] = np.arange(len(ks))

    G_known = np.zeros((len(E), len(E)))
    for a in E:
        for b in range(max(E.lo, a - band), min(E.hi, a + band) + 1):
            if var_index(var, C, a, b) < 0:
                G_known[a - E.lo, b - E.lo] = _known_value(a, b, g, cfg, irr)

    Pk = to_dense(op, E, C)
    rhs = 0.5 * np.einsum("ai,ab,bi->i", Pk[:, ks - C.lo], G_known, Pk[:, ms - C.lo])
    PC = Pk[C.lo - E.lo:C.hi - E.lo + 1, :]
    # coefficient of G(a, b), a, b in C, in equation (k, m)
    coef = 0.5 * np.einsum("ai,bi->iab", PC[:, ks - C.lo], PC[:, ms - C.lo])
    A = np.zeros((len(ks), len(ks)))
    flat_var = var.ravel()
    mask = flat_var >= 0
    np.add.at(A.T, flat_var[mask], coef.reshape(len(ks), -1)[:, mask].T)
    A = np.eye(len(ks)) - A
    try:
        x = solve_linear(A, rhs)
    except NumericsError as exc:
        raise GramianError("Gramian system singular") from exc

    central = G_known[C.lo - E.lo:C.hi - E.lo + 1, C.lo - E.lo:C.hi - E.lo + 1].copy()
    central[ks - C.lo, ms - C.lo] = x
    central[ms - C.lo, ks - C.lo] = x
    G = GramianWindow(n, C, central, g, cfg.h_left, cfg.h_right)
    res = gram_fixed_point_residual(G, op)
    if not res < cfg.tol.gram_residual * max(1.0, np.max(np.abs(central))):
        raise GramianError(f"Gramian fixed-point residual {res:.3e} above tolerance")
    return G


def var_index(var, C, a, b):
    if a in C and b in C:
        return var[a - C.lo, b - C.lo]
    return -1


def gram_fixed_point_residual(G: GramianWindow, op: BandedOperator) -> float:
    """``max |G - 1/2 P^T G P|`` over the central window (raw Gramian)."""
    n = G.n
    C = G.window
    E = IndexWindow(2 * C.lo - 2 * n + 1, 2 * C.hi + 2 * n - 1)
    Pk = to_dense(op, E, C)
    GE = G.block(E, E)
    return float(np.max(np.abs(G.central - 0.5 * Pk.T @ GE @ Pk)))


def gram_fixed_point_iteration(op: BandedOperator, g, cfg: MeshConfig, iterations=200) -> np.ndarray:
    """Central block by iterating ``G <- 1/2 P^T G P`` with the regular entries pinned.

    Independent of the direct solve in :func:`semiregular_gram`; the iteration
    count is fixed so the result is reproducible bit for bit.
    """
    n = cfg.n
    irr = irregular_index_set(n)
    C = central_window(n)
    E = IndexWindow(2 * C.lo - 2 * n + 1, 2 * C.hi + 2 * n - 1)
    Pk = to_dense(op, E, C)
    band = 4 * n - 3
    GE = np.zeros((len(E), len(E)))
    unknown = np.zeros((len(E), len(E)), dtype=bool)
    for a in E:
        for b in range(max(E.lo, a - band), min(E.hi, a + band) + 1):
            if a in irr or b in irr:
                unknown[a - E.lo, b - E.lo] = True
            else:
                GE[a - E.lo, b - E.lo] = _known_value(a, b, g, cfg, irr)
    sl = slice(C.lo - E.lo, C.hi - E.lo + 1)
    for _ in range(iterations):
        new = 0.5 * Pk.T @ GE @ Pk
        blk = GE[sl, sl]
        blk[unknown[sl, sl]] = new[unknown[sl, sl]]
    return GE[sl, sl].copy()


def integrals_and_normalize(G: GramianWindow):
    """Integrals ``D = diag(G 1)`` and the Gramian of the scaled functions.

    Raises
    ------
    InadmissibleMesh
        If some integral is not positive: the scaled functions do not exist.
    """
    W = G.window
    d = G.row_sums(W)
    d_left = G.h_left * G.g.sum()
    d_right = G.h_right * G.g.sum()
    bad = [int(k) for k, v in zip(W, d) if not v > 0]
    if bad:
        raise InadmissibleMesh(
            f"scaling functions undefined for this mesh ratio: non-positive integral at k={bad}"
        )
    s = 1.0 / np.sqrt(d)
    norm = GramianWindow(
        G.n, W, s[:, None] * G.central * s[None, :], G.g, G.h_left, G.h_right,
        normalized=True, d_left=d_left, d_right=d_right, d_central=d,
    )
    G.d_central, G.d_left, G.d_right = d, d_left, d_right
    return d, norm


@dataclass
class MomentTable:
    """Coefficient vectors ``c_alpha = D^(1/2) t^alpha`` and moments ``m_alpha``.

    ``c`` holds ``alpha = 0 .. 2n-1`` and ``m`` holds ``alpha = 0 .. n-1``,
    both over the central window. ``m_extra`` holds the windowed products
    ``G_Phi c_alpha`` for ``alpha = n .. 2n-1``, reported without tail claims.
    """

    n: int
    window: IndexWindow
    d_diag: np.ndarray
    c: np.ndarray
    m: np.ndarray
    m_extra: np.ndarray
    cfg: MeshConfig
    gram: GramianWindow

    def c_at(self, alpha, ks):
        ks = np.asarray(ks)
        return np.sqrt(self.gram.d(ks)) * mesh_point(self.cfg, ks) ** alpha

    def m_at(self, alpha, ks):
        """``m_alpha = G_Phi c_alpha`` at arbitrary indices (band-finite sum)."""
        ks = np.asarray(ks)
        B = 4 * self.n - 3
        lo, hi = int(ks.min()) - B, int(ks.max()) + B
        cols = np.arange(lo, hi + 1)
        out = np.empty(len(ks))
        cv = self.c_at(alpha, cols)
        for i, k in enumerate(ks):
            row = self.gram.block(IndexWindow(int(k), int(k)), IndexWindow(lo, hi))[0]
            out[i] = row @ cv
        return out

    def irregular(self, which="c", count=None):
        """Columns ``alpha = 0 .. count-1`` restricted to the irregular indices."""
        irr = irregular_index_set(self.n)
        sl = slice(irr.lo - self.window.lo, irr.hi - self.window.lo + 1)
        arr = self.c if which == "c" else self.m
        count = self.n if count is None else count
        return arr[:count, sl].T


def moment_table(G_phi: GramianWindow, cfg: MeshConfig) -> MomentTable:
    n = cfg.n
    W = G_phi.window
    B = 4 * n - 3
    ext = W.pad(B)
    ks = ext.indices
    sq = np.sqrt(G_phi.d(ks))
    t = mesh_point(cfg, ks)
    c_ext = np.array([sq * t ** a for a in range(2 * n)])
    blk = G_phi.block(W, ext)
    prod = c_ext @ blk.T
    inner = slice(B, B + len(W))
    return MomentTable(
        n=n, window=W, d_diag=G_phi.d_central.copy(), c=c_ext[:, inner].copy(),
        m=prod[:n].copy(), m_extra=prod[n:].copy(), cfg=cfg, gram=G_phi,
    )
