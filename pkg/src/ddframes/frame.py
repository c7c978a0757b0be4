"""
Semi-regular tight frame assembly.

The vanishing-moment recovery matrix ``S`` is the identity except on the
irregular columns, where it projects onto the span of the coefficient vectors
of the first ``n`` monomials. The two-scale residual ``R`` minus the regular
framelet blocks leaves a finite block ``R_irr`` whose positive semi-definite
factor gives the irregular framelet filters.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .filters import RegularFrame, regular_frame, uep_residual
from .gramian import (
    GramianWindow,
    MomentTable,
    gram_fixed_point_iteration,
    gram_fixed_point_residual,
    integrals_and_normalize,
    moment_table,
    regular_gram,
    semiregular_gram,
)
from .mesh import (
    BandedOperator,
    IndexWindow,
    MeshConfig,
    central_window,
    irregular_index_set,
    mesh_point,
    to_dense,
)
from .numerics import canonical_sign, qr_factor, sym_eig
from .subdivision import build_subdivision_operator


class FrameError(ValueError):
    pass


@dataclass
class SMatrix:
    """Identity outside the irregular indices, ``irr_block`` on them."""

    n: int
    irr_block: np.ndarray
    projector_rank: int

    def dense(self, window: IndexWindow) -> np.ndarray:
        out = np.eye(len(window))
        irr = irregular_index_set(self.n)
        a, b = max(window.lo, irr.lo), min(window.hi, irr.hi)
        if a <= b:
            out[a - window.lo:b - window.lo + 1, a - window.lo:b - window.lo + 1] = (
                self.irr_block[a - irr.lo:b - irr.lo + 1, a - irr.lo:b - irr.lo + 1]
            )
        return out

    def quadratic(self, v, lo) -> float:
        """``v^T S v`` for ``v`` supported on ``lo .. lo+len(v)-1``."""
        v = np.asarray(v, dtype=float)
        total = float(v @ v)
        irr = irregular_index_set(self.n)
        a, b = max(lo, irr.lo), min(lo + len(v) - 1, irr.hi)
        if a <= b:
            x = np.zeros(len(irr))
            x[a - irr.lo:b - irr.lo + 1] = v[a - lo:b - lo + 1]
            total += float(x @ (self.irr_block - np.eye(len(irr))) @ x)
        return total


def projector_onto(C) -> np.ndarray:
    """Orthogonal projector onto the column span of ``C`` via least squares."""
    C = np.asarray(C, dtype=float)
    X = np.linalg.lstsq(C, np.eye(C.shape[0]), rcond=None)[0]
    return C @ X


def build_S(moments: MomentTable, n_moments: int | None = None) -> SMatrix:
    """Vanishing-moment recovery matrix from the QR factorization of the coefficient block.

    ``n_moments`` selects how many leading columns of the orthogonal factor
    enter the projector (default ``n``).
    """
    cfg = moments.cfg
    n = cfg.n
    k = n if n_moments is None else int(n_moments)
    if not 1 <= k <= n:
        raise FrameError(f"n_moments must lie in 1..{n}")
    size = 4 * n - 3
    if cfg.is_regular:
        return SMatrix(n, np.eye(size), size)
    C = moments.irregular("c", k)
    O, U = qr_factor(C)
    diag = np.abs(np.diag(U[:k, :k]))
    if np.min(diag) <= 1e-12 * max(np.max(diag), 1.0):
        raise FrameError("coefficient vectors degenerate")
    Ot = O[:, :k]
    block = Ot @ Ot.T
    return SMatrix(n, 0.5 * (block + block.T), k)


def padded_window(n: int) -> IndexWindow:
    return central_window(n).pad(4 * n)


def columns_touching(rows: IndexWindow, n: int) -> IndexWindow:
    """Columns ``k`` whose rows ``2k-2n+1 .. 2k+2n-1`` meet ``rows``."""
    return IndexWindow(-((-(rows.lo - 2 * n + 1)) // 2), (rows.hi + 2 * n - 1) // 2)


def scaled_operator(op: BandedOperator, gram: GramianWindow, rows: IndexWindow, cols: IndexWindow):
    """Dense ``D^(1/2) P D^(-1/2)`` on the given windows."""
    P = to_dense(op, rows, cols)
    return np.sqrt(gram.d(rows.indices))[:, None] * P / np.sqrt(gram.d(cols.indices))[None, :]


@dataclass
class RWindow:
    window: IndexWindow
    matrix: np.ndarray


def regular_residual_pattern(n: int, rows: IndexWindow) -> np.ndarray:
    """``I - 1/2 P P^T`` for the shift-invariant operator of order ``n``."""
    op = build_subdivision_operator(MeshConfig(n))
    P = to_dense(op, rows, columns_touching(rows, n))
    return np.eye(len(rows)) - 0.5 * P @ P.T


def build_R(S: SMatrix, op: BandedOperator, moments: MomentTable, check_tol=1e-12) -> RWindow:
    """``R = S - 1/2 Ps S Ps^T`` with ``Ps = D^(1/2) P D^(-1/2)`` on the padded window."""
    n = S.n
    W = padded_window(n)
    A = columns_touching(W, n)
    Ps = scaled_operator(op, moments.gram, W, A)
    R = S.dense(W) - 0.5 * Ps @ S.dense(A) @ Ps.T
    R = 0.5 * (R + R.T)
    C = central_window(n)
    outside = ~(np.isin(W.indices, C.indices)[:, None] & np.isin(W.indices, C.indices)[None, :])
    reg = regular_residual_pattern(n, W)
    err = np.max(np.abs(R - reg)[outside])
    if err > check_tol:
        raise FrameError(f"R window too small (edge mismatch {err:.3e})")
    return RWindow(W, R)


def regular_columns(frame: RegularFrame, rows: IndexWindow, n: int):
    """Dense regular frame columns ``2**-0.5 q_j(. - 2k)`` for ``k`` outside the irregular set.

    Returns the matrix over ``rows`` and the list of ``(k, j)`` labels.
    """
    irr = irregular_index_set(n)
    cols, labels = [], []
    qs = frame.framelets
    lo = min(q.offset for q in qs)
    hi = max(q.offset + len(q) - 1 for q in qs)
    for k in range(-((-(rows.lo - hi)) // 2), (rows.hi - lo) // 2 + 1):
        if k in irr:
            continue
        for j, q in enumerate(qs, start=1):
            u = rows.indices - 2 * k
            col = np.array([q[int(x)] for x in u]) / np.sqrt(2.0)
            if np.any(col):
                cols.append(col)
                labels.append((k, j))
    M = np.array(cols).T if cols else np.zeros((len(rows), 0))
    return M, labels


def build_R_irr(R: RWindow, frame: RegularFrame, leak_tol=1e-11) -> np.ndarray:
    """``R`` minus the regular framelet blocks, restricted to the central window."""
    n = frame.n
    W = R.window
    Qr, _ = regular_columns(frame, W, n)
    rest = R.matrix - Qr @ Qr.T
    C = central_window(n)
    inside = np.isin(W.indices, C.indices)
    leak = np.max(np.abs(rest[~(inside[:, None] & inside[None, :])]))
    if leak > leak_tol:
        raise FrameError(f"R_irr support violation (leakage {leak:.3e})")
    block = rest[np.ix_(inside, inside)]
    return 0.5 * (block + block.T)


class NotPositiveSemidefinite(FrameError):
    pass


def psd_factor(R_irr, tol_psd=1e-9) -> np.ndarray:
    """Factor ``Q`` with ``Q Q^T = R_irr`` from the symmetric eigendecomposition.

    Eigenvalues within ``tol_psd * ||R_irr||`` of zero are dropped; columns are
    ordered by descending eigenvalue with sign-canonical eigenvectors.
    """
    R_irr = np.asarray(R_irr, dtype=float)
    w, V = sym_eig(R_irr)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    if norm == 0.0:
        return np.zeros((R_irr.shape[0], 0))
    if w[-1] < -tol_psd * norm:
        raise NotPositiveSemidefinite(
            f"R_irr not positive semi-definite (min eigenvalue {w[-1]:.3e}); "
            "the construction fails numerically for this instance"
        )
    keep = w > tol_psd * norm
    Q = V[:, keep] * np.sqrt(w[keep])[None, :]
    for j in range(Q.shape[1]):
        Q[:, j] *= canonical_sign(Q[:, j])
    return Q


@dataclass
class FrameOperator:
    """Regular framelet columns away from the junction plus the dense irregular block."""

    regular: RegularFrame
    q_irr: np.ndarray
    n: int

    @property
    def row_offset(self) -> int:
        return 5 - 6 * self.n

    @property
    def rank(self) -> int:
        return self.q_irr.shape[1]

    def materialize(self, rows: IndexWindow):
        """Columns touching ``rows``: regular ones labelled ``(k, j)``, irregular ``('irr', c)``."""
        Qr, labels = regular_columns(self.regular, rows, self.n)
        C = central_window(self.n)
        Qi = np.zeros((len(rows), self.rank))
        a, b = max(rows.lo, C.lo), min(rows.hi, C.hi)
        if a <= b:
            Qi[a - rows.lo:b - rows.lo + 1] = self.q_irr[a - C.lo:b - C.lo + 1]
        labels = labels + [("irr", c) for c in range(self.rank)]
        return np.hstack([Qr, Qi]), labels

    def apply_transpose(self, v, lo: int) -> np.ndarray:
        """All frame coefficients ``Q^T v`` for ``v`` supported on ``lo .. lo+len(v)-1``."""
        v = np.asarray(v, dtype=float)
        irr = irregular_index_set(self.n)
        out = []
        for q in self.regular.framelets:
            qa = q.array
            qlo, qhi = q.offset, q.offset + len(qa) - 1
            k_lo = -((-(lo - qhi)) // 2)
            k_hi = (lo + len(v) - 1 - qlo) // 2
            start = 2 * k_lo + qlo
            stop = 2 * k_hi + qhi
            pad = np.zeros(stop - start + 1)
            s = lo - start
            pad[s:s + len(v)] = v
            c = np.correlate(pad, qa, mode="valid")[::2] / np.sqrt(2.0)
            ks = np.arange(k_lo, k_hi + 1)
            out.append(c[(ks < irr.lo) | (ks > irr.hi)])
        C = central_window(self.n)
        x = np.zeros(len(C))
        a, b = max(lo, C.lo), min(lo + len(v) - 1, C.hi)
        if a <= b:
            x[a - C.lo:b - C.lo + 1] = v[a - lo:b - lo + 1]
        out.append(self.q_irr.T @ x)
        return np.concatenate(out)


def assemble_frame(frame: RegularFrame, q_irr, cfg: MeshConfig) -> FrameOperator:
    q_irr = np.asarray(q_irr, dtype=float)
    if q_irr.shape[0] != len(central_window(cfg.n)):
        raise FrameError("irregular block must cover the central window")
    return FrameOperator(frame, q_irr, cfg.n)


@dataclass
class FrameConstruction:
    """Every intermediate of the construction for one mesh instance."""

    cfg: MeshConfig
    op: BandedOperator
    regular: RegularFrame
    g: np.ndarray
    gram: GramianWindow
    gram_phi: GramianWindow
    moments: MomentTable
    S: SMatrix
    R: RWindow
    R_irr: np.ndarray
    frame: FrameOperator
    n_moments: int


def construct_frame(cfg: MeshConfig, n_moments: int | None = None, q_irr=None) -> FrameConstruction:
    """Run the whole construction; ``q_irr`` replaces the computed irregular factor."""
    n = cfg.n
    op = build_subdivision_operator(cfg)
    reg = regular_frame(n)
    g = regular_gram(reg.p)
    gram = semiregular_gram(op, g, cfg)
    _, gram_phi = integrals_and_normalize(gram)
    moments = moment_table(gram_phi, cfg)
    S = build_S(moments, n_moments)
    R = build_R(S, op, moments)
    R_irr = build_R_irr(R, reg)
    if q_irr is None:
        q_irr = psd_factor(R_irr, cfg.tol.psd_clip)
    frame = assemble_frame(reg, q_irr, cfg)
    return FrameConstruction(cfg, op, reg, g, gram, gram_phi, moments, S, R, R_irr, frame,
                             S.projector_rank if not cfg.is_regular else n)


# --- verification -----------------------------------------------------------


@dataclass(frozen=True)
class Residual:
    value: float
    tol: float
    passed: bool

    def line(self, name):
        mark = "pass" if self.passed else "FAIL"
        return f"{name:<22s} {self.value:12.3e}  (tol {self.tol:.1e})  {mark}"


@dataclass
class VerificationReport:
    residuals: "OrderedDict[str, Residual]" = field(default_factory=OrderedDict)

    def add(self, name, value, tol, passed=None):
        value = float(value)
        ok = (value <= tol) if passed is None else bool(passed)
        self.residuals[name] = Residual(value, float(tol), bool(ok and np.isfinite(value)))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals.values())

    def failures(self):
        return [k for k, r in self.residuals.items() if not r.passed]

    def lines(self):
        for name, r in self.residuals.items():
            yield r.line(name)

    def as_dict(self):
        return OrderedDict(
            (k, OrderedDict(value=r.value, tol=r.tol, passed=r.passed)) for k, r in self.residuals.items()
        )


def moment_window(fc: FrameConstruction, window: IndexWindow, count: int) -> np.ndarray:
    """``m_alpha`` for ``alpha < count`` over ``window`` (rows: alpha)."""
    B = 4 * fc.cfg.n - 3
    ext = window.pad(B)
    cols = ext.indices
    sq = np.sqrt(fc.gram_phi.d(cols))
    t = mesh_point(fc.cfg, cols)
    c = np.array([sq * t ** a for a in range(count)])
    return c @ fc.gram_phi.block(window, ext).T


def coefficient_window(fc: FrameConstruction, window: IndexWindow, count: int) -> np.ndarray:
    ks = window.indices
    sq = np.sqrt(fc.gram_phi.d(ks))
    t = mesh_point(fc.cfg, ks)
    return np.array([sq * t ** a for a in range(count)])


def _rel(x, ref):
    ref = float(np.max(np.abs(ref)))
    return float(np.max(np.abs(x))) / (ref if ref > 0 else 1.0)


def s_projector_residual(fc: FrameConstruction) -> float:
    Sb = fc.S.irr_block
    C = fc.moments.irregular("c", fc.S.projector_rank if not fc.cfg.is_regular else fc.cfg.n)
    return max(
        float(np.max(np.abs(Sb - Sb.T))),
        float(np.max(np.abs(Sb @ Sb - Sb))),
        _rel(Sb @ C - C, C),
    )


def moment_map_residual(fc: FrameConstruction, count=None) -> float:
    """``max_alpha ||S m_alpha - c_alpha||_inf / ||c_alpha||_inf`` on the central window."""
    count = fc.n_moments if count is None else count
    W = central_window(fc.cfg.n)
    Sd = fc.S.dense(W)
    m = moment_window(fc, W, count)
    c = coefficient_window(fc, W, count)
    return max(_rel(Sd @ m[a] - c[a], c[a]) for a in range(count))


def vanishing_moment_residuals(fc: FrameConstruction, count=None, relative=True) -> np.ndarray:
    """Per ``alpha``: ``||Q^T m_alpha||_inf / ||m_alpha||_inf`` over columns touching the padded window.

    With ``relative=False`` the division by ``||m_alpha||_inf`` is skipped.
    """
    n = fc.cfg.n
    count = n if count is None else count
    W = padded_window(n).pad(4 * n)
    Q, labels = fc.frame.materialize(W)
    m = moment_window(fc, W, count)
    Qp, near = fc.frame.materialize(padded_window(n))
    near = {lab for lab, col in zip(near, Qp.T) if np.any(col)}
    touching = np.array([lab in near for lab in labels])
    if not relative:
        return np.array([np.max(np.abs(Q[:, touching].T @ m[a])) for a in range(count)])
    return np.array([_rel(Q[:, touching].T @ m[a], m[a]) for a in range(count)])


def eigen_relation_residual(fc: FrameConstruction) -> float:
    """Relative residuals of ``m^T Ps = 2^(a+1) m^T`` (a < n) and ``Ps c = 2^-a c`` (a < 2n)."""
    n = fc.cfg.n
    K = padded_window(n)
    rows = IndexWindow(2 * K.lo - 2 * n + 1, 2 * K.hi + 2 * n - 1)
    Ps_cols = scaled_operator(fc.op, fc.gram_phi, rows, K)
    m = moment_window(fc, rows, n)
    worst = 0.0
    inner = slice(rows.position(K.lo), rows.position(K.hi) + 1)
    for a in range(n):
        lhs = m[a] @ Ps_cols
        worst = max(worst, _rel(lhs - 2.0 ** (a + 1) * m[a][inner], m[a][inner]))
    A = columns_touching(K, n)
    Ps_rows = scaled_operator(fc.op, fc.gram_phi, K, A)
    cA = coefficient_window(fc, A, 2 * n)
    cK = coefficient_window(fc, K, 2 * n)
    for a in range(2 * n):
        worst = max(worst, _rel(Ps_rows @ cA[a] - 2.0 ** (-a) * cK[a], cK[a]))
    return worst


def r_moment_residual(fc: FrameConstruction) -> float:
    """``||R m_alpha||_inf / ||m_alpha||_inf`` on interior rows of the padded window."""
    n = fc.cfg.n
    W = fc.R.window
    m = moment_window(fc, W, fc.n_moments)
    inner = slice(4 * n - 2, len(W) - (4 * n - 2))
    return max(_rel((fc.R.matrix @ m[a])[inner], m[a]) for a in range(fc.n_moments))


def frame_identity_residual(fc: FrameConstruction) -> float:
    W = fc.R.window
    Q, _ = fc.frame.materialize(W)
    return float(np.max(np.abs(Q @ Q.T - fc.R.matrix)))


# Parseval witness ------------------------------------------------------------


def bump(center=0.0, radius=1.0):
    """Smooth compactly supported test function ``exp(-1/(1-r^2))``."""

    def f(x):
        x = np.asarray(x, dtype=float)
        r = (x - center) / radius
        out = np.zeros_like(r)
        inside = np.abs(r) < 1
        out[inside] = np.exp(-1.0 / (1.0 - r[inside] ** 2))
        return out

    f.support = (center - radius, center + radius)
    return f


def default_test_functions(cfg: MeshConfig):
    """A bump straddling the junction and bumps inside each regular side."""
    return {
        "centered": bump(0.0, 1.0),
        "left": bump(-2.0 * cfg.h_left, 1.0 * cfg.h_left),
        "right": bump(2.0 * cfg.h_right, 1.0 * cfg.h_right),
    }


def scaling_coefficients(fc: FrameConstruction, f, level: int, quad_level: int = 12):
    """``v_j = 2^(j/2) int f(x) Phi(2^j x) dx`` for ``j = 0 .. level``.

    The finest level comes from trapezoidal quadrature on the mesh
    ``2^-quad_level t``; coarser levels follow from the exact two-scale
    relation ``v_j = 2^(-1/2) Ps^T v_(j+1)``.
    """
    cfg = fc.cfg
    L = quad_level - level
    if L < 0:
        raise ValueError("quad_level must be >= level")
    a, b = f.support
    scale = 2.0 ** quad_level
    lo = int(np.floor(a * scale / cfg.h_left)) - 1 if a < 0 else int(np.floor(a * scale / cfg.h_right)) - 1
    hi = int(np.ceil(b * scale / cfg.h_right)) + 1 if b > 0 else int(np.ceil(b * scale / cfg.h_left)) + 1
    ms = np.arange(lo, hi + 1)
    x = mesh_point(cfg, ms) / scale
    w = np.zeros(len(x))
    w[1:] += 0.5 * np.diff(x)
    w[:-1] += 0.5 * np.diff(x)
    y, y_lo = w * f(x), lo
    for _ in range(L):
        y, y_lo = fc.op.apply_transpose(y, y_lo)
    ks = np.arange(y_lo, y_lo + len(y))
    v = 2.0 ** (level / 2.0) * y / np.sqrt(fc.gram_phi.d(ks))
    coeffs = {level: (v, y_lo)}
    for j in range(level - 1, -1, -1):
        v, v_lo = coeffs[j + 1]
        ks = np.arange(v_lo, v_lo + len(v))
        u, u_lo = fc.op.apply_transpose(np.sqrt(fc.gram_phi.d(ks)) * v, v_lo)
        ku = np.arange(u_lo, u_lo + len(u))
        coeffs[j] = (u / np.sqrt(2.0) / np.sqrt(fc.gram_phi.d(ku)), u_lo)
    return coeffs


def parseval_witness(fc: FrameConstruction, f, levels: int = 6, quad_level: int = 12):
    """Per-level telescoping residuals and finest-level energy errors, relative to ``||f||^2``."""
    a, b = f.support
    norm2 = integrate.quad(lambda x: float(f(np.array([x]))[0]) ** 2, a, b, limit=200, epsabs=0, epsrel=1e-13)[0]
    coeffs = scaling_coefficients(fc, f, levels + 1, quad_level)
    energy = {j: fc.S.quadratic(*coeffs[j]) for j in coeffs}
    telescope = []
    for j in range(levels + 1):
        v, lo = coeffs[j + 1]
        detail = fc.frame.apply_transpose(v, lo)
        telescope.append(abs(energy[j + 1] - energy[j] - float(detail @ detail)) / norm2)
    limit = [abs(energy[j] - norm2) / norm2 for j in range(levels + 1)]
    return np.array(telescope), np.array(limit)


def verify_frame(fc: FrameConstruction, parseval: bool = True, levels: int = 6, quad_level: int = 12) -> VerificationReport:
    """Evaluate every named residual of the construction."""
    tol = fc.cfg.tol
    rep = VerificationReport()
    rep.add("uep", uep_residual(fc.regular.p, fc.regular.framelets), tol.verify)
    scale = max(1.0, float(np.max(np.abs(fc.gram.central))))
    rep.add("gram_fixed_point", gram_fixed_point_residual(fc.gram, fc.op), tol.gram_residual * scale)
    it = gram_fixed_point_iteration(fc.op, fc.g, fc.cfg)
    rep.add("gram_iteration", float(np.max(np.abs(it - fc.gram.central))), tol.gram_residual * scale)
    rep.add("s_projector", s_projector_residual(fc), tol.projector)
    rep.add("moment_map", moment_map_residual(fc), tol.verify)
    w = np.linalg.eigvalsh(fc.R_irr)
    norm = float(np.max(np.abs(w))) if w.size else 0.0
    rep.add("psd_min_eigenvalue", float(w[0]) if w.size else 0.0, tol.psd_clip * norm,
            passed=(w.size == 0 or w[0] >= -tol.psd_clip * norm))
    Q = fc.frame.q_irr
    rep.add("factor_reconstruction", float(np.max(np.abs(Q @ Q.T - fc.R_irr))), tol.psd_clip * max(norm, 1e-300))
    rep.add("frame_identity", frame_identity_residual(fc), tol.verify)
    rep.add("vanishing_moments", float(np.max(vanishing_moment_residuals(fc, fc.n_moments))), tol.verify)
    rep.add("r_moments", r_moment_residual(fc), tol.verify)
    rep.add("eigen_relations", eigen_relation_residual(fc), tol.verify)
    if parseval:
        tele, lim = [], []
        for f in default_test_functions(fc.cfg).values():
            t, l = parseval_witness(fc, f, levels, quad_level)
            tele.append(np.max(t))
            lim.append(l)
        rep.add("parseval_telescope", max(tele), 1e-9)
        lim = np.array(lim)
        tail = lim[:, 3:]
        monotone = bool(np.all(np.diff(tail, axis=1) <= 0))
        rep.add("parseval_limit", float(np.max(lim[:, -1])), tol.parseval_limit,
                passed=monotone and float(np.max(lim[:, -1])) <= tol.parseval_limit)
    return rep


# Sampling --------------------------------------------------------------------


def _cascade_on_support(op, coeffs, lo, level):
    """Cascade of ``coeffs`` with zero samples padded out to the closed support."""
    from .subdivision import cascade_sample

    n = op.n
    s = cascade_sample(op, coeffs, lo, level)
    full = IndexWindow(2 ** level * (lo + 1 - 2 * n), 2 ** level * (lo + len(coeffs) - 1 + 2 * n - 1))
    vals = np.zeros(len(full))
    vals[s.window.lo - full.lo:s.window.hi - full.lo + 1] = s.values
    return full, vals


def sample_scaling(fc: FrameConstruction, k: int, level: int):
    """Points ``2^-level t(m)`` and values of the scaled function ``Phi_k``."""
    if level < 0:
        raise ValueError("level must be >= 0")
    W, vals = _cascade_on_support(fc.op, [1.0 / float(np.sqrt(fc.gram_phi.d([k])[0]))], k, level)
    return mesh_point(fc.cfg, W.indices) / 2.0 ** level, vals


def sample_framelet(fc: FrameConstruction, column: int, level: int):
    """Points and values of the irregular framelet ``sqrt(2) Q_irr[:, column]^T Phi(2 .)``."""
    if level < 1:
        raise ValueError("framelet sampling needs level >= 1")
    if not 0 <= column < fc.frame.rank:
        raise ValueError(f"framelet column must lie in 0..{fc.frame.rank - 1}")
    C = central_window(fc.cfg.n)
    coeffs = np.sqrt(2.0) * fc.frame.q_irr[:, column] / np.sqrt(fc.gram_phi.d(C.indices))
    W, vals = _cascade_on_support(fc.op, coeffs, C.lo, level - 1)
    # the cascade runs at level-1 on the doubled argument
    return mesh_point(fc.cfg, W.indices) / 2.0 ** level, vals
