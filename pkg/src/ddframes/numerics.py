"""Dense numeric kernels with the sign and ordering conventions the package relies on.

LAPACK (through numpy) does the heavy lifting; this module pins down the
conventions on top of it so every caller sees deterministic outputs.
"""

import numpy as np


class NumericsError(RuntimeError):
    pass


def qr_factor(A):
    """Full Householder QR ``A = O U`` with a nonnegative diagonal of ``U``.

    Parameters
    ----------
    A : array_like, shape (m, k) with m >= k

    Returns
    -------
    O : ndarray, shape (m, m)
        Orthogonal factor.
    U : ndarray, shape (m, k)
        Upper triangular factor.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] < A.shape[1]:
        raise ValueError(f"qr_factor needs a tall matrix, got shape {A.shape}")
    O, U = np.linalg.qr(A, mode="complete")
    k = A.shape[1]
    signs = np.ones(A.shape[0])
    diag = np.diag(U[:k, :k])
    signs[:k] = np.where(diag < 0, -1.0, 1.0)
    O = O * signs
    U = signs[:, None] * U
    return O, U


def canonical_sign(v, rel=1e-12):
    """Sign making the first entry of (nearly) largest magnitude positive."""
    v = np.asarray(v)
    amax = np.max(np.abs(v)) if v.size else 0.0
    if amax == 0.0:
        return 1.0
    first = np.flatnonzero(np.abs(v) >= amax * (1 - rel))[0]
    return -1.0 if v[first] < 0 else 1.0


def sym_eig(A, symmetry_tol=1e-12):
    """Eigenvalues in descending order with sign-canonical orthonormal eigenvectors."""
    A = np.asarray(A, dtype=float)
    scale = max(np.max(np.abs(A)), 1.0) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.T)) > symmetry_tol * scale:
        raise ValueError("sym_eig needs a symmetric matrix")
    try:
        w, V = np.linalg.eigh(0.5 * (A + A.T))
    except np.linalg.LinAlgError as exc:
        raise NumericsError("symmetric eigensolver did not converge") from exc
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    for j in range(V.shape[1]):
        V[:, j] *= canonical_sign(V[:, j])
    return w, V


def solve_linear(A, b, rcond=1e-14):
    """Solve a square system, refusing systems singular to working precision."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("solve_linear needs a square matrix")
    if A.size == 0:
        return np.zeros(0)
    if 1.0 / np.linalg.cond(A, 1) < rcond:
        raise NumericsError("singular system")
    x = np.linalg.solve(A, b)
    # one step of iterative refinement
    x += np.linalg.solve(A, b - A @ x)
    return x


def polyval_asc(coeffs, z):
    """Evaluate ``sum_k coeffs[k] z**k`` (ascending order)."""
    return np.polynomial.polynomial.polyval(z, coeffs)


def poly_roots(coeffs, newton_steps=20):
    """Roots of a real polynomial given by ascending coefficients.

    Companion-matrix eigenvalues, each polished by Newton iterations. Returns
    the roots sorted by (real part, imaginary part).
    """
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if len(c) == 0:
        raise ValueError("zero polynomial")
    deg = len(c) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((deg, deg))
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    roots = np.linalg.eigvals(comp).astype(complex)
    dc = np.polynomial.polynomial.polyder(c)
    for i, z in enumerate(roots):
        for _ in range(newton_steps):
            f = polyval_asc(c, z)
            df = polyval_asc(dc, z)
            if df == 0 or f == 0:
                break
            step = f / df
            z = z - step
            if abs(step) <= 1e-17 * max(1.0, abs(z)):
                break
        roots[i] = z
    # enforce exact conjugate symmetry for real input
    roots = np.where(np.abs(roots.imag) <= 1e-14 * np.maximum(1.0, np.abs(roots)), roots.real + 0j, roots)
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]
