"""
Regular filters: the Dubuc-Deslauriers mask, its Daubechies spectral factor,
the two regular framelets, coefficient-domain UEP checks and UEP products.

Symbols use the half normalization ``a(w) = 1/2 sum_k a(k) exp(2 pi i k w)``,
so a product of symbols corresponds to half the convolution of coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .numerics import canonical_sign, poly_roots, polyval_asc
from .subdivision import dd_mask_coeffs


class FilterError(ValueError):
    pass


@dataclass(frozen=True)
class Filter:
    """Finite sequence ``coeffs`` whose first entry sits at index ``offset``."""

    coeffs: tuple
    offset: int

    def __init__(self, coeffs, offset=0, trim=True):
        c = np.asarray(coeffs, dtype=float).ravel()
        off = int(offset)
        if trim and c.size:
            thresh = 1e-15 * np.max(np.abs(c))
            c = np.where(np.abs(c) > thresh, c, 0.0)
            nz = np.flatnonzero(c)
            if nz.size == 0:
                c, off = np.zeros(0), 0
            else:
                off += int(nz[0])
                c = c[nz[0]:nz[-1] + 1]
        object.__setattr__(self, "coeffs", tuple(float(v) for v in c))
        object.__setattr__(self, "offset", off)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    @property
    def support(self):
        return (self.offset, self.offset + len(self.coeffs) - 1)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        j = k - self.offset
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0.0

    def __neg__(self):
        return Filter(-self.array, self.offset)

    def scale(self, s):
        return Filter(s * self.array, self.offset)

    def shift(self, s):
        return Filter(self.array, self.offset + s)

    def modulate(self):
        """Coefficients ``(-1)**k a(k)``: the symbol shifted by one half."""
        k = np.arange(self.offset, self.offset + len(self.coeffs))
        return Filter(np.where(k % 2 == 0, 1.0, -1.0) * self.array, self.offset)

    def symbol(self, omega):
        omega = np.asarray(omega, dtype=float)
        k = np.arange(self.offset, self.offset + len(self.coeffs))
        return 0.5 * np.exp(2j * np.pi * np.multiply.outer(omega, k)) @ self.array

    def canonical(self):
        """Global sign fixed so the first largest-magnitude coefficient is positive."""
        return self.scale(canonical_sign(self.array))

    def moment(self, alpha):
        k = np.arange(self.offset, self.offset + len(self.coeffs), dtype=float)
        return float(self.array @ k ** alpha)


def convolve(a: Filter, b: Filter) -> Filter:
    return Filter(np.convolve(a.array, b.array), a.offset + b.offset)


def symbol_product(a: Filter, b: Filter) -> Filter:
    """Coefficients of the product of the two half-normalized symbols."""
    return convolve(a, b).scale(0.5)


def autocorrelation(a: Filter) -> Filter:
    """``r(k) = sum_j a(j) a(j-k)``, supported on ``-(len-1) .. len-1``."""
    c = a.array
    return Filter(np.correlate(c, c, mode="full"), -(len(c) - 1))


def dd_mask(n: int) -> Filter:
    """Regular 2n-point mask, supported on ``1-2n .. 2n-1``."""
    if n < 1:
        raise FilterError("n must be >= 1")
    return Filter(dd_mask_coeffs(n), 1 - 2 * n)


def mask_order(p: Filter) -> int:
    L = len(p)
    if (L + 1) % 4 or p.offset != -(L // 2):
        raise FilterError("not a Dubuc-Deslauriers mask: support must be 1-2n .. 2n-1")
    return (L + 1) // 4


def daubechies_remainder(n: int) -> np.ndarray:
    """Ascending coefficients of ``sum_{k<n} C(n-1+k, k) y**k``."""
    return np.array([comb(n - 1 + k, k) for k in range(n)], dtype=float)


def daubechies_factor(p: Filter, tol=1e-12) -> Filter:
    """Minimal-phase spectral factor ``d`` on ``1-2n .. 0`` with ``p = d * conj(d)``.

    In ``y = sin(pi w)**2`` the mask symbol is ``(1-y)**n Q(y)``. The roots of
    ``Q`` are mapped to ``w``-roots ``z`` with ``|z| < 1`` through
    ``z + 1/z = 2 - 4y``; the factor is ``((1+w)/2)**n prod (w - z)/(1 - z)``
    in the variable ``w = exp(-2 pi i omega)``.
    """
    n = mask_order(p)
    roots_y = poly_roots(daubechies_remainder(n))
    zs = []
    for y in roots_y:
        b = 2.0 - 4.0 * y
        disc = np.sqrt(b * b - 4.0 + 0j)
        z1, z2 = (b + disc) / 2.0, (b - disc) / 2.0
        zs.append(z1 if abs(z1) < abs(z2) else z2)
    poly = np.array([1.0 + 0j])
    for z in zs:
        poly = np.convolve(poly, [-z, 1.0])
    if zs:
        poly = poly / polyval_asc(poly, 1.0)
    if np.max(np.abs(poly.imag)) > 1e-10:
        raise FilterError("spectral factorization failed")
    poly = poly.real
    for _ in range(n):
        poly = np.convolve(poly, [0.5, 0.5])
    # coefficient of w**j belongs to index -j; the factor 2 undoes the half normalization
    d = Filter(2.0 * poly[::-1], 1 - 2 * n)
    res = autocorrelation(d).scale(0.5)
    err = max(abs(res[k] - p[k]) for k in range(-(2 * n), 2 * n + 1))
    if not err <= tol * max(1.0, max(abs(c) for c in p.coeffs)):
        raise FilterError(f"spectral factorization failed: autocorrelation residual {err:.3e}")
    return d


def factor_roots(d: Filter) -> np.ndarray:
    """Non-trivial roots of the factor in ``w = exp(-2 pi i omega)``, ``(1+w)`` factors removed."""
    poly = d.array[::-1]
    n = len(d) // 2
    for _ in range(n):
        poly, _ = np.polynomial.polynomial.polydiv(poly, [1.0, 1.0])
    return poly_roots(poly) if len(poly) > 1 else np.zeros(0, dtype=complex)


@dataclass(frozen=True)
class RegularFrame:
    p: Filter
    d: Filter
    q1: Filter
    q2: Filter

    @property
    def n(self):
        return len(self.d) // 2

    @property
    def framelets(self):
        return [self.q1, self.q2]


def regular_framelets(d: Filter):
    """The two framelets built from the Daubechies factor.

    ``q1`` realizes ``(-1)**(n-1) sqrt(2) w**-(2n-1) conj(d(w) d(w-1/2))``,
    i.e. the coefficient reversal of ``sqrt(2) w**(2n-1) d(w) d(w-1/2)``, and
    ``q2`` the squared modulus of ``d(w-1/2)``. Both are supported on
    ``1-2n .. 2n-1``; ``q2`` is symmetric with ``q2(0) > 0``.
    """
    n = len(d) // 2
    dm = d.modulate()
    forward = symbol_product(d, dm).scale(np.sqrt(2.0)).shift(2 * n - 1)
    lo, hi = forward.support
    q1 = Filter(forward.array[::-1] * (-1.0) ** (n - 1), -hi)
    q2 = autocorrelation(dm).scale(0.5)
    return q1, q2


def regular_frame(n: int) -> RegularFrame:
    p = dd_mask(n)
    d = daubechies_factor(p)
    q1, q2 = regular_framelets(d)
    return RegularFrame(p, d, q1, q2)


def _lag_sums(a: Filter, modulated: bool):
    """``sum_m s(m) a(m+l) a(m)`` for all lags, ``s = (-1)**m`` when modulated."""
    c = a.array
    if modulated:
        c2 = a.modulate().array
    else:
        c2 = c
    # np.correlate(c, c2)[i] = sum_m c[m+i-(L-1)] c2[m]
    return np.correlate(c, c2, mode="full"), -(len(c) - 1)


def uep_residual(p: Filter, framelets) -> float:
    """Largest violation of the two UEP identities in the coefficient domain."""
    families = [p] + list(framelets)
    span = max(len(f) for f in families)
    A = np.zeros(2 * span - 1)
    B = np.zeros(2 * span - 1)
    for f in families:
        for target, modulated in ((A, False), (B, True)):
            vals, lo = _lag_sums(f, modulated)
            start = lo + span - 1
            target[start:start + len(vals)] += vals
    A[span - 1] -= 4.0
    return float(max(np.max(np.abs(A)), np.max(np.abs(B))))


def uep_product(a: Filter, b_list, p: Filter, q_list, tol=1e-12, validate=True):
    """Framelets for the mask with symbol ``a(w) p(w)``.

    Returns ``(mask, framelets)`` with framelets ``p*b_j``, ``a*q_j`` and
    ``q_j*b_k`` (symbol products).
    """
    b_list, q_list = list(b_list), list(q_list)
    if validate and (uep_residual(a, b_list) > tol or uep_residual(p, q_list) > tol):
        raise FilterError("inputs are not UEP-compliant")
    out = [symbol_product(p, b) for b in b_list]
    out += [symbol_product(a, q) for q in q_list]
    out += [symbol_product(q, b) for q in q_list for b in b_list]
    return symbol_product(a, p), out
