import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from closed_forms import DD4_D, DD4_MASK, DD4_Q1, DD4_Q2, HAT_Q1, HAT_Q2
from ddframes.filters import (
    Filter,
    FilterError,
    autocorrelation,
    daubechies_factor,
    dd_mask,
    factor_roots,
    regular_frame,
    symbol_product,
    uep_product,
    uep_residual,
)


def test_filter_trimming_and_indexing():
    f = Filter([0.0, 1.0, 0.0, -2.0, 0.0], offset=-2)
    assert f.support == (-1, 1)
    assert f[-1] == 1.0 and f[1] == -2.0 and f[5] == 0.0
    assert len(Filter([0.0, 0.0])) == 0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=6), st.lists(st.floats(-2, 2), min_size=1, max_size=6),
       st.integers(-4, 4), st.integers(-4, 4), st.floats(0, 1))
def test_symbol_product_matches_pointwise(a, b, oa, ob, w):
    fa, fb = Filter(a, oa, trim=False), Filter(b, ob, trim=False)
    assert abs(symbol_product(fa, fb).symbol(w) - fa.symbol(w) * fb.symbol(w)) < 1e-12


def test_masks_and_factors_match_closed_forms():
    p1 = dd_mask(1)
    assert p1.support == (-1, 1) and p1.coeffs == (0.5, 1.0, 0.5)
    d1 = daubechies_factor(p1)
    assert d1.support == (-1, 0)
    np.testing.assert_allclose(d1.array, [1.0, 1.0], atol=1e-15)
    p2 = dd_mask(2)
    assert p2.support == (-3, 3)
    np.testing.assert_allclose(p2.array, DD4_MASK, atol=1e-16)
    d2 = daubechies_factor(p2)
    assert d2.support == (-3, 0)
    np.testing.assert_allclose(d2.array, DD4_D, atol=1e-12)


def test_regular_framelets_match_closed_forms():
    f1, f2 = regular_frame(1), regular_frame(2)
    np.testing.assert_allclose(f1.q1.array, HAT_Q1, atol=1e-15)
    np.testing.assert_allclose(f1.q2.array, HAT_Q2, atol=1e-15)
    assert f2.q1.support == (-3, 3) and f2.q2.support == (-3, 3)
    np.testing.assert_allclose(f2.q1.array, DD4_Q1, atol=1e-12)
    np.testing.assert_allclose(f2.q2.array, DD4_Q2, atol=1e-12)


@pytest.mark.parametrize("n", range(1, 9))
def test_factorization_identity(n):
    p = dd_mask(n)
    d = daubechies_factor(p)
    ac = autocorrelation(d).scale(0.5)
    assert max(abs(ac[k] - p[k]) for k in range(-4 * n, 4 * n)) < 1e-12
    assert abs(sum(d.coeffs) - 2) < 1e-12 and abs(sum(p.coeffs) - 2) < 1e-13
    roots = factor_roots(d)
    assert len(roots) == n - 1
    assert np.all(np.abs(roots) < 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_regular_frame_properties(n):
    fr = regular_frame(n)
    assert uep_residual(fr.p, fr.framelets) < 1e-12
    for q in fr.framelets:
        assert q.support == (1 - 2 * n, 2 * n - 1)
        scale = np.max(np.abs(q.array)) * (2 * n) ** np.arange(n)
        for a in range(n):
            assert abs(q.moment(a)) <= 1e-10 * scale[a]
    # q2 is symmetric with positive centre; the symbol relation holds pointwise
    assert fr.q2[0] > 0
    np.testing.assert_allclose(fr.q2.array, fr.q2.array[::-1], atol=1e-15)
    w = np.linspace(0, 1, 17)
    dm = fr.d.modulate()
    ref1 = (-1) ** (n - 1) * np.sqrt(2) * np.exp(-2j * np.pi * (2 * n - 1) * w) * np.conj(fr.d.symbol(w) * dm.symbol(w))
    np.testing.assert_allclose(fr.q1.symbol(w), ref1, atol=1e-13)
    np.testing.assert_allclose(fr.q2.symbol(w), np.abs(dm.symbol(w)) ** 2, atol=1e-13)


def test_uep_residual_examples():
    haar_p, haar_q = Filter([1.0, 1.0], 0), Filter([1.0, -1.0], 0)
    assert uep_residual(haar_p, [haar_q]) < 1e-15
    assert uep_residual(haar_p, []) == pytest.approx(2.0)


def test_uep_residual_detects_perturbation():
    fr = regular_frame(2)
    bad = Filter(fr.q1.array + np.eye(1, len(fr.q1), 2).ravel() * 1e-6, fr.q1.offset)
    assert uep_residual(fr.p, [bad, fr.q2]) > 1e-7


def test_uep_product_haar():
    haar_p, haar_q = Filter([1.0, 1.0], 0), Filter([1.0, -1.0], 0)
    mask, fam = uep_product(haar_p, [haar_q], haar_p, [haar_q])
    assert len(fam) == 3
    np.testing.assert_allclose(mask.array, [0.5, 1.0, 0.5])
    assert uep_residual(mask, fam) < 1e-14
    # the linear B-spline mask shifted to be centred matches the n=1 family up to sign and shift
    hat = regular_frame(1)
    assert np.allclose(np.abs(fam[2].array), np.abs(hat.q2.array))


def test_uep_product_of_regular_families():
    a, b = regular_frame(1), regular_frame(2)
    mask, fam = uep_product(a.p, a.framelets, b.p, b.framelets)
    assert len(fam) == 2 * 2 + 2 + 2
    assert uep_residual(mask, fam) < 1e-12


def test_uep_product_neutral_and_errors():
    fr = regular_frame(2)
    one = Filter([2.0], 0)
    mask, fam = uep_product(one, [], fr.p, fr.framelets, validate=False)
    assert mask == fr.p
    assert [f.coeffs for f in fam] == [q.coeffs for q in fr.framelets]
    with pytest.raises(FilterError, match="not UEP-compliant"):
        uep_product(one, [], fr.p, fr.framelets)


def test_mask_order_validation():
    with pytest.raises(FilterError):
        daubechies_factor(Filter([1.0, 1.0], 0))
    with pytest.raises(FilterError):
        dd_mask(0)
