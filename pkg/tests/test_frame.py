import dataclasses

import numpy as np
import pytest

from closed_forms import hat_R_irr
from ddframes.frame import (
    FrameError,
    NotPositiveSemidefinite,
    RWindow,
    build_R,
    build_R_irr,
    build_S,
    construct_frame,
    moment_window,
    parseval_witness,
    bump,
    projector_onto,
    psd_factor,
    sample_framelet,
    sample_scaling,
    vanishing_moment_residuals,
    verify_frame,
)
from ddframes.mesh import IndexWindow, MeshConfig, central_window, irregular_index_set


@pytest.fixture(scope="module")
def dd4():
    return construct_frame(MeshConfig(2, 1.0, 2.0))


@pytest.mark.parametrize("n,h", [(2, 2.0), (2, 0.5), (3, 1.5), (4, 0.75)])
def test_S_is_projector_and_matches_least_squares(n, h):
    fc = construct_frame(MeshConfig(n, 1.0, h))
    Sb = fc.S.irr_block
    C = fc.moments.irregular("c", n)
    np.testing.assert_allclose(Sb, projector_onto(C), atol=1e-12)
    assert np.max(np.abs(Sb @ Sb - Sb)) < 1e-12
    assert np.max(np.abs(Sb @ C - C)) < 1e-12 * np.max(np.abs(C))
    assert np.trace(Sb) == pytest.approx(n, abs=1e-12)


def test_S_regular_and_validation(dd4):
    fc = construct_frame(MeshConfig(2, 1.3, 1.3))
    np.testing.assert_array_equal(fc.S.irr_block, np.eye(5))
    with pytest.raises(FrameError):
        build_S(dd4.moments, n_moments=3)
    flat = dataclasses.replace(dd4.moments, c=np.tile(dd4.moments.c[0], (4, 1)))
    with pytest.raises(FrameError, match="coefficient vectors degenerate"):
        build_S(flat)


def test_S_dense_window(dd4):
    W = IndexWindow(-4, 4)
    D = dd4.S.dense(W)
    np.testing.assert_array_equal(D[:2, :2], np.eye(2))
    np.testing.assert_array_equal(D[2:7, 2:7], dd4.S.irr_block)
    v = np.arange(9.0) - 3
    assert dd4.S.quadratic(v, -4) == pytest.approx(v @ D @ v, rel=1e-14)


@pytest.mark.parametrize("h", [0.5, 1.0, 2.0, 5.0])
def test_hat_residual_closed_form(h):
    fc = construct_frame(MeshConfig(1, 1.0, h))
    W = fc.R.window
    assert fc.R.matrix[W.position(0), W.position(0)] == pytest.approx(0.5, abs=1e-15)
    np.testing.assert_allclose(fc.R_irr, hat_R_irr(h), atol=1e-13)
    assert fc.frame.rank == 2


@pytest.mark.parametrize("n,h", [(1, 1.0), (2, 1.0), (3, 2.0)])
def test_regular_consistency(n, h):
    fc = construct_frame(MeshConfig(n, h, h))
    C = central_window(n)
    ref = np.zeros((len(C), len(C)))
    for k in irregular_index_set(n):
        for q in fc.regular.framelets:
            col = np.array([q[m - 2 * k] for m in C])
            ref += 0.5 * np.outer(col, col)
    np.testing.assert_allclose(fc.R_irr, ref, atol=1e-13)
    if n == 1:
        np.testing.assert_allclose(ref, np.array([[3, -2, -1], [-2, 4, -2], [-1, -2, 3]]) / 8, atol=1e-15)
        Q = fc.frame.q_irr
        np.testing.assert_allclose(Q @ Q.T, ref, atol=1e-14)


def test_R_irr_leakage_detected(dd4):
    M = dd4.R.matrix.copy()
    M[0, 1] += 1e-6
    M[1, 0] += 1e-6
    with pytest.raises(FrameError, match="R_irr support violation"):
        build_R_irr(RWindow(dd4.R.window, M), dd4.regular)


def test_R_kills_moments(dd4):
    W = dd4.R.window
    m = moment_window(dd4, W, 2)
    inner = slice(6, len(W) - 6)
    for a in range(2):
        assert np.max(np.abs((dd4.R.matrix @ m[a])[inner])) < 1e-10 * np.max(np.abs(m[a]))


def test_psd_factor_contract():
    rng = np.random.default_rng(1)
    B = rng.normal(size=(6, 3))
    R = B @ B.T
    Q = psd_factor(R)
    assert Q.shape == (6, 3)
    assert np.max(np.abs(Q @ Q.T - R)) <= 1e-9 * np.linalg.norm(R, 2)
    norms = np.linalg.norm(Q, axis=0)
    assert np.all(np.diff(norms) <= 1e-12)
    for j in range(3):
        col = Q[:, j]
        assert col[np.argmax(np.abs(col))] > 0
    assert psd_factor(np.zeros((3, 3))).shape == (3, 0)
    with pytest.raises(NotPositiveSemidefinite, match="not positive semi-definite"):
        psd_factor(np.diag([1.0, -0.1]))
    # tiny negative eigenvalues are clipped
    Q = psd_factor(np.diag([1.0, -1e-12]))
    assert Q.shape == (2, 1)


def test_dd4_rank_and_columns(dd4):
    assert dd4.frame.rank == 8
    assert dd4.frame.row_offset == -7
    Q, labels = dd4.frame.materialize(IndexWindow(-30, 30))
    col = Q[:, labels.index((3, 2))]
    rows = np.arange(-30, 31)
    ref = np.array([dd4.regular.q2[m - 6] for m in rows]) / np.sqrt(2)
    np.testing.assert_array_equal(col, ref)


def test_frame_identity_and_transpose(dd4):
    W = dd4.R.window
    Q, _ = dd4.frame.materialize(W)
    assert np.max(np.abs(Q @ Q.T - dd4.R.matrix)) < 1e-10
    v = np.random.default_rng(2).normal(size=23)
    lo = -11
    big = IndexWindow(-60, 60)
    Qb, _ = dd4.frame.materialize(big)
    x = np.zeros(len(big))
    x[lo - big.lo:lo - big.lo + len(v)] = v
    dense = Qb.T @ x
    fast = dd4.frame.apply_transpose(v, lo)
    assert np.linalg.norm(fast) == pytest.approx(np.linalg.norm(dense), rel=1e-13)


def test_fewer_moment_columns():
    fc = construct_frame(MeshConfig(2, 1.0, 2.0), n_moments=1)
    assert fc.S.projector_rank == 1
    res = vanishing_moment_residuals(fc, 2)
    assert res[0] < 1e-10
    assert res[1] > 1e-4
    rep = verify_frame(fc, parseval=False)
    assert rep.passed


def test_verify_examples(dd4):
    rep = verify_frame(construct_frame(MeshConfig(1, 1.0, 2.0)))
    assert rep.passed, rep.failures()
    res = vanishing_moment_residuals(dd4, 2)
    assert np.all(res < 1e-10)
    rep = verify_frame(dd4, parseval=False)
    assert rep.passed and "parseval_limit" not in rep.residuals


def test_verify_reports_bad_factor(dd4):
    Q = dd4.frame.q_irr.copy()
    Q[4, 2] += 1e-3
    fc = construct_frame(dd4.cfg, q_irr=Q)
    rep = verify_frame(fc, parseval=False)
    assert not rep.passed
    assert "factor_reconstruction" in rep.failures()


@pytest.mark.parametrize("center", [-2.0, 0.0, 3.0])
def test_parseval_witness(dd4, center):
    tele, lim = parseval_witness(dd4, bump(center, 1.0), levels=6)
    assert np.all(tele < 1e-9)
    assert lim[-1] < 1e-2
    assert np.all(np.diff(lim[3:]) <= 0)


def test_sample_scaling_hat():
    fc = construct_frame(MeshConfig(1, 1.0, 2.0))
    x, y = sample_scaling(fc, 0, 0)
    np.testing.assert_array_equal(x, [-1.0, 0.0, 2.0])
    np.testing.assert_allclose(y, [0.0, np.sqrt(2 / 3), 0.0], atol=1e-15)


def test_sample_scaling_shift_invariance(dd4):
    x1, y1 = sample_scaling(dd4, 12, 3)
    x2, y2 = sample_scaling(dd4, 13, 3)
    np.testing.assert_allclose(x2 - x1, 2.0)
    np.testing.assert_allclose(y1, y2, atol=1e-14)


def test_sample_framelet(dd4):
    x, y = sample_framelet(dd4, 0, 6)
    assert x[0] < 0 < x[-1]
    # vanishing moments show up in the sampled curve (trapezoid error only)
    w = np.zeros(len(x))
    w[1:] += 0.5 * np.diff(x)
    w[:-1] += 0.5 * np.diff(x)
    scale = np.sum(w * np.abs(y))
    assert abs(np.sum(w * y)) < 1e-3 * scale
    with pytest.raises(ValueError):
        sample_framelet(dd4, 8, 3)
    with pytest.raises(ValueError):
        sample_framelet(dd4, 0, 0)
