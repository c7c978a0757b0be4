import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ddframes.numerics import NumericsError, canonical_sign, poly_roots, qr_factor, solve_linear, sym_eig

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_qr_identity_and_norm():
    O, U = qr_factor(np.eye(3))
    np.testing.assert_allclose(O, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(U, np.eye(3), atol=1e-15)
    _, U = qr_factor(np.array([[3.0], [4.0]]))
    assert U[0, 0] == pytest.approx(5.0, abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(arrays(float, (6, 3), elements=finite))
def test_qr_contract(A):
    O, U = qr_factor(A)
    assert np.max(np.abs(O.T @ O - np.eye(6))) < 1e-13
    assert np.max(np.abs(A - O @ U)) <= 1e-13 * max(1.0, np.max(np.abs(A)))
    assert np.all(np.diag(U[:3]) >= 0)
    assert np.allclose(np.tril(U, -1), 0)


def test_qr_rejects_wide():
    with pytest.raises(ValueError):
        qr_factor(np.ones((2, 3)))


def test_sym_eig_examples():
    w, _ = sym_eig(np.diag([1.0, 3.0]))
    np.testing.assert_allclose(w, [3.0, 1.0])
    # regular hat residual block: eigenvectors (1,-2,1), (1,0,-1), (1,1,1)
    R = np.array([[3, -2, -1], [-2, 4, -2], [-1, -2, 3]]) / 8.0
    w, V = sym_eig(R)
    np.testing.assert_allclose(w, [0.75, 0.5, 0.0], atol=1e-14)
    np.testing.assert_allclose(V[:, 2], np.ones(3) / np.sqrt(3), atol=1e-14)
    v = np.array([1.0, 2.0, -2.0])
    w, V = sym_eig(np.outer(v, v))
    np.testing.assert_allclose(w, [9.0, 0.0, 0.0], atol=1e-13)
    np.testing.assert_allclose(np.abs(V[:, 0]), np.abs(v) / 3, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(arrays(float, (5, 5), elements=finite))
def test_sym_eig_contract(B):
    A = B + B.T
    w, V = sym_eig(A)
    scale = max(1.0, np.max(np.abs(A)))
    assert np.all(np.diff(w) <= 1e-12 * scale)
    assert np.max(np.abs(A @ V - V * w)) <= 1e-11 * scale
    assert np.max(np.abs(V.T @ V - np.eye(5))) < 1e-12
    for j in range(5):
        assert canonical_sign(V[:, j]) == 1.0


def test_sym_eig_deterministic():
    A = np.random.default_rng(3).normal(size=(8, 8))
    A = A + A.T
    w1, V1 = sym_eig(A)
    w2, V2 = sym_eig(A.copy())
    assert np.array_equal(w1, w2) and np.array_equal(V1, V2)


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(ValueError):
        sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_solve_linear_examples():
    b = np.array([1.0, -2.0, 5.0])
    np.testing.assert_array_equal(solve_linear(np.eye(3), b), b)
    np.testing.assert_allclose(solve_linear(np.diag([2.0, 4.0]), [2.0, 4.0]), [1.0, 1.0])


def test_solve_linear_singular():
    with pytest.raises(NumericsError, match="singular system"):
        solve_linear(np.array([[1.0, 2.0], [2.0, 4.0]]), [1.0, 2.0])


@settings(max_examples=60, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, 4, elements=finite))
def test_solve_linear_residual(B, b):
    A = B + 10 * np.eye(4) * (1 + np.max(np.abs(B)))
    x = solve_linear(A, b)
    assert np.linalg.norm(A @ x - b) <= 1e-11 * (np.linalg.norm(A) * np.linalg.norm(x) + np.linalg.norm(b))


def test_poly_roots_examples():
    np.testing.assert_allclose(poly_roots([-1.0, 0.0, 1.0]), [-1.0, 1.0])
    r = poly_roots([1.0, 0.0, 1.0])
    np.testing.assert_allclose(r, [-1j, 1j], atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(arrays(float, 6, elements=st.floats(-5, 5, allow_nan=False)).filter(lambda c: abs(c[-1]) > 0.1))
def test_poly_roots_residual_and_conjugates(c):
    r = poly_roots(c)
    assert len(r) == 5
    vals = np.polynomial.polynomial.polyval(r, c)
    # residual relative to the coefficient size and the root magnitude
    scale = np.linalg.norm(c) * np.maximum(1.0, np.abs(r)) ** 5
    assert np.all(np.abs(vals) <= 1e-9 * scale)
    np.testing.assert_allclose(np.sort_complex(r), np.sort_complex(np.conj(r)), atol=1e-8 * max(1, np.max(np.abs(r))))
