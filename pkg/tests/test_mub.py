import itertools

import numpy as np
import pytest

from finite_radon.geometry import Point
from finite_radon.mub import (
    all_point_operators,
    mub_state,
    omega,
    point_operator,
    x_operator,
    z_operator,
)

W = np.exp(2j * np.pi / 3)

# d = 3 point projectors as printed in the worked example
PAPER_POINT_OPS = {
    Point(1, -1): np.array([[0, 0, 0], [0, 1, 0], [0, 0, 0]], dtype=complex),
    Point(2, 0): np.array([[1, W**2, W], [W, 1, W**2], [W**2, W, 1]]) / 3,
    Point(1, 1): np.array([[1, W, W], [W**2, 1, 1], [W**2, 1, 1]]) / 3,
    Point(0, 2): np.array([[1, 1, W], [1, 1, W], [W**2, W**2, 1]]) / 3,
}


def test_omega():
    assert omega(3) == pytest.approx(np.exp(2j * np.pi / 3), abs=1e-15)
    for d in (3, 5, 7, 11):
        assert abs(omega(d) ** d - 1) < 1e-12
    w = omega(3)
    assert abs(1 + w + w**2) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_clock_and_shift(d):
    Z, X = z_operator(d), x_operator(d)
    w = omega(d)
    assert np.allclose(np.diag(Z), w ** np.arange(d), atol=1e-12)
    for n in range(d):
        e = np.zeros(d)
        e[n] = 1
        assert np.allclose(X @ e, np.roll(e, 1))
    assert np.allclose(np.linalg.matrix_power(X, d), np.eye(d), atol=1e-12)
    # with X|n> = |n+1>, Z|n> = w^n |n>: ZX = w XZ
    assert np.abs(Z @ X - w * X @ Z).max() < 1e-12


def test_mub_state_examples():
    assert np.allclose(mub_state(0, 0, 3), np.ones(3) / np.sqrt(3), atol=1e-15)
    for m in range(3):
        assert np.array_equal(mub_state(m, -1, 3), np.eye(3)[m])


@pytest.mark.parametrize("alpha", list(PAPER_POINT_OPS))
def test_point_operators_match_worked_example(alpha):
    assert np.abs(point_operator(alpha, 3) - PAPER_POINT_OPS[alpha]).max() < 1e-12


def test_mub_state_direct_formula():
    # direct floating evaluation of the defining sum with a real-valued b/2
    d = 5
    for m, b in itertools.product(range(d), range(d)):
        n = np.arange(d)
        ref = np.exp(2j * np.pi / d * ((b * pow(2, -1, d)) * n * (n - 1) - n * m)) / np.sqrt(d)
        assert np.abs(mub_state(m, b, d) - ref).max() < 1e-12


def test_mub_state_rejects_labels():
    with pytest.raises(ValueError):
        mub_state(3, 0, 3)
    with pytest.raises(ValueError):
        mub_state(0, -2, 3)


@pytest.mark.parametrize("d", [3, 5, 7, 11, 13])
def test_eigen_relation(d):
    XZ = x_operator(d)
    Z = z_operator(d)
    w = omega(d)
    for b in range(d):
        op = XZ @ np.linalg.matrix_power(Z, b)
        for m in range(d):
            ket = mub_state(m, b, d)
            assert np.abs(op @ ket - w**m * ket).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_unbiasedness(d):
    kets = {(m, b): mub_state(m, b, d) for b in range(-1, d) for m in range(d)}
    for (k1, v1), (k2, v2) in itertools.product(kets.items(), repeat=2):
        ov = abs(np.vdot(v1, v2))
        if k1[1] != k2[1]:
            assert abs(ov - 1 / np.sqrt(d)) < 1e-12
        else:
            assert abs(ov - (k1 == k2)) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_projectors_and_resolutions(d):
    A = all_point_operators(d)
    eye = np.eye(d)
    for a in A:
        assert abs(np.trace(a) - 1) < 1e-12
        assert np.abs(a @ a - a).max() < 1e-12
    for b in range(d + 1):
        assert np.abs(A[b * d : (b + 1) * d].sum(axis=0) - eye).max() < 1e-12
    assert np.abs(A.sum(axis=0) - (d + 1) * eye).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_trace_table(d):
    A = all_point_operators(d)
    gram = np.einsum("iab,jba->ij", A, A)
    col = np.repeat(np.arange(d + 1), d)
    expected = np.where(col[:, None] == col[None, :], 0.0, 1 / d)
    np.fill_diagonal(expected, 1.0)
    assert np.abs(gram - expected).max() < 1e-12


def test_stack_order_matches_point_operator():
    d = 5
    A = all_point_operators(d)
    for b in range(-1, d):
        for m in range(d):
            assert np.array_equal(A[(b + 1) * d + m], point_operator(Point(m, b), d))
