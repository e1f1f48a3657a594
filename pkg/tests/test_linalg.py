import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from zigrank import linalg as la


@st.composite
def matrices(draw, max_rows=5, max_cols=5, fields=(2, 3, 5)):
    p = draw(st.sampled_from(fields))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return m, p


def span_size(m, p):
    rows = [tuple(r) for r in m]
    seen = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = np.zeros(m.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = (v + c * np.array(r, dtype=np.int64)) % p
        seen.add(tuple(v))
    return len(seen)


@given(matrices(max_rows=4, max_cols=4, fields=(2, 3)))
def test_rank_matches_span_count(mp):
    m, p = mp
    r = la.rank(m, p)
    if m.shape[1] == 0:
        assert r == 0
    else:
        assert p**r == span_size(m, p)


@given(matrices())
def test_kernel_is_kernel(mp):
    m, p = mp
    k = la.kernel_basis(m, p)
    assert k.shape == (m.shape[1], m.shape[1] - la.rank(m, p))
    assert not la.matmul(m, k, p).any()
    assert la.rank(k, p) == k.shape[1]


@given(matrices())
def test_image_basis_spans_column_space(mp):
    m, p = mp
    im = la.image_basis(m, p)
    assert im.shape[1] == la.rank(m, p)
    if m.size:
        assert la.rank(np.hstack([im, m]), p) == im.shape[1]


@given(matrices(), st.data())
def test_solve_consistent_systems(mp, data):
    m, p = mp
    x = data.draw(arrays(np.int64, (m.shape[1],), elements=st.integers(0, p - 1)))
    b = la.matmul(m, x.reshape(-1, 1), p).ravel()
    sol = la.solve(m, b, p)
    assert sol is not None
    assert la.equal(la.matmul(m, np.asarray(sol).reshape(-1, 1), p).ravel(), b, p)


def test_solve_inconsistent():
    assert la.solve(np.array([[1, 0], [1, 0]]), np.array([0, 1]), 2) is None


@given(matrices())
def test_quotient_map_and_right_inverse(mp):
    S, p = mp
    n = S.shape[0]
    Q = la.quotient_map(n, S, p)
    assert Q.shape == (n - la.rank(S, p), n)
    assert not la.matmul(Q, S, p).any()
    R = la.right_inverse(Q, p)
    assert la.equal(la.matmul(Q, R, p), la.identity(Q.shape[0]), p)


@given(st.integers(1, 4), st.sampled_from([2, 3, 7]), st.integers(0, 10**6))
def test_inverse(n, p, seed):
    rng = np.random.default_rng(seed)
    while True:
        m = rng.integers(0, p, size=(n, n))
        if la.rank(m, p) == n:
            break
    inv = la.inverse(m, p)
    assert la.equal(la.matmul(m, inv, p), la.identity(n), p)


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        la.inverse(np.array([[1, 1], [1, 1]]), 2)


def test_rref_pivots():
    R, piv = la.rref(np.array([[0, 1, 1], [0, 2, 0]]), 3)
    assert piv == [1, 2]
    assert la.equal(R, np.array([[0, 1, 0], [0, 0, 1]]), 3)


def test_prime_checks():
    assert la.is_prime(2) and la.is_prime(13)
    assert not la.is_prime(1) and not la.is_prime(9)
    with pytest.raises(ValueError):
        la.check_prime(4)


def test_as_matrix_reduces_and_checks_shape():
    m = la.as_matrix([[-1, 4]], 3)
    assert m.tolist() == [[2, 1]]
    with pytest.raises(ValueError):
        la.as_matrix([[1, 2]], 3, shape=(2, 1))


def test_block_diag():
    b = la.block_diag([np.array([[1]]), la.zeros(0, 0), np.array([[1, 1]])])
    assert b.tolist() == [[1, 0, 0], [0, 1, 1]]
