from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dingpd import exactla as la
from oracles import kernel_dim, rank as brute_rank


def matrices(p: int, max_side: int = 4):
    return st.tuples(st.integers(1, max_side), st.integers(1, max_side)).flatmap(
        lambda rc: st.lists(st.integers(0, p - 1), min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)
        )
    )


@pytest.mark.parametrize("p", [2, 3])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_rank_and_nullity_match_enumeration(p, data):
    a = data.draw(matrices(p))
    assert la.rank(a, p) == brute_rank(a, p)
    ns = la.nullspace(a, p)
    assert ns.shape[1] == kernel_dim(a, p)
    assert not np.any(la.mul(a, ns, p))


@settings(max_examples=60, deadline=None)
@given(a=matrices(5, 5), b=matrices(5, 5))
def test_solve_returns_a_solution_when_one_exists(a, b):
    p = 5
    x_true = np.arange(a.shape[1] * 2, dtype=np.int64).reshape(a.shape[1], 2) % p
    rhs = la.mul(a, x_true, p)
    x = la.solve(a, rhs, p)
    assert x is not None and np.array_equal(la.mul(a, x, p), rhs)


def test_solve_reports_inconsistency():
    a = la.mat([[1, 0], [0, 0]], 2)
    assert la.solve(a, np.array([0, 1]), 2) is None


def test_rref_is_reduced_and_deterministic():
    a = la.mat([[0, 2, 4], [1, 1, 1], [2, 3, 4]], 7)
    r, piv = la.rref(a, 7)
    assert piv == [0, 1]
    assert np.array_equal(r[:, piv][:2], np.eye(2, dtype=np.int64))
    assert np.array_equal(la.rref(a, 7)[0], r)


def test_inverse_and_left_inverse():
    p = 11
    a = la.mat([[1, 2], [3, 4]], p)
    inv = la.inverse(a, p)
    assert np.array_equal(la.mul(a, inv, p), la.eye(2))
    assert la.inverse(la.mat([[1, 2], [2, 4]], p), p) is None
    b = la.mat([[1, 0], [2, 1], [5, 5]], p)
    assert np.array_equal(la.mul(la.left_inverse(b, p), b, p), la.eye(2))


def test_complement_projection():
    p = 3
    sub = la.mat([[1], [1], [0]], p)
    q, s = la.complement(sub, 3, p)
    assert q.shape == (2, 3)
    assert not np.any(la.mul(q, sub, p))
    assert np.array_equal(la.mul(q, s, p), la.eye(2))


def test_float_and_integer_products_agree():
    rng = np.random.default_rng(1)
    for p in (2, 65521):
        a = rng.integers(0, p, size=(7, 300))
        b = rng.integers(0, p, size=(300, 5))
        exact = np.array([[sum(int(x) * int(y) for x, y in zip(a[i], b[:, j])) % p for j in range(5)] for i in range(7)])
        assert np.array_equal(la.mul(a, b, p), exact)


@pytest.mark.parametrize("bad", [1, 4, 65537, 1 << 16, "3", 2.0, True])
def test_check_prime_rejects(bad):
    with pytest.raises(ValueError):
        la.check_prime(bad)


def test_fpmatrix_wraps_and_compares():
    m = la.FpMatrix(3, [[4, 5], [6, 7]])
    assert m.data.tolist() == [[1, 2], [0, 1]]
    assert m == la.FpMatrix.from_rows([[1, 2], [0, 1]], 3)
    r, k = m.rref_rank()
    assert k == 2
    ker, img = m.kernel_image()
    assert ker.cols == 0 and img.cols == 2
