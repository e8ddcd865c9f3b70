import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adjforge.ffla import DimensionError, PrimeField

from oracles import all_matrices


@st.composite
def field_and_matrix(draw, max_rows=4, max_cols=4):
    p = draw(st.sampled_from([2, 3, 5]))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return PrimeField(p), np.array(flat, dtype=np.int64).reshape(r, c)


def _image_size(F, m):
    cols = m.shape[1]
    vecs = {tuple(F.mul(m, np.array(x).reshape(-1, 1)).ravel())
            for x in itertools.product(range(F.p), repeat=cols)}
    return len(vecs)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(4)


def test_rref_identity():
    F = PrimeField(3)
    red, rank, piv = F.rref(np.eye(4, dtype=np.int64))
    assert rank == 4 and piv == (0, 1, 2, 3)
    assert np.array_equal(red, np.eye(4))


def test_kernel_of_row_one_one():
    F = PrimeField(2)
    k = F.kernel_basis([[1, 1]])
    assert k.shape == (2, 1)
    assert k[:, 0].tolist() == [1, 1]


def test_quotient_of_f2_cubed_by_first_axis():
    F = PrimeField(2)
    proj, sect = F.quotient_basis(3, [[1], [0], [0]])
    assert F.rank(proj) == 2
    assert np.array_equal(F.mul(proj, sect), np.eye(2))
    assert np.array_equal(F.kernel_basis(proj)[:, 0], [1, 0, 0])


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        PrimeField(2).solve(np.eye(2, dtype=np.int64), [1, 0, 1])


@given(field_and_matrix())
def test_rank_nullity_and_brute_rank(fm):
    F, m = fm
    r = F.rank(m)
    assert r + F.kernel_basis(m).shape[1] == m.shape[1]
    assert F.p ** r == _image_size(F, m)
    assert not np.any(F.mul(m, F.kernel_basis(m)))
    assert F.image_basis(m).shape[1] == r


@given(field_and_matrix(), st.data())
def test_solve_finds_preimages(fm, data):
    F, m = fm
    x = np.array(data.draw(st.lists(st.integers(0, F.p - 1), min_size=m.shape[1],
                                    max_size=m.shape[1])), dtype=np.int64)
    b = F.mul(m, x.reshape(-1, 1)).ravel()
    sol = F.solve(m, b)
    assert sol is not None
    assert np.array_equal(F.mul(m, sol.reshape(-1, 1)).ravel(), b)


@given(field_and_matrix(4, 4))
def test_quotient_identities(fm):
    F, w = fm
    n = w.shape[0]
    proj, sect = F.quotient_basis(n, w)
    q = n - F.rank(w)
    assert proj.shape == (q, n) and sect.shape == (n, q)
    assert np.array_equal(F.mul(proj, sect), np.eye(q))
    k = F.kernel_basis(proj)
    assert F.rank(np.hstack([k, w])) == F.rank(w) == k.shape[1]


@given(field_and_matrix(3, 3), field_and_matrix(3, 3))
def test_kron_mixed_product(x, y):
    F, a = x
    _, b = y
    b = b % F.p
    c = np.ones((a.shape[1], 2), dtype=np.int64)
    d = np.ones((b.shape[1], 2), dtype=np.int64)
    lhs = F.mul(F.kron(a, b), F.kron(c, d))
    rhs = F.kron(F.mul(a, c), F.mul(b, d))
    assert np.array_equal(lhs, rhs)


def test_direct_sum_blocks():
    F = PrimeField(5)
    s = F.direct_sum([[1, 2]], [[3], [4]])
    assert s.tolist() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]


@pytest.mark.parametrize("p,n,count", [(2, 2, 6), (2, 3, 168), (3, 2, 48)])
def test_invertible_counts(p, n, count):
    F = PrimeField(p)
    mats = np.stack(list(all_matrices(p, n, n)))
    mask = F.invertible_mask(mats)
    assert int(mask.sum()) == count
    for m, flag in zip(mats[::7], mask[::7]):
        assert flag == F.is_invertible(m)
        if flag:
            assert np.array_equal(F.mul(m, F.inverse(m)), np.eye(n))
        else:
            assert F.inverse(m) is None


def test_injective_surjective_flags():
    F = PrimeField(2)
    m = np.array([[1, 0], [0, 1], [1, 1]])
    assert F.is_injective(m) and not F.is_surjective(m)
    assert F.is_surjective(m.T) and not F.is_injective(m.T)
