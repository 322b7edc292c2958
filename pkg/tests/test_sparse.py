"""Substrate tests: tensor products, adjoints, exponentials, and caps."""

import numpy as np
import pytest
import scipy.linalg
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from carfield import sparse
from carfield.errors import ShapeError, SizeCapError


def _random_dense(rng, n, m=None):
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


small_complex = st.complex_numbers(
    max_magnitude=5, allow_nan=False, allow_infinity=False
)


def matrices(n):
    return st.lists(small_complex, min_size=n * n, max_size=n * n).map(
        lambda vals: np.array(vals, dtype=np.complex128).reshape(n, n)
    )


def test_asoperator_prunes_noise():
    a = np.array([[1.0, 1e-16], [0.0, 2.0]])
    op = sparse.asoperator(a)
    assert op.nnz == 2
    assert op[0, 1] == 0


def test_tensor_product_matches_numpy(rng):
    a = _random_dense(rng, 3)
    b = _random_dense(rng, 4)
    got = sparse.tensor_product(sparse.asoperator(a), sparse.asoperator(b))
    np.testing.assert_allclose(got.toarray(), np.kron(a, b), atol=1e-14)


def test_tensor_flattening_is_row_major():
    # kron(A, B) must put B-blocks inside A: index = i_A * dim_B + i_B
    a = sparse.asoperator(np.array([[0, 1], [0, 0]]))
    b = sparse.identity(3)
    out = sparse.tensor_product(a, b)
    v = sparse.basis_state(6, 3 + 2)  # i_A = 1, i_B = 2
    moved = sparse.apply_operator(out, v)
    np.testing.assert_array_equal(moved, sparse.basis_state(6, 2))


def test_tensor_product_cap():
    big = sparse.identity(2048)
    with pytest.raises(SizeCapError):
        sparse.tensor_product(big, big)
    assert sparse.tensor_product(big, big, max_dim=2**22).shape == (2**22, 2**22)


def test_tensor_many_associates(rng):
    mats = [sparse.asoperator(_random_dense(rng, 2)) for _ in range(3)]
    left = sparse.tensor_product(sparse.tensor_product(mats[0], mats[1]), mats[2])
    assert sparse.max_abs(sparse.tensor_many(*mats) - left) < 1e-14


@settings(max_examples=25, deadline=None)
@given(a=matrices(2), b=matrices(2), c=matrices(2), d=matrices(2))
def test_tensor_product_is_multiplicative(a, b, c, d):
    # (A x B)(C x D) = AC x BD
    lhs = sparse.tensor_product(sparse.asoperator(a), sparse.asoperator(b)) @ (
        sparse.tensor_product(sparse.asoperator(c), sparse.asoperator(d))
    )
    rhs = sparse.tensor_product(
        sparse.asoperator(a @ c), sparse.asoperator(b @ d)
    )
    assert sparse.max_abs(lhs - rhs) < 1e-9 * max(1.0, sparse.max_abs(rhs))


def test_adjoint(rng):
    a = _random_dense(rng, 3, 5)
    got = sparse.adjoint(sparse.asoperator(a))
    np.testing.assert_allclose(got.toarray(), a.conj().T, atol=1e-14)


def test_commutators(rng):
    a = sparse.asoperator(_random_dense(rng, 4))
    b = sparse.asoperator(_random_dense(rng, 4))
    comm = sparse.commutator(a, b).toarray()
    anti = sparse.anticommutator(a, b).toarray()
    np.testing.assert_allclose(comm + anti, 2 * (a @ b).toarray(), atol=1e-12)
    np.testing.assert_allclose(anti - comm, 2 * (b @ a).toarray(), atol=1e-12)


def test_commutator_shape_errors():
    a = sparse.identity(2)
    b = sparse.identity(3)
    with pytest.raises(ShapeError):
        sparse.commutator(a, b)
    with pytest.raises(ShapeError):
        sparse.anticommutator(sparse.zeros(2, 3), sparse.zeros(2, 3))


def test_matrix_exponential_matches_scipy(rng):
    a = _random_dense(rng, 6)
    got = sparse.matrix_exponential(sparse.asoperator(a)).toarray()
    np.testing.assert_allclose(got, scipy.linalg.expm(a), atol=1e-11)


def test_matrix_exponential_guards():
    with pytest.raises(ShapeError):
        sparse.matrix_exponential(sparse.zeros(2, 3))
    with pytest.raises(SizeCapError):
        sparse.matrix_exponential(sparse.identity(sparse.DENSE_EXP_LIMIT + 1))


def test_apply_operator_and_inner(rng):
    a = _random_dense(rng, 4)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    out = sparse.apply_operator(sparse.asoperator(a), v)
    np.testing.assert_allclose(out, a @ v, atol=1e-12)
    w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert sparse.inner(v, w) == pytest.approx(np.vdot(v, w))
    with pytest.raises(ShapeError):
        sparse.apply_operator(sparse.asoperator(a), np.zeros(5))
    with pytest.raises(ShapeError):
        sparse.inner(v, np.zeros(5))


def test_inner_is_conjugate_linear_in_first_slot(rng):
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    assert sparse.inner(2j * v, w) == pytest.approx(-2j * sparse.inner(v, w))


def test_basis_state():
    v = sparse.basis_state(5, 3)
    assert v[3] == 1.0 and np.count_nonzero(v) == 1


def test_max_abs_variants():
    assert sparse.max_abs(sparse.zeros(4)) == 0.0
    assert sparse.max_abs(np.array([])) == 0.0
    assert sparse.max_abs(np.array([1.0, -3.0])) == 3.0
    assert sparse.max_abs(sparse.asoperator(np.diag([2.0, -5.0]))) == 5.0


def test_spectral_norm(rng):
    a = _random_dense(rng, 5)
    assert sparse.spectral_norm(sparse.asoperator(a)) == pytest.approx(
        np.linalg.norm(a, 2)
    )
    with pytest.raises(SizeCapError):
        sparse.spectral_norm(sp.identity(sparse.DENSE_EXP_LIMIT + 1, format="csr"))
