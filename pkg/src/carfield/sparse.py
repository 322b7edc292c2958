"""Sparse complex linear algebra substrate.

Operators are scipy CSR matrices with complex128 entries; states are dense
1-d numpy arrays (state dimensions stay below the cap, so dense vectors are
cheaper than hash maps and keep inner products exact-order deterministic).
All index flattening is row-major: kron(A, B) places B-blocks inside A,
index = i_A * dim_B + i_B.  Higher layers must never roll their own
flattening.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm as _dense_expm

from .errors import ShapeError, SizeCapError

# entries with |value| below this are dropped; below double-precision noise
# for the O(1)-normalized matrices used throughout
DROP_TOL = 1e-14

# hard cap on any constructed operator dimension: (16*M)^N must stay under this
MAX_DIM = 2**20

# largest dimension for which a dense matrix exponential is attempted
DENSE_EXP_LIMIT = 4096

SparseOperator = sp.csr_matrix


def asoperator(a) -> SparseOperator:
    """Coerce a dense or sparse matrix to pruned complex CSR."""
    m = sp.csr_matrix(a, dtype=np.complex128)
    return prune(m)


def prune(a: SparseOperator, tol: float = DROP_TOL) -> SparseOperator:
    a = a.tocsr()
    if a.nnz:
        a.data[np.abs(a.data) < tol] = 0
        a.eliminate_zeros()
    return a


def identity(dim: int) -> SparseOperator:
    return sp.identity(dim, dtype=np.complex128, format="csr")


def zeros(dim_row: int, dim_col: int | None = None) -> SparseOperator:
    return sp.csr_matrix((dim_row, dim_col if dim_col is not None else dim_row), dtype=np.complex128)


def tensor_product(a: SparseOperator, b: SparseOperator, max_dim: int = MAX_DIM) -> SparseOperator:
    out_rows = a.shape[0] * b.shape[0]
    out_cols = a.shape[1] * b.shape[1]
    if out_rows > max_dim or out_cols > max_dim:
        raise SizeCapError(
            f"tensor product of {a.shape} and {b.shape} exceeds cap {max_dim}"
        )
    return prune(sp.kron(a, b, format="csr"))


def tensor_many(*ops: SparseOperator, max_dim: int = MAX_DIM) -> SparseOperator:
    out = ops[0].tocsr()
    for op in ops[1:]:
        out = tensor_product(out, op, max_dim=max_dim)
    return out


def adjoint(a: SparseOperator) -> SparseOperator:
    return a.conj().T.tocsr()


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _check_square_pair(a, b)
    return prune(a @ b - b @ a)


def anticommutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _check_square_pair(a, b)
    return prune(a @ b + b @ a)


def _check_square_pair(a: SparseOperator, b: SparseOperator) -> None:
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise ShapeError(f"square operators required, got {a.shape} and {b.shape}")
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matrix_exponential(a: SparseOperator) -> SparseOperator:
    """e^A via dense scaling-and-squaring; matrices here are small by contract."""
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"matrix_exponential needs a square matrix, got {a.shape}")
    if a.shape[0] > DENSE_EXP_LIMIT:
        raise SizeCapError(
            f"dense exponential limited to dim {DENSE_EXP_LIMIT}, got {a.shape[0]}"
        )
    dense = a.toarray() if sp.issparse(a) else np.asarray(a, dtype=np.complex128)
    return asoperator(_dense_expm(dense))


def apply_operator(a: SparseOperator, v: np.ndarray) -> np.ndarray:
    if a.shape[1] != v.shape[0]:
        raise ShapeError(f"operator {a.shape} cannot act on state of dim {v.shape[0]}")
    out = a @ v
    out = np.asarray(out).reshape(-1)
    out[np.abs(out) < DROP_TOL] = 0
    return out


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    if u.shape != v.shape:
        raise ShapeError(f"state dims differ: {u.shape} vs {v.shape}")
    return complex(np.vdot(u, v))


def basis_state(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


def max_abs(a) -> float:
    """Largest entry magnitude of an operator, state, or residual."""
    if sp.issparse(a):
        return float(np.abs(a.data).max()) if a.nnz else 0.0
    arr = np.asarray(a)
    return float(np.abs(arr).max()) if arr.size else 0.0


def spectral_norm(a: SparseOperator) -> float:
    if a.shape[0] > DENSE_EXP_LIMIT or a.shape[1] > DENSE_EXP_LIMIT:
        raise SizeCapError("spectral norm computed densely; dimension too large")
    dense = a.toarray() if sp.issparse(a) else np.asarray(a)
    if dense.size == 0:
        return 0.0
    return float(np.linalg.norm(dense, 2))
