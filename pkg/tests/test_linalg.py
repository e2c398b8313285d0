import random

import numpy as np
import pytest

from tracelab.errors import IncompatibleFieldError, MalformedMatrixError
from tracelab.linalg import (FieldSpec, SparseMatrix, kronecker, rank,
                             rank_kernel_image, rref, solve)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def dense_elimination_rank(a, p):
    """Independent oracle: plain Gaussian elimination on a copied array."""
    a = [list(int(x) % p for x in row) for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    rnk = 0
    for c in range(n):
        piv = next((i for i in range(rnk, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rnk], a[piv] = a[piv], a[rnk]
        inv = pow(a[rnk][c], p - 2, p)
        a[rnk] = [(v * inv) % p for v in a[rnk]]
        for i in range(m):
            if i != rnk and a[i][c]:
                f = a[i][c]
                a[i] = [(v - f * w) % p for v, w in zip(a[i], a[rnk])]
        rnk += 1
    return rnk


def random_sparse(rng, rows, cols, field, density=0.3):
    ent = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                ent[(r, c)] = rng.randrange(1, field.p)
    return SparseMatrix(rows, cols, ent, field)


def test_field_rejects_composite():
    with pytest.raises(MalformedMatrixError):
        FieldSpec(9)
    with pytest.raises(MalformedMatrixError):
        FieldSpec(1)
    FieldSpec(2147483647)  # mersenne prime below 2^31


def test_identity_rank():
    m = SparseMatrix.identity(3, F5)
    r, ker, im = rank_kernel_image(m)
    assert r == 3 and ker.dim == 0 and im.dim == 3


def test_symmetric_rank_one_f2():
    m = SparseMatrix.from_dense([[1, 1], [1, 1]], F2)
    r, ker, im = rank_kernel_image(m)
    assert r == 1
    assert ker.basis == [{0: 1, 1: 1}]


def test_random_rank_matches_dense_oracle():
    rng = random.Random(20260809)
    for _ in range(25):
        m = random_sparse(rng, 6, 9, F3)
        assert rank(m) == dense_elimination_rank(m.to_dense(), 3)


def test_rank_nullity_and_determinism():
    rng = random.Random(7)
    for _ in range(20):
        m = random_sparse(rng, 8, 5, F5, 0.4)
        r1, k1, i1 = rank_kernel_image(m)
        r2, k2, i2 = rank_kernel_image(m)
        assert r1 + k1.dim == m.cols
        assert k1.basis == k2.basis and i1.basis == i2.basis


def test_sparse_dense_paths_bit_identical():
    rng = random.Random(99)
    for _ in range(15):
        m = random_sparse(rng, 7, 7, F3, 0.35)
        assert rref(m) == rref(m, force_sparse=True)


def test_out_of_range_entry():
    with pytest.raises(MalformedMatrixError):
        SparseMatrix(2, 2, {(2, 0): 1}, F2)


def test_kronecker_identities():
    assert kronecker(SparseMatrix.identity(2, F3),
                     SparseMatrix.identity(3, F3)) == SparseMatrix.identity(6, F3)
    z = SparseMatrix.zero(1, 1, F3)
    m = SparseMatrix.from_dense([[1, 2], [0, 1]], F3)
    assert kronecker(z, m).is_zero()
    assert kronecker(z, m).rows == 2 and kronecker(z, m).cols == 2


def test_kronecker_rank_product():
    rng = random.Random(3)
    for _ in range(10):
        a = random_sparse(rng, 3, 3, F2, 0.5)
        b = random_sparse(rng, 3, 3, F2, 0.5)
        assert rank(kronecker(a, b)) == rank(a) * rank(b)


def test_kronecker_field_mismatch():
    with pytest.raises(IncompatibleFieldError):
        kronecker(SparseMatrix.identity(2, F2), SparseMatrix.identity(2, F3))


def test_composition_rank_bound():
    rng = random.Random(11)
    for _ in range(15):
        a = random_sparse(rng, 5, 6, F3, 0.4)
        b = random_sparse(rng, 6, 4, F3, 0.4)
        assert rank(a @ b) <= min(rank(a), rank(b))


def test_matmul_against_numpy():
    rng = random.Random(17)
    for _ in range(10):
        a = random_sparse(rng, 4, 5, F5, 0.5)
        b = random_sparse(rng, 5, 3, F5, 0.5)
        assert np.array_equal((a @ b).to_dense(),
                              a.to_dense() @ b.to_dense() % 5)


def test_solve():
    rng = random.Random(23)
    for _ in range(10):
        a = random_sparse(rng, 6, 4, F3, 0.5)
        x = random_sparse(rng, 4, 2, F3, 0.6)
        b = a @ x
        y = solve(a, b)
        assert y is not None and a @ y == b
    # inconsistent system
    a = SparseMatrix.from_dense([[1, 0], [1, 0]], F3)
    b = SparseMatrix.from_dense([[1], [2]], F3)
    assert solve(a, b) is None
