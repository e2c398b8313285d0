import pytest

from tracelab.chains import (ChainComplexWindow, MulticomplexWindow,
                             acyclic_length_two, cone, single_term, tensor,
                             totalize, truncate)
from tracelab.errors import IndeterminateTruncationError, InvalidComplexError
from tracelab.linalg import FieldSpec, SparseMatrix

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def periodic_tate_z2(lo, hi, open_below=True, open_above=True):
    """The 2-periodic Z/2 Tate complex over F_2: all terms k, all maps 0."""
    dims = {n: 1 for n in range(lo, hi + 1)}
    return ChainComplexWindow(F2, lo, hi, dims, {},
                              open_below=open_below, open_above=open_above)


def test_acyclic_identity_complex():
    c = acyclic_length_two(F3)
    assert c.homology_dims() == {0: 0, 1: 0}


def test_zero_differentials():
    c = ChainComplexWindow(F3, 0, 2, {0: 2, 1: 3, 2: 1}, {})
    assert c.homology_dims() == {0: 2, 1: 3, 2: 1}


def test_three_term_direct():
    # F_2 -> F_2 -> F_2 in degrees 2,1,0, maps id then 0
    c = ChainComplexWindow(F2, 0, 2, {0: 1, 1: 1, 2: 1},
                           {2: SparseMatrix.identity(1, F2)})
    assert c.homology_dims() == {0: 1, 1: 0, 2: 0}


def test_d_squared_checked():
    one = SparseMatrix.identity(1, F2)
    with pytest.raises(InvalidComplexError):
        ChainComplexWindow(F2, 0, 2, {0: 1, 1: 1, 2: 1}, {1: one, 2: one})


def test_open_window_marks_edges():
    c = periodic_tate_z2(-2, 4)
    dims = c.homology_dims()
    assert -2 not in dims and 4 not in dims
    assert all(dims[n] == 1 for n in range(-1, 4))
    # closed window reports everything
    c2 = periodic_tate_z2(-2, 4, open_below=False, open_above=False)
    assert set(c2.homology_dims()) == set(range(-2, 5))


def test_totalize_single_entry():
    mc = MulticomplexWindow(F2, 2, [(0, 3), (0, 3)], {(1, 2): 5}, [{}, {}])
    t = totalize(mc)
    assert t.dim(3) == 5 and t.homology_dims()[3] == 5


def test_totalize_matches_hand_rolled():
    # 2-periodic Z/2-Tate column (all k, zero maps, degrees 0..4) paired
    # with the constant simplicial row over F_2 (k in degrees 0..3 with
    # alternating-sum differentials 0, id, 0).
    col_dims = {(0, j): 1 for j in range(5)}
    row_dims = {(i, 0): 1 for i in range(4)}
    dims = {}
    for i in range(4):
        for j in range(5):
            dims[(i, j)] = 1
    one = SparseMatrix.identity(1, F2)
    # row differential d_i: alternating sum of i+1 face maps: 0 if i odd, id if i even
    d_row = {}
    for i in range(1, 4):
        for j in range(5):
            if i % 2 == 0:
                d_row[(i, j)] = one
    mc = MulticomplexWindow(F2, 2, [(0, 3), (0, 4)], dims, [d_row, {}])
    t = totalize(mc)
    # hand-rolled total: term dims are antidiagonal counts
    expect_dims = {m: len([1 for i in range(4) for j in range(5) if i + j == m])
                   for m in range(8)}
    assert all(t.dim(m) == expect_dims[m] for m in range(8))
    # row homology survives at i=0 and at the truncation edge i=3
    h = t.homology_dims()
    expect_h = {m: len([1 for i in (0, 3) for j in range(5) if i + j == m])
                for m in range(8)}
    assert h == expect_h


def test_tensor_of_acyclic_is_acyclic():
    c = tensor(acyclic_length_two(F2), acyclic_length_two(F2))
    assert all(v == 0 for v in c.homology_dims().values())
    c3 = tensor(acyclic_length_two(F3), acyclic_length_two(F3))
    assert all(v == 0 for v in c3.homology_dims().values())


def test_truncate_above_of_tate():
    c = periodic_tate_z2(-3, 5)
    t = truncate(c, "at-or-above", 0)
    h = t.homology_dims()
    # homology F_2 in every degree >= 0 within window (edge 5 indeterminate)
    assert all(h[n] == 1 for n in range(0, 5))
    assert 5 in t.indeterminate_degrees()


def test_truncate_noop_on_nonnegative_support():
    c = ChainComplexWindow(F2, 0, 3, {0: 1, 1: 2, 2: 2, 3: 1},
                           {2: SparseMatrix.from_dense([[1, 0], [0, 0]], F2)})
    t = truncate(c, "at-or-above", 0)
    assert t.homology_dims() == c.homology_dims()


def test_truncate_both_sides_concentrates():
    c = ChainComplexWindow(F3, 0, 3, {0: 1, 1: 2, 2: 2, 3: 1},
                           {2: SparseMatrix.from_dense([[1, 0], [0, 0]], F3)})
    h = c.homology_dims()
    for n in range(4):
        piece = truncate(truncate(c, "at-or-above", n), "at-or-below", n)
        ph = piece.homology_dims()
        assert ph[n] == h[n]
        assert all(v == 0 for m, v in ph.items() if m != n)


def test_truncate_open_edge_raises():
    c = periodic_tate_z2(-3, 5)
    with pytest.raises(IndeterminateTruncationError):
        truncate(c, "at-or-below", 5)


def test_euler_characteristic():
    c = ChainComplexWindow(F3, 0, 3, {0: 2, 1: 3, 2: 4, 3: 1},
                           {2: SparseMatrix.from_dense(
                               [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]], F3)})
    h = c.homology_dims()
    assert c.euler_characteristic() == sum((-1) ** n * v for n, v in h.items())


def test_cone_of_identity_acyclic():
    c = ChainComplexWindow(F2, 0, 2, {0: 1, 1: 2, 2: 1},
                           {2: SparseMatrix.from_dense([[1], [0]], F2)})
    ident = {n: SparseMatrix.identity(c.dim(n), F2) for n in c.degrees()}
    cn = cone(ident, c, c)
    assert all(v == 0 for v in cn.homology_dims().values())


def test_shift_homology():
    c = ChainComplexWindow(F2, 0, 2, {0: 1, 1: 2, 2: 1},
                           {2: SparseMatrix.from_dense([[1], [0]], F2)})
    h = c.homology_dims()
    hs = c.shift(1).homology_dims()
    assert all(hs[n + 1] == h[n] for n in h)
