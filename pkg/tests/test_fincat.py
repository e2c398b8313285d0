import pytest

from tracelab.errors import InvalidProjectionError
from tracelab.fincat import (BiRepresentation, FinCat, Representation,
                             bifunctor_homology, box_product, coend_trace,
                             derived_tensor, functor_homology,
                             homology_with_support, interval_category,
                             one_object_monoid, point_category,
                             pullback_bifunctor, resolve_by_representables,
                             twisted_arrow)
from tracelab.linalg import FieldSpec, SparseMatrix

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def z2_category():
    return one_object_monoid([0, 1], lambda a, b: (a + b) % 2, 0)


def z3_category():
    return one_object_monoid([0, 1, 2], lambda a, b: (a + b) % 3, 0)


def cospan_category():
    """0 -> 2 <- 1, with 2 terminal."""
    # morphisms: id0, id1, id2, a:0->2, b:1->2
    comp = {(0, 0): 0, (1, 1): 1, (2, 2): 2,
            (3, 0): 3, (2, 3): 3, (4, 1): 4, (2, 4): 4}
    return FinCat([0, 1, 2], [0, 1, 2, 0, 1], [0, 1, 2, 2, 2], comp,
                  [0, 1, 2], ["id0", "id1", "id2", "a", "b"])


def test_coend_trace_point():
    pt = point_category()
    M = BiRepresentation.from_blocks(
        pt, F3, lambda i, j: 2, lambda m1, m2: SparseMatrix.identity(2, F3))
    dim, _ = coend_trace(M)
    assert dim == 2


def test_coend_trace_representable_box():
    # M = k_i box N  =>  Tr = N(i)   (Yoneda)
    cat = cospan_category()
    op = cat.op()
    for i in range(3):
        k_i = Representation.representable(op, i, F2)  # contravariant rep
        N = Representation.representable(cat, 0, F2)   # some covariant functor
        M = box_product(cat, k_i, N)
        dim, _ = coend_trace(M)
        assert dim == N.dims[i]


def test_coend_trace_commutative_group_algebra():
    # one-object F_2-linearization of A = F_2[Z/2]: Tr_A(A) = A  (dim 2).
    # The plain-category coend over BG with the diagonal bifunctor computes
    # k[G]/[spanned by gh - hg] which for abelian G is k[G] itself.
    cat = z2_category()
    A = Representation(cat, F2, [2],
                       {0: SparseMatrix.identity(2, F2),
                        1: SparseMatrix.from_dense([[0, 1], [1, 0]], F2)})
    # bifunctor M(i,j) = A with M(g^o x h) acting by a -> h a g
    def block(m1, m2):
        ms = {0: SparseMatrix.identity(2, F2),
              1: SparseMatrix.from_dense([[0, 1], [1, 0]], F2)}
        return ms[m2] @ ms[m1]
    M = BiRepresentation.from_blocks(cat, F2, lambda i, j: 2, block)
    dim, _ = coend_trace(M)
    assert dim == 2


def test_functor_homology_terminal_object():
    cat = cospan_category()
    M = Representation.representable(cat, 1, F3)
    dims, _, _ = functor_homology(cat, M, 3)
    assert dims == {0: M.dims[2], 1: 0, 2: 0, 3: 0}


def test_functor_homology_z2_trivial():
    cat = z2_category()
    M = Representation.constant(cat, F2)
    dims, _, _ = functor_homology(cat, M, 5)
    assert dims == {n: 1 for n in range(6)}


def test_functor_homology_representable():
    cat = cospan_category()
    for i in range(3):
        M = Representation.representable(cat, i, F2)
        dims, _, _ = functor_homology(cat, M, 3)
        assert dims == {0: 1, 1: 0, 2: 0, 3: 0}


def test_full_vs_minimal_cover_agree():
    cat = z2_category()
    M = Representation.constant(cat, F2)
    d1, _, _ = functor_homology(cat, M, 3, minimal=True)
    d2, _, _ = functor_homology(cat, M, 3, minimal=False)
    assert d1 == d2


def test_bifunctor_homology_pullback_is_functor_homology():
    for cat in (cospan_category(), interval_category(), z2_category()):
        M = Representation.constant(cat, F2)
        bi = pullback_bifunctor(cat, M)
        d1 = bifunctor_homology(cat, bi, 3)
        d2, _, _ = functor_homology(cat, M, 3)
        assert d1 == d2, cat


def test_bifunctor_homology_point():
    pt = point_category()
    M = BiRepresentation.from_blocks(
        pt, F3, lambda i, j: 4, lambda m1, m2: SparseMatrix.identity(4, F3))
    dims = bifunctor_homology(pt, M, 2)
    assert dims == {0: 4, 1: 0, 2: 0}


def test_derived_tensor_yoneda():
    cat = cospan_category()
    op = cat.op()
    M = Representation.representable(cat, 0, F3)
    for i in range(3):
        k_i = Representation.representable(op, i, F3)
        dims = derived_tensor(cat, k_i, M, 2)
        assert dims == {0: M.dims[i], 1: 0, 2: 0}


def test_derived_tensor_group_homology():
    cat = z2_category()
    N = Representation.constant(cat.op(), F2)
    M = Representation.constant(cat, F2)
    dims = derived_tensor(cat, N, M, 4)
    assert dims == {n: 1 for n in range(5)}
    # symmetric in the resolved side
    dims2 = derived_tensor(cat.op(), M, N, 4)
    assert dims2 == dims


def test_derived_tensor_zero():
    cat = cospan_category()
    N = Representation.zero(cat.op(), F2)
    M = Representation.constant(cat, F2)
    assert derived_tensor(cat, N, M, 3) == {n: 0 for n in range(4)}


def test_homology_with_support_empty_zero_part():
    cat = cospan_category()
    E = Representation.constant(cat, F2)
    dims = homology_with_support(cat, [1, 1, 1], E, 3)
    ref, _, _ = functor_homology(cat, E, 3)
    assert dims == ref


def test_homology_with_support_interval():
    cat = interval_category()
    E = Representation.constant(cat, F2)
    dims = homology_with_support(cat, [0, 1], E, 3)
    assert dims == {n: 0 for n in range(4)}


def test_homology_with_support_triangle_consistency():
    cat = cospan_category()
    E = Representation.representable(cat, 0, F3)
    dims, sub_cx, full_cx, cn = homology_with_support(
        cat, [0, 0, 1], E, 3, return_triangle=True)
    h0 = sub_cx.homology_dims()
    h1 = full_cx.homology_dims()
    hc = cn.homology_dims()
    # Euler relation for the cone over the stable range
    for n in range(3):
        assert hc[n] - h1[n] - h0.get(n - 1, 0) <= 0
    tot = sum((-1) ** n * (hc[n] - h1[n] - h0.get(n - 1, 0))
              for n in range(4))
    # the long exact sequence forces the alternating sums to cancel up to
    # boundary terms at the window edge
    assert abs(tot) <= max(h0.get(3, 0), 1)


def test_homology_with_support_bad_chi():
    cat = interval_category()
    E = Representation.constant(cat, F2)
    with pytest.raises(InvalidProjectionError):
        homology_with_support(cat, [1, 0], E, 2)


def test_twisted_arrow_of_interval():
    cat = interval_category()
    tw, _, _ = twisted_arrow(cat)
    # objects: id0, id1, the arrow; maps: tw([1]) has 3 objects
    assert tw.n_obj == 3


def test_resolution_soundness():
    # exactness of every step: ranks of consecutive differentials add up
    cat = z3_category()
    M = Representation.constant(cat, F3)
    dims, cx, res = functor_homology(cat, M, 4)
    # H_{>0}(Z/3, F_3-trivial)... wait |G| = 3 = p, not invertible: nontrivial
    assert dims[0] == 1
    for n in range(1, 4):
        assert dims[n] == 1  # Z/p group homology over F_p


def test_group_homology_invertible_order():
    # H_{>0}(Z/3, F_2) = 0 since |G| is invertible in F_2
    cat = z3_category()
    M = Representation.constant(cat, F2)
    dims, _, _ = functor_homology(cat, M, 4)
    assert dims == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}
