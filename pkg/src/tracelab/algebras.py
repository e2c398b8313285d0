"""Finite-dimensional unital associative F_p-algebras and their bimodules.

An algebra is presented by a basis, structure constants and a unit vector;
associativity, unitality and the bimodule axioms are verified exhaustively
on basis elements at construction.
"""

from .errors import MalformedMatrixError
from .linalg import FieldSpec, SparseMatrix


class AlgebraSpec:
    """Unital associative algebra over F_p with a distinguished basis.

    mul[i][j] is the product of basis elements i and j as a dict
    {basis index: coefficient}; unit is a dict for the unit element.
    """

    def __init__(self, field, basis, mul, unit, name=None):
        self.field = field
        self.basis = list(basis)
        self.dim = len(self.basis)
        p = field.p
        self.mul = [[{k: v % p for k, v in mul[i][j].items() if v % p}
                     for j in range(self.dim)] for i in range(self.dim)]
        self.unit = {k: v % p for k, v in unit.items() if v % p}
        self.name = name or "A"
        self._verify()

    def _verify(self):
        p = self.field.p
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self._mul_elem(self.mul[i][j], {k: 1})
                    rhs = self._mul_elem({i: 1}, self.mul[j][k])
                    if lhs != rhs:
                        raise MalformedMatrixError(
                            "associativity fails on basis (%d,%d,%d)" % (i, j, k))
        for i in range(self.dim):
            if self._mul_elem(self.unit, {i: 1}) != {i: 1} or \
               self._mul_elem({i: 1}, self.unit) != {i: 1}:
                raise MalformedMatrixError("unit fails on basis %d" % i)

    def _mul_elem(self, x, y):
        p = self.field.p
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul[i][j].items():
                    out[k] = (out.get(k, 0) + a * b * c) % p
        return {k: v for k, v in out.items() if v}

    def multiply(self, x, y):
        return self._mul_elem(x, y)

    def left_mult_matrix(self, i):
        """Matrix of left multiplication by basis element i."""
        ent = {}
        for j in range(self.dim):
            for k, v in self.mul[i][j].items():
                ent[(k, j)] = v
        return SparseMatrix(self.dim, self.dim, ent, self.field)

    def right_mult_matrix(self, i):
        ent = {}
        for j in range(self.dim):
            for k, v in self.mul[j][i].items():
                ent[(k, j)] = v
        return SparseMatrix(self.dim, self.dim, ent, self.field)

    def mult_map(self):
        """Multiplication A (x) A -> A as a matrix (Kronecker ordering)."""
        ent = {}
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self.mul[i][j].items():
                    ent[(k, i * self.dim + j)] = v
        return SparseMatrix(self.dim, self.dim * self.dim, ent, self.field)

    def unit_vector(self):
        return SparseMatrix(self.dim, 1, {(k, 0): v for k, v in self.unit.items()},
                            self.field)


class BimoduleSpec:
    """A bimodule over an AlgebraSpec, with actions given per basis element."""

    def __init__(self, algebra, dim, left, right, name=None):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.left = list(left)    # left[i]: matrix of basis element i acting
        self.right = list(right)  # right[i]: matrix of right action
        self.name = name or "M"
        self._verify()

    def _verify(self):
        A = self.algebra
        ident = SparseMatrix.identity(self.dim, self.field)

        def act(side, elem):
            out = SparseMatrix.zero(self.dim, self.dim, self.field)
            for i, c in elem.items():
                out = out + side[i].scale(c)
            return out

        assert act(self.left, A.unit) == ident, "left unit fails"
        assert act(self.right, A.unit) == ident, "right unit fails"
        for i in range(A.dim):
            for j in range(A.dim):
                lij = act(self.left, A.mul[i][j])
                if self.left[i] @ self.left[j] != lij:
                    raise MalformedMatrixError("left action not associative")
                rij = act(self.right, A.mul[i][j])
                if self.right[j] @ self.right[i] != rij:
                    raise MalformedMatrixError("right action not associative")
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    raise MalformedMatrixError("left/right actions do not commute")

    @classmethod
    def diagonal(cls, algebra):
        """The algebra as a bimodule over itself."""
        left = [algebra.left_mult_matrix(i) for i in range(algebra.dim)]
        right = [algebra.right_mult_matrix(i) for i in range(algebra.dim)]
        return cls(algebra, algebra.dim, left, right, name=algebra.name)


# -- stock algebras ---------------------------------------------------

def field_algebra(field):
    return AlgebraSpec(field, ["1"], [[{0: 1}]], {0: 1}, name="F_%d" % field.p)


def dual_numbers(field):
    """k[eps]/eps^2 with basis (1, eps)."""
    mul = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    return AlgebraSpec(field, ["1", "e"], mul, {0: 1}, name="F_%d[e]/e^2" % field.p)


def group_algebra(field, elements, mult):
    """k[G] for a finite group given by a multiplication function."""
    idx = {g: i for i, g in enumerate(elements)}
    mul = [[{idx[mult(g, h)]: 1} for h in elements] for g in elements]
    ident = next(g for g in elements if all(mult(g, h) == h for h in elements))
    return AlgebraSpec(field, list(elements), mul, {idx[ident]: 1},
                       name="F_%d[G]" % field.p)


def cyclic_group_algebra(field, n):
    return group_algebra(field, list(range(n)), lambda a, b: (a + b) % n)


def product_algebra(a, b):
    """a x b with componentwise operations."""
    assert a.field.p == b.field.p
    basis = ["%s|0" % s for s in a.basis] + ["%s|1" % s for s in b.basis]
    da = a.dim
    dim = da + b.dim
    mul = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(da):
        for j in range(da):
            mul[i][j] = dict(a.mul[i][j])
    for i in range(b.dim):
        for j in range(b.dim):
            mul[da + i][da + j] = {da + k: v for k, v in b.mul[i][j].items()}
    unit = dict(a.unit)
    unit.update({da + k: v for k, v in b.unit.items()})
    return AlgebraSpec(a.field, basis, mul, unit,
                       name="%s x %s" % (a.name, b.name))


def tensor_algebra(a, b):
    """a (x)_k b with basis ordered a-major."""
    assert a.field.p == b.field.p
    p = a.field.p
    dim = a.dim * b.dim
    basis = ["%s*%s" % (s, t) for s in a.basis for t in b.basis]
    mul = [[{} for _ in range(dim)] for _ in range(dim)]
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    prod = {}
                    for k1, v1 in a.mul[i1][i2].items():
                        for k2, v2 in b.mul[j1][j2].items():
                            prod[k1 * b.dim + k2] = (v1 * v2) % p
                    mul[i1 * b.dim + j1][i2 * b.dim + j2] = prod
    unit = {}
    for k1, v1 in a.unit.items():
        for k2, v2 in b.unit.items():
            unit[k1 * b.dim + k2] = (v1 * v2) % p
    return AlgebraSpec(a.field, basis, mul, unit,
                       name="%s (x) %s" % (a.name, b.name))
