"""The Hochschild suite for finite-dimensional unital F_p-algebras.

Hochschild homology with bimodule coefficients, the cyclic object A_#,
cyclic and periodic homology, co-periodic homology by two routes, the
p-cyclic-power trace theory and the conjugate-filtration model of THH.
"""

import itertools

from .algebras import AlgebraSpec, BimoduleSpec
from .chains import (ChainComplexWindow, homology_data,
                     induced_map_on_homology)
from .cyc import (CyclicModule, SimplicialModule, connes_B, lambda_homology,
                  mixed_to_total, normalized_complex)
from .errors import (BudgetError, UnsupportedCharacteristicError)
from .linalg import SparseMatrix, kronecker, rank_kernel_image, solve

# -- tensor-slot matrix helpers --------------------------------------------


def _mixed_radix_index(digits, dims):
    idx = 0
    for d, b in zip(digits, dims):
        idx = idx * b + d
    return idx


def _slot_multiply(field, slot_dims, i, mul_table, out_dims):
    """Matrix multiplying slots i, i+1 (a dict-of-dicts structure-constant
    table {j: {k: {l: c}}}) inside a tensor product."""
    p = field.p
    src_total = 1
    for d in slot_dims:
        src_total *= d
    tgt_total = 1
    for d in out_dims:
        tgt_total *= d
    ent = {}
    for digits in itertools.product(*[range(d) for d in slot_dims]):
        a, b = digits[i], digits[i + 1]
        prod = mul_table[a].get(b, {})
        for k, c in prod.items():
            out = digits[:i] + (k,) + digits[i + 2:]
            key = (_mixed_radix_index(out, out_dims),
                   _mixed_radix_index(digits, slot_dims))
            ent[key] = (ent.get(key, 0) + c) % p
    ent = {k: v for k, v in ent.items() if v}
    return SparseMatrix(tgt_total, src_total, ent, field)


def _rotation_matrix(field, slot_dims):
    """(x_0, ..., x_n) -> (x_n, x_0, ..., x_{n-1}), unsigned."""
    out_dims = slot_dims[-1:] + slot_dims[:-1]
    total = 1
    for d in slot_dims:
        total *= d
    ent = {}
    for digits in itertools.product(*[range(d) for d in slot_dims]):
        out = digits[-1:] + digits[:-1]
        ent[(_mixed_radix_index(out, out_dims),
             _mixed_radix_index(digits, slot_dims))] = 1
    return SparseMatrix(total, total, ent, field)


def _insert_vector(field, slot_dims, i, vec, vec_dim):
    """Insert a fixed vector as a new slot after slot i."""
    out_dims = slot_dims[:i + 1] + [vec_dim] + slot_dims[i + 1:]
    src_total = 1
    for d in slot_dims:
        src_total *= d
    tgt_total = src_total * vec_dim
    ent = {}
    for digits in itertools.product(*[range(d) for d in slot_dims]):
        for k, c in vec.items():
            out = digits[:i + 1] + (k,) + digits[i + 1:]
            ent[(_mixed_radix_index(out, out_dims),
                 _mixed_radix_index(digits, slot_dims))] = c
    return SparseMatrix(tgt_total, src_total, ent, field)


def _algebra_mul_table(A):
    return {i: {j: A.mul[i][j] for j in range(A.dim)} for i in range(A.dim)}


def _left_action_table(M):
    """{a: {m: vector}} for a in A acting on the left of M."""
    out = {}
    for a in range(M.algebra.dim):
        mat = M.left[a]
        out[a] = {m: {} for m in range(M.dim)}
        for (r, c), v in mat.entries.items():
            out[a][c][r] = v
    return out


def _right_action_table(M):
    out = {}
    for m in range(M.dim):
        out[m] = {}
        for a in range(M.algebra.dim):
            col = {}
            for (r, c), v in M.right[a].entries.items():
                if c == m:
                    col[r] = v
            out[m][a] = col
    return out


def cyclic_object(A, M=None, bound=6):
    """The cyclic module A_# (or the simplicial module (M/A)_# when a
    bimodule M is given): degree n is M (x) A^{(x) n} with multiplication
    faces, unit degeneracies and (for M = A) the cyclic rotation."""
    field = A.field
    dA = A.dim
    mul = _algebra_mul_table(A)
    if M is None:
        dims = [dA ** (n + 1) for n in range(bound + 1)]
        faces, degens, rot = {}, {}, []
        for n in range(1, bound + 1):
            slot_dims = [dA] * (n + 1)
            fl = []
            for i in range(n):
                fl.append(_slot_multiply(field, slot_dims, i, mul,
                                         [dA] * n))
            # d_n: rotate then multiply slots 0,1
            rotm = _rotation_matrix(field, slot_dims)
            fl.append(_slot_multiply(field, slot_dims, 0, mul, [dA] * n)
                      @ rotm)
            faces[n] = fl
        for n in range(bound):
            slot_dims = [dA] * (n + 1)
            degens[n] = [_insert_vector(field, slot_dims, i, A.unit, dA)
                         for i in range(n + 1)]
        for n in range(bound + 1):
            rot.append(_rotation_matrix(field, [dA] * (n + 1)))
        return CyclicModule(field, bound, dims, faces, degens, rot, order=1)
    # (M/A)_#: slot 0 carries M
    dM = M.dim
    lact = _left_action_table(M)
    dims = [dM * dA ** n for n in range(bound + 1)]
    faces, degens = {}, {}
    for n in range(1, bound + 1):
        slot_dims = [dM] + [dA] * n
        fl = []
        # d_0: right action of a_1 on m
        ent = {}
        p = field.p
        for digits in itertools.product(*[range(d) for d in slot_dims]):
            mvec = {}
            for (r, c), v in M.right[digits[1]].entries.items():
                if c == digits[0]:
                    mvec[r] = v
            for r, v in mvec.items():
                out = (r,) + digits[2:]
                key = (_mixed_radix_index(out, [dM] + [dA] * (n - 1)),
                       _mixed_radix_index(digits, slot_dims))
                ent[key] = (ent.get(key, 0) + v) % p
        fl.append(SparseMatrix(dM * dA ** (n - 1), dM * dA ** n,
                               {k: v for k, v in ent.items() if v}, field))
        for i in range(1, n):
            fl.append(_slot_multiply(field, slot_dims, i, mul,
                                     [dM] + [dA] * (n - 1)))
        # d_n: left action of a_n on m
        ent = {}
        for digits in itertools.product(*[range(d) for d in slot_dims]):
            mvec = {}
            for (r, c), v in M.left[digits[-1]].entries.items():
                if c == digits[0]:
                    mvec[r] = v
            for r, v in mvec.items():
                out = (r,) + digits[1:-1]
                key = (_mixed_radix_index(out, [dM] + [dA] * (n - 1)),
                       _mixed_radix_index(digits, slot_dims))
                ent[key] = (ent.get(key, 0) + v) % p
        fl.append(SparseMatrix(dM * dA ** (n - 1), dM * dA ** n,
                               {k: v for k, v in ent.items() if v}, field))
        faces[n] = fl
    for n in range(bound):
        slot_dims = [dM] + [dA] * n
        degens[n] = [_insert_vector(field, slot_dims, i, A.unit, dA)
                     for i in range(n + 1)]
    return SimplicialModule(field, bound, dims, faces, degens)


def hochschild(A, M=None, maxdeg=4):
    """HH_.(A, M) through maxdeg via the normalized Hochschild complex."""
    E = cyclic_object(A, M, bound=maxdeg + 1)
    nc = normalized_complex(E)
    h = nc.homology_dims()
    return {n: h[n] for n in range(maxdeg + 1)}
