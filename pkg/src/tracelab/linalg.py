"""Exact sparse linear algebra over a prime field F_p.

Everything in the package reduces to the eliminations in this module.
Matrices are stored in coordinate form; elimination produces the (unique)
reduced row echelon form, so sparse and dense code paths give bit-identical
answers.  The pivot rule is: leftmost column first, lowest row index among
nonzero candidates.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleFieldError, MalformedMatrixError

# matrices at most this wide may take the dense numpy path
DENSE_COLS = 64

# dense is much faster; allow it anywhere below this size unless a test
# forces the reference sparse path
_DENSE_LIMIT = 1 << 22  # rows*cols


def _is_prime(p):
    """Deterministic Miller-Rabin, valid far beyond 2^31."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p, 2 <= p < 2^31."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p < 2 ** 31):
            raise MalformedMatrixError("modulus out of range: %r" % (self.p,))
        if not _is_prime(self.p):
            raise MalformedMatrixError("modulus %d is not prime" % self.p)

    def inv(self, a):
        return pow(a % self.p, self.p - 2, self.p)


class SparseMatrix:
    """Immutable rectangular matrix over F_p in coordinate form.

    entries maps (row, col) -> residue in [1, p-1]; zeros are never stored.
    """

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows, cols, entries, field):
        if rows < 0 or cols < 0:
            raise MalformedMatrixError("negative shape")
        p = field.p
        clean = {}
        for (r, c), v in (entries.items() if isinstance(entries, dict) else entries):
            if not (0 <= r < rows and 0 <= c < cols):
                raise MalformedMatrixError(
                    "entry index (%d, %d) out of range for %dx%d" % (r, c, rows, cols))
            v %= p
            if v:
                if (r, c) in clean:
                    raise MalformedMatrixError("duplicate entry at (%d, %d)" % (r, c))
                clean[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, rows, cols, field):
        return cls(rows, cols, {}, field)

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, {(i, i): 1 for i in range(n)}, field)

    @classmethod
    def from_dense(cls, array, field):
        a = np.asarray(array)
        ent = {(int(r), int(c)): int(a[r, c]) % field.p
               for r, c in zip(*np.nonzero(np.asarray(a) % field.p))}
        return cls(a.shape[0], a.shape[1], ent, field)

    @classmethod
    def from_rows(cls, rows, ncols, field):
        """rows: list of {col: val} dicts."""
        ent = {}
        for i, row in enumerate(rows):
            for c, v in row.items():
                if v % field.p:
                    ent[(i, c)] = v % field.p
        return cls(len(rows), ncols, ent, field)

    # -- basics ------------------------------------------------------

    def to_dense(self):
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            a[r, c] = v
        return a

    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.field.p == other.field.p
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.field.p,
                     tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return "SparseMatrix(%dx%d over F_%d, %d nnz)" % (
            self.rows, self.cols, self.field.p, len(self.entries))

    def _check_compat(self, other):
        if self.field.p != other.field.p:
            raise IncompatibleFieldError(
                "F_%d vs F_%d" % (self.field.p, other.field.p))

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        assert self.rows == other.rows and self.cols == other.cols
        ent = dict(self.entries)
        p = self.field.p
        for k, v in other.entries.items():
            w = (ent.get(k, 0) + v) % p
            if w:
                ent[k] = w
            elif k in ent:
                del ent[k]
        return SparseMatrix(self.rows, self.cols, ent, self.field)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a):
        a %= self.field.p
        if a == 0:
            return SparseMatrix.zero(self.rows, self.cols, self.field)
        return SparseMatrix(self.rows, self.cols,
                            {k: (v * a) % self.field.p for k, v in self.entries.items()},
                            self.field)

    def __matmul__(self, other):
        self._check_compat(other)
        assert self.cols == other.rows, "shape mismatch %s @ %s" % (self, other)
        p = self.field.p
        # rows of other, indexed by row
        orows = {}
        for (r, c), v in other.entries.items():
            orows.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            row = orows.get(k)
            if row is None:
                continue
            for c, w in row:
                key = (r, c)
                acc[key] = (acc.get(key, 0) + v * w) % p
        return SparseMatrix(self.rows, other.cols,
                            {k: v for k, v in acc.items() if v}, self.field)

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()},
                            self.field)

    def apply(self, vec):
        """Apply to a sparse vector {index: val}; returns a sparse vector."""
        p = self.field.p
        out = {}
        cols = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        for c, x in vec.items():
            for r, v in cols.get(c, ()):
                out[r] = (out.get(r, 0) + v * x) % p
        return {r: v for r, v in out.items() if v}


def kronecker(a, b):
    """Kronecker product realizing tensor product of linear maps.

    Block structure (a_ij * b); rank(a (x) b) = rank(a) rank(b).
    """
    a._check_compat(b)
    p = a.field.p
    ent = {}
    for (r1, c1), v1 in a.entries.items():
        for (r2, c2), v2 in b.entries.items():
            ent[(r1 * b.rows + r2, c1 * b.cols + c2)] = (v1 * v2) % p
    return SparseMatrix(a.rows * b.rows, a.cols * b.cols, ent, a.field)


def hstack(mats):
    assert mats
    field = mats[0].field
    rows = mats[0].rows
    ent = {}
    off = 0
    for m in mats:
        assert m.rows == rows and m.field.p == field.p
        for (r, c), v in m.entries.items():
            ent[(r, c + off)] = v
        off += m.cols
    return SparseMatrix(rows, off, ent, field)


def vstack(mats):
    assert mats
    field = mats[0].field
    cols = mats[0].cols
    ent = {}
    off = 0
    for m in mats:
        assert m.cols == cols and m.field.p == field.p
        for (r, c), v in m.entries.items():
            ent[(r + off, c)] = v
        off += m.rows
    return SparseMatrix(off, cols, ent, field)


class Subspace:
    """A subspace of F_p^n given by an independent list of sparse vectors."""

    __slots__ = ("ambient", "basis", "field")

    def __init__(self, ambient, basis, field, verify=True):
        self.ambient = ambient
        self.basis = list(basis)
        self.field = field
        if verify and self.basis:
            m = SparseMatrix.from_rows(self.basis, ambient, field)
            if _rank_only(m) != len(self.basis):
                raise MalformedMatrixError("basis vectors not independent")

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return "Subspace(dim %d in F_%d^%d)" % (self.dim, self.field.p, self.ambient)


# -- elimination ----------------------------------------------------

def _rref_dense(a, p):
    """In-place RREF of an int64 numpy array mod p.  Returns pivot columns."""
    m, n = a.shape
    a %= p
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * pow(piv, p - 2, p) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def _rref_sparse(rows, ncols, p):
    """Reference sparse RREF on a list of {col: val} rows.

    Returns (pivot columns, reduced rows in pivot order).  Identical output
    to the dense path because RREF is unique and the pivot rule matches.
    """
    work = [dict(r) for r in rows]
    pivots = []
    done = []
    r = 0
    m = len(work)
    for c in range(ncols):
        if r == m:
            break
        i = next((j for j in range(r, m) if work[j].get(c)), None)
        if i is None:
            continue
        work[r], work[i] = work[i], work[r]
        row = work[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            row = {k: (v * inv) % p for k, v in row.items()}
            work[r] = row
        for j in range(m):
            if j == r:
                continue
            f = work[j].get(c)
            if not f:
                continue
            tgt = work[j]
            for k, v in row.items():
                w = (tgt.get(k, 0) - f * v) % p
                if w:
                    tgt[k] = w
                elif k in tgt:
                    del tgt[k]
        pivots.append(c)
        r += 1
    done = work[:r]
    return pivots, done


def rref(m, force_sparse=False):
    """Canonical RREF.  Returns (pivot columns, list of reduced sparse rows)."""
    p = m.field.p
    if not force_sparse and m.rows * m.cols <= _DENSE_LIMIT:
        a = m.to_dense()
        pivots = _rref_dense(a, p)
        rows = []
        for i in range(len(pivots)):
            nz = np.nonzero(a[i])[0]
            rows.append({int(c): int(a[i, c]) for c in nz})
        return pivots, rows
    rows = [{} for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    return _rref_sparse(rows, m.cols, p)


def _rank_only(m):
    return len(rref(m)[0])


def rank_kernel_image(m):
    """Rank, kernel and image of a SparseMatrix, all canonical.

    rank + dim kernel = cols; the image is spanned by the pivot columns of
    the original matrix; output is deterministic for identical input.
    """
    pivots, rows = rref(m)
    rank = len(pivots)
    p = m.field.p
    pivset = set(pivots)
    pos = {c: i for i, c in enumerate(pivots)}
    kb = []
    for f in range(m.cols):
        if f in pivset:
            continue
        vec = {f: 1}
        for i, c in enumerate(pivots):
            v = rows[i].get(f)
            if v:
                vec[c] = (-v) % p
        kb.append(vec)
    kernel = Subspace(m.cols, kb, m.field, verify=False)
    ib = []
    colmap = {}
    for (r, c), v in m.entries.items():
        colmap.setdefault(c, {})[r] = v
    for c in pivots:
        ib.append(colmap.get(c, {}))
    image = Subspace(m.rows, ib, m.field, verify=False)
    assert rank + kernel.dim == m.cols, "rank-nullity violated"
    return rank, kernel, image


def rank(m):
    return rank_kernel_image(m)[0]


def solve(m, target_cols):
    """Particular solutions X with m @ X = target, or None when inconsistent.

    target_cols is a SparseMatrix with the same row count; solves all
    columns at once.  Deterministic (free variables set to zero).
    """
    m._check_compat(target_cols)
    assert m.rows == target_cols.rows
    p = m.field.p
    aug = hstack([m, target_cols])
    pivots, rows = rref(aug)
    for c in pivots:
        if c >= m.cols:
            return None
    ent = {}
    pos = {c: i for i, c in enumerate(pivots)}
    for c, i in pos.items():
        for cc, v in rows[i].items():
            if cc >= m.cols:
                ent[(c, cc - m.cols)] = v
    return SparseMatrix(m.cols, target_cols.cols, ent, m.field)


def reduce_mod_rowspace(rows, ncols, field):
    """Canonical reduced basis (RREF rows) of the span of the given rows."""
    return rref(SparseMatrix.from_rows(rows, ncols, field))
