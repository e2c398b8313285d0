"""Simplicial and cyclic modules: combinatorics of Delta and Lambda,
normalized complexes, the Connes-Tsygan operator B, cyclic homology via the
(b, B)-bicomplex, and edgewise subdivision with its Z/p-action.

Cyclic modules may be r-cyclic (the rotation at degree n has order r(n+1));
r = 1 is the cyclic category proper, r = p arises from p-fold edgewise
subdivision.  All simplicial and rotation identities are verified
exhaustively at construction.
"""

from dataclasses import dataclass

from .chains import ChainComplexWindow, induced_map_on_homology
from .errors import (BudgetError, DomainError, MalformedMatrixError,
                     MissingCyclicStructureError)
from .linalg import SparseMatrix, hstack, rank_kernel_image, solve, vstack


# -- Delta combinatorics ------------------------------------------------

@dataclass(frozen=True)
class DeltaMap:
    """A monotone map [n] -> [m] between finite ordinals."""

    source: int
    target: int
    values: tuple

    def __post_init__(self):
        assert len(self.values) == self.source + 1
        assert all(0 <= v <= self.target for v in self.values)
        if any(self.values[i] > self.values[i + 1]
               for i in range(self.source)):
            raise DomainError("values not monotone: %r" % (self.values,))

    def compose(self, other):
        """self o other for other: [k] -> [n=self.source]."""
        assert other.target == self.source
        return DeltaMap(other.source, self.target,
                        tuple(self.values[v] for v in other.values))


def coface(m, i):
    """delta^i: [m-1] -> [m], skipping i."""
    return DeltaMap(m - 1, m, tuple(v if v < i else v + 1 for v in range(m)))


def codegeneracy(m, i):
    """sigma^i: [m+1] -> [m], repeating i."""
    return DeltaMap(m + 1, m, tuple(v if v <= i else v - 1
                                    for v in range(m + 2)))


def classify_delta_map(f):
    """Flags per the standard taxonomy of maps in Delta.

    special: f(0) = 0; antispecial: f(n) = m; bispecial: both; anchor:
    identifies [n] with a segment of [m]; left/right anchor: the initial
    resp. terminal segment embedding.
    """
    n, m, v = f.source, f.target, f.values
    injective = all(v[i] < v[i + 1] for i in range(n))
    surjective = set(v) == set(range(m + 1))
    special = v[0] == 0
    antispecial = v[n] == m
    anchor = injective and all(v[i] == v[0] + i for i in range(n + 1))
    left_anchor = anchor and special
    right_anchor = anchor and antispecial
    return {
        "special": special,
        "antispecial": antispecial,
        "bispecial": special and antispecial,
        "anchor": anchor,
        "left_anchor": left_anchor,
        "right_anchor": right_anchor,
        "injective": injective,
        "surjective": surjective,
    }


def epi_mono_factor(f):
    """f = mono o epi; returns (missed values of the mono, repeat list of
    the epi) suitable for operator composition."""
    n, m, v = f.source, f.target, f.values
    image = sorted(set(v))
    missed = [x for x in range(m + 1) if x not in set(v)]
    rank_of = {x: k for k, x in enumerate(image)}
    epi_vals = tuple(rank_of[x] for x in v)
    repeats = [i for i in range(n) if epi_vals[i] == epi_vals[i + 1]]
    return missed, repeats


# -- simplicial and cyclic modules ----------------------------------------

class CyclicModule:
    """Degreewise F_p-spaces with faces, degeneracies and a rotation.

    Degree n models [n+1] in Lambda.  rotation[n] is the unsigned cyclic
    permutation operator; order r means rotation^{r(n+1)} = id at degree n.
    Pass rotation=None for a plain simplicial module.
    """

    def __init__(self, field, bound, dims, faces, degens, rotation=None,
                 order=1, verify=True):
        self.field = field
        self.bound = bound
        self.dims = list(dims)
        self.face = faces      # face[n][i]: E_n -> E_{n-1}, 1 <= n <= bound
        self.degen = degens    # degen[n][i]: E_n -> E_{n+1}, 0 <= n < bound
        self.rot = rotation    # rot[n]: E_n -> E_n, or None
        self.order = order
        assert len(self.dims) == bound + 1
        if verify:
            self.verify_identities()

    def is_cyclic(self):
        return self.rot is not None

    def d(self, n, i):
        return self.face[n][i]

    def s(self, n, i):
        return self.degen[n][i]

    def t_unsigned(self, n):
        if self.rot is None:
            raise MissingCyclicStructureError("no cyclic operator")
        return self.rot[n]

    def t_signed(self, n):
        """The Loday convention: t = (-1)^n x rotation."""
        return self.t_unsigned(n).scale((-1) ** n)

    def verify_identities(self):
        for n in range(1, self.bound + 1):
            assert len(self.face[n]) == n + 1, "face count at %d" % n
            for i in range(n + 1):
                f = self.face[n][i]
                assert f.rows == self.dims[n - 1] and f.cols == self.dims[n]
        for n in range(self.bound):
            assert len(self.degen[n]) == n + 1
            for i in range(n + 1):
                s = self.degen[n][i]
                assert s.rows == self.dims[n + 1] and s.cols == self.dims[n]
        # simplicial identities
        for n in range(2, self.bound + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face[n - 1][i] @ self.face[n][j]
                    rhs = self.face[n - 1][j - 1] @ self.face[n][i]
                    assert lhs == rhs, "d_i d_j fails at (%d, %d, %d)" % (n, i, j)
        for n in range(self.bound - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = self.degen[n + 1][j + 1] @ self.degen[n][i]
                    rhs = self.degen[n + 1][i] @ self.degen[n][j]
                    assert lhs == rhs, "s_i s_j fails at (%d, %d, %d)" % (n, i, j)
        for n in range(1, self.bound):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.face[n + 1][i] @ self.degen[n][j]
                    if i < j:
                        rhs = self.degen[n - 1][j - 1] @ self.face[n][i]
                    elif i in (j, j + 1):
                        rhs = SparseMatrix.identity(self.dims[n], self.field)
                    else:
                        rhs = self.degen[n - 1][j] @ self.face[n][i - 1]
                    assert lhs == rhs, "d_i s_j fails at (%d, %d, %d)" % (n, i, j)
        if self.rot is None:
            return
        # rotation identities of Lambda (resp. its r-fold cover)
        for n in range(self.bound + 1):
            t = self.rot[n]
            assert t.rows == self.dims[n] and t.cols == self.dims[n]
            power = SparseMatrix.identity(self.dims[n], self.field)
            for _ in range(self.order * (n + 1)):
                power = t @ power
            assert power == SparseMatrix.identity(self.dims[n], self.field), \
                "rotation order fails at degree %d" % n
        for n in range(1, self.bound + 1):
            t, tprev = self.rot[n], self.rot[n - 1]
            assert self.face[n][0] @ t == self.face[n][n], \
                "d_0 t != d_n at degree %d" % n
            for i in range(1, n + 1):
                assert self.face[n][i] @ t == tprev @ self.face[n][i - 1], \
                    "d_i t fails at (%d, %d)" % (n, i)
        for n in range(self.bound):
            t, tnext = self.rot[n], self.rot[n + 1]
            assert self.degen[n][0] @ t == tnext @ tnext @ self.degen[n][n], \
                "s_0 t fails at degree %d" % n
            for i in range(1, n + 1):
                assert self.degen[n][i] @ t == tnext @ self.degen[n][i - 1], \
                    "s_i t fails at (%d, %d)" % (n, i)

    # -- derived operators ------------------------------------------------

    def operator(self, f, n_target):
        """The action of a DeltaMap f: [a] -> [b] (on ordinal sizes a = m,
        b = n_target as simplicial degrees): E_{n_target} -> E_{f.source}."""
        assert f.target == n_target
        missed, repeats = epi_mono_factor(f)
        mat = SparseMatrix.identity(self.dims[n_target], self.field)
        deg = n_target
        for i in sorted(missed, reverse=True):
            mat = self.face[deg][i] @ mat
            deg -= 1
        for i in sorted(repeats, reverse=True):
            mat = self.degen[deg][i] @ mat
            deg += 1
        assert deg == f.source
        return mat

    def boundary(self, n):
        """The alternating-sum differential b: E_n -> E_{n-1}."""
        b = SparseMatrix.zero(self.dims[n - 1], self.dims[n], self.field)
        for i in range(n + 1):
            b = b + self.face[n][i].scale((-1) ** i)
        return b

    def norm(self, n):
        """N = sum of powers of the signed rotation (full orbit)."""
        t = self.t_signed(n)
        acc = SparseMatrix.identity(self.dims[n], self.field)
        out = SparseMatrix.identity(self.dims[n], self.field)
        for _ in range(self.order * (n + 1) - 1):
            acc = t @ acc
            out = out + acc
        return out

    def unnormalized_complex(self, top=None):
        top = self.bound if top is None else min(top, self.bound)
        dims = {n: self.dims[n] for n in range(top + 1)}
        diffs = {n: self.boundary(n) for n in range(1, top + 1)}
        return ChainComplexWindow(self.field, 0, top, dims, diffs,
                                  open_above=True)


class SimplicialModule(CyclicModule):
    def __init__(self, field, bound, dims, faces, degens, verify=True):
        super().__init__(field, bound, dims, faces, degens, rotation=None,
                         verify=verify)


# -- normalized complex ---------------------------------------------------

def normalized_data(E, top=None):
    """Per degree: (K_n, proj_n) with K_n a basis matrix of the normalized
    subspace (intersection of ker d_1..d_n) and proj_n the projection of
    E_n onto it along the degenerate part."""
    top = E.bound if top is None else min(top, E.bound)
    Ks, projs = [], []
    for n in range(top + 1):
        if n == 0:
            K = SparseMatrix.identity(E.dims[0], E.field)
        else:
            stacked = vstack([E.face[n][i] for i in range(1, n + 1)])
            _, ker, _ = rank_kernel_image(stacked)
            K = SparseMatrix.from_rows(ker.basis, E.dims[n],
                                       E.field).transpose()
        Ks.append(K)
        projs.append(SparseMatrix.identity(E.dims[n], E.field)
                     if K.cols == E.dims[n] else None)
    # projections: solve [K | D] coordinates, keep the K block
    for n in range(top + 1):
        if projs[n] is not None:
            continue
        K = Ks[n]
        dcols = []
        for i in range(n):
            s = E.degen[n - 1][i]
            for c in range(s.cols):
                col = {r: v for (r, cc), v in s.entries.items() if cc == c}
                dcols.append(col)
        D = SparseMatrix.from_rows(dcols, E.dims[n], E.field).transpose()
        full = hstack([K, D])
        x = solve(full, SparseMatrix.identity(E.dims[n], E.field))
        assert x is not None, "E_n != normalized + degenerate at %d" % n
        proj = SparseMatrix(K.cols, E.dims[n],
                            {(r, c): v for (r, c), v in x.entries.items()
                             if r < K.cols}, E.field)
        projs[n] = proj
    return Ks, projs


def normalized_complex(E, top=None):
    """The normalized chain complex (degreewise ker d_1..d_n, differential
    induced by d_0).  Same homology as the unnormalized complex."""
    top = E.bound if top is None else min(top, E.bound)
    Ks, _ = normalized_data(E, top)
    dims = {n: Ks[n].cols for n in range(top + 1)}
    diffs = {}
    for n in range(1, top + 1):
        d0K = E.face[n][0] @ Ks[n]
        x = solve(Ks[n - 1], d0K)
        assert x is not None, "d_0 does not preserve the normalized part"
        diffs[n] = x
    return ChainComplexWindow(E.field, 0, top, dims, diffs,
                              open_above=True)


def connes_B(E, top=None):
    """The Connes-Tsygan operator on the normalized complex.

    B = (1 - t) s N with s the extra degeneracy (rotation o s_n) and N the
    full signed norm; B^2 = 0 and bB + Bb = 0 are asserted.  Returns
    (normalized complex, {n: matrix N_n -> N_{n+1}})."""
    if not E.is_cyclic():
        raise MissingCyclicStructureError("connes_B needs a cyclic module")
    top = (E.bound - 1) if top is None else min(top, E.bound - 1)
    Ks, projs = normalized_data(E, top + 1)
    nc = normalized_complex(E, top + 1)
    B = {}
    for n in range(top + 1):
        s_extra = E.rot[n + 1] @ E.degen[n][n]
        one = SparseMatrix.identity(E.dims[n + 1], E.field)
        full = (one - E.t_signed(n + 1)) @ s_extra @ E.norm(n)
        B[n] = projs[n + 1] @ full @ Ks[n]
    # identities on the normalized complex
    for n in range(top):
        z = B[n + 1] @ B[n]
        assert z.is_zero(), "B^2 != 0 at degree %d" % n
    assert (nc.d(1) @ B[0]).is_zero(), "bB != 0 at degree 0"
    for n in range(1, top + 1):
        anti = nc.d(n + 1) @ B[n] + B[n - 1] @ nc.d(n)
        assert anti.is_zero(), "bB + Bb != 0 at degree %d" % n
    return nc, B


# -- cyclic homology -------------------------------------------------------

def mixed_to_total(nc, B, maxdeg, columns):
    """Total complex of the first-quadrant (b, B)-bicomplex.

    Cell (n, q) holds nc_n in total degree n + 2q, 0 <= q < columns; the
    differential is b + B with B sending (n, q) to (n + 1, q - 1)."""
    field = nc.field
    cells = {}
    for q in range(columns):
        for n in nc.degrees():
            if nc.dim(n) and n + 2 * q <= maxdeg + 1:
                cells[(n, q)] = nc.dim(n)
    offs = {}
    dims = {}
    for (n, q), d in sorted(cells.items()):
        m = n + 2 * q
        offs[(n, q)] = dims.get(m, 0)
        dims[m] = dims.get(m, 0) + d
    diffs = {}
    for m in range(1, maxdeg + 2):
        if not dims.get(m) or not dims.get(m - 1):
            continue
        ent = {}
        for (n, q), srcoff in offs.items():
            if n + 2 * q != m:
                continue
            if (n - 1, q) in cells:
                tg = offs[(n - 1, q)]
                for (r, c), v in nc.d(n).entries.items():
                    ent[(tg + r, srcoff + c)] = (
                        ent.get((tg + r, srcoff + c), 0) + v) % field.p
            if q >= 1 and (n + 1, q - 1) in cells and n in B:
                tg = offs[(n + 1, q - 1)]
                for (r, c), v in B[n].entries.items():
                    ent[(tg + r, srcoff + c)] = (
                        ent.get((tg + r, srcoff + c), 0) + v) % field.p
        ent = {k: v for k, v in ent.items() if v}
        diffs[m] = SparseMatrix(dims[m - 1], dims.get(m, 0), ent, field)
    return ChainComplexWindow(field, 0, maxdeg + 1, dims, diffs,
                              open_above=True), offs, cells


def lambda_homology(E, maxdeg, window=None, return_u=True):
    """H_.(Lambda, E) through maxdeg, together with the periodicity maps
    u: H_m -> H_{m-2}.  Computed from the (normalized b, B)-bicomplex.

    The first quadrant is exact through maxdeg once enough columns are
    present; the window argument only enlarges the column count."""
    if E.bound < maxdeg + 1:
        raise BudgetError("cyclic module bound %d too small for maxdeg %d"
                          % (E.bound, maxdeg))
    columns = max(maxdeg // 2 + 2, (window or 0))
    nc, B = connes_B(E, maxdeg)
    tot, offs, cells = mixed_to_total(nc, B, maxdeg, columns)
    h = tot.homology_dims()
    dims = {m: h[m] for m in range(maxdeg + 1)}
    if not return_u:
        return dims, None
    # u: drop the q = 0 column and reindex q -> q - 1
    tot2, offs2, cells2 = mixed_to_total(nc, B, maxdeg - 2, columns - 1)
    umaps = {}
    for m in range(2, maxdeg + 1):
        if m - 2 > maxdeg - 2:
            continue
        ent = {}
        for (n, q), srcoff in offs.items():
            if n + 2 * q != m or q == 0:
                continue
            if (n, q - 1) in cells2:
                tg = offs2[(n, q - 1)]
                for c in range(nc.dim(n)):
                    ent[(tg + c, srcoff + c)] = 1
        f = SparseMatrix(tot2.dim(m - 2), tot.dim(m), ent, nc.field)
        umaps[m] = induced_map_on_homology(f, tot, m, tot2, m - 2)
    return dims, umaps


# -- edgewise subdivision ---------------------------------------------------

def edgewise_sd(E, p):
    """The p-fold edgewise subdivision of a cyclic module.

    Degree n of the result is degree p(n+1)-1 of E; the rotation is the
    original one (now of order p(n+1)), and the Z/p-generator is its
    (n+1)-st power.  The result is an r-cyclic module with r = p * E.order.
    """
    if not E.is_cyclic():
        raise MissingCyclicStructureError("edgewise subdivision needs t")
    new_bound = (E.bound + 1) // p - 1
    if new_bound < 0:
        raise BudgetError("bound %d too small for sd_%d" % (E.bound, p))
    dims = [E.dims[p * (n + 1) - 1] for n in range(new_bound + 1)]
    faces = {}
    degens = {}
    for n in range(1, new_bound + 1):
        m = p * (n + 1) - 1
        faces[n] = []
        for i in range(n + 1):
            # delete slots i, i+(n+1), ..., i+(p-1)(n+1): faces applied in
            # decreasing slot order
            mat = SparseMatrix.identity(E.dims[m], E.field)
            deg = m
            for j in range(p - 1, -1, -1):
                mat = E.face[deg][i + j * (n + 1)] @ mat
                deg -= 1
            faces[n].append(mat)
    for n in range(new_bound):
        m = p * (n + 1) - 1
        degens[n] = []
        for i in range(n + 1):
            # duplicate relative slot i in each block: the concatenated
            # codegeneracy repeats at i + j(n+2), eliminated left to right
            mat = SparseMatrix.identity(E.dims[m], E.field)
            deg = m
            for j in range(p):
                mat = E.degen[deg][i + j * (n + 2)] @ mat
                deg += 1
            degens[n].append(mat)
    rot = [E.rot[p * (n + 1) - 1] for n in range(new_bound + 1)]
    return CyclicModule(E.field, new_bound, dims, faces, degens, rot,
                        order=p * E.order, verify=True)


def zp_generator(sdE, n):
    """The Z/p-action generator at degree n of a p-fold subdivision."""
    g = SparseMatrix.identity(sdE.dims[n], sdE.field)
    t = sdE.rot[n]
    for _ in range(n + 1):
        g = t @ g
    return g
