"""Group homology, Tate cohomology of cyclic groups, and truncated Tate
cohomology with respect to admissible subgroup families, via X-resolutions
and via the augmented orbit category.
"""

import itertools

from .chains import ChainComplexWindow, cone, homology_data
from .errors import (BudgetError, InadmissibleFamilyError, InvalidActionError,
                     InvalidCoverError, UnsupportedGroupError)
from .fincat import FinCat, Representation, homology_with_support
from .linalg import SparseMatrix, kronecker, rank_kernel_image, solve, vstack


class FinGroup:
    """A finite group with a full multiplication table."""

    def __init__(self, elements, table, verify=True):
        self.elements = list(elements)
        self.n = len(self.elements)
        self.table = table  # (i, j) -> index of elements[i] * elements[j]
        self.identity = None
        for e in range(self.n):
            if all(table[(e, x)] == x and table[(x, e)] == x
                   for x in range(self.n)):
                self.identity = e
                break
        assert self.identity is not None, "no identity"
        self.inv = [None] * self.n
        for x in range(self.n):
            for y in range(self.n):
                if table[(x, y)] == self.identity:
                    self.inv[x] = y
        if verify:
            self._verify()

    def _verify(self):
        assert all(v is not None for v in self.inv), "not a group: no inverse"
        for a in range(self.n):
            for b in range(self.n):
                for c in range(self.n):
                    assert self.mul(self.mul(a, b), c) == \
                        self.mul(a, self.mul(b, c)), "not associative"

    def mul(self, a, b):
        return self.table[(a, b)]

    @classmethod
    def from_permutations(cls, degree, generators):
        """Group generated by permutations (tuples of images of 0..degree-1)."""
        ident = tuple(range(degree))
        elems = {ident}
        frontier = [ident]
        gens = [tuple(g) for g in generators]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = tuple(x[g[i]] for i in range(degree))
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        elements = sorted(elems)
        idx = {e: i for i, e in enumerate(elements)}
        table = {}
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                table[(i, j)] = idx[tuple(a[b[k]] for k in range(degree))]
        g = cls(elements, table, verify=False)
        g.degree = degree
        return g

    @classmethod
    def cyclic(cls, n):
        elements = list(range(n))
        table = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
        return cls(elements, table, verify=False)

    @classmethod
    def symmetric(cls, n):
        gens = []
        if n >= 2:
            gens.append(tuple([1, 0] + list(range(2, n))))
            gens.append(tuple(list(range(1, n)) + [0]))
        return cls.from_permutations(n, gens)

    def cyclic_generator(self):
        for g in range(self.n):
            seen = {self.identity}
            x = g
            while x != self.identity:
                seen.add(x)
                x = self.mul(x, g)
            if len(seen) == self.n:
                return g
        return None

    def subgroup_closure(self, subset):
        cur = set(subset) | {self.identity}
        while True:
            new = {self.mul(a, b) for a in cur for b in cur} | \
                  {self.inv[a] for a in cur}
            if new <= cur:
                return frozenset(cur)
            cur |= new

    def is_subgroup(self, subset):
        s = set(subset)
        return self.identity in s and \
            all(self.mul(a, b) in s for a in s for b in s) and \
            all(self.inv[a] in s for a in s)

    def conjugate_subgroup(self, H, g):
        gi = self.inv[g]
        return frozenset(self.mul(self.mul(g, h), gi) for h in H)

    def all_subgroups(self):
        """Exhaustive subgroup enumeration (oracle; small groups only)."""
        subs = {frozenset([self.identity])}
        frontier = list(subs)
        while frontier:
            new = []
            for H in frontier:
                for g in range(self.n):
                    K = self.subgroup_closure(H | {g})
                    if K not in subs:
                        subs.add(K)
                        new.append(K)
            frontier = new
        return sorted(subs, key=lambda H: (len(H), sorted(H)))

    def cosets(self, H):
        """Left cosets gH, each a sorted tuple; first is H itself."""
        seen = set()
        out = []
        for g in range(self.n):
            c = frozenset(self.mul(g, h) for h in H)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out


class GModule:
    """A k[G]-module: one matrix per group element, g.h -> M(g)M(h)."""

    def __init__(self, group, field, dim, mats, verify=True):
        self.group = group
        self.field = field
        self.dim = dim
        self.mats = list(mats)
        if verify:
            ident = SparseMatrix.identity(dim, field)
            assert self.mats[group.identity] == ident
            for a in range(group.n):
                for b in range(group.n):
                    assert self.mats[a] @ self.mats[b] == \
                        self.mats[group.mul(a, b)], "not a representation"

    @classmethod
    def trivial(cls, group, field, dim=1):
        ident = SparseMatrix.identity(dim, field)
        return cls(group, field, dim, [ident] * group.n, verify=False)

    @classmethod
    def regular(cls, group, field):
        mats = []
        for g in range(group.n):
            ent = {(group.mul(g, x), x): 1 for x in range(group.n)}
            mats.append(SparseMatrix(group.n, group.n, ent, field))
        return cls(group, field, group.n, mats, verify=False)

    @classmethod
    def permutation(cls, group, field, action):
        """action[g] is the permutation of a basis set."""
        npts = len(action[group.identity])
        mats = []
        for g in range(group.n):
            ent = {(action[g][x], x): 1 for x in range(npts)}
            mats.append(SparseMatrix(npts, npts, ent, field))
        return cls(group, field, npts, mats, verify=False)

    def invariants(self, subgroup=None):
        """Basis matrix of the fixed subspace (columns)."""
        elems = sorted(subgroup) if subgroup is not None \
            else range(self.group.n)
        rows = []
        ident = SparseMatrix.identity(self.dim, self.field)
        for g in elems:
            if g == self.group.identity:
                continue
            rows.append(self.mats[g] - ident)
        if not rows:
            return SparseMatrix.identity(self.dim, self.field)
        stacked = vstack(rows)
        _, ker, _ = rank_kernel_image(stacked)
        return SparseMatrix.from_rows(ker.basis, self.dim,
                                      self.field).transpose()


# -- Tate cohomology of cyclic groups ---------------------------------------

def tate_cyclic(M, degree_bound):
    """Dims of the Tate cohomology of a cyclic group: the 2-periodic
    complex ... -> M --(1-s)--> M --N--> M -> ... .

    Returns {i: dim T^i} for |i| <= degree_bound; homological degree h
    carries T^{-h}."""
    G = M.group
    g = G.cyclic_generator()
    if g is None:
        raise UnsupportedGroupError("group is not cyclic")
    field = M.field
    sigma = M.mats[g]
    one = SparseMatrix.identity(M.dim, field)
    norm = SparseMatrix.zero(M.dim, M.dim, field)
    acc = one
    for _ in range(G.n):
        norm = norm + acc
        acc = sigma @ acc
    cx = tate_window_complex(sigma, norm, M.dim, field,
                             -degree_bound - 1, degree_bound + 1)
    h = cx.homology_dims()
    return {i: h[-i] for i in range(-degree_bound, degree_bound + 1)}


def tate_window_complex(sigma, norm, dim, field, lo, hi):
    """The 2-periodic Tate complex on [lo, hi] with the outward edge maps
    supplied, so homology is determinate on the whole window.

    d_h = 1 - sigma for h even, the norm for h odd."""
    one = SparseMatrix.identity(dim, field)
    dminus = one - sigma
    dims = {n: dim for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi + 2):
        diffs[n] = dminus if n % 2 == 0 else norm
    return ChainComplexWindow(field, lo, hi, dims, diffs,
                              open_below=True, open_above=True)


# -- group homology via the bar resolution ----------------------------------

def group_homology(G, M, maxdeg):
    """H_.(G, M) through maxdeg via the normalized bar complex."""
    field = M.field
    others = [g for g in range(G.n) if g != G.identity]
    dims = {}
    basis = {}
    for n in range(maxdeg + 2):
        tuples = list(itertools.product(others, repeat=n))
        basis[n] = {t: i for i, t in enumerate(tuples)}
        dims[n] = len(tuples) * M.dim
    diffs = {}
    p = field.p
    for n in range(1, maxdeg + 2):
        ent = {}
        for t, ti in basis[n].items():
            for col in range(M.dim):
                src = ti * M.dim + col
                # d_0: drop g_1, act by its inverse on m
                rest = t[1:]
                if all(x != G.identity for x in rest):
                    mat = M.mats[G.inv[t[0]]]
                    ri = basis[n - 1][rest]
                    for (r, c), v in mat.entries.items():
                        if c == col:
                            key = (ri * M.dim + r, src)
                            ent[key] = (ent.get(key, 0) + v) % p
                # middle faces: merge g_i g_{i+1} (skip if identity)
                for i in range(n - 1):
                    merged = G.mul(t[i], t[i + 1])
                    if merged == G.identity:
                        continue
                    img = t[:i] + (merged,) + t[i + 2:]
                    ri = basis[n - 1][img]
                    key = (ri * M.dim + col, src)
                    ent[key] = (ent.get(key, 0) + (-1) ** (i + 1)) % p
                # last face: drop g_n
                img = t[:-1]
                ri = basis[n - 1][img]
                key = (ri * M.dim + col, src)
                ent[key] = (ent.get(key, 0) + (-1) ** n) % p
        ent = {k: v for k, v in ent.items() if v}
        diffs[n] = SparseMatrix(dims[n - 1], dims[n], ent, field)
    cx = ChainComplexWindow(field, 0, maxdeg + 1, dims, diffs, open_above=True)
    h = cx.homology_dims()
    return {n: h[n] for n in range(maxdeg + 1)}


# -- admissible families ------------------------------------------------------

class SubgroupFamily:
    """An admissible family: closed under conjugation and intersection,
    not containing the whole group."""

    def __init__(self, group, subgroups, verify=True):
        self.group = group
        self.subgroups = sorted({frozenset(H) for H in subgroups},
                                key=lambda H: (len(H), sorted(H)))
        if verify:
            full = frozenset(range(group.n))
            for H in self.subgroups:
                assert group.is_subgroup(H), "family member not a subgroup"
                if H == full:
                    raise InadmissibleFamilyError("family contains G")
            fam = set(self.subgroups)
            for H in self.subgroups:
                for g in range(group.n):
                    assert group.conjugate_subgroup(H, g) in fam, \
                        "family not closed under conjugation"
                for K in self.subgroups:
                    assert frozenset(H & K) in fam, \
                        "family not closed under intersection"

    def conjugacy_representatives(self):
        seen = set()
        reps = []
        for H in self.subgroups:
            if H in seen:
                continue
            reps.append(H)
            for g in range(self.group.n):
                seen.add(self.group.conjugate_subgroup(H, g))
        return reps


def family_closure(G, seeds):
    """Smallest admissible family containing the seeds."""
    for H in seeds:
        assert G.is_subgroup(H), "seed is not a subgroup"
    fam = {frozenset(H) for H in seeds}
    while True:
        new = set()
        for H in fam:
            for g in range(G.n):
                c = G.conjugate_subgroup(H, g)
                if c not in fam:
                    new.add(c)
        for H in fam:
            for K in fam:
                c = frozenset(H & K)
                if c not in fam:
                    new.add(c)
        if not new:
            break
        fam |= new
    full = frozenset(range(G.n))
    if full in fam:
        raise InadmissibleFamilyError("closure contains G")
    return SubgroupFamily(G, fam, verify=False)


def young_subgroup(G_sym, blocks):
    """The subgroup of a symmetric group preserving each block (a partition
    of range(degree) into lists)."""
    deg = G_sym.degree
    elems = []
    blockof = {}
    for bi, b in enumerate(blocks):
        for x in b:
            blockof[x] = bi
    for i, e in enumerate(G_sym.elements):
        if all(blockof[e[x]] == blockof[x] for x in range(deg)):
            elems.append(i)
    return frozenset(elems)


def young_family(G_sym):
    """The family generated by the Young subgroups of all surjections with
    at least two blocks."""
    deg = G_sym.degree
    seeds = []
    for nblocks in range(2, deg + 1):
        for assignment in itertools.product(range(nblocks), repeat=deg):
            if set(assignment) != set(range(nblocks)):
                continue
            blocks = [[x for x in range(deg) if assignment[x] == b]
                      for b in range(nblocks)]
            seeds.append(young_subgroup(G_sym, blocks))
    return family_closure(G_sym, seeds)


# -- X-resolutions and truncated Tate ----------------------------------------

def _coset_action(G, H):
    cosets = G.cosets(H)
    idx = {c: i for i, c in enumerate(cosets)}
    action = []
    for g in range(G.n):
        action.append([idx[frozenset(G.mul(g, x) for x in c)]
                       for c in cosets])
    return cosets, action


def _x_surjective(G, H, X, field):
    """Is the augmentation k[G/H] -> k X-surjective?  For each K in X some
    K-orbit on G/H must have size prime to p."""
    p = field.p
    cosets, action = _coset_action(G, H)
    for K in X.subgroups:
        seen = set()
        ok = False
        for c0 in range(len(cosets)):
            if c0 in seen:
                continue
            orbit = {c0}
            frontier = [c0]
            while frontier:
                x = frontier.pop()
                for g in sorted(K):
                    y = action[g][x]
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            if len(orbit) % p != 0:
                ok = True
                break
        if not ok:
            return False
    return True


def default_cover(G, X, field):
    """The spec's default X-surjective cover: the single orbit k[G/H] for
    the largest H in X passing the check, else the sum over all of X."""
    reps = X.conjugacy_representatives()
    for H in sorted(reps, key=len, reverse=True):
        if _x_surjective(G, H, X, field):
            return [H]
    return reps


class XResolutionData:
    """P_i = P_0^{(x) i+1} with the alternating augmentation differential;
    the cone complex is a DG algebra by concatenation."""

    def __init__(self, G, field, orbit_subgroups, depth):
        self.G = G
        self.field = field
        self.orbits = []       # list of (cosets, action) per P_0 summand
        for H in orbit_subgroups:
            self.orbits.append(_coset_action(G, H))
        self.base_size = sum(len(c) for c, _ in self.orbits)
        self.depth = depth
        # point action of G on the P_0 basis
        self.base_action = []
        for g in range(G.n):
            perm = []
            off = 0
            for cosets, action in self.orbits:
                perm.extend(off + x for x in action[g])
                off += len(cosets)
            self.base_action.append(perm)

    def tuple_action(self, g, tup):
        a = self.base_action[g]
        return tuple(a[x] for x in tup)

    def tilde_dim(self, n):
        return 1 if n == 0 else self.base_size ** n

    def tilde_diff(self, n):
        """d: P~_n -> P~_{n-1}: sum over positions of +-augmentation."""
        field = self.field
        if n == 0:
            return None
        b = self.base_size
        src = b ** n
        tgt = self.tilde_dim(n - 1)
        ent = {}
        p = field.p
        for tup in itertools.product(range(b), repeat=n):
            srci = 0
            for x in tup:
                srci = srci * b + x
            for j in range(n):
                rest = tup[:j] + tup[j + 1:]
                ti = 0
                for x in rest:
                    ti = ti * b + x
                key = (ti, srci)
                ent[key] = (ent.get(key, 0) + (-1) ** j) % p
        ent = {k: v for k, v in ent.items() if v}
        return SparseMatrix(tgt, src, ent, field)


def _orbit_invariant_basis(resdata, n, M, subgroup=None):
    """Invariant basis of (P~_n (x) M)^G (or ^H) as columns.

    Orbit-by-orbit: for a tuple orbit with stabilizer S, contribute one
    column per basis vector of M^S."""
    G = resdata.G
    field = resdata.field
    elems = sorted(subgroup) if subgroup is not None else list(range(G.n))
    if n == 0:
        inv = M.invariants(subgroup)
        return inv
    b = resdata.base_size
    total = (b ** n) * M.dim
    tuples = list(itertools.product(range(b), repeat=n))
    index = {t: i for i, t in enumerate(tuples)}
    seen = [False] * len(tuples)
    cols = []
    for t0i, t0 in enumerate(tuples):
        if seen[t0i]:
            continue
        # orbit and stabilizer
        orbit = {}
        stab = []
        for g in elems:
            img = resdata.tuple_action(g, t0)
            if img == t0:
                stab.append(g)
            orbit.setdefault(img, g)
        for img in orbit:
            seen[index[img]] = True
        Minv = M.invariants(frozenset(stab)) if len(stab) < len(elems) \
            else M.invariants(subgroup if subgroup is not None else None)
        # columns of Minv are M^S basis vectors
        for ci in range(Minv.cols):
            v = {r: val for (r, c), val in Minv.entries.items() if c == ci}
            col = {}
            for img, g in orbit.items():
                vi = M.mats[g].apply(v)
                base = index[img] * M.dim
                for r, val in vi.items():
                    col[base + r] = (col.get(base + r, 0) + val) % field.p
            cols.append(col)
    return SparseMatrix.from_rows(cols, total, field).transpose()


def truncated_tate_resolution(G, X, M, maxdeg, P0=None, ring=False,
                              size_budget=6_000_000):
    """H-bar_.(G, X, M) through maxdeg via an X-resolution.

    Builds P_i = P_0^{(x) i+1}, forms the augmented cone complex P~ and
    returns the homology of (P~ (x) M)^G.  With ring=True (trivial
    one-dimensional M) also returns the multiplication table induced by
    the concatenation DG-algebra structure on P~.
    """
    field = M.field
    if P0 is None:
        P0 = default_cover(G, X, field)
    else:
        for H in P0:
            if not _x_surjective(G, frozenset(H), X, field):
                raise InvalidCoverError("P0 component not X-surjective")
        P0 = [frozenset(H) for H in P0]
    res = XResolutionData(G, field, P0, maxdeg + 1)
    if res.base_size ** (maxdeg + 1) * M.dim > size_budget:
        raise BudgetError("X-resolution too large; try the orbit route")
    # invariant bases and restricted differentials
    inv = [_orbit_invariant_basis(res, n, M) for n in range(maxdeg + 2)]
    dims = {n: inv[n].cols for n in range(maxdeg + 2)}
    diffs = {}
    for n in range(1, maxdeg + 2):
        dfull = res.tilde_diff(n)
        dfull = kronecker(dfull, SparseMatrix.identity(M.dim, field))
        x = solve(inv[n - 1], dfull @ inv[n])
        assert x is not None, "differential does not preserve invariants"
        diffs[n] = x
    cx = ChainComplexWindow(field, 0, maxdeg + 1, dims, diffs,
                            open_above=True)
    h = cx.homology_dims()
    out = {n: h[n] for n in range(maxdeg + 1)}
    # X-exactness of the resolution: (P~)^H acyclic for H in X
    triv = GModule.trivial(G, field)
    for H in X.conjugacy_representatives():
        invH = [_orbit_invariant_basis(res, n, triv, subgroup=H)
                for n in range(maxdeg + 2)]
        hdiffs = {}
        for n in range(1, maxdeg + 2):
            dfull = res.tilde_diff(n)
            x = solve(invH[n - 1], dfull @ invH[n])
            assert x is not None
            hdiffs[n] = x
        hcx = ChainComplexWindow(field, 0, maxdeg + 1,
                                 {n: invH[n].cols for n in range(maxdeg + 2)},
                                 hdiffs, open_above=True)
        hh = hcx.homology_dims()
        assert all(hh[n] == 0 for n in range(maxdeg + 1)), \
            "X-resolution not X-exact at subgroup %s" % (sorted(H),)
    if not ring:
        return out
    assert M.dim == 1, "ring table needs trivial one-dimensional coefficients"
    table = _ring_table(res, cx, inv, maxdeg)
    return out, table


def _ring_table(res, cx, inv, maxdeg):
    """Products H_a x H_b -> H_{a+b} induced by tuple concatenation."""
    field = res.field
    hdata = {n: homology_data(cx, n) for n in range(maxdeg + 1)}
    table = {}
    b = res.base_size
    for a in range(maxdeg + 1):
        Za, proja, secta = hdata[a]
        rep_a = inv[a] @ Za @ secta  # ambient representatives per H_a basis
        for bdeg in range(maxdeg + 1 - a):
            Zb, projb, sectb = hdata[bdeg]
            rep_b = inv[bdeg] @ Zb @ sectb
            n = a + bdeg
            Zn, projn, sectn = hdata[n]
            prods = []
            for i in range(rep_a.cols):
                va = {r: v for (r, c), v in rep_a.entries.items() if c == i}
                for j in range(rep_b.cols):
                    vb = {r: v for (r, c), v in rep_b.entries.items()
                          if c == j}
                    vo = _concat_product(va, vb, a, bdeg, b, field)
                    # express in invariant coordinates, then in H_n
                    col = SparseMatrix(res.tilde_dim(n), 1,
                                       {(r, 0): v for r, v in vo.items()},
                                       field)
                    y = solve(inv[n], col)
                    assert y is not None, "product not invariant"
                    z = solve(Zn, y)
                    assert z is not None, "product not a cycle"
                    cls = projn @ z
                    table[((a, i), (bdeg, j))] = \
                        {r: v for (r, _), v in cls.entries.items()}
            del prods
    return table


def _concat_product(va, vb, a, bdeg, base, field):
    """Concatenation product P~_a (x) P~_b -> P~_{a+b} on coordinates."""
    p = field.p
    out = {}
    for ra, x in va.items():
        for rb, y in vb.items():
            out_index = ra * (base ** bdeg) + rb
            out[out_index] = (out.get(out_index, 0) + x * y) % p
    return out


# -- the orbit-category route --------------------------------------------------

class OrbitCategoryData:
    """The augmented orbit category O_X^> with objects [G/H] for conjugacy
    representatives H in X plus the terminal [G/G]."""

    def __init__(self, G, X, field):
        self.G = G
        self.X = X
        self.field = field
        reps = X.conjugacy_representatives()
        self.subgroups = reps + [frozenset(range(G.n))]
        self.cosets = [G.cosets(H) for H in self.subgroups]
        objects = ["[G/%d]" % len(H) for H in self.subgroups]
        # morphisms [G/H] -> [G/K]: cosets gK with g^-1 H g <= K
        src, tgt, labels = [], [], []
        self.mor_coset = []
        midx = {}
        for a, H in enumerate(self.subgroups):
            for bidx, K in enumerate(self.subgroups):
                for ci, c in enumerate(self.cosets[bidx]):
                    g = sorted(c)[0]
                    if G.conjugate_subgroup(H, G.inv[g]) <= K:
                        midx[(a, bidx, ci)] = len(src)
                        src.append(a)
                        tgt.append(bidx)
                        labels.append("g%d:%d->%d" % (ci, a, bidx))
                        self.mor_coset.append((a, bidx, ci))
        comp = {}
        for m2 in range(len(src)):
            a2, b2, c2 = self.mor_coset[m2]
            for m1 in range(len(src)):
                a1, b1, c1 = self.mor_coset[m1]
                if b1 != a2:
                    continue
                g1 = sorted(self.cosets[b1][c1])[0]
                g2 = sorted(self.cosets[b2][c2])[0]
                g = G.mul(g1, g2)
                cs = frozenset(G.mul(g, k) for k in self.subgroups[b2])
                ci = self.cosets[b2].index(cs)
                comp[(m2, m1)] = midx[(a1, b2, ci)]
        ids = []
        for a, H in enumerate(self.subgroups):
            ci = self.cosets[a].index(frozenset(H))
            ids.append(midx[(a, a, ci)])
        self.cat = FinCat(objects, src, tgt, comp, ids, labels, verify=True)
        self.terminal = len(self.subgroups) - 1
        assert self.cat.is_terminal(self.terminal)

    def loc(self, M):
        """Loc_X(M): S -> (M (x) k[S])^G as a representation of the
        category; at [G/H] this is M^H with maps induced by k[S] -> k[S']."""
        G, field = self.G, self.field
        bases = []
        dims = []
        for a, H in enumerate(self.subgroups):
            cosets = self.cosets[a]
            MH = M.invariants(H)
            cols = []
            for ci in range(MH.cols):
                v = {r: val for (r, c), val in MH.entries.items() if c == ci}
                col = {}
                for k, cs in enumerate(cosets):
                    g = sorted(cs)[0]
                    img = M.mats[g].apply(v)
                    for r, val in img.items():
                        col[k * M.dim + r] = val
                cols.append(col)
            bases.append(SparseMatrix.from_rows(
                cols, len(cosets) * M.dim, field).transpose())
            dims.append(MH.cols)
        mats = {}
        for m, (a, bidx, ci) in enumerate(self.mor_coset):
            # map k[G/H] -> k[G/K]: xH -> x gK for the defining coset gK
            g = sorted(self.cosets[bidx][ci])[0]
            ent = {}
            for k, cs in enumerate(self.cosets[a]):
                x = sorted(cs)[0]
                target = frozenset(G.mul(G.mul(x, g), kk)
                                   for kk in self.subgroups[bidx])
                ti = self.cosets[bidx].index(target)
                for r in range(M.dim):
                    ent[(ti * M.dim + r, k * M.dim + r)] = 1
            full = SparseMatrix(len(self.cosets[bidx]) * M.dim,
                                len(self.cosets[a]) * M.dim, ent, field)
            x = solve(bases[bidx], full @ bases[a])
            assert x is not None, "Loc map does not preserve invariants"
            mats[m] = x
        return Representation(self.cat, field, dims, mats, verify=True)


def truncated_tate_orbit(G, X, M, maxdeg, size_budget=500_000):
    """H-bar_.(G, X, M) as homology of O_X^> with support at the terminal
    object, with coefficients Loc_X(M)."""
    data = OrbitCategoryData(G, X, M.field)
    E = data.loc(M)
    chi = [0] * data.cat.n_obj
    chi[data.terminal] = 1
    return homology_with_support(data.cat, chi, E, maxdeg,
                                 size_budget=size_budget)


# -- relative Tate for cyclic modules with Z/p-action -------------------------

class TateLayeredModule:
    """Degreewise Z/p-Tate complexes of a p-cyclic module, with the
    simplicial structure acting layerwise.

    layers run over a homological window [lo, hi]; layer differentials
    alternate 1 - g (even layer sources) and the norm (odd).  The cyclic
    rotation survives only up to the Z/p-monodromy and is kept as data.
    """

    def __init__(self, E, p, lo, hi):
        from .cyc import zp_generator
        self.E = E
        self.p = p
        self.lo = lo
        self.hi = hi
        self.field = E.field
        self.g = [zp_generator(E, n) for n in range(E.bound + 1)]
        self.norm = []
        for n in range(E.bound + 1):
            acc = SparseMatrix.identity(E.dims[n], E.field)
            out = SparseMatrix.identity(E.dims[n], E.field)
            for _ in range(p - 1):
                acc = self.g[n] @ acc
                out = out + acc
            self.norm.append(out)
        # the action must commute with all structure maps
        for n in range(1, E.bound + 1):
            for i in range(n + 1):
                if E.face[n][i] @ self.g[n] != self.g[n - 1] @ E.face[n][i]:
                    raise InvalidActionError("face %d at degree %d" % (i, n))
        for n in range(E.bound):
            for i in range(n + 1):
                if E.degen[n][i] @ self.g[n] != self.g[n + 1] @ E.degen[n][i]:
                    raise InvalidActionError("degeneracy %d at %d" % (i, n))

    def layer_complex(self, n, truncate_at=None):
        """The Tate window complex of degree n, optionally canonically
        truncated from below at layer truncate_at."""
        sigma = self.g[n]
        cx = tate_window_complex(sigma, self.norm[n], self.E.dims[n],
                                 self.field, self.lo, self.hi)
        if truncate_at is None:
            return cx
        from .chains import truncate
        return truncate(cx, "at-or-above", truncate_at)

    def triangle_witness(self, n, window_top=None):
        """Cone of (invariants complex -> Tate complex) has the homology of
        the shifted coinvariants (group homology) complex, degreewise."""
        top = self.hi if window_top is None else window_top
        full = self.layer_complex(n)
        # invariants complex: layers <= 0 of the Tate window
        sub_dims = {m: full.dim(m) for m in range(self.lo, 1)}
        sub_diffs = {m: full.diffs[m] for m in full.diffs if m <= 0}
        sub = ChainComplexWindow(self.field, self.lo, 0, sub_dims, sub_diffs,
                                 open_below=True, open_above=False)
        f = {m: SparseMatrix.identity(full.dim(m), self.field)
             for m in range(self.lo, 1)}
        cn = cone(f, sub, full)
        hc = cn.homology_dims()
        # group homology of Z/p on E_n, degrees shifted by +2
        m = GModule(FinGroup.cyclic(self.p), self.field, self.E.dims[n],
                    [SparseMatrix.identity(self.E.dims[n], self.field)
                     if a == 0 else _power(self.g[n], a) for a in
                     range(self.p)], verify=False)
        gh = group_homology(FinGroup.cyclic(self.p), m,
                            max(0, top - 2))
        for degree in range(2, top - 1):
            assert hc[degree] == gh[degree - 2], \
                "triangle witness fails at layer degree %d" % degree
        return True


def _power(mat, a):
    out = SparseMatrix.identity(mat.rows, mat.field)
    for _ in range(a):
        out = mat @ out
    return out


def relative_tate_cyclic(E, p, window):
    """The layered relative Tate object of a p-cyclic module on a window
    [-window, window]; the (pi-flat) triangle is witnessed degreewise."""
    lay = TateLayeredModule(E, p, -window, window)
    for n in range(E.bound + 1):
        lay.triangle_witness(n)
    return lay
