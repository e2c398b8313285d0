"""Chain complexes and multicomplexes of F_p-spaces on finite degree windows.

A ChainComplexWindow stores terms and degree -1 differentials on a closed
integer interval [lo, hi].  Terms outside the window are implicitly zero
unless an edge is flagged open, in which case degrees beyond that edge are
unknown and homology next to the edge is reported as indeterminate (unless
the outward differential at the edge has been supplied).
"""

from .errors import (IndeterminateTruncationError, InvalidComplexError,
                     MalformedMatrixError)
from .linalg import (SparseMatrix, hstack, kronecker, rank_kernel_image,
                     rref, solve, vstack)


class ChainComplexWindow:
    """Finitely supported graded F_p-spaces with degree -1 differentials.

    diffs[n] maps term_n -> term_{n-1}.  diffs may also carry the edge maps
    d_lo (leaving the window, any row count) and d_{hi+1} (entering, any
    column count) when those are known for an open edge.
    """

    def __init__(self, field, lo, hi, dims, diffs, open_below=False,
                 open_above=False, check=True):
        assert lo <= hi + 1
        self.field = field
        self.lo = lo
        self.hi = hi
        self.dims = {n: d for n, d in dims.items() if lo <= n <= hi and d}
        self.diffs = {}
        self.open_below = open_below
        self.open_above = open_above
        for n, m in diffs.items():
            if m is None:
                continue
            if not (lo <= n <= hi + 1):
                continue
            if lo < n <= hi:
                assert m.cols == self.dim(n) and m.rows == self.dim(n - 1), \
                    "differential shape at %d" % n
            elif n == hi + 1:
                assert m.rows == self.dim(hi)
            elif n == lo:
                assert m.cols == self.dim(lo)
            if m.is_zero():
                continue
            self.diffs[n] = m
        if check:
            self.check_d_squared()

    # -- basics --------------------------------------------------------

    def dim(self, n):
        return self.dims.get(n, 0)

    def d(self, n):
        """The differential term_n -> term_{n-1}, as a zero map if absent."""
        m = self.diffs.get(n)
        if m is not None:
            return m
        rows = self.dim(n - 1) if n - 1 >= self.lo else 0
        return SparseMatrix.zero(rows, self.dim(n), self.field)

    def check_d_squared(self):
        for n in sorted(self.diffs):
            if n - 1 in self.diffs:
                prod = self.diffs[n - 1] @ self.diffs[n]
                if not prod.is_zero():
                    raise InvalidComplexError(n - 1)

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __repr__(self):
        return "ChainComplexWindow(F_%d, [%d, %d], dims %s)" % (
            self.field.p, self.lo, self.hi,
            [self.dim(n) for n in self.degrees()])

    # -- homology --------------------------------------------------------

    def kernel_known(self, n):
        if n > self.lo:
            return True
        return (not self.open_below) or (self.lo in self.diffs)

    def image_known(self, n):
        # image of d_{n+1} landing in degree n
        if n < self.hi:
            return True
        return (not self.open_above) or (self.hi + 1 in self.diffs)

    def determinate(self, n):
        return self.kernel_known(n) and self.image_known(n)

    def homology_dims(self):
        """dim H_n for every determinate degree in the window."""
        out = {}
        for n in self.degrees():
            if not self.determinate(n):
                continue
            dn = self.diffs.get(n)
            kdim = self.dim(n) - (rank_kernel_image(dn)[0] if dn is not None else 0)
            dn1 = self.diffs.get(n + 1)
            r = rank_kernel_image(dn1)[0] if dn1 is not None else 0
            out[n] = kdim - r
            assert out[n] >= 0
        return out

    def indeterminate_degrees(self):
        return {n for n in self.degrees() if not self.determinate(n)}

    def euler_characteristic(self):
        assert not self.open_below and not self.open_above
        return sum((-1) ** n * self.dim(n) for n in self.degrees())

    # -- constructions -----------------------------------------------------

    def shift(self, k):
        """c[k]_n = c_{n-k} with differential negated k times."""
        sgn = (-1) ** k
        return ChainComplexWindow(
            self.field, self.lo + k, self.hi + k,
            {n + k: d for n, d in self.dims.items()},
            {n + k: m.scale(sgn) for n, m in self.diffs.items()},
            self.open_below, self.open_above, check=False)

    def direct_sum(self, other):
        assert self.field.p == other.field.p
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        dims, diffs = {}, {}
        for n in range(lo, hi + 1):
            dims[n] = self.dim(n) + other.dim(n)
        for n in range(lo + 1, hi + 1):
            da = self.d(n) if (self.lo < n <= self.hi) else SparseMatrix.zero(
                self.dim(n - 1), self.dim(n), self.field)
            db = other.d(n) if (other.lo < n <= other.hi) else SparseMatrix.zero(
                other.dim(n - 1), other.dim(n), other.field)
            ent = dict(da.entries)
            for (r, c), v in db.entries.items():
                ent[(r + da.rows, c + da.cols)] = v
            diffs[n] = SparseMatrix(da.rows + db.rows, da.cols + db.cols,
                                    ent, self.field)
        return ChainComplexWindow(self.field, lo, hi, dims, diffs,
                                  self.open_below or other.open_below,
                                  self.open_above or other.open_above,
                                  check=False)


def zero_complex(field, lo=0, hi=0):
    return ChainComplexWindow(field, lo, hi, {}, {})


def single_term(field, degree, dim):
    return ChainComplexWindow(field, degree, degree, {degree: dim}, {})


def acyclic_length_two(field, top_degree=1):
    """The acyclic complex id: k -> k in degrees top_degree, top_degree-1."""
    return ChainComplexWindow(
        field, top_degree - 1, top_degree,
        {top_degree: 1, top_degree - 1: 1},
        {top_degree: SparseMatrix.identity(1, field)})


def truncate(c, side, n):
    """Canonical truncation preserving homology on the retained side.

    side 'at-or-above' keeps homology in degrees >= n (edge term ker d_n);
    side 'at-or-below' keeps degrees <= n (edge term coker d_{n+1}).
    """
    assert side in ("at-or-above", "at-or-below")
    if not (c.lo <= n <= c.hi):
        raise IndeterminateTruncationError("degree %d outside window" % n)
    if side == "at-or-above":
        if n == c.lo and c.open_below and c.lo not in c.diffs:
            raise IndeterminateTruncationError(
                "cannot truncate at open lower edge %d" % n)
        dn = c.diffs.get(n)
        if dn is None:
            kmat = SparseMatrix.identity(c.dim(n), c.field)
        else:
            _, ker, _ = rank_kernel_image(dn)
            kmat = SparseMatrix.from_rows(ker.basis, c.dim(n), c.field).transpose()
        dims = {m: c.dim(m) for m in range(n + 1, c.hi + 1)}
        dims[n] = kmat.cols
        diffs = {m: c.diffs[m] for m in c.diffs if n + 1 < m <= c.hi + 1}
        dn1 = c.diffs.get(n + 1)
        if dn1 is not None:
            x = solve(kmat, dn1)
            assert x is not None, "image of d not inside ker d"
            diffs[n + 1] = x
        return ChainComplexWindow(c.field, n, c.hi, dims, diffs,
                                  open_below=False, open_above=c.open_above,
                                  check=False)
    # at-or-below
    if n == c.hi and c.open_above and c.hi + 1 not in c.diffs:
        raise IndeterminateTruncationError(
            "cannot truncate at open upper edge %d" % n)
    dn1 = c.diffs.get(n + 1)
    proj = _cokernel_projection(dn1, c.dim(n), c.field)
    dims = {m: c.dim(m) for m in range(c.lo, n)}
    dims[n] = proj.rows
    diffs = {m: c.diffs[m] for m in c.diffs if c.lo <= m < n}
    dn = c.diffs.get(n)
    if dn is not None:
        # proj is a quotient of the source; d_n factors through it
        lift = solve(proj.transpose(), dn.transpose())
        assert lift is not None
        diffs[n] = lift.transpose()
    return ChainComplexWindow(c.field, c.lo, n, dims, diffs,
                              open_below=c.open_below, open_above=False,
                              check=False)


def quotient_with_section(m, ambient, field):
    """Projection onto F^ambient/im(m) together with a linear section.

    Returns (proj, sect) with proj @ sect = identity; the section picks the
    canonical complement (the non-pivot coordinates of the image's RREF).
    """
    proj = _cokernel_projection(m, ambient, field)
    pivset = set()
    if m is not None and not m.is_zero():
        pivset = set(rref(m.transpose())[0])
    free = [c for c in range(ambient) if c not in pivset]
    sect = SparseMatrix(ambient, len(free),
                        {(f, i): 1 for i, f in enumerate(free)}, field)
    return proj, sect


def homology_data(c, n):
    """Cycle basis and quotient data for H_n of a determinate degree.

    Returns (Z, proj, sect): Z is ambient x z with columns a kernel basis,
    proj maps Z-coordinates onto H_n, sect splits proj.
    """
    assert c.determinate(n), "homology indeterminate at %d" % n
    dn = c.diffs.get(n)
    if dn is None:
        Z = SparseMatrix.identity(c.dim(n), c.field)
    else:
        _, ker, _ = rank_kernel_image(dn)
        Z = SparseMatrix.from_rows(ker.basis, c.dim(n), c.field).transpose()
    dn1 = c.diffs.get(n + 1)
    if dn1 is None or Z.cols == 0:
        binz = None
    else:
        binz = solve(Z, dn1)
        assert binz is not None, "boundaries not inside cycles"
    proj, sect = quotient_with_section(binz, Z.cols, c.field)
    return Z, proj, sect


def induced_map_on_homology(f, src, n_src, tgt, n_tgt):
    """Matrix of the map H_{n_src}(src) -> H_{n_tgt}(tgt) induced by a
    cycle-preserving component f: src_{n_src} -> tgt_{n_tgt}."""
    Zs, _, sects = homology_data(src, n_src)
    Zt, projt, _ = homology_data(tgt, n_tgt)
    img = f @ Zs @ sects
    y = solve(Zt, img)
    assert y is not None, "map does not preserve cycles"
    return projt @ y


def _cokernel_projection(m, ambient, field):
    """Canonical projection F^ambient -> F^ambient/im(m) as a matrix."""
    if m is None or m.is_zero():
        return SparseMatrix.identity(ambient, field)
    pivots, rows = rref(m.transpose())
    p = field.p
    pivset = set(pivots)
    free = [c for c in range(ambient) if c not in pivset]
    ent = {}
    for i, f in enumerate(free):
        ent[(i, f)] = 1
    # pivot coordinates map to minus the free part of the reducing row
    for i, c in enumerate(pivots):
        for cc, v in rows[i].items():
            if cc in pivset:
                continue
            j = free.index(cc)
            ent[(j, c)] = (ent.get((j, c), 0) - v) % p
    ent = {k: v for k, v in ent.items() if v}
    return SparseMatrix(len(free), ambient, ent, field)


def chain_map_check(f, src, tgt):
    """Verify {n: matrix} is a chain map src -> tgt on the overlap."""
    for n, fn in f.items():
        assert fn.rows == tgt.dim(n) and fn.cols == src.dim(n)
        if n - 1 in f and src.lo < n <= src.hi and tgt.lo < n <= tgt.hi:
            lhs = tgt.d(n) @ fn
            rhs = f[n - 1] @ src.d(n)
            assert lhs == rhs, "not a chain map at degree %d" % n


def cone(f, src, tgt):
    """Mapping cone of a chain map f: src -> tgt.

    cone_n = tgt_n (+) src_{n-1}, d = [[d_tgt, f], [0, -d_src]].
    """
    chain_map_check(f, src, tgt)
    lo = min(tgt.lo, src.lo + 1)
    hi = max(tgt.hi, src.hi + 1)
    field = tgt.field
    dims = {}
    for n in range(lo, hi + 1):
        dims[n] = tgt.dim(n) + src.dim(n - 1)
    diffs = {}
    for n in range(lo + 1, hi + 1):
        tn, sn1 = tgt.dim(n), src.dim(n - 1)
        rows_t, rows_s = tgt.dim(n - 1), src.dim(n - 2)
        ent = {}
        if tgt.lo < n <= tgt.hi:
            for (r, c), v in tgt.d(n).entries.items():
                ent[(r, c)] = v
        fn = f.get(n - 1)
        if fn is not None:
            for (r, c), v in fn.entries.items():
                ent[(r, c + tn)] = v
        if src.lo < n - 1 <= src.hi:
            neg = src.d(n - 1).scale(-1)
            for (r, c), v in neg.entries.items():
                ent[(r + rows_t, c + tn)] = v
        diffs[n] = SparseMatrix(rows_t + rows_s, tn + sn1, ent, field)
    return ChainComplexWindow(field, lo, hi, dims, diffs,
                              src.open_below or tgt.open_below,
                              src.open_above or tgt.open_above)


class MulticomplexWindow:
    """Arity 2 or 3 lattice of F_p-spaces with anticommuting differentials.

    dims maps lattice tuples to dimensions; diffs[axis] maps a tuple to the
    matrix decreasing that axis coordinate by one.
    """

    def __init__(self, field, arity, windows, dims, diffs, check=True):
        assert arity in (2, 3)
        assert len(windows) == arity and len(diffs) == arity
        self.field = field
        self.arity = arity
        self.windows = [tuple(w) for w in windows]
        self.dims = {tuple(k): v for k, v in dims.items() if v}
        self.diffs = [dict(d) for d in diffs]
        if check:
            self.check_squares()

    def dim(self, pt):
        return self.dims.get(tuple(pt), 0)

    def d(self, axis, pt):
        m = self.diffs[axis].get(tuple(pt))
        if m is not None:
            return m
        tgt = list(pt)
        tgt[axis] -= 1
        return SparseMatrix.zero(self.dim(tgt), self.dim(pt), self.field)

    def check_squares(self):
        for axis in range(self.arity):
            for pt, m in self.diffs[axis].items():
                below = list(pt)
                below[axis] -= 1
                m2 = self.diffs[axis].get(tuple(below))
                if m2 is not None and not (m2 @ m).is_zero():
                    raise InvalidComplexError(pt, "d^2 != 0 on axis %d at %s"
                                              % (axis, (pt,)))
        for a in range(self.arity):
            for b in range(a + 1, self.arity):
                for pt in self.dims:
                    da_then_db = None
                    pa = list(pt)
                    pa[a] -= 1
                    pb = list(pt)
                    pb[b] -= 1
                    m1 = self.d(b, pa) @ self.d(a, pt)
                    m2 = self.d(a, pb) @ self.d(b, pt)
                    if not (m1 + m2).is_zero():
                        raise InvalidComplexError(
                            pt, "axes %d,%d do not anticommute at %s" % (a, b, (pt,)))


def totalize(mc, open_below=False, open_above=False):
    """Sum-total complex with the Koszul sign rule.

    The differential on axis j acquires sign (-1)^(sum of degrees on axes
    before j); total degree is the sum of the axis degrees.
    """
    field = mc.field
    pts = sorted(mc.dims)
    by_total = {}
    for pt in pts:
        by_total.setdefault(sum(pt), []).append(pt)
    offsets = {}
    dims = {}
    for t, plist in by_total.items():
        off = 0
        for pt in plist:
            offsets[pt] = off
            off += mc.dims[pt]
        dims[t] = off
    lo = min(by_total) if by_total else 0
    hi = max(by_total) if by_total else 0
    diffs = {}
    for t in range(lo + 1, hi + 1):
        if t not in dims or (t - 1) not in dims:
            continue
        ent = {}
        for pt in by_total[t]:
            for axis in range(mc.arity):
                tgt = list(pt)
                tgt[axis] -= 1
                tgt = tuple(tgt)
                if tgt not in mc.dims:
                    continue
                m = mc.diffs[axis].get(pt)
                if m is None:
                    continue
                sgn = (-1) ** (sum(pt[:axis]))
                roff, coff = offsets[tgt], offsets[pt]
                for (r, c), v in m.entries.items():
                    key = (r + roff, c + coff)
                    ent[key] = (ent.get(key, 0) + sgn * v) % field.p
        ent = {k: v for k, v in ent.items() if v}
        diffs[t] = SparseMatrix(dims[t - 1], dims[t], ent, field)
    return ChainComplexWindow(field, lo, hi, dims, diffs,
                              open_below=open_below, open_above=open_above)


def tensor(c1, c2):
    """Tensor product of two chain complexes over F_p."""
    assert c1.field.p == c2.field.p
    field = c1.field
    dims = {}
    d0, d1 = {}, {}
    for n1 in c1.degrees():
        for n2 in c2.degrees():
            dm = c1.dim(n1) * c2.dim(n2)
            if not dm:
                continue
            dims[(n1, n2)] = dm
            if c1.lo < n1 <= c1.hi and c1.dim(n1 - 1):
                d0[(n1, n2)] = kronecker(c1.d(n1),
                                         SparseMatrix.identity(c2.dim(n2), field))
            if c2.lo < n2 <= c2.hi and c2.dim(n2 - 1):
                d1[(n1, n2)] = kronecker(SparseMatrix.identity(c1.dim(n1), field),
                                         c2.d(n2))
    mc = MulticomplexWindow(field, 2, [(c1.lo, c1.hi), (c2.lo, c2.hi)],
                            dims, [d0, d1], check=False)
    return totalize(mc, open_below=c1.open_below or c2.open_below,
                    open_above=c1.open_above or c2.open_above)
