"""Finitely presented graded modules ``M = coker(F1 -> F0)``.

A module is stored as generator degrees (twists of ``F0``), relation
degrees (twists of ``F1``) and the relation columns as sparse vectors in
``F0``.  Kernels, Hom and homology are always re-presented as cokernels.
"""

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import hilbert as hs
from . import vec
from .errors import NotWellDefined
from .groebner import (FreeModule, Ideal, ModuleGB, NotHomogeneous, TermOrder, VectorElem,
                       annihilator_of_cokernel, present_span, syzygy_columns, vector_degree)
from .ring import Polynomial, QuotientRing

HF_MARGIN = 10


class FPModule:
    """Graded module presented as the cokernel of a homogeneous matrix.

    ``relations[k]`` is column ``k`` of the presentation matrix, a vector in
    the free module with twists ``gen_degrees``; its degree is
    ``rel_degrees[k]``.
    """

    def __init__(self, ring, gen_degrees, rel_degrees, relations, minimal=False):
        self.ring = ring
        self.gen_degrees = tuple(int(a) for a in gen_degrees)
        cols = [ring.nf_vec(_col_terms(c, ring, len(self.gen_degrees))) for c in relations]
        order = self.order
        if rel_degrees is None:
            rel_degrees = []
            for c in cols:
                if not c:
                    raise NotHomogeneous("cannot infer the degree of a zero column")
                rel_degrees.append(vector_degree(c, order))
        rel_degrees = tuple(int(b) for b in rel_degrees)
        if len(rel_degrees) != len(cols):
            raise ValueError("one degree per relation column is required")
        mo = ring.monoid
        for c, b in zip(cols, rel_degrees):
            if any(mo.comp(t) >= len(self.gen_degrees) for t in c):
                raise ValueError("relation column has more entries than generators")
            if c and vector_degree(c, order) != b:
                raise NotHomogeneous(f"relation of degree {vector_degree(c, order)} declared as {b}")
        self.rel_degrees = rel_degrees
        self.relations = cols
        self._minimal = minimal
        self._cache = {}

    # -- construction -----------------------------------------------------
    @classmethod
    def from_matrix(cls, ring, rows, gen_degrees=None, rel_degrees=None):
        """Build from a row-major matrix of polynomials / strings.

        Missing twists are inferred from homogeneity (each connected block of
        the matrix gets its smallest generator degree set to 0).
        """
        mat = [[ring(e) for e in row] for row in rows]
        nrows = len(mat)
        ncols = len(mat[0]) if mat else 0
        if any(len(r) != ncols for r in mat):
            raise ValueError("ragged matrix")
        if gen_degrees is None or rel_degrees is None:
            gen_degrees, rel_degrees = infer_twists(mat, gen_degrees, rel_degrees)
        mo = ring.monoid
        cols = []
        for j in range(ncols):
            col = {}
            for i in range(nrows):
                for m, c in mat[i][j].terms.items():
                    col[(i << mo.comp_shift) | m] = c
            cols.append(col)
        return cls(ring, gen_degrees, rel_degrees, cols)

    @classmethod
    def free(cls, ring, twists):
        return cls(ring, twists, [], [], minimal=True)

    @classmethod
    def cyclic(cls, ideal):
        """``R / ideal`` with its generator in degree 0."""
        return cls(ideal.ring, [0], ideal.degrees(), [dict(g) for g in ideal.gens])

    @classmethod
    def residue_field(cls, ring):
        return cls.cyclic(Ideal(ring, ring.gens()))

    # -- basic data -------------------------------------------------------
    @property
    def order(self):
        return TermOrder(self.ring.order, self.gen_degrees)

    @property
    def rank(self):
        """Number of generators of the presentation (not of a minimal one)."""
        return len(self.gen_degrees)

    @property
    def num_relations(self):
        return len(self.relations)

    def target(self):
        return FreeModule(self.ring, self.gen_degrees)

    def source(self):
        return FreeModule(self.ring, self.rel_degrees)

    def entry(self, i, j):
        mo = self.ring.monoid
        return Polynomial(self.ring, {t & mo.mono_mask: c for t, c in self.relations[j].items()
                                      if mo.comp(t) == i})

    def matrix(self):
        """Row-major list of :class:`Polynomial` entries."""
        mo = self.ring.monoid
        rows = [[{} for _ in self.relations] for _ in self.gen_degrees]
        for j, col in enumerate(self.relations):
            for t, c in col.items():
                rows[mo.comp(t)][j][t & mo.mono_mask] = c
        return [[Polynomial(self.ring, e) for e in row] for row in rows]

    def matrix_str(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.matrix()) + "]"

    def __repr__(self):
        return (f"FPModule(gens={list(self.gen_degrees)}, rels={list(self.rel_degrees)}, "
                f"matrix={self.matrix_str()})")

    @property
    def gb(self):
        """Groebner basis of the relation submodule (defining ideal included)."""
        if "gb" not in self._cache:
            self._cache["gb"] = ModuleGB(self.ring, self.gen_degrees, relations=self.relations)
        return self._cache["gb"]

    def contains_relation(self, v):
        return not self.gb.reduce(v)

    # -- predicates -------------------------------------------------------
    def is_minimal(self):
        return self._minimal

    def minimalize(self):
        return minimalize(self)

    def is_zero(self):
        return minimalize(self).rank == 0

    def mu(self):
        """Minimal number of generators."""
        return minimalize(self).rank

    def is_free(self):
        m = minimalize(self)
        return m.num_relations == 0

    # -- numeric invariants -------------------------------------------------
    def hilbert_function(self, bound=None):
        return hilbert_function(self, bound)

    def hilbert_series(self):
        return hilbert_series(self)

    def dim(self):
        return hilbert_series(self).dimension()

    def annihilator(self):
        if "ann" not in self._cache:
            self._cache["ann"] = annihilator_of_cokernel(self.ring, self.gen_degrees, self.relations)
        return self._cache["ann"]

    def default_bound(self):
        return max(self.gen_degrees, default=0) + HF_MARGIN


def _col_terms(c, ring, rank):
    if isinstance(c, VectorElem):
        return c.terms
    if isinstance(c, (list, tuple)):
        return FreeModule(ring, [0] * rank).element(list(c) + ["0"] * (rank - len(c))).terms
    return c


def infer_twists(mat, gen_degrees=None, rel_degrees=None):
    """Solve ``rel_deg[j] - gen_deg[i] = deg(entry[i][j])`` for nonzero entries."""
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rows = list(gen_degrees) if gen_degrees is not None else [None] * nrows
    cols = list(rel_degrees) if rel_degrees is not None else [None] * ncols
    edges = {}
    for i in range(nrows):
        for j in range(ncols):
            e = mat[i][j]
            if e.terms:
                if not e.is_homogeneous():
                    raise NotHomogeneous(f"entry ({i},{j}) is not homogeneous")
                edges[(i, j)] = e.degree()
    seen_r, seen_c = set(), set()

    def flood(start_kind, start, value):
        stack = [(start_kind, start, value)]
        while stack:
            kind, idx, val = stack.pop()
            arr, seen = (rows, seen_r) if kind == "r" else (cols, seen_c)
            if idx in seen:
                if arr[idx] != val:
                    raise NotHomogeneous("matrix admits no consistent grading")
                continue
            if arr[idx] is not None and arr[idx] != val:
                raise NotHomogeneous("declared twists contradict the matrix entries")
            arr[idx] = val
            seen.add(idx)
            if kind == "r":
                for j in range(ncols):
                    if (idx, j) in edges:
                        stack.append(("c", j, val + edges[(idx, j)]))
            else:
                for i in range(nrows):
                    if (i, idx) in edges:
                        stack.append(("r", i, val - edges[(i, idx)]))

    for i in range(nrows):
        if i not in seen_r and rows[i] is not None:
            flood("r", i, rows[i])
    for j in range(ncols):
        if j not in seen_c and cols[j] is not None:
            flood("c", j, cols[j])
    for i in range(nrows):
        if i not in seen_r:
            # provisional 0, then shift the block so its least generator degree is 0
            before_r, before_c = set(seen_r), set(seen_c)
            flood("r", i, 0)
            block_r = seen_r - before_r
            block_c = seen_c - before_c
            low = min(rows[k] for k in block_r)
            for k in block_r:
                rows[k] -= low
            for k in block_c:
                cols[k] -= low
    for j in range(ncols):
        if cols[j] is None:
            raise NotHomogeneous(f"degree of zero column {j} is ambiguous; give twists")
    return rows, cols


# -- matrix plumbing --------------------------------------------------------

def transpose_cols(cols, nrows, monoid):
    """Columns of the transpose: ``out[i]`` has entry ``A[i][j]`` at component ``j``."""
    out = [{} for _ in range(nrows)]
    shift = monoid.comp_shift
    mask = monoid.mono_mask
    for j, col in enumerate(cols):
        base = j << shift
        for t, c in col.items():
            out[t >> shift][base | (t & mask)] = c
    return out


def kron_right(cols, s, monoid):
    """Columns of ``A ⊗ I_s``; column ``(j, b)`` sits at ``j*s + b``."""
    shift = monoid.comp_shift
    mask = monoid.mono_mask
    out = []
    for col in cols:
        for b in range(s):
            out.append({(((t >> shift) * s + b) << shift) | (t & mask): c for t, c in col.items()})
    return out


def kron_left(r, cols, nrows, monoid):
    """Columns of ``I_r ⊗ B`` (``B`` has ``nrows`` rows); column ``(a, j)`` at ``a*len(cols) + j``."""
    shift = monoid.comp_shift
    mask = monoid.mono_mask
    out = []
    for a in range(r):
        for col in cols:
            out.append({((a * nrows + (t >> shift)) << shift) | (t & mask): c for t, c in col.items()})
    return out


def apply_cols(cols, v, ring):
    """Image of vector ``v`` under the matrix whose columns are ``cols``."""
    mo = ring.monoid
    p = ring.field.p
    out = {}
    for t, c in v.items():
        vec.axpy(out, c, t & mo.mono_mask, cols[t >> mo.comp_shift], p)
    return ring.nf_vec(out)


def unit_vectors(n, monoid, one):
    return [{i << monoid.comp_shift: one} for i in range(n)]


# -- minimalization ---------------------------------------------------------

def minimalize(M):
    """Minimal presentation: no unit entries and minimally generated relations.

    Unit entries are eliminated in row-major order of first occurrence; each
    elimination removes one generator and one relation.
    """
    if M._minimal:
        return M
    cached = M._cache.get("minimal")
    if cached is not None:
        return cached
    ring = M.ring
    mo = ring.monoid
    p = ring.field.p
    shift, mask = mo.comp_shift, mo.mono_mask
    gens = list(M.gen_degrees)
    cols = [dict(c) for c in M.relations]
    cdeg = list(M.rel_degrees)
    while True:
        best = None
        for j, col in enumerate(cols):
            for t in col:
                if not (t & mask):
                    cand = (t >> shift, j)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        i, j = best
        piv = cols[j]
        inv = ring.field.inv(piv[i << shift])
        new_cols = []
        for k, col in enumerate(cols):
            if k == j:
                continue
            e = {t & mask: c for t, c in col.items() if t >> shift == i}
            if e:
                col = vec.sub(col, vec.mul_poly(vec.scale(e, inv, p), piv, p), p)
                col = ring.nf_vec(col)
            new_cols.append(col)
        mapping = list(range(i)) + [None] + list(range(i, len(gens) - 1))
        cols = [vec.remap(c, mapping, mo) for c in new_cols]
        gens.pop(i)
        cdeg.pop(j)
    engine = ModuleGB(ring, gens, cols, degrees=cdeg)
    keep = engine.kept
    out = FPModule(ring, gens, [cdeg[k] for k in keep], [cols[k] for k in keep], minimal=True)
    out._cache["gb"] = engine
    M._cache["minimal"] = out
    return out


# -- constructions ----------------------------------------------------------

def _check_ring(M, N):
    M.ring.check_same(N.ring)


def direct_sum(M, N):
    _check_ring(M, N)
    mo = M.ring.monoid
    r = M.rank
    mapping = list(range(r, r + N.rank))
    cols = [dict(c) for c in M.relations] + [vec.remap(c, mapping, mo) for c in N.relations]
    return FPModule(M.ring, M.gen_degrees + N.gen_degrees, M.rel_degrees + N.rel_degrees, cols)


def twist(M, a):
    """``M(a)``: every degree lowered by ``a``."""
    return FPModule(M.ring, [g - a for g in M.gen_degrees], [b - a for b in M.rel_degrees],
                    M.relations, minimal=M._minimal)


def tensor(M, N):
    """``M ⊗ N`` presented by the block matrix ``(A ⊗ I | I ⊗ B)``."""
    _check_ring(M, N)
    mo = M.ring.monoid
    n0 = N.rank
    gens = [a + c for a in M.gen_degrees for c in N.gen_degrees]
    cols = kron_right(M.relations, n0, mo) + kron_left(M.rank, N.relations, n0, mo)
    degs = [b + c for b in M.rel_degrees for c in N.gen_degrees]
    degs += [a + d for a in M.gen_degrees for d in N.rel_degrees]
    return FPModule(M.ring, gens, degs, cols)


def homology(ring, twists, rels, alpha, beta, out_twists, out_rels, zero_only=False):
    """Homology at ``C = coker(rels)`` of ``A --alpha--> C --beta--> B``.

    ``alpha`` are vectors of ``C``'s free module spanning the incoming
    image; ``beta`` (one column per generator of ``C``) maps into the free
    module of ``B = coker(out_rels)``; ``beta=None`` is the zero map.
    Returns an :class:`FPModule`, or a bool (is zero) when ``zero_only``.
    """
    mo = ring.monoid
    if beta is None:
        kernel, kdeg = unit_vectors(len(twists), mo, ring.field.one), list(twists)
    else:
        kernel, kdeg = syzygy_columns(ring, out_twists, beta, degrees=twists, relations=out_rels)
    span = [a for a in alpha if a] + [r for r in rels if r]
    if zero_only:
        engine = ModuleGB(ring, twists, relations=span)
        return all(not engine.reduce(k) for k in kernel)
    kept, cols, cdeg = present_span(ring, twists, kernel, kdeg, span)
    return minimalize(FPModule(ring, [kdeg[k] for k in kept], cdeg, cols))


def hom(M, N):
    """``Hom(M, N)`` as the kernel of ``Hom(F0, N) -> Hom(F1, N)``."""
    _check_ring(M, N)
    ring = M.ring
    mo = ring.monoid
    n0 = N.rank
    c_twists = [c - a for a in M.gen_degrees for c in N.gen_degrees]
    c_rels = kron_left(M.rank, N.relations, n0, mo)
    b_twists = [c - b for b in M.rel_degrees for c in N.gen_degrees]
    b_rels = kron_left(M.num_relations, N.relations, n0, mo)
    beta = kron_right(transpose_cols(M.relations, M.rank, mo), n0, mo)
    if not M.relations:
        beta = None
    return homology(ring, c_twists, c_rels, [], beta, b_twists, b_rels)


def dual(M):
    """``M* = Hom(M, R)``."""
    return hom(M, FPModule.free(M.ring, [0]))


def _map_cols(f_cols, M, N):
    ring = M.ring
    cols = [ring.nf_vec(_col_terms(c, ring, N.rank)) for c in f_cols]
    if len(cols) != M.rank:
        raise ValueError("one image column per generator of the source is required")
    tgt_order = N.order
    for j, c in enumerate(cols):
        if c and vector_degree(c, tgt_order) != M.gen_degrees[j]:
            raise NotHomogeneous(f"image of generator {j} has the wrong degree")
    for rel in M.relations:
        if not N.contains_relation(apply_cols(cols, rel, ring)):
            raise NotWellDefined("matrix does not send relations of the source into relations of the target")
    return cols


def kernel(f_cols, M, N):
    """Kernel of the map ``M -> N`` sending generator ``j`` of ``M`` to ``f_cols[j]``."""
    _check_ring(M, N)
    cols = _map_cols(f_cols, M, N)
    return homology(M.ring, M.gen_degrees, M.relations, [], cols, N.gen_degrees, N.relations)


def image(f_cols, M, N):
    _check_ring(M, N)
    cols = _map_cols(f_cols, M, N)
    degs = list(M.gen_degrees)
    kept, syz, sdeg = present_span(M.ring, N.gen_degrees, cols, degs, N.relations)
    return minimalize(FPModule(M.ring, [degs[k] for k in kept], sdeg, syz))


def cokernel(f_cols, M, N):
    _check_ring(M, N)
    cols = _map_cols(f_cols, M, N)
    return FPModule(M.ring, N.gen_degrees, list(N.rel_degrees) + list(M.gen_degrees),
                    list(N.relations) + cols)


# -- Fitting ideals ---------------------------------------------------------

def _det(ring, entries, rows, cols, memo):
    """Laplace expansion along the first listed column (memoized on row sets)."""
    if not rows:
        return {0: ring.field.one}
    k = (rows, len(cols))
    if k in memo:
        return memo[k]
    p = ring.field.p
    j = cols[0]
    out = {}
    for pos, i in enumerate(rows):
        e = entries.get((i, j))
        if not e:
            continue
        minor = _det(ring, entries, rows[:pos] + rows[pos + 1:], cols[1:], memo)
        if not minor:
            continue
        term = vec.mul_poly(e, minor, p)
        out = vec.add(out, term, p) if pos % 2 == 0 else vec.sub(out, term, p)
    out = ring.nf_poly(out)
    memo[k] = out
    return out


def fitting_ideal(M, j):
    """``Fitt_j(M)``: ideal of ``(rank F0 - j)``-minors of a presentation."""
    ring = M.ring
    if j < 0:
        return Ideal(ring, [])
    M = minimalize(M)
    r, s = M.rank, M.num_relations
    k = r - j
    if k <= 0:
        return Ideal(ring, [{0: ring.field.one}])
    if k > s:
        return Ideal(ring, [])
    mo = ring.monoid
    entries = {}
    for jj, col in enumerate(M.relations):
        for t, c in col.items():
            entries.setdefault((mo.comp(t), jj), {})[t & mo.mono_mask] = c
    minors = []
    for cset in combinations(range(s), k):
        memo = {}
        for rset in combinations(range(r), k):
            d = _det(ring, entries, rset, cset, memo)
            if d:
                minors.append(d)
    from .groebner import _clean_ideal
    return _clean_ideal(ring, minors)


# -- Hilbert functions --------------------------------------------------------

@dataclass
class HilbertSeries:
    """``numerator(t) / (1 - t)^nvars`` (numerator may have negative exponents)."""

    numerator: dict
    nvars: int

    def coefficient(self, d):
        return hs.coefficient(self.numerator, self.nvars, d)

    def dimension(self):
        """Krull dimension = pole order at ``t = 1``; ``-1`` for the zero module."""
        mult = hs.root_multiplicity_at_one(self.numerator)
        return -1 if mult is None else self.nvars - mult

    def reduced(self):
        """``(h(t), d)`` with series ``h(t)/(1-t)^d`` and ``h(1) != 0``."""
        mult = hs.root_multiplicity_at_one(self.numerator)
        if mult is None:
            return {}, 0
        return hs.divide_by_one_minus_t(self.numerator, mult), self.nvars - mult

    def __str__(self):
        h, d = self.reduced()
        den = "" if d == 0 else ("/(1 - t)" if d == 1 else f"/(1 - t)^{d}")
        return f"({hs.to_str(h)}){den}"

    def to_json(self):
        return {"numerator": {str(k): v for k, v in sorted(self.numerator.items())},
                "nvars": self.nvars}


@dataclass
class HilbertFunction:
    """Dimensions of graded pieces for degrees ``start..bound``."""

    values: dict
    bound: int
    start: int = 0
    source: str = dc_field(default="groebner")

    def __getitem__(self, d):
        if d < self.start:
            return 0
        if d > self.bound:
            raise KeyError(f"degree {d} beyond the computed bound {self.bound}")
        return self.values.get(d, 0)

    def as_list(self):
        return [self[d] for d in range(self.start, self.bound + 1)]

    def __eq__(self, other):
        if not isinstance(other, HilbertFunction):
            return NotImplemented
        lo = min(self.start, other.start)
        hi = min(self.bound, other.bound)
        return all(self[d] == other[d] for d in range(lo, hi + 1))

    def to_json(self):
        return {"start": self.start, "bound": self.bound, "values": self.as_list()}


def hilbert_series(M):
    if "hs" in M._cache:
        return M._cache["hs"]
    ring = M.ring
    mo = ring.monoid
    lead = {}
    for t in M.gb.lead:
        lead.setdefault(mo.comp(t), []).append(mo.exponents(mo.mono(t)))
    num = {}
    for i, a in enumerate(M.gen_degrees):
        num = hs.add(num, hs.shift(hs.monomial_numerator(lead.get(i, [])), a))
    out = HilbertSeries(num, ring.nvars)
    M._cache["hs"] = out
    return out


def hilbert_function(M, bound=None):
    bound = M.default_bound() if bound is None else bound
    series = hilbert_series(M)
    start = min(M.gen_degrees, default=0)
    return HilbertFunction({d: series.coefficient(d) for d in range(start, bound + 1)}, bound, start)


def hilbert(M, bound=None):
    return hilbert_function(M, bound)


def dim_module(M):
    return hilbert_series(M).dimension()
