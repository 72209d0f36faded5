"""Degree-truncated linear algebra: an oracle independent of Groebner bases.

Everything is computed in the ambient polynomial ring ``P``: a graded piece
of ``P^r / (columns + I * P^r)`` is the quotient of a finite-dimensional
vector space by the span of monomial multiples of the generators, and its
dimension comes from exact row reduction.
"""

from itertools import combinations_with_replacement


def monomials_of_degree(monoid, d):
    """All packed monomials of total degree ``d`` (empty for ``d < 0``)."""
    if d < 0:
        return []
    n = monoid.n
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(monoid.from_exponents(e))
    return out


class Echelon:
    """Incremental row echelon form over GF(p) (``p > 0``) or QQ (``p = 0``)."""

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot column -> row (dict col -> coeff), pivot coeff 1

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        f = self.field
        v = {k: c for k, c in v.items() if c}
        while v:
            piv = min(v)
            row = self.rows.get(piv)
            if row is None:
                return v
            c = v[piv]
            for k, a in row.items():
                nv = f.sub(v.get(k, f.zero), f.mul(c, a))
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, v):
        """Insert ``v``; returns True if it increased the rank."""
        v = self.reduce(v)
        if not v:
            return False
        piv = min(v)
        inv = self.field.inv(v[piv])
        self.rows[piv] = {k: self.field.mul(c, inv) for k, c in v.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)


def _multiples(ring, gens, twists, d):
    """Vectors ``m * g`` of total degree ``d`` for homogeneous vectors ``g``."""
    mo = ring.monoid
    out = []
    for g in gens:
        if not g:
            continue
        t = next(iter(g))
        gd = mo.degree(t & mo.mono_mask) + twists[t >> mo.comp_shift]
        for m in monomials_of_degree(mo, d - gd):
            out.append({k + m: c for k, c in g.items()})
    return out


def _relations_with_ideal(ring, twists, columns):
    mo = ring.monoid
    rels = [dict(c) for c in columns]
    for j in range(len(twists)):
        for h in ring.defining_ideal:
            rels.append({t | (j << mo.comp_shift): c for t, c in h.items()})
    return rels


def span_rank(ring, twists, gens, d):
    ech = Echelon(ring.field)
    for v in _multiples(ring, gens, twists, d):
        ech.add(v)
    return ech.rank


def free_dimension(ring, twists, d):
    """``dim_k P^r_d`` for the ambient ring ``P``."""
    return sum(len(monomials_of_degree(ring.monoid, d - a)) for a in twists)


def oracle_hilbert(M, d):
    """``dim_k M_d`` by row reduction of the degree-``d`` piece of the relations."""
    ring = M.ring
    tw = list(M.gen_degrees)
    rels = _relations_with_ideal(ring, tw, M.relations)
    return free_dimension(ring, tw, d) - span_rank(ring, tw, rels, d)


def oracle_hilbert_function(M, bound=None):
    """:class:`HilbertFunction` over the same degree window as the GB route."""
    from .modules import HilbertFunction
    bound = M.default_bound() if bound is None else bound
    start = min(M.gen_degrees, default=0)
    values = {d: oracle_hilbert(M, d) for d in range(start, bound + 1)}
    return HilbertFunction(values, bound, start, source="linear-algebra")


def oracle_member(ring, twists, gens, v):
    """Is the homogeneous vector ``v`` in ``<gens> + I * P^r``?  (``v`` over ``P``.)"""
    if not v:
        return True
    mo = ring.monoid
    t = next(iter(v))
    d = mo.degree(t & mo.mono_mask) + twists[t >> mo.comp_shift]
    ech = Echelon(ring.field)
    for w in _multiples(ring, _relations_with_ideal(ring, twists, gens), twists, d):
        ech.add(w)
    return ech.contains(v)


def oracle_ideal_member(ideal, f):
    """Membership of the polynomial dict ``f`` in a homogeneous ideal."""
    return oracle_member(ideal.ring, [0], ideal.gens, f)


def oracle_syzygy_dimension(ring, twists, gens, degrees, d):
    """``dim_k`` of the degree-``d`` syzygies of ``gens`` modulo ``I``-multiples.

    Equals ``dim (R^s)_d - dim (image)_d`` where the image is the submodule of
    ``R^r`` generated by ``gens``.
    """
    src = oracle_hilbert_free(ring, degrees, d)
    rels_tgt = _relations_with_ideal(ring, twists, [])
    ech = Echelon(ring.field)
    for w in _multiples(ring, rels_tgt, twists, d):
        ech.add(w)
    base = ech.rank
    for w in _multiples(ring, gens, twists, d):
        ech.add(w)
    return src - (ech.rank - base)


def oracle_hilbert_free(ring, twists, d):
    """``dim_k (R^r)_d`` for the quotient ring ``R``."""
    rels = _relations_with_ideal(ring, twists, [])
    return free_dimension(ring, twists, d) - span_rank(ring, twists, rels, d)
