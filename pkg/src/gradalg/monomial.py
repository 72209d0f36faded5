"""Packed monomials, module terms and monomial orders.

A monomial in ``n`` variables is packed into one Python int: exponent of
variable ``i`` in bits ``[BITS*i, BITS*(i+1))`` and the total degree in the
field just above the exponents.  A *term* of a free module additionally
carries the component index above the degree field, so a polynomial is just
a vector supported on component 0.  Multiplying by a monomial is integer
addition; divisibility is a guard-bit subtraction.
"""

BITS = 12
_LIMIT = 1 << (BITS - 1)


class Monoid:
    """Packing layout for monomials and module terms in ``nvars`` variables."""

    def __init__(self, nvars):
        n, k = nvars, BITS
        self.n = n
        self.field_mask = (1 << k) - 1
        self.deg_shift = k * n
        self.comp_shift = k * (n + 1)
        self.mono_mask = (1 << self.comp_shift) - 1
        self.var_mask = (1 << (k * n)) - 1
        self.guard = sum(1 << (k * i + k - 1) for i in range(n + 1))
        self._guard_c = self.guard | (-1 << self.comp_shift)
        self.vars = [(1 << (k * i)) | (1 << self.deg_shift) for i in range(n)]

    def from_exponents(self, exps):
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        deg = sum(exps)
        if deg >= _LIMIT or min(exps, default=0) < 0:
            raise OverflowError(f"exponent vector {tuple(exps)} out of range")
        m = deg << self.deg_shift
        for i, e in enumerate(exps):
            m |= e << (BITS * i)
        return m

    def exponents(self, m):
        mask = self.field_mask
        return tuple((m >> (BITS * i)) & mask for i in range(self.n))

    def degree(self, t):
        return (t >> self.deg_shift) & self.field_mask

    def comp(self, t):
        return t >> self.comp_shift

    def mono(self, t):
        return t & self.mono_mask

    def term(self, comp, m):
        return (comp << self.comp_shift) | m

    def divides(self, a, b):
        """True when term ``a`` divides term ``b`` (same component)."""
        return ((b | self.guard) - a) & self._guard_c == self.guard

    def lcm(self, a, b):
        """lcm of two terms; the component of ``a`` is kept."""
        mask = self.field_mask
        m = a & ~self.mono_mask
        deg = 0
        for i in range(self.n):
            s = BITS * i
            e = max((a >> s) & mask, (b >> s) & mask)
            deg += e
            m |= e << s
        if deg >= _LIMIT:
            raise OverflowError("degree overflow in lcm")
        return m | (deg << self.deg_shift)

    def coprime(self, a, b):
        mask = self.field_mask
        for i in range(self.n):
            s = BITS * i
            if (a >> s) & mask and (b >> s) & mask:
                return False
        return True


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, t):
        v = self[t] = self.fn(t)
        return v


class MonomialOrder:
    """grevlex or lex on packed monomials; ``key`` is an int sort key."""

    KINDS = ("grevlex", "lex")

    def __init__(self, monoid, kind="grevlex"):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.monoid = monoid
        self.kind = kind
        n = monoid.n
        self.deg_weight = 1 << (BITS * (n - 1)) if n else 1
        if kind == "grevlex":
            self.key = self._grevlex_key
        else:
            self.key = _KeyCache(self._lex_key).__getitem__

    def _grevlex_key(self, m):
        mo = self.monoid
        # (degree, -e_n, ..., -e_2) read as one balanced base-2^BITS number
        return ((m >> mo.deg_shift) & mo.field_mask) * self.deg_weight - ((m & mo.var_mask) >> BITS)

    def _lex_key(self, m):
        key = 0
        for e in self.monoid.exponents(m):
            key = (key << BITS) | e
        return key

    def compare(self, m1, m2):
        """-1, 0 or 1 as ``m1`` is smaller, equal or greater than ``m2``."""
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind and other.monoid.n == self.monoid.n

    def __hash__(self):
        return hash((self.kind, self.monoid.n))


class TermOrder:
    """Module order on terms of a graded free module.

    ``position="top"`` is term-over-position refined by twisted degree
    (degree of the monomial plus the generator twist is compared first);
    ``"pot"`` is position-over-term.  Lower component indices are larger.
    """

    def __init__(self, mono_order, twists, position="top"):
        if position not in ("top", "pot"):
            raise ValueError(f"unknown module extension {position!r}")
        self.mono_order = mono_order
        self.monoid = mono_order.monoid
        self.twists = tuple(twists)
        self.position = position
        self.kind = position
        self.key = _KeyCache(self._key).__getitem__

    def _key(self, t):
        mo = self.monoid
        c = t >> mo.comp_shift
        nc = len(self.twists)
        e = self.mono_order.key(t & mo.mono_mask)
        if self.position == "top":
            return (e + self.twists[c] * self.mono_order.deg_weight) * nc + (nc - 1 - c)
        return ((nc - 1 - c) << (BITS * mo.n + 1)) + e

    def degree(self, t):
        mo = self.monoid
        return ((t >> mo.deg_shift) & mo.field_mask) + self.twists[t >> mo.comp_shift]


class SchreyerOrder:
    """Order induced on a free module by the lead terms of its images.

    ``m e_i > n e_j`` when ``LT(m g_i) > LT(n g_j)`` in ``ambient``, ties
    broken in favour of the smaller index.
    """

    kind = "schreyer"

    def __init__(self, ambient, lead_terms, twists):
        self.ambient = ambient
        self.monoid = ambient.monoid
        self.lead_terms = tuple(lead_terms)
        self.twists = tuple(twists)
        self.key = _KeyCache(self._key).__getitem__

    def _key(self, t):
        mo = self.monoid
        c = t >> mo.comp_shift
        nc = len(self.lead_terms)
        return self.ambient.key(self.lead_terms[c] + (t & mo.mono_mask)) * nc + (nc - 1 - c)

    def degree(self, t):
        mo = self.monoid
        return ((t >> mo.deg_shift) & mo.field_mask) + self.twists[t >> mo.comp_shift]
