"""Standard graded quotient rings ``k[x_1..x_n]/I`` and their polynomials."""

import re

from . import hilbert
from . import vec
from .errors import ParseError, RingMismatch, UnsupportedRing
from .field import Field
from .groebner import ModuleGB, NotHomogeneous
from .monomial import Monoid, MonomialOrder

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class QuotientRing:
    """A standard graded ring ``k[vars]/ideal`` with a reduced Groebner basis of the ideal.

    ``flags`` may declare ``is_complete_intersection``, ``is_gorenstein``,
    ``is_cohen_macaulay`` or ``is_equidimensional``; every declared value is
    checked against the computed one when first used.
    """

    def __init__(self, variables, ideal=(), order="grevlex", field=None, flags=None, name=None):
        variables = list(variables)
        for v in variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.variables = tuple(variables)
        self.field = field if field is not None else Field()
        self.monoid = Monoid(len(variables))
        self.order = MonomialOrder(self.monoid, order)
        self.name = name
        self.declared_flags = dict(flags or {})
        self._index = {v: i for i, v in enumerate(variables)}
        self._flags = {}
        self._cache = {}
        self.defining_gb = []
        gens, texts = [], []
        for g in ideal:
            f = self._parse_raw(g) if isinstance(g, str) else dict(getattr(g, "terms", g))
            if f:
                gens.append(f)
                texts.append(g if isinstance(g, str) else poly_to_str(self, f))
        for f in gens:
            if len({self.monoid.degree(m) for m in f}) != 1:
                raise NotHomogeneous("defining ideal must be homogeneous")
        self.defining_ideal = gens
        self.ideal_text = texts
        if gens:
            self.defining_gb = _reduced_gb(self, gens)

    # -- identity ---------------------------------------------------------
    @property
    def nvars(self):
        return len(self.variables)

    def __repr__(self):
        rel = ", ".join(str(Polynomial(self, g)) for g in self.defining_ideal)
        base = f"{self.field.name}[{','.join(self.variables)}]"
        return f"{base}/({rel})" if rel else base

    def _signature(self):
        return (self.variables, self.order.kind, self.field.p,
                tuple(tuple(sorted(g.items())) for g in self.defining_gb))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self._signature() == other._signature()

    def __hash__(self):
        return hash(self._signature())

    def check_same(self, other):
        if other is not self and other != self:
            raise RingMismatch(f"ring mismatch: {self!r} vs {other!r}")

    def ambient(self):
        """The polynomial ring this ring is a quotient of."""
        if not self.defining_gb:
            return self
        if "ambient" not in self._cache:
            self._cache["ambient"] = QuotientRing(self.variables, (), self.order.kind, self.field)
        return self._cache["ambient"]

    def with_field(self, field):
        """The same presentation over another coefficient field."""
        return QuotientRing(self.variables, self.ideal_text, self.order.kind, field,
                            self.declared_flags, self.name)

    def quotient(self, extra, name=None):
        """``self / (extra)`` as a new ring (extra given as strings or polynomials)."""
        gens = list(self.ideal_text) + [e if isinstance(e, str) else str(e) for e in extra]
        return QuotientRing(self.variables, gens, self.order.kind, self.field, name=name)

    # -- normal forms -----------------------------------------------------
    def nf_poly(self, f):
        """Normal form of a polynomial dict modulo the defining ideal."""
        if not self.defining_gb or not f:
            return dict(f)
        return _nf(self, f, self._reducers())

    def _reducers(self):
        red = self._cache.get("reducers")
        if red is None:
            red = _make_reducers(self, self.defining_gb)
            self._cache["reducers"] = red
        return red

    def nf_vec(self, v):
        if not self.defining_gb or not v:
            return dict(v)
        parts = vec.component_split(v, self.monoid)
        out = {}
        for i, f in parts.items():
            g = self.nf_poly(f)
            if g:
                out[i] = g
        return vec.component_join(out, self.monoid)

    # -- element construction ----------------------------------------------
    def _parse_raw(self, text):
        return _Parser(self, text).parse()

    def parse(self, text):
        return Polynomial(self, self.nf_poly(self._parse_raw(text)))

    def __call__(self, x):
        if isinstance(x, Polynomial):
            self.check_same(x.ring)
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, dict):
            return Polynomial(self, self.nf_poly(x))
        c = self.field(x)
        return Polynomial(self, {0: c} if c else {})

    def gen(self, i):
        if isinstance(i, str):
            i = self._index[i]
        return Polynomial(self, self.nf_poly({self.monoid.vars[i]: self.field.one}))

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {0: self.field.one})

    def monomial_str(self, m):
        parts = []
        for v, e in zip(self.variables, self.monoid.exponents(m)):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    # -- invariants of the ring itself -------------------------------------
    def hilbert_numerator(self):
        if "hs" not in self._cache:
            lead = [max(g, key=self.order.key) for g in self.defining_gb]
            self._cache["hs"] = hilbert.monomial_numerator([self.monoid.exponents(m) for m in lead])
        return self._cache["hs"]

    def dim(self):
        num = self.hilbert_numerator()
        mult = hilbert.root_multiplicity_at_one(num)
        return -1 if mult is None else self.nvars - mult

    def codim(self):
        return self.nvars - self.dim()

    def ideal_mingens(self):
        """Minimal number of generators of the defining ideal."""
        if not self.defining_ideal:
            return 0
        amb = self.ambient()
        gb = ModuleGB(amb, [0], self.defining_ideal, augment=False)
        return len(gb.kept)

    def _ambient_betti(self):
        if "betti" not in self._cache:
            from .modules import FPModule
            from .homology import resolve
            amb = self.ambient()
            cols = [dict(g) for g in self.defining_ideal]
            m = FPModule(amb, [0], [self.monoid.degree(max(g)) for g in cols], cols)
            res = resolve(m, self.nvars + 1)
            self._cache["betti"] = res.ranks()
        return self._cache["betti"]

    def _computed_flag(self, name):
        if name in self._flags:
            return self._flags[name]
        if name == "is_complete_intersection":
            val = self.codim() == self.ideal_mingens()
        elif name == "is_cohen_macaulay":
            # Auslander-Buchsbaum over the ambient ring: CM iff pd_P(R) = codim
            val = self.flag("is_complete_intersection") or len(self._ambient_betti()) - 1 == self.codim()
        elif name == "is_gorenstein":
            val = self.flag("is_complete_intersection") or (
                self.flag("is_cohen_macaulay") and self._ambient_betti()[-1] == 1)
        elif name == "is_equidimensional":
            # graded CM rings are unmixed; otherwise only a declaration can set it
            val = self.flag("is_cohen_macaulay") or None
        else:
            raise KeyError(name)
        self._flags[name] = val
        return val

    def flag(self, name):
        """Verified ring property; a declared flag contradicting the computation raises."""
        val = self._computed_flag(name)
        declared = self.declared_flags.get(name)
        if val is None:
            return bool(declared)
        if declared is not None and bool(declared) != val:
            raise UnsupportedRing(f"declared {name}={declared} but computed {val}")
        return val

    def flags(self):
        return {k: self.flag(k) for k in ("is_complete_intersection", "is_gorenstein",
                                          "is_cohen_macaulay", "is_equidimensional")}


def _make_reducers(ring, polys):
    key = ring.order.key
    out = []
    for g in polys:
        lt = max(g, key=key)
        out.append((lt, ring.field.inv(g[lt]), g))
    return out


def _nf(ring, f, reducers):
    p = ring.field.p
    key = ring.order.key
    divides = ring.monoid.divides
    f = dict(f)
    rem = {}
    while f:
        t = max(f, key=key)
        for lt, inv_lc, g in reducers:
            if divides(lt, t):
                c = f[t] * inv_lc
                if p:
                    c %= p
                vec.axpy(f, -c, t - lt, g, p)
                break
        else:
            rem[t] = f.pop(t)
    return rem


def _reduced_gb(ring, gens):
    """Monic, inter-reduced Groebner basis of a homogeneous ideal, sorted by lead term."""
    gb = ModuleGB(ring, [0], gens, augment=False)
    p = ring.field.p
    key = ring.order.key
    basis = [vec.scale(g, ring.field.inv(g[max(g, key=key)]), p) for g in gb.basis]
    leads = [max(g, key=key) for g in basis]
    keep = [i for i, t in enumerate(leads)
            if not any(j != i and ring.monoid.divides(leads[j], t) and (leads[j] != t or j < i)
                       for j in range(len(basis)))]
    basis = [basis[i] for i in keep]
    out = []
    for i, g in enumerate(basis):
        lt = max(g, key=key)
        tail = _nf(ring, {t: c for t, c in g.items() if t != lt},
                   _make_reducers(ring, basis[:i] + basis[i + 1:]))
        tail[lt] = g[lt]
        out.append(tail)
    out.sort(key=lambda g: key(max(g, key=key)))
    return out


class Polynomial:
    """Immutable polynomial in normal form modulo the ring's defining ideal."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                self.ring.check_same(other.ring)
            return other.terms
        if isinstance(other, (int,)) or hasattr(other, "denominator"):
            c = self.ring.field(other)
            return {0: c} if c else {}
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, vec.add(self.terms, o, self.ring.field.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, vec.sub(self.terms, o, self.ring.field.p))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, vec.sub(o, self.terms, self.ring.field.p))

    def __neg__(self):
        return Polynomial(self.ring, vec.neg(self.terms, self.ring.field.p))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = vec.mul_poly(self.terms, o, self.ring.field.p)
        return Polynomial(self.ring, self.ring.nf_poly(prod))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.terms == o

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        """``[(coefficient, exponent tuple)]`` in strictly descending order."""
        key = self.ring.order.key
        mo = self.ring.monoid
        return [(self.terms[m], mo.exponents(m)) for m in sorted(self.terms, key=key, reverse=True)]

    def degree(self):
        if not self.terms:
            return None
        return max(self.ring.monoid.degree(m) for m in self.terms)

    def is_homogeneous(self):
        return len({self.ring.monoid.degree(m) for m in self.terms}) <= 1

    def lead_monomial(self):
        return self.ring.monoid.exponents(max(self.terms, key=self.ring.order.key)) if self.terms else None

    def __str__(self):
        return poly_to_str(self.ring, self.terms)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_to_str(ring, terms):
    if not terms:
        return "0"
    key = ring.order.key
    out = []
    for m in sorted(terms, key=key, reverse=True):
        c = ring.field.to_str(terms[m])
        neg = c.startswith("-")
        if neg:
            c = c[1:]
        mono = ring.monomial_str(m)
        if mono and c == "1":
            body = mono
        elif mono:
            body = f"{c}*{mono}"
        else:
            body = c
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive-descent parser for integer-coefficient polynomial expressions."""

    def __init__(self, ring, text, line=1, col=1):
        self.ring = ring
        self.text = text
        self.line, self.col0 = line, col
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self._fail(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos + len(text[pos:]) - len(text[pos:].lstrip()))
            start = m.start(m.lastindex)
            kind = ("int", "name", "op")[m.lastindex - 1]
            val = m.group(m.lastindex)
            if val == "**":
                val = "^"
            self.tokens.append((kind, val, start))
            pos = m.end()
        self.i = 0

    def _fail(self, msg, pos):
        raise ParseError(msg, self.line, self.col0 + pos)

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self._fail("empty expression", 0)
        f = self._expr()
        kind, val, pos = self._peek()
        if kind is not None:
            self._fail(f"unexpected token {val!r}", pos)
        return f

    def _expr(self):
        p = self.ring.field.p
        f = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            _, op, _ = self._next()
            g = self._term()
            f = vec.add(f, g, p) if op == "+" else vec.sub(f, g, p)
        return f

    def _term(self):
        p = self.ring.field.p
        f = self._unary()
        while self._peek()[0] == "op" and self._peek()[1] in ("*", "/"):
            _, op, pos = self._next()
            g = self._unary()
            if op == "*":
                f = self.ring.nf_poly(vec.mul_poly(f, g, p))
            else:
                if any(m for m in g):
                    self._fail("division by a non-constant", pos)
                c = g.get(0, 0)
                if not c:
                    self._fail("division by zero", pos)
                f = vec.scale(f, self.ring.field.inv(c), p)
        return f

    def _unary(self):
        kind, val, _ = self._peek()
        if kind == "op" and val in ("-", "+"):
            self._next()
            f = self._unary()
            return vec.neg(f, self.ring.field.p) if val == "-" else f
        return self._power()

    def _power(self):
        f = self._atom()
        if self._peek()[0] == "op" and self._peek()[1] == "^":
            self._next()
            kind, val, pos = self._next()
            if kind != "int":
                self._fail("exponent must be a nonnegative integer", pos)
            out = {0: self.ring.field.one}
            for _ in range(int(val)):
                out = self.ring.nf_poly(vec.mul_poly(out, f, self.ring.field.p))
            f = out
        return f

    def _atom(self):
        kind, val, pos = self._next()
        if kind == "int":
            c = self.ring.field(int(val))
            return {0: c} if c else {}
        if kind == "name":
            idx = self.ring._index.get(val)
            if idx is None:
                self._fail(f"unknown variable {val!r}", pos)
            return {self.ring.monoid.vars[idx]: self.ring.field.one}
        if kind == "op" and val == "(":
            f = self._expr()
            k2, v2, p2 = self._next()
            if v2 != ")":
                self._fail("expected ')'", p2)
            return f
        if kind is None:
            self._fail("unexpected end of expression", pos)
        self._fail(f"unexpected token {val!r}", pos)


def parse_polynomial(text, ring, line=1, col=1):
    """Parse ``text`` into a normal-form :class:`Polynomial` of ``ring``."""
    return Polynomial(ring, ring.nf_poly(_Parser(ring, text, line, col).parse()))
