"""Minimal graded free resolutions and the functors built on them."""

import math
import threading
from dataclasses import dataclass

from .errors import BoundExceeded, EngineError, RingMismatch
from .groebner import Ideal, ModuleGB
from .monomial import SchreyerOrder, TermOrder
from .modules import (FPModule, homology, kron_left, kron_right, minimalize, transpose_cols)

INFINITY = math.inf
DEFAULT_MAX_RES = 8

_memo_lock = threading.Lock()


@dataclass(frozen=True)
class PdResult:
    """Projective dimension: exactly ``value`` when finite, else at least ``value``."""

    finite: bool
    value: int

    def __str__(self):
        return f"Finite({self.value})" if self.finite else f"AtLeast({self.value})"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        for name, finite in (("Finite", True), ("AtLeast", False)):
            if text.startswith(name + "(") and text.endswith(")"):
                return cls(finite, int(text[len(name) + 1:-1]))
        raise ValueError(f"not a pd value: {text!r}")


class BettiTable:
    """Graded Betti numbers ``beta[i][j]`` (homological index, internal degree)."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in entries.items() if v}

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def totals(self):
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        return [sum(v for (i, _), v in self.entries.items() if i == k) for k in range(top + 1)]

    def __str__(self):
        """Staircase layout: row ``j - i``, column ``i``."""
        if not self.entries:
            return "total: 0"
        cols = range(max(i for i, _ in self.entries) + 1)
        rows = sorted({j - i for i, j in self.entries})
        width = max(len(str(v)) for v in list(self.entries.values()) + self.totals()) + 1
        lab = max(len(f"{r}:") for r in rows + ["total"]) if rows else 6
        out = [" " * (lab + 1) + "".join(str(i).rjust(width) for i in cols)]
        out.append("total:".rjust(lab + 1) + "".join(str(t).rjust(width) for t in self.totals()))
        for r in rows:
            line = f"{r}:".rjust(lab + 1)
            for i in cols:
                v = self.entries.get((i, i + r), 0)
                line += (str(v) if v else "-").rjust(width)
            out.append(line)
        return "\n".join(out)

    def to_json(self):
        return [[i, j, v] for (i, j), v in sorted(self.entries.items())]


class Resolution:
    """Minimal graded free resolution ``F_L -> ... -> F_1 -> F_0 -> M``.

    ``differentials[i-1]`` holds the columns of ``d_i : F_i -> F_{i-1}``;
    ``twists[i]`` are the generator degrees of ``F_i``.  ``terminated``
    means the next syzygy module is known to be zero.
    """

    def __init__(self, module, schreyer=True):
        self.module = minimalize(module)
        self.ring = self.module.ring
        self.schreyer = schreyer
        self.twists = [list(self.module.gen_degrees)]
        self.differentials = []
        self.terminated = not self.module.relations
        self._pending = (list(self.module.relations), list(self.module.rel_degrees))
        self._order = TermOrder(self.ring.order, self.twists[0])

    @property
    def length(self):
        return len(self.differentials)

    def extend(self, bound):
        while not self.terminated and self.length < bound:
            self._step()
        return self

    def _step(self):
        gens, degs = self._pending
        prev = self.twists[-1]
        engine = ModuleGB(self.ring, prev, gens, degrees=degs, track=True, syz_mode="kept",
                          order=self._order)
        kept = engine.kept
        cols = [gens[k] for k in kept]
        tw = [degs[k] for k in kept]
        if not cols:
            self.terminated = True
            self._pending = ([], [])
            return
        self.differentials.append(cols)
        self.twists.append(tw)
        syz = engine.syzygies()
        self._pending = ([s for s, _ in syz], [d for _, d in syz])
        if self.schreyer:
            self._order = SchreyerOrder(engine.order, [max(c, key=engine.order.key) for c in cols], tw)
        else:
            self._order = TermOrder(self.ring.order, tw)
        if not syz:
            self.terminated = True

    # -- views ------------------------------------------------------------
    def ranks(self):
        return [len(t) for t in self.twists]

    def betti(self):
        return BettiTable({(i, j): tw.count(j) for i, tw in enumerate(self.twists) for j in set(tw)})

    def rank(self, i):
        return len(self.twists[i]) if i < len(self.twists) else 0

    def differential(self, i):
        """Columns of ``d_i``; empty list past the end of a terminated resolution."""
        if i <= 0:
            raise IndexError("d_0 is not part of the resolution")
        if i <= self.length:
            return self.differentials[i - 1]
        if self.terminated:
            return []
        raise BoundExceeded(f"d_{i} not computed (resolution length {self.length})")

    def check_complex(self):
        """``d_i ∘ d_{i+1} = 0`` for all computed ``i``."""
        from .modules import apply_cols
        for i in range(1, self.length):
            for col in self.differentials[i]:
                if apply_cols(self.differentials[i - 1], col, self.ring):
                    return False
        return True

    def check_minimal(self):
        """No differential has a nonzero constant entry."""
        mask = self.ring.monoid.mono_mask
        return all(t & mask for d in self.differentials for col in d for t in col)

    def matrices(self):
        """Differentials as row-major string matrices."""
        out = []
        for i, cols in enumerate(self.differentials, start=1):
            m = FPModule(self.ring, self.twists[i - 1], self.twists[i], cols)
            out.append([[str(e) for e in row] for row in m.matrix()])
        return out

    def to_json(self):
        return {"ranks": self.ranks(), "twists": self.twists, "terminated": self.terminated,
                "betti": self.betti().to_json()}


def resolve(M, bound=DEFAULT_MAX_RES):
    """Minimal free resolution of ``M`` computed through ``F_bound`` (or until it stops)."""
    if bound < 0:
        raise ValueError("length bound must be >= 0")
    with _memo_lock:
        res = M._cache.get("resolution")
        if res is None:
            res = Resolution(M)
            M._cache["resolution"] = res
        res.extend(bound)
    return res


def _needed(M, length, max_res):
    """Resolution long enough to have ``d_length`` (or terminated earlier)."""
    if length > max_res:
        res = resolve(M, max_res)
        if not res.terminated or res.length >= max_res:
            if not res.terminated:
                raise BoundExceeded(f"index needs d_{length} but the resolution bound is {max_res}")
        return res
    return resolve(M, length)


def pd(M, bound=DEFAULT_MAX_RES):
    if bound < 0:
        raise ValueError("bound must be >= 0")
    res = resolve(M, bound)
    if res.terminated and res.length <= bound:
        return PdResult(True, res.length)
    return PdResult(False, bound)


def transpose(M):
    """Auslander transpose from a minimal presentation: ``coker(A^T : F0* -> F1*)``."""
    M = minimalize(M)
    mo = M.ring.monoid
    cols = transpose_cols(M.relations, M.rank, mo)
    return FPModule(M.ring, [-b for b in M.rel_degrees], [-a for a in M.gen_degrees], cols)


def syzygy_module(M, n, max_res=DEFAULT_MAX_RES):
    """``Ω^n(M)`` presented as ``coker(d_{n+1})`` on ``F_n``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return minimalize(M)
    res = _needed(M, n + 1, max(max_res, n + 1))
    if n > res.length:
        return FPModule.free(M.ring, [])
    return FPModule(M.ring, res.twists[n], res.twists[n + 1] if n + 1 < len(res.twists) else [],
                    res.differential(n + 1), minimal=True)


syzygy = syzygy_module


def _tor_complex(M, N, i, max_res):
    M.ring.check_same(N.ring)
    res = _needed(M, i + 1, max_res)
    if i > res.length:
        return None
    mo = M.ring.monoid
    n0 = N.rank
    c_twists = [a + c for a in res.twists[i] for c in N.gen_degrees]
    c_rels = kron_left(res.rank(i), N.relations, n0, mo)
    alpha = kron_right(res.differential(i + 1), n0, mo) if i + 1 <= res.length else []
    if i == 0:
        beta, b_twists, b_rels = None, [], []
    else:
        beta = kron_right(res.differential(i), n0, mo)
        b_twists = [a + c for a in res.twists[i - 1] for c in N.gen_degrees]
        b_rels = kron_left(res.rank(i - 1), N.relations, n0, mo)
    return c_twists, c_rels, alpha, beta, b_twists, b_rels


def tor(M, N, i, max_res=DEFAULT_MAX_RES):
    """``Tor_i(M, N)`` from the minimal resolution of ``M`` tensored with ``N``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    data = _tor_complex(M, N, i, max_res)
    if data is None:
        return FPModule.free(M.ring, [])
    return homology(M.ring, *data)


def tor_is_zero(M, N, i, max_res=DEFAULT_MAX_RES):
    if i < 0:
        raise ValueError("i must be >= 0")
    data = _tor_complex(M, N, i, max_res)
    if data is None:
        return True
    return homology(M.ring, *data, zero_only=True)


def _ext_complex(M, N, i, max_res):
    M.ring.check_same(N.ring)
    res = _needed(M, i + 1, max_res)
    if i > res.length:
        return None
    mo = M.ring.monoid
    n0 = N.rank
    c_twists = [c - a for a in res.twists[i] for c in N.gen_degrees]
    c_rels = kron_left(res.rank(i), N.relations, n0, mo)
    alpha = []
    if i >= 1:
        alpha = kron_right(transpose_cols(res.differential(i), res.rank(i - 1), mo), n0, mo)
    if i + 1 <= res.length:
        beta = kron_right(transpose_cols(res.differential(i + 1), res.rank(i), mo), n0, mo)
        b_twists = [c - a for a in res.twists[i + 1] for c in N.gen_degrees]
        b_rels = kron_left(res.rank(i + 1), N.relations, n0, mo)
    else:
        beta, b_twists, b_rels = None, [], []
    return c_twists, c_rels, alpha, beta, b_twists, b_rels


def ext(M, N, i, max_res=DEFAULT_MAX_RES):
    """``Ext^i(M, N)`` as cohomology of ``Hom(F, N)``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    data = _ext_complex(M, N, i, max_res)
    if data is None:
        return FPModule.free(M.ring, [])
    return homology(M.ring, *data)


def ext_is_zero(M, N, i, max_res=DEFAULT_MAX_RES):
    if i < 0:
        raise ValueError("i must be >= 0")
    data = _ext_complex(M, N, i, max_res)
    if data is None:
        return True
    return homology(M.ring, *data, zero_only=True)


def restrict(M, base):
    """``M`` over ``R/J`` viewed as a module over ``base = R``.

    The variables must agree and the defining ideal of ``base`` must lie in
    that of ``M.ring``; the lifted presentation gains ``h * e_j`` for every
    generator ``h`` of ``J``.
    """
    ring = M.ring
    if base is ring:
        return M
    if base.variables != ring.variables or base.field.p != ring.field.p:
        raise RingMismatch("restriction needs the same variables and field")
    if any(ring.nf_poly(h) for h in base.defining_ideal):
        raise RingMismatch("the target ring is not a quotient of the base ring")
    mo = ring.monoid
    cols = list(M.relations)
    degs = list(M.rel_degrees)
    for j, a in enumerate(M.gen_degrees):
        for h in ring.defining_ideal:
            cols.append({t | (j << mo.comp_shift): c for t, c in h.items()})
            degs.append(a + mo.degree(next(iter(h))))
    return FPModule(base, M.gen_degrees, degs, cols)


def over_ambient(M):
    """``M`` viewed as a module over the ambient polynomial ring."""
    return restrict(M, M.ring.ambient())


def depth(M, method="auslander-buchsbaum", max_res=DEFAULT_MAX_RES):
    """Depth at the irrelevant maximal ideal; ``INFINITY`` for the zero module.

    ``auslander-buchsbaum``: ``n - pd_P(M)`` over the ambient polynomial ring
    ``P`` (depth does not depend on the ring acting).  ``ext``: least ``i``
    with ``Ext^i_R(k, M) != 0``, searched up to ``dim R + 1``.
    """
    if M.is_zero():
        return INFINITY
    if method == "ext":
        k = FPModule.residue_field(M.ring)
        return _first_nonvanishing_ext(k, M, M.ring.dim() + 1, max_res)
    if method != "auslander-buchsbaum":
        raise ValueError(f"unknown depth method {method!r}")
    MP = over_ambient(M)
    n = M.ring.nvars
    res = resolve(MP, n + 1)
    if not res.terminated:
        raise EngineError("resolution over the polynomial ring did not terminate")
    return n - res.length


def _first_nonvanishing_ext(A, M, limit, max_res):
    for i in range(limit + 1):
        if not ext_is_zero(A, M, i, max(max_res, i + 1)):
            return i
    raise EngineError(f"no nonvanishing Ext up to index {limit} for a nonzero module")


def grade(I, M=None, max_res=DEFAULT_MAX_RES):
    """``grade(I, M) = min{i : Ext^i(R/I, M) != 0}`` (``M`` defaults to ``R``)."""
    ring = I.ring
    M = FPModule.free(ring, [0]) if M is None else M
    ring.check_same(M.ring)
    if M.is_zero() or I.is_unit():
        return INFINITY
    return _first_nonvanishing_ext(FPModule.cyclic(I), M, ring.dim() + 1, max_res)


def is_nonzerodivisor_ideal(I):
    """``grade(I) >= 1``: ``Hom(R/I, R) = (0 : I)`` vanishes."""
    from .groebner import colon
    ring = I.ring
    return colon(Ideal(ring, []), I).is_zero()
