"""Hilbert series numerators of monomial ideals and their expansions.

The series of ``k[x_1..x_n]/L`` for a monomial ideal ``L`` is written as
``K(t) / (1 - t)^n``; ``K`` is an integer (Laurent) polynomial stored as
``{exponent: coefficient}``.
"""

from functools import lru_cache
from math import comb


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(out)


def _poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a, b, shift=0, sign=1):
    out = dict(a)
    for i, x in b.items():
        out[i + shift] = out.get(i + shift, 0) + sign * x
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _numerator(gens):
    if not gens:
        return ((0, 1),)
    for a_idx, a in enumerate(gens):
        for b in gens[a_idx + 1:]:
            shared = [i for i in range(len(a)) if a[i] and b[i]]
            if shared:
                i = shared[0]
                e = min(a[i], b[i])
                pivot = tuple(e if k == i else 0 for k in range(len(a)))
                plus = _minimalize(gens + (pivot,))
                colon = _minimalize(tuple(
                    tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gens))
                k1 = dict(_numerator(plus))
                k2 = dict(_numerator(colon))
                return tuple(sorted(_poly_add(k1, k2, shift=e).items()))
    # pairwise coprime generators: a regular sequence of monomials
    out = {0: 1}
    for g in gens:
        out = _poly_mul(out, {0: 1, sum(g): -1})
    return tuple(sorted(out.items()))


def monomial_numerator(gens):
    """Numerator ``K`` for the quotient by the monomial ideal on exponent tuples ``gens``."""
    gens = _minimalize(tuple(tuple(g) for g in gens))
    if any(sum(g) == 0 for g in gens):
        return {}
    return dict(_numerator(gens))


def shift(num, a):
    return {e + a: c for e, c in num.items()}


def add(a, b):
    return _poly_add(a, b)


def coefficient(num, nvars, d):
    """Coefficient of ``t^d`` in ``num / (1 - t)^nvars``."""
    if nvars == 0:
        return num.get(d, 0)
    return sum(c * comb(d - e + nvars - 1, nvars - 1) for e, c in num.items() if e <= d)


def root_multiplicity_at_one(num):
    """Multiplicity of ``t = 1`` as a root of ``num`` (None for the zero polynomial)."""
    if not num:
        return None
    lo = min(num)
    coeffs = [num.get(e, 0) for e in range(lo, max(num) + 1)]
    mult = 0
    while sum(coeffs) == 0:
        # synthetic division by (t - 1)
        q, acc = [], 0
        for c in reversed(coeffs):
            acc += c
            q.append(acc)
        q.pop()
        coeffs = list(reversed(q))
        mult += 1
    return mult


def divide_by_one_minus_t(num, times):
    """Exact quotient of ``num`` by ``(1 - t)^times``."""
    if not num or not times:
        return dict(num)
    lo = min(num)
    coeffs = [num.get(e, 0) for e in range(lo, max(num) + 1)]
    for _ in range(times):
        # coeffs = (1 - t) * q, solve from the low end
        q, acc = [], 0
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        if acc + coeffs[-1] != 0:
            raise ValueError("not divisible by (1 - t)")
        coeffs = q
    return {lo + i: c for i, c in enumerate(coeffs) if c}


def to_str(num, var="t"):
    if not num:
        return "0"
    parts = []
    for e in sorted(num):
        c = num[e]
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono:
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
