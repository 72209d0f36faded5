"""Sparse vectors over a graded free module: ``dict[term] -> coefficient``.

A term is a packed int (see :mod:`gradalg.monomial`).  Every function takes
the characteristic ``p`` (0 for QQ) and never stores zero coefficients.
"""


def add(a, b, p):
    out = dict(a)
    for t, c in b.items():
        s = out.get(t, 0) + c
        if p:
            s %= p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def sub(a, b, p):
    out = dict(a)
    for t, c in b.items():
        s = out.get(t, 0) - c
        if p:
            s %= p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def scale(a, c, p):
    if not c:
        return {}
    if p:
        return {t: v * c % p for t, v in a.items()}
    return {t: v * c for t, v in a.items()}


def neg(a, p):
    if p:
        return {t: p - v for t, v in a.items()}
    return {t: -v for t, v in a.items()}


def shift(a, s):
    """Multiply every term by the monomial/term offset ``s``."""
    return {t + s: c for t, c in a.items()}


def axpy(v, c, s, g, p):
    """In place: ``v += c * x^s * g``."""
    get = v.get
    if p:
        for t, a in g.items():
            tt = t + s
            val = (get(tt, 0) + c * a) % p
            if val:
                v[tt] = val
            else:
                del v[tt]
    else:
        for t, a in g.items():
            tt = t + s
            val = get(tt, 0) + c * a
            if val:
                v[tt] = val
            else:
                del v[tt]


def mul_poly(f, v, p):
    """Product of a polynomial ``f`` (component 0) and a vector ``v``."""
    out = {}
    for m, c in f.items():
        axpy(out, c, m, v, p)
    return out


def component_split(v, monoid):
    """``{comp: polynomial}`` view of a vector."""
    parts = {}
    shift_ = monoid.comp_shift
    mask = monoid.mono_mask
    for t, c in v.items():
        parts.setdefault(t >> shift_, {})[t & mask] = c
    return parts


def component_join(parts, monoid):
    shift_ = monoid.comp_shift
    out = {}
    for i, f in parts.items():
        base = i << shift_
        for m, c in f.items():
            out[base | m] = c
    return out


def remap(v, mapping, monoid):
    """Move component ``i`` to ``mapping[i]``; components mapped to None are dropped."""
    shift_ = monoid.comp_shift
    mask = monoid.mono_mask
    out = {}
    for t, c in v.items():
        j = mapping[t >> shift_]
        if j is not None:
            out[(j << shift_) | (t & mask)] = c
    return out
