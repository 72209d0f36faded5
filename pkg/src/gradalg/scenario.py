"""Scenario language: parsing and evaluation.

A scenario is a line-oriented script::

    field gf32003
    ring R = quotient(x, y, z, w; grevlex; ideal(x*y)) {gorenstein: true}
    ideal p = (y, z, w)
    module M = cyclic((x))
    module N = transpose(cyclic(p))
    assert pd(N) == Finite(1)   # derived
    verify theorem(p, cyclic(p), M, 1)

Ideal and module literals live in the *current ring*: the most recently
declared one, or the ring named by ``use NAME`` / a trailing ``over NAME``.
Every ``assert`` carries a provenance tag (``paper``, ``derived`` or
``trivial``) in its trailing comment.
"""

import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext

from .errors import BoundExceeded, GradalgError, ParseError
from .field import Field
from .groebner import Ideal
from .homology import (DEFAULT_MAX_RES, INFINITY, PdResult, depth, ext_is_zero, grade, pd, resolve,
                       restrict, syzygy_module, tor_is_zero, transpose)
from . import invariants as inv
from .linalg import oracle_hilbert_function
from .modules import (FPModule, direct_sum, dual, hilbert_function, hom, minimalize, tensor, twist)
from .report import Check, Report
from .ring import QuotientRing, parse_polynomial

PROVENANCE = ("paper", "derived", "trivial")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_FLAG_NAMES = {
    "complete_intersection": "is_complete_intersection", "ci": "is_complete_intersection",
    "gorenstein": "is_gorenstein", "cohen_macaulay": "is_cohen_macaulay", "cm": "is_cohen_macaulay",
    "equidimensional": "is_equidimensional",
}


# -- values -------------------------------------------------------------------

class Advisory:
    """A computed value that is only bound-limited evidence."""

    def __init__(self, value, note):
        self.value, self.note = value, note


def render(v):
    """Canonical text of a value, shared by expected and computed sides."""
    if isinstance(v, Advisory):
        return render(v.value)
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v == INFINITY:
        return "inf"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(render(x) for x in v) + "]"
    return str(v)


def _json_value(v):
    if isinstance(v, Advisory):
        v = v.value
    if v is None or isinstance(v, (bool, int)):
        return v
    if v == INFINITY:
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return str(v)


def _expected_json(text):
    """JSON form of a canonical expected value (same typing as computed values)."""
    if text in ("true", "false"):
        return text == "true"
    if text == "none":
        return None
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    if text.startswith("["):
        return [int(x) for x in re.findall(r"-?\d+", text)]
    return text


# -- statements ---------------------------------------------------------------

class Statement:
    def __init__(self, kind, line, **kw):
        self.kind, self.line = kind, line
        self.__dict__.update(kw)


class Scenario:
    def __init__(self, name, statements, field_name=None):
        self.name = name
        self.statements = statements
        self.field_name = field_name


# -- low-level cursor ---------------------------------------------------------

class _Cursor:
    def __init__(self, text, line, col0=1):
        self.text, self.line, self.col0, self.pos = text, line, col0, 0

    def fail(self, msg, pos=None):
        raise ParseError(msg, self.line, self.col0 + (self.pos if pos is None else pos))

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s):
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s):
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s):
        if not self.eat(s):
            self.fail(f"expected {s!r}")

    def name(self):
        self.ws()
        m = _NAME.match(self.text, self.pos)
        if not m:
            self.fail("expected a name")
        self.pos = m.end()
        return m.group()

    def integer(self):
        self.ws()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def raw_until(self, stops):
        """Text up to the next top-level character in ``stops``; returns (text, start)."""
        self.ws()
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                if depth == 0 and ch in stops:
                    break
                depth -= 1
            elif depth == 0 and ch in stops:
                break
            self.pos += 1
        return self.text[start:self.pos], start

    def at_end(self):
        self.ws()
        return self.pos >= len(self.text)


# -- expression AST -----------------------------------------------------------
# ("name", str) | ("int", int) | ("call", fname, [args]) | ("polys", [(text, col)])
# | ("matrix", [[(text, col)]]) | ("list", [ints])

def _parse_expr(cur):
    cur.ws()
    if cur.peek("("):
        return _parse_polys(cur, "(", ")")
    if cur.peek("["):
        cur.expect("[")
        vals = []
        if not cur.eat("]"):
            while True:
                vals.append(cur.integer())
                if cur.eat("]"):
                    break
                cur.expect(",")
        return ("list", vals)
    if re.match(r"-?\d", cur.text[cur.pos:cur.pos + 2] or " "):
        return ("int", cur.integer())
    start = cur.pos
    name = cur.name()
    if name == "matrix":
        return _parse_matrix(cur)
    if cur.eat("("):
        args = []
        if not cur.eat(")"):
            while True:
                args.append(_parse_expr(cur))
                if cur.eat(")"):
                    break
                cur.expect(",")
        return ("call", name, args, start)
    return ("name", name, start)


def _parse_polys(cur, open_, close):
    cur.expect(open_)
    items = []
    if cur.eat(close):
        return ("polys", items)
    while True:
        text, start = cur.raw_until("," + close)
        if not text.strip():
            cur.fail("empty polynomial", start)
        items.append((text, cur.col0 + start))
        if cur.eat(close):
            return ("polys", items)
        cur.expect(",")


def _parse_matrix(cur):
    cur.expect("[")
    rows = []
    while True:
        rows.append(_parse_polys(cur, "[", "]")[1])
        if cur.eat("]"):
            break
        cur.expect(",")
    if len({len(r) for r in rows}) > 1:
        cur.fail("ragged matrix")
    return ("matrix", rows)


# -- statement parser ---------------------------------------------------------

def parse_scenario(text, name="<scenario>"):
    statements = []
    field_name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, comment = _split_comment(raw)
        if not body.strip():
            continue
        cur = _Cursor(body, lineno)
        kw = cur.name()
        if kw == "field":
            fname = cur.name()
            try:
                Field.from_name(fname)
            except ValueError as exc:
                cur.fail(str(exc))
            field_name = fname
            statements.append(Statement("field", lineno, field=fname))
        elif kw == "ring":
            statements.append(_parse_ring(cur))
        elif kw == "use":
            statements.append(Statement("use", lineno, ring=cur.name()))
        elif kw in ("ideal", "module"):
            target = cur.name()
            cur.expect("=")
            expr = _parse_expr(cur)
            over = None
            if cur.eat("over"):
                over = cur.name()
            statements.append(Statement(kw, lineno, name=target, expr=expr, over=over))
        elif kw == "assert":
            expr = _parse_expr(cur)
            cur.ws()
            if cur.eat("=="):
                op = "=="
            elif cur.eat("!="):
                op = "!="
            else:
                cur.fail("expected '==' or '!='")
            value, vstart = cur.raw_until("")
            if not value.strip():
                cur.fail("expected a value", vstart)
            tag = comment.strip().split()[0].rstrip(":").lower() if comment.strip() else ""
            if tag not in PROVENANCE:
                raise ParseError("assert needs a provenance comment: # paper | # derived | # trivial",
                                 lineno, len(body) + 1)
            statements.append(Statement("assert", lineno, expr=expr, op=op,
                                        value=_canonical_expected(value.strip(), cur, vstart),
                                        tag=tag, source=body.strip()))
        elif kw == "verify":
            expr = _parse_expr(cur)
            if expr[0] != "call" or expr[1] != "theorem" or len(expr[2]) != 4:
                cur.fail("expected theorem(p, X, M, n)")
            statements.append(Statement("verify", lineno, args=expr[2]))
        elif kw == "note":
            statements.append(Statement("note", lineno, text=body.strip()[4:].strip()))
        else:
            raise ParseError(f"unknown statement {kw!r}", lineno, 1)
        if kw not in ("assert", "note") and not cur.at_end():
            cur.fail("unexpected trailing text")
    return Scenario(name, statements, field_name)


def _split_comment(line):
    i = line.find("#")
    return (line, "") if i < 0 else (line[:i], line[i + 1:])


def _parse_ring(cur):
    line = cur.line
    name = cur.name()
    cur.expect("=")
    fn = cur.name()
    if fn == "quotient":
        cur.expect("(")
        variables = []
        while True:
            variables.append(cur.name())
            if cur.eat(";"):
                break
            cur.expect(",")
        order = cur.name()
        if order not in ("grevlex", "lex"):
            cur.fail(f"unknown monomial order {order!r}")
        gens = []
        if cur.eat(";"):
            cur.ws()
            if cur.name() != "ideal":
                cur.fail("expected ideal(...)")
            gens = _parse_polys(cur, "(", ")")[1]
        cur.expect(")")
        base = None
    else:
        # NAME / (polys)
        base = fn
        cur.expect("/")
        gens = _parse_polys(cur, "(", ")")[1]
        variables, order = None, None
    flags = {}
    if cur.eat("{"):
        while not cur.eat("}"):
            key = cur.name()
            cur.expect(":")
            val = cur.name()
            if key not in _FLAG_NAMES or val not in ("true", "false"):
                cur.fail(f"bad ring flag {key}: {val}")
            flags[_FLAG_NAMES[key]] = val == "true"
            cur.eat(",")
    return Statement("ring", line, name=name, variables=variables, order=order, gens=gens,
                     base=base, flags=flags)


def _canonical_expected(text, cur, start):
    t = text.strip()
    low = t.lower()
    if low in ("true", "false", "none", "inf"):
        return low
    if re.fullmatch(r"-?\d+", t):
        return str(int(t))
    if low in ("infinity", "∞"):
        return "inf"
    try:
        return str(PdResult.parse(t))
    except ValueError:
        pass
    m = re.fullmatch(r"\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]", t)
    if m:
        return "[" + ", ".join(str(int(x)) for x in re.findall(r"-?\d+", t)) + "]"
    cur.fail(f"unrecognized value {t!r}", start)


# -- evaluation ---------------------------------------------------------------

class EvalError(GradalgError):
    def __init__(self, msg, line):
        self.line = line
        super().__init__(f"line {line}: {msg}")


class Context:
    def __init__(self, field, max_degree=None, max_res=DEFAULT_MAX_RES):
        self.field = field
        self.max_degree = max_degree
        self.max_res = max_res
        self.rings = {}
        self.ideals = {}
        self.modules = {}
        self.current = None
        self._local = threading.local()

    @property
    def line(self):
        return getattr(self._local, "line", 0)

    @line.setter
    def line(self, value):
        self._local.line = value

    # name resolution
    def ring(self, name):
        if name not in self.rings:
            raise EvalError(f"undefined ring {name!r}", self.line)
        return self.rings[name]

    def need_ring(self):
        if self.current is None:
            raise EvalError("no ring declared yet", self.line)
        return self.current

    def polys(self, items, ring):
        return [parse_polynomial(text, ring, self.line, col) for text, col in items]

    def ideal(self, expr, ring=None):
        ring = ring or self.need_ring()
        if expr[0] == "polys":
            return Ideal(ring, self.polys(expr[1], ring))
        if expr[0] == "name":
            if expr[1] in self.ideals:
                return self.ideals[expr[1]]
            raise EvalError(f"undefined ideal {expr[1]!r}", self.line)
        if expr[0] == "call" and expr[1] == "ann":
            return self.module(expr[2][0]).annihilator()
        raise EvalError("expected an ideal", self.line)

    def module(self, expr, ring=None):
        kind = expr[0]
        if kind == "name":
            if expr[1] in self.modules:
                return self.modules[expr[1]]
            raise EvalError(f"undefined module {expr[1]!r}", self.line)
        if kind != "call":
            raise EvalError("expected a module expression", self.line)
        fn, args = expr[1], expr[2]
        ring = ring or self.need_ring()
        if fn == "cyclic":
            self._arity(fn, args, 1)
            return FPModule.cyclic(self.ideal(args[0], ring))
        if fn == "cokernel":
            if not args or args[0][0] != "matrix":
                raise EvalError("cokernel needs matrix[[...]]", self.line)
            rows = [self.polys(r, ring) for r in args[0][1]]
            gdeg = args[1][1] if len(args) > 1 else None
            rdeg = args[2][1] if len(args) > 2 else None
            return FPModule.from_matrix(ring, rows, gdeg, rdeg)
        if fn == "free":
            if args and args[0][0] == "list":
                return FPModule.free(ring, args[0][1])
            n = args[0][1] if args else 1
            return FPModule.free(ring, [0] * n)
        if fn == "residue":
            return FPModule.residue_field(ring)
        if fn == "transpose":
            return transpose(self.module(args[0], ring))
        if fn == "dual":
            return dual(self.module(args[0], ring))
        if fn == "tensor":
            return tensor(self.module(args[0], ring), self.module(args[1], ring))
        if fn == "hom":
            return hom(self.module(args[0], ring), self.module(args[1], ring))
        if fn == "sum":
            return direct_sum(self.module(args[0], ring), self.module(args[1], ring))
        if fn == "twist":
            return twist(self.module(args[0], ring), self._int(args[1]))
        if fn == "syzygy":
            return syzygy_module(self.module(args[0], ring), self._int(args[1]), self.max_res)
        if fn == "restrict":
            self._arity(fn, args, 2)
            if args[1][0] != "name":
                raise EvalError("restrict needs a ring name", self.line)
            return restrict(self.module(args[0], ring), self.ring(args[1][1]))
        raise EvalError(f"unknown module constructor {fn!r}", self.line)

    def _int(self, expr):
        if expr[0] != "int":
            raise EvalError("expected an integer", self.line)
        return expr[1]

    def _arity(self, fn, args, n):
        if len(args) != n:
            raise EvalError(f"{fn} takes {n} argument(s)", self.line)

    def bound(self, *mods):
        if self.max_degree is not None:
            return self.max_degree
        return max(m.default_bound() for m in mods)

    # assertion functions
    def value(self, expr):
        if expr[0] != "call":
            raise EvalError("assertions evaluate a function call", self.line)
        fn, args = expr[1], expr[2]
        handler = _FUNCS.get(fn)
        if handler is None:
            raise EvalError(f"unknown function {fn!r}", self.line)
        return handler(self, args)


def _mod(ctx, a):
    return ctx.module(a)


def _dim(ctx, args):
    a = args[0]
    if a[0] == "name" and a[1] in ctx.rings:
        return ctx.rings[a[1]].dim()
    if a[0] == "polys" or (a[0] == "name" and a[1] in ctx.ideals):
        return FPModule.cyclic(ctx.ideal(a)).dim()
    return ctx.module(a).dim()


def _pd(ctx, args):
    bound = ctx._int(args[1]) if len(args) > 1 else ctx.max_res
    return pd(_mod(ctx, args[0]), bound)


def _grade(ctx, args):
    I = ctx.ideal(args[0])
    M = _mod(ctx, args[1]) if len(args) > 1 else None
    return grade(I, M, ctx.max_res)


def _tor_independent(ctx, args):
    status, detail = inv.tor_independence(_mod(ctx, args[0]), _mod(ctx, args[1]), ctx.max_res)
    if status == "advisory":
        return Advisory(True, f"vanishing only through Tor_{detail['checked_through']}")
    return status == "certified"


def _depth_formula(ctx, args):
    rep = inv.check_depth_formula(_mod(ctx, args[0]), _mod(ctx, args[1]), ctx.max_res)
    if rep["status"] in ("advisory", "vacuous"):
        return Advisory(rep["equal"], rep["status"])
    if rep["status"] == "not-applicable":
        return Advisory(rep["equal"], "Tor-dependent pair")
    return rep["equal"]


def _witness(ctx, args):
    w = inv.rigidity_witness(_mod(ctx, args[0]), _mod(ctx, args[1]), ctx.max_res)
    return None if w is None else w.n


def _betti(ctx, args):
    res = resolve(_mod(ctx, args[0]), ctx._int(args[1]))
    return res.ranks()


def _hf(ctx, args):
    M = _mod(ctx, args[0])
    D = ctx._int(args[1]) if len(args) > 1 else ctx.bound(M)
    return hilbert_function(M, D).as_list()


def _hf_oracle(ctx, args):
    M = _mod(ctx, args[0])
    D = ctx._int(args[1]) if len(args) > 1 else ctx.bound(M)
    return hilbert_function(M, D) == oracle_hilbert_function(M, D)


def _contains(ctx, args):
    I = ctx.ideal(args[0])
    if args[1][0] != "polys" or len(args[1][1]) != 1:
        raise EvalError("contains(I, (f)) needs one polynomial in parentheses", ctx.line)
    f = ctx.polys(args[1][1], I.ring)[0]
    return I.contains(f.terms)


def _flag(ctx, args):
    ring = ctx.ring(args[0][1])
    key = _FLAG_NAMES.get(args[1][1], args[1][1])
    return ring.flag(key)


_FUNCS = {
    "dim": _dim,
    "height": lambda c, a: inv.height(c.ideal(a[0])),
    "pd": _pd,
    "depth": lambda c, a: depth(_mod(c, a[0])),
    "grade": _grade,
    "rank": lambda c, a: inv.rank(_mod(c, a[0]), c.max_res),
    "is_zero": lambda c, a: _mod(c, a[0]).is_zero(),
    "tor_zero": lambda c, a: tor_is_zero(_mod(c, a[0]), _mod(c, a[1]), c._int(a[2]),
                                         max(c.max_res, c._int(a[2]) + 1)),
    "ext_zero": lambda c, a: ext_is_zero(_mod(c, a[0]), _mod(c, a[1]), c._int(a[2]),
                                         max(c.max_res, c._int(a[2]) + 1)),
    "serre": lambda c, a: inv.serre(_mod(c, a[0]), c._int(a[1]), c.max_res).holds,
    "torsionless": lambda c, a: inv.is_torsionless(_mod(c, a[0]), c.max_res),
    "reflexive": lambda c, a: inv.is_reflexive(_mod(c, a[0]), c.max_res),
    "torsion": lambda c, a: inv.is_torsion(_mod(c, a[0])),
    "supp": lambda c, a: inv.support_contains(_mod(c, a[0]), c.ideal(a[1])),
    "locally_free": lambda c, a: inv.is_locally_free_at(_mod(c, a[0]), c.ideal(a[1])),
    "free_off": lambda c, a: inv.free_off(_mod(c, a[0]), c.ideal(a[1]))[0],
    "tor_independent": _tor_independent,
    "depth_formula": _depth_formula,
    "witness": _witness,
    "betti": _betti,
    "hf": _hf,
    "hf_oracle": _hf_oracle,
    "contains": _contains,
    "flag": _flag,
}


def _mu(ctx, args):
    a = args[0]
    if a[0] == "polys" or (a[0] == "name" and a[1] in ctx.ideals):
        return len(ctx.ideal(a).mingens())
    return _mod(ctx, a).mu()


_FUNCS["mu"] = _mu


def run_scenario(scenario, field=None, max_degree=None, max_res=DEFAULT_MAX_RES, seed=None,
                 jobs=1, clock=time.perf_counter):
    """Execute a parsed scenario and return its :class:`Report`.

    ``field`` (a name) overrides the scenario's ``field`` line.  With
    ``jobs > 1`` each run of consecutive asserts is evaluated on a thread
    pool; checks are still reported in script order.
    """
    fname = field or scenario.field_name or "gf32003"
    fld = Field.from_name(fname)
    ctx = Context(fld, max_degree, max_res)
    report = Report(scenario.name, {"field": fld.name,
                                    "maxDegree": "auto" if max_degree is None else max_degree,
                                    "maxRes": max_res, "seed": seed})
    stmts = scenario.statements
    i = 0
    with ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else nullcontext() as pool:
        while i < len(stmts):
            st = stmts[i]
            if pool is not None and st.kind == "assert":
                j = i
                while j < len(stmts) and stmts[j].kind == "assert":
                    j += 1
                batch = stmts[i:j]
                for checks in pool.map(lambda s: _guarded(ctx, s, clock), batch):
                    report.checks.extend(checks)
                i = j
                continue
            report.checks.extend(_guarded(ctx, st, clock))
            i += 1
    return report


def _guarded(ctx, st, clock):
    """Run one statement, returning its checks; engine errors carry the line."""
    ctx.line = st.line
    checks = []
    try:
        _execute(ctx, st, checks, clock)
    except (ParseError, EvalError):
        raise
    except GradalgError as exc:
        raise EvalError(f"{type(exc).__name__}: {exc}", st.line) from exc
    return checks


def _execute(ctx, st, checks, clock):
    if st.kind == "field":
        return
    if st.kind == "ring":
        if st.base is not None:
            base = ctx.ring(st.base)
            extra = [str(p) for p in ctx.polys(st.gens, base)]
            ring = QuotientRing(base.variables, list(base.ideal_text) + extra, base.order.kind,
                                ctx.field, st.flags, st.name)
        else:
            tmp = QuotientRing(st.variables, (), st.order, ctx.field)
            gens = [p.terms for p in ctx.polys(st.gens, tmp)]
            ring = QuotientRing(st.variables, gens, st.order, ctx.field, st.flags, st.name)
        ctx.rings[st.name] = ring
        ctx.current = ring
        return
    if st.kind == "use":
        ctx.current = ctx.ring(st.ring)
        return
    if st.kind in ("ideal", "module"):
        ring = ctx.ring(st.over) if st.over else None
        if st.kind == "ideal":
            ctx.ideals[st.name] = ctx.ideal(st.expr, ring)
        else:
            ctx.modules[st.name] = ctx.module(st.expr, ring)
        return
    if st.kind == "note":
        checks.append(Check(st.text, "out-of-scope", None, None, "advisory"))
        return
    if st.kind == "assert":
        t0 = clock()
        computed = ctx.value(st.expr)
        millis = int(round((clock() - t0) * 1000))
        text = render(computed)
        ok = (text == st.value) if st.op == "==" else (text != st.value)
        status = "advisory" if isinstance(computed, Advisory) else ("pass" if ok else "fail")
        expected = _expected_json(st.value) if st.op == "==" else f"!= {st.value}"
        checks.append(Check(st.source[len("assert"):].strip(), st.tag, expected,
                                   _json_value(computed), status, millis))
        return
    if st.kind == "verify":
        _verify_theorem(ctx, st, checks, clock)
        return
    raise EvalError(f"unhandled statement {st.kind}", st.line)


def _verify_theorem(ctx, st, checks, clock):
    p_expr, x_expr, m_expr, n_expr = st.args
    t0 = clock()
    p = ctx.ideal(p_expr)
    X = ctx.module(x_expr)
    M = ctx.module(m_expr)
    n = ctx._int(n_expr)
    hyp, con = inv.theorem_pipeline(p, X, M, n, ctx.max_res)
    millis = int(round((clock() - t0) * 1000))
    for name, holds, _ in hyp:
        checks.append(Check(f"hypothesis: {name}", "theorem", True, holds,
                                   "pass" if holds else "fail", millis))
        millis = 0
    if con is None:
        failed = [name for name, holds, _ in hyp if not holds]
        checks.append(Check("conclusions skipped", "theorem", None,
                                   "failed hypothesis: " + "; ".join(failed), "fail"))
        return
    for name, holds, _ in con:
        checks.append(Check(f"conclusion: {name}", "theorem", True, holds,
                                   "pass" if holds else "fail"))


def load_scenario_file(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario(text, name=str(path))
