"""Module-theoretic predicates with certificates: support, torsion, Serre
conditions, rank, local freeness, the depth formula and Tor-rigidity witnesses."""

from dataclasses import dataclass, field

from .errors import BoundExceeded, Unsupported, UnsupportedRing
from .groebner import Ideal, colon, ideal_sum
from .homology import (DEFAULT_MAX_RES, INFINITY, PdResult, depth, ext_is_zero, grade, pd, syzygy_module,
                       tor_is_zero, transpose)
from .modules import FPModule, dim_module, fitting_ideal, minimalize, tensor

__all__ = [
    "dim_module", "height", "support_contains", "is_torsion", "SerreReport", "serre",
    "is_torsionless", "is_reflexive", "rank", "is_locally_free_at", "free_off",
    "check_depth_formula", "RigidityWitness", "rigidity_witness", "tor_independence",
    "theorem_pipeline",
]


def _json_depth(d):
    return "inf" if d == INFINITY else d


def height(I):
    """``dim R - dim R/I``; only valid on Cohen-Macaulay equidimensional rings."""
    ring = I.ring
    for gate in ("is_cohen_macaulay", "is_equidimensional"):
        if not ring.flag(gate):
            raise UnsupportedRing(f"height needs a ring with {gate}")
    if I.is_unit():
        return INFINITY
    return ring.dim() - dim_module(FPModule.cyclic(I))


def support_contains(M, p):
    """``p in Supp(M)``, i.e. ``ann(M) ⊆ p``."""
    return minimalize(M).annihilator().is_subset(p)


def is_torsion(M):
    """Every element is killed by a nonzerodivisor: ``(0 : ann M) = 0``."""
    ann = M.annihilator()
    return colon(Ideal(M.ring, []), ann).is_zero()


@dataclass
class SerreReport:
    module: FPModule
    n: int
    holds: bool
    certificate: list = field(default_factory=list)

    def to_json(self):
        return {"n": self.n, "holds": self.holds,
                "certificate": [{"i": i, "ext_tr_zero": z} for i, z in self.certificate]}


def _tr_ext_certificate(M, n, max_res):
    tr = transpose(M)
    R = FPModule.free(M.ring, [0])
    return [(i, ext_is_zero(tr, R, i, max(max_res, i + 1))) for i in range(1, n + 1)]


def serre(M, n, max_res=DEFAULT_MAX_RES):
    """(S_n) as ``Ext^i(Tr M, R) = 0`` for ``1 <= i <= n``; Gorenstein rings only."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return SerreReport(M, 0, True, [])
    if not M.ring.flag("is_gorenstein"):
        raise UnsupportedRing("Serre condition test needs the is_gorenstein gate")
    cert = _tr_ext_certificate(M, n, max_res)
    return SerreReport(M, n, all(z for _, z in cert), cert)


def is_torsionless(M, max_res=DEFAULT_MAX_RES):
    return _tr_ext_certificate(M, 1, max_res)[0][1]


def is_reflexive(M, max_res=DEFAULT_MAX_RES):
    return all(z for _, z in _tr_ext_certificate(M, 2, max_res))


def rank(M, max_res=DEFAULT_MAX_RES):
    """Alternating sum of Betti numbers; defined here only for finite pd."""
    from .homology import resolve
    d = pd(M, max_res)
    if not d.finite:
        raise Unsupported(f"rank needs finite projective dimension, got pd {d}")
    ranks = resolve(M, max_res).ranks()
    return sum((-1) ** i * r for i, r in enumerate(ranks))


def is_locally_free_at(M, p):
    """``M_p`` free, decided by Fitting ideals.

    With ``j`` least such that ``Fitt_j(M) ⊄ p``, the localization is free iff
    ``Fitt_{j-1}(M)_p = 0``, i.e. ``j = 0`` or ``ann(Fitt_{j-1}) ⊄ p``.
    """
    M = minimalize(M)
    for j in range(M.rank + 1):
        if not fitting_ideal(M, j).is_subset(p):
            break
    if j == 0:
        return True
    prev = fitting_ideal(M, j - 1)
    return not colon(Ideal(M.ring, []), prev).is_subset(p)


def _nonfree_locus_ideal(M):
    """``J`` with ``V(J)`` the non-free locus: ``sum_r Fitt_r * ann(Fitt_{r-1})``."""
    M = minimalize(M)
    ring = M.ring
    zero = Ideal(ring, [])
    J = fitting_ideal(M, 0)
    for r in range(1, M.rank + 1):
        prod = fitting_ideal(M, r) * colon(zero, fitting_ideal(M, r - 1))
        J = ideal_sum(J, prod)
    return J


def free_off(M, p, power_bound=8):
    """``M_q`` free for every prime ``q ⊉ p``, certified by ``p ⊆ rad(J)``.

    Radical membership is tested by ``g^k in J`` for ``k <= power_bound``;
    returns ``(holds, exponents)`` where ``exponents[i]`` is the power that
    worked for generator ``i`` (``None`` if none did up to the bound).
    """
    J = _nonfree_locus_ideal(M)
    exps = []
    for g in p.generators:
        power = g
        found = None
        for k in range(1, power_bound + 1):
            if J.contains(power.terms):
                found = k
                break
            power = power * g
        exps.append(found)
    return all(e is not None for e in exps), exps


def tor_independence(M, N, max_res=DEFAULT_MAX_RES):
    """Decide ``Tor_i(M, N) = 0`` for all ``i >= 1``.

    Returns ``(status, detail)`` with status ``"certified"`` (finite pd of one
    side and vanishing up to it), ``"fails"`` (some ``Tor_i != 0``) or
    ``"advisory"`` (vanishing only up to the resolution bound).
    """
    for A, B, label in ((N, M, "N"), (M, N, "M")):
        d = pd(A, max_res)
        if d.finite:
            for i in range(1, d.value + 1):
                if not tor_is_zero(A, B, i, max_res):
                    return "fails", {"pd_side": label, "pd": str(d), "nonzero_at": i}
            return "certified", {"pd_side": label, "pd": str(d)}
    for i in range(1, max_res):
        if not tor_is_zero(M, N, i, max_res):
            return "fails", {"nonzero_at": i}
    return "advisory", {"checked_through": max_res - 1}


def check_depth_formula(M, N, max_res=DEFAULT_MAX_RES):
    """``depth M + depth N = depth R + depth(M ⊗ N)`` for Tor-independent pairs."""
    ring = M.ring
    status, detail = tor_independence(M, N, max_res)
    R = FPModule.free(ring, [0])
    dM, dN, dR = depth(M), depth(N), depth(R)
    dT = depth(tensor(M, N))
    report = {"depth_M": _json_depth(dM), "depth_N": _json_depth(dN), "depth_R": _json_depth(dR),
              "depth_tensor": _json_depth(dT), "tor_independence": status, "tor_detail": detail}
    if INFINITY in (dM, dN, dT):
        report.update(equal=None, status="vacuous")
        return report
    equal = dM + dN == dR + dT
    report["equal"] = equal
    if status == "certified":
        report["status"] = "pass" if equal else "fail"
    elif status == "advisory":
        report["status"] = "advisory"
    else:
        report["status"] = "not-applicable"
    return report


@dataclass
class RigidityWitness:
    n: int
    Y: FPModule
    tor1_zero: bool
    tor2_nonzero: bool

    @property
    def valid(self):
        return self.tor1_zero and self.tor2_nonzero

    def to_json(self):
        return {"n": self.n, "tor1_zero": self.tor1_zero, "tor2_nonzero": self.tor2_nonzero,
                "Y_generators": minimalize(self.Y).rank}


def rigidity_witness(M, N, max_res=DEFAULT_MAX_RES):
    """First ``n in (1, 2)`` with ``Tor_1(Y_n, M) = 0 != Tor_2(Y_n, M)``, ``Y_n = Tr Ω^n Tr N``."""
    M.ring.check_same(N.ring)
    trN = transpose(N)
    for n in (1, 2):
        Y = transpose(syzygy_module(trN, n, max_res))
        if minimalize(Y).rank == 0:
            continue
        try:
            t1 = tor_is_zero(Y, M, 1, max_res)
            t2 = not tor_is_zero(Y, M, 2, max_res) if t1 else False
        except BoundExceeded:
            continue
        w = RigidityWitness(n, Y, t1, t2)
        if w.valid:
            return w
    return None


def _serre_check(M, n, max_res, want=True):
    rep = serre(M, n, max_res)
    return rep.holds == want, rep.to_json()


def _grade_check(p, max_res):
    g = grade(p, max_res=max_res)
    return g >= 1, {"grade": _json_depth(g)}


def _height_check(p, n):
    h = height(p)
    return h == n + 1, {"height": _json_depth(h)}


def _free_off_check(X, p):
    holds, powers = free_off(X, p)
    return holds, {"powers": powers}


def _pd_check(N, max_res):
    d = pd(N, max_res)
    return d == PdResult(True, 1), {"pd": str(d)}


def _tor_check(M, N, max_res):
    status, detail = tor_independence(M, N, max_res)
    return status == "certified", {"status": status, **detail}


def _run_checks(specs):
    out = []
    for name, fn in specs:
        try:
            holds, detail = fn()
        except Unsupported as exc:
            holds, detail = False, {"error": str(exc)}
        out.append((name, bool(holds), detail))
    return out


def theorem_pipeline(p, X, M, n, max_res=DEFAULT_MAX_RES):
    """Check the hypotheses on ``(R, p, X, M, n)`` and, if they all hold, the
    conclusions about ``N = Tr X``.

    Hypotheses: ``grade(p) >= 1``, ``height(p) = n+1``, ``R`` satisfies
    (S_{n+1}) (certified through the Cohen-Macaulay flag), ``X`` torsion,
    ``X_p`` not free, ``X_q`` free for ``q ⊉ p``, ``M != 0`` with (S_{n+2})
    and ``p ∉ Supp M``.  Conclusions: ``M⊗N`` satisfies (S_{n+1}); ``pd N = 1``
    and ``Tor_{>=1}(M, N) = 0``; ``N`` satisfies (S_n) but not (S_{n+1}).

    Returns ``(hypotheses, conclusions)`` as lists of ``(name, holds, detail)``;
    conclusions is ``None`` when some hypothesis fails.
    """
    ring = p.ring
    hyp = _run_checks([
        ("grade(p) >= 1", lambda: _grade_check(p, max_res)),
        ("height(p) = n+1", lambda: _height_check(p, n)),
        ("R satisfies (S_n+1)", lambda: (ring.flag("is_cohen_macaulay"), {"via": "Cohen-Macaulay ring"})),
        ("X is torsion", lambda: (is_torsion(X), {})),
        ("X_p not free", lambda: (not is_locally_free_at(X, p), {})),
        ("X_q free for q not containing p", lambda: _free_off_check(X, p)),
        ("M nonzero", lambda: (not M.is_zero(), {})),
        ("M satisfies (S_n+2)", lambda: _serre_check(M, n + 2, max_res)),
        ("p not in Supp(M)", lambda: (not support_contains(M, p), {})),
    ])
    if not all(h for _, h, _ in hyp):
        return hyp, None
    N = transpose(X)
    con = _run_checks([
        ("(1) M⊗N satisfies (S_n+1)", lambda: _serre_check(tensor(M, N), n + 1, max_res)),
        ("(2) pd(N) = 1", lambda: _pd_check(N, max_res)),
        ("(2) Tor_i(M,N) = 0 for i >= 1", lambda: _tor_check(M, N, max_res)),
        ("(3) N satisfies (S_n)", lambda: _serre_check(N, n, max_res)),
        ("(3) N fails (S_n+1)", lambda: _serre_check(N, n + 1, max_res, want=False)),
    ])
    return hyp, con
