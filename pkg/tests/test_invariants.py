import pytest

from gradalg import (FPModule, Ideal, QuotientRing, Unsupported, UnsupportedRing, height,
                     is_locally_free_at, is_reflexive, is_torsion, is_torsionless, rank, restrict,
                     serre, support_contains, syzygy, tensor, transpose)
from gradalg.homology import INFINITY
from gradalg.invariants import (check_depth_formula, free_off, rigidity_witness, theorem_pipeline,
                                tor_independence)


@pytest.fixture
def R():
    return QuotientRing(list("xyzw"), ["x*y"])


@pytest.fixture
def p(R):
    return Ideal(R, ["y", "z", "w"])


@pytest.fixture
def MN(R, p):
    return FPModule.cyclic(Ideal(R, ["x"])), transpose(FPModule.cyclic(p))


def test_height(R, p):
    assert height(p) == 2
    assert height(Ideal(R, ["x"])) == 0  # (x) is a minimal prime
    assert height(Ideal(R, ["x", "z"])) == 1
    assert height(Ideal(R, ["1"])) == INFINITY


def test_height_needs_cohen_macaulay():
    S = QuotientRing(list("xyz"), ["x*z", "y*z"])  # plane union line, not equidimensional
    with pytest.raises(UnsupportedRing):
        height(Ideal(S, ["x"]))


def test_support(R, p):
    assert not support_contains(FPModule.cyclic(Ideal(R, ["x"])), p)
    assert support_contains(FPModule.cyclic(Ideal(R, ["y"])), p)


def test_torsion(R, p):
    assert is_torsion(FPModule.cyclic(p))
    assert not is_torsion(FPModule.free(R, [0]))
    assert is_torsion(FPModule.free(R, []))
    # R/(x) has no nonzerodivisor in its annihilator
    assert not is_torsion(FPModule.cyclic(Ideal(R, ["x"])))


def test_serre_on_example(MN):
    M, N = MN
    assert serre(M, 2).holds and serre(tensor(M, N), 2).holds
    assert serre(N, 1).holds and not serre(N, 2).holds
    assert is_torsionless(N) and not is_reflexive(N)
    rep = serre(N, 2)
    assert rep.certificate == [(1, True), (2, False)]


def test_serre_free_module(R):
    F = FPModule.free(R, [0])
    for n in range(4):
        assert serre(F, n).holds


def test_serre_needs_gorenstein():
    V = QuotientRing(list("xyz"), ["x^2", "x*y", "y^2"])
    with pytest.raises(UnsupportedRing):
        serre(FPModule.free(V, [0]), 1)


def test_rank(R, MN):
    _, N = MN
    assert rank(N) == 2
    assert rank(FPModule.free(R, [0, 0, 1])) == 3
    with pytest.raises(Unsupported):
        rank(FPModule.cyclic(Ideal(R, ["x"])))


def test_rank_of_transpose_in_four_dimensional_ring():
    R = QuotientRing(list("xyzwu"), ["x*y"])
    q = Ideal(R, ["x", "z", "w"])
    assert rank(transpose(FPModule.cyclic(q))) == 2


def test_local_freeness(R, p):
    X = FPModule.cyclic(p)
    assert not is_locally_free_at(X, p)
    assert is_locally_free_at(X, Ideal(R, ["x", "z", "w"]))
    assert is_locally_free_at(FPModule.free(R, [0, 0]), p)
    assert free_off(X, p) == (True, [1, 1, 1])


def test_tor_independence_and_depth_formula(MN):
    M, N = MN
    status, detail = tor_independence(M, N)
    assert status == "certified" and detail["pd_side"] == "N"
    rep = check_depth_formula(M, N)
    assert rep["status"] == "pass" and rep["equal"]
    assert (rep["depth_M"], rep["depth_N"], rep["depth_R"], rep["depth_tensor"]) == (3, 2, 3, 2)


def test_tor_independence_fails(R):
    M = FPModule.cyclic(Ideal(R, ["x"]))
    status, detail = tor_independence(M, M)
    assert status == "fails" and detail["nonzero_at"] == 1


def test_tor_independence_without_finite_pd():
    S = QuotientRing(["x", "y"], ["x*y"])
    k = FPModule.residue_field(S)
    status, detail = tor_independence(k, k, max_res=4)
    assert status == "fails" and detail == {"nonzero_at": 1}


def test_rigidity_witness(MN):
    M, N = MN
    w = rigidity_witness(M, N)
    assert w.valid and w.n == 2
    assert w.to_json()["tor1_zero"] and w.to_json()["tor2_nonzero"]


def test_theorem_pipeline(R, p):
    X = FPModule.cyclic(p)
    M = FPModule.cyclic(Ideal(R, ["x"]))
    hyp, con = theorem_pipeline(p, X, M, 1)
    assert [h for _, h, _ in hyp] == [True] * 9
    assert [c for _, c, _ in con] == [True] * 5


def test_theorem_pipeline_stops_on_failed_hypothesis(R, p):
    X = FPModule.cyclic(p)
    M = FPModule.cyclic(Ideal(R, ["x"]))
    hyp, con = theorem_pipeline(p, X, M, 2)  # height(p) = 2 != n + 1
    failed = [name for name, h, _ in hyp if not h]
    assert "height(p) = n+1" in failed
    assert con is None


def test_hypersurface_syzygy_example():
    R = QuotientRing(list("xyzwu"), ["x*y"])
    S = R.quotient(["y"])
    M = restrict(syzygy(FPModule.residue_field(S), 3), R)
    p = Ideal(R, ["x", "z", "w"])
    assert not support_contains(M, p)
    assert serre(M, 3).holds
    N = transpose(FPModule.cyclic(p))
    assert serre(tensor(M, N), 2).holds
