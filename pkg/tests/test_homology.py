import pytest

from gradalg import (BoundExceeded, FPModule, Ideal, PdResult, QuotientRing, depth, ext, grade,
                     hilbert, pd, resolve, restrict, syzygy, tensor, tor, transpose)
from gradalg.homology import INFINITY, ext_is_zero, tor_is_zero
from gradalg.linalg import oracle_hilbert_function


@pytest.fixture
def R():
    return QuotientRing(list("xyzw"), ["x*y"])


@pytest.fixture
def p(R):
    return Ideal(R, ["y", "z", "w"])


def test_resolution_of_residue_field_over_node():
    S = QuotientRing(["x", "y"], ["x*y"])
    res = resolve(FPModule.residue_field(S), 5)
    assert res.ranks() == [1, 2, 2, 2, 2, 2]
    assert not res.terminated
    assert res.check_complex() and res.check_minimal()
    assert res.betti()[5, 5] == 2


def test_periodic_resolution_of_cyclic(R):
    res = resolve(FPModule.cyclic(Ideal(R, ["x"])), 4)
    assert res.ranks() == [1, 1, 1, 1, 1]
    entries = [str(m[0][0]).lstrip("-") for m in res.matrices()]
    assert entries == ["x", "y", "x", "y"]


def test_free_module_resolution_stops(R):
    res = resolve(FPModule.free(R, [0, 1]), 5)
    assert res.terminated and res.ranks() == [2]
    assert pd(FPModule.free(R, [0])) == PdResult(True, 0)


def test_koszul_ranks():
    P = QuotientRing(list("xyzw"), [])
    res = resolve(FPModule.residue_field(P), 8)
    assert res.terminated and res.ranks() == [1, 4, 6, 4, 1]
    assert pd(FPModule.residue_field(P)) == PdResult(True, 4)


def test_pd_results():
    S = QuotientRing(["x", "y"], ["x*y"])
    assert pd(FPModule.residue_field(S), 8) == PdResult(False, 8)
    assert str(PdResult(False, 8)) == "AtLeast(8)"
    assert PdResult.parse("Finite(1)") == PdResult(True, 1)


def test_transpose(R, p):
    assert transpose(FPModule.free(R, [0, 0])).is_zero()
    N = transpose(FPModule.cyclic(p))
    assert N.mu() == 3 and N.num_relations == 1
    assert pd(N) == PdResult(True, 1)
    T = transpose(FPModule.cyclic(Ideal(R, ["x"])))
    assert T.mu() == 1 and T.num_relations == 1
    assert hilbert(T, 5) == hilbert(FPModule.from_matrix(R, [["x"]], [-1], [0]), 5)


def test_syzygies(R):
    P = QuotientRing(list("xzwu"), [])
    assert syzygy(FPModule.residue_field(P), 3).mu() == 4
    assert syzygy(FPModule.free(R, [0]), 1).is_zero()
    om = syzygy(FPModule.cyclic(Ideal(R, ["x"])), 1)
    assert om.mu() == 1
    assert hilbert(om, 5) == hilbert(FPModule.from_matrix(R, [["y"]], [1], [2]), 5)


def test_tor(R, p):
    M, N = FPModule.cyclic(Ideal(R, ["x"])), transpose(FPModule.cyclic(p))
    assert tor_is_zero(M, N, 1)
    assert hilbert(tor(M, N, 0), 5) == hilbert(tensor(M, N), 5)
    # y is a nonzerodivisor on R/(x), so Tor_1 vanishes and Tor_2 = R/(x,y)(-2)
    Y = FPModule.cyclic(Ideal(R, ["y"]))
    assert tor_is_zero(M, Y, 1)
    T = tor(M, Y, 2)
    assert hilbert(T, 5) == oracle_hilbert_function(T, 5)
    assert hilbert(T, 5)[2] == 1 and hilbert(T, 5)[3] == 2


def test_ext(R, p):
    assert hilbert(ext(FPModule.free(R, [0]), transpose(FPModule.cyclic(p)), 0), 4) == \
        hilbert(transpose(FPModule.cyclic(p)), 4)
    V = QuotientRing(list("xyz"), ["x^2", "x*y", "y^2"])
    assert not ext_is_zero(FPModule.cyclic(Ideal(V, ["x"])), FPModule.free(V, [0]), 1)
    trN = transpose(transpose(FPModule.cyclic(p)))
    F = FPModule.free(R, [0])
    assert ext_is_zero(trN, F, 1)
    assert not ext_is_zero(trN, F, 2)


def test_bound_exceeded():
    S = QuotientRing(["x", "y"], ["x*y"])
    k = FPModule.residue_field(S)
    with pytest.raises(BoundExceeded):
        tor(k, k, 5, max_res=3)


def test_depth(R, p):
    assert depth(FPModule.free(R, [])) == INFINITY
    assert depth(FPModule.cyclic(Ideal(R, ["x"]))) == 3
    N = transpose(FPModule.cyclic(p))
    assert depth(N) == depth(N, method="ext") == 2
    assert depth(FPModule.residue_field(R)) == 0


def test_depth_of_third_syzygy():
    R = QuotientRing(list("xyzwu"), ["x*y"])
    S = R.quotient(["y"])
    M = restrict(syzygy(FPModule.residue_field(S), 3), R)
    assert depth(M) == 3
    assert depth(M, method="ext") == 3


def test_grade(R):
    assert grade(Ideal(R, ["x", "y"])) == 1
    assert grade(Ideal(R, ["z", "w"])) == 2
    assert grade(Ideal(R, ["x"])) == 0
