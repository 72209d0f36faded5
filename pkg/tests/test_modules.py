import pytest

from gradalg import (FPModule, Ideal, QuotientRing, cokernel, dim_module, direct_sum, dual,
                     fitting_ideal, hilbert, hilbert_series, hom, kernel, minimalize, tensor, transpose)
from gradalg.linalg import oracle_hilbert_function


@pytest.fixture
def R():
    return QuotientRing(list("xyzw"), ["x*y"])


@pytest.fixture
def p(R):
    return Ideal(R, ["y", "z", "w"])


def multiplicity(M):
    h, _ = hilbert_series(M).reduced()
    return sum(h.values())


def test_unit_presentation_is_zero(R):
    assert FPModule.from_matrix(R, [["1"]]).is_zero()


def test_padded_presentation_minimalizes(R):
    # the unit entry cancels the second generator together with the only relation
    M = minimalize(FPModule.from_matrix(R, [["x"], ["1"]]))
    assert M.rank == 1 and M.num_relations == 0
    padded = minimalize(FPModule.from_matrix(R, [["x", "0"], ["1", "x"]]))
    assert padded.rank == 1 and padded.num_relations == 1
    assert hilbert(padded, 4) == hilbert(FPModule.cyclic(Ideal(R, ["x^2"])), 4)


def test_mu(R, p):
    assert FPModule.cyclic(p).mu() == 1
    assert FPModule.from_matrix(R, [["y", "z", "w"]]).mu() == 1
    assert transpose(FPModule.cyclic(p)).mu() == 3


def test_tensor_of_cyclics(R):
    t = tensor(FPModule.cyclic(Ideal(R, ["x"])), FPModule.cyclic(Ideal(R, ["y"])))
    assert hilbert(t, 5) == hilbert(FPModule.cyclic(Ideal(R, ["x", "y"])), 5)


def test_tensor_with_ring_is_identity(R, p):
    M = transpose(FPModule.cyclic(p))
    assert hilbert(tensor(M, FPModule.free(R, [0])), 5) == hilbert(M, 5)


def test_tensor_matches_oracle(R, p):
    T = tensor(FPModule.cyclic(Ideal(R, ["x"])), transpose(FPModule.cyclic(p)))
    assert hilbert(T, 4) == oracle_hilbert_function(T, 4)


def test_hom_and_dual(R, p):
    M = FPModule.cyclic(Ideal(R, ["x"]))
    assert hilbert(hom(FPModule.free(R, [0]), M), 5) == hilbert(M, 5)
    assert dual(FPModule.cyclic(p)).is_zero()  # torsion module
    Nd = dual(transpose(FPModule.cyclic(p)))
    assert dim_module(Nd) == 3
    # multiplicity ratio against R is the rank
    assert multiplicity(Nd) == 2 * multiplicity(FPModule.free(R, [0]))


def test_kernel_image_cokernel(R):
    F = FPModule.free(R, [0])
    assert kernel([["1"]], F, F).is_zero()
    K = kernel([["x"]], F, FPModule.free(R, [-1]))
    assert K.mu() == 1 and K.gen_degrees == (1,)
    # ker(x) = (y) = R/(x) shifted by one
    assert hilbert(K, 5) == hilbert(FPModule.from_matrix(R, [["x"]], [1], [2]), 5)
    C = cokernel([["x"]], FPModule.free(R, [1]), F)
    assert hilbert(C, 5) == hilbert(FPModule.cyclic(Ideal(R, ["x"])), 5)


def test_fitting_ideals(R, p):
    assert fitting_ideal(FPModule.cyclic(Ideal(R, ["x"])), 0) == Ideal(R, ["x"])
    assert fitting_ideal(FPModule.free(R, [0]), 1).is_unit()
    assert fitting_ideal(FPModule.free(R, [0]), 0).is_zero()
    assert fitting_ideal(FPModule.cyclic(p), 0) == p
    # Fitting ideals are presentation independent
    X = FPModule.from_matrix(R, [["y", "z", "w", "x*y"]], [0], [1, 1, 1, 2])
    assert fitting_ideal(X, 0) == p
    N = transpose(FPModule.cyclic(p))
    assert fitting_ideal(N, 2) == p
    assert fitting_ideal(N, 3).is_unit()


def test_hilbert_functions(R):
    S = QuotientRing(["x", "y"], ["x*y"])
    assert hilbert(FPModule.free(S, [0]), 5).as_list() == [1, 2, 2, 2, 2, 2]
    assert str(hilbert_series(FPModule.free(S, [0]))) == "(1 + t)/(1 - t)"
    assert dim_module(FPModule.free(S, [0])) == 1
    assert hilbert(FPModule.free(R, [0]), 1)[1] == 4
    assert dim_module(FPModule.free(R, [0])) == 3
    assert dim_module(FPModule.free(R, [])) == -1


def test_direct_sum_is_additive(R, p):
    A, B = FPModule.cyclic(p), transpose(FPModule.cyclic(p))
    S = direct_sum(A, B)
    assert all(hilbert(S, 4)[d] == hilbert(A, 4)[d] + hilbert(B, 4)[d] for d in range(-1, 5))


def test_annihilator(R, p):
    assert FPModule.cyclic(Ideal(R, ["x"])).annihilator() == Ideal(R, ["x"])
    assert FPModule.free(R, []).annihilator().is_unit()
    assert FPModule.free(R, [0]).annihilator().is_zero()
