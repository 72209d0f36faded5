import pytest

from gradalg import Field, ParseError, QuotientRing, RingMismatch
from gradalg.groebner import NotHomogeneous


@pytest.fixture
def R():
    return QuotientRing(list("xyzw"), ["x*y"])


def test_parse_reduces_modulo_ideal(R):
    assert R("x^2*y + z") == R("z")
    assert R("x*y").is_zero()
    assert (R("x") * R("y")).is_zero()


def test_arithmetic(R):
    x, y, z, w = R.gens()
    assert (x + y) ** 2 == x ** 2 + y ** 2
    assert (x - z) * (x + z) == R("x^2 - z^2")
    assert x ** 0 == R.one
    assert (x + z).degree() == 1
    assert R("3*x - 3*x") == R.zero


def test_round_trip(R):
    for text in ["x^2 + 3*z*w - w^2", "-z", "x^3 - 2*y^3", "0", "1"]:
        f = R(text)
        assert R(str(f)) == f


def test_rational_coefficients():
    Q = QuotientRing(["x", "y"], [], field=Field.from_name("qq"))
    f = Q("1/2*x + 2/3*y")
    assert Q(str(f)) == f
    assert f * 6 == Q("3*x + 4*y")


def test_prime_field_wraps():
    R = QuotientRing(["x"], [])
    assert R("32003*x").is_zero()
    assert R("32004*x") == R("x")


@pytest.mark.parametrize("text, col", [("x + * y", 5), ("x + q", 5), ("x^", 3), ("(x + y", 7)])
def test_parse_errors_cite_position(R, text, col):
    with pytest.raises(ParseError) as info:
        R(text)
    assert info.value.line == 1
    assert info.value.col == col


def test_inhomogeneous_ideal_rejected():
    with pytest.raises(NotHomogeneous):
        QuotientRing(["x"], ["x + 1"])


def test_ring_mismatch(R):
    S = QuotientRing(["x", "y"], [])
    with pytest.raises(RingMismatch):
        R("x") + S("x")


def test_flags_and_dimension(R):
    flags = R.flags()
    assert flags["is_gorenstein"] and flags["is_cohen_macaulay"] and flags["is_complete_intersection"]
    assert R.dim() == 3
    T = QuotientRing(list("xyz"), ["x^2", "x*y", "y^2"])
    assert T.dim() == 1
    assert T.flag("is_cohen_macaulay")  # z is a nonzerodivisor
    assert not T.flag("is_gorenstein")


def test_equality_is_structural():
    a = QuotientRing(list("xy"), ["x*y"])
    b = QuotientRing(list("xy"), ["y*x"])
    assert a == b
    assert a != QuotientRing(list("xy"), ["x^2"])
