from fractions import Fraction

import pytest
from hypothesis import given

from conftest import series, small_q
from motent import PreconditionError, RingMismatchError, TruncatedSeries
from motent.series import RING_Q, RING_QZ, Poly, format_series


def test_poly_arithmetic():
    assert Poly([1, 2]) * Poly([1, -1]) == Poly([1, 1, -2])
    assert Poly([1, 0, 0]).degree == 0
    assert Poly().is_zero() and Poly().degree == -1
    assert Poly([3]).constant() == 3 and Poly.z(2).constant() is None
    assert Poly([1, 1]).compose(Poly.z(2)) == Poly([1, 0, 1])
    assert Poly([1, 2, 3])(Fraction(-1)) == 2


def test_geometric_and_binomial():
    g = TruncatedSeries.geometric(Fraction(2, 3), 5)
    assert list(g.coeffs) == [Fraction(2, 3) ** n for n in range(6)]
    assert g * TruncatedSeries.binomial(Fraction(2, 3), 5) == TruncatedSeries.one(5)


def test_mixed_truncation_takes_minimum():
    assert (TruncatedSeries.one(3) + TruncatedSeries.one(5)).trunc == 3
    assert (TruncatedSeries.one(7) * TruncatedSeries.geometric(1, 4)).trunc == 4


def test_log_needs_unit_constant_term():
    with pytest.raises(PreconditionError):
        TruncatedSeries.from_coeffs([2, 1], 4).log()
    with pytest.raises(PreconditionError):
        TruncatedSeries.from_coeffs([0, 1], 4).inverse()


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        TruncatedSeries.one(3) + TruncatedSeries.one(3, RING_QZ)


def test_log_of_geometric():
    # log 1/(1 - t) = sum t^n / n
    assert list(TruncatedSeries.geometric(1, 6).log().coeffs) == [0] + [Fraction(1, n) for n in range(1, 7)]


def test_fractional_power():
    sq = TruncatedSeries.from_coeffs([1, 1], 6).power(Fraction(1, 2))
    assert sq * sq == TruncatedSeries.from_coeffs([1, 1], 6)
    assert sq[2] == Fraction(-1, 8)


def test_format():
    f = TruncatedSeries.from_coeffs([1, Fraction(-1, 2), 0, 3], 3)
    assert format_series(f) == "1 - 1/2 t + 3 t^3 + O(t^4)"


def test_evaluate_qz_needs_z():
    f = TruncatedSeries.from_coeffs([Poly([1]), Poly([0, 1])], 1, RING_QZ)
    with pytest.raises(PreconditionError):
        f.evaluate(0.5)
    assert f.evaluate(Fraction(1, 2), Fraction(2)) == 2


@given(series(unit=True))
def test_exp_inverts_log(f):
    assert f.log().exp() == f


@given(series(unit=True), series(unit=True))
def test_log_turns_products_into_sums(f, g):
    assert (f * g).log() == f.log() + g.log()


@given(series(unit=True), small_q)
def test_power_laws(f, lam):
    assert f.power(lam) * f.power(1 - lam) == f


@given(series(unit=True))
def test_inverse(f):
    assert f * f.inverse() == TruncatedSeries.one(f.trunc)


@given(series(ring=RING_QZ))
def test_json_roundtrip(f):
    assert TruncatedSeries.from_json(f.to_json()) == f


def test_json_uses_exact_rationals():
    assert TruncatedSeries.from_coeffs([1, Fraction(1, 3)], 1).to_json()["coeffs"] == ["1/1", "1/3"]
    assert RING_Q == TruncatedSeries.one(2).ring
