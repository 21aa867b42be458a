from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import small_q, witt_elements
from motent import PreconditionError, TruncatedSeries, WittElement, adams, ghost, ghost_inv, teichmuller
from motent.series import RING_QZ, Poly
from motent.witt import euler_zeta, sigma_monomials

N = 8


def test_zero_and_unit():
    assert WittElement.zero(N).series == TruncatedSeries.one(N)
    assert WittElement.unit(N) == teichmuller(1, N)
    with pytest.raises(PreconditionError):
        WittElement(TruncatedSeries.from_coeffs([2], N))


def test_teichmuller_product_rule_examples():
    assert teichmuller(2, N) * teichmuller(3, N) == teichmuller(6, N)
    assert teichmuller(Fraction(-1, 2), N) * teichmuller(0, N) == WittElement.zero(N)


@given(small_q, small_q)
def test_teichmuller_product_rule(a, b):
    assert teichmuller(a, N) * teichmuller(b, N) == teichmuller(a * b, N)


@given(witt_elements(), witt_elements(), witt_elements())
def test_ring_laws(f, g, h):
    one, zero = WittElement.unit(N), WittElement.zero(N)
    assert (f + g) + h == f + (g + h) and f + g == g + f
    assert f + zero == f and f + (-f) == zero
    assert f * (g * h) == (f * g) * h and f * g == g * f
    assert f * one == f and f * zero == zero
    assert f * (g + h) == f * g + f * h


@given(witt_elements(trunc=5, ring=RING_QZ), witt_elements(trunc=5, ring=RING_QZ))
def test_ring_laws_over_qz(f, g):
    assert f * g == g * f
    assert ghost(f * g) == ghost(f) * ghost(g)


@given(witt_elements(), witt_elements())
def test_ghost_homomorphism(f, g):
    assert ghost(f + g) == ghost(f) + ghost(g)
    assert ghost(f * g) == ghost(f) * ghost(g)
    assert ghost_inv(ghost(f)) == f


@given(st.lists(st.tuples(small_q, st.integers(-3, 3)), max_size=4), st.integers(1, N))
def test_adams_of_teichmuller_sums(pairs, n):
    # sum_i c_i tau(x_i) has n-th Adams operation sum_i c_i x_i^n
    f = sigma_monomials(pairs, N)
    assert adams(f, n) == sum((c * x**n for x, c in pairs), Fraction(0))


def test_times_is_repeated_sum():
    f = teichmuller(Fraction(1, 2), N)
    assert f.times(3) == f + f + f
    assert f.times(-2) == -(f + f)
    assert f.times(0) == WittElement.zero(N)


def test_euler_zeta_is_binomial_series():
    assert list(euler_zeta(3, 4).series.coeffs) == [1, 3, 6, 10, 15]
    assert list(euler_zeta(-2, 4).series.coeffs) == [1, -2, 1, 0, 0]


def test_adams_index_checked():
    with pytest.raises(PreconditionError):
        adams(WittElement.unit(N), N + 1)


def test_teichmuller_over_qz_is_multiplicative():
    z = Poly.z()
    assert teichmuller(z, 5, RING_QZ) * teichmuller(z * z, 5, RING_QZ) == teichmuller(Poly.z(3), 5, RING_QZ)
