import math
from fractions import Fraction

import numpy as np
import pytest

from motent import KClass, PreconditionError, kernels, parse_class
from motent.ffcount import affine_space, hasse_weil_zeta, projective_space
from motent.globalhw import (
    abscissa,
    count_polynomial,
    dirichlet_log_L,
    global_entropy,
    tail_bound_point,
    von_mangoldt,
    von_mangoldt_check,
)
from motent.series import Poly
from motent.verify import point_entropy_reference, zeta_em

PT = KClass.point()


def test_count_polynomials():
    assert count_polynomial(parse_class("P^2")) == Poly([1, 1, 1])
    assert count_polynomial(parse_class("A^2 - 2 pt")) == Poly([-2, 0, 1])
    assert abscissa(parse_class("P^2")) == 3 and abscissa(KClass.empty()) == 0


def test_rejects_non_uniform_atoms():
    with pytest.raises(PreconditionError):
        count_polynomial(parse_class("betti[1,2,1]"))
    with pytest.raises(PreconditionError):
        global_entropy(parse_class("fq:E"), 5.0)


def test_projective_plane_coefficients():
    c = dirichlet_log_L(parse_class("P^2"), 10)
    # c_(p^k) = (1 + p^k + p^(2k)) / k
    assert (c[2], c[4], c[8], c[3], c[9], c[6]) == (7, Fraction(21, 2), Fraction(73, 3), 13, Fraction(91, 2), 0)


@pytest.mark.parametrize("text,local", [("P^1", lambda p: projective_space(p, 1)), ("A^2", lambda p: affine_space(p, 2)), ("pt", lambda p: affine_space(p, 0))])
def test_consistency_with_local_zeta(text, local):
    L = dirichlet_log_L(parse_class(text), 50, None, 50)
    for p in (2, 3, 5):
        g = hasse_weil_zeta(local(p), 6).zeta.ghost()
        k, pk = 1, p
        while pk <= 50:
            assert L[pk] == Fraction(g[k]) / k
            k, pk = k + 1, pk * p


def test_product_law_is_exact():
    for n in (1, 2, 3):
        rhs = dirichlet_log_L(PT, 300)
        for m in range(1, n + 1):
            rhs = rhs + dirichlet_log_L(parse_class(f"A^{m}"), 300)
        assert dirichlet_log_L(parse_class(f"P^{n}"), 300) == rhs


def test_von_mangoldt():
    assert von_mangoldt(8) == {2: 1} and von_mangoldt(6) == {} and von_mangoldt(1) == {}
    assert von_mangoldt_check(10**4)


def test_point_entropy_frozen_value():
    # summed over p <= 10^5, k <= 60; the exact value is about 1.6376223
    assert global_entropy(PT, 2.0).value == pytest.approx(1.6376015204652803, rel=1e-12)


@pytest.mark.parametrize("pmax", [10**4, 10**5, 10**6])
def test_point_entropy_within_tail_bound_of_oracle(pmax):
    err = abs(global_entropy(PT, 2.0, pmax).value - point_entropy_reference(2.0))
    assert err <= tail_bound_point(pmax)


def test_truncation_change_bounded_by_complete_tail():
    a, b = global_entropy(PT, 2.0, 10**5).value, global_entropy(PT, 2.0, 10**6).value
    assert 0 < b - a <= tail_bound_point(10**5, 2.0, 10**6) * (1 + 1e-9)


def test_truncation_change_bounded_by_two_log_p_tail():
    # the bound sum_(p > pmax) 2 log(p) p^(-2) omits the log L part and k >= 2 terms
    a, b = global_entropy(PT, 2.0, 10**5).value, global_entropy(PT, 2.0, 10**6).value
    ps = kernels.prime_sieve(10**6)
    ps = ps[ps > 10**5].astype(np.float64)
    assert b - a < float(np.sum(2 * np.log(ps) * ps**-2.0))


@pytest.mark.parametrize("n,s", [(1, 3.0), (2, 4.5)])
def test_affine_space_shifts_the_point_series(n, s):
    a, b = global_entropy(parse_class(f"A^{n}"), s), global_entropy(PT, s - n)
    assert a.logL == pytest.approx(b.logL, rel=1e-13)
    assert a.sdds == pytest.approx(b.sdds * s / (s - n), rel=1e-13)
    z, dz = zeta_em(s - n)
    # the s d/ds weight is s rather than s - n, so the point's tail bound scales by s/(s - n)
    assert a.value == pytest.approx(math.log(z) - s * dz / z, abs=tail_bound_point(10**5, s - n) * s / (s - n))


@pytest.mark.parametrize("n,s", [(1, 3.0), (2, 4.5)])
def test_shift_law_as_point_entropy(n, s):
    assert global_entropy(parse_class(f"A^{n}"), s).value == pytest.approx(global_entropy(PT, s - n).value, abs=1e-6)


def test_precondition_on_s():
    with pytest.raises(PreconditionError):
        global_entropy(parse_class("P^2"), 3.0)
    assert global_entropy(KClass.empty(), 0.5).value == 0.0


def test_backends_agree():
    vals = [global_entropy(parse_class("P^1"), 3.5, 10**5, backend=b).value for b in kernels.backends()]
    assert max(vals) - min(vals) < 1e-12


def test_json():
    d = global_entropy(PT, 2.0, 1000, 5).to_json()
    assert set(d) == {"s", "value", "logL", "sdds", "pmax", "kmax"} and d["kmax"] == 5
