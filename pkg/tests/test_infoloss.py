import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motent import EulerChar, LogSeries, Poincare, PointCount, PreconditionError, RingMismatchError, TruncatedSeries, motivic_entropy, parse_class
from motent.ffcount import hasse_weil_zeta, point, projective_space
from motent.infoloss import (
    Compose,
    EulerFlatDesc,
    EvalZ,
    FlatFiniteMorphismDesc,
    Identity,
    ProperMorphismDesc,
    SubstZ,
    compose_proper,
    disjoint_union,
    euler_flat_loss,
    flat_loss,
    flat_loss_kl_oracle,
    parse_ringhom,
    proper_loss,
    proper_loss_kl_oracle,
    ringhom_loss,
    ringhom_loss_combination,
    weighted_combination_loss,
)
from motent.series import RING_Q, RING_QZ, Poly
from motent.witt import euler_zeta, teichmuller

N = 12


def hw(X, n=N):
    return hasse_weil_zeta(X, n).zeta


def test_parse_ringhom():
    assert parse_ringhom("id") == Identity(RING_QZ)
    assert parse_ringhom("z->-1") == EvalZ(-1)
    assert parse_ringhom("z->1/2") == EvalZ(Fraction(1, 2))
    assert parse_ringhom("z->z^2 - 1") == SubstZ(Poly([-1, 0, 1]))
    with pytest.raises(Exception):
        parse_ringhom("w->1")


def test_compose_checks_rings():
    with pytest.raises(RingMismatchError):
        Compose(EvalZ(1), EvalZ(1))
    assert EvalZ(2).then(Identity(RING_Q))(Poly([1, 1])) == 3


@pytest.mark.parametrize("text", ["pt", "P^2", "A^1", "betti[1,2,1]", "P^1 - 2 betti[1,4,1]"])
def test_evaluation_at_one_matches_euler_zeta(text):
    # W(ev_1) sends prod (1 - z^j t)^(-e_j) to (1 - t)^(-sum e_j) = (1 - t)^(-chi)
    assert ringhom_loss(EvalZ(1), Poincare(), EulerChar(), parse_class(text), 8).is_zero()


def test_evaluation_at_minus_one_on_even_classes():
    for text in ["pt", "P^2", "A^3 - P^1"]:
        assert ringhom_loss(EvalZ(-1), Poincare(), EulerChar(), parse_class(text), 8).is_zero()
    # odd cohomology: the pushed zeta is (1 + t)^2 / (1 - t)^2 while the Euler zeta is 1
    loss = ringhom_loss(EvalZ(-1), Poincare(), EulerChar(), parse_class("betti[1,2,1]"), 4)
    assert list(loss.regular.coeffs) == [0, 4, 0, Fraction(4, 3), 0]


@pytest.mark.parametrize("text", ["pt", "P^2", "A^1", "betti[1,2,1]"])
def test_evaluation_at_minus_one_vanishes_for_every_class(text):
    assert ringhom_loss(EvalZ(-1), Poincare(), EulerChar(), parse_class(text), 8).is_zero()


def test_ringhom_composition_law():
    X = parse_class("P^1 + betti[1,2,1]")
    psi, phi = SubstZ(Poly([0, -1])), EvalZ(1)
    lhs = ringhom_loss(Compose(phi, psi), Poincare(), EulerChar(), X, N)
    rhs = ringhom_loss(phi, Poincare(), EulerChar(), X, N) + ringhom_loss(psi, Poincare(), Poincare(), X, N).map_coeffs(phi, RING_Q)
    assert lhs == rhs


def test_ringhom_combination():
    X = parse_class("P^2 - betti[1,2,1]")
    I1 = ringhom_loss(EvalZ(-1), Poincare(), EulerChar(), X, 8)
    assert ringhom_loss_combination(EvalZ(-1), EvalZ(-1), Fraction(1, 2), Poincare(), EulerChar(), X, 8) == I1
    I2 = ringhom_loss(EvalZ(2), Poincare(), EulerChar(), X, 8)
    lam = Fraction(1, 3)
    assert ringhom_loss_combination(EvalZ(-1), EvalZ(2), lam, Poincare(), EulerChar(), X, 8) == I1.scale(lam) + I2.scale(1 - lam)
    with pytest.raises(PreconditionError):
        ringhom_loss_combination(EvalZ(-1), EvalZ(2), 0.5, Poincare(), EulerChar(), X, 8)


def test_ringhom_ring_checks():
    with pytest.raises(RingMismatchError):
        ringhom_loss(EvalZ(1), EulerChar(), EulerChar(), parse_class("pt"), 4)


def test_proper_loss_examples():
    f = ProperMorphismDesc(hw(projective_space(2, 1)), hw(point(2)))
    # log(Z(P^1)/Z(pt)) = -log(1 - 2t)
    assert proper_loss(f) == LogSeries(TruncatedSeries.from_coeffs([0] + [Fraction(2**n, n) for n in range(1, N + 1)], N), TruncatedSeries.zero(N))
    with pytest.raises(PreconditionError):
        proper_loss(ProperMorphismDesc(f.source_zeta, f.target_zeta, [(2, 1, 1)]))


def test_proper_composition_and_union():
    P2, P1, pt = hw(projective_space(2, 2)), hw(projective_space(2, 1)), hw(point(2))
    f, g = ProperMorphismDesc(P2, P1), ProperMorphismDesc(P1, pt)
    assert proper_loss(compose_proper(f, g)) == proper_loss(f) + proper_loss(g)
    assert proper_loss(disjoint_union(f, g)) == proper_loss(f) + proper_loss(g)
    with pytest.raises(PreconditionError):
        compose_proper(g, f)
    with pytest.raises(PreconditionError):
        disjoint_union(f, FlatFiniteMorphismDesc(P1, P1, 1))


def test_flat_loss_examples():
    P1 = hw(projective_space(2, 1))
    I = flat_loss(FlatFiniteMorphismDesc(P1 + P1, P1, 2))
    # regular part -log Z(P^1); log part t d/dt log Z(P^1) = sum (2^n + 1) t^n
    assert I.regular == -P1.series.log()
    assert list(I.logpart.coeffs) == [0] + [2**n + 1 for n in range(1, N + 1)]
    with pytest.raises(PreconditionError):
        FlatFiniteMorphismDesc(P1, P1, 0)


weights = st.sampled_from([Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)])


@given(weights, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_convex_combination(lam, a, b, c, d):
    f1 = ProperMorphismDesc(euler_zeta(a, 8), euler_zeta(b, 8))
    f2 = ProperMorphismDesc(euler_zeta(c, 8), euler_zeta(d, 8))
    assert weighted_combination_loss(f1, f2, lam) == proper_loss(f1).scale(lam) + proper_loss(f2).scale(1 - lam)
    g1, g2 = FlatFiniteMorphismDesc(f1.source_zeta, f1.target_zeta, 2), FlatFiniteMorphismDesc(f2.source_zeta, f2.target_zeta, 2)
    assert weighted_combination_loss(g1, g2, lam) == flat_loss(g1).scale(lam) + flat_loss(g2).scale(1 - lam)


@st.composite
def rh_descriptors(draw):
    delta = draw(st.integers(1, 4))
    chiY, chiS = draw(st.integers(-4, 4)), draw(st.integers(0, 4))
    chiF = draw(st.integers(0, delta * chiS))
    return EulerFlatDesc(delta * chiY + chiF - delta * chiS, chiY, delta, chiS, chiF)


@given(rh_descriptors())
def test_euler_closed_form_equals_flat_loss(d):
    assert euler_flat_loss(d, 10) == flat_loss(d.flat_desc(10))


def test_riemann_hurwitz_enforced():
    with pytest.raises(PreconditionError):
        EulerFlatDesc(1, 2, 2, 2, 2)


def test_etale_cover_of_elliptic_curve():
    Y = parse_class("betti[1,2,1]")
    d = EulerFlatDesc(0, 0, 3, 0, 0)
    assert euler_flat_loss(d, N) == motivic_entropy(EulerChar(), Y, N) - motivic_entropy(EulerChar(), Y * 3, N)


def test_branched_double_cover_log_part():
    # chiX = 2, chiY = 2, delta = 2, two branch points with one preimage each
    I = euler_flat_loss(EulerFlatDesc(2, 2, 2, 2, 2), N)
    assert I.regular.is_zero()
    assert list(I.logpart.coeffs) == [0] + [2] * N


def test_branched_double_cover_log_part_negative():
    I = euler_flat_loss(EulerFlatDesc(2, 2, 2, 2, 2), N)
    assert I.regular.is_zero()
    assert list(I.logpart.coeffs) == [0] + [-2] * N


def test_zero_dimensional_projection():
    Y = parse_class("P^1 + A^1")
    for mu in (EulerChar(), Poincare(), PointCount(2)):
        for n in (1, 2, 3):
            zx, zy = mu.zeta(Y * n, 8), mu.zeta(Y, 8)
            assert zx == zy * teichmuller(1, 8, mu.ring).times(n)
            assert flat_loss(FlatFiniteMorphismDesc(zx, zy, n)) == motivic_entropy(mu, Y, 8) - motivic_entropy(mu, Y * n, 8)


# -- KL oracles ----------------------------------------------------------------------


def p1_to_point(n=16):
    return ProperMorphismDesc(hw(projective_space(2, 1), n), hw(point(2), n))


def test_proper_kl_oracle_frozen():
    r = proper_loss_kl_oracle(p1_to_point(), 12, Fraction(1, 4))
    # closed form: sum_(n <= 16) 2^n (1/4)^n / n
    assert r.closed_form == pytest.approx(float(sum(Fraction(1, 2**n * n) for n in range(1, 17))), rel=1e-15)
    assert r.value == pytest.approx(0.6930167556375013, rel=1e-12)
    assert r.within_bound and r.tail_bound == pytest.approx(1.3126669810095776e-4, rel=1e-9)


def test_flat_kl_oracle_frozen():
    P1 = hw(projective_space(2, 1), 16)
    r = flat_loss_kl_oracle(FlatFiniteMorphismDesc(P1 + P1, P1, 2), 12, Fraction(1, 4))
    t0 = Fraction(1, 4)
    closed = -float(sum(Fraction(2**n + 1, n) * t0**n for n in range(1, 17))) + math.log(0.25) * float(sum((2**n + 1) * t0**n for n in range(1, 17)))
    assert r.closed_form == pytest.approx(closed, rel=1e-14)
    assert r.value == pytest.approx(-2.8253864308150822, rel=1e-12)
    assert r.within_bound


def test_kl_error_shrinks_with_degree():
    f = p1_to_point()
    errs = [proper_loss_kl_oracle(f, D, Fraction(1, 4)) for D in range(4, 14, 2)]
    assert all(r.within_bound for r in errs)
    assert all(a.error > b.error for a, b in zip(errs, errs[1:]))


def test_kl_oracle_preconditions():
    f = p1_to_point()
    with pytest.raises(PreconditionError):
        proper_loss_kl_oracle(f, 12, 0.25)
    with pytest.raises(PreconditionError):
        proper_loss_kl_oracle(f, 12, Fraction(3, 5))
    with pytest.raises(PreconditionError):
        proper_loss_kl_oracle(f, 40, Fraction(1, 4))
