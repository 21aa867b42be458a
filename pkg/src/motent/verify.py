"""Batch verification suites, one per acceptance criterion.

Each suite returns a list of :class:`Check` records; ``run`` collects them.
Randomized inputs use fixed seeds so reports are reproducible.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import kernels
from .classes import EulerChar, KClass, PointCount, Poincare, kapranov_zeta, motivic_entropy, parse_class, poincare_entropy_terms
from .ffcount import (
    FqVarietyDef,
    affine_space,
    closed_point_counts,
    closed_points_by_orbits,
    count_points,
    cycle_counts_from_closed,
    hasse_weil_zeta,
    point,
    product,
    projective_space,
)
from .globalhw import dirichlet_log_L, global_entropy, von_mangoldt_check
from .infoloss import (
    Compose,
    EulerFlatDesc,
    EvalZ,
    FlatFiniteMorphismDesc,
    ProperMorphismDesc,
    SubstZ,
    compose_proper,
    disjoint_union,
    euler_flat_loss,
    flat_loss,
    flat_loss_kl_oracle,
    proper_loss,
    proper_loss_kl_oracle,
    ringhom_loss,
    weighted_combination_loss,
)
from .logring import LogSeries, entropy_op
from .series import RING_Q, RING_QZ, Poly, TruncatedSeries
from .witt import WittElement, adams, ghost, sigma_monomials, teichmuller

# -- Riemann zeta oracle (Euler-Maclaurin) -------------------------------------------


def _bernoulli(n: int) -> list:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


_B = _bernoulli(40)


def zeta_em(s: float, N: int = 20, K: int = 15) -> tuple:
    """``(zeta(s), zeta'(s))`` for real s > 1 by Euler-Maclaurin summation."""
    s = float(s)
    if s <= 1:
        raise ValueError("oracle implemented for s > 1")
    z = sum(n**-s for n in range(1, N))
    dz = -sum(math.log(n) * n**-s for n in range(1, N))
    lnN = math.log(N)
    z += N ** (1 - s) / (s - 1) + N**-s / 2
    dz += -lnN * N ** (1 - s) / (s - 1) - N ** (1 - s) / (s - 1) ** 2 - lnN * N**-s / 2
    for k in range(1, K + 1):
        c = float(_B[2 * k]) / factorial(2 * k)
        poch = 1.0
        dlog = 0.0
        for i in range(2 * k - 1):
            poch *= s + i
            dlog += 1.0 / (s + i)
        term = c * poch * N ** (-s - 2 * k + 1)
        z += term
        dz += term * (dlog - lnN)
    return z, dz


def point_entropy_reference(s: float) -> float:
    """``log zeta(s) - s zeta'(s)/zeta(s)``."""
    z, dz = zeta_em(s)
    return math.log(z) - s * dz / z


# -- reporting -----------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] C{self.criterion} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed, "detail": self.detail}


def _rand_q(rng: random.Random, lo=-3, hi=3, dens=(1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def _rand_witt(rng: random.Random, N: int, ring=RING_Q) -> WittElement:
    cs = [1] + [_rand_q(rng) for _ in range(N)]
    if ring == RING_QZ:
        cs = [1] + [Poly([_rand_q(rng), _rand_q(rng)]) for _ in range(N)]
    return WittElement(TruncatedSeries.from_coeffs(cs, N, ring))


# -- 1: Witt ring ----------------------------------------------------------------------


def suite_witt(N: int = 12, seed: int = 1) -> list:
    rng = random.Random(seed)
    out = []
    ok = True
    for _ in range(50):
        a, b = _rand_q(rng, -5, 5), _rand_q(rng, -5, 5)
        if teichmuller(a, N) * teichmuller(b, N) != teichmuller(a * b, N):
            ok = False
    out.append(Check(1, "Teichmuller product rule on 50 random pairs", ok))

    ok = True
    one, zero = WittElement.unit(N), WittElement.zero(N)
    for _ in range(10):
        f, g, h = (_rand_witt(rng, N) for _ in range(3))
        laws = [
            (f + g) + h == f + (g + h),
            f + g == g + f,
            f + zero == f,
            (f + (-f)) == zero,
            (f * g) * h == f * (g * h),
            f * g == g * f,
            f * one == f,
            f * (g + h) == f * g + f * h,
        ]
        ok &= all(laws)
    out.append(Check(1, f"ring laws of (W(Q), +, *) at N={N}", ok))

    ok = True
    for _ in range(10):
        f, g = _rand_witt(rng, N), _rand_witt(rng, N)
        ok &= ghost(f + g) == ghost(f) + ghost(g)
        ok &= ghost(f * g) == ghost(f) * ghost(g)
        # sums of Teichmuller lifts multiply pairwise, independently of ghost coordinates
        xs = [_rand_q(rng) for _ in range(2)]
        ys = [_rand_q(rng) for _ in range(2)]
        lhs = sigma_monomials([(x, 1) for x in xs], N) * sigma_monomials([(y, 1) for y in ys], N)
        rhs = TruncatedSeries.one(N)
        for x in xs:
            for y in ys:
                rhs = rhs * TruncatedSeries.geometric(x * y, N)
        ok &= lhs.series == rhs
    out.append(Check(1, "ghost map is a ring homomorphism", ok))
    return out


# -- 2: entropy structure ---------------------------------------------------------------


def suite_entropy(N: int = 12, seed: int = 2) -> list:
    rng = random.Random(seed)
    coupling, adams_ok, additive = True, True, True
    for _ in range(30):
        f, g = _rand_witt(rng, N), _rand_witt(rng, N)
        L = entropy_op(f)
        coupling &= all(L.logpart[n] == -n * L.regular[n] for n in range(1, N + 1))
        additive &= entropy_op(f + g) == L + entropy_op(g)
        # f = sum_i c_i tau(x_i) has Adams operations Psi_n = sum_i c_i x_i^n
        pairs = [(_rand_q(rng), rng.randint(-2, 2)) for _ in range(3)]
        h = sigma_monomials(pairs, N)
        Lh = entropy_op(h)
        for n in range(1, N + 1):
            psi = sum(c * x**n for x, c in pairs)
            adams_ok &= adams(h, n) == psi
            adams_ok &= Lh.regular[n] == psi / n and Lh.logpart[n] == -psi
    return [
        Check(2, "log part B_n = -n A_n on 30 random units", coupling),
        Check(2, "Adams-operation form of the entropy", adams_ok),
        Check(2, "entropy turns Witt sums into sums", additive),
    ]


# -- 3: Macdonald formula and examples ---------------------------------------------------

_CLASSES = ["pt", "P^1", "P^2", "A^3", "P^1 - pt", "betti[1,2,1]", "2 P^2 - 3 A^1", "betti[1,4,1] * P^1", "0", "-pt"]


def _binom_general(c: int, n: int) -> int:
    """[t^n] (1 - t)^(-c) for integer c."""
    if c >= 0:
        return comb(c + n - 1, n) if n else 1
    return (-1) ** n * comb(-c, n)


def suite_macdonald(N: int = 16) -> list:
    chi = EulerChar()
    zeta_ok, ent_ok = True, True
    for text in _CLASSES:
        X = parse_class(text)
        c = int(chi.evaluate(X))
        z = kapranov_zeta(chi, X, N)
        zeta_ok &= all(z.series[n] == _binom_general(c, n) for n in range(N + 1))
        S = motivic_entropy(chi, X, N)
        # chi S(t,1-t)/(1-t) = chi (sum t^n/n) + chi (-sum t^n) log t
        ent_ok &= all(S.regular[n] == Fraction(c, n) and S.logpart[n] == -c for n in range(1, N + 1))
    pc_ok = True
    details = []
    for text in ["P^1", "P^2", "betti[1,2,1]"]:
        X = parse_class(text)
        T = poincare_entropy_terms(X, N)
        S = motivic_entropy(Poincare(), X, N)
        good = T.one == S.regular and T.log_t == S.logpart and T.log_z.is_zero()
        pc_ok &= good
        details.append(f"{text}:{'ok' if good else 'mismatch'}")
    return [
        Check(3, f"Euler zeta equals (1-t)^(-chi) to N={N}", zeta_ok),
        Check(3, f"Euler entropy equals chi S(t,1-t)/(1-t) to N={N}", ent_ok),
        Check(3, "Poincare entropy components (1, log t, log z)", pc_ok, ", ".join(details)),
    ]


# -- 4: Hasse-Weil counting --------------------------------------------------------------


def _hw_examples():
    out = {}
    for q in (3, 5):
        out[f"A1/F{q}"] = affine_space(q, 1)
        out[f"P1/F{q}"] = projective_space(q, 1)
        out[f"Gm/F{q}"] = FqVarietyDef.from_text(f"q={q} kind=affine vars=x,y\nx*y - 1\n")
        out[f"E/F{q}"] = FqVarietyDef.from_text(f"q={q} kind=affine vars=x,y\ny^2 - x^3 - x\n")
    return out


def suite_hw(D: int = 8) -> list:
    out = []
    cyc_ok, orbit_ok, brute_ok = True, True, True
    for name, X in _hw_examples().items():
        zd = hasse_weil_zeta(X, D)
        counts = cycle_counts_from_closed(list(zd.closed_points), D)
        cyc_ok &= [int(c) for c in zd.zeta.series.coeffs] == counts
        a = closed_point_counts(zd.point_counts)
        orbit_ok &= all(isinstance(x, int) and x >= 0 for x in a)
        orbit_ok &= closed_points_by_orbits(X, 2) == a[:2]
        brute_ok &= all(count_points(X, m, "brute") == zd.point_counts[m - 1] for m in (1, 2))
    out.append(Check(4, f"zeta coefficients equal cycle counts to degree {D}", cyc_ok))
    out.append(Check(4, "closed-point counts integral and match Frobenius orbits", orbit_ok))
    out.append(Check(4, "fibre counts equal brute-force counts", brute_ok))

    prod_ok = True
    # three variables at degree 8 keeps the fibre enumeration at q = 2 cheap
    gm2 = FqVarietyDef.from_text("q=2 kind=affine vars=x,y\nx*y - 1\n")
    e2 = FqVarietyDef.from_text("q=2 kind=affine vars=x,y\ny^2 - x^3 - x\n")
    pairs = [(gm2, affine_space(2, 1)), (e2, affine_space(2, 1)), (affine_space(3, 1), affine_space(3, 1))]
    for X, Y in pairs:
        zx, zy = hasse_weil_zeta(X, D).zeta, hasse_weil_zeta(Y, D).zeta
        zxy = hasse_weil_zeta(product(X, Y), D).zeta
        prod_ok &= zxy == zx * zy
    out.append(Check(4, f"Z(X x Y) = Z(X) * Z(Y) in ghost coordinates to N={D}", prod_ok))
    return out


# -- 5: global entropy -------------------------------------------------------------------


def suite_global(pmax: int = 10**5) -> list:
    pt = KClass.point()
    ref = point_entropy_reference(2.0)
    val = global_entropy(pt, 2.0, pmax).value
    out = [Check(5, f"S(pt, 2) at pmax={pmax} within 1e-6 of the zeta oracle", abs(val - ref) <= 1e-6, f"value={val:.9f} ref={ref:.9f} diff={val - ref:.3e}")]
    worst = 0.0
    for n, s in ((1, 3.0), (2, 4.5)):
        a = global_entropy(parse_class(f"A^{n}"), s, pmax).value
        b = global_entropy(pt, s - n, pmax).value
        worst = max(worst, abs(a - b))
    out.append(Check(5, "shift law S(A^n, s) = S(pt, s - n) within 1e-6", worst <= 1e-6, f"max diff={worst:.3e}"))
    # what does hold: log L(A^n, s) = log L(pt, s - n), so only the s d/ds weight differs
    worst = 0.0
    for n, s in ((1, 3.0), (2, 4.5)):
        a = global_entropy(parse_class(f"A^{n}"), s, pmax)
        b = global_entropy(pt, s - n, pmax)
        worst = max(worst, abs(a.logL - b.logL), abs(a.sdds - b.sdds * s / (s - n)))
    out.append(Check(5, "S(A^n, s) = S(pt, s - n) - n (zeta'/zeta)(s - n) within 1e-6", worst <= 1e-6, f"max diff={worst:.3e}"))
    prod_ok = True
    for n in (1, 2, 3):
        lhs = dirichlet_log_L(parse_class(f"P^{n}"), 500, None, 500)
        rhs = dirichlet_log_L(KClass.point(), 500, None, 500)
        for m in range(1, n + 1):
            rhs = rhs + dirichlet_log_L(parse_class(f"A^{m}"), 500, None, 500)
        prod_ok &= lhs == rhs
    out.append(Check(5, "P^n log-series is the sum of A^m log-series (exact)", prod_ok))
    out.append(Check(5, "von Mangoldt identity exact to n <= 10^4", von_mangoldt_check(10**4)))
    return out


# -- 6: information-loss laws --------------------------------------------------------------


def _hw(X, N):
    return hasse_weil_zeta(X, N).zeta


def suite_infoloss(N: int = 12) -> list:
    out = []
    pt, P1, A1 = _hw(point(2), N), _hw(projective_space(2, 1), N), _hw(affine_space(2, 1), N)
    P2 = _hw(projective_space(2, 2), N)
    f = ProperMorphismDesc(P2, P1)
    g = ProperMorphismDesc(P1, pt)
    out.append(Check(6, "proper composition additivity", proper_loss(compose_proper(f, g)) == proper_loss(f) + proper_loss(g)))
    h = ProperMorphismDesc(A1, pt)
    du = proper_loss(disjoint_union(f, h)) == proper_loss(f) + proper_loss(h)
    fl1 = FlatFiniteMorphismDesc(P1 + P1, P1, 2)
    fl2 = FlatFiniteMorphismDesc(A1 + A1, A1, 2)
    du &= flat_loss(disjoint_union(fl1, fl2)) == flat_loss(fl1) + flat_loss(fl2)
    out.append(Check(6, "proper and flat disjoint-union additivity", du))
    conv = True
    for lam in (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)):
        for a, b in ((f, h), (fl1, fl2)):
            L = a.__class__ is ProperMorphismDesc and proper_loss or flat_loss
            conv &= weighted_combination_loss(a, b, lam) == L(a).scale(lam) + L(b).scale(1 - lam)
    out.append(Check(6, "convex-combination law for lambda in {0,1,1/2,1/3,2/5}", conv))

    X = parse_class("P^1 + betti[1,2,1]")
    P, chi = Poincare(), EulerChar()
    psi = SubstZ(Poly([0, -1]))  # z -> -z, Q[z] -> Q[z]
    phi = EvalZ(1)
    lhs = ringhom_loss(Compose(phi, psi), P, chi, X, N)
    inner = ringhom_loss(psi, P, P, X, N)
    rhs = ringhom_loss(phi, P, chi, X, N) + inner.map_coeffs(phi, RING_Q)
    out.append(Check(6, "ring-homomorphism composition law on Q[z] -> Q[z] -> Q", lhs == rhs))
    return out


# -- 7: KL oracles -------------------------------------------------------------------------


def suite_kl(D: int = 12, t0: Fraction = Fraction(1, 4), N: int = 16) -> list:
    P1, pt = _hw(projective_space(2, 1), N), _hw(point(2), N)
    r1 = proper_loss_kl_oracle(ProperMorphismDesc(P1, pt), D, t0)
    r2 = flat_loss_kl_oracle(FlatFiniteMorphismDesc(P1 + P1, P1, 2), D, t0)
    out = []
    for name, r in (("proper P^1/F_2 -> pt", r1), ("flat degree 2 over P^1/F_2", r2)):
        out.append(Check(7, f"{name}: within computed tail bound", r.within_bound, f"error={r.error:.3e} bound={r.tail_bound:.3e}"))
        out.append(Check(7, f"{name}: within 1e-4 absolute", r.error <= 1e-4, f"error={r.error:.3e}"))
    return out


# -- 8: Riemann-Hurwitz ----------------------------------------------------------------------


def suite_rh(N: int = 12, seed: int = 8) -> list:
    rng = random.Random(seed)
    eq = True
    for _ in range(10):
        delta = rng.randint(1, 4)
        chiY, chiS = rng.randint(-4, 4), rng.randint(0, 4)
        chiF = rng.randint(0, delta * chiS) if chiS else 0
        d = EulerFlatDesc(delta * chiY + chiF - delta * chiS, chiY, delta, chiS, chiF)
        eq &= euler_flat_loss(d, N) == flat_loss(d.flat_desc(N))
    chi = EulerChar()
    Y = parse_class("betti[1,2,1]")
    X = Y * 3
    d = EulerFlatDesc(0, 0, 3, 0, 0)
    etale = euler_flat_loss(d, N) == motivic_entropy(chi, Y, N) - motivic_entropy(chi, X, N)
    Y2 = parse_class("P^1 - pt")
    d2 = EulerFlatDesc(2, 1, 2, 0, 0)
    etale &= euler_flat_loss(d2, N) == motivic_entropy(chi, Y2, N) - motivic_entropy(chi, Y2 * 2, N)
    br = euler_flat_loss(EulerFlatDesc(2, 2, 2, 2, 2), N)
    expected = LogSeries(TruncatedSeries.zero(N), TruncatedSeries.from_coeffs([0] + [-2] * N, N))
    return [
        Check(8, "closed form equals flat loss on 10 random RH descriptors", eq),
        Check(8, "etale case equals S(Y) - S(X)", etale),
        Check(8, "branched double cover: regular part 0, log part -2t/(1-t)", br == expected, f"log part coefficients {[str(c) for c in br.logpart.coeffs[1:4]]}..."),
    ]


# -- 9: kernel -----------------------------------------------------------------------------


def suite_kernel(N: int = 10, seed: int = 9) -> list:
    rng = random.Random(seed)
    nonzero = True
    for i in range(100):
        ring = RING_QZ if i % 4 == 0 else RING_Q
        f = _rand_witt(rng, N, ring)
        if f.is_zero():
            continue
        nonzero &= not entropy_op(f).is_zero()
    return [
        Check(9, "entropy of 100 random non-zero Witt vectors is non-zero", nonzero),
        Check(9, "entropy of the Witt zero vanishes", entropy_op(WittElement.zero(N)).is_zero()),
    ]


# -- 10: zero-dimensional example ----------------------------------------------------------


def suite_0dim(N: int = 8) -> list:
    Y = parse_class("P^1 + A^1")
    zeta_ok, loss_ok, chain_ok = True, True, True
    for mu in (EulerChar(), Poincare(), PointCount(2)):
        zy = kapranov_zeta(mu, Y, N)
        unit = WittElement.unit(N, mu.ring)
        for n in (1, 2, 3):
            X = Y * n
            zx = kapranov_zeta(mu, X, N)
            zeta_ok &= zx == zy * unit.times(n) and zx == zy.times(n)
            I = flat_loss(FlatFiniteMorphismDesc(zx, zy, n))
            loss_ok &= I == motivic_entropy(mu, Y, N) - motivic_entropy(mu, X, N)
            for m in (1, 2):
                W = X * m
                zw = kapranov_zeta(mu, W, N)
                both = flat_loss(FlatFiniteMorphismDesc(zw, zy, n * m))
                chain_ok &= both == flat_loss(FlatFiniteMorphismDesc(zw, zx, m)) + I
    return [
        Check(10, "zeta(Y x S) = zeta(Y) * N tau(1) = zeta(Y)^N", zeta_ok),
        Check(10, "flat loss of the projection equals S(Y) - S(X)", loss_ok),
        Check(10, "chain law for composed projections", chain_ok),
    ]


SUITES = {
    "witt": suite_witt,
    "entropy": suite_entropy,
    "macdonald": suite_macdonald,
    "hw": suite_hw,
    "global": suite_global,
    "infoloss": suite_infoloss,
    "kl": suite_kl,
    "rh": suite_rh,
    "kernel": suite_kernel,
    "0dim": suite_0dim,
}

CRITERIA = {1: "witt", 2: "entropy", 3: "macdonald", 4: "hw", 5: "global", 6: "infoloss", 7: "kl", 8: "rh", 9: "kernel", 10: "0dim"}


def run(suite: str = "all") -> list:
    names = list(SUITES) if suite == "all" else [suite]
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        out.extend(SUITES[name]())
    return out


def backend_name() -> str:
    return kernels.BACKEND
