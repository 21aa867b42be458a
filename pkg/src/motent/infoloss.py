"""Information loss for ring homomorphisms, proper maps and finite flat maps.

Morphisms are described only by the data the loss depends on: zeta
functions of source and target, the degree of a flat map and, for the
Euler-characteristic formula, the Euler numbers of the branch data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ._polyparse import parse_poly
from .classes import KClass, Measure
from .errors import ClassSyntaxError, PreconditionError, RingMismatchError
from .ffcount import closed_point_counts, cycle_counts_from_closed
from .logring import LogSeries, entropy_op
from .series import DEFAULT_TRUNC, RING_Q, RING_QZ, Poly, TruncatedSeries, check_ring
from .witt import WittElement, euler_zeta

# -- ring homomorphisms -----------------------------------------------------------


class RingHom:
    domain: str
    codomain: str

    def __call__(self, x):
        raise NotImplementedError

    def then(self, outer: "RingHom") -> "Compose":
        return Compose(outer, self)


@dataclass(frozen=True)
class Identity(RingHom):
    ring: str = RING_Q

    def __post_init__(self):
        check_ring(self.ring)

    @property
    def domain(self):
        return self.ring

    @property
    def codomain(self):
        return self.ring

    def __call__(self, x):
        return x


@dataclass(frozen=True)
class EvalZ(RingHom):
    """Q[z] -> Q, z -> c."""

    c: Fraction

    domain = RING_QZ
    codomain = RING_Q

    def __post_init__(self):
        if isinstance(self.c, float) or not isinstance(self.c, (int, Rational)):
            raise PreconditionError(f"evaluation point must be rational, got {self.c!r}")
        object.__setattr__(self, "c", Fraction(self.c))

    def __call__(self, x):
        return x(self.c) if isinstance(x, Poly) else Fraction(x)


@dataclass(frozen=True)
class SubstZ(RingHom):
    """Q[z] -> Q[z], z -> p(z)."""

    p: Poly

    domain = RING_QZ
    codomain = RING_QZ

    def __call__(self, x):
        return x.compose(self.p) if isinstance(x, Poly) else Poly([x])


@dataclass(frozen=True)
class Compose(RingHom):
    """``outer o inner``."""

    outer: RingHom
    inner: RingHom

    def __post_init__(self):
        if self.inner.codomain != self.outer.domain:
            raise RingMismatchError(f"cannot compose {self.inner.codomain} -> with {self.outer.domain} ->")

    @property
    def domain(self):
        return self.inner.domain

    @property
    def codomain(self):
        return self.outer.codomain

    def __call__(self, x):
        return self.outer(self.inner(x))


def parse_ringhom(text: str, ring: str = RING_QZ) -> RingHom:
    """``id`` or ``z->EXPR`` with EXPR a rational constant or an integer polynomial in z."""
    s = text.strip()
    if s in ("id", "identity"):
        return Identity(ring)
    if not s.startswith("z->"):
        raise ClassSyntaxError("ring homomorphism must be 'id' or 'z->EXPR'", 0)
    body = s[3:].strip()
    try:
        return EvalZ(Fraction(body))
    except (ValueError, ZeroDivisionError):
        pass
    terms = parse_poly(body, ["z"])
    p = Poly([terms.get((k,), 0) for k in range(max((e[0] for e in terms), default=0) + 1)])
    return EvalZ(p.constant()) if p.degree <= 0 else SubstZ(p)


def _check_hom(phi: RingHom, mu: Measure, muprime: Measure):
    if phi.domain != mu.ring:
        raise RingMismatchError(f"phi starts in {phi.domain} but the measure takes values in {mu.ring}")
    if phi.codomain != muprime.ring:
        raise RingMismatchError(f"phi lands in {phi.codomain} but the target measure takes values in {muprime.ring}")


def ringhom_loss(phi: RingHom, mu: Measure, muprime: Measure, X: KClass, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    """``L(W(phi) zeta_mu(X)) - L(zeta_mu'(X))``."""
    _check_hom(phi, mu, muprime)
    pushed = mu.zeta(X, trunc).map_coeffs(phi, phi.codomain)
    return entropy_op(pushed) - entropy_op(muprime.zeta(X, trunc))


def _rational_weight(lam) -> Fraction:
    if isinstance(lam, float) or not isinstance(lam, (int, Rational)):
        raise PreconditionError(f"lambda must be rational, got {lam!r}")
    lam = Fraction(lam)
    if not 0 <= lam <= 1:
        raise PreconditionError("lambda must lie in [0, 1]")
    return lam


def ringhom_loss_combination(phi1, phi2, lam, mu, muprime, X, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    """``L(zeta_(phi1 mu)^lam zeta_(phi2 mu)^(1-lam) / zeta_mu')``."""
    lam = _rational_weight(lam)
    _check_hom(phi1, mu, muprime)
    _check_hom(phi2, mu, muprime)
    z = mu.zeta(X, trunc)
    f1 = z.map_coeffs(phi1, phi1.codomain).series
    f2 = z.map_coeffs(phi2, phi2.codomain).series
    g = f1.power(lam) * f2.power(1 - lam) / muprime.zeta(X, trunc).series
    return entropy_op(WittElement(g))


# -- morphism descriptors -----------------------------------------------------------


def _as_witt(z) -> WittElement:
    return z if isinstance(z, WittElement) else WittElement(z)


@dataclass(frozen=True)
class ProperMorphismDesc:
    source_zeta: WittElement
    target_zeta: WittElement
    degree_triples: tuple = ()  # (deg x, [k(x):k(f(x))], deg f(x)) for sampled closed points

    def __post_init__(self):
        object.__setattr__(self, "source_zeta", _as_witt(self.source_zeta))
        object.__setattr__(self, "target_zeta", _as_witt(self.target_zeta))
        if self.source_zeta.trunc != self.target_zeta.trunc:
            raise PreconditionError("source and target zetas must share a truncation")
        if self.source_zeta.ring != self.target_zeta.ring:
            raise RingMismatchError("source and target zetas live in different rings")
        object.__setattr__(self, "degree_triples", tuple(tuple(t) for t in self.degree_triples))

    @property
    def trunc(self):
        return self.source_zeta.trunc


@dataclass(frozen=True)
class FlatFiniteMorphismDesc:
    source_zeta: WittElement
    target_zeta: WittElement
    degree: int = 1

    def __post_init__(self):
        object.__setattr__(self, "source_zeta", _as_witt(self.source_zeta))
        object.__setattr__(self, "target_zeta", _as_witt(self.target_zeta))
        if self.source_zeta.trunc != self.target_zeta.trunc:
            raise PreconditionError("source and target zetas must share a truncation")
        if self.source_zeta.ring != self.target_zeta.ring:
            raise RingMismatchError("source and target zetas live in different rings")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise PreconditionError("flat degree must be a positive integer")

    @property
    def trunc(self):
        return self.source_zeta.trunc


@dataclass(frozen=True)
class EulerFlatDesc:
    chiX: int
    chiY: int
    delta: int
    chiS: int
    chiFinvS: int

    def __post_init__(self):
        if self.delta < 1:
            raise PreconditionError("flat degree must be a positive integer")
        rhs = self.delta * self.chiY + self.chiFinvS - self.delta * self.chiS
        if self.chiX != rhs:
            raise PreconditionError(f"Riemann-Hurwitz violated: chi(X) = {self.chiX} but the relation gives {rhs}")

    def flat_desc(self, trunc: int = DEFAULT_TRUNC) -> FlatFiniteMorphismDesc:
        return FlatFiniteMorphismDesc(euler_zeta(self.chiX, trunc), euler_zeta(self.chiY, trunc), self.delta)


def compose_proper(f: ProperMorphismDesc, g: ProperMorphismDesc) -> ProperMorphismDesc:
    """``g o f`` for ``f: X -> Y`` and ``g: Y -> W``."""
    if f.target_zeta != g.source_zeta:
        raise PreconditionError("target of f does not match source of g")
    return ProperMorphismDesc(f.source_zeta, g.target_zeta)


def disjoint_union(f1, f2):
    """``f1 (+) f2``; zetas multiply over disjoint unions."""
    if type(f1) is not type(f2):
        raise PreconditionError("cannot combine a proper and a flat descriptor")
    src = f1.source_zeta + f2.source_zeta
    dst = f1.target_zeta + f2.target_zeta
    if isinstance(f1, FlatFiniteMorphismDesc):
        if f1.degree != f2.degree:
            raise PreconditionError("flat pieces of a disjoint union must have equal degree")
        return FlatFiniteMorphismDesc(src, dst, f1.degree)
    return ProperMorphismDesc(src, dst, f1.degree_triples + f2.degree_triples)


# -- losses ------------------------------------------------------------------------


def proper_loss(f: ProperMorphismDesc) -> LogSeries:
    """``log(Z(X,t) / Z(Y,t))`` with vanishing log part."""
    for deg_x, residue, deg_fx in f.degree_triples:
        # deg f_* x = [k(x):k(f(x))] deg f(x) must equal deg x, otherwise H(f_*, t) != 0
        if deg_x != residue * deg_fx:
            raise PreconditionError(f"pushforward changes degree: {deg_x} != {residue} * {deg_fx}")
    reg = f.source_zeta.series.log() - f.target_zeta.series.log()
    return LogSeries(reg, TruncatedSeries.zero(f.trunc, f.source_zeta.ring))


def flat_loss(f: FlatFiniteMorphismDesc) -> LogSeries:
    """``log(Z(Y)/Z(X)) + (delta - 1) t log t d/dt log Z(Y)``."""
    log_y = f.target_zeta.series.log()
    reg = log_y - f.source_zeta.series.log()
    return LogSeries(reg, log_y.t_ddt() * (f.degree - 1))


def euler_flat_loss(d: EulerFlatDesc, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    """Closed form for Euler-characteristic zetas via Riemann-Hurwitz.

    ``(chiY - chiX) S(t,1-t)/(1-t) + (delta chiS - chiF) t log t/(1-t)``
    """
    geo = TruncatedSeries.geometric(1, trunc)
    one_minus_t = TruncatedSeries.binomial(1, trunc)
    t_series = TruncatedSeries.from_coeffs([0, 1], trunc)
    # S(t, 1-t) = -t log t - (1-t) log(1-t)
    s_reg = -(one_minus_t * one_minus_t.log())
    s_log = -t_series
    c1 = d.chiY - d.chiX
    c2 = d.delta * d.chiS - d.chiFinvS
    reg = (geo * s_reg) * c1
    logp = (geo * s_log) * c1 + (geo * t_series) * c2
    return LogSeries(reg, logp)


def weighted_combination_loss(f1, f2, lam) -> LogSeries:
    """Loss of ``lam f1 (+) (1 - lam) f2`` computed from powers of the zetas."""
    lam = _rational_weight(lam)
    if type(f1) is not type(f2):
        raise PreconditionError("cannot combine a proper and a flat descriptor")
    zx = f1.source_zeta.series.power(lam) * f2.source_zeta.series.power(1 - lam)
    zy = f1.target_zeta.series.power(lam) * f2.target_zeta.series.power(1 - lam)
    if isinstance(f1, ProperMorphismDesc):
        return proper_loss(ProperMorphismDesc(zx, zy))
    if f1.degree != f2.degree:
        raise PreconditionError("weighted flat combinations need equal degrees")
    return flat_loss(FlatFiniteMorphismDesc(zx, zy, f1.degree))


# -- Kullback-Leibler oracles ------------------------------------------------------


@dataclass(frozen=True)
class KLOracleResult:
    value: float
    closed_form: float
    mass: Fraction
    tail_bound: float
    D: int
    t0: Fraction

    @property
    def error(self) -> float:
        return abs(self.value - self.closed_form)

    @property
    def within_bound(self) -> bool:
        return self.error <= self.tail_bound

    def __float__(self):
        return self.value

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "closed_form": self.closed_form,
            "mass": float(self.mass),
            "tail_bound": self.tail_bound,
            "error": self.error,
            "D": self.D,
            "t0": str(self.t0),
        }


def _exact_eval(f: TruncatedSeries, t0: Fraction) -> Fraction:
    if f.ring != RING_Q:
        raise RingMismatchError("KL oracles need zetas over Q")
    return f.evaluate(t0)


def _growth(z: WittElement) -> float:
    """Crude exponential growth rate of the point counts (ghost components)."""
    g = [abs(float(c)) for c in z.ghost().components]
    half = len(g) // 2
    return max([x ** (1.0 / n) for n, x in enumerate(g, start=1) if x > 0 and n > half], default=1.0)


def _geometric_tail(f: TruncatedSeries, t0: float) -> float:
    """Estimate of ``sum_(n > N) |f_n| t0^n`` from the last two coefficients."""
    n = f.trunc
    last, prev = abs(float(f.coeffs[n])), abs(float(f.coeffs[n - 1]))
    if last == 0:
        return 0.0
    rho = t0 * (last / prev if prev else 2.0)
    if rho >= 1:
        return math.inf
    return last * t0**n * rho / (1 - rho)


def _check_t0(t0, zetas) -> Fraction:
    if isinstance(t0, float) or not isinstance(t0, (int, Rational)):
        raise PreconditionError("t0 must be rational")
    t0 = Fraction(t0)
    if not 0 < t0 < 1:
        raise PreconditionError("t0 must lie in (0, 1)")
    q = max(_growth(z) for z in zetas)
    if t0 * q >= 1:
        raise PreconditionError(f"t0 = {t0} is outside the convergence radius (t0 * q = {float(t0) * q:.3g} >= 1)")
    return t0


def _cycle_counts(z: WittElement, D: int, closed_points=None) -> list:
    if closed_points is None:
        closed_points = closed_point_counts([int(c) for c in z.ghost().components[:D]])
    return cycle_counts_from_closed(list(closed_points), D)


def proper_loss_kl_oracle(f: ProperMorphismDesc, D: int, t0, closed_points=None) -> KLOracleResult:
    """Truncated ``sum_(deg a <= D) P(a) log(Q(f_* a)/P(a))`` at ``t = t0``.

    Cycles of X are counted by multiset enumeration over closed points; the
    normalizers are the truncated zetas evaluated exactly at t0.
    """
    if not 0 <= D <= f.trunc:
        raise PreconditionError(f"cycle degree cut must satisfy 0 <= D <= {f.trunc}")
    t0 = _check_t0(t0, (f.source_zeta, f.target_zeta))
    zx = _exact_eval(f.source_zeta.series, t0)
    zy = _exact_eval(f.target_zeta.series, t0)
    counts = _cycle_counts(f.source_zeta, D, closed_points)
    total, mass = 0.0, Fraction(0)
    for n in range(D + 1):  # ascending degree order
        if not counts[n]:
            continue
        P = t0**n / zx
        Q = t0**n / zy  # deg f_* a = deg a
        ratio = Q / P
        if ratio != zx / zy:
            raise PreconditionError("per-term log ratio differs from Z(X)/Z(Y)")
        mass += counts[n] * P
        total += float(counts[n] * P) * math.log(ratio)
    closed = proper_loss(f).evaluate(float(t0))
    lr = abs(math.log(zx / zy))
    tf = float(t0)
    bound = (
        float(1 - mass) * lr
        + _geometric_tail(f.source_zeta.series, tf) / float(zx)
        + _geometric_tail(f.target_zeta.series, tf) / float(zy)
        + _geometric_tail(proper_loss(f).regular, tf)
    )
    return KLOracleResult(total, closed, mass, bound, D, t0)


def flat_loss_kl_oracle(f: FlatFiniteMorphismDesc, D: int, t0, closed_points=None) -> KLOracleResult:
    """Truncated ``sum_(deg g <= D) Q(g) log(P(f^* g)/Q(g))`` at ``t = t0``."""
    if not 0 <= D <= f.trunc:
        raise PreconditionError(f"cycle degree cut must satisfy 0 <= D <= {f.trunc}")
    t0 = _check_t0(t0, (f.source_zeta, f.target_zeta))
    zx = _exact_eval(f.source_zeta.series, t0)
    zy = _exact_eval(f.target_zeta.series, t0)
    counts = _cycle_counts(f.target_zeta, D, closed_points)
    delta = f.degree
    zy_coeffs = f.target_zeta.series.coeffs

    def log_ratio(n):
        return math.log(zy / zx) + (delta - 1) * n * math.log(t0)

    total, mass = 0.0, Fraction(0)
    for n in range(D + 1):  # ascending degree order
        if not counts[n]:
            continue
        Q = t0**n / zy
        P = t0 ** (delta * n) / zx  # deg f^* g = delta deg g
        ratio = P / Q
        if ratio != (zy / zx) * t0 ** ((delta - 1) * n):
            raise PreconditionError("per-term log ratio differs from the closed form")
        mass += counts[n] * Q
        total += float(counts[n] * Q) * math.log(ratio)
    loss = flat_loss(f)
    tf = float(t0)
    closed = loss.evaluate(tf)
    # degrees D < n <= trunc use the zeta coefficients as cycle counts; beyond trunc a geometric estimate
    N = f.trunc
    tail = sum(float(zy_coeffs[n] * t0**n / zy) * abs(log_ratio(n)) for n in range(D + 1, N + 1))
    bound = (
        tail
        + _geometric_tail(f.target_zeta.series, tf) / float(zy) * abs(log_ratio(N + 1))
        + _geometric_tail(f.source_zeta.series, tf) / float(zx)
        + _geometric_tail(f.target_zeta.series, tf) / float(zy)
        + _geometric_tail(loss.regular, tf)
        + _geometric_tail(loss.logpart, tf) * abs(math.log(tf))
    )
    return KLOracleResult(total, closed, mass, bound, D, t0)


__all__ = [
    "Compose",
    "EulerFlatDesc",
    "EvalZ",
    "FlatFiniteMorphismDesc",
    "Identity",
    "KLOracleResult",
    "ProperMorphismDesc",
    "RingHom",
    "SubstZ",
    "compose_proper",
    "disjoint_union",
    "euler_flat_loss",
    "flat_loss",
    "flat_loss_kl_oracle",
    "parse_ringhom",
    "proper_loss",
    "proper_loss_kl_oracle",
    "ringhom_loss",
    "ringhom_loss_combination",
    "weighted_combination_loss",
]
