"""Truncated big Witt vectors over Q-algebras.

A Witt vector is stored as a power series with constant term 1.  Witt
addition is multiplication of series, and the Witt product is computed in
ghost coordinates, where it becomes componentwise.  ``(1 - t)^(-1)`` is the
multiplicative unit and the series ``1`` is the additive zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError, RingMismatchError
from .series import DEFAULT_TRUNC, RING_Q, TruncatedSeries, coerce, zero


@dataclass(frozen=True)
class GhostVector:
    """Ghost components ``g_1 .. g_N``; ``g_n = n [t^n] log f``."""

    ring: str
    components: tuple

    def _check(self, other):
        if not isinstance(other, GhostVector):
            raise TypeError("expected GhostVector")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        n = min(len(self.components), len(other.components))
        return self.components[:n], other.components[:n]

    def __add__(self, other):
        a, b = self._check(other)
        return GhostVector(self.ring, tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        a, b = self._check(other)
        return GhostVector(self.ring, tuple(x * y for x, y in zip(a, b)))

    def __len__(self):
        return len(self.components)

    def __getitem__(self, n):
        """1-based access: ``g[n]`` is the n-th ghost component."""
        if n < 1:
            raise IndexError("ghost components are indexed from 1")
        return self.components[n - 1]


@dataclass(frozen=True)
class WittElement:
    series: TruncatedSeries

    def __post_init__(self):
        if self.series.trunc < 1:
            raise PreconditionError("Witt vectors need trunc >= 1")
        if self.series.coeffs[0] != 1:
            raise PreconditionError("a Witt vector must have constant term 1")

    @property
    def ring(self) -> str:
        return self.series.ring

    @property
    def trunc(self) -> int:
        return self.series.trunc

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q) -> "WittElement":
        return cls(TruncatedSeries.one(trunc, ring))

    @classmethod
    def unit(cls, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q) -> "WittElement":
        return teichmuller(1, trunc, ring)

    # additive group: series multiplication
    def __add__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return WittElement(self.series * other.series)

    def __neg__(self):
        return WittElement(self.series.inverse())

    def __sub__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return WittElement(self.series * other.series.inverse())

    def times(self, n: int) -> "WittElement":
        """Integer multiple ``n . f`` in the additive group, i.e. ``f^n``."""
        if not isinstance(n, int):
            raise PreconditionError("Witt integer multiples need an int")
        if n < 0:
            return (-self).times(-n)
        acc, base = WittElement.zero(self.trunc, self.ring), self
        while n:
            if n & 1:
                acc = acc + base
            base = base + base
            n >>= 1
        return acc

    # ring product
    def __mul__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return ghost_inv(ghost(self) * ghost(other), min(self.trunc, other.trunc))

    def ghost(self) -> GhostVector:
        return ghost(self)

    def adams(self, n: int):
        return adams(self, n)

    def map_coeffs(self, phi: Callable, ring: str) -> "WittElement":
        """``W(phi)``: apply a ring homomorphism coefficientwise."""
        return WittElement(self.series.map_coeffs(phi, ring))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.series.coeffs[1:])

    def to_json(self) -> dict:
        return {**self.series.to_json(), "witt": True}

    @classmethod
    def from_json(cls, data: dict) -> "WittElement":
        return cls(TruncatedSeries.from_json(data))

    def __str__(self):
        return str(self.series)


def ghost(f: WittElement) -> GhostVector:
    g = f.series.log().t_ddt()
    return GhostVector(f.ring, g.coeffs[1:])


def ghost_inv(g: GhostVector, trunc: int | None = None) -> WittElement:
    """Recover ``f = exp(sum g_n t^n / n)`` from its ghost components."""
    n_max = len(g) if trunc is None else trunc
    if n_max > len(g):
        raise PreconditionError(f"need {n_max} ghost components, have {len(g)}")
    cs = [zero(g.ring)] + [g.components[n - 1] / n for n in range(1, n_max + 1)]
    return WittElement(TruncatedSeries(g.ring, n_max, tuple(cs)).exp())


def teichmuller(a, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q) -> WittElement:
    """``tau(a) = (1 - a t)^(-1)``."""
    return WittElement(TruncatedSeries.geometric(coerce(ring, a), trunc, ring))


def adams(f: WittElement, n: int):
    """The n-th Adams operation of the element whose sigma_t image is ``f``."""
    if not isinstance(n, int) or n < 1 or n > f.trunc:
        raise PreconditionError(f"Adams index must satisfy 1 <= n <= {f.trunc}, got {n!r}")
    return ghost(f)[n]


def euler_zeta(c, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q) -> WittElement:
    """``(1 - t)^(-c)`` for rational c (the image of c under the Euler-characteristic sigma_t)."""
    if c == 0:
        return WittElement.zero(trunc, ring)
    base = TruncatedSeries.binomial(1, trunc, ring)
    return WittElement(base.power(-Fraction(c)))


def sigma_monomials(coeffs, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q) -> WittElement:
    """``prod_j (1 - x_j t)^(-c_j)`` for pairs ``(x_j, c_j)`` with integer c_j.

    This is ``sum_j c_j tau(x_j)`` in Witt-additive notation.
    """
    acc = WittElement.zero(trunc, ring)
    for x, c in coeffs:
        if c:
            acc = acc + teichmuller(x, trunc, ring).times(int(c))
    return acc


__all__ = [
    "GhostVector",
    "WittElement",
    "adams",
    "euler_zeta",
    "ghost",
    "ghost_inv",
    "sigma_monomials",
    "teichmuller",
]
