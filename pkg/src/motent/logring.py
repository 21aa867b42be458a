"""Series of logarithmic type ``A(t) + B(t) log t`` and the entropy operator.

The entropy operator sends a Witt vector ``f`` to
``(1 - t log t d/dt) log f``, i.e. regular part ``log f`` and log part
``-t d/dt log f``.  Only the additive structure (plus rational scalars) is
modelled; products of two such series never arise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import PreconditionError, RingMismatchError
from .series import RING_Q, TruncatedSeries, is_zero
from .witt import WittElement


@dataclass(frozen=True)
class LogSeries:
    regular: TruncatedSeries
    logpart: TruncatedSeries

    def __post_init__(self):
        r, b = self.regular, self.logpart
        if r.ring != b.ring:
            raise RingMismatchError("regular and log parts live in different rings")
        if r.trunc != b.trunc:
            raise PreconditionError("regular and log parts must share a truncation")
        if not is_zero(r.coeffs[0]) or not is_zero(b.coeffs[0]):
            raise PreconditionError("both parts of a LogSeries vanish at t = 0")

    @property
    def ring(self) -> str:
        return self.regular.ring

    @property
    def trunc(self) -> int:
        return self.regular.trunc

    @classmethod
    def zero(cls, trunc: int, ring: str = RING_Q) -> "LogSeries":
        z = TruncatedSeries.zero(trunc, ring)
        return cls(z, z)

    def __add__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return LogSeries(self.regular + other.regular, self.logpart + other.logpart)

    def __sub__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return LogSeries(self.regular - other.regular, self.logpart - other.logpart)

    def __neg__(self):
        return LogSeries(-self.regular, -self.logpart)

    def scale(self, lam) -> "LogSeries":
        lam = Fraction(lam)
        return LogSeries(self.regular * lam, self.logpart * lam)

    def __rmul__(self, lam):
        return self.scale(lam)

    def is_zero(self) -> bool:
        return self.regular.is_zero() and self.logpart.is_zero()

    def truncate(self, n: int) -> "LogSeries":
        return LogSeries(self.regular.truncate(n), self.logpart.truncate(n))

    def map_coeffs(self, phi: Callable, ring: str) -> "LogSeries":
        """The induced map ``S(phi)`` on both components."""
        return LogSeries(self.regular.map_coeffs(phi, ring), self.logpart.map_coeffs(phi, ring))

    def evaluate(self, t: float, z=None) -> float:
        """``A(t) + B(t) ln t`` in floating point, for ``0 < t < 1``."""
        if not 0 < t < 1:
            raise PreconditionError("numeric evaluation needs 0 < t < 1")
        t = float(t)
        return float(self.regular.evaluate(t, z)) + float(self.logpart.evaluate(t, z)) * math.log(t)

    def to_json(self) -> dict:
        reg, lp = self.regular.to_json(), self.logpart.to_json()
        return {"ring": self.ring, "trunc": self.trunc, "regular": reg["coeffs"], "logpart": lp["coeffs"]}

    @classmethod
    def from_json(cls, data: dict) -> "LogSeries":
        ring = data.get("ring", RING_Q)
        n = int(data["trunc"])
        reg = TruncatedSeries.from_json({"ring": ring, "trunc": n, "coeffs": data["regular"]})
        lp = TruncatedSeries.from_json({"ring": ring, "trunc": n, "coeffs": data["logpart"]})
        return cls(reg, lp)

    def __str__(self):
        return f"[{self.regular}] + [{self.logpart}] log t"


def entropy_op(f: WittElement) -> LogSeries:
    """``L(f) = (1 - t log t d/dt) log f``."""
    if not isinstance(f, WittElement):
        f = WittElement(f)
    a = f.series.log()
    return LogSeries(a, -a.t_ddt())


def is_zero_logseries(x: LogSeries) -> bool:
    return x.is_zero()


__all__ = ["LogSeries", "entropy_op", "is_zero_logseries"]
