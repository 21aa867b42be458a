"""Exact coefficient rings and truncated formal power series.

Two coefficient rings are supported: the rationals ``"Q"`` (elements are
:class:`fractions.Fraction`) and ``"Q[z]"`` (elements are :class:`Poly`,
dense univariate polynomials with rational coefficients).  A
:class:`TruncatedSeries` works modulo ``t**(trunc + 1)``; binary operations
on series of different truncations produce the smaller one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence

from .errors import PreconditionError, RingMismatchError

RING_Q = "Q"
RING_QZ = "Q[z]"
RINGS = (RING_Q, RING_QZ)

DEFAULT_TRUNC = 16


class Poly:
    """Dense polynomial in ``z`` with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def z(cls, power: int = 1) -> "Poly":
        return cls([0] * power + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant(self):
        """The constant term if the polynomial is constant, else None."""
        if len(self.coeffs) <= 1:
            return self.coeffs[0] if self.coeffs else Fraction(0)
        return None

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return Poly([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        acc, base = Poly([1]), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- ring helpers -----------------------------------------------------------

def check_ring(ring: str) -> str:
    if ring not in RINGS:
        raise RingMismatchError(f"unknown coefficient ring {ring!r}")
    return ring


def coerce(ring: str, x):
    """Convert ``x`` into an element of ``ring``."""
    if ring == RING_Q:
        if isinstance(x, Poly):
            c = x.constant()
            if c is None:
                raise RingMismatchError(f"{x} is not an element of Q")
            return c
        if isinstance(x, float):
            raise TypeError("floating point values are not exact ring elements")
        return Fraction(x)
    if ring == RING_QZ:
        if isinstance(x, Poly):
            return x
        if isinstance(x, float):
            raise TypeError("floating point values are not exact ring elements")
        return Poly([x])
    raise RingMismatchError(f"unknown coefficient ring {ring!r}")


def zero(ring: str):
    return coerce(ring, 0)


def one(ring: str):
    return coerce(ring, 1)


def is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Poly) else x == 0


def ring_inverse(ring: str, x):
    if ring == RING_Q:
        if x == 0:
            raise PreconditionError("0 is not invertible")
        return 1 / Fraction(x)
    c = x.constant()
    if c is None or c == 0:
        raise PreconditionError(f"{x} is not a unit of Q[z]")
    return Poly([1 / c])


# -- rational serialization -------------------------------------------------

def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def element_to_json(ring: str, x):
    if ring == RING_Q:
        return rational_to_str(x)
    return [rational_to_str(c) for c in x.coeffs]


def element_from_json(ring: str, v):
    if ring == RING_Q:
        return rational_from_str(v)
    return Poly(rational_from_str(c) for c in v)


# -- truncated series -------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """``c_0 + c_1 t + ... + c_N t^N  (mod t^(N+1))`` over ``ring``."""

    ring: str
    trunc: int
    coeffs: tuple

    def __post_init__(self):
        check_ring(self.ring)
        if not isinstance(self.trunc, int) or self.trunc < 0:
            raise PreconditionError(f"truncation must be a non-negative integer, got {self.trunc!r}")
        cs = tuple(coerce(self.ring, c) for c in self.coeffs)
        if len(cs) != self.trunc + 1:
            raise PreconditionError(f"expected {self.trunc + 1} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    # constructors
    @classmethod
    def from_coeffs(cls, coeffs: Sequence, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        """Pad with zeros or cut ``coeffs`` to exactly ``trunc + 1`` terms."""
        cs = list(coeffs)[: trunc + 1]
        cs += [0] * (trunc + 1 - len(cs))
        return cls(ring, trunc, tuple(cs))

    @classmethod
    def constant(cls, c, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        return cls.from_coeffs([c], trunc, ring)

    @classmethod
    def one(cls, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        return cls.constant(1, trunc, ring)

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        return cls.from_coeffs([], trunc, ring)

    @classmethod
    def geometric(cls, a, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        """``(1 - a t)^(-1) = sum a^n t^n``."""
        a = coerce(ring, a)
        cs, term = [], one(ring)
        for _ in range(trunc + 1):
            cs.append(term)
            term = term * a
        return cls(ring, trunc, tuple(cs))

    @classmethod
    def binomial(cls, a, trunc: int = DEFAULT_TRUNC, ring: str = RING_Q):
        """``1 - a t``."""
        return cls.from_coeffs([1, -coerce(ring, a)], trunc, ring)

    # basic access
    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def _align(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
        n = min(self.trunc, other.trunc)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def truncate(self, n: int) -> "TruncatedSeries":
        if n > self.trunc:
            raise PreconditionError(f"cannot extend a series truncated at {self.trunc} to {n}")
        return TruncatedSeries(self.ring, n, self.coeffs[: n + 1])

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    # additive structure
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n, a, b = self._align(other)
        return TruncatedSeries(self.ring, n, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n, a, b = self._align(other)
        return TruncatedSeries(self.ring, n, tuple(x - y for x, y in zip(a, b)))

    def __neg__(self):
        return TruncatedSeries(self.ring, self.trunc, tuple(-c for c in self.coeffs))

    def scale(self, c) -> "TruncatedSeries":
        c = coerce(self.ring, c)
        return TruncatedSeries(self.ring, self.trunc, tuple(c * x for x in self.coeffs))

    # multiplicative structure
    def __mul__(self, other):
        if isinstance(other, (int, Rational, Poly)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n, a, b = self._align(other)
        z0 = zero(self.ring)
        out = []
        for k in range(n + 1):
            acc = z0
            for i in range(k + 1):
                if not is_zero(a[i]) and not is_zero(b[k - i]):
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(self.ring, n, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, Poly)):
            return self.scale(other)
        return NotImplemented

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires an invertible constant term."""
        inv0 = ring_inverse(self.ring, self.coeffs[0])
        g = [inv0]
        for k in range(1, self.trunc + 1):
            acc = zero(self.ring)
            for i in range(1, k + 1):
                if not is_zero(self.coeffs[i]):
                    acc = acc + self.coeffs[i] * g[k - i]
            g.append(-(acc * inv0))
        return TruncatedSeries(self.ring, self.trunc, tuple(g))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(1 / Fraction(other))
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return NotImplemented

    # calculus
    def t_ddt(self) -> "TruncatedSeries":
        """``t d/dt``: multiplies the n-th coefficient by n."""
        return TruncatedSeries(self.ring, self.trunc, tuple(n * c for n, c in enumerate(self.coeffs)))

    def log(self) -> "TruncatedSeries":
        """Logarithm of a series with constant term 1, via ``L' = f'/f``."""
        if self.coeffs[0] != 1:
            raise PreconditionError("log requires constant term 1")
        f, N = self.coeffs, self.trunc
        # n L_n = n f_n - sum_{k=1}^{n-1} k L_k f_{n-k}
        L = [zero(self.ring)]
        for n in range(1, N + 1):
            acc = n * f[n]
            for k in range(1, n):
                if not is_zero(L[k]) and not is_zero(f[n - k]):
                    acc = acc - k * L[k] * f[n - k]
            L.append(acc / n)
        return TruncatedSeries(self.ring, N, tuple(L))

    def exp(self) -> "TruncatedSeries":
        """Exponential of a series with constant term 0."""
        if not is_zero(self.coeffs[0]):
            raise PreconditionError("exp requires constant term 0")
        f, N = self.coeffs, self.trunc
        # n g_n = sum_{k=1}^{n} k f_k g_{n-k}
        g = [one(self.ring)]
        for n in range(1, N + 1):
            acc = zero(self.ring)
            for k in range(1, n + 1):
                if not is_zero(f[k]):
                    acc = acc + k * f[k] * g[n - k]
            g.append(acc / n)
        return TruncatedSeries(self.ring, N, tuple(g))

    def power(self, lam) -> "TruncatedSeries":
        """``f^lam = exp(lam * log f)`` for rational ``lam``; requires f(0) = 1."""
        if isinstance(lam, float) or not isinstance(lam, (int, Rational)):
            raise PreconditionError(f"exponent must be rational, got {lam!r}")
        return (self.log() * Fraction(lam)).exp()

    def __pow__(self, lam):
        return self.power(lam)

    def map_coeffs(self, fn: Callable, ring: str) -> "TruncatedSeries":
        """Apply a coefficient map (e.g. a ring homomorphism) into ``ring``."""
        return TruncatedSeries(ring, self.trunc, tuple(fn(c) for c in self.coeffs))

    # numerics
    def evaluate(self, t, z=None):
        """Horner evaluation at ``t``; Q[z] coefficients need a value for ``z``."""
        acc = 0
        for c in reversed(self.coeffs):
            if isinstance(c, Poly):
                if z is None:
                    raise PreconditionError("evaluating a Q[z] series needs a value for z")
                c = c(z)
            acc = acc * t + (float(c) if isinstance(t, float) else c)
        return acc

    # serialization / display
    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "trunc": self.trunc,
            "coeffs": [element_to_json(self.ring, c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        ring = check_ring(data["ring"])
        return cls(ring, int(data["trunc"]), tuple(element_from_json(ring, c) for c in data["coeffs"]))

    def __str__(self):
        return format_series(self)


def format_series(f: TruncatedSeries, var: str = "t") -> str:
    """Render as ``c0 + c1 t + c2 t^2 + ... + O(t^(N+1))``."""
    parts = []
    for n, c in enumerate(f.coeffs):
        if is_zero(c):
            continue
        mono = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
        if isinstance(c, Poly) and len(c.coeffs) > 1:
            body = f"({c})" + (f" {mono}" if mono else "")
            parts.append(("+", body))
            continue
        c = c.constant() if isinstance(c, Poly) else c
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        else:
            body = str(mag) + (f" {mono}" if mono else "")
        parts.append((sign, body))
    tail = f"O({var}^{f.trunc + 1})"
    if not parts:
        return f"0 + {tail}"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out + f" + {tail}"
