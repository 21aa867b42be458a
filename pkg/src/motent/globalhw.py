"""Global Hasse-Weil entropy over Z for classes with uniform point counts.

For X built from points, affine and projective spaces, #X(F_(p^k)) = C(p^k)
for one integer polynomial C.  Then ``log L(X, s) = sum c_n n^(-s)`` with
``c_(p^k) = C(p^k)/k`` and the entropy is ``(1 - s d/ds) log L(X, s)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from ._arith import factorize
from .classes import Affine, KClass, Projective
from .errors import PreconditionError
from .series import Poly

DEFAULT_PMAX = 10**5
DEFAULT_KMAX = 60


def count_polynomial(X: KClass) -> Poly:
    """C_X with #X(F_Q) = C_X(Q) for every prime power Q."""
    acc = Poly()
    for mono, mult in X.terms:
        v = Poly([1])
        for a in mono:
            if isinstance(a, Affine):
                v = v * Poly.z(a.n)
            elif isinstance(a, Projective):
                v = v * Poly([1] * (a.n + 1))
            else:
                raise PreconditionError(f"atom {a} has no uniform reduction mod p")
        acc = acc + v * mult
    return acc


def abscissa(X: KClass) -> int:
    """Abscissa of absolute convergence, deg C_X + 1 (0 for the empty class)."""
    C = count_polynomial(X)
    return 0 if C.is_zero() else C.degree + 1


@dataclass(frozen=True)
class DirichletLogSeries:
    """Exact coefficients of ``log L(X, s) = sum_(n <= nmax) c_n n^(-s)``."""

    nmax: int
    coeffs: dict  # n -> Fraction, n a prime power

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs.get(n, Fraction(0))

    def __add__(self, other):
        if not isinstance(other, DirichletLogSeries):
            return NotImplemented
        n = min(self.nmax, other.nmax)
        out = {}
        for k in set(self.coeffs) | set(other.coeffs):
            if k <= n:
                v = self[k] + other[k]
                if v:
                    out[k] = v
        return DirichletLogSeries(n, out)

    def __eq__(self, other):
        return isinstance(other, DirichletLogSeries) and self.nmax == other.nmax and self.coeffs == other.coeffs

    def log_coefficients(self) -> dict:
        """``c_n ln n`` written as ``{n: {p: rational multiple of ln p}}``."""
        out = {}
        for n, c in self.coeffs.items():
            (p, k), = factorize(n)
            out[n] = {p: c * k}
        return out

    def to_json(self) -> dict:
        return {"nmax": self.nmax, "coeffs": {str(n): str(c) for n, c in sorted(self.coeffs.items())}}


def dirichlet_log_L(X: KClass, pmax: int, kmax: int | None = None, nmax: int | None = None) -> DirichletLogSeries:
    """``c_(p^k) = C_X(p^k)/k`` for primes p <= pmax, k <= kmax, p^k <= nmax (default nmax = pmax)."""
    C = count_polynomial(X)
    nmax = pmax if nmax is None else nmax
    coeffs = {}
    for p in kernels.prime_sieve(int(pmax)).tolist():
        k, pk = 1, p
        while pk <= nmax and (kmax is None or k <= kmax):
            v = C(Fraction(pk)) / k
            if v:
                coeffs[pk] = v
            k += 1
            pk *= p
    return DirichletLogSeries(nmax, coeffs)


@dataclass(frozen=True)
class GlobalEntropyEval:
    s: float
    value: float
    logL: float
    sdds: float
    pmax: int
    kmax: int

    def to_json(self) -> dict:
        return {"s": self.s, "value": self.value, "logL": self.logL, "sdds": self.sdds, "pmax": self.pmax, "kmax": self.kmax}


def global_entropy(
    X: KClass, s: float, pmax: int = DEFAULT_PMAX, kmax: int = DEFAULT_KMAX, backend: str | None = None
) -> GlobalEntropyEval:
    """``log L(X, s) - s d/ds log L(X, s)`` summed over p <= pmax, k <= kmax.

    The second part equals ``s sum c_n ln(n) n^(-s)``.
    """
    s = float(s)
    C = count_polynomial(X)
    if C.is_zero():
        return GlobalEntropyEval(s, 0.0, 0.0, 0.0, int(pmax), int(kmax))
    a = C.degree + 1
    if not s > a:
        raise PreconditionError(f"s = {s} must exceed the abscissa {a}")
    impl = kernels.get(backend)
    primes = impl.prime_sieve(int(pmax))
    cpoly = np.array([float(c) for c in C.coeffs], np.float64)
    logl, dsum = impl.dirichlet_sums(primes, cpoly, s, int(kmax))
    sdds = s * float(dsum)
    value = float(logl) + sdds
    if not math.isfinite(value):
        raise PreconditionError("global entropy sum diverged")
    return GlobalEntropyEval(s, value, float(logl), sdds, int(pmax), int(kmax))


def von_mangoldt(n: int) -> dict:
    """Lambda(n) as ``{p: 1}`` (meaning ln p) for prime powers, ``{}`` otherwise."""
    f = factorize(n) if n > 1 else ()
    return {f[0][0]: Fraction(1)} if len(f) == 1 else {}


def von_mangoldt_check(nmax: int) -> bool:
    """Check ``sum_p ln p sum_k p^(-ks) = sum_n Lambda(n) n^(-s)`` coefficientwise up to nmax.

    The left side comes from the point's log-series (``c_n ln n`` with
    ``c_(p^k) = 1/k``); the right side from factoring each n.
    """
    lhs = dirichlet_log_L(KClass.point(), nmax, None, nmax).log_coefficients()
    for n in range(2, nmax + 1):
        if lhs.get(n, {}) != von_mangoldt(n):
            return False
    return True


def tail_bound_point(pmax: int, s: float = 2.0, pmax_ref: int | None = None) -> float:
    """Bound on how much the point's entropy moves when primes in (pmax, pmax_ref] are added.

    Each prime contributes ``sum_k (1/k + s ln p) p^(-ks) <= (1 + s ln p) p^(-s) / (1 - p^(-s))``.
    With ``pmax_ref=None`` the sum over all p > pmax is estimated from the
    prime number theorem with a 10% margin.
    """
    if pmax_ref is None:
        x = float(pmax)
        return 1.1 * (s + 1 / math.log(x)) * x ** (1 - s) / (s - 1) / (1 - x ** (-s))
    ps = kernels.prime_sieve(int(pmax_ref))
    ps = ps[ps > pmax].astype(np.float64)
    return float(np.sum((1 + s * np.log(ps)) * ps ** (-s) / (1 - ps ** (-s))))


__all__ = [
    "DirichletLogSeries",
    "GlobalEntropyEval",
    "abscissa",
    "count_polynomial",
    "dirichlet_log_L",
    "global_entropy",
    "tail_bound_point",
    "von_mangoldt",
    "von_mangoldt_check",
]
