"""Integer helpers: trial-division factoring, Moebius function, prime powers."""
from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple:
    """Prime factorization as a sorted tuple of ``(p, e)``."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def prime_power(n: int):
    """``(p, e)`` with ``n = p^e``, or None."""
    if n < 2:
        return None
    f = factorize(n)
    return f[0] if len(f) == 1 else None


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]
