"""Hot loops behind a backend switch.

The numba backend is used when numba imports and ``MOTENT_DISABLE_JIT`` is
unset (or ``0``); otherwise the pure-numpy fallback runs.  Both expose the
same four functions and must agree exactly on integer outputs.
"""
import os

from . import _numpy

_disabled = os.environ.get("MOTENT_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("JIT disabled by MOTENT_DISABLE_JIT")
    from . import _numba
except ImportError:
    _numba = None

BACKEND = "numba" if _numba is not None else "numpy"


def backends():
    """Mapping of available backend names to modules."""
    out = {"numpy": _numpy}
    if _numba is not None:
        out["numba"] = _numba
    return out


def get(name=None):
    return backends()[name or BACKEND]


_impl = get()
count_affine_fibers = _impl.count_affine_fibers
count_affine_brute = _impl.count_affine_brute
prime_sieve = _impl.prime_sieve
dirichlet_sums = _impl.dirichlet_sums

__all__ = [
    "BACKEND",
    "backends",
    "count_affine_brute",
    "count_affine_fibers",
    "dirichlet_sums",
    "get",
    "prime_sieve",
]
