import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from motent import kernels
from motent.ffcount import FqVarietyDef, _affine_count

BACKENDS = list(kernels.backends())


def simple_sieve(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


@pytest.mark.parametrize("backend", BACKENDS)
def test_prime_sieve(backend):
    assert kernels.get(backend).prime_sieve(2000).tolist() == simple_sieve(2000)
    assert kernels.get(backend).prime_sieve(1).tolist() == []


def test_backends_agree_on_dirichlet_sums():
    if len(BACKENDS) < 2:
        pytest.skip("numba not available")
    sums = []
    for b in BACKENDS:
        impl = kernels.get(b)
        sums.append(impl.dirichlet_sums(impl.prime_sieve(10**5), np.array([1.0, 1.0, 1.0]), 3.5, 60))
    assert sums[0][0] == pytest.approx(sums[1][0], rel=1e-12)
    assert sums[0][1] == pytest.approx(sums[1][1], rel=1e-12)


polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(-2, 2), min_size=1, max_size=4)


@given(st.sampled_from([2, 3]), polys, st.integers(1, 2))
def test_backends_agree_on_counts(q, d, m):
    terms = [f"{c}*x^{a}*y^{b}*z^{e}" for (a, b, e), c in d.items() if c] or ["0"]
    X = FqVarietyDef.from_text(f"q={q} kind=affine vars=x,y,z\n" + " + ".join(terms) + "\n")
    counts = {(b, meth): _affine_count(X, m, meth, b) for b in BACKENDS for meth in ("fibers", "brute")}
    assert len(set(counts.values())) == 1


def test_disable_flag_selects_numpy():
    env = dict(os.environ, MOTENT_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", "from motent import kernels; print(kernels.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
