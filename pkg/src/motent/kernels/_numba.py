"""Loop kernels compiled with numba.

Field elements are passed in log form: ``-1`` is zero and ``k >= 0`` stands
for ``g^k`` where g generates the multiplicative group.  Addition goes
through the Zech table ``zech[k] = log(1 + g^k)``.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _add(a, b, zech, qm1):
    if a < 0:
        return b
    if b < 0:
        return a
    k = b - a
    if k < 0:
        k += qm1
    z = zech[k]
    if z < 0:
        return -1
    s = a + z
    if s >= qm1:
        s -= qm1
    return s


@njit(cache=True)
def _mul(a, b, qm1):
    if a < 0 or b < 0:
        return -1
    s = a + b
    if s >= qm1:
        s -= qm1
    return s


@njit(cache=True)
def _neg(a, half, qm1):
    if a < 0:
        return -1
    s = a + half
    if s >= qm1:
        s -= qm1
    return s


@njit(cache=True)
def _degree(a, n):
    d = n - 1
    while d >= 0 and a[d] < 0:
        d -= 1
    return d


@njit(cache=True)
def _monic(a, d, qm1):
    if d < 0:
        return
    inv = (qm1 - a[d]) % qm1
    for j in range(d + 1):
        a[j] = _mul(a[j], inv, qm1)


@njit(cache=True)
def _rem(a, da, b, db, zech, half, qm1):
    """a <- a mod b in place, b monic of degree db >= 0.  Returns deg(a)."""
    while da >= db:
        lead = a[da]
        if lead >= 0:
            shift = da - db
            for j in range(db):
                a[shift + j] = _add(a[shift + j], _neg(_mul(lead, b[j], qm1), half, qm1), zech, qm1)
            a[da] = -1
        da -= 1
        while da >= 0 and a[da] < 0:
            da -= 1
    return da


@njit(cache=True)
def _gcd(a, da, b, db, zech, half, qm1):
    """Monic gcd of a and b (equal lengths), left in ``a``; returns its degree."""
    swapped = False
    while db >= 0:
        _monic(b, db, qm1)
        da = _rem(a, da, b, db, zech, half, qm1)
        a, b = b, a
        da, db = db, da
        swapped = not swapped
    _monic(a, da, qm1)
    if swapped:
        for i in range(a.shape[0]):
            b[i] = a[i]
    return da


@njit(cache=True)
def _mulmod(u, v, g, d, buf, zech, half, qm1):
    """u <- u*v mod g for residues of length d; g monic of degree d."""
    for i in range(2 * d - 1):
        buf[i] = -1
    for i in range(d):
        if u[i] < 0:
            continue
        for j in range(d):
            if v[j] >= 0:
                buf[i + j] = _add(buf[i + j], _mul(u[i], v[j], qm1), zech, qm1)
    for top in range(2 * d - 2, d - 1, -1):
        lead = buf[top]
        if lead >= 0:
            for j in range(d):
                buf[top - d + j] = _add(buf[top - d + j], _neg(_mul(lead, g[j], qm1), half, qm1), zech, qm1)
            buf[top] = -1
    for i in range(d):
        u[i] = buf[i]


@njit(cache=True)
def _count_roots(g, d, Q, zech, half, qm1):
    """Number of distinct roots in F_Q of the monic polynomial g of degree d >= 2."""
    r = np.full(d, -1, np.int64)
    base = np.full(d, -1, np.int64)
    buf = np.empty(2 * d - 1, np.int64)
    r[0] = 0
    base[1] = 0
    e = Q
    # left-to-right binary powering of y
    nbits = 0
    while (e >> nbits) > 0:
        nbits += 1
    for bit in range(nbits - 1, -1, -1):
        _mulmod(r, r, g, d, buf, zech, half, qm1)
        if (e >> bit) & 1:
            _mulmod(r, base, g, d, buf, zech, half, qm1)
    # h = y^Q - y mod g
    h = np.full(d + 1, -1, np.int64)
    for i in range(d):
        h[i] = r[i]
    h[1] = _add(h[1], half, zech, qm1)
    gg = np.full(d + 1, -1, np.int64)
    for i in range(d + 1):
        gg[i] = g[i]
    dh = _degree(h, d + 1)
    return _gcd(gg, d, h, dh, zech, half, qm1)


@njit(cache=True)
def count_affine_fibers(log_t, zech, half, Q, nvars, npolys, term_poly, term_coef, term_exp, maxdeg):
    """Common zeros in F_Q^nvars, counted fibre by fibre over the last variable."""
    qm1 = Q - 1
    L = maxdeg + 1
    nouter = 1
    for _ in range(nvars - 1):
        nouter *= Q
    digits = np.zeros(max(nvars - 1, 1), np.int64)
    xs = np.full(max(nvars - 1, 1), -1, np.int64)
    polys = np.empty((npolys, L), np.int64)
    acc = np.empty(L, np.int64)
    tmp = np.empty(L, np.int64)
    total = 0
    for idx in range(nouter):
        if idx > 0:
            j = 0
            while True:
                digits[j] += 1
                if digits[j] < Q:
                    break
                digits[j] = 0
                j += 1
        for j in range(nvars - 1):
            xs[j] = log_t[digits[j]]
        polys[:, :] = -1
        for t in range(term_poly.shape[0]):
            v = term_coef[t]
            for j in range(nvars - 1):
                e = term_exp[t, j]
                if e > 0:
                    if xs[j] < 0:
                        v = -1
                        break
                    v = (v + e * xs[j]) % qm1
            if v >= 0:
                i = term_poly[t]
                k = term_exp[t, nvars - 1]
                polys[i, k] = _add(polys[i, k], v, zech, qm1)
        acc[:] = -1
        da = -1
        for i in range(npolys):
            for k in range(L):
                tmp[k] = polys[i, k]
            dt = _degree(tmp, L)
            if dt < 0:
                continue
            if da < 0:
                for k in range(L):
                    acc[k] = tmp[k]
                da = dt
                _monic(acc, da, qm1)
            else:
                da = _gcd(acc, da, tmp, dt, zech, half, qm1)
            if da == 0:
                break
        if da < 0:
            total += Q
        elif da == 1:
            total += 1
        elif da >= 2:
            total += _count_roots(acc, da, Q, zech, half, qm1)
    return total


@njit(cache=True)
def count_affine_brute(log_t, zech, half, Q, nvars, npolys, term_poly, term_coef, term_exp):
    """Common zeros in F_Q^nvars by evaluating every tuple."""
    qm1 = Q - 1
    ntot = 1
    for _ in range(nvars):
        ntot *= Q
    digits = np.zeros(max(nvars, 1), np.int64)
    xs = np.full(max(nvars, 1), -1, np.int64)
    vals = np.empty(max(npolys, 1), np.int64)
    total = 0
    for idx in range(ntot):
        if idx > 0:
            j = 0
            while True:
                digits[j] += 1
                if digits[j] < Q:
                    break
                digits[j] = 0
                j += 1
        for j in range(nvars):
            xs[j] = log_t[digits[j]]
        vals[:] = -1
        for t in range(term_poly.shape[0]):
            v = term_coef[t]
            for j in range(nvars):
                e = term_exp[t, j]
                if e > 0:
                    if xs[j] < 0:
                        v = -1
                        break
                    v = (v + e * xs[j]) % qm1
            if v >= 0:
                i = term_poly[t]
                vals[i] = _add(vals[i], v, zech, qm1)
        ok = True
        for i in range(npolys):
            if vals[i] >= 0:
                ok = False
                break
        if ok:
            total += 1
    return total


@njit(cache=True)
def prime_sieve(n):
    """Primes <= n in ascending order."""
    if n < 2:
        return np.zeros(0, np.int64)
    is_p = np.ones(n + 1, np.bool_)
    is_p[0] = False
    is_p[1] = False
    i = 2
    while i * i <= n:
        if is_p[i]:
            for j in range(i * i, n + 1, i):
                is_p[j] = False
        i += 1
    cnt = 0
    for i in range(n + 1):
        if is_p[i]:
            cnt += 1
    out = np.empty(cnt, np.int64)
    cnt = 0
    for i in range(n + 1):
        if is_p[i]:
            out[cnt] = i
            cnt += 1
    return out


@njit(cache=True)
def dirichlet_sums(primes, cpoly, s, kmax):
    """Return ``(sum c_n n^-s, sum c_n ln(n) n^-s)`` over n = p^k, k <= kmax.

    ``c_(p^k) = C(p^k)/k`` with ``C(x) = sum_j cpoly[j] x^j``.  Terms are added
    in ascending (p, k) order.
    """
    logl = 0.0
    dsum = 0.0
    for i in range(primes.shape[0]):
        lp = np.log(float(primes[i]))
        for k in range(1, kmax + 1):
            term = 0.0
            for j in range(cpoly.shape[0]):
                if cpoly[j] != 0.0:
                    term += cpoly[j] * np.exp(k * lp * (j - s))
            term /= k
            logl += term
            dsum += term * k * lp
    return logl, dsum
