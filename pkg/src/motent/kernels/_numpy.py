"""Pure-numpy versions of the kernels in ``_numba``.

Same log-form encoding; fibres are processed in chunks of rows and the
univariate gcd / powering steps are vectorized across rows with masks.
"""
import numpy as np

CHUNK = 1 << 15


class _F:
    def __init__(self, zech, half, Q):
        self.zech = zech
        self.half = half
        self.Q = Q
        self.qm1 = Q - 1

    def add(self, a, b):
        a = np.asarray(a, np.int64)
        b = np.asarray(b, np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = np.where(a < 0, b, a)
        both = (a >= 0) & (b >= 0)
        if both.any():
            aa = a[both]
            z = self.zech[(b[both] - aa) % self.qm1]
            out[both] = np.where(z < 0, -1, (aa + z) % self.qm1)
        return out

    def mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, np.int64), np.asarray(b, np.int64))
        return np.where((a < 0) | (b < 0), -1, (a + b) % self.qm1)

    def neg(self, a):
        return np.where(a < 0, -1, (a + self.half) % self.qm1)


def _deg(P):
    nz = P >= 0
    L = P.shape[1]
    d = L - 1 - np.argmax(nz[:, ::-1], axis=1)
    d[~nz.any(axis=1)] = -1
    return d


def _monic(F, P, d):
    P = P.copy()
    ok = d >= 0
    if ok.any():
        rows = np.nonzero(ok)[0]
        inv = (F.qm1 - P[rows, d[rows]]) % F.qm1
        P[rows] = F.mul(P[rows], inv[:, None])
    return P


def _rem(F, A, B, dB):
    """Row-wise A mod B, B monic with dB >= 0 on every row."""
    A = A.copy()
    L = A.shape[1]
    cols = np.arange(B.shape[1])
    dA = _deg(A)
    while True:
        act = np.nonzero(dA >= dB)[0]
        if act.size == 0:
            return A
        lead = A[act, dA[act]]
        shift = dA[act] - dB[act]
        sub = F.neg(F.mul(B[act], lead[:, None]))
        valid = cols[None, :] < dB[act][:, None]
        tgt = shift[:, None] + cols[None, :]
        valid &= tgt < L
        ri = np.broadcast_to(act[:, None], tgt.shape)[valid]
        ci = tgt[valid]
        A[ri, ci] = F.add(A[ri, ci], sub[valid])
        A[act, dA[act]] = -1
        dA = _deg(A)


def _gcd(F, A, B):
    """Row-wise monic gcd; zero rows of both give degree -1."""
    A = A.copy()
    B = B.copy()
    dA, dB = _deg(A), _deg(B)
    while True:
        act = np.nonzero(dB >= 0)[0]
        if act.size == 0:
            break
        Bm = _monic(F, B[act], dB[act])
        R = _rem(F, A[act], Bm, dB[act])
        A[act] = Bm
        B[act] = R
        dA[act] = dB[act]
        dB[act] = _deg(R)
    return _monic(F, A, dA), dA


def _mulmod(F, U, V, G, d):
    k = U.shape[0]
    C = np.full((k, 2 * d - 1), -1, np.int64)
    for i in range(d):
        for j in range(d):
            C[:, i + j] = F.add(C[:, i + j], F.mul(U[:, i], V[:, j]))
    for top in range(2 * d - 2, d - 1, -1):
        lead = C[:, top]
        for j in range(d):
            C[:, top - d + j] = F.add(C[:, top - d + j], F.neg(F.mul(lead, G[:, j])))
    return C[:, :d]


def _count_roots(F, G, d):
    """Distinct F_Q-roots of monic rows G (shape (k, L)), all of degree d >= 2."""
    k, L = G.shape
    R = np.full((k, d), -1, np.int64)
    R[:, 0] = 0
    base = np.full((k, d), -1, np.int64)
    base[:, 1] = 0
    Q = F.Q
    for bit in range(Q.bit_length() - 1, -1, -1):
        R = _mulmod(F, R, R, G, d)
        if (Q >> bit) & 1:
            R = _mulmod(F, R, base, G, d)
    H = np.full((k, L), -1, np.int64)
    H[:, :d] = R
    H[:, 1] = F.add(H[:, 1], np.full(k, F.half, np.int64))
    _, dg = _gcd(F, G, H)
    return dg


def _digits(idx, Q, n):
    out = np.empty((idx.shape[0], n), np.int64)
    rest = idx.copy()
    for j in range(n):
        out[:, j] = rest % Q
        rest //= Q
    return out


def _specialize(F, xs, npolys, term_poly, term_coef, term_exp, nfix, L):
    """Coefficient rows (npolys, rows, L) in the free variable after fixing ``nfix`` coordinates."""
    rows = xs.shape[0]
    out = np.full((npolys, rows, L), -1, np.int64)
    for t in range(term_poly.shape[0]):
        v = np.full(rows, term_coef[t], np.int64)
        for j in range(nfix):
            e = term_exp[t, j]
            if e > 0:
                v = np.where(xs[:, j] < 0, -1, np.where(v < 0, -1, (v + e * xs[:, j]) % F.qm1))
        i = term_poly[t]
        k = term_exp[t, nfix] if nfix < term_exp.shape[1] else 0
        out[i, :, k] = F.add(out[i, :, k], v)
    return out


def count_affine_fibers(log_t, zech, half, Q, nvars, npolys, term_poly, term_coef, term_exp, maxdeg):
    F = _F(zech, half, Q)
    L = maxdeg + 1
    nouter = Q ** (nvars - 1)
    total = 0
    for start in range(0, nouter, CHUNK):
        idx = np.arange(start, min(start + CHUNK, nouter), dtype=np.int64)
        xs = log_t[_digits(idx, Q, nvars - 1)] if nvars > 1 else np.empty((idx.size, 0), np.int64)
        polys = _specialize(F, xs, npolys, term_poly, term_coef, term_exp, nvars - 1, L)
        G = np.full((idx.size, L), -1, np.int64)
        for i in range(npolys):
            G, _ = _gcd(F, G, polys[i])
        dG = _deg(G)
        total += Q * int(np.count_nonzero(dG < 0)) + int(np.count_nonzero(dG == 1))
        for d in np.unique(dG[dG >= 2]):
            rows = G[dG == d]
            total += int(_count_roots(F, rows, int(d)).sum())
    return total


def count_affine_brute(log_t, zech, half, Q, nvars, npolys, term_poly, term_coef, term_exp):
    F = _F(zech, half, Q)
    ntot = Q**nvars
    total = 0
    for start in range(0, ntot, CHUNK):
        idx = np.arange(start, min(start + CHUNK, ntot), dtype=np.int64)
        xs = log_t[_digits(idx, Q, nvars)]
        vals = _specialize(F, xs, npolys, term_poly, term_coef, term_exp, nvars, 1)[:, :, 0]
        total += int(np.count_nonzero((vals < 0).all(axis=0)))
    return total


def prime_sieve(n):
    if n < 2:
        return np.zeros(0, np.int64)
    is_p = np.ones(n + 1, bool)
    is_p[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if is_p[i]:
            is_p[i * i :: i] = False
    return np.nonzero(is_p)[0].astype(np.int64)


def dirichlet_sums(primes, cpoly, s, kmax):
    lp = np.log(primes.astype(np.float64))[:, None]
    k = np.arange(1, kmax + 1, dtype=np.float64)[None, :]
    term = np.zeros((primes.shape[0], kmax))
    for j, c in enumerate(cpoly):
        if c != 0.0:
            term += c * np.exp(k * lp * (j - s))
    term /= k
    return float(term.sum()), float((term * k * lp).sum())
