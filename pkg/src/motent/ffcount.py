"""Finite fields, exhaustive point counts and Hasse-Weil zeta functions.

Field elements of F_(p^m) are encoded as integers ``sum c_i p^i`` for the
coefficient vector of a polynomial in the generator of a fixed modulus.
Counting kernels work on discrete logarithms with respect to a primitive
element (``-1`` encodes zero), see :mod:`motent.kernels`.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from . import kernels
from ._arith import divisors, factorize, is_prime, mobius, prime_power
from ._polyparse import format_poly, is_homogeneous, parse_poly, reduce_mod
from .errors import ClassSyntaxError, CountingError, EnumerationCapError, PreconditionError
from .logring import LogSeries, entropy_op
from .series import DEFAULT_TRUNC, RING_Q, TruncatedSeries
from .witt import WittElement

DEFAULT_ENUM_CAP = 10**8
FIELD_CAP = 1 << 22
MAX_VARS = 4


def enum_cap() -> int:
    raw = os.environ.get("MOTENT_ENUM_CAP")
    return int(float(raw)) if raw else DEFAULT_ENUM_CAP


# -- F_p[x] helpers (coefficient lists, low degree first) -----------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim([x % p for x in a])
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _x_pow_mod(e, f, p):
    """x^e mod f over F_p."""
    result, base = [1], _pmod([0, 1], f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial of degree m over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _pmod(_x_pow_mod(p**m, f, p), f, p) != _pmod(x, f, p):
        return False
    for r, _ in factorize(m):
        h = _x_pow_mod(p ** (m // r), f, p)
        h = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        g = _pgcd(f, h, p)
        if len(g) != 1:
            return False
    return True


def least_irreducible(p: int, m: int) -> tuple:
    """Least monic irreducible of degree m, ordered by the integer encoding of its lower coefficients."""
    for low in range(p**m):
        coeffs = [(low // p**i) % p for i in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise CountingError(f"no irreducible polynomial of degree {m} over F_{p}")  # unreachable


# -- fields ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteField:
    """F_(p^m) with lookup tables for discrete log arithmetic."""

    p: int
    m: int
    modulus: tuple
    generator: int = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def half(self) -> int:
        """Discrete log of -1."""
        return 0 if self.p == 2 else (self.order - 1) // 2

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def digits(self, a: int) -> list:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def encode(self, digits) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(digits))

    def add(self, a: int, b: int) -> int:
        return self.encode(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        return self.encode(-x for x in self.digits(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        la, lb = int(self.log_table[a]), int(self.log_table[b])
        return int(self.exp_table[(la + lb) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.exp_table[(-int(self.log_table[a])) % (self.order - 1)])

    def mul_poly(self, a: int, b: int) -> int:
        """Schoolbook product modulo the modulus; independent of the log tables."""
        prod = _pmul(self.digits(a), self.digits(b), self.p)
        return self.encode(_pmod(prod, list(self.modulus), self.p))

    def frobenius_log(self, la: int, power: int) -> int:
        """Log of ``a^power`` given ``la = log a``."""
        return -1 if la < 0 else (la * power) % (self.order - 1)


def _is_primitive(g, p, m, f):
    n = p**m - 1
    for r, _ in factorize(n) if n > 1 else ():
        if _pmod(_poly_pow(g, n // r, f, p), f, p) == [1]:
            return False
    return True


def _poly_pow(a, e, f, p):
    result, base = [1], _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


@lru_cache(maxsize=64)
def build_field(p: int, m: int) -> FiniteField:
    """F_(p^m) with the least monic irreducible modulus and a primitive generator."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if m < 1:
        raise PreconditionError("extension degree must be >= 1")
    Q = p**m
    if Q > FIELD_CAP:
        raise EnumerationCapError(f"field of order {Q} exceeds the table cap {FIELD_CAP}")
    f = least_irreducible(p, m)
    g = None
    for cand in range(1, Q):
        digs = _trim([(cand // p**i) % p for i in range(m)])
        if _is_primitive(digs, p, m, list(f)):
            g = cand
            break
    # multiplication by g as an F_p-linear map on digit vectors
    gd = [(g // p**i) % p for i in range(m)]
    cols = []
    for i in range(m):
        v = _pmod(_pmul(gd, [0] * i + [1], p), list(f), p)
        cols.append(v + [0] * (m - len(v)))
    M = np.array(cols, dtype=np.int64).T  # M @ digits
    pw = p ** np.arange(m, dtype=np.int64)
    allv = np.arange(Q, dtype=np.int64)
    digs = (allv[:, None] // pw[None, :]) % p
    mul_g = ((digs @ M.T) % p) @ pw
    exp_t = np.empty(Q - 1, np.int64)
    log_t = np.full(Q, -1, np.int64)
    cur = 1
    for k in range(Q - 1):
        exp_t[k] = cur
        log_t[cur] = k
        cur = int(mul_g[cur])
    if cur != 1 or (log_t[1:] < 0).any():
        raise CountingError(f"generator {g} of F_{Q} is not primitive")
    plus_one = exp_t - exp_t % p + (exp_t % p + 1) % p
    zech = log_t[plus_one]
    return FiniteField(p, m, f, g, exp_t, log_t, zech)


# -- varieties ------------------------------------------------------------------


@dataclass(frozen=True)
class FqVarietyDef:
    """Zero locus of integer polynomials (reduced mod p) over F_q."""

    q: int
    nvars: int
    polys: tuple  # each poly: tuple of (exponent tuple, coefficient mod p)
    kind: str = "affine"
    variables: tuple = ()
    name: str = ""

    def __post_init__(self):
        pe = prime_power(self.q)
        if pe is None:
            raise PreconditionError(f"q = {self.q} is not a prime power")
        if self.kind not in ("affine", "projective"):
            raise PreconditionError(f"kind must be affine or projective, got {self.kind!r}")
        if not 0 <= self.nvars <= MAX_VARS:
            raise PreconditionError(f"nvars must be between 0 and {MAX_VARS}")
        if self.kind == "projective" and self.nvars < 1:
            raise PreconditionError("projective varieties need at least one homogeneous coordinate")
        p = pe[0]
        norm = []
        for poly in self.polys:
            d = reduce_mod(dict(poly), p)
            if any(len(e) != self.nvars for e in d):
                raise PreconditionError("exponent vector length differs from nvars")
            if self.kind == "projective" and not is_homogeneous(d):
                raise PreconditionError("projective equations must be homogeneous")
            norm.append(tuple(sorted(d.items())))
        object.__setattr__(self, "polys", tuple(norm))
        if not self.variables:
            object.__setattr__(self, "variables", tuple(f"x{i}" for i in range(self.nvars)))

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "FqVarietyDef":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ClassSyntaxError("empty variety definition", 0)
        header = {}
        for item in lines[0].split():
            if "=" not in item:
                raise ClassSyntaxError(f"malformed header item {item!r}", 0)
            k, v = item.split("=", 1)
            header[k.strip()] = v.strip()
        for key in ("q", "kind"):
            if key not in header:
                raise ClassSyntaxError(f"header is missing {key}=", 0)
        variables = tuple(v for v in header.get("vars", "").split(",") if v)
        polys = tuple(tuple(parse_poly(ln, variables).items()) for ln in lines[1:])
        return cls(int(header["q"]), len(variables), polys, header["kind"], variables, name)

    @classmethod
    def load(cls, path) -> "FqVarietyDef":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), name=path.stem)

    def to_text(self) -> str:
        head = f"q={self.q} kind={self.kind} vars={','.join(self.variables)}"
        return "\n".join([head] + [format_poly(dict(p), self.variables) for p in self.polys]) + "\n"

    def nonzero_polys(self):
        return [p for p in self.polys if p]


def affine_space(q: int, n: int) -> FqVarietyDef:
    return FqVarietyDef(q, n, (), "affine")


def projective_space(q: int, n: int) -> FqVarietyDef:
    return FqVarietyDef(q, n + 1, (), "projective")


def point(q: int) -> FqVarietyDef:
    return FqVarietyDef(q, 0, (), "affine")


def product(X: FqVarietyDef, Y: FqVarietyDef) -> FqVarietyDef:
    """Product of two affine varieties (variables of Y are appended)."""
    if X.q != Y.q:
        raise PreconditionError("factors must be defined over the same F_q")
    if X.kind != "affine" or Y.kind != "affine":
        raise PreconditionError("products are only formed for affine definitions")
    n = X.nvars + Y.nvars
    polys = [tuple((e + (0,) * Y.nvars, c) for e, c in p) for p in X.polys]
    polys += [tuple(((0,) * X.nvars + e, c) for e, c in p) for p in Y.polys]
    names = tuple(f"{v}_1" for v in X.variables) + tuple(f"{v}_2" for v in Y.variables)
    return FqVarietyDef(X.q, n, tuple(polys), "affine", names)


# -- counting -------------------------------------------------------------------


def _term_arrays(X: FqVarietyDef, F: FiniteField):
    tp, tc, te = [], [], []
    polys = X.nonzero_polys()
    for i, poly in enumerate(polys):
        for e, c in poly:
            tp.append(i)
            tc.append(int(F.log_table[c]))
            te.append(e)
    te = np.array(te, np.int64).reshape(len(tp), X.nvars)
    maxdeg = int(te[:, -1].max()) if len(tp) and X.nvars else 0
    return len(polys), np.array(tp, np.int64), np.array(tc, np.int64), te, maxdeg


def _affine_count(X: FqVarietyDef, m: int, method: str, backend) -> int:
    """Common zeros of X's polynomials in F_(q^m)^nvars."""
    polys = X.nonzero_polys()
    if X.nvars == 0:
        return 0 if polys else 1
    Q = X.q**m
    F = build_field(X.p, X.e * m)
    work = Q ** (X.nvars - 1) if method == "fibers" else Q**X.nvars
    cap = enum_cap()
    if work > cap:
        raise EnumerationCapError(f"{work} tuples over F_{Q} exceed the enumeration cap {cap} (set MOTENT_ENUM_CAP)")
    npolys, tp, tc, te, maxdeg = _term_arrays(X, F)
    impl = kernels.get(backend)
    args = (F.log_table, F.zech, F.half, Q, X.nvars, npolys, tp, tc, te)
    if method == "fibers":
        return int(impl.count_affine_fibers(*args, maxdeg))
    if method == "brute":
        return int(impl.count_affine_brute(*args))
    raise PreconditionError(f"unknown counting method {method!r}")


def count_points(X: FqVarietyDef, m: int = 1, method: str = "fibers", backend: str | None = None) -> int:
    """N_m = #X(F_(q^m)); projective counts go through the affine cone."""
    if m < 1:
        raise PreconditionError("extension degree m must be >= 1")
    return _count_cached(X, m, method, backend)


@lru_cache(maxsize=1024)
def _count_cached(X, m, method, backend):
    cone = _affine_count(X, m, method, backend)
    if X.kind == "affine":
        return cone
    Q = X.q**m
    num = cone - 1
    if num % (Q - 1):
        raise CountingError(f"affine cone count {cone} - 1 is not divisible by {Q - 1}")
    return num // (Q - 1)


def closed_point_counts(N) -> list:
    """a_r = (1/r) sum_(d | r) mu(d) N_(r/d); must be non-negative integers."""
    out = []
    for r in range(1, len(N) + 1):
        s = sum(mobius(d) * int(N[r // d - 1]) for d in divisors(r))
        a = Fraction(s, r)
        if a.denominator != 1 or a < 0:
            raise CountingError(f"closed-point count a_{r} = {a} is not a non-negative integer")
        out.append(int(a))
    return out


def point_counts_from_closed(a) -> list:
    """N_m = sum_(r | m) r a_r."""
    return [sum(r * a[r - 1] for r in divisors(m)) for m in range(1, len(a) + 1)]


def zeta_from_closed_points(a, trunc: int) -> WittElement:
    """prod_r (1 - t^r)^(-a_r), each factor expanded as a geometric series in t^r."""
    acc = TruncatedSeries.one(trunc, RING_Q)
    for r, ar in enumerate(a[:trunc], start=1):
        if ar == 0:
            continue
        # (1 - t^r)^(-a_r) = sum_k C(a_r + k - 1, k) t^(r k)
        cs = [comb(ar + n // r - 1, n // r) if n % r == 0 else 0 for n in range(trunc + 1)]
        acc = acc * TruncatedSeries.from_coeffs(cs, trunc, RING_Q)
    return WittElement(acc)


@dataclass(frozen=True)
class ZetaData:
    point_counts: tuple
    closed_points: tuple
    zeta: WittElement

    def to_json(self) -> dict:
        return {
            "point_counts": list(self.point_counts),
            "closed_points": list(self.closed_points),
            "zeta": self.zeta.to_json(),
        }


def zeta_data_from_counts(N, trunc: int | None = None) -> ZetaData:
    trunc = len(N) if trunc is None else trunc
    if len(N) < trunc:
        raise PreconditionError(f"need {trunc} point counts, have {len(N)}")
    N = [int(x) for x in N[:trunc]]
    a = closed_point_counts(N)
    z = zeta_from_closed_points(a, trunc)
    # log Z = sum N_m t^m / m: the product form must reproduce the counts
    ghosts = z.ghost().components
    if [int(g) for g in ghosts] != N or any(Fraction(g).denominator != 1 for g in ghosts):
        raise CountingError("closed-point product does not reproduce the point counts")
    return ZetaData(tuple(N), tuple(a), z)


def hasse_weil_zeta(X: FqVarietyDef, trunc: int = DEFAULT_TRUNC, method: str = "fibers", backend=None) -> ZetaData:
    """Z(X, t) = prod_r (1 - t^r)^(-a_r) truncated at t^trunc."""
    N = [count_points(X, m, method, backend) for m in range(1, trunc + 1)]
    return zeta_data_from_counts(N, trunc)


def local_hw_entropy(X, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    """Entropy of the Hasse-Weil zeta, cross-checked against log Z + Z^(-1) H."""
    z = X if isinstance(X, WittElement) else hasse_weil_zeta(X, trunc).zeta
    out = entropy_op(z)
    # H(X,t) = -log t * t dZ/dt, so Z^(-1) H contributes -(t Z'/Z) to the log part
    s = z.series
    alt = LogSeries(s.log(), -(s.inverse() * s.t_ddt()))
    if alt != out:
        raise CountingError("entropy routes disagree for the Hasse-Weil zeta")
    return out


def cycle_counts_from_closed(a, D: int) -> list:
    """Effective zero-cycles per degree 0..D from closed-point counts.

    Degree-r points contribute multisets: choosing k of them (with repetition)
    gives C(a_r + k - 1, k) cycles of degree r k.
    """
    counts = [1] + [0] * D
    for r, ar in enumerate(a[:D], start=1):
        new = [0] * (D + 1)
        for n, c in enumerate(counts):
            if not c:
                continue
            for k in range(0, (D - n) // r + 1):
                new[n + r * k] += c * comb(ar + k - 1, k)
        counts = new
    return counts


def cycle_enumerate(X, D: int) -> list:
    """``[(degree, count)]`` for effective zero-cycles of degree <= D."""
    if isinstance(X, FqVarietyDef):
        a = closed_point_counts([count_points(X, m) for m in range(1, D + 1)]) if D else []
    else:
        a = list(X)
    return list(enumerate(cycle_counts_from_closed(a, D)))


# -- explicit points and Frobenius orbits (small cases) ----------------------------


def rational_points(X: FqVarietyDef, m: int = 1, limit: int = 10**6) -> list:
    """Points of X over F_(q^m) as tuples of element encodings.

    Projective points are normalized so the first non-zero coordinate is 1.
    """
    Q = X.q**m
    if Q**X.nvars > limit:
        raise EnumerationCapError(f"listing {Q ** X.nvars} tuples exceeds the limit {limit}")
    F = build_field(X.p, X.e * m)
    out = []
    for tup in itertools.product(range(Q), repeat=X.nvars):
        if X.kind == "projective":
            nz = [c for c in tup if c]
            if not nz or nz[0] != 1:
                continue
        if all(_eval(F, poly, tup) == 0 for poly in X.nonzero_polys()):
            out.append(tup)
    return out


def _eval(F: FiniteField, poly, point) -> int:
    acc = 0
    for e, c in poly:
        v = c % F.p
        for x, k in zip(point, e):
            for _ in range(k):
                v = F.mul(v, x)
        acc = F.add(acc, v)
    return acc


def _frob(F: FiniteField, q: int, pt: tuple) -> tuple:
    out = []
    for x in pt:
        lx = int(F.log_table[x])
        out.append(0 if lx < 0 else int(F.exp_table[F.frobenius_log(lx, q)]))
    return tuple(out)


def frobenius_orbits(X: FqVarietyDef, m: int) -> list:
    """Orbits of x -> x^q on X(F_(q^m))."""
    F = build_field(X.p, X.e * m)
    seen, orbits = set(), []
    for pt in rational_points(X, m):
        if pt in seen:
            continue
        orb = [pt]
        nxt = _frob(F, X.q, pt)
        while nxt != pt:
            orb.append(nxt)
            nxt = _frob(F, X.q, nxt)
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


def closed_points_by_orbits(X: FqVarietyDef, rmax: int) -> list:
    """a_r for r <= rmax by counting Frobenius orbits of exact size r."""
    return [sum(1 for o in frobenius_orbits(X, r) if len(o) == r) for r in range(1, rmax + 1)]


def projection_degree_triples(X: FqVarietyDef, coords, rmax: int) -> list:
    """``(deg x, [k(x):k(f(x))], deg f(x))`` for closed points of degree <= rmax.

    ``f`` is the coordinate projection of an affine X onto ``coords``.
    """
    triples = []
    for r in range(1, rmax + 1):
        F = build_field(X.p, X.e * r)
        for orb in frobenius_orbits(X, r):
            if len(orb) != r:
                continue
            img = tuple(orb[0][i] for i in coords)
            k, nxt = 1, _frob(F, X.q, img)
            while nxt != img:
                k += 1
                nxt = _frob(F, X.q, nxt)
            if r % k:
                raise CountingError(f"image degree {k} does not divide point degree {r}")
            triples.append((r, r // k, k))
    return triples


__all__ = [
    "FiniteField",
    "FqVarietyDef",
    "ZetaData",
    "affine_space",
    "build_field",
    "closed_point_counts",
    "closed_points_by_orbits",
    "count_points",
    "cycle_counts_from_closed",
    "cycle_enumerate",
    "frobenius_orbits",
    "hasse_weil_zeta",
    "is_irreducible",
    "least_irreducible",
    "local_hw_entropy",
    "point",
    "point_counts_from_closed",
    "product",
    "projection_degree_triples",
    "projective_space",
    "rational_points",
    "zeta_data_from_counts",
    "zeta_from_closed_points",
]
