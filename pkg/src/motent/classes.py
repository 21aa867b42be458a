"""Formal classes in the Grothendieck ring of varieties and exponentiable measures.

A :class:`KClass` is a finite Z-linear combination of *monomials*; a monomial
is a product of atoms (affine spaces, projective spaces, Betti atoms, named
varieties over a finite field).  The point ``pt`` is the empty monomial and
affine factors are merged, ``A^m * A^n = A^(m+n)``.

Text syntax::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (['*'] factor)*
    factor := INT | atom | '(' expr ')'
    atom   := 'pt' | 'A^'INT | 'P^'INT | 'L' | 'betti[' INT (',' INT)* ']' | 'fq:'IDENT
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import ClassSyntaxError, PreconditionError, RingMismatchError
from .logring import LogSeries, entropy_op
from .series import DEFAULT_TRUNC, RING_Q, RING_QZ, Poly, TruncatedSeries
from .witt import WittElement, euler_zeta, sigma_monomials, teichmuller

# -- atoms --------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Affine:
    n: int

    def __str__(self):
        return "L" if self.n == 1 else f"A^{self.n}"


@dataclass(frozen=True, order=True)
class Projective:
    n: int

    def __str__(self):
        return f"P^{self.n}"


@dataclass(frozen=True, order=True)
class Betti:
    numbers: tuple

    def __post_init__(self):
        b = tuple(int(x) for x in self.numbers)
        if not b or len(b) % 2 == 0 or any(x < 0 for x in b):
            raise PreconditionError(f"Betti vector must be b_0..b_2d of non-negative integers, got {list(b)}")
        object.__setattr__(self, "numbers", b)

    def __str__(self):
        return "betti[" + ",".join(map(str, self.numbers)) + "]"


@dataclass(frozen=True, order=True)
class FqAtom:
    name: str

    def __str__(self):
        return f"fq:{self.name}"


_KIND_ORDER = {Affine: 0, Projective: 1, Betti: 2, FqAtom: 3}


def _atom_key(a):
    return (_KIND_ORDER[type(a)], a)


def _monomial(atoms) -> tuple:
    """Normal form of a product of atoms."""
    aff = 0
    rest = []
    for a in atoms:
        if isinstance(a, Affine):
            aff += a.n
        else:
            rest.append(a)
    if aff:
        rest.append(Affine(aff))
    return tuple(sorted(rest, key=_atom_key))


def _mono_str(m: tuple) -> str:
    if not m:
        return "pt"
    return "*".join(str(a) for a in m)


# -- classes ------------------------------------------------------------------


@dataclass(frozen=True)
class KClass:
    """Z-linear combination of monomials, stored sorted with non-zero multiplicities."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping) -> "KClass":
        items = [(m, int(c)) for m, c in d.items() if c]
        items.sort(key=lambda mc: (len(mc[0]), [_atom_key(a) for a in mc[0]]))
        return cls(tuple(items))

    @classmethod
    def empty(cls) -> "KClass":
        return cls(())

    @classmethod
    def point(cls, n: int = 1) -> "KClass":
        return cls.from_dict({(): n})

    @classmethod
    def atom(cls, a) -> "KClass":
        if isinstance(a, Affine) and a.n == 0:
            return cls.point()
        if isinstance(a, Projective) and a.n == 0:
            return cls.point()
        return cls.from_dict({_monomial([a]): 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = KClass.point(other)
        if not isinstance(other, KClass):
            return NotImplemented
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return KClass.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return KClass.from_dict({m: -c for m, c in self.terms})

    def __sub__(self, other):
        if isinstance(other, int):
            other = KClass.point(other)
        if not isinstance(other, KClass):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return KClass.from_dict({m: c * other for m, c in self.terms})
        if not isinstance(other, KClass):
            return NotImplemented
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = _monomial(m1 + m2)
                d[m] = d.get(m, 0) + c1 * c2
        return KClass.from_dict(d)

    __rmul__ = __mul__

    def is_empty(self) -> bool:
        return not self.terms

    def atoms(self) -> set:
        return {a for m, _ in self.terms for a in m}

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for i, (m, c) in enumerate(self.terms):
            body = _mono_str(m) if abs(c) == 1 else f"{abs(c)}*{_mono_str(m)}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self) -> list:
        return [{"atom": _mono_str(m), "mult": c} for m, c in self.terms]

    @classmethod
    def from_json(cls, data: list) -> "KClass":
        acc = cls.empty()
        for item in data:
            acc = acc + parse_class(item["atom"]) * int(item["mult"])
        return acc


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<betti>betti\[)
  | (?P<fq>fq:(?P<ident>[A-Za-z_][A-Za-z0-9_]*))
  | (?P<aff>A\^(?P<an>\d+))
  | (?P<proj>P\^(?P<pn>\d+))
  | (?P<pt>pt\b)
  | (?P<lef>L\b)
  | (?P<int>\d+)
  | (?P<op>[-+*()])
    """,
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(self._lex(text))
        self.i = 0

    def _lex(self, text):
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ClassSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            if kind == "betti":
                yield ("atom", self._lex_betti(text, m.end(), pos), pos)
                pos = text.index("]", m.end()) + 1
                continue
            if kind == "ident":
                kind = "fq"
            if kind != "ws":
                yield (kind, m, pos)
            pos = m.end()
        yield ("eof", None, len(text))

    @staticmethod
    def _lex_betti(text, start, pos):
        end = text.find("]", start)
        if end < 0:
            raise ClassSyntaxError("unterminated Betti vector", pos)
        body = text[start:end]
        parts = [p.strip() for p in body.split(",")]
        if not body.strip() or not all(re.fullmatch(r"\d+", p) for p in parts):
            raise ClassSyntaxError(f"malformed Betti vector [{body}]", pos)
        try:
            return Betti(tuple(int(p) for p in parts))
        except PreconditionError as exc:
            raise ClassSyntaxError(str(exc), pos) from None

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> KClass:
        out = self.expr()
        kind, _, pos = self.peek()
        if kind != "eof":
            raise ClassSyntaxError("unexpected trailing input", pos)
        return out

    def _is_op(self, tok, ch):
        return tok[0] == "op" and tok[1].group() == ch

    def expr(self) -> KClass:
        neg = False
        if self._is_op(self.peek(), "-"):
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            tok = self.peek()
            if self._is_op(tok, "+"):
                self.take()
                acc = acc + self.term()
            elif self._is_op(tok, "-"):
                self.take()
                acc = acc - self.term()
            else:
                return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("int", "atom", "aff", "proj", "pt", "lef", "fq") or self._is_op(tok, "(")

    def term(self) -> KClass:
        acc = self.factor()
        while True:
            tok = self.peek()
            if self._is_op(tok, "*"):
                self.take()
                acc = acc * self.factor()
            elif self._starts_factor(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> KClass:
        kind, m, pos = self.take()
        if kind == "int":
            return KClass.point(int(m.group()))
        if kind == "atom":
            return KClass.atom(m)
        if kind == "aff":
            return KClass.atom(Affine(int(m.group("an"))))
        if kind == "proj":
            return KClass.atom(Projective(int(m.group("pn"))))
        if kind == "pt":
            return KClass.point()
        if kind == "lef":
            return KClass.atom(Affine(1))
        if kind == "fq":
            return KClass.atom(FqAtom(m.group("ident")))
        if kind == "op" and m.group() == "(":
            inner = self.expr()
            k2, m2, p2 = self.take()
            if not (k2 == "op" and m2.group() == ")"):
                raise ClassSyntaxError("expected ')'", p2)
            return inner
        what = "end of input" if kind == "eof" else repr(m.group())
        raise ClassSyntaxError(f"expected a factor, found {what}", pos)


def parse_class(text: str) -> KClass:
    """Parse a variety expression such as ``"A^2 * P^1 + 3 pt"``."""
    return _Parser(text).parse()


# -- measures -----------------------------------------------------------------


class Measure:
    """A ring homomorphism on classes together with its Kapranov zeta function."""

    name = "measure"
    ring = RING_Q

    def atom_value(self, atom):
        raise NotImplementedError

    def evaluate(self, X: KClass):
        acc = 0 if self.ring == RING_Q else Poly()
        for m, c in X.terms:
            v = Fraction(1) if self.ring == RING_Q else Poly([1])
            for a in m:
                v = v * self.atom_value(a)
            acc = acc + v * c
        return Fraction(acc) if self.ring == RING_Q else acc

    def zeta(self, X: KClass, trunc: int = DEFAULT_TRUNC) -> WittElement:
        raise NotImplementedError

    def _mismatch(self, atom):
        return RingMismatchError(f"measure {self.name} is not defined on atom {atom}")

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash(type(self))


class EulerChar(Measure):
    name = "chi"
    ring = RING_Q

    def atom_value(self, a):
        if isinstance(a, Affine):
            return Fraction(1)
        if isinstance(a, Projective):
            return Fraction(a.n + 1)
        if isinstance(a, Betti):
            return Fraction(sum((-1) ** j * b for j, b in enumerate(a.numbers)))
        raise self._mismatch(a)

    def zeta(self, X, trunc=DEFAULT_TRUNC):
        return euler_zeta(self.evaluate(X), trunc, RING_Q)


class Poincare(Measure):
    """Virtual Poincare polynomial: ``A^n -> z^(2n)``, ``betti[b] -> sum b_j z^j``.

    The zeta function is ``prod_j (1 - z^j t)^((-1)^(j+1) c_j)`` where ``c_j``
    is the ``z^j`` coefficient of the measure.
    """

    name = "poincare"
    ring = RING_QZ

    def atom_value(self, a):
        if isinstance(a, Affine):
            return Poly.z(2 * a.n)
        if isinstance(a, Projective):
            return Poly([1 if k % 2 == 0 else 0 for k in range(2 * a.n + 1)])
        if isinstance(a, Betti):
            return Poly(a.numbers)
        raise self._mismatch(a)

    def zeta(self, X, trunc=DEFAULT_TRUNC):
        p = self.evaluate(X)
        pairs = [(Poly.z(j), (-1) ** j * c) for j, c in enumerate(p.coeffs) if c]
        return sigma_monomials(pairs, trunc, RING_QZ)


class PointCount(Measure):
    """Number of F_q-points; named ``fq:`` atoms are looked up in ``varieties``."""

    name = "count"
    ring = RING_Q

    def __init__(self, q: int, varieties: Mapping | None = None):
        if int(q) < 2:
            raise PreconditionError("q must be a prime power >= 2")
        self.q = int(q)
        self.varieties = dict(varieties or {})
        for name, v in self.varieties.items():
            if v.q != self.q:
                raise RingMismatchError(f"variety fq:{name} is defined over F_{v.q}, not F_{self.q}")

    def __repr__(self):
        return f"PointCount({self.q})"

    def __eq__(self, other):
        return isinstance(other, PointCount) and other.q == self.q and other.varieties.keys() == self.varieties.keys()

    def __hash__(self):
        return hash((PointCount, self.q))

    def _variety(self, a: FqAtom):
        try:
            return self.varieties[a.name]
        except KeyError:
            raise RingMismatchError(f"no definition registered for fq:{a.name} over F_{self.q}") from None

    def count_polynomial(self, atoms) -> Poly:
        """Point count over F_(q^m) as a polynomial in ``Q = q^m`` (no fq atoms)."""
        v = Poly([1])
        for a in atoms:
            if isinstance(a, Affine):
                v = v * Poly.z(a.n)
            elif isinstance(a, Projective):
                v = v * Poly([1] * (a.n + 1))
            else:
                raise self._mismatch(a)
        return v

    def atom_value(self, a):
        if isinstance(a, FqAtom):
            from .ffcount import count_points

            return Fraction(count_points(self._variety(a), 1))
        return self.count_polynomial([a])(Fraction(self.q))

    def zeta(self, X, trunc=DEFAULT_TRUNC):
        from .ffcount import hasse_weil_zeta

        acc = WittElement.zero(trunc, RING_Q)
        for m, c in X.terms:
            plain = [a for a in m if not isinstance(a, FqAtom)]
            fq = [a for a in m if isinstance(a, FqAtom)]
            poly = self.count_polynomial(plain)
            z = sigma_monomials([(Fraction(self.q) ** j, cj) for j, cj in enumerate(poly.coeffs)], trunc, RING_Q)
            for a in fq:
                z = z * hasse_weil_zeta(self._variety(a), trunc).zeta
            acc = acc + z.times(c)
        return acc


def measure_from_name(name: str, varieties: Mapping | None = None) -> Measure:
    """``chi`` | ``poincare`` | ``count:<q>``."""
    key = name.strip().lower()
    if key in ("chi", "euler", "eulerchar"):
        return EulerChar()
    if key in ("poincare", "p"):
        return Poincare()
    if key.startswith("count:"):
        return PointCount(int(key.split(":", 1)[1]), varieties)
    raise PreconditionError(f"unknown measure {name!r} (expected chi, poincare or count:<q>)")


def measure_eval(mu: Measure, X: KClass):
    return mu.evaluate(X)


def kapranov_zeta(mu: Measure, X: KClass, trunc: int = DEFAULT_TRUNC) -> WittElement:
    return mu.zeta(X, trunc)


def motivic_entropy(mu: Measure, X: KClass, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    return entropy_op(mu.zeta(X, trunc))


def mutual_information(mu: Measure, X: KClass, Y: KClass, XcapY: KClass, trunc: int = DEFAULT_TRUNC) -> LogSeries:
    """``S(X) + S(Y) - S(X cap Y)``; the intersection class is supplied by the caller."""
    return motivic_entropy(mu, X, trunc) + motivic_entropy(mu, Y, trunc) - motivic_entropy(mu, XcapY, trunc)


# -- Poincare entropy with a formal log z ---------------------------------------


@dataclass(frozen=True)
class PoincareEntropyTerms:
    """Coefficient series of ``1``, ``log t`` and ``log z`` (all over Q[z])."""

    one: TruncatedSeries
    log_t: TruncatedSeries
    log_z: TruncatedSeries = field(default=None)

    def to_json(self) -> dict:
        return {
            "one": self.one.to_json()["coeffs"],
            "log_t": self.log_t.to_json()["coeffs"],
            "log_z": self.log_z.to_json()["coeffs"],
        }


def poincare_entropy_terms(X: KClass, trunc: int = DEFAULT_TRUNC) -> PoincareEntropyTerms:
    """Expand ``sum_j (-1)^j b_j tau(z^j) (S(z^j t, 1 - z^j t) + z^j t log z^j)``.

    ``b_j`` is the ``z^j`` coefficient of the Poincare measure of X.  Each
    binary entropy is expanded with ``log(z^j t) = j log z + log t``; the
    log z contributions are kept separate instead of being cancelled by hand.
    """
    b = Poincare().evaluate(X)
    zero = TruncatedSeries.zero(trunc, RING_QZ)
    one_part, logt_part, logz_part = zero, zero, zero
    for j, bj in enumerate(b.coeffs):
        if not bj:
            continue
        a = Poly.z(j)
        w = bj * (-1) ** j
        tau = teichmuller(a, trunc, RING_QZ).series
        u = TruncatedSeries.from_coeffs([0, a], trunc, RING_QZ)  # u = z^j t
        one_minus_u = TruncatedSeries.binomial(a, trunc, RING_QZ)
        # S(u, 1-u) = -u log t - j u log z - (1-u) log(1-u)
        s_one = -(one_minus_u * one_minus_u.log())
        s_logt = -u
        s_logz = -(u * j)
        shift_logz = u * j  # z^j t log(z^j)
        one_part = one_part + (tau * s_one) * w
        logt_part = logt_part + (tau * s_logt) * w
        logz_part = logz_part + (tau * (s_logz + shift_logz)) * w
    return PoincareEntropyTerms(one_part, logt_part, logz_part)


__all__ = [
    "Affine",
    "Betti",
    "EulerChar",
    "FqAtom",
    "KClass",
    "Measure",
    "PoincareEntropyTerms",
    "PointCount",
    "Poincare",
    "Projective",
    "kapranov_zeta",
    "measure_eval",
    "measure_from_name",
    "motivic_entropy",
    "mutual_information",
    "parse_class",
    "poincare_entropy_terms",
]
