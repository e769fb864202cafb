"""Exact scalars: Q(sqrt2), Q(w) with w^4 = -1, and quaternions over Q(sqrt2).

Every value is stored as a flat tuple of rationals.  Rationals are plain
``int`` whenever the denominator is 1 and ``gmpy2.mpq`` otherwise; this keeps
the integer-valued constructions (which are the vast majority) on the fast
path of Python's int arithmetic, and the rest an order of magnitude faster
than ``fractions.Fraction``.

* ``RealQuad``     a + b*sqrt2                     -> (a, b)
* ``Cyclo8``       c0 + c1*w + c2*w^2 + c3*w^3     -> (c0, c1, c2, c3)
* ``QuaternionQ2`` w + x*i + y*j + z*k, w..z in Q(sqrt2)
                   -> (w_a, w_b, x_a, x_b, y_a, y_b, z_a, z_b)
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

Rational = Union[int, mpq]
_MPQ = type(mpq(1, 2))
RATIONAL_TYPES = (int, Fraction, _MPQ)

KINDS = ("R", "C", "H")


class KindMismatch(TypeError):
    """Operands live in different coefficient rings."""


def qnorm(x) -> Rational:
    """Collapse an mpq with denominator 1 to int."""
    if type(x) is _MPQ:
        return int(x) if x.denominator == 1 else x
    if type(x) is Fraction:
        return qnorm(mpq(x))
    return x


def qdiv(a: Rational, b: Rational) -> Rational:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return qnorm(mpq(a, b))
    return qnorm(mpq(a) / b)


# ---------------------------------------------------------------------------
# raw kernels on Q(sqrt2) pairs

def rq_mul(x, y):
    a, b = x
    c, d = y
    return (qnorm(a * c + 2 * b * d), qnorm(a * d + b * c))


def rq_add(x, y):
    return (qnorm(x[0] + y[0]), qnorm(x[1] + y[1]))


def rq_sub(x, y):
    return (qnorm(x[0] - y[0]), qnorm(x[1] - y[1]))


def rq_neg(x):
    return (-x[0], -x[1])


def rq_inv(x):
    a, b = x
    n = a * a - 2 * b * b
    if n == 0:
        raise ZeroDivisionError("inverse of zero in Q(sqrt2)")
    return (qdiv(a, n), qdiv(-b, n))


def rq_sign(x) -> int:
    a, b = x
    if a == 0 and b == 0:
        raise ZeroDivisionError("sign of zero")
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: the term with the larger square wins
    if a * a > 2 * b * b:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


def rq_sqrt(x):
    """Exact square root in Q(sqrt2) when it exists (and x >= 0), else None."""
    a, b = x
    if a == 0 and b == 0:
        return (0, 0)
    if rq_sign(x) < 0:
        return None
    if b == 0:
        r = _rat_sqrt(a)
        if r is not None:
            return (r, 0)
        # sqrt(a) = s*sqrt2 requires a/2 to be a square
        s = _rat_sqrt(qdiv(a, 2))
        return None if s is None else (0, s)
    # (p + q sqrt2)^2 = p^2 + 2q^2 + 2pq sqrt2: p^2 solves t^2 - a t + b^2/2 = 0
    disc = _rat_sqrt(qnorm(a * a - 2 * b * b))
    if disc is None:
        return None
    for p2 in (qdiv(a + disc, 2), qdiv(a - disc, 2)):
        p = _rat_sqrt(p2)
        if p is None or p == 0:
            continue
        q = qdiv(b, 2 * p)
        cand = (p, q)
        if rq_mul(cand, cand) == (qnorm(a), qnorm(b)):
            return cand if rq_sign(cand) > 0 else rq_neg(cand)
    return None


def _rat_sqrt(q):
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return qnorm(mpq(rn, rd))
    return None


# ---------------------------------------------------------------------------
# raw kernels on Cyclo8 4-tuples

def c8_mul(x, y):
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        qnorm(x0 * y0 - x1 * y3 - x2 * y2 - x3 * y1),
        qnorm(x0 * y1 + x1 * y0 - x2 * y3 - x3 * y2),
        qnorm(x0 * y2 + x1 * y1 + x2 * y0 - x3 * y3),
        qnorm(x0 * y3 + x1 * y2 + x2 * y1 + x3 * y0),
    )


def c8_conj(x):
    # w -> w^7 = -w^3, w^2 -> -w^2, w^3 -> w^5 = -w
    c0, c1, c2, c3 = x
    return (c0, -c3, -c2, -c1)


def c8_re_im(x):
    """Real and imaginary parts as Q(sqrt2) pairs (w = (1+i)/sqrt2)."""
    c0, c1, c2, c3 = x
    return (c0, qdiv(c1 - c3, 2)), (c2, qdiv(c1 + c3, 2))


def c8_from_re_im(re_, im):
    p, q = re_
    r, s = im
    return (qnorm(p), qnorm(q + s), qnorm(r), qnorm(s - q))


def c8_inv(x):
    if not any(x):
        raise ZeroDivisionError("inverse of zero in Q(w)")
    nrm = c8_mul(x, c8_conj(x))
    re_, _ = c8_re_im(nrm)
    inv_n = rq_inv(re_)
    return c8_mul(c8_conj(x), c8_from_re_im(inv_n, (0, 0)))


# ---------------------------------------------------------------------------
# raw kernels on quaternion 8-tuples

def h_mul(p, q):
    w1, x1, y1, z1 = p[0:2], p[2:4], p[4:6], p[6:8]
    w2, x2, y2, z2 = q[0:2], q[2:4], q[4:6], q[6:8]

    def m(u, v):
        a, b = u
        c, d = v
        return (a * c + 2 * b * d, a * d + b * c)

    t = [m(w1, w2), m(x1, x2), m(y1, y2), m(z1, z2)]
    w = (t[0][0] - t[1][0] - t[2][0] - t[3][0], t[0][1] - t[1][1] - t[2][1] - t[3][1])
    t = [m(w1, x2), m(x1, w2), m(y1, z2), m(z1, y2)]
    x = (t[0][0] + t[1][0] + t[2][0] - t[3][0], t[0][1] + t[1][1] + t[2][1] - t[3][1])
    t = [m(w1, y2), m(x1, z2), m(y1, w2), m(z1, x2)]
    y = (t[0][0] - t[1][0] + t[2][0] + t[3][0], t[0][1] - t[1][1] + t[2][1] + t[3][1])
    t = [m(w1, z2), m(x1, y2), m(y1, x2), m(z1, w2)]
    z = (t[0][0] + t[1][0] - t[2][0] + t[3][0], t[0][1] + t[1][1] - t[2][1] + t[3][1])
    return tuple(qnorm(v) for v in (*w, *x, *y, *z))


def h_conj(p):
    return (p[0], p[1], -p[2], -p[3], -p[4], -p[5], -p[6], -p[7])


def h_norm(p):
    n = (0, 0)
    for s in range(0, 8, 2):
        n = rq_add(n, rq_mul(p[s:s + 2], p[s:s + 2]))
    return n


def h_inv(p):
    n = h_norm(p)
    if n == (0, 0):
        raise ZeroDivisionError("inverse of zero quaternion")
    ni = rq_inv(n)
    c = h_conj(p)
    out = []
    for s in range(0, 8, 2):
        out.extend(rq_mul(c[s:s + 2], ni))
    return tuple(out)


def h_scale(p, r):
    """Multiply a quaternion by a Q(sqrt2) pair (central)."""
    out = []
    for s in range(0, 8, 2):
        out.extend(rq_mul(p[s:s + 2], r))
    return tuple(out)


# ---------------------------------------------------------------------------
# per-kind dispatch tables used by the matrix layer

_WIDTH = {"R": 2, "C": 4, "H": 8}
_MUL = {"R": rq_mul, "C": c8_mul, "H": h_mul}
_INV = {"R": rq_inv, "C": c8_inv, "H": h_inv}


def raw_zero(kind):
    return (0,) * _WIDTH[kind]


def raw_one(kind):
    return (1,) + (0,) * (_WIDTH[kind] - 1)


def raw_add(x, y):
    return tuple(qnorm(a + b) for a, b in zip(x, y))


def raw_sub(x, y):
    return tuple(qnorm(a - b) for a, b in zip(x, y))


def raw_neg(x):
    return tuple(-a for a in x)


def raw_mul(kind, x, y):
    return _MUL[kind](x, y)


def raw_inv(kind, x):
    return _INV[kind](x)


def raw_real_scale(kind, x, r):
    """Multiply a raw scalar of ``kind`` by the real number r (a Q(sqrt2) pair)."""
    if kind == "R":
        return rq_mul(x, r)
    if kind == "H":
        return h_scale(x, r)
    return c8_mul(x, c8_from_re_im(r, (0, 0)))


def raw_real_coords(kind, x):
    """Coordinates over R, each a Q(sqrt2) pair: 1, 2 or 4 of them."""
    if kind == "R":
        return (x,)
    if kind == "C":
        return c8_re_im(x)
    return (x[0:2], x[2:4], x[4:6], x[6:8])


def raw_from_real_coords(kind, coords):
    if kind == "R":
        return tuple(coords[0])
    if kind == "C":
        return c8_from_re_im(coords[0], coords[1])
    return tuple(v for c in coords for v in c)


REAL_DIM = {"R": 1, "C": 2, "H": 4}


# ---------------------------------------------------------------------------
# public value classes

class _Exact:
    __slots__ = ("_c",)
    kind = ""

    def __init__(self, *coeffs):
        width = _WIDTH[self.kind]
        if len(coeffs) != width:
            raise ValueError(f"{type(self).__name__} takes {width} rational coefficients")
        self._c = tuple(qnorm(mpq(c)) if not isinstance(c, int) else c for c in coeffs)

    @classmethod
    def _raw(cls, c):
        obj = object.__new__(cls)
        obj._c = c
        return obj

    @classmethod
    def from_rational(cls, q):
        return cls._raw((qnorm(mpq(q)),) + (0,) * (_WIDTH[cls.kind] - 1))

    @property
    def coeffs(self):
        return self._c

    def _coerce(self, other):
        if isinstance(other, _Exact):
            if other.kind != self.kind:
                raise KindMismatch(f"cannot combine {self.kind} with {other.kind}")
            return other._c
        if isinstance(other, RATIONAL_TYPES):
            return (qnorm(other),) + (0,) * (_WIDTH[self.kind] - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_add(self._c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_sub(self._c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_sub(o, self._c))

    def __neg__(self):
        return self._raw(raw_neg(self._c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_mul(self.kind, self._c, o))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_mul(self.kind, o, self._c))

    def inverse(self):
        return self._raw(raw_inv(self.kind, self._c))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._raw(raw_mul(self.kind, self._c, raw_inv(self.kind, o)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = raw_one(self.kind)
        for _ in range(e):
            out = raw_mul(self.kind, out, self._c)
        return self._raw(out)

    def is_zero(self) -> bool:
        return not any(self._c)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, _Exact):
            return self.kind == other.kind and self._c == other._c
        if isinstance(other, RATIONAL_TYPES):
            return self._c == (qnorm(other),) + (0,) * (len(self._c) - 1)
        return NotImplemented

    def __hash__(self):
        if not any(self._c[1:]):
            return hash(self._c[0])
        return hash((self.kind, self._c))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(str(c) for c in self._c)})"

    def __str__(self):
        return scalar_format(self)


class RealQuad(_Exact):
    """a + b*sqrt2 with a, b rational."""

    __slots__ = ()
    kind = "R"

    @property
    def a(self):
        return self._c[0]

    @property
    def b(self):
        return self._c[1]

    def sign(self) -> int:
        return rq_sign(self._c)

    def sqrt(self):
        r = rq_sqrt(self._c)
        return None if r is None else RealQuad._raw(r)


class Cyclo8(_Exact):
    """c0 + c1*w + c2*w^2 + c3*w^3 with w = exp(i*pi/4)."""

    __slots__ = ()
    kind = "C"

    def conjugate(self):
        return Cyclo8._raw(c8_conj(self._c))

    def real_imag(self):
        re_, im = c8_re_im(self._c)
        return RealQuad._raw(re_), RealQuad._raw(im)


class QuaternionQ2(_Exact):
    """w + x*i + y*j + z*k with coordinates in Q(sqrt2)."""

    __slots__ = ()
    kind = "H"

    def __init__(self, w=0, x=0, y=0, z=0):
        parts = []
        for v in (w, x, y, z):
            if isinstance(v, RealQuad):
                parts.extend(v.coeffs)
            else:
                parts.extend((qnorm(mpq(v)), 0))
        self._c = tuple(parts)

    @classmethod
    def from_rational(cls, q):
        return cls(q)

    @property
    def w(self):
        return RealQuad._raw(self._c[0:2])

    @property
    def x(self):
        return RealQuad._raw(self._c[2:4])

    @property
    def y(self):
        return RealQuad._raw(self._c[4:6])

    @property
    def z(self):
        return RealQuad._raw(self._c[6:8])

    def conjugate(self):
        return QuaternionQ2._raw(h_conj(self._c))

    def norm(self) -> RealQuad:
        return RealQuad._raw(h_norm(self._c))


ExactScalar = Union[RealQuad, Cyclo8, QuaternionQ2]
CLASS_OF = {"R": RealQuad, "C": Cyclo8, "H": QuaternionQ2}

SQRT2 = RealQuad(0, 1)
OMEGA = Cyclo8(0, 1, 0, 0)
QI = QuaternionQ2(0, 1, 0, 0)
QJ = QuaternionQ2(0, 0, 1, 0)
QK = QuaternionQ2(0, 0, 0, 1)


def scalar_invert(x: ExactScalar) -> ExactScalar:
    return x.inverse()


def scalar_sign(x: RealQuad) -> int:
    if not isinstance(x, RealQuad):
        raise KindMismatch("sign is defined for real scalars only")
    return x.sign()


def scalar_conjugate(x):
    if isinstance(x, RealQuad):
        raise KindMismatch("conjugation needs a complex or quaternion scalar")
    return x.conjugate()


# ---------------------------------------------------------------------------
# text form

SYMBOLS = {
    "R": {"r2": (0, 1)},
    "C": {"w": (0, 1, 0, 0), "w2": (0, 0, 1, 0), "w3": (0, 0, 0, 1)},
    "H": {
        "r2": (0, 1, 0, 0, 0, 0, 0, 0),
        "i": (0, 0, 1, 0, 0, 0, 0, 0),
        "j": (0, 0, 0, 0, 1, 0, 0, 0),
        "k": (0, 0, 0, 0, 0, 0, 1, 0),
    },
}


class ScalarParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"(\d+)|([a-z][a-z0-9]*)|(\S)")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m.group(1):
            toks.append(("int", int(m.group(1)), pos))
        elif m.group(2):
            toks.append(("sym", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*/()":
                raise ScalarParseError(f"unexpected character {ch!r}", pos)
            toks.append((ch, ch, pos))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text, kind):
        self.toks = _tokenize(text)
        self.i = 0
        self.kind = kind

    def peek(self):
        return self.toks[self.i]

    def take(self, typ=None):
        tok = self.toks[self.i]
        if typ is not None and tok[0] != typ:
            raise ScalarParseError(f"expected {typ!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self, kind, nested=False):
        total = raw_zero(kind)
        first = True
        while True:
            tok = self.peek()
            sign = 1
            if tok[0] in "+-":
                sign = -1 if tok[0] == "-" else 1
                self.take()
            elif not first:
                break
            val = self.term(kind)
            total = raw_add(total, val if sign > 0 else raw_neg(val))
            first = False
            if self.peek()[0] not in "+-":
                break
        end = self.peek()
        if nested and end[0] != ")":
            raise ScalarParseError(f"expected ')', found {end[1]!r}", end[2])
        if not nested and end[0] != "end":
            raise ScalarParseError(f"unexpected {end[1]!r}", end[2])
        return total

    def symbol(self, kind):
        tok = self.take("sym")
        table = SYMBOLS[kind]
        if tok[1] not in table:
            raise ScalarParseError(f"symbol {tok[1]!r} not valid for kind {kind}", tok[2])
        return table[tok[1]]

    def term(self, kind):
        tok = self.peek()
        if tok[0] == "sym":
            return self.symbol(kind)
        if tok[0] == "(":
            if kind != "H":
                raise ScalarParseError("parenthesized coefficients are only allowed for kind H", tok[2])
            self.take()
            inner = self.expr("R", nested=True)
            self.take(")")
            coef = raw_from_real_coords("H", (inner, (0, 0), (0, 0), (0, 0)))
        elif tok[0] == "int":
            num = self.take()[1]
            q = num
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ScalarParseError("zero denominator", den[2])
                q = qdiv(num, den[1])
            coef = (q,) + (0,) * (_WIDTH[kind] - 1)
        else:
            raise ScalarParseError(f"unexpected {tok[1]!r}", tok[2])
        if self.peek()[0] == "*":
            self.take()
            return raw_mul(kind, coef, self.symbol(kind))
        return coef


def scalar_parse(text: str, kind: str | None = None) -> ExactScalar:
    """Parse a scalar literal.  Without ``kind`` it is inferred from the symbols used."""
    if kind is None:
        syms = {t[1] for t in _tokenize(text) if t[0] == "sym"}
        if "(" in text or syms & {"i", "j", "k"}:
            kind = "H"
        elif syms & {"w", "w2", "w3"}:
            kind = "C"
        else:
            kind = "R"
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    raw = _Parser(text, kind).expr(kind)
    return CLASS_OF[kind]._raw(raw)


def _fmt_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _join(terms):
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def _term(coef, sym):
    if sym is None:
        return _fmt_rat(coef)
    if coef == 1:
        return sym
    if coef == -1:
        return "-" + sym
    return f"{_fmt_rat(coef)}*{sym}"


def _rq_terms(pair):
    a, b = pair
    terms = []
    if a != 0:
        terms.append(_term(a, None))
    if b != 0:
        terms.append(_term(b, "r2"))
    return terms


def format_raw(kind: str, c) -> str:
    if kind == "R":
        return _join(_rq_terms(c))
    if kind == "C":
        terms = []
        for coef, sym in zip(c, (None, "w", "w2", "w3")):
            if coef != 0:
                terms.append(_term(coef, sym))
        return _join(terms)
    terms = _rq_terms(c[0:2])
    for s, sym in zip((2, 4, 6), ("i", "j", "k")):
        a, b = c[s], c[s + 1]
        if b != 0:
            terms.append(f"({_join(_rq_terms((a, b)))})*{sym}")
        elif a != 0:
            terms.append(_term(a, sym))
    return _join(terms)


def scalar_format(x: ExactScalar) -> str:
    return format_raw(x.kind, x.coeffs)
