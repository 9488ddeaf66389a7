"""Exact arithmetic in cyclotomic fields Q(zeta_L).

A :class:`Scalar` is a polynomial in ``zeta_L`` of degree below ``phi(L)``,
reduced modulo the L-th cyclotomic polynomial.  Scalars with different
conductors are promoted to the lcm conductor on contact.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from gmpy2 import mpq as _Q

MAX_CONDUCTOR = 2520
_RATIONAL = (int, Fraction, type(_Q(0)))


class DivisionByZero(ZeroDivisionError):
    pass


class ConductorTooLarge(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _lcm(a, b):
    return a * b // gcd(a, b)


def _polydivmod(num, den):
    # coefficient lists, lowest degree first; den must be monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    d = len(den) - 1
    for k in range(len(num) - 1, d - 1, -1):
        c = num[k]
        if c:
            q[k - d] = c
            for j in range(d + 1):
                num[k - d + j] -= c * den[j]
    return q, num[:d] if d else []


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _polydivmod(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n):
    # x^k mod Phi_n for k < 2*phi(n) - 1, as coefficient tuples
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for k in range(max(2 * deg - 1, 1)):
        rows.append(tuple(cur))
        # multiply by x
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            for j in range(deg):
                cur[j] -= top * phi[j]
    return rows


def _reduce(poly, n):
    """Reduce an arbitrary-degree coefficient list mod Phi_n (any x^k allowed)."""
    deg = len(cyclotomic_poly(n)) - 1
    out = [_Q(0)] * deg
    table = _power_table(n)
    for k, c in enumerate(poly):
        if not c:
            continue
        k %= n
        if k < len(table):
            row = table[k]
        else:
            row = _reduce_monomial(k, n)
        for j, r in enumerate(row):
            if r:
                out[j] += c * r
    return tuple(out)


@lru_cache(maxsize=None)
def _reduce_monomial(k, n):
    _, rem = _polydivmod([0] * k + [1], cyclotomic_poly(n))
    deg = len(cyclotomic_poly(n)) - 1
    rem = list(rem) + [0] * (deg - len(rem))
    return tuple(rem)


class _QuadraticTable(dict):
    def __missing__(self, n):
        phi = cyclotomic_poly(n)
        if len(phi) != 3:
            raise KeyError(n)
        self[n] = (phi[0], phi[1])
        return self[n]


_QUADRATIC = _QuadraticTable()


def euler_phi(n):
    return len(cyclotomic_poly(n)) - 1


_new = object.__new__


class Scalar:
    """Element of Q(zeta_L) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, coeffs, conductor=1):
        if conductor > MAX_CONDUCTOR:
            raise ConductorTooLarge(conductor)
        coeffs = tuple(_Q(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            coeffs = _reduce(coeffs, conductor)
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, coeffs, conductor):
        obj = _new(cls)
        obj.conductor = conductor
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_poly(cls, poly, conductor):
        """Build ``sum poly[k] * zeta^k`` for any exponents."""
        if conductor > MAX_CONDUCTOR:
            raise ConductorTooLarge(conductor)
        return cls._raw(_reduce([_Q(c) for c in poly], conductor), conductor)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Scalar):
            return value
        if isinstance(value, _RATIONAL):
            return cls._raw((_Q(value),), 1)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    def lift(self, conductor):
        """Same number, viewed in Q(zeta_conductor); conductor must be a multiple."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        if conductor > MAX_CONDUCTOR:
            raise ConductorTooLarge(conductor)
        if len(self.coeffs) == 1:
            return Scalar._raw(self.coeffs + (_Q(0),) * (euler_phi(conductor) - 1), conductor)
        step = conductor // self.conductor
        poly = [_Q(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return Scalar._raw(_reduce(poly, conductor), conductor)

    def _pair(self, other):
        if other.__class__ is Scalar and other.conductor == self.conductor:
            return self, other
        other = Scalar.coerce(other)
        if other.conductor == self.conductor:
            return self, other
        n = _lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Scalar._raw(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.conductor)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(tuple(-x for x in self.coeffs), self.conductor)

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Scalar._raw(tuple(x - y for x, y in zip(a.coeffs, b.coeffs)), a.conductor)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other.__class__ is Scalar and other.conductor == self.conductor:
            a, b = self, other
        elif isinstance(other, _RATIONAL):
            return Scalar._raw(tuple(x * other for x in self.coeffs), self.conductor)
        else:
            try:
                a, b = self._pair(other)
            except TypeError:
                return NotImplemented
        n = a.conductor
        deg = len(a.coeffs)
        if deg == 2:
            # x^2 = -p0 - p1 x modulo Phi_n
            p0, p1 = _QUADRATIC[n]
            (x0, x1), (y0, y1) = a.coeffs, b.coeffs
            t = x1 * y1
            return Scalar._raw((x0 * y0 - p0 * t, x0 * y1 + x1 * y0 - p1 * t), n)
        if deg == 1:
            return Scalar._raw((a.coeffs[0] * b.coeffs[0],), n)
        prod = [_Q(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Scalar._raw(_reduce(prod, n), n)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("division by zero Scalar")
        n = self.conductor
        if len(self.coeffs) == 1:
            return Scalar._raw((1 / self.coeffs[0],), n)
        if len(self.coeffs) == 2:
            # (a + b x)(a - b p1 - b x) = a^2 - a b p1 + b^2 p0 modulo Phi_n
            p0, p1 = _QUADRATIC[n]
            a, b = self.coeffs
            norm = a * a - a * b * p1 + b * b * p0
            return Scalar._raw(((a - b * p1) / norm, -b / norm), n)
        # extended Euclid in Q[x] against Phi_n
        r0 = [_Q(c) for c in cyclotomic_poly(n)]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [_Q(0)], [_Q(1)]
        while len(r1) > 1 or r1[0]:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant
        inv = [c / r0[0] for c in s0]
        return Scalar.from_poly(inv, n)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL):
            if other == 0:
                raise DivisionByZero("division by zero")
            return Scalar._raw(tuple(x / other for x in self.coeffs), self.conductor)
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar._raw((_Q(1),) + (_Q(0),) * (len(self.coeffs) - 1), self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, L={self.conductor})"

    def __str__(self):
        return format_scalar(self)


def _trim(p):
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _pmul(p, q):
    out = [_Q(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _trim(out)


def _psub(p, q):
    n = max(len(p), len(q))
    p = p + [_Q(0)] * (n - len(p))
    q = q + [_Q(0)] * (n - len(q))
    return _trim([x - y for x, y in zip(p, q)])


def _qdivmod(num, den):
    num = list(num)
    den = _trim(list(den))
    lead = den[-1]
    d = len(den) - 1
    if len(num) - 1 < d:
        return [_Q(0)], _trim(num)
    q = [_Q(0)] * (len(num) - d)
    for k in range(len(num) - 1, d - 1, -1):
        c = num[k] / lead
        if c:
            q[k - d] = c
            for j in range(d + 1):
                num[k - d + j] -= c * den[j]
    rem = _trim(num[:d] if d else [_Q(0)])
    return _trim(q), rem


def zero(conductor=1):
    return Scalar._raw((_Q(0),) * euler_phi(conductor), conductor)


def one(conductor=1):
    return Scalar._raw((_Q(1),) + (_Q(0),) * (euler_phi(conductor) - 1), conductor)


@lru_cache(maxsize=None)
def root_of_unity(L, k=1):
    """zeta_L ** k in canonical form."""
    if L < 1:
        raise ValueError("L must be positive")
    return Scalar.from_poly([0] * (k % L) + [1], L)


def scalar_arith(lhs, rhs, op):
    if op == "add":
        return Scalar.coerce(lhs) + rhs
    if op == "sub":
        return Scalar.coerce(lhs) - rhs
    if op == "mul":
        return Scalar.coerce(lhs) * rhs
    if op == "div":
        return Scalar.coerce(lhs) / rhs
    raise ValueError(f"unknown operation {op!r}")


# --- text form -----------------------------------------------------------
# expr := term (('+'|'-') term)* ; term := rational ('*' 'z' ('^' int)?)? | 'z' ('^' int)?

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[-+*/^])|(?P<z>z))")


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_scalar(text, conductor=1):
    """Parse ``text`` in the scalar grammar, with ``z`` standing for zeta_conductor."""
    toks = _tokens(text)
    i = 0
    poly = {}

    def peek():
        return toks[i]

    def expect(kind, value=None):
        nonlocal i
        k, v, p = toks[i]
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}", p)
        i += 1
        return v

    def exponent():
        nonlocal i
        if peek()[:2] == ("op", "^"):
            i += 1
            sign = 1
            if peek()[:2] == ("op", "-"):
                i += 1
                sign = -1
            return sign * int(expect("num"))
        return 1

    sign = 1
    if peek()[:2] == ("op", "-"):
        sign = -1
        i += 1
    elif peek()[:2] == ("op", "+"):
        i += 1
    if peek()[0] == "end":
        raise ParseError("empty expression", peek()[2])
    while True:
        kind, val, pos = peek()
        if kind == "z":
            i += 1
            coeff, k = _Q(1), exponent()
        elif kind == "num":
            i += 1
            coeff = _Q(int(val))
            if peek()[:2] == ("op", "/"):
                i += 1
                den = int(expect("num"))
                if den == 0:
                    raise ParseError("zero denominator", toks[i - 1][2])
                coeff /= den
            k = 0
            if peek()[:2] == ("op", "*"):
                i += 1
                expect("z")
                k = exponent()
        else:
            raise ParseError("expected a term", pos)
        poly[k] = poly.get(k, 0) + sign * coeff
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            i += 1
            continue
        raise ParseError(f"unexpected {val!r}", pos)
    lo = min(poly)
    shift = (-lo // conductor + 1) * conductor if lo < 0 else 0
    dense = [_Q(0)] * (max(poly) + shift + 1)
    for k, c in poly.items():
        dense[k + shift] += c
    return Scalar.from_poly(dense, conductor)


def scalar_parse(text, conductor=1):
    return parse_scalar(text, conductor)


def format_scalar(x):
    x = Scalar.coerce(x)
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            z = "z" if k == 1 else f"z^{k}"
            body = z if mag == 1 else f"{mag}*{z}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out
