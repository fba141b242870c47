"""Exact scalar arithmetic: cyclotomic-rational complex numbers and real
quadratic extensions of the rationals.

`Cyc` elements live in Q(zeta_n) for some order n; mixed-order arithmetic
promotes both operands to the lcm order.  `Quad` elements are a + b*sqrt(d)
with a, b, d rational.  Both are immutable, hashable, and support exact
zero tests, which is what makes isomorphism checks downstream decidable.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["Cyc", "Quad", "as_fraction"]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**15)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


# -- polynomial helpers over Fraction, dense ascending coefficient lists --

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    # q must be monic
    p = list(p)
    n, m = len(p), len(q)
    if n < m:
        return [], _poly_trim(p)
    quot = [Fraction(0)] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = p[k + m - 1]
        if c:
            quot[k] = c
            for j in range(m):
                p[k + j] -= c * q[j]
    return _poly_trim(quot), _poly_trim(p)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients of the n-th cyclotomic polynomial, ascending, monic."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    # (x^n - 1) / prod_{d | n, d < n} Phi_d
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod(p, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(p)


def _phi_degree(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class Cyc:
    """An element of the cyclotomic field Q(zeta_n), n stored per value."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs):
        d = _phi_degree(n)
        c = list(coeffs[:])
        if len(c) > d:
            _, c = _poly_divmod(c, list(cyclotomic_poly(n)))
        c += [Fraction(0)] * (d - len(c))
        self.n = n
        self.c = tuple(c[:d])
        self._hash = None

    # -- constructors --

    @staticmethod
    def rational(x) -> "Cyc":
        return Cyc(1, [as_fraction(x)])

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyc":
        k %= n
        coeffs = [Fraction(0)] * k + [Fraction(1)]
        return Cyc(n, coeffs)._canonical()

    @staticmethod
    def gauss(re, im=0) -> "Cyc":
        out = Cyc.rational(re)
        im = as_fraction(im)
        if im:
            out = out + Cyc.zeta(4) * Cyc.rational(im)
        return out

    @staticmethod
    def i() -> "Cyc":
        return Cyc.zeta(4)

    def _canonical(self) -> "Cyc":
        # drop to order 1 when the element is rational
        if self.n != 1 and all(a == 0 for a in self.c[1:]):
            return Cyc(1, [self.c[0]])
        return self

    @staticmethod
    def _promote(x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction, str)):
            return Cyc.rational(x)
        if isinstance(x, complex):
            raise TypeError("inexact complex cannot promote to Cyc")
        raise TypeError(f"cannot promote {x!r} to Cyc")

    def _embed(self, n: int) -> "Cyc":
        if self.n == n:
            return self
        step = n // self.n
        out = [Fraction(0)] * ((len(self.c) - 1) * step + 1 or 1)
        for j, a in enumerate(self.c):
            if a:
                out[j * step] += a
        return Cyc(n, out)

    @staticmethod
    def _common(a: "Cyc", b: "Cyc"):
        n = math.lcm(a.n, b.n)
        return a._embed(n), b._embed(n), n

    # -- ring ops --

    def __add__(self, other):
        other = Cyc._promote(other)
        a, b, n = Cyc._common(self, other)
        return Cyc(n, [x + y for x, y in zip(a.c, b.c)])._canonical()

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, [-x for x in self.c])

    def __sub__(self, other):
        return self + (-Cyc._promote(other))

    def __rsub__(self, other):
        return Cyc._promote(other) - self

    def __mul__(self, other):
        other = Cyc._promote(other)
        a, b, n = Cyc._common(self, other)
        return Cyc(n, _poly_mul(list(a.c), list(b.c)))._canonical()

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        # extended euclid against Phi_n, tracking the self-cofactor only
        phi = list(cyclotomic_poly(self.n))
        r0, r1 = phi, _poly_trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            lead = r1[-1]
            monic = [x / lead for x in r1]
            q, r2 = _poly_divmod(r0, monic)
            q = [x / lead for x in q]
            qs1 = _poly_mul(q, s1)
            s2 = _poly_trim([a - b for a, b in _zip_pad(s0, qs1)])
            r0, r1 = r1, r2
            s0, s1 = s1, s2
            if not r1:
                raise ZeroDivisionError("not invertible mod cyclotomic")
        const = r1[0]
        inv = [x / const for x in s1]
        return Cyc(self.n, inv)._canonical()

    def __truediv__(self, other):
        other = Cyc._promote(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc._promote(other) / self

    def conj(self) -> "Cyc":
        """Complex conjugate: zeta -> zeta^{-1}."""
        n = self.n
        out = Cyc(1, [self.c[0]])
        for j, a in enumerate(self.c):
            if j and a:
                out = out + Cyc.zeta(n, n - j) * Cyc.rational(a)
        return out._canonical()

    # -- predicates --

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def is_rational(self) -> bool:
        return self.n == 1 or all(a == 0 for a in self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def is_real(self) -> bool:
        return (self - self.conj()).is_zero()

    def __eq__(self, other):
        try:
            other = Cyc._promote(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            canon = self._canonical()
            if canon is not self:
                self._hash = hash(canon)
            else:
                self._hash = hash((self.n, self.c))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(a) * z**j for j, a in enumerate(self.c) if a) or 0j

    def __repr__(self):
        if self.is_rational():
            return f"Cyc({self.c[0]})"
        terms = [f"{a}*z{self.n}^{j}" for j, a in enumerate(self.c) if a]
        return "Cyc(" + " + ".join(terms) + ")"


def _zip_pad(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    return zip(p, q)


class Quad:
    """a + b*sqrt(d) with rational a, b and a fixed rational radicand d >= 0.

    Elements with b == 0 interoperate with any radicand; mixing two distinct
    nonzero radicands raises.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.d = as_fraction(d)
        if self.b == 0:
            self.d = Fraction(0)
        if self.d == 0 and self.b != 0:
            raise ValueError("sqrt(0) term with nonzero coefficient")

    @staticmethod
    def sqrt(d) -> "Quad":
        d = as_fraction(d)
        if d < 0:
            raise ValueError("Quad handles real radicands only")
        root = _exact_sqrt(d)
        if root is not None:
            return Quad(root)
        return Quad(0, 1, d)

    @staticmethod
    def _promote(x) -> "Quad":
        if isinstance(x, Quad):
            return x
        return Quad(as_fraction(x))

    def _join(self, other: "Quad") -> Fraction:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"mixed radicands {self.d} and {other.d}")
        return self.d or other.d

    def __add__(self, other):
        other = Quad._promote(other)
        d = self._join(other)
        return Quad(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-Quad._promote(other))

    def __rsub__(self, other):
        return Quad._promote(other) - self

    def __mul__(self, other):
        other = Quad._promote(other)
        d = self._join(other)
        return Quad(self.a * other.a + self.b * other.b * d,
                    self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "Quad":
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero")
            # a^2 = b^2 d with d a perfect square would have been collapsed
            raise ZeroDivisionError("norm zero element")
        return Quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * Quad._promote(other).inverse()

    def __rtruediv__(self, other):
        return Quad._promote(other) / self

    def conj(self) -> "Quad":
        return self  # real

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __eq__(self, other):
        try:
            other = Quad._promote(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == other.a and self.b == other.b and \
            (self.b == 0 or self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __lt__(self, other):
        return float(self) < float(Quad._promote(other))

    def __gt__(self, other):
        return float(self) > float(Quad._promote(other))

    def __repr__(self):
        if self.b == 0:
            return f"Quad({self.a})"
        return f"Quad({self.a} + {self.b}*sqrt({self.d}))"


def _exact_sqrt(d: Fraction):
    """sqrt(d) as a Fraction if d is a perfect rational square, else None."""
    if d < 0:
        return None
    pn = math.isqrt(d.numerator)
    pd = math.isqrt(d.denominator)
    if pn * pn == d.numerator and pd * pd == d.denominator:
        return Fraction(pn, pd)
    return None
