"""Exact arithmetic substrate: rationals, quadratic numbers, l-adic rationals.

Sign decisions are exact everywhere; floats appear only in cross-checks and
rendering.  Rationals are ``fractions.Fraction``; ``Quad`` models a + b*sqrt(d)
for a fixed square-free d (default 2); ``LAdic`` models m / l**k.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


def sign_of(x) -> int:
    """Three-valued sign of an int or Fraction."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


def format_rational(q: RationalLike) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


class Quad:
    """Exact real number a + b*sqrt(d) with decidable sign.

    One d per computation context; mixing different radicals raises unless one
    operand is rational (b == 0).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 2):
        if d != 2 and not is_square_free(d):
            raise ValueError(f"d must be square-free, got {d}")
        if d < 2:
            raise ValueError(f"d must be >= 2, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("Quad is immutable")

    @classmethod
    def of(cls, x, d: int = 2) -> "Quad":
        if isinstance(x, Quad):
            return x
        return cls(Fraction(x), 0, d)

    def _coerce(self, other) -> "Quad":
        if isinstance(other, Quad):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError(f"mixed radicals sqrt({self.d}) and sqrt({other.d})")
            d = self.d if self.b != 0 or other.b == 0 else other.d
            return Quad(other.a, other.b, d) if other.d != d else other
        if isinstance(other, (int, Fraction)):
            return Quad(other, 0, self.d)
        return NotImplemented

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        sa, sb = sign_of(self.a), sign_of(self.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # Opposite signs: compare a^2 against d*b^2 by exact integer arithmetic.
        c = sign_of(self.a * self.a - self.b * self.b * self.d)
        if c == 0:
            raise ArithmeticError("sqrt(d) rational; d not square-free")
        return sa if c > 0 else sb

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.d if self.b != 0 else o.d
        return Quad(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.d if self.b != 0 else o.d
        return Quad(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "Quad":
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("inverse of zero Quad")
        return Quad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Quad.of(other, self.d) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Quad)):
            o = self._coerce(other)
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 0))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"Quad({self.a!r}, {self.b!r}, d={self.d})"

    def __str__(self):
        return format_quad(self)


SQRT2 = Quad(0, 1, 2)


def quad_sign(q: Quad) -> int:
    """Exact sign of a + b*sqrt(d)."""
    return q.sign()


def format_quad(q: Quad) -> str:
    return f"{format_rational(q.a)}+{format_rational(q.b)}*sqrt({q.d})"


_QUAD_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)\s*\+\s*(?P<b>[+-]?\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)


def parse_quad(s: str, d: int = 2) -> Quad:
    """Parse "a+b*sqrt(d)", a bare rational, or the shorthand "sqrt2"."""
    s = s.strip()
    if s in ("sqrt2", "sqrt(2)"):
        return SQRT2
    m = _QUAD_RE.match(s)
    if m:
        return Quad(Fraction(m.group("a")), Fraction(m.group("b")), int(m.group("d")))
    return Quad(Fraction(s), 0, d)


class LAdic:
    """Canonical m / base**k with base >= 2, k >= 0.

    Canonical form: k == 0, or base does not divide m; zero is (0, 0).
    """

    __slots__ = ("m", "k", "base")

    def __init__(self, m: int, k: int = 0, base: int = 3):
        if base < 2:
            raise ValueError(f"base must be >= 2, got {base}")
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        m = int(m)
        k = int(k)
        if m == 0:
            k = 0
        else:
            while k > 0 and m % base == 0:
                m //= base
                k -= 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "base", base)

    def __setattr__(self, *args):
        raise AttributeError("LAdic is immutable")

    def _check(self, other: "LAdic"):
        if self.base != other.base:
            raise ValueError(f"base mismatch: {self.base} vs {other.base}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LAdic(other, 0, self.base)
        if not isinstance(other, LAdic):
            return NotImplemented
        self._check(other)
        m = self.m * self.base ** other.k + other.m * self.base ** self.k
        return LAdic(m, self.k + other.k, self.base)

    __radd__ = __add__

    def __neg__(self):
        return LAdic(-self.m, self.k, self.base)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LAdic(other, 0, self.base)
        return self + (-other)

    def scale_base_pow(self, n: int) -> "LAdic":
        """Multiply by base**n (n may be negative)."""
        if n >= 0:
            return LAdic(self.m * self.base ** n, self.k, self.base)
        return LAdic(self.m, self.k - n, self.base)

    def __mul__(self, other):
        if isinstance(other, int):
            return LAdic(self.m * other, self.k, self.base)
        if isinstance(other, LAdic):
            self._check(other)
            return LAdic(self.m * other.m, self.k + other.k, self.base)
        return NotImplemented

    __rmul__ = __mul__

    def to_fraction(self) -> Fraction:
        return Fraction(self.m, self.base ** self.k)

    @property
    def is_zero(self) -> bool:
        return self.m == 0

    def sign(self) -> int:
        return sign_of(self.m)

    def parity(self) -> int:
        """Parity (0 even, 1 odd) of the canonical numerator; base must be odd."""
        if self.base % 2 == 0:
            raise ValueError(f"parity undefined for even base {self.base}")
        return self.m & 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = LAdic(other, 0, self.base)
        if not isinstance(other, LAdic):
            return NotImplemented
        return self.base == other.base and self.m == other.m and self.k == other.k

    def __hash__(self):
        return hash((self.m, self.k, self.base))

    def __lt__(self, other):
        if isinstance(other, int):
            other = LAdic(other, 0, self.base)
        self._check(other)
        return self.m * other.base ** other.k < other.m * self.base ** self.k

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __repr__(self):
        return f"LAdic({self.m}, {self.k}, base={self.base})"

    def __str__(self):
        return format_ladic(self)


def ladic_normalize(m: int, k: int, base: int) -> LAdic:
    """Canonical form of m / base**k; rejects k < 0 or base < 2."""
    return LAdic(m, k, base)


def ladic_parity(x: LAdic) -> int:
    """Parity bit of the canonical numerator for odd base."""
    return x.parity()


def format_ladic(x: LAdic) -> str:
    return f"{x.m}/{x.base}^{x.k}"


_LADIC_RE = re.compile(r"^\s*(?P<m>[+-]?\d+)\s*(?:/\s*(?P<base>\d+)\s*\^\s*(?P<k>\d+))?\s*$")


def parse_ladic(s: str, base: int = 3) -> LAdic:
    m = _LADIC_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse l-adic {s!r}")
    if m.group("base") is not None:
        b = int(m.group("base"))
        if b != base:
            raise ValueError(f"expected base {base}, got {b}")
        return LAdic(int(m.group("m")), int(m.group("k")), base)
    return LAdic(int(m.group("m")), 0, base)
