"""B(1, l) = <a, b | b a b^-1 = a^l> as an exact affine action on the line.

Elements are normal forms b^n a^s with s in Z[1/l]; the standard action sends
b^n a^s to x -> l^n (x + s).  Smirnov orderings compare group elements by
their effect on a basepoint eps; rational eps has a Z stabilizer and two
completions, realized here by a one-sided infinitesimal: evaluation points are
pairs (value, drift) ordered lexicographically, where drift tracks the
coefficient of a positive infinitesimal on the chosen side.

The affine closed form makes the crossings' "for all n" condition decidable:
iterates of x -> r x + t converge or diverge monotonically around the fixed
point t / (1 - r), so the module registers an ExactForAll decider.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .core import (Group, NEGATIVE, OrderingOracle, POSITIVE, Sign, ZERO)
from .exact import LAdic, Quad, format_ladic, parse_ladic, sign_of

BSElement = Tuple[int, LAdic]    # normal form b^n a^s

PLUS_SIDE = 1
MINUS_SIDE = -1


def bs_mul(x: BSElement, y: BSElement) -> BSElement:
    """(n1, s1) (n2, s2) = (n1 + n2, s1 * l^(-n2) + s2)."""
    n1, s1 = x
    n2, s2 = y
    if s1.base != s2.base:
        raise ValueError(f"base mismatch: {s1.base} vs {s2.base}")
    return (n1 + n2, s1.scale_base_pow(-n2) + s2)


def bs_inv(x: BSElement) -> BSElement:
    n, s = x
    return (-n, -s.scale_base_pow(n))


def bs_identity(ell: int) -> BSElement:
    return (0, LAdic(0, 0, ell))


def bs_fmt(x: BSElement) -> str:
    return f"({x[0]}, {format_ladic(x[1])})"


def bs_group(ell: int) -> Group:
    if ell < 2:
        raise ValueError("l must be >= 2")
    return Group(
        tag=f"bs:{ell}",
        identity=bs_identity(ell),
        mul=bs_mul,
        inv=bs_inv,
        generators=(("a", (0, LAdic(1, 0, ell))), ("b", (1, LAdic(0, 0, ell)))),
        fmt=bs_fmt,
    )


@dataclass(frozen=True)
class AffineMapExact:
    """x -> slope * x + offset with positive rational slope."""

    slope: Fraction
    offset: Fraction

    def __post_init__(self):
        if self.slope <= 0:
            raise ValueError("slope must be positive")

    def apply(self, x):
        return self.slope * x + self.offset

    def compose(self, other: "AffineMapExact") -> "AffineMapExact":
        return AffineMapExact(self.slope * other.slope,
                              self.slope * other.offset + self.offset)

    def inverse(self) -> "AffineMapExact":
        return AffineMapExact(1 / self.slope, -self.offset / self.slope)


def bs_affine(g: BSElement, ell: int) -> AffineMapExact:
    """The affine map of b^n a^s: x -> l^n (x + s)."""
    n, s = g
    r = Fraction(ell) ** n
    return AffineMapExact(r, r * s.to_fraction())


def bs_apply(g: BSElement, x: Quad, ell: Optional[int] = None) -> Quad:
    """Exact value l^n (x + s)."""
    ell = g[1].base if ell is None else ell
    m = bs_affine(g, ell)
    return x * m.slope + Quad.of(m.offset)


# -- Sided evaluation: pairs (value, drift) ordered lexicographically --------

SidedValue = Tuple[Quad, Quad]


def _lex_sign(p: SidedValue) -> Sign:
    s = p[0].sign()
    return s if s != 0 else p[1].sign()


def _lex_lt(p: SidedValue, q: SidedValue) -> bool:
    return p[0] < q[0] or (p[0] == q[0] and p[1] < q[1])


@dataclass(frozen=True)
class SmirnovParam:
    """Basepoint of the induced ordering; rational eps needs a side."""

    eps: Quad
    side: Optional[int] = None
    ell: int = 3

    def __post_init__(self):
        if self.eps.is_rational and self.side not in (PLUS_SIDE, MINUS_SIDE):
            raise ValueError("rational eps requires a side (the stabilizer is Z)")
        if not self.eps.is_rational and self.side is not None:
            raise ValueError("irrational eps admits no side")

    def basepoint(self) -> SidedValue:
        drift = Quad.of(0) if self.side is None else Quad.of(self.side)
        return (self.eps, drift)

    def descriptor(self) -> str:
        tag = f"smirnov:{self.eps}"
        if self.side == PLUS_SIDE:
            tag += ":plus"
        elif self.side == MINUS_SIDE:
            tag += ":minus"
        return tag


def _eval(g: BSElement, p: SmirnovParam) -> SidedValue:
    m = bs_affine(g, p.ell)
    x0, drift = p.basepoint()
    return (x0 * m.slope + Quad.of(m.offset), drift * m.slope)


def smirnov_sign(p: SmirnovParam, g: BSElement) -> Sign:
    """Sign of phi(g)(eps) - eps; ties on the stabilizer of a rational eps are
    broken by the slope direction (sign of l^n - 1 on the plus side)."""
    val, drift = _eval(g, p)
    x0, d0 = p.basepoint()
    return _lex_sign((val - x0, drift - d0))


# -- The exact "for all n" decider -------------------------------------------

def _forall_pow_lt_real(r: Fraction, d: Quad, w: Quad) -> bool:
    """Whether r^n d < w for every n >= 1 (r positive rational != 1)."""
    if d.sign() == 0:
        return w.sign() > 0
    if r > 1:
        if d.sign() > 0:
            return False
        first = d * r
        return first < w
    if d.sign() > 0:
        first = d * r
        return first < w
    return w.sign() >= 0   # r < 1, d < 0: values rise to 0 but stay below it


def _forall_pow_lt(r: Fraction, delta: SidedValue, w: SidedValue) -> bool:
    """Whether r^n delta < w lexicographically for every n >= 1."""
    d0, d1 = delta
    w0, w1 = w
    if d0.sign() == 0 and d1.sign() == 0:
        return _lex_sign(w) > 0
    if d0.sign() == 0:
        if w0.sign() != 0:
            return w0.sign() > 0
        return _forall_pow_lt_real(r, d1, w1)
    # d0 != 0: the real part r^n d0 is strictly monotone, so it meets w0 at
    # most once; only that index needs the drift tiebreak.
    if r > 1 and d0.sign() > 0:
        return False
    if (r > 1 and d0.sign() < 0) or (r < 1 and d0.sign() > 0):
        first0, first1 = d0 * r, d1 * r
        if first0 < w0:
            return True
        if first0 == w0:
            return first1 < w1
        return False
    # r < 1, d0 < 0: real parts rise to 0 from below, never attained.
    if w0.sign() > 0:
        return True
    if w0.sign() < 0:
        return False
    return True   # all real parts strictly below 0 == w0


def _forall_iter_lt(m: AffineMapExact, x: SidedValue, v: SidedValue) -> bool:
    """Whether m^n(x) < v lexicographically for every n >= 1."""
    r, t = m.slope, Quad.of(m.offset)
    if r == 1:
        ts = t.sign()
        if ts > 0:
            return False
        if ts == 0:
            return _lex_lt(x, v)
        return _lex_lt((x[0] + t, x[1]), v)
    xs = t / (1 - r)   # fixed point, a pure real
    delta = (x[0] - xs, x[1])
    w = (v[0] - xs, v[1])
    return _forall_pow_lt(r, delta, w)


def _neg(p: SidedValue) -> SidedValue:
    return (-p[0], -p[1])


def forall_decider(g: BSElement, u: BSElement, v: BSElement,
                   p: SmirnovParam) -> bool:
    """Exact decision of: for all n >= 1, phi(g^n u)(eps) < phi(v)(eps)."""
    m = bs_affine(g, p.ell)
    return _forall_iter_lt(m, _eval(u, p), _eval(v, p))


def smirnov_oracle(p: SmirnovParam) -> OrderingOracle:
    group = bs_group(p.ell)

    def fcmp(g, u, v, want: Sign) -> Optional[bool]:
        m = bs_affine(g, p.ell)
        if want == NEGATIVE:
            return _forall_iter_lt(m, _eval(u, p), _eval(v, p))
        if want == POSITIVE:
            neg_m = AffineMapExact(m.slope, -m.offset)
            return _forall_iter_lt(neg_m, _neg(_eval(u, p)), _neg(_eval(v, p)))
        return None

    return OrderingOracle(group, p.descriptor(),
                          lambda g: smirnov_sign(p, g),
                          sort_key=lambda g: _eval(g, p),
                          forall_cmp=fcmp)


# -- The four Conradian orderings --------------------------------------------

def _conradian_forall_lt(A: int, B: int, ell: int,
                         g: BSElement, u: BSElement, v: BSElement) -> bool:
    """Whether g^n u < v for all n >= 1 in the lexicographic order with key
    x -> (A * n_x, B * s_x).  Exact: the orbit is affine in each coordinate."""
    ng, sg = g
    nu, su = u
    nv, sv = v
    if A * ng > 0:
        return False                       # first coordinate diverges upward
    gu = bs_mul(g, u)
    if A * ng < 0:
        # First coordinate strictly decreases; only n = 1 can tie or exceed.
        k1, kv = (A * gu[0], B * gu[1].to_fraction()), (A * nv, B * sv.to_fraction())
        return k1 < kv
    # ng == 0: first coordinate constant, second moves by sg * ell^(-nu) per step.
    if A * nu != A * nv:
        return A * nu < A * nv
    step = B * Fraction(sg.to_fraction(), Fraction(ell) ** nu)
    if step > 0:
        return False
    if step == 0:
        return B * su.to_fraction() < B * sv.to_fraction()
    return B * gu[1].to_fraction() < B * sv.to_fraction()


def bs_conradian(which: int, ell: int = 3) -> OrderingOracle:
    """C1: positive iff n >= 1, or n = 0 and s > 0.  C2 likewise with n <= -1.
    C3 and C4 are their reverses."""
    if which not in (1, 2, 3, 4):
        raise ValueError("which must be 1..4")
    group = bs_group(ell)
    eps_n = 1 if which in (1, 3) else -1
    flip = -1 if which in (3, 4) else 1
    A, B = flip * eps_n, flip

    def s(x: BSElement) -> Sign:
        n, t = x
        if n != 0:
            return flip * eps_n * sign_of(n)
        return flip * t.sign()

    def fcmp(g, u, v, want: Sign) -> Optional[bool]:
        if want == NEGATIVE:
            return _conradian_forall_lt(A, B, ell, g, u, v)
        if want == POSITIVE:
            return _conradian_forall_lt(-A, -B, ell, g, u, v)
        return None

    key = lambda x: (A * x[0], B * x[1].to_fraction())
    return OrderingOracle(group, f"bsconrad:{which}", s, sort_key=key,
                          forall_cmp=fcmp)


def eps_threshold(positives: Sequence[BSElement], ell: int = 3) -> Optional[Fraction]:
    """Largest of the bounds -l^n s / (l^n - 1) over the given C1-positive
    elements; every element is eps-positive for all eps beyond it.  None means
    no constraint (all listed elements have n = 0)."""
    c1 = bs_conradian(1, ell)
    bound = None
    for g in positives:
        if c1.sign_fn(g) != POSITIVE:
            raise ValueError(f"{bs_fmt(g)} is not C1-positive")
        n, s = g
        if n == 0:
            continue
        rn = Fraction(ell) ** n
        b = -rn * s.to_fraction() / (rn - 1)
        if bound is None or b > bound:
            bound = b
    return bound


# -- Fitting eps from a sign table -------------------------------------------

@dataclass(frozen=True)
class EpsInterval:
    """Open interval of basepoints consistent with a sign assignment; None
    endpoints mean unbounded.  A sided rational parameter may sit exactly on
    an endpoint (plus side at lo, minus side at hi) once the table includes a
    stabilizer element."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def contains_quad(self, eps: Quad) -> bool:
        if self.lo is not None and not (Quad.of(self.lo) < eps):
            return False
        if self.hi is not None and not (eps < Quad.of(self.hi)):
            return False
        return True

    def contains_param(self, p: "SmirnovParam") -> bool:
        if p.side == PLUS_SIDE and self.lo is not None and Quad.of(self.lo) == p.eps:
            return self.hi is None or p.eps < Quad.of(self.hi)
        if p.side == MINUS_SIDE and self.hi is not None and Quad.of(self.hi) == p.eps:
            return self.lo is None or Quad.of(self.lo) < p.eps
        return self.contains_quad(p.eps)


@dataclass(frozen=True)
class ConradianTag:
    which: int


@dataclass(frozen=True)
class Inconsistent:
    reason: str


def fit_epsilon(signs: Sequence[Tuple[BSElement, Sign]], ell: int = 3):
    """Translate a sign table into constraints on the basepoint eps.

    Each sign of b^n a^s reads (l^n - 1) eps + l^n s  compared with 0.  When
    the table matches one of the four Conradian orderings on its domain the
    result is that tag (a is not cofinal there and no basepoint fits);
    otherwise the exact open interval of consistent eps, or Inconsistent.
    """
    ident = bs_identity(ell)
    for g, s in signs:
        if g == ident and s != ZERO:
            raise ValueError("identity must have sign Zero")
    for which in (1, 2, 3, 4):
        c = bs_conradian(which, ell)
        if all(c.sign_fn(g) == s for g, s in signs):
            return ConradianTag(which)
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for g, want in signs:
        n, s = g
        if n == 0 and s.is_zero:
            continue
        rn = Fraction(ell) ** n
        c = rn - 1
        d = rn * s.to_fraction()
        if want == ZERO:
            return Inconsistent(f"nontrivial element {bs_fmt(g)} marked Zero")
        if c == 0:
            if sign_of(d) != want:
                return Inconsistent(f"translation {bs_fmt(g)} has fixed sign {sign_of(d)}")
            continue
        # want * (c * eps + d) > 0
        root = -d / c
        if (want > 0) == (c > 0):
            if lo is None or root > lo:
                lo = root
        else:
            if hi is None or root < hi:
                hi = root
        if lo is not None and hi is not None and lo >= hi:
            return Inconsistent(f"empty interval at {bs_fmt(g)}")
    return EpsInterval(lo, hi)


# -- Parsing -----------------------------------------------------------------

def parse_bs_element(s: str, ell: int) -> BSElement:
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"cannot parse element {s!r}")
    n_str, s_str = s[1:-1].split(",", 1)
    return (int(n_str), parse_ladic(s_str.strip(), ell))
