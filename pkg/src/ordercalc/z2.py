"""All orderings of Z^2: a functional direction plus a tie rule on its kernel.

The functional (a, b) orders v = (m, n) by the sign of a*m + b*n.  When that
linear form has a nontrivial kernel (rational direction), the partial order is
completed by a side: PlusSide is the limit of functionals (1, x + delta) from
the right for the finite-x normalization, and the stated sign(m) rule for the
(0, 1) normalization.  Irrational parameters live in Q(sqrt(2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple, Union

from .core import Group, OrderingOracle, Sign, ZERO, BallSpec
from .exact import Quad, sign_of

Vec = Tuple[int, int]

PLUS_SIDE = 1
MINUS_SIDE = -1

Z2 = Group(
    tag="z2",
    identity=(0, 0),
    mul=lambda x, y: (x[0] + y[0], x[1] + y[1]),
    inv=lambda x: (-x[0], -x[1]),
    generators=(("e1", (1, 0)), ("e2", (0, 1))),
    fmt=lambda v: f"({v[0]},{v[1]})",
)


@dataclass(frozen=True)
class Z2Ordering:
    """Functional (a, b), not both zero, with an optional tie side.

    tie_rule None on an injective functional means a total ordering; None on a
    rational-direction functional leaves a partial ordering that must be
    completed before use on the kernel.
    """

    a: Quad
    b: Quad
    tie_rule: Optional[int] = None

    def __post_init__(self):
        if self.a.sign() == 0 and self.b.sign() == 0:
            raise ValueError("functional must be nonzero")

    def value(self, v: Vec) -> Quad:
        return self.a * v[0] + self.b * v[1]

    def kernel(self) -> Optional[Vec]:
        """Primitive integer kernel vector (canonical sign), or None when the
        functional is injective on Z^2."""
        # a*m + b*n = 0 with a = a0 + a1*sqrt(d), b = b0 + b1*sqrt(d) forces
        # both rational components to vanish.
        a0, a1, b0, b1 = self.a.a, self.a.b, self.b.a, self.b.b
        det = a0 * b1 - a1 * b0
        if det != 0:
            return None
        # The two component equations are proportional; solve the nonzero one.
        if a0 != 0 or b0 != 0:
            c, d = a0, b0
        else:
            c, d = a1, b1
        # c*m + d*n = 0 -> (m, n) ~ (-d, c), cleared to a primitive int vector.
        dn = (c.denominator * d.denominator)
        m, n = -d.numerator * (dn // d.denominator), c.numerator * (dn // c.denominator)
        g = gcd(abs(m), abs(n))
        m, n = m // g, n // g
        if n < 0 or (n == 0 and m < 0):
            m, n = -m, -n
        return (m, n)

    @property
    def is_partial(self) -> bool:
        return self.tie_rule is None and self.kernel() is not None

    def sign(self, v: Vec) -> Sign:
        return z2_sign(self, v)

    def descriptor(self) -> str:
        if self.a == Quad.of(1):
            base = f"z2:psi:{self.b}"
        elif self.a.sign() == 0 and self.b == Quad.of(1):
            base = "z2:psi:inf"
        else:
            base = f"z2:psi:{self.a}|{self.b}"
        if self.tie_rule == PLUS_SIDE:
            return base + ":plus"
        if self.tie_rule == MINUS_SIDE:
            return base + ":minus"
        return base


def z2_sign(ordering: Z2Ordering, v: Vec) -> Sign:
    """Sign of the functional at v, with the tie rule deciding the kernel."""
    if v == (0, 0):
        return ZERO
    s = ordering.value(v).sign()
    if s != 0:
        return s
    if ordering.tie_rule is None:
        raise ValueError("functional vanishes on a nonzero vector and no tie rule is set")
    # Finite-x normalization breaks ties by n; the (0, 1) normalization by m.
    if ordering.a.sign() != 0:
        return ordering.tie_rule * sign_of(v[1])
    return ordering.tie_rule * sign_of(v[0])


def psi_x(x: Union[int, Fraction, Quad]) -> Z2Ordering:
    """The functional with psi(e1) = 1 and psi(e2) = x; partial when x is
    rational (requires a completion), total when x is irrational."""
    q = Quad.of(x)
    return Z2Ordering(Quad.of(1), q, None)


def psi_infinity() -> Z2Ordering:
    """The (0, 1) normalization: psi(e1) = 0, psi(e2) = 1; always partial."""
    return Z2Ordering(Quad.of(0), Quad.of(1), None)


def completion(partial: Z2Ordering, side: int) -> Z2Ordering:
    """Complete a rational-direction functional with a tie side."""
    if side not in (PLUS_SIDE, MINUS_SIDE):
        raise ValueError("side must be PLUS_SIDE or MINUS_SIDE")
    if partial.kernel() is None:
        raise ValueError("ordering is already total; nothing to complete")
    return Z2Ordering(partial.a, partial.b, side)


def _forall_lt(ordering: Z2Ordering, g: Vec, u: Vec, v: Vec) -> bool:
    """Whether g^n u < v for all n >= 1 (exact; the orbit is monotone)."""
    s = z2_sign(ordering, g)
    if s == 0:
        return z2_sign(ordering, (v[0] - u[0], v[1] - u[1])) > 0
    if s < 0:
        gu = (g[0] + u[0], g[1] + u[1])
        return z2_sign(ordering, (v[0] - gu[0], v[1] - gu[1])) > 0
    # Increasing orbit: bounded by v only if the functional already separates.
    if ordering.value(g).sign() != 0:
        return False
    du = ordering.value(u)
    dv = ordering.value(v)
    if du != dv:
        return du < dv
    return False


def oracle(ordering: Z2Ordering) -> OrderingOracle:
    """Wrap as an OrderingOracle on Z^2 (must be total)."""
    if ordering.is_partial:
        raise ValueError("partial ordering; complete it first")
    if ordering.tie_rule is None:
        key = lambda v: ordering.value(v)
    else:
        tie = ordering.tie_rule
        if ordering.a.sign() != 0:
            key = lambda v: (ordering.value(v), tie * v[1])
        else:
            key = lambda v: (ordering.value(v), tie * v[0])
    reversed_ordering = Z2Ordering(
        Quad(-ordering.a.a, -ordering.a.b, ordering.a.d),
        Quad(-ordering.b.a, -ordering.b.b, ordering.b.d),
        None if ordering.tie_rule is None else -ordering.tie_rule)

    def fcmp(g, u, v, want):
        if want < 0:
            return _forall_lt(ordering, g, u, v)
        if want > 0:
            return _forall_lt(reversed_ordering, g, u, v)
        return None

    return OrderingOracle(Z2, ordering.descriptor(),
                          lambda v: z2_sign(ordering, v), sort_key=key,
                          forall_cmp=fcmp)


def completion_limit_check(x: Union[int, Fraction], side: int, radius: int):
    """A concrete rational delta > 0 such that the irrational functional at
    x + side*delta*sqrt(2)/2 agrees with the completed ordering P_x^side on the
    whole radius ball; agreement is verified exhaustively.

    Returns (delta, irrational_ordering).
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    x = Fraction(x)
    completed = completion(psi_x(x), side)
    ball = BallSpec(Z2, radius)
    # Nonkernel vectors with n != 0 force delta * |n| * sqrt(2)/2 < |m + x n|;
    # a quarter of the exact minimum leaves headroom.
    bound = None
    for (m, n) in ball:
        if n == 0:
            continue
        val = m + x * n
        if val == 0:
            continue
        c = abs(val) / abs(n)
        if bound is None or c < bound:
            bound = c
    delta = Fraction(1, 2) if bound is None else bound / 4
    shifted = psi_x(Quad(x, side * delta * Fraction(1, 2)))
    for v in ball:
        if z2_sign(shifted, v) != z2_sign(completed, v):
            raise AssertionError(f"delta {delta} fails at {v}")
    return delta, shifted
