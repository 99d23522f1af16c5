"""Concrete groups with finitely many (Conradian) orderings, plus Heisenberg.

T_n is Z^n with the sign-twisting product rule; its 2^n left-orderings are
given by sign vectors along the rational series.  C_n = Z x Z[1/3] x Z^n has
exactly 2^(n+2) Conradian orderings, again sign-vector orderings along its
rational series.  The Heisenberg group carries convex extensions of Z^2
orderings by a signed Z quotient.
"""

from __future__ import annotations

import itertools
from typing import Optional, Tuple

from .core import Group, OrderingOracle, Sign, ZERO
from .exact import LAdic, format_ladic, sign_of
from .z2 import Z2Ordering, z2_sign

TararinElement = Tuple[int, ...]          # (alpha_n, ..., alpha_1), top first
SignVector = Tuple[int, ...]              # entries +1 / -1, aligned with coords


# -- Tararin groups ---------------------------------------------------------

def t_mul(x: TararinElement, y: TararinElement) -> TararinElement:
    """(a_n + a'_n, (-1)^(a'_n) a_(n-1) + a'_(n-1), ..., (-1)^(a'_2) a_1 + a'_1)."""
    if len(x) != len(y):
        raise ValueError(f"rank mismatch: {len(x)} vs {len(y)}")
    out = [x[0] + y[0]]
    for i in range(1, len(x)):
        s = -1 if y[i - 1] % 2 else 1
        out.append(s * x[i] + y[i])
    return tuple(out)


def t_inv(x: TararinElement) -> TararinElement:
    out = [-x[0]]
    for i in range(1, len(x)):
        s = -1 if out[i - 1] % 2 else 1
        out.append(-s * x[i])
    return tuple(out)


def t_identity(n: int) -> TararinElement:
    return (0,) * n


def tararin_group(n: int) -> Group:
    if n < 1:
        raise ValueError("rank must be >= 1")
    gens = tuple(
        (f"a{n - i}", tuple(1 if j == i else 0 for j in range(n)))
        for i in range(n)
    )
    return Group(
        tag=f"tararin:{n}",
        identity=t_identity(n),
        mul=t_mul,
        inv=t_inv,
        generators=gens,
        fmt=lambda x: "(" + ",".join(map(str, x)) + ")",
    )


def t_ordering(sv: SignVector) -> OrderingOracle:
    """Sign of the highest nonzero coordinate, twisted by the sign vector."""
    n = len(sv)
    group = tararin_group(n)

    def s(x: TararinElement) -> Sign:
        for i in range(n):
            if x[i] != 0:
                return sv[i] * sign_of(x[i])
        return ZERO

    def fcmp(g, u, v, want: int):
        # The orbit g^n u is strictly monotone (direction: sign of u^-1 g u);
        # toward-v orbits are bounded by v exactly when u and v already
        # differ above g's top level, where all iterates agree with u.
        rel = lambda x: s(t_mul(t_inv(v), x))     # side of x relative to v
        d = s(t_mul(t_mul(t_inv(u), g), u))
        if d == 0:
            return rel(u) == want
        if d == want:
            return rel(t_mul(g, u)) == want       # extreme iterate is n = 1
        level = next(i for i in range(n) if g[i] != 0)
        diff = next((i for i in range(n) if u[i] != v[i]), None)
        if diff is not None and diff < level:
            return rel(u) == want
        return False

    desc = "tararin:" + "".join("+" if e > 0 else "-" for e in sv)
    key = lambda x: tuple(sv[i] * x[i] for i in range(n))
    return OrderingOracle(group, desc, s, sort_key=key, forall_cmp=fcmp)


def enumerate_t_orderings(n: int) -> list:
    """All 2^n orderings of T_n, deterministic order."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    return [t_ordering(sv) for sv in itertools.product((1, -1), repeat=n)]


# -- The groups C_n ---------------------------------------------------------

CnElement = Tuple[int, LAdic, Tuple[int, ...]]   # (gamma, t, (alpha_n..alpha_1))


def cn_mul(x: CnElement, y: CnElement) -> CnElement:
    """The C_n product: triadic coordinate twisted by 3^(-gamma'), top Z^n
    coordinate twisted by the parity of the triadic numerator."""
    g1, t1, a1 = x
    g2, t2, a2 = y
    if len(a1) != len(a2):
        raise ValueError(f"rank mismatch: {len(a1)} vs {len(a2)}")
    t = t1.scale_base_pow(-g2) + t2
    s0 = -1 if t2.parity() else 1
    coords = [s0 * a1[0] + a2[0]]
    for i in range(1, len(a1)):
        s = -1 if a2[i - 1] % 2 else 1
        coords.append(s * a1[i] + a2[i])
    return (g1 + g2, t, tuple(coords))


def cn_inv(x: CnElement) -> CnElement:
    g, t, a = x
    ti = -t.scale_base_pow(g)
    s0 = -1 if ti.parity() else 1
    coords = [-s0 * a[0]]
    for i in range(1, len(a)):
        s = -1 if coords[i - 1] % 2 else 1
        coords.append(-s * a[i])
    return (-g, ti, tuple(coords))


def cn_identity(n: int) -> CnElement:
    return (0, LAdic(0, 0, 3), (0,) * n)


def cn_fmt(x: CnElement) -> str:
    g, t, a = x
    return f"({g},{format_ladic(t)}," + ",".join(map(str, a)) + ")"


def cn_group(n: int) -> Group:
    if n < 1:
        raise ValueError("rank must be >= 1")
    zero = (0,) * n
    gens = [("c", (1, LAdic(0, 0, 3), zero)), ("b", (0, LAdic(1, 0, 3), zero))]
    for i in range(n):
        gens.append((f"a{n - i}",
                     (0, LAdic(0, 0, 3), tuple(1 if j == i else 0 for j in range(n)))))
    return Group(
        tag=f"cn:{n}",
        identity=cn_identity(n),
        mul=cn_mul,
        inv=cn_inv,
        generators=tuple(gens),
        fmt=cn_fmt,
    )


def cn_ordering(n: int, sv: SignVector) -> OrderingOracle:
    """Sign-vector ordering along {id} < <a_1> < ... < G^(n+1) < C_n.

    sv has n + 2 entries ordered (gamma level, triadic level, alpha_n ... alpha_1).
    """
    if len(sv) != n + 2:
        raise ValueError(f"sign vector must have length {n + 2}")
    group = cn_group(n)

    def s(x: CnElement) -> Sign:
        g, t, a = x
        if g != 0:
            return sv[0] * sign_of(g)
        if not t.is_zero:
            return sv[1] * t.sign()
        for i in range(n):
            if a[i] != 0:
                return sv[2 + i] * sign_of(a[i])
        return ZERO

    def level_of(x: CnElement) -> Optional[int]:
        if x[0] != 0:
            return 0
        if not x[1].is_zero:
            return 1
        for i in range(n):
            if x[2][i] != 0:
                return 2 + i
        return None

    def first_diff(u: CnElement, v: CnElement) -> Optional[int]:
        if u[0] != v[0]:
            return 0
        if u[1] != v[1]:
            return 1
        for i in range(n):
            if u[2][i] != v[2][i]:
                return 2 + i
        return None

    def fcmp(g, u, v, want: int):
        rel = lambda x: s(cn_mul(cn_inv(v), x))
        d = s(cn_mul(cn_mul(cn_inv(u), g), u))
        if d == 0:
            return rel(u) == want
        if d == want:
            return rel(cn_mul(g, u)) == want
        level = level_of(g)
        diff = first_diff(u, v)
        if diff is not None and diff < level:
            return rel(u) == want
        return False

    desc = "cn:" + "".join("+" if e > 0 else "-" for e in sv)
    key = lambda x: (sv[0] * x[0], sv[1] * x[1].to_fraction(),
                     tuple(sv[2 + i] * x[2][i] for i in range(n)))
    return OrderingOracle(group, desc, s, sort_key=key, forall_cmp=fcmp)


def enumerate_cn_corderings(n: int) -> list:
    """All 2^(n+2) Conradian orderings of C_n, deterministic order."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    return [cn_ordering(n, sv) for sv in itertools.product((1, -1), repeat=n + 2)]


def cn_flip_level(o: OrderingOracle, n: int, level: int) -> OrderingOracle:
    """Flip one sign-vector bit: changes the sign of exactly the elements
    whose highest nonzero level is ``level`` (0 = gamma, 1 = triadic, then
    alpha_n down to alpha_1)."""
    sv = tuple(1 if ch == "+" else -1 for ch in o.descriptor.split(":")[1])
    flipped = tuple(-e if i == level else e for i, e in enumerate(sv))
    return cn_ordering(n, flipped)


# -- Heisenberg --------------------------------------------------------------

HeisenbergElement = Tuple[int, int, int]   # (k, j, i) in normal form c^k b^j a^i


def h_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    # Collection rule a^i b^j = b^j a^i c^(i*j), derived once from [a,b] = c.
    return (x[0] + y[0] + x[2] * y[1], x[1] + y[1], x[2] + y[2])


def h_inv(x: HeisenbergElement) -> HeisenbergElement:
    return (-x[0] + x[2] * x[1], -x[1], -x[2])


HEISENBERG = Group(
    tag="heisenberg",
    identity=(0, 0, 0),
    mul=h_mul,
    inv=h_inv,
    generators=(("a", (0, 0, 1)), ("b", (0, 1, 0)), ("c", (1, 0, 0))),
    fmt=lambda x: f"({x[0]},{x[1]},{x[2]})",
)


def h_ordering(inner: Z2Ordering, top_sign: int) -> OrderingOracle:
    """Convex extension over C = <b, c> with the identifications e1 = c,
    e2 = b; the Z quotient is ordered by top_sign."""
    if top_sign not in (1, -1):
        raise ValueError("top_sign must be +1 or -1")
    if inner.is_partial:
        raise ValueError("inner Z^2 ordering must be total")

    def s(x: HeisenbergElement) -> Sign:
        k, j, i = x
        if i != 0:
            return top_sign * sign_of(i)
        return z2_sign(inner, (k, j))

    def fcmp(g, u, v, want: int):
        # Orbit g^n u is strictly monotone with direction sign(u^-1 g u); the
        # conjugated element also carries the exact per-step drift of
        # v^-1 g^n u on the <b, c> level.
        rel = lambda x: s(h_mul(h_inv(v), x))
        conj = h_mul(h_mul(h_inv(u), g), u)
        d = s(conj)
        if d == 0:
            return rel(u) == want
        if d == want:
            return rel(h_mul(g, u)) == want
        if g[2] != 0:
            return False                    # Z-quotient coordinate diverges
        if u[2] != v[2]:
            return rel(u) == want           # decided at the quotient level
        if inner.value((conj[0], conj[1])).sign() != 0:
            return False                    # inner value drifts across v
        w1 = h_mul(h_inv(v), h_mul(g, u))
        if inner.value((w1[0], w1[1])).sign() != 0:
            return rel(h_mul(g, u)) == want  # constant inner value
        return False                        # kernel ties drift monotonically

    desc = f"heis:[{inner.descriptor()};top{'+' if top_sign > 0 else '-'}]"
    return OrderingOracle(HEISENBERG, desc, s, forall_cmp=fcmp)


def h_conjugacy_distinct(inner: Z2Ordering, top_sign: int, n: int,
                         max_radius: int = 6):
    """Witness that conjugating by a^n changes the restriction to <b, c>.

    Requires an irrational inner parameter and n != 0; returns a pair
    ((k, j), signs) with the two restriction signs differing.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if inner.kernel() is not None:
        raise ValueError("inner parameter must be irrational")
    o = h_ordering(inner, top_sign)
    an = (0, 0, n)
    an_inv = h_inv(an)
    for r in range(1, max_radius + 1):
        for k in range(-r, r + 1):
            for j in range(-r, r + 1):
                if (k, j) == (0, 0):
                    continue
                g = (k, j, 0)
                s0 = o.sign_fn(g)
                s1 = o.sign_fn(h_mul(h_mul(an, g), an_inv))
                if s0 != s1:
                    return (k, j), (s0, s1)
    raise AssertionError("no disagreement found; conjugation looks periodic")
