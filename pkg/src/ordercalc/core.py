"""Ordering oracles and the generic machinery around them.

An oracle is a total sign function on a group: sign(g) says whether g is
positive, the identity, or negative in a left-invariant total order.  This
module provides the combinators (reverse, conjugate, flips, convex extension),
the finite-ball metric, the Conradian checker, and crossing search/verification.

Crossings' universally quantified condition is only semi-decidable in general.
Reports record whether it was checked exactly (a per-universe decider) or only
up to a bound.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field, replace
from functools import cmp_to_key
from typing import Any, Callable, Optional, Sequence

NEGATIVE, ZERO, POSITIVE = -1, 0, 1
Sign = int

SIGN_NAMES = {NEGATIVE: "Negative", ZERO: "Zero", POSITIVE: "Positive"}

#: Default bound for searches and bounded "for all n" checks.
DEFAULT_BOUND = 6

BOUNDED_ONLY = "BoundedOnly"
EXACT_FOR_ALL = "ExactForAll"


@dataclass(frozen=True)
class Group:
    """A group given by callables on immutable, hashable elements."""

    tag: str
    identity: Any
    mul: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    generators: tuple  # pairs (name, element)
    fmt: Callable[[Any], str] = repr

    def pow(self, g, n: int):
        if n < 0:
            return self.pow(self.inv(g), -n)
        acc = self.identity
        base = g
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def conj(self, h, g):
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def symbols(self) -> list:
        """Generator alphabet, each generator immediately followed by its inverse."""
        out = []
        for name, g in self.generators:
            out.append((name, g))
            out.append((name + "^-1", self.inv(g)))
        return out


@dataclass(frozen=True)
class BallSpec:
    """Radius-r ball with deterministic length-then-lexicographic enumeration."""

    group: Group
    radius: int
    _elements: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        if self._elements is None:
            object.__setattr__(self, "_elements", tuple(enumerate_ball(self.group, self.radius)))

    @property
    def elements(self) -> tuple:
        return self._elements

    def __iter__(self):
        return iter(self._elements)

    def __len__(self):
        return len(self._elements)


def enumerate_ball(group: Group, radius: int) -> list:
    """Distinct elements of word length <= radius, first occurrence in
    length-then-lexicographic word order over the fixed symbol alphabet."""
    return [e for _, e in enumerate_ball_words(group, radius)]


def enumerate_ball_words(group: Group, radius: int) -> list:
    """Like enumerate_ball, but pairs each element with its canonical word:
    letter k > 0 is the k-th generator, -k its inverse."""
    syms = []
    for i, (_, g) in enumerate(group.generators):
        syms.append((i + 1, g))
        syms.append((-(i + 1), group.inv(g)))
    seen = {group.identity}
    out = [((), group.identity)]
    layer = [((), group.identity)]
    for _ in range(radius):
        nxt = []
        for w, u in layer:
            for letter, s in syms:
                v = group.mul(u, s)
                if v not in seen:
                    seen.add(v)
                    entry = (w + (letter,), v)
                    out.append(entry)
                    nxt.append(entry)
        layer = nxt
    return out


# Enumerating products u*s layer by layer visits words in length-lex order as
# long as multiplication by one symbol never shortens by more than one letter,
# which holds in all catalog groups; deduplication keeps the first occurrence.


@dataclass(frozen=True)
class OrderingOracle:
    """A named positive cone: a total sign function on a group.

    Descriptor equality implies pointwise equality; distinctness is only ever
    established by a disagreement witness.

    ``sort_key``, when present, maps elements to natively comparable keys in a
    way that matches the order globally; it accelerates searches.
    ``forall_cmp(g, u, v, want)`` decides, exactly, whether g^n u sits
    strictly on the ``want`` side of v for every n >= 1 (NEGATIVE: below,
    POSITIVE: above); it may return None when no exact decision is available.
    """

    group: Group
    descriptor: str
    sign_fn: Callable[[Any], Sign]
    sort_key: Optional[Callable[[Any], Any]] = None
    forall_cmp: Optional[Callable[[Any, Any, Any, Sign], Optional[bool]]] = None

    def sign(self, g) -> Sign:
        return self.sign_fn(g)

    def cmp(self, g, h) -> Sign:
        """Sign of g^-1 h: Negative iff h < g, Positive iff g < h."""
        return self.sign_fn(self.group.mul(self.group.inv(g), h))

    def is_positive(self, g) -> bool:
        return self.sign_fn(g) > 0

    def key(self):
        """Sort key function for ranking elements, exact in all cases."""
        if self.sort_key is not None:
            return self.sort_key
        return cmp_to_key(lambda x, y: self.cmp(y, x))


def cmp(o: OrderingOracle, g, h) -> Sign:
    return o.cmp(g, h)


def reverse(o: OrderingOracle) -> OrderingOracle:
    """Negate the sign of every non-identity element."""
    if o.descriptor.startswith("reverse(") and o.descriptor.endswith(")"):
        desc = o.descriptor[len("reverse("):-1]
    else:
        desc = f"reverse({o.descriptor})"
    key = None
    if o.sort_key is not None:
        key = _NegatedKey(o.sort_key)
    fcmp = None
    if o.forall_cmp is not None:
        fcmp = lambda g, u, v, want: o.forall_cmp(g, u, v, -want)
    return OrderingOracle(o.group, desc, lambda g: -o.sign_fn(g), key, fcmp)


class _NegatedKey:
    """Order-reversing wrapper around a sort key."""

    def __init__(self, inner):
        self.inner = inner

    def __call__(self, g):
        return _Neg(self.inner(g))


class _Neg:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __eq__(self, other):
        return self.v == other.v

    def __hash__(self):
        return hash(self.v)


def conjugate(o: OrderingOracle, h) -> OrderingOracle:
    """Oracle with sign'(x) = sign(h x h^-1), the conjugacy action on orderings."""
    G = o.group
    if h == G.identity:
        return o
    desc = f"conj[{G.fmt(h)}]({o.descriptor})"
    hinv = G.inv(h)

    def s(x):
        return o.sign_fn(G.mul(G.mul(h, x), hinv))

    key = None
    if o.sort_key is not None:
        inner = o.sort_key
        key = lambda x: inner(G.mul(G.mul(h, x), hinv))
    fcmp = None
    if o.forall_cmp is not None:
        def fcmp(g, u, v, want, _o=o, _h=h, _hinv=hinv):
            return _o.forall_cmp(G.conj(_h, g), G.mul(G.mul(_h, u), _hinv),
                                 G.mul(G.mul(_h, v), _hinv), want)
    return OrderingOracle(G, desc, s, key, fcmp)


def flip_on_convex(o: OrderingOracle, convex_membership: Callable[[Any], bool],
                   label: str = "C") -> OrderingOracle:
    """Negate the sign exactly on a (caller-supplied) convex subgroup."""
    desc = f"flip[{label}]({o.descriptor})"

    def s(x):
        v = o.sign_fn(x)
        return -v if convex_membership(x) else v

    return OrderingOracle(o.group, desc, s)


def convex_extension(quotient_o: OrderingOracle, sub_o: OrderingOracle,
                     sub_membership: Callable[[Any], bool],
                     projection: Callable[[Any], Any],
                     group: Optional[Group] = None,
                     descriptor: Optional[str] = None) -> OrderingOracle:
    """Order g by the quotient when g is outside the normal subgroup, else by
    the subgroup ordering.  ``projection`` must kill exactly the subgroup."""
    G = group if group is not None else sub_o.group
    desc = descriptor or f"ext[{quotient_o.descriptor};{sub_o.descriptor}]"

    def s(x):
        if sub_membership(x):
            return sub_o.sign_fn(x)
        q = projection(x)
        v = quotient_o.sign_fn(q)
        if v == ZERO:
            raise ValueError("projection trivial on an element outside the subgroup")
        return v

    return OrderingOracle(G, desc, s)


AGREE_UP_TO_BOUND = None


def agreement_radius(o1: OrderingOracle, o2: OrderingOracle, ball: BallSpec,
                     max_r: int) -> Optional[int]:
    """Smallest n <= max_r whose ball separates the oracles; None if they agree
    on every tested ball (AgreeUpToBound)."""
    if o1.group.tag != o2.group.tag:
        raise ValueError("oracles live on different universes")
    for n in range(max_r + 1):
        b = ball if ball.radius == n else BallSpec(ball.group, n)
        for g in b:
            if o1.sign_fn(g) != o2.sign_fn(g):
                return n
    return AGREE_UP_TO_BOUND


@dataclass(frozen=True)
class ConradianWitness:
    """Positive pair with f g^2 <= g; ``strong`` means f g^n < g held for all
    n (exactly, when the universe has a decider; else up to checked_bound)."""

    f: Any
    g: Any
    strong: bool
    checked_bound: int
    exactness: str  # BOUNDED_ONLY or EXACT_FOR_ALL


def _forall_less(o: OrderingOracle, g, u, v, bound: int):
    """Decide whether g^n u < v for all n >= 1.

    Returns (holds, exactness).  Uses the universe decider when registered,
    otherwise checks n <= bound.
    """
    if o.forall_cmp is not None:
        r = o.forall_cmp(g, u, v, NEGATIVE)
        if r is not None:
            return r, EXACT_FOR_ALL
    G = o.group
    x = u
    for _ in range(bound):
        x = G.mul(g, x)
        if o.cmp(x, v) != POSITIVE:      # require g^n u < v
            return False, BOUNDED_ONLY
    return True, BOUNDED_ONLY


def _forall_greater(o: OrderingOracle, g, u, v, bound: int):
    """Decide whether g^n u > v for all n >= 1 (same shape as _forall_less)."""
    if o.forall_cmp is not None:
        r = o.forall_cmp(g, u, v, POSITIVE)
        if r is not None:
            return r, EXACT_FOR_ALL
    G = o.group
    x = u
    for _ in range(bound):
        x = G.mul(g, x)
        if o.cmp(x, v) != NEGATIVE:      # require g^n u > v
            return False, BOUNDED_ONLY
    return True, BOUNDED_ONLY


def conradian_check(o: OrderingOracle, ball: BallSpec,
                    bound: int = DEFAULT_BOUND) -> Optional[ConradianWitness]:
    """Check f g^2 > g for all positive f, g in the ball (the n = 2 form).

    Returns None on pass.  On failure returns the first witness pair in
    enumeration order, preferring pairs that also satisfy f g^n < g for all n
    (those feed the crossing construction); the fallback weak pair still
    certifies failure.
    """
    G = o.group
    positives = [g for g in ball if o.sign_fn(g) > 0]
    weak = None
    for f in positives:
        for g in positives:
            fg2 = G.mul(f, G.mul(g, g))
            if o.cmp(g, fg2) == POSITIVE:
                continue
            if weak is None:
                weak = ConradianWitness(f, g, False, bound, BOUNDED_ONLY)
            # f g^n < g for all n is equivalent to g^n < f^-1 g for all n.
            holds, exactness = _forall_less(o, g, G.identity, G.mul(G.inv(f), g), bound)
            if holds:
                return ConradianWitness(f, g, True, bound, exactness)
    return weak


@dataclass(frozen=True)
class CrossingWitness:
    """5-uple (f, g, u, v, w) with exponents N, M witnessing a crossing."""

    f: Any
    g: Any
    u: Any
    v: Any
    w: Any
    N: int
    M: int
    checked_bound: int
    exactness: str  # BOUNDED_ONLY or EXACT_FOR_ALL


@dataclass(frozen=True)
class CheckReport:
    cond_i: bool        # u < w < v
    cond_ii: bool       # for all n: g^n u < v and f^n v > u
    cond_iii: bool      # f^N v < w < g^M u
    exactness: str      # how cond_ii was established
    checked_bound: int

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def verify_crossing(c: CrossingWitness, o: OrderingOracle,
                    bound: int = DEFAULT_BOUND) -> CheckReport:
    """Per-condition status of a crossing under the given ordering."""
    if c.N < 1 or c.M < 1:
        raise ValueError("N and M must be positive")
    G = o.group
    cond_i = o.cmp(c.u, c.w) == POSITIVE and o.cmp(c.w, c.v) == POSITIVE
    a, ea = _forall_less(o, c.g, c.u, c.v, bound)
    b, eb = _forall_greater(o, c.f, c.v, c.u, bound)
    cond_ii = a and b
    exactness = EXACT_FOR_ALL if (ea == EXACT_FOR_ALL and eb == EXACT_FOR_ALL) else BOUNDED_ONLY
    fNv = G.mul(G.pow(c.f, c.N), c.v)
    gMu = G.mul(G.pow(c.g, c.M), c.u)
    cond_iii = o.cmp(fNv, c.w) == POSITIVE and o.cmp(c.w, gMu) == POSITIVE
    return CheckReport(cond_i, cond_ii, cond_iii, exactness, bound)


def crossing_from_witness(o: OrderingOracle, f, g,
                          bound: int = DEFAULT_BOUND) -> CrossingWitness:
    """Build the canonical crossing (f, g, id, f^-1 g, g^2, N=1, M=3) from a
    Conradian-failure pair and verify it; raises if the pair was invalid."""
    G = o.group
    if o.sign_fn(f) <= 0 or o.sign_fn(g) <= 0:
        raise ValueError("witness pair must be positive")
    c = CrossingWitness(f, g, G.identity, G.mul(G.inv(f), g), G.mul(g, g),
                        1, 3, bound, BOUNDED_ONLY)
    report = verify_crossing(c, o, bound)
    if not report.ok:
        raise ValueError(f"witness pair does not yield a crossing: {report}")
    return replace(c, exactness=report.exactness)


def _rank_tables(o: OrderingOracle, elements: Sequence, exp_bound: int):
    """Rank every ball element and every bounded power-translate g^n u.

    Returns (rank, ball_ranks, maxR, minR) where maxR[gi][ui] is the top rank
    of {g^n u : 1 <= n <= exp_bound} and minR likewise the bottom rank.
    """
    G = o.group
    n = len(elements)
    orbits = [[None] * n for _ in range(n)]
    needed = set(elements)
    for gi, g in enumerate(elements):
        for ui, u in enumerate(elements):
            x = u
            orb = []
            for _ in range(exp_bound):
                x = G.mul(g, x)
                orb.append(x)
                needed.add(x)
            orbits[gi][ui] = orb
    ordered = sorted(needed, key=o.key())
    rank = {e: i for i, e in enumerate(ordered)}
    ball_ranks = [rank[e] for e in elements]
    maxR = [[0] * n for _ in range(n)]
    minR = [[0] * n for _ in range(n)]
    for gi in range(n):
        for ui in range(n):
            rs = [rank[x] for x in orbits[gi][ui]]
            maxR[gi][ui] = max(rs)
            minR[gi][ui] = min(rs)
    return rank, ball_ranks, maxR, minR


def _crossing_scan(o: OrderingOracle, ball: BallSpec, exp_bound: int,
                   u_filter=None, v_filter=None, w_filter=None) -> Optional[CrossingWitness]:
    """Exhaustive bounded crossing search; first witness in (f, g, u, v, w)
    enumeration order.  Conditions are checked for exponents <= exp_bound."""
    elements = list(ball.elements)
    n = len(elements)
    if n == 0:
        return None
    rank, ball_ranks, maxR, minR = _rank_tables(o, elements, exp_bound)
    max_ball_rank = max(ball_ranks)
    u_ok = [True] * n if u_filter is None else [u_filter(e) for e in elements]
    v_ok = [True] * n if v_filter is None else [v_filter(e) for e in elements]
    w_ok = [True] * n if w_filter is None else [w_filter(e) for e in elements]
    candidate_w = sorted(ball_ranks[i] for i in range(n) if w_ok[i])
    if not candidate_w:
        return None

    for fi in range(n):
        minR_f = minR[fi]
        for gi in range(n):
            maxR_g = maxR[gi]
            for ui in range(n):
                if not u_ok[ui]:
                    continue
                ru = ball_ranks[ui]
                mg = maxR_g[ui]           # sup of g^n u, n <= bound
                if mg >= max_ball_rank:
                    continue
                for vi in range(n):
                    if not v_ok[vi]:
                        continue
                    rv = ball_ranks[vi]
                    if rv <= ru or rv <= mg:
                        continue
                    mf = minR_f[vi]       # inf of f^n v, n <= bound
                    if mf <= ru or mf >= mg:
                        continue
                    # w must satisfy: u < w < v, some f^N v < w, some g^M u > w,
                    # all collapsing to rank(w) strictly inside (mf, mg).
                    j = bisect.bisect_right(candidate_w, mf)
                    if j >= len(candidate_w) or candidate_w[j] >= mg:
                        continue
                    exactness = BOUNDED_ONLY
                    if o.forall_cmp is not None:
                        # Reject bounded false positives whose "for all n"
                        # condition provably fails beyond the bound.
                        a = o.forall_cmp(elements[gi], elements[ui],
                                         elements[vi], NEGATIVE)
                        if a is False:
                            continue
                        b = o.forall_cmp(elements[fi], elements[vi],
                                         elements[ui], POSITIVE)
                        if b is False:
                            continue
                        if a is True and b is True:
                            exactness = EXACT_FOR_ALL
                    for wi in range(n):
                        rw = ball_ranks[wi]
                        if w_ok[wi] and mf < rw < mg:
                            return CrossingWitness(
                                elements[fi], elements[gi], elements[ui],
                                elements[vi], elements[wi],
                                N=_first_exp(o, elements[fi], elements[vi],
                                             elements[wi], exp_bound, NEGATIVE),
                                M=_first_exp(o, elements[gi], elements[ui],
                                             elements[wi], exp_bound, POSITIVE),
                                checked_bound=exp_bound, exactness=exactness)
    return None


def _first_exp(o: OrderingOracle, g, base, w, bound: int, want: Sign) -> int:
    """Smallest positive N <= bound placing g^N base on the wanted side of w:
    want NEGATIVE finds g^N base < w; want POSITIVE finds g^N base > w."""
    G = o.group
    x = base
    for n in range(1, bound + 1):
        x = G.mul(g, x)
        if want == NEGATIVE and o.cmp(x, w) == POSITIVE:
            return n
        if want == POSITIVE and o.cmp(w, x) == POSITIVE:
            return n
    raise AssertionError("exponent not found despite rank certificate")


def crossing_search(o: OrderingOracle, ball: BallSpec,
                    exp_bound: int = DEFAULT_BOUND) -> Optional[CrossingWitness]:
    """First bounded crossing over quintuples from the ball, or None."""
    return _crossing_scan(o, ball, exp_bound)


def soul_bound_check(o: OrderingOracle, h, ball: BallSpec,
                     exp_bound: int = DEFAULT_BOUND) -> Optional[CrossingWitness]:
    """Bounded exclusion certificate for the Conradian soul.

    For positive h, searches a crossing with id <= u and w < h; for negative h
    the symmetric variant (v <= id and w > h).  Returns the witness
    (OutsideSoul) or None (Unknown).  The identity is always in the soul.
    """
    s = o.sign_fn(h)
    if s == ZERO:
        raise ValueError("the identity is always in the soul")
    if s > 0:
        return _crossing_scan(
            o, ball, exp_bound,
            u_filter=lambda u: o.sign_fn(u) >= 0,
            w_filter=lambda w: o.cmp(w, h) == POSITIVE)
    return _crossing_scan(
        o, ball, exp_bound,
        v_filter=lambda v: o.sign_fn(v) <= 0,
        w_filter=lambda w: o.cmp(h, w) == POSITIVE)


def conjugate_approx_search(o: OrderingOracle, positives: Sequence,
                            search_ball: BallSpec) -> Optional[Any]:
    """Conjugator h keeping the listed elements positive while changing the
    oracle somewhere in the ball; None if no such h exists in the ball."""
    for p in positives:
        if o.sign_fn(p) <= 0:
            raise ValueError(f"element {o.group.fmt(p)} is not positive")
    for h in search_ball:
        oc = conjugate(o, h)
        if oc is o:
            continue
        if all(oc.sign_fn(p) > 0 for p in positives):
            if any(oc.sign_fn(x) != o.sign_fn(x) for x in search_ball):
                return h
    return None


# ---------------------------------------------------------------------------
# Property-test helpers (shared by the test-suites of every concrete group).

def totality_violations(o: OrderingOracle, ball: BallSpec) -> list:
    """Elements breaking sign(g) = 0 <=> g = id, or sign(g^-1) != -sign(g)."""
    G = o.group
    bad = []
    for g in ball:
        s = o.sign_fn(g)
        if (s == ZERO) != (g == G.identity):
            bad.append(g)
        elif o.sign_fn(G.inv(g)) != -s:
            bad.append(g)
    return bad


def left_invariance_violations(o: OrderingOracle, ball: BallSpec) -> list:
    """Triples (h, f, g) with cmp(f, g) != cmp(hf, hg)."""
    G = o.group
    bad = []
    elems = list(ball.elements)
    for h in elems:
        for f in elems:
            for g in elems:
                if o.cmp(f, g) != o.cmp(G.mul(h, f), G.mul(h, g)):
                    bad.append((h, f, g))
                    if len(bad) >= 3:
                        return bad
    return bad


def semigroup_violations(o: OrderingOracle, ball: BallSpec) -> list:
    """Positive pairs whose product is not positive."""
    G = o.group
    pos = [g for g in ball if o.sign_fn(g) > 0]
    bad = []
    for f in pos:
        for g in pos:
            if o.sign_fn(G.mul(f, g)) != POSITIVE:
                bad.append((f, g))
                if len(bad) >= 3:
                    return bad
    return bad


def bi_invariance_violations(o: OrderingOracle, ball: BallSpec) -> list:
    """Pairs (h, g) with sign(h g h^-1) != sign(g)."""
    G = o.group
    bad = []
    for h in ball:
        for g in ball:
            if o.sign_fn(G.conj(h, g)) != o.sign_fn(g):
                bad.append((h, g))
                if len(bad) >= 3:
                    return bad
    return bad


def sign_table(o: OrderingOracle, ball: BallSpec) -> str:
    """Newline-delimited ``element<TAB>sign`` records in enumeration order."""
    lines = []
    for g in ball:
        lines.append(f"{o.group.fmt(g)}\t{SIGN_NAMES[o.sign_fn(g)]}")
    return "\n".join(lines) + "\n"
