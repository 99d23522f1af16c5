"""Reduced words in free groups, and the Magnus bi-ordering of F_2.

Words are tuples of nonzero signed ints: letter k is generator k (1-indexed),
-k its inverse.  The Magnus ordering embeds F_2 = <a, b> into noncommutative
power series via a -> 1 + X, b -> 1 + Y and orders by the first nonzero
coefficient in degree-then-lexicographic monomial order with X < Y.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Tuple

from .core import Group, OrderingOracle, Sign, ZERO
from .z2 import Z2Ordering, z2_sign

Word = Tuple[int, ...]

LETTER_NAMES = "abcdefgh"


def reduce_word(letters: Iterable[int]) -> Word:
    """Free reduction; idempotent."""
    out: List[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letters must be nonzero")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_mul(u: Word, v: Word) -> Word:
    return reduce_word(itertools.chain(u, v))


def word_inv(u: Word) -> Word:
    return tuple(-x for x in reversed(u))


def word_fmt(w: Word) -> str:
    if not w:
        return "1"
    out = []
    for x in w:
        name = LETTER_NAMES[abs(x) - 1]
        out.append(name if x > 0 else name.upper())
    return "".join(out)


def parse_word(s: str) -> Word:
    s = s.strip()
    if s in ("", "1"):
        return ()
    letters = []
    for ch in s:
        if ch.isspace():
            continue
        low = ch.lower()
        if low not in LETTER_NAMES:
            raise ValueError(f"unknown letter {ch!r}")
        k = LETTER_NAMES.index(low) + 1
        letters.append(k if ch.islower() else -k)
    return reduce_word(letters)


def free_group(rank: int) -> Group:
    if not 1 <= rank <= len(LETTER_NAMES):
        raise ValueError(f"rank must be in 1..{len(LETTER_NAMES)}")
    gens = tuple((LETTER_NAMES[i], (i + 1,)) for i in range(rank))
    return Group(
        tag=f"free:{rank}",
        identity=(),
        mul=word_mul,
        inv=word_inv,
        generators=gens,
        fmt=word_fmt,
    )


F2 = free_group(2)


def abelianization(w: Word) -> Tuple[int, int]:
    """Exponent sums of a and b (rank-2 words)."""
    m = sum(1 if x == 1 else -1 if x == -1 else 0 for x in w)
    n = sum(1 if x == 2 else -1 if x == -2 else 0 for x in w)
    return (m, n)


# -- Magnus expansion ---------------------------------------------------------

Monomial = Tuple[int, ...]   # entries are variable indices, one per generator
Series = Dict[Monomial, int]


def _series_mul(p: Series, q: Series, degree: int) -> Series:
    out: Series = {}
    for m1, c1 in p.items():
        if len(m1) > degree:
            continue
        for m2, c2 in q.items():
            if len(m1) + len(m2) > degree:
                continue
            m = m1 + m2
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            elif m in out:
                del out[m]
    return out


def _generator_series(letter: int, degree: int) -> Series:
    # a -> 1 + X; a^-1 -> 1 - X + X^2 - ...; likewise for the other letters.
    var = abs(letter) - 1
    if letter > 0:
        return {(): 1, (var,): 1}
    return {(): 1, **{(var,) * d: (-1) ** d for d in range(1, degree + 1)}}


def magnus_series(w: Word, degree: int) -> Series:
    """Truncated Magnus expansion; monomial variables follow generator order."""
    out: Series = {(): 1}
    for letter in w:
        out = _series_mul(out, _generator_series(letter, degree), degree)
    return out


def _first_coefficient(p: Series) -> Optional[int]:
    """Coefficient of the least monomial (degree, then lex with X < Y) of p - 1."""
    best: Optional[Monomial] = None
    for m in p:
        if m == ():
            continue
        if best is None or (len(m), m) < (len(best), best):
            best = m
    if best is None:
        return None
    return p[best]


def magnus_sign(w: Word) -> Sign:
    """Sign of the first nonzero coefficient of the expansion of w minus 1."""
    if not w:
        return ZERO
    degree = max(2, len(w))
    while degree <= 4 * len(w):
        series = magnus_series(w, degree)
        series.pop((), None)
        c = _first_coefficient(series)
        if c is not None:
            return 1 if c > 0 else -1
        degree *= 2
    raise AssertionError(f"no nonzero coefficient up to degree {4 * len(w)} for {word_fmt(w)}")


def magnus_oracle(rank: int = 2) -> OrderingOracle:
    group = F2 if rank == 2 else free_group(rank)
    desc = "magnus" if rank == 2 else f"magnus:{rank}"
    return OrderingOracle(group, desc, magnus_sign)


# -- Seed families for the dense-orbit construction ---------------------------

def z2_composed_oracle(z2o: Z2Ordering, label: str) -> OrderingOracle:
    """Order by a Z^2 ordering of the abelianization, Magnus on its kernel."""

    def s(w: Word) -> Sign:
        v = abelianization(w)
        if v != (0, 0):
            return z2_sign(z2o, v)
        return magnus_sign(w)

    return OrderingOracle(F2, f"z2mag:{label}", s)


def z2_kernel_flipped_oracle(z2o: Z2Ordering, label: str) -> OrderingOracle:
    """Same, with the Magnus signs flipped on the abelianization kernel."""

    def s(w: Word) -> Sign:
        v = abelianization(w)
        if v != (0, 0):
            return z2_sign(z2o, v)
        return -magnus_sign(w)

    return OrderingOracle(F2, f"z2magflip:{label}", s)


def seed_family(count: int) -> List[OrderingOracle]:
    """Deterministic list of pairwise-distinct orderings of F_2."""
    from .core import reverse
    from .exact import Quad

    if count < 1:
        raise ValueError("count must be >= 1")
    out: List[OrderingOracle] = []
    base = [
        lambda: magnus_oracle(),
        lambda: reverse(magnus_oracle()),
        lambda: z2_composed_oracle(Z2Ordering(Quad.of(1), Quad(0, 1)), "sqrt2"),
        lambda: z2_kernel_flipped_oracle(Z2Ordering(Quad.of(1), Quad(0, 1)), "sqrt2"),
        lambda: z2_composed_oracle(Z2Ordering(Quad.of(1), Quad(0, -1)), "-sqrt2"),
        lambda: z2_kernel_flipped_oracle(Z2Ordering(Quad.of(1), Quad(0, -1)), "-sqrt2"),
    ]
    k = 0
    while len(out) < count:
        if k < len(base):
            out.append(base[k]())
        else:
            shift = k - len(base) + 1
            out.append(z2_composed_oracle(
                Z2Ordering(Quad.of(1), Quad(shift, 1)), f"{shift}+sqrt2"))
        k += 1
    return out
