"""Dynamical realizations: orderings as exact piecewise-linear actions.

A realization places a finite enumeration prefix of the group on the rational
line by the max/min/midpoint rule, then interpolates each generator through
the placed pairs (t(u), t(s u)).  Induced orderings read signs off reference
points; crossings of an action are searched over word balls and a value grid.
Everything is finite and exact; no closures are taken.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (BallSpec, Group, OrderingOracle, POSITIVE, Sign, ZERO,
                   enumerate_ball_words)
from .exact import sign_of
from .freewords import Word, free_group


def realized_ball_words(group: Group, radius: int) -> List[Word]:
    """Canonical words of the radius ball; the honest f, g range for
    action_crossing_search on a realized group action."""
    return [w for w, _ in enumerate_ball_words(group, radius)]


@dataclass(frozen=True)
class PLMap:
    """Strictly increasing piecewise-linear self-map of the line.

    Affine tails extend beyond the extreme breakpoints with the given slopes;
    at least one breakpoint is required.
    """

    breakpoints: Tuple[Tuple[Fraction, Fraction], ...]
    left_slope: Fraction = Fraction(1)
    right_slope: Fraction = Fraction(1)

    def __post_init__(self):
        if not self.breakpoints:
            raise ValueError("need at least one breakpoint")
        xs = [p[0] for p in self.breakpoints]
        ys = [p[1] for p in self.breakpoints]
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("breakpoint x-coordinates must strictly increase")
        if any(y1 >= y2 for y1, y2 in zip(ys, ys[1:])):
            raise ValueError("breakpoint y-coordinates must strictly increase")
        if self.left_slope <= 0 or self.right_slope <= 0:
            raise ValueError("tail slopes must be positive")

    def apply(self, x: Fraction) -> Fraction:
        pts = self.breakpoints
        if x <= pts[0][0]:
            return pts[0][1] + self.left_slope * (x - pts[0][0])
        if x >= pts[-1][0]:
            return pts[-1][1] + self.right_slope * (x - pts[-1][0])
        i = bisect.bisect_right([p[0] for p in pts], x)
        (x1, y1), (x2, y2) = pts[i - 1], pts[i]
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

    def inverse(self) -> "PLMap":
        return PLMap(tuple((y, x) for x, y in self.breakpoints),
                     1 / self.left_slope, 1 / self.right_slope)

    def compose(self, other: "PLMap") -> "PLMap":
        """The map x -> self(other(x))."""
        inv = other.inverse()
        xs = {x for x, _ in other.breakpoints}
        xs.update(inv.apply(x) for x, _ in self.breakpoints)
        pts = tuple(sorted((x, self.apply(other.apply(x))) for x in xs))
        return PLMap(pts, self.left_slope * other.left_slope,
                     self.right_slope * other.right_slope)

    def fixed_points(self) -> List[Fraction]:
        """All isolated fixed points, plus the left endpoint of any on-diagonal
        segment, in increasing order.  Slope-one tails off the diagonal add
        nothing; an on-diagonal tail is reported via its anchor."""
        pts = self.breakpoints
        out: List[Fraction] = []
        x0, y0 = pts[0]
        if self.left_slope != 1:
            x_star = (y0 - self.left_slope * x0) / (1 - self.left_slope)
            if x_star <= x0:
                out.append(x_star)
        elif y0 == x0:
            out.append(x0)
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            s = (y2 - y1) / (x2 - x1)
            if s == 1:
                if y1 == x1:
                    out.append(x1)
                continue
            x_star = (y1 - s * x1) / (1 - s)
            if x1 <= x_star <= x2:
                out.append(x_star)
        xl, yl = pts[-1]
        if self.right_slope != 1:
            x_star = (yl - self.right_slope * xl) / (1 - self.right_slope)
            if x_star >= xl:
                out.append(x_star)
        elif yl == xl:
            out.append(xl)
        return sorted(set(out))

    def to_json(self) -> dict:
        p0, p1 = self.breakpoints[0], self.breakpoints[-1]
        return {
            "breakpoints": [[str(x), str(y)] for x, y in self.breakpoints],
            "left": [str(self.left_slope),
                     str(p0[1] - self.left_slope * p0[0])],
            "right": [str(self.right_slope),
                      str(p1[1] - self.right_slope * p1[0])],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLMap":
        pts = tuple((Fraction(x), Fraction(y)) for x, y in data["breakpoints"])
        return cls(pts, Fraction(data["left"][0]), Fraction(data["right"][0]))


@dataclass(frozen=True)
class TMap:
    """Order-preserving placement of an enumeration prefix, t(id) = 0."""

    values: Dict[object, Fraction]
    order: Tuple[object, ...]   # enumeration order


def build_tmap(o: OrderingOracle, enumeration: Sequence) -> TMap:
    """The inductive rule: new maximum -> max + 1, new minimum -> min - 1,
    otherwise the midpoint of the unique bracketing pair."""
    it = iter(enumeration)
    try:
        first = next(it)
    except StopIteration:
        raise ValueError("enumeration must be nonempty")
    if first != o.group.identity:
        raise ValueError("enumeration must begin with the identity")
    values: Dict[object, Fraction] = {first: Fraction(0)}
    placed: List[Tuple[Fraction, object]] = [(Fraction(0), first)]
    for g in it:
        if g in values:
            raise ValueError(f"duplicate element {o.group.fmt(g)}")
        lo, hi = 0, len(placed)
        while lo < hi:
            mid = (lo + hi) // 2
            if o.cmp(placed[mid][1], g) == POSITIVE:   # placed[mid] < g
                lo = mid + 1
            else:
                hi = mid
        if lo == 0:
            val = placed[0][0] - 1
        elif lo == len(placed):
            val = placed[-1][0] + 1
        else:
            val = (placed[lo - 1][0] + placed[lo][0]) / 2
        placed.insert(lo, (val, g))
        values[g] = val
    return TMap(values, tuple(enumeration))


def realization_sign_check(o: OrderingOracle, tmap: TMap,
                           ball: BallSpec) -> Optional[object]:
    """First ball element whose oracle sign differs from sign(t(g)); None if
    the realization reproduces every sign."""
    for g in ball:
        if g not in tmap.values:
            raise ValueError(f"ball element {o.group.fmt(g)} missing from the placement")
        if o.sign_fn(g) != sign_of(tmap.values[g]):
            return g
    return None


def action_from_tmap(tmap: TMap, group: Group, closure_ball: Sequence) -> Dict[str, PLMap]:
    """One PL map per generator, interpolating all pairs (t(u), t(s u)) over
    the closure ball, with slope-1 tails."""
    out: Dict[str, PLMap] = {}
    for name, s in group.generators:
        pairs = []
        for u in closure_ball:
            su = group.mul(s, u)
            if u not in tmap.values or su not in tmap.values:
                raise ValueError(f"product {group.fmt(su)} not placed; enlarge the prefix")
            pairs.append((tmap.values[u], tmap.values[su]))
        pairs.sort()
        for (x1, y1), (x2, y2) in zip(pairs, pairs[1:]):
            if y1 >= y2:
                raise ValueError(f"non-monotone data for generator {name}")
        out[name] = PLMap(tuple(pairs))
    return out


@dataclass(frozen=True)
class ActionOnLine:
    """Finitely many named increasing PL maps, acted by free words."""

    maps: Tuple[Tuple[str, PLMap], ...]

    def __post_init__(self):
        object.__setattr__(self, "_inverses",
                           tuple(m.inverse() for _, m in self.maps))

    def rank(self) -> int:
        return len(self.maps)

    def generator(self, index: int) -> PLMap:
        return self.maps[index][1]

    def evaluate(self, w: Word, x: Fraction) -> Fraction:
        """Apply the word (rightmost letter first)."""
        for letter in reversed(w):
            if letter > 0:
                x = self.maps[letter - 1][1].apply(x)
            else:
                x = self._inverses[-letter - 1].apply(x)
        return x

    def evaluate_in_hull(self, w: Word, x: Fraction) -> Optional[Fraction]:
        """Like evaluate, but None as soon as a step leaves the applied map's
        breakpoint range; beyond it the PL extension is artifact, not data."""
        for letter in reversed(w):
            m = self.maps[letter - 1][1] if letter > 0 else self._inverses[-letter - 1]
            pts = m.breakpoints
            if not pts[0][0] <= x <= pts[-1][0]:
                return None
            x = m.apply(x)
        return x

    def orbit(self, w: Word, x: Fraction, count: int) -> List[Fraction]:
        out = []
        for _ in range(count):
            x = self.evaluate(w, x)
            out.append(x)
        return out

    def orbit_in_hull(self, w: Word, x: Fraction, count: int) -> Optional[List[Fraction]]:
        out = []
        for _ in range(count):
            x = self.evaluate_in_hull(w, x)
            if x is None:
                return None
            out.append(x)
        return out


def action_from_realization(tmap: TMap, group: Group, closure_ball: Sequence) -> ActionOnLine:
    maps = action_from_tmap(tmap, group, closure_ball)
    return ActionOnLine(tuple((name, maps[name]) for name, _ in group.generators))


def induced_ordering(action: ActionOnLine, refs: Sequence[Fraction],
                     descriptor: str = "induced") -> OrderingOracle:
    """Sign at the first reference point moved; Zero (partial) if all fixed."""
    if not refs:
        raise ValueError("need at least one reference point")
    refs = [Fraction(r) for r in refs]
    group = free_group(action.rank())

    def s(w: Word) -> Sign:
        for r in refs:
            y = action.evaluate(w, r)
            if y != r:
                return 1 if y > r else -1
        return ZERO

    return OrderingOracle(group, descriptor, s)


def fixes_all_refs(action: ActionOnLine, refs: Sequence[Fraction], w: Word) -> bool:
    """Partiality detector for induced orderings."""
    return all(action.evaluate(w, Fraction(r)) == Fraction(r) for r in refs)


@dataclass(frozen=True)
class ActionCrossing:
    """Crossing witness for an action: words f, g and reals u < w < v."""

    f: Word
    g: Word
    u: Fraction
    v: Fraction
    w: Fraction
    N: int
    M: int
    checked_bound: int


def word_map(action: ActionOnLine, w: Word) -> PLMap:
    """The composed PL map of a word (rightmost letter applied first)."""
    out = None
    for letter in reversed(w):
        m = (action.maps[letter - 1][1] if letter > 0
             else action._inverses[-letter - 1])
        out = m if out is None else m.compose(out)
    if out is None:
        return PLMap(((Fraction(0), Fraction(0)),))
    return out


def _forall_orbit_lt(m: PLMap, fixed: List[Fraction], u: Fraction,
                     v: Fraction) -> bool:
    """Whether m^n(u) < v for every n >= 1, exactly: the orbit is monotone
    and, when increasing, converges to the first fixed point past u."""
    mu = m.apply(u)
    if mu == u:
        return u < v
    if mu < u:
        return mu < v
    i = bisect.bisect_left(fixed, u)
    return i < len(fixed) and fixed[i] <= v


def _forall_orbit_gt(m: PLMap, fixed: List[Fraction], v: Fraction,
                     u: Fraction) -> bool:
    """Whether m^n(v) > u for every n >= 1, exactly (mirror case)."""
    mv = m.apply(v)
    if mv == v:
        return v > u
    if mv > v:
        return mv > u
    i = bisect.bisect_right(fixed, v)
    return i > 0 and fixed[i - 1] >= u


def action_crossing_search(action: ActionOnLine, words: Sequence[Word],
                           grid: Sequence[Fraction],
                           exp_bound: int) -> Optional[ActionCrossing]:
    """Crossing search over the PL action: f and g range over the given words
    (canonical words of the realized ball, or a free-word ball for free
    groups), u, v, w over the grid; first witness in (f, g, u, v, w) order.

    The universally quantified condition is decided exactly from the composed
    word maps' fixed points; the existential exponents N, M are searched up
    to exp_bound, so "None" means no witness at these bounds.
    """
    words = list(words)
    grid = [Fraction(x) for x in grid]
    if not grid or not words:
        return None
    nw, ng = len(words), len(grid)
    maps = [word_map(action, w) for w in words]
    fixed = [m.fixed_points() for m in maps]
    # Bounded orbit extrema back the existential condition (iii).
    max_of = [[max(action.orbit(w, x, exp_bound)) for x in grid] for w in words]
    min_of = [[min(action.orbit(w, x, exp_bound)) for x in grid] for w in words]
    for fi in range(nw):
        for gi in range(nw):
            for ui, u in enumerate(grid):
                mg = max_of[gi][ui]
                for vi, v in enumerate(grid):
                    if v <= u or mg <= u:
                        continue
                    mf = min_of[fi][vi]
                    if mf >= mg or mf >= v:
                        continue
                    if not _forall_orbit_lt(maps[gi], fixed[gi], u, v):
                        continue
                    if not _forall_orbit_gt(maps[fi], fixed[fi], v, u):
                        continue
                    for wi, w_pt in enumerate(grid):
                        # u < w < v with f^N v < w (some N <= bound) and
                        # w < g^M u (some M <= bound).
                        if u < w_pt < v and mf < w_pt < mg:
                            f, g = words[fi], words[gi]
                            N = _first_orbit_exp(action, f, v, w_pt, exp_bound, below=True)
                            M = _first_orbit_exp(action, g, u, w_pt, exp_bound, below=False)
                            return ActionCrossing(f, g, u, v, w_pt, N, M, exp_bound)
    return None


def _first_orbit_exp(action: ActionOnLine, w: Word, x: Fraction,
                     target: Fraction, bound: int, below: bool) -> int:
    for n, y in enumerate(action.orbit(w, x, bound), start=1):
        if (below and y < target) or (not below and y > target):
            return n
    raise AssertionError("exponent not found despite extrema certificate")
