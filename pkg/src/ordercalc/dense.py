"""Gluing dynamical realizations of a free group into one action whose
conjugates sweep out every seed ordering.

Each seed ordering is realized over a ball and rescaled into the square
[k-1/3, k+1/3]^2 around an integer k (a box); inside the box, word evaluation
at k reproduces the seed's signs on the ball.  Consecutive boxes are bridged
across the gap [k+1/3, k+2/3] by redefining the generators there so that some
short word pushes k+1/3 to k+2/3 (one generator climbing through the gap, or
one climbing and one pulling back); composing with the in-box words that move
centers to edges yields a connector word sending k to k+1 exactly.

Primary generator graphs extend beyond their extreme data pairs with slope 2
rightward and slope 1/2 leftward, so they exit each box square transversally;
inverse directions are exact mirror images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import OrderingOracle, Sign, ZERO, enumerate_ball
from .dynreal import ActionOnLine, PLMap, build_tmap
from .exact import sign_of
from .freewords import F2, Word, word_fmt, word_inv, word_mul

THIRD = Fraction(1, 3)

DEFAULT_EXIT_STEEPNESS = Fraction(2)


@dataclass(frozen=True)
class BoxGraph:
    """One primary generator's graph inside a box: data pairs plus the two
    exit extensions (slope ``steep`` rightward, 1/steep leftward).  Defined on
    the whole line (extensions run on).  The slope pair (1/s, s) is mirror
    invariant, so inverse directions are exact mirror images."""

    data: Tuple[Tuple[Fraction, Fraction], ...]
    steep: Fraction = DEFAULT_EXIT_STEEPNESS

    def value(self, x: Fraction) -> Fraction:
        pts = self.data
        if x <= pts[0][0]:
            return pts[0][1] + (x - pts[0][0]) / self.steep
        if x >= pts[-1][0]:
            return pts[-1][1] + self.steep * (x - pts[-1][0])
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        raise AssertionError("unreachable")

    def mirror(self) -> "BoxGraph":
        # Data is increasing in both coordinates, so the swapped pairs are
        # already sorted.
        return BoxGraph(tuple((y, x) for x, y in self.data), self.steep)

    def crossing(self, level: Fraction) -> Fraction:
        """The unique x with value(x) == level (the graph is increasing)."""
        pts = self.data
        if level <= pts[0][1]:
            return pts[0][0] + (level - pts[0][1]) * self.steep
        if level >= pts[-1][1]:
            return pts[-1][0] + (level - pts[-1][1]) / self.steep
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if y1 <= level <= y2:
                return x1 + (level - y1) * (x2 - x1) / (y2 - y1)
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class BoxRealization:
    """A seed ordering realized inside [k-1/3, k+1/3]^2."""

    k: int
    radius: int
    descriptor: str
    placements: Dict[Word, Fraction]          # word -> rescaled position
    graphs: Tuple[BoxGraph, ...]              # one per primary generator
    g_plus: Word                              # ball maximum, placed at k+1/3
    g_minus: Word                             # ball minimum, placed at k-1/3

    def direction_graph(self, letter: int) -> BoxGraph:
        g = self.graphs[abs(letter) - 1]
        return g if letter > 0 else g.mirror()

    def evaluate(self, w: Word, x: Fraction) -> Fraction:
        for letter in reversed(w):
            x = self.direction_graph(letter).value(x)
        return x


def build_box(k: int, o: OrderingOracle, n: int) -> BoxRealization:
    """Dynamical realization of the ordering over the radius-n ball, rescaled
    so the ball extremes land exactly on k -+ 1/3.

    Verifies the sign postconditions: every ball word evaluated at k stays in
    [k-1/3, k+1/3] with the sign of its oracle value.
    """
    group = o.group
    rank = len(group.generators)
    ball = enumerate_ball(group, n)
    tmap = build_tmap(o, ball)
    if n == 0:
        return BoxRealization(k, 0, o.descriptor, {(): Fraction(k)}, (),
                              (), ())
    t_min = min(tmap.values.values())
    t_max = max(tmap.values.values())
    if not t_min < 0 < t_max:
        raise ValueError("ball extremes must straddle the identity")
    kf = Fraction(k)

    def rescale(t: Fraction) -> Fraction:
        if t <= 0:
            return kf + THIRD * t / (-t_min)
        return kf + THIRD * t / t_max

    placements = {w: rescale(tmap.values[w]) for w in ball}
    graphs = []
    for i in range(rank):
        s = (i + 1,)
        pairs = {}
        for u in ball:
            su = word_mul(s, u)
            if su in placements:
                pairs[placements[u]] = placements[su]
        data = tuple(sorted(pairs.items()))
        for (x1, y1), (x2, y2) in zip(data, data[1:]):
            if y1 >= y2:
                raise AssertionError(f"non-monotone box data for generator {i + 1}")
        graphs.append(BoxGraph(data))
    g_plus = max(ball, key=lambda w: placements[w])
    g_minus = min(ball, key=lambda w: placements[w])
    box = BoxRealization(k, n, o.descriptor, placements, tuple(graphs),
                         g_plus, g_minus)
    # Sign postconditions: evaluation at k reproduces the ordering's signs.
    if box.evaluate(g_plus, kf) != kf + THIRD:
        raise AssertionError("ball maximum does not reach k + 1/3")
    if box.evaluate(g_minus, kf) != kf - THIRD:
        raise AssertionError("ball minimum does not reach k - 1/3")
    for w in ball:
        y = box.evaluate(w, kf)
        if not kf - THIRD <= y <= kf + THIRD:
            raise AssertionError(f"evaluation of {word_fmt(w)} escapes the box")
        if sign_of(y - kf) != o.sign_fn(w):
            raise AssertionError(f"sign mismatch at {word_fmt(w)}")
    return box


@dataclass(frozen=True)
class GluedAction:
    """The assembled action: final generator maps, per-gap connectors, and
    the words whose composites move 0 to each box center."""

    action: ActionOnLine
    boxes: Tuple[BoxRealization, ...]
    connectors: Tuple[Word, ...]      # connectors[k] sends k to k+1
    lo: Fraction
    hi: Fraction

    def center_word(self, k: int) -> Word:
        w: Word = ()
        for c in self.connectors[:k]:
            w = word_mul(c, w)
        return w


class RangeEscape(RuntimeError):
    """Word evaluation left the constructed range; enlarge K or the radii."""


def _letter_name(letter: int) -> str:
    return word_fmt((letter,))


def _gap_pieces(left: BoxRealization, right: BoxRealization):
    """Gap construction between consecutive boxes.

    Returns (pieces, w_prime) where pieces maps each primary generator index
    to its anchor points across the gap and w_prime is the word with
    w_prime(left edge P) = right edge Q.
    """
    k = left.k
    P = Fraction(k) + THIRD
    Q = Fraction(k + 1) - THIRD
    x0 = Fraction(k) + Fraction(1, 2)
    # The case analysis only ever involves the first two generators; any
    # further generators cross the gap linearly (the rank > 2 extension).
    directions = [1, -1, 2, -2]
    vP = {}
    vQ = {}
    for d in directions:
        vP[d] = left.direction_graph(d).value(P)
        vQ[d] = right.direction_graph(d).value(Q)
        if vP[d] == P or vQ[d] == Q:
            raise AssertionError(
                f"direction {_letter_name(d)} fixes a box corner; "
                "exit steepening should have resolved this")
    up_P = [d for d in directions if vP[d] > P]
    up_Q = [d for d in directions if vQ[d] > Q]
    case1 = [d for d in up_P if d in up_Q]

    def left_anchor(d: int):
        if d in vP:
            vpd = vP[d]
        else:
            vpd = left.direction_graph(d).value(P)
        if vpd > P:
            return (left.direction_graph(d).crossing(P), P)
        return (P, vpd)

    def right_anchor(d: int):
        if d in vQ:
            vqd = vQ[d]
        else:
            vqd = right.direction_graph(d).value(Q)
        if vqd >= Q:
            return (Q, vqd)
        return (right.direction_graph(d).crossing(Q), Q)

    anchors: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
    if case1:
        h = case1[0]
        anchors[h] = [left_anchor(h), (P, x0), (x0, Q), right_anchor(h)]
        other = 2 if abs(h) == 1 else 1
        anchors[other] = [left_anchor(other), right_anchor(other)]
        w_prime: Word = (h, h)
    else:
        if len(up_P) != 2:
            raise AssertionError("expected one climbing direction per generator")
        h, f = up_P[0], up_P[1]
        anchors[h] = [left_anchor(h), (P, x0), right_anchor(h)]
        anchors[f] = [left_anchor(f), (Q, x0), right_anchor(f)]
        w_prime = word_mul(word_inv((f,)), (h,))
    for extra in range(3, len(left.graphs) + 1):
        anchors[extra] = [left_anchor(extra), right_anchor(extra)]
    # Fold direction anchors onto the primary generators (mirror inverses).
    pieces: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
    for d, pts in anchors.items():
        if d > 0:
            pieces.setdefault(d, []).extend(pts)
        else:
            pieces.setdefault(-d, []).extend((y, x) for x, y in pts)
    for idx, pts in pieces.items():
        pts.sort()
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 == x2 or y1 >= y2:
                raise AssertionError(f"non-monotone gap pieces for generator {idx}")
    return pieces, w_prime


def _with_steepness(box: BoxRealization, steep: Fraction) -> BoxRealization:
    graphs = tuple(BoxGraph(g.data, steep) for g in box.graphs)
    return BoxRealization(box.k, box.radius, box.descriptor, box.placements,
                          graphs, box.g_plus, box.g_minus)


def _resolve_corner_fixes(boxes: List[BoxRealization]) -> List[BoxRealization]:
    """Steepen exit extensions until no direction fixes a gap corner.

    Only the extensions depend on the steepness, and for fixed data exactly
    one slope value sends an extension through a given corner, so doubling
    the offending box's steepness terminates.  In-box data (the sign
    content) is untouched.
    """
    boxes = list(boxes)
    for _ in range(64):
        clean = True
        for i in range(len(boxes) - 1):
            left, right = boxes[i], boxes[i + 1]
            P = Fraction(left.k) + THIRD
            Q = Fraction(right.k) - THIRD
            for d in (1, -1, 2, -2):
                if left.direction_graph(d).value(P) == P:
                    boxes[i] = _with_steepness(left, left.graphs[0].steep * 2)
                    clean = False
                    break
                if right.direction_graph(d).value(Q) == Q:
                    boxes[i + 1] = _with_steepness(right, right.graphs[0].steep * 2)
                    clean = False
                    break
            if not clean:
                break
        if clean:
            return boxes
    raise AssertionError("corner fixes persist after steepening; data degenerate")


def glue(boxes: Sequence[BoxRealization]) -> GluedAction:
    """Assemble the final generator maps over consecutive boxes.

    Inside every box square the graphs coincide with the box graphs; on each
    gap the case construction applies; beyond the outermost boxes the maps
    are affine of slope one.  Exit extensions steepen automatically where
    they would otherwise fix a gap corner.
    """
    boxes = list(boxes)
    if not boxes:
        raise ValueError("need at least one box")
    for b1, b2 in zip(boxes, boxes[1:]):
        if b2.k != b1.k + 1:
            raise ValueError("boxes must sit at consecutive integers")
    if any(b.radius < 1 for b in boxes):
        raise ValueError("boxes must have radius >= 1")
    boxes = _resolve_corner_fixes(boxes)
    rank = len(boxes[0].graphs)
    points: Dict[int, Dict[Fraction, Fraction]] = {i + 1: {} for i in range(rank)}

    def add(idx: int, x: Fraction, y: Fraction):
        prev = points[idx].get(x)
        if prev is not None and prev != y:
            raise AssertionError(f"conflicting anchors for generator {idx} at {x}")
        points[idx][x] = y

    for box in boxes:
        for i, graph in enumerate(box.graphs):
            for x, y in graph.data:
                add(i + 1, x, y)
    connectors: List[Word] = []
    for left, right in zip(boxes, boxes[1:]):
        pieces, w_prime = _gap_pieces(left, right)
        for idx, pts in pieces.items():
            for x, y in pts:
                add(idx, x, y)
        w_out = left.g_plus                      # k -> k + 1/3
        w_in = word_inv(right.g_minus)           # k + 2/3 -> k + 1
        connectors.append(word_mul(w_in, word_mul(w_prime, w_out)))
    lo = boxes[0].k - THIRD
    hi = boxes[-1].k + THIRD
    maps = []
    for i in range(rank):
        pts = points[i + 1]
        first = boxes[0].graphs[i]
        last = boxes[-1].graphs[i]
        add(i + 1, lo, first.value(lo))
        add(i + 1, hi, last.value(hi))
        bp = tuple(sorted(pts.items()))
        maps.append((_letter_name(i + 1), PLMap(bp)))
    action = ActionOnLine(tuple(maps))
    ga = GluedAction(action, tuple(boxes), tuple(connectors), lo, hi)
    _verify_glue(ga)
    return ga


def _verify_glue(ga: GluedAction):
    """Interior graphs unchanged; connectors move centers one step right and
    keep their iterates inside the enclosing two-box window."""
    for box in ga.boxes:
        for i, graph in enumerate(box.graphs):
            m = ga.action.maps[i][1]
            for x, y in graph.data:
                if m.apply(x) != y:
                    raise AssertionError(
                        f"gluing moved a box data point of generator {i + 1}")
    for k, c in enumerate(ga.connectors):
        x = Fraction(k)
        lo, hi = Fraction(k) - THIRD, Fraction(k + 1) + THIRD
        for letter in reversed(c):
            x = ga.action.evaluate((letter,), x)
            if not lo <= x <= hi:
                raise AssertionError(f"connector {word_fmt(c)} escapes its window")
        if x != k + 1:
            raise AssertionError(f"connector {word_fmt(c)} sends {k} to {x}")


def glued_evaluate(ga: GluedAction, w: Word, x: Fraction) -> Fraction:
    """Word evaluation with the range guard.

    Iterates may legitimately pass through the slope-one tails (conjugated
    words stretch past the last box and come back); an image drifting beyond
    the constructed range by more than the range's own span signals dynamics
    the boxes do not model, i.e. too small a K or radius.
    """
    y = ga.action.evaluate(w, x)
    margin = ga.hi - ga.lo + 1
    if not ga.lo - margin <= y <= ga.hi + margin:
        raise RangeEscape(
            f"evaluation of {word_fmt(w)} left [{ga.lo}, {ga.hi}]")
    return y


def default_refs(ga: GluedAction) -> List[Fraction]:
    refs = [Fraction(box.k) for box in ga.boxes]
    refs += [ga.lo, ga.hi]
    refs += [Fraction(box.k) + THIRD for box in ga.boxes]
    refs += [Fraction(box.k) - THIRD for box in ga.boxes]
    return refs


def glued_sign(ga: GluedAction, refs: Sequence[Fraction], w: Word) -> Sign:
    """Induced-ordering sign at the first reference point moved."""
    if not refs or refs[0] != 0:
        raise ValueError("reference list must start with 0")
    for r in refs:
        y = glued_evaluate(ga, w, Fraction(r))
        if y != r:
            return 1 if y > r else -1
    return ZERO


def glued_oracle(ga: GluedAction, refs: Optional[Sequence[Fraction]] = None) -> OrderingOracle:
    refs = list(refs) if refs is not None else default_refs(ga)
    return OrderingOracle(F2, "glued", lambda w: glued_sign(ga, refs, w))


@dataclass(frozen=True)
class SeedReport:
    index: int
    descriptor: str
    center_word: Word
    center_ok: bool
    agreed: bool
    witness: Optional[Word]

    @property
    def ok(self) -> bool:
        return self.center_ok and self.agreed


def build_glued(seeds: Sequence[Tuple[int, OrderingOracle]]) -> GluedAction:
    """One box per seed at k = 0, 1, ..., glued."""
    return glue([build_box(k, o, n) for k, (n, o) in enumerate(seeds)])


def verify_density(ga: GluedAction,
                   seeds: Sequence[Tuple[int, OrderingOracle]],
                   refs: Optional[Sequence[Fraction]] = None) -> List[SeedReport]:
    """For each seed k: the composite connector word w_k moves 0 to k exactly,
    and conjugating the glued ordering by w_k^-1 reproduces the seed on its
    ball.  This is the desk-scale content of the dense-orbit property."""
    refs = list(refs) if refs is not None else default_refs(ga)
    reports = []
    for k, (n, o) in enumerate(seeds):
        w_k = ga.center_word(k)
        center_ok = glued_evaluate(ga, w_k, Fraction(0)) == k
        w_k_inv = word_inv(w_k)
        witness = None
        for h in enumerate_ball(F2, n):
            conj = word_mul(w_k_inv, word_mul(h, w_k))
            if glued_sign(ga, refs, conj) != o.sign_fn(h):
                witness = h
                break
        reports.append(SeedReport(k, o.descriptor, w_k, center_ok,
                                  witness is None, witness))
    return reports
