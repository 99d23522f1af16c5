"""Cross-checks of the exact for-all-n deciders against brute-force iteration.

A decider claiming "holds for every n" must agree with a deep bounded scan; a
bounded scan that finds a violation must force the decider to say no.  These
harnesses hit random triples, so direction or tie-break slips in any decider
surface quickly.
"""

import random
from fractions import Fraction

from ordercalc import catalog, dynreal, z2
from ordercalc.affine import SmirnovParam, bs_conradian, smirnov_oracle
from ordercalc.core import BallSpec, NEGATIVE, POSITIVE, enumerate_ball
from ordercalc.exact import Quad, SQRT2

DEPTH = 40


def brute_forall(o, g, u, v, want, depth=DEPTH):
    """Whether g^n u stays strictly on the want side of v for n <= depth."""
    G = o.group
    x = u
    for _ in range(depth):
        x = G.mul(g, x)
        c = o.cmp(x, v)           # POSITIVE means g^n u < v
        if want == NEGATIVE and c != POSITIVE:
            return False
        if want == POSITIVE and c != NEGATIVE:
            return False
    return True


def crosscheck(o, ball, rng, samples=300):
    elems = list(ball.elements)
    for _ in range(samples):
        g, u, v = rng.choice(elems), rng.choice(elems), rng.choice(elems)
        for want in (NEGATIVE, POSITIVE):
            exact = o.forall_cmp(g, u, v, want)
            assert exact is not None
            bounded = brute_forall(o, g, u, v, want)
            if exact:
                assert bounded, (o.descriptor, g, u, v, want)
            if not bounded:
                assert not exact, (o.descriptor, g, u, v, want)
            # the bounded scan can only overclaim on convergent orbits, so
            # any disagreement must be of the bounded-true/exact-false kind
            if exact != bounded:
                assert bounded and not exact


def test_smirnov_irrational_decider():
    o = smirnov_oracle(SmirnovParam(SQRT2))
    crosscheck(o, BallSpec(o.group, 2), random.Random(1))


def test_smirnov_sided_decider():
    for side in (1, -1):
        o = smirnov_oracle(SmirnovParam(Quad.of(Fraction(3, 2)), side))
        crosscheck(o, BallSpec(o.group, 2), random.Random(2))


def test_bs_conradian_deciders():
    for k in (1, 2, 3, 4):
        o = bs_conradian(k)
        crosscheck(o, BallSpec(o.group, 2), random.Random(3))


def test_z2_deciders():
    for ordering in [z2.psi_x(SQRT2),
                     z2.completion(z2.psi_x(0), z2.PLUS_SIDE),
                     z2.completion(z2.psi_x(Fraction(3, 2)), z2.MINUS_SIDE),
                     z2.completion(z2.psi_infinity(), z2.PLUS_SIDE)]:
        o = z2.oracle(ordering)
        crosscheck(o, BallSpec(z2.Z2, 3), random.Random(4))


def test_tararin_deciders():
    for sv in ((1, 1), (1, -1), (-1, 1)):
        o = catalog.t_ordering(sv)
        crosscheck(o, BallSpec(o.group, 3), random.Random(5))
    o3 = catalog.t_ordering((1, -1, 1))
    crosscheck(o3, BallSpec(o3.group, 2), random.Random(6), samples=200)


def test_cn_deciders():
    for o in catalog.enumerate_cn_corderings(1)[:4]:
        crosscheck(o, BallSpec(o.group, 2), random.Random(7), samples=200)


def test_heisenberg_deciders():
    for inner, top in [(z2.psi_x(SQRT2), 1),
                       (z2.completion(z2.psi_x(0), z2.PLUS_SIDE), -1),
                       (z2.completion(z2.psi_infinity(), z2.PLUS_SIDE), 1)]:
        o = catalog.h_ordering(inner, top)
        crosscheck(o, BallSpec(o.group, 2), random.Random(8), samples=200)


def test_pl_orbit_decider_against_iteration():
    # The action-level for-all-n decision from composed-map fixed points.
    o = smirnov_oracle(SmirnovParam(SQRT2))
    G = o.group
    tmap = dynreal.build_tmap(o, enumerate_ball(G, 3))
    action = dynreal.action_from_realization(tmap, G, enumerate_ball(G, 2))
    words = dynreal.realized_ball_words(G, 2)
    grid = sorted(tmap.values[g] for g in enumerate_ball(G, 2))
    rng = random.Random(9)
    for _ in range(200):
        w = rng.choice(words)
        u, v = rng.choice(grid), rng.choice(grid)
        m = dynreal.word_map(action, w)
        fixed = m.fixed_points()
        exact = dynreal._forall_orbit_lt(m, fixed, u, v)
        orbit = action.orbit(w, u, DEPTH)
        bounded = all(x < v for x in orbit)
        if exact:
            assert bounded
        if not bounded:
            assert not exact
        exact_gt = dynreal._forall_orbit_gt(m, fixed, v, u)
        orbit_v = action.orbit(w, v, DEPTH)
        bounded_gt = all(x > u for x in orbit_v)
        if exact_gt:
            assert bounded_gt
        if not bounded_gt:
            assert not exact_gt
