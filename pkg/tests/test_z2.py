from fractions import Fraction

import pytest

from ordercalc import z2
from ordercalc.core import (BallSpec, conradian_check, crossing_search,
                            left_invariance_violations, reverse,
                            semigroup_violations, totality_violations)
from ordercalc.exact import Quad, SQRT2


P_SQRT2 = z2.psi_x(SQRT2)


def test_z2_sign_examples():
    assert z2.z2_sign(P_SQRT2, (1, 1)) == 1       # 1 + sqrt2 > 0
    assert z2.z2_sign(P_SQRT2, (0, 0)) == 0
    p0 = z2.completion(z2.psi_x(0), z2.PLUS_SIDE)
    assert z2.z2_sign(p0, (0, 1)) == 1
    assert z2.z2_sign(z2.completion(z2.psi_x(0), z2.MINUS_SIDE), (0, 1)) == -1


def test_psi_x_total_vs_partial():
    assert P_SQRT2.kernel() is None
    assert not P_SQRT2.is_partial
    p32 = z2.psi_x(Fraction(3, 2))
    assert p32.is_partial
    assert p32.kernel() == (-3, 2)
    p0 = z2.psi_x(0)
    assert p0.kernel() == (0, 1)
    with pytest.raises(ValueError):
        z2.z2_sign(p0, (0, 1))


def test_completion():
    p0 = z2.psi_x(0)
    tot = z2.completion(p0, z2.PLUS_SIDE)
    assert not tot.is_partial
    with pytest.raises(ValueError):
        z2.completion(P_SQRT2, z2.PLUS_SIDE)
    pinf = z2.completion(z2.psi_infinity(), z2.PLUS_SIDE)
    assert z2.z2_sign(pinf, (1, 0)) == 1
    assert z2.z2_sign(pinf, (-1, 0)) == -1
    pinf_m = z2.completion(z2.psi_infinity(), z2.MINUS_SIDE)
    assert z2.z2_sign(pinf_m, (1, 0)) == -1


def test_oracle_cmp_examples():
    o = z2.oracle(P_SQRT2)
    assert o.cmp((0, 0), (1, 1)) == 1
    # psi((1,0) - (1,1)) = psi(0,-1) = -sqrt2 < 0, so (1,0) < (1,1) fails:
    assert o.cmp((1, 1), (1, 0)) == -1
    assert o.cmp((2, -3), (2, -3)) == 0


def test_oracle_suites_radius5():
    for ordering in [P_SQRT2,
                     z2.completion(z2.psi_x(0), z2.PLUS_SIDE),
                     z2.completion(z2.psi_x(Fraction(3, 2)), z2.MINUS_SIDE),
                     z2.completion(z2.psi_infinity(), z2.PLUS_SIDE)]:
        o = z2.oracle(ordering)
        ball = BallSpec(z2.Z2, 5)
        assert totality_violations(o, ball) == []
        assert semigroup_violations(o, ball) == []
        small = BallSpec(z2.Z2, 2)
        assert left_invariance_violations(o, small) == []


def test_conradian_and_no_crossings():
    for ordering in [P_SQRT2, z2.completion(z2.psi_x(0), z2.PLUS_SIDE)]:
        o = z2.oracle(ordering)
        assert conradian_check(o, BallSpec(z2.Z2, 3)) is None
        assert crossing_search(o, BallSpec(z2.Z2, 2), 4) is None


def test_completion_limit_check_radius3():
    # Constraint bound: min |m + 0*n| / |n| over the ball is 1/2 (at (1, 2)),
    # quartered for headroom.
    delta, shifted = z2.completion_limit_check(0, z2.PLUS_SIDE, 3)
    assert delta == Fraction(1, 8)
    assert delta <= Fraction(1, 7)
    completed = z2.completion(z2.psi_x(0), z2.PLUS_SIDE)
    for v in BallSpec(z2.Z2, 3):
        assert z2.z2_sign(shifted, v) == z2.z2_sign(completed, v)


def test_completion_limit_check_radius1():
    delta, _ = z2.completion_limit_check(0, z2.PLUS_SIDE, 1)
    assert delta == Fraction(1, 2)


def test_completion_limit_check_minus_side():
    delta, shifted = z2.completion_limit_check(0, z2.MINUS_SIDE, 3)
    completed = z2.completion(z2.psi_x(0), z2.MINUS_SIDE)
    assert shifted.b.sign() < 0    # x - delta*sqrt2/2 on the left
    for v in BallSpec(z2.Z2, 3):
        assert z2.z2_sign(shifted, v) == z2.z2_sign(completed, v)


def test_irrational_orderings_archimedean_on_ball():
    # No proper convex subgroup at ball scale: any nonzero w eventually
    # overtakes any v in absolute position.
    o = z2.oracle(P_SQRT2)
    ball = [v for v in BallSpec(z2.Z2, 3) if v != (0, 0)]
    for v in ball:
        for w in ball:
            found = False
            for n in range(1, 40):
                wn = (n * w[0], n * w[1])
                if o.cmp(v, wn) == 1 or o.cmp(v, (-wn[0], -wn[1])) == 1:
                    found = True
                    break
            assert found, (v, w)


def test_reverse_is_negated_functional_with_flipped_side():
    plus = z2.oracle(z2.completion(z2.psi_x(0), z2.PLUS_SIDE))
    negated = z2.oracle(z2.Z2Ordering(Quad.of(-1), Quad.of(0), z2.MINUS_SIDE))
    rev = reverse(plus)
    for v in BallSpec(z2.Z2, 3):
        assert rev.sign_fn(v) == negated.sign_fn(v)
