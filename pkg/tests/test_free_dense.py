from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordercalc import dense
from ordercalc.core import (BallSpec, agreement_radius, bi_invariance_violations,
                            conjugate, enumerate_ball, reverse,
                            semigroup_violations, totality_violations)
from ordercalc.freewords import (F2, magnus_oracle, magnus_series,
                                 magnus_sign, parse_word, reduce_word, seed_family,
                                 word_inv, word_mul)


def test_reduce_examples():
    assert reduce_word([1, 2, -2]) == (1,)
    assert reduce_word([]) == ()
    assert parse_word("abAaB") == parse_word("a")
    assert reduce_word(reduce_word([1, 2, -2, -1, 1])) == (1,)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12))
def test_reduce_idempotent_and_inverse(letters):
    w = reduce_word(letters)
    assert reduce_word(w) == w
    assert word_mul(w, word_inv(w)) == ()


def test_magnus_sign_examples():
    assert magnus_sign(parse_word("a")) == 1
    assert magnus_sign(()) == 0
    # [a, b]: coefficient of XY is +1, of YX is -1; XY precedes YX.
    assert magnus_sign(parse_word("abAB")) == 1
    assert magnus_sign(parse_word("BAba")) == -1
    assert magnus_sign(parse_word("A")) == -1
    assert magnus_sign(parse_word("Ab")) == -1   # -X + Y, X first


def test_magnus_series_commutator_coefficients():
    s = magnus_series(parse_word("abAB"), 2)
    assert s[(0, 1)] == 1      # XY
    assert s[(1, 0)] == -1     # YX
    assert s[()] == 1
    assert (0,) not in s and (1,) not in s


def test_magnus_total_left_invariant_on_ball():
    o = magnus_oracle()
    ball = BallSpec(F2, 3)
    assert totality_violations(o, ball) == []
    assert semigroup_violations(o, ball) == []


def test_magnus_bi_invariant_on_samples():
    o = magnus_oracle()
    ball = BallSpec(F2, 2)
    assert bi_invariance_violations(o, ball) == []


def test_seed_family_distinct():
    seeds = seed_family(3)
    assert [s.descriptor for s in seeds][:2] == ["magnus", "reverse(magnus)"]
    ball = BallSpec(F2, 2)
    for i in range(3):
        for j in range(i + 1, 3):
            r = agreement_radius(seeds[i], seeds[j], ball, 2)
            assert r is not None, (i, j)
    with pytest.raises(ValueError):
        seed_family(0)
    assert len(seed_family(8)) == 8


def test_build_box_postconditions():
    o = magnus_oracle()
    for k in (0, 2):
        box = dense.build_box(k, o, 2)
        kf = Fraction(k)
        third = Fraction(1, 3)
        assert box.evaluate(box.g_plus, kf) == kf + third
        assert box.evaluate(box.g_minus, kf) == kf - third
        for w in enumerate_ball(F2, 2):
            y = box.evaluate(w, kf)
            assert kf - third <= y <= kf + third
            assert (y > kf) == (o.sign_fn(w) == 1)
            assert (y == kf) == (w == ())
    assert dense.build_box(0, o, 2).evaluate((1,), Fraction(0)) > 0


def test_build_box_reversed_swaps_extrema():
    o = magnus_oracle()
    b1 = dense.build_box(0, o, 2)
    b2 = dense.build_box(0, reverse(o), 2)
    assert b1.g_plus == b2.g_minus and b1.g_minus == b2.g_plus


def test_build_box_radius_zero_degenerates():
    box = dense.build_box(0, magnus_oracle(), 0)
    assert box.placements == {(): Fraction(0)}
    with pytest.raises(ValueError):
        dense.glue([box])


def test_glue_two_boxes_property_p():
    o = magnus_oracle()
    boxes = [dense.build_box(0, o, 2), dense.build_box(1, reverse(o), 2)]
    ga = dense.glue(boxes)
    assert len(ga.connectors) == 1
    w = ga.connectors[0]
    # connector moves 0 to 1 exactly, iterating inside [-1/3, 4/3]
    x = Fraction(0)
    for letter in reversed(w):
        x = ga.action.evaluate((letter,), x)
        assert -Fraction(1, 3) <= x <= Fraction(4, 3)
    assert x == 1


def test_glue_preserves_box_graphs():
    o = magnus_oracle()
    boxes = [dense.build_box(0, o, 2), dense.build_box(1, o, 2),
             dense.build_box(2, reverse(o), 2)]
    ga = dense.glue(boxes)
    for box in ga.boxes:
        for i, graph in enumerate(box.graphs):
            m = ga.action.maps[i][1]
            for x, y in graph.data:
                assert m.apply(x) == y
    # composite words reach each box center
    for k in range(3):
        assert dense.glued_evaluate(ga, ga.center_word(k), Fraction(0)) == k


def test_glue_guards():
    o = magnus_oracle()
    with pytest.raises(ValueError):
        dense.glue([])
    with pytest.raises(ValueError):
        dense.glue([dense.build_box(0, o, 2), dense.build_box(2, o, 2)])


def test_glued_sign_and_range_guard():
    o = magnus_oracle()
    ga = dense.glue([dense.build_box(0, o, 2), dense.build_box(1, reverse(o), 2)])
    refs = dense.default_refs(ga)
    assert dense.glued_sign(ga, refs, ()) == 0
    for w in enumerate_ball(F2, 2):
        if w != ():
            assert dense.glued_sign(ga, refs, w) == o.sign_fn(w)
    with pytest.raises(ValueError):
        dense.glued_sign(ga, [Fraction(1)], (1,))
    # Iterating a^-1 descends through box 0 into the left slope-one tail and
    # keeps translating away; far enough, the drift guard fires.
    with pytest.raises(dense.RangeEscape):
        dense.glued_evaluate(ga, (-1,) * 256, Fraction(0))


def test_verify_density_three_seeds():
    o = magnus_oracle()
    seeds = [(2, o), (2, reverse(o)), (2, conjugate(o, parse_word("a")))]
    ga = dense.build_glued(seeds)
    reports = dense.verify_density(ga, seeds)
    assert all(r.ok for r in reports)
    assert [r.index for r in reports] == [0, 1, 2]
    assert dense.glued_evaluate(ga, reports[2].center_word, Fraction(0)) == 2


def test_verify_density_detects_corrupted_connector():
    o = magnus_oracle()
    seeds = [(2, o), (2, reverse(o))]
    ga = dense.build_glued(seeds)
    bad = dense.GluedAction(ga.action, ga.boxes,
                            (word_mul(ga.connectors[0], (1,)),), ga.lo, ga.hi)
    reports = dense.verify_density(bad, seeds)
    assert not all(r.ok for r in reports)


def test_rank3_gluing_extra_generator_passes_through():
    # The F_n extension: boxes realize all three generators; gaps are crossed
    # by the first two, the third runs linearly edge to edge.
    m3 = magnus_oracle(3)
    assert m3.sign_fn(parse_word("c")) == 1
    seeds = [(2, m3), (2, reverse(m3))]
    ga = dense.build_glued(seeds)
    assert ga.action.rank() == 3
    reports = dense.verify_density(ga, seeds)
    assert all(r.ok for r in reports)


def test_seed_signs_survive_in_glued_ordering():
    # Box-sign content at the glued level: the box-0 ball signs agree with
    # the induced ordering at reference 0.
    o = magnus_oracle()
    seeds = [(2, o), (2, reverse(o))]
    ga = dense.build_glued(seeds)
    oracle = dense.glued_oracle(ga)
    for w in enumerate_ball(F2, 2):
        assert oracle.sign_fn(w) == o.sign_fn(w)
    assert totality_violations(oracle, BallSpec(F2, 2)) == []


def test_seed_family_count_one_is_magnus():
    seeds = seed_family(1)
    assert len(seeds) == 1 and seeds[0].descriptor == "magnus"


def test_single_box_glue_has_no_connectors():
    ga = dense.glue([dense.build_box(0, magnus_oracle(), 2)])
    assert ga.connectors == ()
    assert ga.center_word(0) == ()


def test_glue_many_seeds_with_corner_resolution():
    # Six-box gluing across heterogeneous seeds: exercises both gap cases,
    # the automatic exit-steepening (plain slope-2 extensions fix a corner
    # here), and conjugated words that stretch past the last box and return.
    seeds = [(2, s) for s in seed_family(6)]
    ga = dense.build_glued(seeds)
    assert any(b.graphs[0].steep != 2 for b in ga.boxes)
    reports = dense.verify_density(ga, seeds)
    assert all(r.ok for r in reports)
    for k in range(6):
        assert dense.glued_evaluate(ga, ga.center_word(k), Fraction(0)) == k


def test_gap_construction_covers_both_cases():
    # magnus -> reverse(magnus) glues through a single climbing generator;
    # the reversed order glues through a climbing/pulling pair.
    m = magnus_oracle()
    ga1 = dense.glue([dense.build_box(0, m, 2), dense.build_box(1, reverse(m), 2)])
    c1 = ga1.connectors[0]
    ga2 = dense.glue([dense.build_box(0, reverse(m), 2), dense.build_box(1, m, 2)])
    c2 = ga2.connectors[0]
    # middle letters record the case: a doubled letter vs a mixed pair
    assert c1 != c2
    for ga in (ga1, ga2):
        assert dense.glued_evaluate(ga, ga.connectors[0], Fraction(0)) == 1
