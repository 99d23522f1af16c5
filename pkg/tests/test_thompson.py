import random
from fractions import Fraction

import pytest

from ordercalc import thompson as th
from ordercalc import z2
from ordercalc.core import (BallSpec, bi_invariance_violations, enumerate_ball,
                            semigroup_violations, totality_violations)
from ordercalc.exact import Quad, SQRT2

F = Fraction


def test_generators_are_valid_and_standard():
    assert th.X0.breakpoints == ((F(0), F(0)), (F(1, 2), F(1, 4)),
                                 (F(3, 4), F(1, 2)), (F(1), F(1)))
    assert th.X1.apply(F(1, 4)) == F(1, 4)          # identity below 1/2
    assert th.X1.apply(F(3, 4)) == F(5, 8)
    stats = th.breakpoint_stats(th.X0)
    assert stats == (F(0), F(1), F(1, 2), F(2))


def test_element_validation():
    with pytest.raises(ValueError):
        th.FElement(((F(0), F(0)), (F(1, 3), F(1, 2)), (F(1), F(1))))   # non-dyadic
    with pytest.raises(ValueError):
        th.FElement(((F(0), F(0)), (F(1, 2), F(1, 3)), (F(1), F(1))))   # non-dyadic y
    with pytest.raises(ValueError):
        th.FElement(((F(0), F(0)), (F(1, 4), F(3, 4)), (F(1), F(1))))   # slope 3
    with pytest.raises(ValueError):
        th.FElement(((F(0), F(0)),))


def test_compose_invert_examples():
    assert th.f_compose(th.X0, th.f_invert(th.X0)) == th.IDENTITY
    assert th.f_compose(th.IDENTITY, th.X0) == th.X0
    sq = th.f_compose(th.X0, th.X0)
    assert sq.slope_right(F(0)) == F(1, 4)
    assert th.f_invert(th.IDENTITY) == th.IDENTITY


def test_closure_on_sampled_semigroup():
    # compose/invert keep all invariants up to word length 5 over {x0, x1};
    # the FElement constructor revalidates dyadicity and slopes on every
    # construction, so building the elements is the check.
    import itertools
    for length in range(1, 6):
        for word in itertools.product((th.X0, th.X1), repeat=length):
            f = th.IDENTITY
            for g in word:
                f = th.f_compose(f, g)
            th.f_invert(f)
    ball = enumerate_ball(th.THOMPSON_F, 3)
    assert len(ball) == 53                       # free-ball count: no relations at this radius
    for f in ball[:25]:
        th.f_invert(f)
        th.f_compose(f, th.X1)


def test_breakpoint_stats_support_bounds():
    f = th.scaled_into(th.X0, F(1, 4), F(1, 2))
    x_m, x_p, s_m, s_p = th.breakpoint_stats(f)
    assert F(1, 4) <= x_m and x_p <= F(1, 2)
    with pytest.raises(ValueError):
        th.breakpoint_stats(th.IDENTITY)


def test_isolated_sign_examples():
    assert th.isolated_sign("xminus+", th.X0) == -1     # slope 1/2 at 0
    assert th.isolated_sign("0xminus+-", th.X0) == -1
    f = th.scaled_into(th.f_invert(th.X0), F(1, 4), F(1, 2))
    # x_minus = 1/4 != 0 with slope 2 > 1: the exotic rule flips it.
    assert th.isolated_sign("xminus+", f) == 1
    assert th.isolated_sign("0xminus+-", f) == -1
    assert th.isolated_sign("xminus+", th.IDENTITY) == 0


def test_in_derived():
    assert th.in_derived(th.IDENTITY)
    assert not th.in_derived(th.X0)
    assert not th.in_derived(th.X1)
    assert th.in_derived(th.scaled_into(th.X0, F(1, 4), F(1, 2)))


def test_lambda_sign_examples():
    lex_first = z2.completion(z2.psi_infinity(), z2.PLUS_SIDE)
    # log pair of x0 is (-1, 1); the (0,1)-functional reads the second entry.
    assert th.lambda_sign(lex_first, "xminus+", th.X0) == 1
    first_coord = z2.completion(z2.psi_x(0), z2.PLUS_SIDE)
    assert th.lambda_sign(first_coord, "xminus+", th.X0) == -1
    inner = th.scaled_into(th.X0, F(1, 4), F(1, 2))
    for kind in th.FPRIME_KINDS:
        assert (th.lambda_sign(first_coord, kind, inner)
                == th.isolated_sign(kind, inner))
    assert th.lambda_sign(first_coord, "xminus+", th.IDENTITY) == 0
    with pytest.raises(ValueError):
        th.lambda_sign(z2.psi_x(0), "xminus+", th.X0)   # partial Z^2 part


def test_conrad_hom_examples():
    assert th.conrad_hom(1, 0, th.X0) == Quad.of(-1)
    assert th.conrad_hom(0, 1, th.X0) == Quad.of(1)
    assert th.conrad_hom(SQRT2, 1, th.X0) == Quad(1, -1)
    inner = th.scaled_into(th.X0, F(1, 4), F(1, 2))
    assert th.conrad_hom(1, 2, inner) == Quad.of(0)
    with pytest.raises(ValueError):
        th.conrad_hom(0, 0, th.X0)


def test_conrad_hom_additive_on_200_sampled_pairs():
    words = enumerate_ball(th.THOMPSON_F, 5)
    rng = random.Random(20260809)
    pairs = [(rng.choice(words), rng.choice(words)) for _ in range(200)]
    a, b = SQRT2, Quad.of(F(3, 7))
    for f, g in pairs:
        assert (th.conrad_hom(a, b, th.f_compose(f, g))
                == th.conrad_hom(a, b, f) + th.conrad_hom(a, b, g))


def test_conrad_hom_monotone_under_matching_lambda():
    lam = th.lambda_oracle(z2.psi_x(SQRT2), "xminus+")
    for f in th.default_sample():
        tau = th.conrad_hom(1, SQRT2, f)
        if tau.sign() != 0:
            assert lam.sign_fn(f) == tau.sign()


def test_sigma_examples():
    assert th.sigma_conj(th.IDENTITY) == th.IDENTITY
    assert th.sigma_conj(th.sigma_conj(th.X0)) == th.X0
    s = th.sigma_conj(th.X0)
    # endpoint slopes swap: right slope at 0 of sigma(x0) = left slope at 1 of x0
    assert s.slope_right(F(0)) == F(2)
    assert s.slope_left(F(1)) == F(1, 2)


def test_isolated_orderings_pass_ordering_suites():
    ball = BallSpec(th.THOMPSON_F, 2)
    for kind in th.ISOLATED_KINDS:
        o = th.isolated_oracle(kind)
        assert totality_violations(o, ball) == []
        assert semigroup_violations(o, ball) == []
        assert bi_invariance_violations(o, ball) == []


def test_lambda_orderings_pass_ordering_suites():
    ball = BallSpec(th.THOMPSON_F, 2)
    o = th.lambda_oracle(z2.psi_x(SQRT2), "xminus+")
    assert totality_violations(o, ball) == []
    assert semigroup_violations(o, ball) == []
    assert bi_invariance_violations(o, ball) == []


def test_classification_checks_default_sample():
    report = th.classification_checks(th.default_sample())
    assert report.ok, report.failures[:5]


def test_classification_checks_catches_fault_injection():
    # Feeding a deliberately wrong rule through the sample must break the
    # sigma identities: verify the checker is not vacuous.
    sample = th.default_sample()
    flipped = [th.f_invert(f) for f in sample[:3]]
    report = th.classification_checks(sample + flipped)
    assert report.ok          # inverses are legitimate sample members
    assert th.classification_checks([]).vacuous


def test_restriction_identities_pointwise():
    for f in th.default_sample():
        if not th.in_derived(f):
            continue
        for exotic, plain in th.RESTRICTION_PAIRS:
            assert th.isolated_sign(exotic, f) == th.isolated_sign(plain, f)


def test_sigma_identities_pointwise():
    for f in th.default_sample():
        for kind, image in th.SIGMA_PAIRS:
            assert (th.isolated_sign(kind, th.sigma_conj(f))
                    == th.isolated_sign(image, f))


def test_determining_sets_certify_isolation():
    lambdas = [(z2o, fk) for z2o in th._default_lambda_z2s()
               for fk in th.FPRIME_KINDS]
    for kind in th.ISOLATED_KINDS:
        ds = th.determining_set(kind)
        assert ds
        assert all(th.isolated_sign(kind, f) > 0 for f in ds)
        for other in th.ISOLATED_KINDS:
            if other != kind:
                assert any(th.isolated_sign(other, f) < 0 for f in ds)
        for z2o, fk in lambdas:
            assert any(th.lambda_sign(z2o, fk, f) < 0 for f in ds)


def test_support_locality_of_sign():
    # Elements supported in a closed dyadic interval have their sign decided
    # by slopes inside the interval alone.
    lo, hi = F(1, 4), F(1, 2)
    f = th.scaled_into(th.X0, lo, hi)
    g = th.scaled_into(th.f_invert(th.X0), lo, hi)
    for elem in (f, g):
        x_m, x_p, s_m, s_p = th.breakpoint_stats(elem)
        assert lo <= x_m and x_p <= hi
        assert th.isolated_sign("xminus+", elem) == (1 if s_m > 1 else -1)


def test_element_json_roundtrip():
    data = th.X1.to_json()
    assert th.FElement.from_json(data) == th.X1


def test_sigma_and_restriction_identities_on_word_ball():
    # Pointwise over every ball element, not only the curated sample.
    ball = enumerate_ball(th.THOMPSON_F, 4)
    for f in ball:
        if f.is_identity:
            continue
        for kind, image in th.SIGMA_PAIRS:
            assert (th.isolated_sign(kind, th.sigma_conj(f))
                    == th.isolated_sign(image, f))
        if th.in_derived(f):
            for exotic, plain in th.RESTRICTION_PAIRS:
                assert th.isolated_sign(exotic, f) == th.isolated_sign(plain, f)


def test_isolated_bi_invariance_radius3_sampled_conjugators():
    ball = enumerate_ball(th.THOMPSON_F, 3)
    conjugators = [th.X0, th.X1, th.f_invert(th.X0),
                   th.f_compose(th.X0, th.X1)]
    for kind in ("xminus+", "0xminus+-"):
        o = th.isolated_oracle(kind)
        for h in conjugators:
            for f in ball:
                assert o.sign_fn(th.THOMPSON_F.conj(h, f)) == o.sign_fn(f)
