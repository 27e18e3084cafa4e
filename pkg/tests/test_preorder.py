from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from smallball.exact import QSqrt, compare, exact
from smallball.gallery import get_item, make_oscillation_pair
from smallball.germs import Unsupported
from smallball.measures import Mixture, PiecewisePolyDensity
from smallball.modes import weak_mode_check
from smallball.preorder import (Relation, as_relation, compare_at_radius, compare_liminf_relation, compare_limit,
                                compare_limsup_relation, essential_totality_check, maximal_and_greatest,
                                ratio_limits, transitivity_audit)

from strategies import PROPERTY, finite_metric_atomic, piecewise_density, radii

OSC = get_item("oscillation").measure
ALPHA = QSqrt(0, Fraction(3, 4), 2)
RAMP = PiecewisePolyDensity((0, 1), [(0, 2)])
STEPS = PiecewisePolyDensity.piecewise_constant((0, 1, 2, 3), (2, 1, 0))
NONTRANSITIVE = get_item("limsup-nontransitive").measure
points = st.fractions(-5, 5, max_denominator=8)


# ---------------------------------------------------------------------------
# worked values


def test_oscillation_limits_are_exact():
    lim = ratio_limits(OSC, -1, 1)
    assert lim.exact and lim.liminf == exact(1 / ALPHA) and lim.limsup == ALPHA
    assert compare_limit(OSC, -1, 1).relation == Relation.INCOMPARABLE


def test_oscillation_maximal_but_no_greatest():
    mx, gr = maximal_and_greatest(OSC, [-1, 1, 0, Fraction(1, 2)])
    assert sorted(mx) == [-1, 1] and gr == []


def test_single_candidate_is_greatest():
    assert maximal_and_greatest(OSC, [1]) == ([1], [1])


@pytest.mark.parametrize("variant,closed", [("atomic", False), ("triangle", True)])
def test_countable_antichain_radius_verdicts(variant, closed):
    mu = get_item(f"countable-antichain-{variant}").measure
    v = compare_at_radius(mu, 1, -1, Fraction(1, 8), closed)
    assert v.relation == Relation.STRICTLY_LESS and exact(v.masses[0] / v.masses[1]) == Fraction(1, 4)
    v = compare_at_radius(mu, 1, -1, Fraction(1, 32), closed)
    assert v.relation == Relation.STRICTLY_GREATER and exact(v.masses[0] / v.masses[1]) == 4


def test_reflexive_cases():
    assert compare_at_radius(OSC, 1, 1, Fraction(1, 3)).relation == Relation.EQUIVALENT
    lim = ratio_limits(OSC, 1, 1)
    assert (lim.liminf, lim.limsup) == (1, 1)
    assert compare_liminf_relation(OSC, 1, 1) and compare_limsup_relation(OSC, 1, 1)


def test_radius_must_be_positive():
    with pytest.raises(ValueError):
        compare_at_radius(OSC, 1, -1, 0)


def test_piecewise_heights_two_to_one():
    lim = ratio_limits(STEPS, Fraction(1, 2), Fraction(3, 2))
    assert lim.exact and (lim.liminf, lim.limsup) == (2, 2)
    assert compare_limit(STEPS, Fraction(1, 2), Fraction(3, 2)).relation == Relation.STRICTLY_GREATER


@pytest.mark.parametrize("y", [Fraction(5, 8), Fraction(2, 3), Fraction(3, 4), Fraction(9, 10)])
def test_ramp_limit_ratio(y):
    lim = ratio_limits(RAMP, 1, y)
    assert lim.liminf == lim.limsup == exact(1 / (2 * y))
    assert compare_limit(RAMP, y, 1).relation == Relation.STRICTLY_GREATER
    assert compare_limit(RAMP, 1, y).relation == Relation.STRICTLY_LESS


def test_off_support_cases():
    assert compare_limit(RAMP, -1, Fraction(1, 2)).relation == Relation.STRICTLY_LESS
    assert compare_limit(RAMP, Fraction(1, 2), 2).relation == Relation.STRICTLY_GREATER
    assert compare_limit(RAMP, -1, 2).relation == Relation.EQUIVALENT
    with pytest.raises(ValueError):
        ratio_limits(RAMP, -1, Fraction(1, 2))


def test_liminf_relation_examples():
    assert not compare_liminf_relation(OSC, -1, 1) and not compare_liminf_relation(OSC, 1, -1)
    bimodal = get_item("bimodal-hiding").measure
    assert compare_liminf_relation(bimodal, -1, 1) and not compare_liminf_relation(bimodal, 1, -1)


def test_limsup_relation_examples():
    assert compare_limsup_relation(NONTRANSITIVE, -2, 0) and compare_limsup_relation(NONTRANSITIVE, 0, -2)
    assert not compare_limsup_relation(NONTRANSITIVE, -2, 2)


def test_limsup_relation_is_not_transitive():
    assert transitivity_audit(as_relation(NONTRANSITIVE, "limsup"), [-2, 0, 2]) == [(-2, 0, 2)]


def test_audit_needs_three_points():
    with pytest.raises(ValueError):
        transitivity_audit(as_relation(OSC, "limit"), [1, -1])


def test_germless_measure_is_unsupported():
    mu = get_item("dense-antichain").measure
    with pytest.raises(Unsupported):
        compare_liminf_relation(mu, Fraction(1, 3), Fraction(2, 3))


def test_essential_totality_on_steps():
    rep = essential_totality_check(STEPS, [Fraction(1, 4), Fraction(1, 2), Fraction(3, 2)],
                                   [Fraction(5, 2), 4, -1])
    assert rep.passed


def test_essential_totality_fails_on_antichain():
    rep = essential_totality_check(OSC, [-1, 1], [0])
    assert not rep.passed and rep.failed_condition == "a" and set(rep.witness) == {-1, 1}


def test_essential_totality_self_sample_flagged():
    rep = essential_totality_check(STEPS, [Fraction(1, 2)], [Fraction(1, 2)])
    assert not rep.passed and rep.failed_condition == "c"


# ---------------------------------------------------------------------------
# properties


@PROPERTY
@given(piecewise_density(), points, points, radii)
def test_totality_at_positive_radius(mu, x, y, r):
    v = compare_at_radius(mu, x, y, r).relation
    assert v != Relation.INCOMPARABLE
    assert (v == Relation.EQUIVALENT) == (mu.mass(x, r) == mu.mass(y, r))


@PROPERTY
@given(piecewise_density(), points, points)
def test_limit_verdicts_are_antisymmetric(mu, x, y):
    assert compare_limit(mu, x, y).relation == compare_limit(mu, y, x).relation.flipped()


@PROPERTY
@given(st.fractions(Fraction(11, 10), 9, max_denominator=10), st.sampled_from([-1, 1, 0, Fraction(1, 2), 2]),
       st.sampled_from([-1, 1, Fraction(-1, 2), Fraction(3, 2)]))
def test_incomparable_iff_limits_straddle_one(a, x, y):
    mu = make_oscillation_pair(a).measure
    v = compare_limit(mu, x, y)
    assert v.relation == compare_limit(mu, y, x).relation.flipped()
    if v.limits is not None:
        lo, hi = v.limits.liminf, v.limits.limsup
        assert compare(lo, hi) in (-1, 0, None)
        straddles = compare(lo, 1) == -1 and compare(hi, 1) == 1
        assert (v.relation == Relation.INCOMPARABLE) == straddles
    else:
        assert v.relation != Relation.INCOMPARABLE


@PROPERTY
@given(finite_metric_atomic(), st.data())
def test_finite_atomic_never_incomparable(mu, data):
    x = data.draw(st.sampled_from(mu.space.points))
    y = data.draw(st.sampled_from(mu.space.points))
    assume(x != y)
    lim = ratio_limits(mu, x, y)
    want = exact(mu.atoms[x] / mu.atoms[y])
    assert lim.exact and lim.liminf == lim.limsup == want
    assert compare_limit(mu, x, y).relation != Relation.INCOMPARABLE


@PROPERTY
@given(piecewise_density(), points, points)
def test_liminf_relation_implies_limit_relation(mu, x, y):
    if compare_liminf_relation(mu, x, y):
        assert compare_limit(mu, x, y).relation.holds_le


@PROPERTY
@given(st.sampled_from([-1, 1, 0, Fraction(1, 2), Fraction(-3, 2)]), st.sampled_from([-1, 1, Fraction(3, 2)]))
def test_oscillation_liminf_inside_limit(x, y):
    if compare_liminf_relation(OSC, x, y):
        assert compare_limit(OSC, x, y).relation.holds_le


@PROPERTY
@given(piecewise_density(), points, points, radii, st.fractions(Fraction(1, 9), 9, max_denominator=9))
def test_verdicts_invariant_under_scaling(mu, x, y, r, c):
    scaled = PiecewisePolyDensity(mu.breaks, [tuple(c * k for k in p) for p in mu.polys])
    normalised = Mixture([mu], Z=c)
    for other in (scaled, normalised):
        assert compare_at_radius(other, x, y, r).relation == compare_at_radius(mu, x, y, r).relation
        assert compare_limit(other, x, y).relation == compare_limit(mu, x, y).relation
        assert compare_liminf_relation(other, x, y) == compare_liminf_relation(mu, x, y)
        assert compare_limsup_relation(other, x, y) == compare_limsup_relation(mu, x, y)


@PROPERTY
@given(piecewise_density(), st.lists(points, min_size=3, max_size=3, unique=True), radii)
def test_exact_relations_are_transitive(mu, pts, r):
    for kind in ("radius", "limit", "liminf"):
        assert transitivity_audit(as_relation(mu, kind, r), pts) == []


@PROPERTY
@given(piecewise_density(), st.lists(points, min_size=1, max_size=5, unique=True))
def test_greatest_matches_weak_mode_check(mu, cands):
    mx, gr = maximal_and_greatest(mu, cands)
    assert set(gr) <= set(mx)
    for x in cands:
        assert (x in gr) == weak_mode_check(mu, x, cands)


@PROPERTY
@given(finite_metric_atomic(), radii)
def test_radius_maximal_equals_greatest(mu, r):
    mx, gr = maximal_and_greatest(mu, mu.space.points, mode="radius", r=r)
    assert mx == gr
