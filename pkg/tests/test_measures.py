from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallball.exact import CertifiedInterval, as_interval, pow_half
from smallball.gallery import dense_antichain_components, get_item
from smallball.measures import (Atomic, Mixture, PiecewisePolyDensity, DyadicLevelsTail, ball_mass, rcdf,
                                support_contains)
from smallball.metric import FunnyDiscrete, RealLine, TwoLevelSpace, funny_delta
from smallball.serialize import MalformedMeasure, dumps, loads

from oracles import atomic_ball_mass, piecewise_poly_interval_mass, quad_mass
from strategies import PROPERTY, finite_metric_atomic, piecewise_density, radii

OSC = get_item("oscillation").measure
RAMP = PiecewisePolyDensity((0, 1), [(0, 2)])


# ---------------------------------------------------------------------------
# worked values


def test_discrete_example_ball_at_one():
    mu = get_item("discrete-no-mode").measure
    assert ball_mass(mu, 1, 1) == Fraction(3, 4)
    assert ball_mass(mu, 2, 1) == Fraction(1, 2)


def test_large_ball_holds_everything():
    mu = PiecewisePolyDensity.piecewise_constant((0, 1, 3), (Fraction(1, 2), Fraction(1, 4)))
    assert ball_mass(mu, Fraction(3, 2), 10) == 1
    assert ball_mass(OSC, 0, 5) == 1


def test_triangle_bump_mass():
    tri = PiecewisePolyDensity.triangle(0, Fraction(1, 8), 1)
    assert ball_mass(tri, 0, Fraction(1, 8)) == Fraction(1, 8)
    assert tri.density(0) == 1


def test_even_profile_knots():
    even = OSC.parts[0]
    for n in range(0, 30, 2):
        assert even.F(Fraction(1, 2 ** n)) == pow_half(2, -n)
    assert even.F(3) == 1


def test_dirac_rcdf_is_one():
    mu = Atomic(RealLine(), {Fraction(1, 3): 1})
    f = rcdf(mu, Fraction(1, 3), 4)
    for r in (0, Fraction(1, 1000), 1, 4):
        assert f(r) == 1


def test_ramp_rcdf_at_right_end():
    f = rcdf(RAMP, 1, Fraction(1, 2))
    for r in (Fraction(1, 2), Fraction(1, 7), Fraction(1, 1024)):
        assert f(r) == 2 * r - r * r
        assert abs(float(f(r)) - float(quad_mass(lambda t: 2 * t, 1 - r, 1))) < 1e-25


def test_support_membership():
    assert support_contains(RAMP, 0) and not support_contains(RAMP, Fraction(-1, 10))
    assert support_contains(Atomic(RealLine(), {5: 1}), 5)
    assert support_contains(OSC, 1) and support_contains(OSC, -1)


def test_negative_radius_and_foreign_point_rejected():
    with pytest.raises(ValueError):
        ball_mass(RAMP, 0, -1)
    mu = Atomic(FunnyDiscrete(), {1: Fraction(1, 2), 2: Fraction(1, 2)})
    with pytest.raises((ValueError, TypeError)):
        ball_mass(mu, Fraction(1, 2), 1)


def test_degenerate_inputs_rejected():
    with pytest.raises(ValueError):
        Atomic(RealLine(), {})
    with pytest.raises(ValueError):
        Atomic(RealLine(), {0: 0})
    with pytest.raises(ValueError):
        PiecewisePolyDensity((0, 0), [(1,)])
    with pytest.raises(ValueError):
        PiecewisePolyDensity((0, 1), [(0,)])


def test_funny_metric_values():
    assert funny_delta(3, 4) == 2 and funny_delta(2, 3) == 1 and funny_delta(5, 5) == 0


def test_two_level_distance_across_slices():
    assert TwoLevelSpace().distance((0, 1, 1), (0, 3, 2)) == 2


# ---------------------------------------------------------------------------
# truncated sums


@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(1, 4), Fraction(5, 8), Fraction(1, 3), Fraction(7, 16)])
@pytest.mark.parametrize("n", [3, 6, 12, 30])
def test_truncated_sum_encloses_longer_partial_sum(x, n):
    # the enclosure is for the full sum; a partial sum over levels <= 5 misses at most 2^-5 of it
    r = Fraction(1, 2 ** n)
    def truncated(L):
        return Mixture([c for _, _, c in dense_antichain_components(L)], [DyadicLevelsTail(L)], Z=1)
    got3, got5 = as_interval(truncated(3).mass(x, r)), as_interval(truncated(5).mass(x, r))
    partial = as_interval(Mixture([c for _, _, c in dense_antichain_components(5)], Z=1).mass(x, r))
    assert got3.width <= DyadicLevelsTail(3).total()
    assert partial.lo <= got3.hi and got3.lo <= partial.hi + Fraction(1, 2 ** 5)
    assert got3.lo <= got5.hi and got5.lo <= got3.hi


# ---------------------------------------------------------------------------
# serialization


@pytest.mark.parametrize("item", ["oscillation", "discrete-no-mode", "two-level", "dense-antichain",
                                  "limsup-nontransitive", "upward-closure-b", "countable-antichain-atomic"])
def test_serialization_round_trip(item):
    mu = get_item(item).measure
    text = dumps(mu)
    back = loads(text)
    assert dumps(back) == text
    assert back.total() == mu.total() or isinstance(mu.total(), CertifiedInterval)


def test_malformed_documents_rejected():
    for text in ("{", "[]", '{"version": 1, "measure": {"kind": "nope"}}', '{"version": 99}',
                 '{"version": 1, "measure": {"kind": "atomic"}}'):
        with pytest.raises(MalformedMeasure):
            loads(text)


# ---------------------------------------------------------------------------
# properties


@PROPERTY
@given(finite_metric_atomic(), st.data())
def test_atomic_mass_matches_brute_force(mu, data):
    x = data.draw(st.sampled_from(mu.space.points))
    r = data.draw(st.fractions(0, 30, max_denominator=4))
    closed = data.draw(st.booleans())
    assert mu.mass(x, r, closed) == atomic_ball_mass(mu.atoms, mu.space.distance, x, r, closed)


@PROPERTY
@given(finite_metric_atomic(max_points=12), st.data())
def test_metric_axioms(mu, data):
    sp = mu.space
    x, y, z = (data.draw(st.sampled_from(sp.points)) for _ in range(3))
    d = sp.distance
    assert d(x, x) == 0
    assert d(x, y) == d(y, x)
    assert d(x, z) <= d(x, y) + d(y, z)


@PROPERTY
@given(piecewise_density(), st.fractions(-5, 5, max_denominator=16), radii, radii)
def test_density_rcdf_is_monotone_and_bounded(mu, x, r1, r2):
    r1, r2 = min(r1, r2), max(r1, r2)
    mu = Mixture([mu])  # normalised by its total mass
    m1, m2 = ball_mass(mu, x, r1), ball_mass(mu, x, r2)
    assert 0 <= m1 <= m2 <= 1


@PROPERTY
@given(piecewise_density(degree=1), st.fractions(-5, 5, max_denominator=16), radii)
def test_density_mass_matches_term_integration(mu, x, r):
    assert mu.mass(x, r) == piecewise_poly_interval_mass(mu.breaks, mu.polys, x - r, x + r)


@PROPERTY
@given(st.fractions(-3, 3, max_denominator=64), st.integers(0, 40), st.integers(0, 40))
def test_knot_profile_rcdf_is_monotone(x, n1, n2):
    r1, r2 = Fraction(1, 2 ** max(n1, n2)), Fraction(1, 2 ** min(n1, n2))
    m1, m2 = ball_mass(OSC, x, r1), ball_mass(OSC, x, r2)
    assert 0 <= m1 <= m2 <= 1


@PROPERTY
@given(finite_metric_atomic(), st.data())
def test_atomic_rcdf_is_right_continuous(mu, data):
    x = data.draw(st.sampled_from(mu.space.points))
    f = rcdf(mu, x, 30)
    for b in f.breakpoints(Fraction(1, 2)):
        at = f(b)
        for k in (10, 20, 40):
            assert f(b + Fraction(1, 2 ** k)) == at


@PROPERTY
@given(piecewise_density(), st.fractions(-5, 5, max_denominator=16))
def test_density_rcdf_is_right_continuous(mu, x):
    f = rcdf(mu, x, 12)
    for b in f.breakpoints(Fraction(1, 64))[:4]:
        at = f(b)
        prev = None
        for k in (8, 16, 32, 64):
            gap = f(b + Fraction(1, 2 ** k)) - at
            assert gap >= 0 and (prev is None or gap <= prev)
            prev = gap
        assert gap <= Fraction(16, 2 ** 64)


@PROPERTY
@given(piecewise_density(), st.fractions(-5, 5, max_denominator=16), radii, st.fractions(1, 9, max_denominator=7))
def test_normalising_constant_divides_every_ball(mu, x, r, c):
    scaled = Mixture([mu], Z=c * mu.total())
    assert ball_mass(scaled, x, r) == mu.mass(x, r) / (c * mu.total())
    assert ball_mass(scaled, x, 100) == 1 / c


@PROPERTY
@given(finite_metric_atomic(max_points=8))
def test_atomic_serialization_round_trip(mu):
    back = loads(dumps(mu))
    assert back.atoms == mu.atoms
    for p in mu.space.points:
        assert back.mass(p, 3) == mu.mass(p, 3)
