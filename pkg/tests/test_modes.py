from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallball.exact import compare, exact, pow_half
from smallball.gallery import get_item
from smallball.measures import Atomic, Mixture, PiecewisePolyDensity, ball_mass
from smallball.modes import (amf_upward_intersection, build_amf, default_grid, radius_r_modes, strong_mode_check,
                             sup_ball_mass, upward_nesting_report, weak_mode_check)
from smallball.preorder import maximal_and_greatest

from oracles import argmax_all
from strategies import PROPERTY, finite_metric_atomic, piecewise_density, radii

OSC = get_item("oscillation").measure
DISCRETE = get_item("discrete-no-mode")
BIMODAL = get_item("bimodal-hiding")
TRI = PiecewisePolyDensity.triangle(0, Fraction(1, 8), 1)


# ---------------------------------------------------------------------------
# worked values


def test_discrete_radius_one_is_not_attained():
    rep = sup_ball_mass(DISCRETE.measure, 1, DISCRETE.domain)
    assert rep.M_r == 1 and rep.attained is False and not rep.maximisers
    masses = [m for _, m in rep.witness]
    assert all(a < b < 1 for a, b in zip(masses, masses[1:]))
    for p, m in rep.witness:
        assert p % 2 == 1 and m == 1 - Fraction(1, 2 ** (p + 1)) == ball_mass(DISCRETE.measure, p, 1)


def test_discrete_mode_structure():
    assert radius_r_modes(DISCRETE.measure, Fraction(1, 2), DISCRETE.domain) == [1]
    everything = radius_r_modes(DISCRETE.measure, 2, DISCRETE.domain)
    assert everything == list(range(1, DISCRETE.params["N"] + 1))


def test_bimodal_unique_mode_at_plus_one():
    for r in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 50)):
        assert radius_r_modes(BIMODAL.measure, r, BIMODAL.domain) == [1]


def test_bimodal_minus_one_is_strong():
    grid = default_grid(BIMODAL.measure, 2, 12)
    for x in (-1, 1):
        res = strong_mode_check(BIMODAL.measure, x, grid, BIMODAL.domain)
        assert res.exact and (res.liminf, res.limsup) == (1, 1) and res.accepted


def test_bimodal_amf_intersection_excludes_minus_one():
    grid = default_grid(BIMODAL.measure, 2, 10)
    amf = build_amf(BIMODAL.measure, "r", grid, BIMODAL.domain)
    assert set(amf.points) == {1}
    assert amf_upward_intersection(BIMODAL.measure, amf, [-1, 1], BIMODAL.domain) == [1]


def test_oscillation_amf_alternates_and_intersection_is_empty():
    grid = default_grid(OSC, 1, 12)
    amf = build_amf(OSC, "r", grid, "line")
    assert amf.points == [1 if n % 2 else -1 for n in range(1, 13)]
    assert amf_upward_intersection(OSC, amf, [-1, 1]) == []
    assert upward_nesting_report(OSC, amf, [-1, 1])


def test_oscillation_plus_one_is_not_strong():
    grid = [Fraction(1, 4 ** n) for n in range(1, 12)]
    res = strong_mode_check(OSC, 1, grid)
    alpha = exact(Fraction(3, 2) * pow_half(2, -1))
    assert compare(res.liminf, exact(1 / alpha)) <= 0 and res.accepted is False


def test_triangle_mode_against_dense_brute_force():
    for r in (Fraction(1, 20), Fraction(1, 9), Fraction(1, 8)):
        assert radius_r_modes(TRI, r, "line") == [0]
        centers = [Fraction(i - 5000, 20000) for i in range(10001)]
        masses = {c: TRI.mass(c, r) for c in centers}
        assert argmax_all(masses) == {0}


def test_wide_ball_maximisers_form_an_interval():
    rep = sup_ball_mass(TRI, Fraction(1, 5), "line")
    assert rep.M_r == Fraction(1, 8) and rep.attained
    assert rep.maximiser_intervals == [(Fraction(-3, 40), Fraction(3, 40))]


def test_attained_amf_has_unit_ratios():
    grid = [Fraction(1, 2 ** n) for n in range(3, 10)]
    amf = build_amf(TRI, "r", grid, "line")
    assert all(q == 1 for q in amf.ratios) and set(amf.points) == {0}


def test_amf_input_checks():
    with pytest.raises(ValueError):
        build_amf(TRI, "r", [Fraction(1, 4), Fraction(1, 2)], "line")
    with pytest.raises(ValueError):
        build_amf(TRI, 0, [Fraction(1, 2), Fraction(1, 4)], "line")
    with pytest.raises(ValueError):
        sup_ball_mass(TRI, 1, "nowhere")


def test_two_level_supremum_not_attained():
    item = get_item("two-level")
    for r in (Fraction(1, 16), Fraction(3, 256)):
        rep = sup_ball_mass(item.measure, r, item.domain)
        assert rep.attained is False
        masses = [m for _, m in rep.witness]
        assert all(a < b for a, b in zip(masses, masses[1:])) and all(m < rep.M_r for m in masses)


# ---------------------------------------------------------------------------
# properties


@PROPERTY
@given(finite_metric_atomic(), radii)
def test_modes_are_argmax_greatest_and_maximal(mu, r):
    masses = {p: mu.mass(p, r) for p in mu.space.points}
    modes = set(radius_r_modes(mu, r))
    mx, gr = maximal_and_greatest(mu, mu.space.points, mode="radius", r=r)
    assert modes == argmax_all(masses) == set(gr) == set(mx)
    rep = sup_ball_mass(mu, r)
    assert all(ball_mass(mu, m, r) == rep.M_r for m in rep.maximisers)


@PROPERTY
@given(finite_metric_atomic(), radii, st.fractions(Fraction(1, 7), 7, max_denominator=7))
def test_mode_sets_invariant_under_scaling(mu, r, c):
    scaled = Atomic(mu.space, {p: c * m for p, m in mu.atoms.items()})
    assert radius_r_modes(scaled, r) == radius_r_modes(mu, r)
    assert radius_r_modes(Mixture([mu], Z=c), r) == radius_r_modes(mu, r)


@PROPERTY
@given(piecewise_density(), radii, st.fractions(Fraction(1, 7), 7, max_denominator=7))
def test_line_suprema_scale_and_keep_maximisers(mu, r, c):
    scaled = PiecewisePolyDensity(mu.breaks, [tuple(c * k for k in p) for p in mu.polys])
    a, b = sup_ball_mass(mu, r, "line"), sup_ball_mass(scaled, r, "line")
    assert b.M_r == exact(c * a.M_r)
    assert b.maximisers == a.maximisers and b.maximiser_intervals == a.maximiser_intervals


@PROPERTY
@given(piecewise_density(max_pieces=4), radii)
def test_line_supremum_beats_every_sampled_centre(mu, r):
    rep = sup_ball_mass(mu, r, "line")
    lo, hi = mu.breaks[0] - r, mu.breaks[-1] + r
    for i in range(41):
        assert mu.mass(lo + (hi - lo) * Fraction(i, 40), r) <= rep.M_r
    for m in rep.maximisers:
        assert mu.mass(m, r) == rep.M_r


@PROPERTY
@given(st.fractions(-3, 3, max_denominator=16), st.fractions(Fraction(1, 16), 2, max_denominator=16),
       st.fractions(Fraction(1, 4), 4, max_denominator=8), st.integers(2, 6))
def test_constant_amf_point_is_strong(c, w, h, n0):
    mu = PiecewisePolyDensity.triangle(c, w, h)
    grid = [exact(w / 2 ** n) for n in range(n0, n0 + 6)]
    amf = build_amf(mu, "r", grid, "line")
    assert set(amf.points) == {c}
    res = strong_mode_check(mu, c, grid)
    assert (res.liminf, res.limsup) == (1, 1) and res.accepted


@PROPERTY
@given(st.fractions(-3, 3, max_denominator=16), st.fractions(Fraction(1, 16), 2, max_denominator=16),
       st.sampled_from([0, Fraction(1, 3), Fraction(-1, 5)]))
def test_refining_the_grid_keeps_acceptance(c, w, offset):
    mu = PiecewisePolyDensity.triangle(c, w, 1)
    x = exact(c + offset * w)
    coarse = [exact(w / 4 ** n) for n in range(1, 6)]
    fine = [exact(w / 2 ** n) for n in range(2, 11)]
    a, b = strong_mode_check(mu, x, coarse), strong_mode_check(mu, x, fine)
    if a.accepted:
        assert b.accepted


@PROPERTY
@given(finite_metric_atomic(max_points=8), st.data())
def test_weak_modes_are_the_heaviest_atoms(mu, data):
    pts = list(mu.space.points)
    heaviest = argmax_all(mu.atoms)
    for x in pts:
        assert weak_mode_check(mu, x, pts) == (x in heaviest)
