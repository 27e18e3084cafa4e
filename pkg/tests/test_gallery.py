import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallball.exact import compare, exact, pow_half
from smallball.gallery import (REGISTRY, BinaryExpansion, DyadicPoint, InsufficientPrecision, ResourceLimit,
                               dyadic_irrationality_exponent_estimate, dyadic_irrationality_measure, figure_rows,
                               get_item, list_items, make_dense_antichain, make_oscillation_pair,
                               make_rcdf_profile, make_two_level_no_mode, nth_prime, prime_index, primes_up_to,
                               rcdf_knot_value, to_csv, truncation_radius, verify_expected_facts)
from smallball.measures import Mixture, PiecewisePolyDensity, as_mixture, ball_mass
from smallball.metric import RealLine

from strategies import PROPERTY

# where a small extra bump on the line breaks the item's claims
TAMPER_AT = {
    "oscillation": Fraction(1), "bimodal-hiding": Fraction(-1), "rcdf-family": Fraction(0),
    "dense-antichain": Fraction(1, 2), "countable-antichain-atomic": Fraction(1),
    "countable-antichain-triangle": Fraction(1), "upward-closure-a": Fraction(3, 4),
    "upward-closure-b": Fraction(2), "limsup-nontransitive": Fraction(0), "uniform-witnesses": Fraction(1, 2),
}


def tampered(item):
    mu = as_mixture(item.measure)
    if mu.space == RealLine():
        bump = PiecewisePolyDensity.triangle(TAMPER_AT[item.id], Fraction(1, 2 ** 12), 1)
        return Mixture(list(mu.parts) + [bump], mu.tails, Z=mu.Z)
    # other spaces: a wrong normalising constant
    return Mixture(list(mu.parts), mu.tails, Z=mu.Z * Fraction(1001, 1000), space=mu.space)


@pytest.mark.parametrize("item_id", list(REGISTRY))
def test_every_item_verifies(item_id):
    report = verify_expected_facts(get_item(item_id))
    assert report.passed, report.table()


@pytest.mark.parametrize("item_id", list(REGISTRY))
def test_tampered_item_fails(item_id):
    item = get_item(item_id)
    report = verify_expected_facts(item.with_measure(tampered(item)))
    assert not report.passed


def test_parallel_runner_matches_serial():
    item = get_item("oscillation")
    a = verify_expected_facts(item).to_json()
    b = verify_expected_facts(item, workers=4).to_json()
    assert a == b


def test_registry_listing_and_unknown_id():
    assert [k for k, _ in list_items()] == list(REGISTRY)
    with pytest.raises(KeyError):
        get_item("no-such-item")


def test_item_json_is_stable():
    a, b = get_item("limsup-nontransitive").to_json(), get_item("limsup-nontransitive").to_json()
    assert a == b and a["id"] == "limsup-nontransitive"


# ---------------------------------------------------------------------------
# constructors


def test_constructor_parameter_checks():
    with pytest.raises(ValueError):
        make_two_level_no_mode(Fraction(1, 2))
    with pytest.raises(ValueError):
        make_two_level_no_mode(1)
    with pytest.raises(ValueError):
        make_oscillation_pair(1)
    with pytest.raises(ValueError):
        make_dense_antichain(0)
    with pytest.raises(ResourceLimit):
        make_dense_antichain(7)


def test_two_level_normaliser_for_three_quarters():
    item = make_two_level_no_mode(Fraction(3, 4))
    assert item.measure.Z == 2 == sum(Fraction(2, 3) ** m for m in range(1, 200)) + Fraction(2, 3) ** 199 * 2


def test_two_level_segment_mass_against_integration():
    sigma = Fraction(5, 8)
    mu = make_two_level_no_mode(sigma).measure
    for k, m in ((1, 1), (2, 3), (4, 2)):
        half = Fraction(1, 2 ** (k + m + 1))
        # density sigma^-m on [-half, half], a ball of radius half around the centre holds the segment
        want = exact(sigma ** -m * 2 * half)
        assert mu.mass((0, k, m), half) - mu.mass((0, k, m), half / 2) == want / 2


def test_oscillation_alpha_and_profiles():
    item = make_oscillation_pair(2)
    assert item.extra["alpha"] == exact(3 * pow_half(2, -1) / 2)
    even, odd = item.measure.components()
    for n in range(0, 24, 2):
        assert even.F(Fraction(1, 2 ** n)) == pow_half(2, -n)
    assert even.F(1) == 1 and even.F(5) == 1


def test_bimodal_branch_values():
    mu = get_item("bimodal-hiding").measure
    r = Fraction(1, 2)
    assert mu.mass(1, r) == 2 * r - Fraction(2, 3) * r ** 3 == Fraction(11, 12)
    for r in (Fraction(1, 10), Fraction(1, 4)):
        q = exact(mu.mass(-1, r) / mu.mass(1, r))
        # quotient of the two branch formulas
        assert q == 1 - Fraction(2, 5) * r ** 4 / (2 - Fraction(2, 3) * r ** 2) and q < 1


def test_rcdf_profile_knots():
    two = Fraction(2)
    assert rcdf_knot_value(2, two, 2) == pow_half(2, -1)
    assert rcdf_knot_value(2, two, 3) == pow_half(2, -3)
    prof = make_rcdf_profile(3, Fraction(1, 8), two)
    for n in range(8, 30):
        assert prof.F(two ** -n) == rcdf_knot_value(3, two, n)


@pytest.mark.parametrize("k,m", [(2, Fraction(1, 2)), (3, Fraction(1, 8)), (5, Fraction(1, 8)), (2, Fraction(1, 32))])
def test_truncation_radius_matches_bisection(k, m):
    a = Fraction(2)
    rm = truncation_radius(k, m, a)
    assert rm <= a * m * m
    full = make_rcdf_profile(k, rcdf_knot_value(k, a, 1), a)
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(80):
        mid = (lo + hi) / 2
        if compare(full.F(mid), m) >= 0:
            hi = mid
        else:
            lo = mid
    assert abs(float(rm) - float(hi)) < 1e-20
    assert make_rcdf_profile(k, m, a).total() == m


def test_dense_antichain_levels():
    item = make_dense_antichain(3)
    comps = as_mixture(item.measure).parts
    assert len(comps) == 7
    assert [prime_index(1, 1), prime_index(2, 1), prime_index(2, 2)] == [2, 3, 5]
    assert item.measure.total() == 1


def test_uniform_density_ball_masses():
    mu = get_item("uniform-witnesses").measure
    for r in (Fraction(1, 3), Fraction(1, 10)):
        assert ball_mass(mu, Fraction(1, 2), r) == 2 * r
        assert ball_mass(mu, 1 + 2 * r, r) == 0


# ---------------------------------------------------------------------------
# dyadic utilities


def test_dyadic_measure_examples():
    assert dyadic_irrationality_measure(Fraction(1, 3), 1) == Fraction(1, 6)
    assert dyadic_irrationality_measure(Fraction(1, 3), 2) == Fraction(1, 12)
    assert dyadic_irrationality_measure(Fraction(3, 8), 3) == 0
    assert dyadic_irrationality_measure(Fraction(3, 8), 5) == 0


def test_dyadic_exponent_estimates():
    lo, hi = dyadic_irrationality_exponent_estimate(Fraction(1, 3), 40)
    assert lo <= 1 <= hi and hi - 1 < 0.2
    x = BinaryExpansion.sparse_ones(2, 4000)
    lo, hi = dyadic_irrationality_exponent_estimate(x, 1024)
    assert lo <= 2 <= hi and hi - lo < 0.02
    with pytest.raises(ValueError):
        dyadic_irrationality_exponent_estimate(Fraction(1, 4), 16)


def test_expansion_precision_is_checked():
    x = BinaryExpansion.of_fraction(Fraction(1, 3), 10)
    with pytest.raises(InsufficientPrecision):
        dyadic_irrationality_measure(x, 12)
    iv = dyadic_irrationality_measure(BinaryExpansion.of_fraction(Fraction(1, 3), 60), 4)
    assert iv.contains(dyadic_irrationality_measure(Fraction(1, 3), 4))


def test_primes():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [nth_prime(n) for n in (1, 2, 3, 10, 100, 1000)] == [2, 3, 5, 29, 541, 7919]


@PROPERTY
@given(st.integers(1, 30), st.data())
def test_dyadic_points_are_reduced(level, data):
    i = data.draw(st.integers(1, 2 ** (level - 1)))
    v = DyadicPoint(level, i).value
    assert 0 < v < 1 and v.denominator == 2 ** level


@PROPERTY
@given(st.fractions(0, 1, max_denominator=10 ** 6), st.integers(1, 12))
def test_dyadic_measure_matches_enumeration(x, level):
    grid = [Fraction(j, 2 ** level) for j in range(1, 2 ** level)]
    assert dyadic_irrationality_measure(x, level) == min(abs(x - q) for q in grid)


# ---------------------------------------------------------------------------
# figure data


@pytest.mark.parametrize("fig,series", [("1", {"density", "rcdf_plus", "rcdf_minus", "ratio"}),
                                        ("2", {"density", "rcdf_even", "rcdf_odd", "ratio", "ratio_max",
                                               "ratio_min"}),
                                        ("5", {"density"})])
def test_figure_rows(fig, series):
    rows = figure_rows(fig)
    assert {s for _, _, s in rows} == series
    xs = [(float(x), float(v)) for x, v, s in rows if s == "density"]
    area = sum((b[0] - a[0]) * (a[1] + b[1]) / 2 for a, b in zip(xs, xs[1:]))
    assert area == pytest.approx(1 if fig != "5" else 31 / 32, rel=0.1)
    text = to_csv(rows)
    assert text.startswith("r,value,series\n") and text == to_csv(figure_rows(fig))


def test_unknown_figure():
    with pytest.raises(ValueError):
        figure_rows("3")


def test_figure_two_ratio_envelope():
    rows = figure_rows("2")
    alpha = 3 / (2 * math.sqrt(2))
    maxima = [float(v) for _, v, s in rows if s == "ratio_max"]
    assert max(maxima) == pytest.approx(alpha, abs=1e-12)
