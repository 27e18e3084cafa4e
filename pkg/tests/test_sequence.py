import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from smallball import _kernels, _mc_kernel_py
from smallball.sequence import (MIN_SAMPLES, BudgetTooSmall, GridTooCoarse, ProductMeasure, WeightedLpSpace,
                                agree, anderson_bound, anderson_ratio_check, besov_normaliser,
                                besov_normaliser_quadrature, default_seed, monotone_in_n, mu_n_ball_mass,
                                mu_n_ball_mass_quadrature, mu_n_profile, project, run_experiment,
                                truncated_radius_r_mode_search)

from strategies import PROPERTY

UNIT = ProductMeasure.gaussian(WeightedLpSpace(2.0), scale=lambda k: 1.0, truncation=4)
DECAY = ProductMeasure.gaussian(truncation=64)
BESOV1 = ProductMeasure.besov(1.0, 1.0, 1, 1.0, truncation=16)


def phi(t):
    return 0.5 * (1 + math.erf(t / math.sqrt(2)))


def interval_mass(x, r):
    """Standard normal mass of ``[x - r, x + r]``."""
    return phi(x + r) - phi(x - r)


# ---------------------------------------------------------------------------
# worked values


def test_one_dimensional_gaussian_against_erf():
    est = mu_n_ball_mass(UNIT, [0.0], 1.0, 1, 10 ** 5, seed=1)
    assert abs(est.mean - math.erf(1 / math.sqrt(2))) <= 3 * est.se
    assert est.count == 10 ** 5 and est.seed == 1


@pytest.mark.parametrize("x,r", [(0.5, 0.25), (1.5, 1.0), (-2.0, 0.5)])
def test_off_centre_gaussian_against_erf(x, r):
    est = mu_n_ball_mass(UNIT, [x], r, 1, 50000, seed=7)
    assert abs(est.mean - interval_mass(x, r)) <= 3 * est.se


def test_projection_examples():
    assert list(project([], 3)) == [0, 0, 0]
    assert list(project(lambda k: 1 / k, 3)) == [1, 0.5, 1 / 3]
    assert list(project([1, 2, 3, 4], 2)) == [1, 2]
    with pytest.raises(ValueError):
        project([1], 0)


def test_weighted_norms():
    sp = WeightedLpSpace(1.0, lambda k: 1.0 / k)
    assert sp.norm([1, 1]) == 3
    assert list(sp.partial_norms([1, 1, 1])) == [1, 3, 6]
    with pytest.raises(ValueError):
        WeightedLpSpace(0.5)


def test_besov_normaliser_closed_form_against_quadrature():
    for p in (1.0, 1.25, 1.5, 2.0):
        assert besov_normaliser(p) == pytest.approx(besov_normaliser_quadrature(p), rel=1e-9)
    assert besov_normaliser(2.0) == pytest.approx(math.sqrt(math.pi))
    assert besov_normaliser(1.0) == pytest.approx(2.0)


def test_quadrature_matches_erf_product_on_axes():
    # independent coordinates: a box is a product, and a ball sits between inscribed and circumscribed boxes
    value, err = mu_n_ball_mass_quadrature(UNIT, [0.0], 0.8, 1)
    assert value == pytest.approx(interval_mass(0, 0.8), abs=1e-10) and err < 1e-8
    value, _ = mu_n_ball_mass_quadrature(UNIT, [0.0, 0.0], 1.0, 2)
    # chi-square with two degrees of freedom
    assert value == pytest.approx(1 - math.exp(-0.5), abs=1e-9)


@pytest.mark.parametrize("x,r", [((0.3, 0.1), 0.5), ((0.0, 0.0), 0.3), ((1.0, -0.2), 0.7)])
def test_quadrature_and_monte_carlo_agree_in_two_dimensions(x, r):
    quad = mu_n_ball_mass_quadrature(DECAY, x, r, 2)
    mc = mu_n_ball_mass(DECAY, x, r, 2, 10 ** 5, seed=3)
    assert agree(mc, quad)


def test_tensor_quadrature_in_four_dimensions():
    value, err = mu_n_ball_mass_quadrature(UNIT, [0, 0, 0, 0], 1.0, 4)
    # chi-square with four degrees of freedom
    assert abs(value - (1 - math.exp(-0.5) * 1.5)) <= err + 1e-9
    with pytest.raises(ValueError):
        mu_n_ball_mass_quadrature(DECAY, [0] * 5, 1.0, 5)


def test_cauchy_marginal_against_arctan():
    mu = ProductMeasure.cauchy(truncation=4)
    x, r = 1.0, 0.5
    want = (math.atan(x + r) - math.atan(x - r)) / math.pi
    est = mu_n_ball_mass(mu, [x], r, 1, 50000, seed=11)
    assert abs(est.mean - want) <= 3 * est.se
    assert mu_n_ball_mass_quadrature(mu, [x], r, 1)[0] == pytest.approx(want, abs=1e-10)


def test_wide_intervals_are_reported_not_passed():
    rows = run_experiment({"family": "cauchy", "dims": [1, 2], "radii": [0.5], "x": [1.0], "samples": 2000,
                           "tolerance": 0.02, "seed": 5})
    assert rows and all(not row["pass"] and "exceeds tolerance" in row["note"] for row in rows)


def test_budget_checks():
    with pytest.raises(BudgetTooSmall) as info:
        mu_n_ball_mass(UNIT, [0.0], 1.0, 1, MIN_SAMPLES - 1)
    assert info.value.required == MIN_SAMPLES
    with pytest.raises(BudgetTooSmall):
        mu_n_ball_mass(DECAY, [5.0], 0.01, 4, 2000, seed=1)
    with pytest.raises(ValueError):
        mu_n_ball_mass(UNIT, [0.0], 0.0, 1)
    with pytest.raises(ValueError):
        mu_n_ball_mass(UNIT, [0.0], 1.0, 5)


def test_large_ball_holds_almost_everything():
    est = mu_n_ball_mass(DECAY, [0.0], 10.0, 16, 20000, seed=2)
    assert est.mean == 1.0


def test_default_seed_reads_environment(monkeypatch):
    monkeypatch.setenv("SMALLBALL_SEED", "99")
    assert default_seed() == 99
    assert mu_n_ball_mass(UNIT, [0.0], 1.0, 1, 2000).seed == 99
    monkeypatch.delenv("SMALLBALL_SEED")
    assert default_seed() == 20231


def test_profile_uses_common_samples():
    est = mu_n_profile(DECAY, [0.2, 0.1], 0.6, [1, 2, 4, 8, 16], 20000, seed=4)
    means = [e.mean for e in est]
    assert means == sorted(means, reverse=True)
    assert monotone_in_n(est)


@pytest.mark.parametrize("case", range(8))
def test_high_dimension_convergence(case):
    # the Gaussian tail beyond k = 512 adds under 1/512 to the squared norm, far inside r^2
    deep = ProductMeasure.gaussian(truncation=1024)
    rng = np.random.default_rng(case)
    x = rng.normal(0, 0.3, 3)
    r = float(rng.uniform(0.6, 1.2))
    direct = mu_n_ball_mass(deep, x, r, 1024, 40000, seed=200 + case)
    est = mu_n_profile(deep, x, r, [2, 8, 32, 128, 512], 40000, seed=100 + case)
    gaps = [abs(e.mean - direct.mean) for e in est]
    slack = [3 * math.hypot(e.se, direct.se) for e in est]
    assert gaps[-1] <= slack[-1]
    assert all(b <= a + s for a, b, s in zip(gaps, gaps[1:], slack[1:]))


@pytest.mark.parametrize("case", range(6))
def test_weak_upper_semicontinuity_sampled(case):
    # x_k = x + e_k moves one far coordinate: coordinatewise convergence without norm convergence
    rng = np.random.default_rng(50 + case)
    x = list(rng.normal(0, 0.2, 2))
    r = float(rng.uniform(0.6, 1.0))
    n = 32
    at_x = mu_n_ball_mass(DECAY, x, r, n, 40000, seed=9)
    tail = []
    for k in (8, 16, 24, 32):
        xk = project(x, n)
        xk[k - 1] += 0.2
        tail.append(mu_n_ball_mass(DECAY, xk, r, n, 40000, seed=9).mean)
    assert max(tail[-2:]) <= at_x.mean + 3 * at_x.se


# ---------------------------------------------------------------------------
# explicit Anderson-type bound


@pytest.mark.parametrize("x,r", [(x, r) for x in (0.3, 0.7, 1.2, 2.0, 3.5) for r in (0.1, 0.25, 0.5) if r < x])
def test_gaussian_exact_ratio_below_bound(x, r):
    exact_ratio = interval_mass(x, r) / interval_mass(0, r)
    # the marginal exp(-x^2) has variance 1/2: rescale to the standard normal
    s = math.sqrt(2)
    besov_ratio = interval_mass(s * x, s * r) / interval_mass(0, s * r)
    assert exact_ratio <= anderson_bound(x, r, 2)
    assert besov_ratio <= anderson_bound(x, r, 2)


def test_boundary_bound_is_one():
    assert anderson_bound(0.75, 0.75, 1) == 1 == anderson_bound(2.0, 2.0, 2)


def test_anderson_input_checks():
    with pytest.raises(ValueError):
        anderson_ratio_check(1, 1, 1, 1, [0.2], 0.5)
    with pytest.raises(ValueError):
        anderson_ratio_check(3, 1, 1, 1, [2.0], 0.5)
    with pytest.raises(BudgetTooSmall):
        anderson_ratio_check(1, 1, 1, 1, [2.0], 0.5, samples=10)


def test_besov_p1_at_twice_the_radius():
    rng = np.random.default_rng(12)
    mu = ProductMeasure.besov(1.0, 1.0, 1, 1.0, truncation=3)
    direction = rng.normal(size=3)
    r = 0.6
    x = direction * (2 * r / mu.space.norm(direction))
    res = anderson_ratio_check(1.0, 1.0, 1, 1.0, x, r, samples=10 ** 6, seed=12)
    assert res.passed and res.norm == pytest.approx(2 * r)


# ---------------------------------------------------------------------------
# truncated mode search


def test_centred_gaussian_mode_is_the_origin():
    rep = truncated_radius_r_mode_search(DECAY, 0.5, 2, [(-0.4, 0.4), (-0.2, 0.2)], grid=9)
    assert rep.maximisers == [(0.0, 0.0)]
    assert rep.M_r == pytest.approx(mu_n_ball_mass_quadrature(DECAY, [0, 0], 0.5, 2)[0])
    assert not rep.complete


def test_mc_mode_search_agrees():
    rep = truncated_radius_r_mode_search(DECAY, 0.5, 2, [(-0.4, 0.4), (-0.2, 0.2)], grid=9, method="mc",
                                         samples=40000, seed=3)
    assert max(abs(c) for c in rep.maximisers[0]) <= 0.2


def test_reweighted_maximiser_moves_to_the_minimiser():
    # exp(-2 (y - 1)^2) times a standard normal is the normal with mean 4/5 and variance 1/5
    mu = ProductMeasure.gaussian(WeightedLpSpace(2.0), scale=lambda k: 1.0, truncation=1)
    mu = mu.reweighted(lambda y: 2 * (y[..., 0] - 1) ** 2)
    rep = truncated_radius_r_mode_search(mu, 0.3, 1, [(-1.0, 1.5)], grid=11)
    assert rep.maximisers == [(0.75,)]
    want = phi((0.75 + 0.3 - 0.8) * math.sqrt(5)) - phi((0.75 - 0.3 - 0.8) * math.sqrt(5))
    assert rep.M_r == pytest.approx(want, abs=1e-8)


def test_degenerate_box_returns_its_point():
    rep = truncated_radius_r_mode_search(DECAY, 0.5, 2, [(0.1, 0.1), (0.2, 0.2)])
    assert rep.maximisers == [(0.1, 0.2)]


def test_mode_search_input_checks():
    with pytest.raises(GridTooCoarse):
        truncated_radius_r_mode_search(DECAY, 0.05, 2, [(-1, 1), (-1, 1)], grid=5)
    with pytest.raises(ValueError):
        truncated_radius_r_mode_search(DECAY, 0.5, 2, [(-1, 1)])
    with pytest.raises(ValueError):
        truncated_radius_r_mode_search(DECAY, 0.5, 2, [(1, -1), (0, 0)])
    with pytest.raises(ValueError):
        truncated_radius_r_mode_search(DECAY, 0.5, 5, [(0, 0)] * 5)


# ---------------------------------------------------------------------------
# experiment rows


def test_experiment_rows():
    rows = run_experiment({"family": "besov", "p": 1, "dims": [1, 2, 4], "radii": [0.5, 1.0],
                           "x": [0.1], "samples": 5000, "seed": 8})
    assert [(row["n"], row["r"]) for row in rows] == [(n, r) for r in (0.5, 1.0) for n in (1, 2, 4)]
    assert all(set(row) == {"n", "r", "estimate", "se", "bound", "pass"} and row["pass"] for row in rows)
    rows = run_experiment({"experiment": "anderson", "p": 2, "x": [1.0, 0.5], "radii": [0.3],
                           "samples": 5000, "seed": 8})
    # the support-space weights are all one for p = 2, s = 1
    assert rows[0]["bound"] == pytest.approx(anderson_bound(math.hypot(1.0, 0.5), 0.3, 2))
    assert rows[0]["pass"] and rows[0]["n"] == 2
    with pytest.raises(ValueError):
        run_experiment({"experiment": "nope"})


def test_experiment_rows_are_deterministic():
    cfg = {"family": "gaussian", "dims": [1, 4], "radii": [0.7], "samples": 3000, "seed": 21}
    assert run_experiment(cfg) == run_experiment(dict(cfg))


# ---------------------------------------------------------------------------
# properties


@PROPERTY
@given(st.integers(0, 2 ** 31), st.integers(1, 4), st.floats(0.3, 2.0))
def test_identical_seeds_give_identical_estimates(seed, n, r):
    a = mu_n_ball_mass(DECAY, [0.1, -0.2], r, n, MIN_SAMPLES, seed=seed)
    b = mu_n_ball_mass(DECAY, [0.1, -0.2], r, n, MIN_SAMPLES, seed=seed)
    assert a == b and a.to_json() == b.to_json()


@PROPERTY
@given(st.integers(1, 40), st.integers(1, 6), st.floats(1.0, 2.0), st.data())
def test_compiled_and_fallback_kernels_agree(rows, cols, p, data):
    y = data.draw(arrays(np.float64, (rows, cols), elements=st.floats(-10, 10)))
    c = data.draw(arrays(np.float64, cols, elements=st.floats(-3, 3)))
    w = data.draw(arrays(np.float64, cols, elements=st.floats(0.1, 5)))
    dims = np.array(sorted(set(data.draw(st.lists(st.integers(1, cols), min_size=1, max_size=3)))), dtype=np.int64)
    want = _mc_kernel_py.partial_norms_p(y, c, w, p, dims)
    got = _kernels.partial_norms_p(np.ascontiguousarray(y), c, w, p, dims)
    np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-300)


@PROPERTY
@given(arrays(np.float64, st.integers(1, 12), elements=st.floats(-5, 5)), st.floats(1.0, 3.0))
def test_partial_norms_are_nondecreasing(x, p):
    sp = WeightedLpSpace(p, lambda k: 1.0 / k)
    norms = sp.partial_norms(x)
    assert np.all(np.diff(norms) >= -1e-12) and norms[-1] == pytest.approx(sp.norm(x))


@PROPERTY
@given(st.sampled_from(["gaussian", "besov"]), arrays(np.float64, 3, elements=st.floats(-0.3, 0.3)),
       st.floats(0.8, 2.0), st.integers(0, 10 ** 6))
def test_truncated_masses_shrink_with_dimension(family, x, r, seed):
    mu = DECAY if family == "gaussian" else BESOV1
    r = r if family == "gaussian" else 2 * r
    est = mu_n_profile(mu, x, r, [1, 2, 4, 8, 16], MIN_SAMPLES * 2, seed)
    assert monotone_in_n(est)
    assert all(b.mean <= a.mean for a, b in zip(est, est[1:]))
