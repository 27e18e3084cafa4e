"""Examples on the real line: oscillating radial CDFs, hidden modes, upward closures."""
from __future__ import annotations

from fractions import Fraction

import mpmath

from ..exact import CertifiedInterval, compare, exact, pow_half
from ..germs import KnotPattern
from ..measures import (ClippedPolyBump, FarBumpsTail, GeometricCluster, KnotRCDF, Mixture,
                        PiecewisePolyDensity, ball_mass)
from ..modes import amf_upward_intersection, build_amf, generalised_mode_check, radius_r_modes, strong_mode_check
from ..preorder import (Relation, as_relation, compare_limit, maximal_and_greatest, ratio_limits,
                        transitivity_audit)
from .base import Fact, GalleryItem, all_pass


def _q(mu, x, y, r):
    return exact(mu.mass(x, r) / mu.mass(y, r))


def _sample_radii(count: int = 240):
    """Deterministic spread of radii in ``(0, 1]`` over many scales."""
    out = []
    for n in range(0, 24):
        for j in range(10):
            out.append(Fraction(97 + 91 * j, 1000 * 2 ** n))
    return sorted(set(out), reverse=True)[:count]


# ---------------------------------------------------------------------------
# two interleaved square-root profiles


def oscillation_components(a):
    """Radial CDFs (even knots, odd knots) interpolating ``sqrt(r)`` at ``a**-n``."""
    a = exact(a)
    if not (isinstance(a, Fraction) and a > 1):
        raise ValueError("a must be a rational greater than 1")
    even = KnotPattern(Fraction(1), a ** -2, 1 / a, (Fraction(1),), (Fraction(1),))
    odd = KnotPattern(1 / a, a ** -2, 1 / a, (1 / a,), (pow_half(a, -1),))
    return even, odd


def oscillation_alpha(a):
    a = exact(a)
    return exact((a + 1) / 2 * pow_half(a, -1))


def make_oscillation_pair(a=Fraction(2)) -> GalleryItem:
    a = exact(a)
    even, odd = oscillation_components(a)
    mu_e = KnotRCDF(-1, even)
    mu_o = KnotRCDF(1, odd, outer=((Fraction(1), Fraction(1)),))
    mu = Mixture([mu_e, mu_o], Z=2)
    mu.grid_base = a
    alpha = oscillation_alpha(a)
    inv = exact(1 / alpha)
    cands = [Fraction(-1), Fraction(1), Fraction(0), Fraction(1, 2), Fraction(-1, 2),
             Fraction(3, 2), Fraction(-3, 2)]

    def knots(m):
        out = []
        for n in range(1, 24):
            want = alpha if n % 2 == 0 else inv
            got = _q(m, -1, 1, a ** -n)
            out.append((got == want, got, want))
        return all_pass(out)

    def band(m):
        out = []
        for r in _sample_radii():
            got = _q(m, -1, 1, r)
            out.append((inv <= got <= alpha, got, (inv, alpha)))
        return all_pass(out)

    def limits(m):
        lim = ratio_limits(m, -1, 1)
        ok = lim.exact and lim.liminf == inv and lim.limsup == alpha
        return ok, (lim.liminf, lim.limsup), (inv, alpha)

    def incomparable(m):
        v = compare_limit(m, -1, 1).relation
        return v == Relation.INCOMPARABLE, v.value, Relation.INCOMPARABLE.value

    def maximal(m):
        mx, gr = maximal_and_greatest(m, cands)
        ok = sorted(mx) == [-1, 1] and gr == []
        return ok, (sorted(mx), gr), ([-1, 1], [])

    def even_rcdf(m):
        out = []
        for n in range(0, 20, 2):
            got = mu_e.F(a ** -n)
            want = pow_half(a, -n)
            out.append((got == want, got, want))
        out.append((mu_e.F(2) == 1, mu_e.F(2), 1))
        return all_pass(out)

    def unit_components(m):
        return mu_e.total() == 1 and mu_o.total() == 1, (mu_e.total(), mu_o.total()), (1, 1)

    def not_generalised(m):
        seq_plus = [a ** (-2 * n) for n in range(2, 14)]
        seq_minus = [a ** (-2 * n - 1) for n in range(2, 14)]
        vp = generalised_mode_check(m, 1, [seq_plus])[0].verdict
        vm = generalised_mode_check(m, -1, [seq_minus])[0].verdict
        return vp == vm == "Rejected", (vp, vm), ("Rejected", "Rejected")

    facts = [
        Fact("knot-ratios", "ratio at a^-n is alpha for even n and 1/alpha for odd n", knots),
        Fact("ratio-band", "the ratio stays in [1/alpha, alpha] for every r", band),
        Fact("ratio-limits", "liminf and limsup of the ratio are 1/alpha and alpha", limits),
        Fact("incomparable", "-1 and +1 are incomparable", incomparable),
        Fact("maximal-not-greatest", "+-1 are maximal and nothing is greatest", maximal),
        Fact("even-knot-values", "the even profile equals sqrt(r) at even knots and 1 beyond 1", even_rcdf),
        Fact("unit-components", "both profiles have unit mass", unit_components),
        Fact("not-generalised", "neither +1 nor -1 survives the generalised check", not_generalised),
    ]
    return GalleryItem("oscillation", {"a": a}, mu, facts, {}, "line", {"alpha": alpha})


# ---------------------------------------------------------------------------
# the family of coprime oscillating profiles


def rcdf_knot_value(k: int, a, n: int):
    """Radial CDF of the untruncated profile at ``a**-n``."""
    return pow_half(a, -n) if n % k else pow_half(a, 1 - n)


def rcdf_density(k: int, a, t):
    """Density of the untruncated profile at distance ``t > 0`` from its centre."""
    a = exact(a)
    t = exact(t)
    if t > 1 / a:
        return Fraction(0)
    n = 0
    while a ** -(n + 1) >= t:
        n += 1
    # a**-(n+1) < t <= a**-n
    if n % k == 0:
        return exact(pow_half(a, n + 1) / 2)
    if (n + 1) % k == 0:
        return Fraction(0)
    c = exact((1 - pow_half(a, -1)) / (1 - 1 / a))
    return exact(pow_half(a, n) * c / 2)


def rcdf_pattern(k: int, a) -> KnotPattern:
    a = exact(a)
    if not (isinstance(k, int) and k >= 2):
        raise ValueError("k must be an integer >= 2")
    if not (isinstance(a, Fraction) and a > 1):
        raise ValueError("a must be a rational greater than 1")
    radii = tuple(a ** -n for n in range(1, k + 1))
    values = tuple(rcdf_knot_value(k, a, n) for n in range(1, k + 1))
    return KnotPattern(1 / a, a ** -k, pow_half(a, -k), radii, values, exponent=Fraction(1, 2))


def truncation_radius(k: int, m, a):
    """Smallest ``s`` with radial CDF equal to ``m``, by walking down the knots."""
    a, m = exact(a), exact(m)
    if not m > 0:
        raise ValueError("m must be positive")
    if m > rcdf_knot_value(k, a, 1):
        raise ValueError(f"m exceeds the total mass {rcdf_knot_value(k, a, 1)} of the profile")
    n = 1
    while True:
        hi, lo = rcdf_knot_value(k, a, n), rcdf_knot_value(k, a, n + 1)
        if lo < m <= hi:
            return exact(a ** -(n + 1) + (m - lo) * (a ** -n - a ** -(n + 1)) / (hi - lo))
        n += 1


def make_rcdf_profile(k: int, m, a=Fraction(2), center=Fraction(0)) -> KnotRCDF:
    return KnotRCDF(center, rcdf_pattern(k, a), truncation=truncation_radius(k, m, a))


def _log_spread(top, count: int, seed: int = 12345):
    """``count`` rationals in ``(0, top]``, log-spread, deterministic."""
    import random
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        e = rng.randrange(0, 40)
        num = rng.randrange(1, 10 ** 6)
        out.append(exact(top * Fraction(num, 10 ** 6) / 2 ** e))
    return out


def rcdf_family_facts(k: int, m, a, k2: int = None, m2=None, samples: int = 1000) -> list:
    a, m = exact(a), exact(m)
    prof = make_rcdf_profile(k, m, a)
    rm = prof.truncation

    def knot_values(mu):
        out = []
        for n in range(1, 31):
            r = a ** -n
            if r <= rm:
                got, want = mu.mass(0, r), rcdf_knot_value(k, a, n)
                out.append((got == want, got, want))
        return all_pass(out)

    def total(mu):
        return mu.total() == m, mu.total(), m

    def bracket(mu):
        out = []
        for s in _log_spread(rm, samples):
            F2 = exact(mu.mass(0, s) ** 2)
            out.append((s / a <= F2 <= a * s, F2, (s / a, a * s)))
        return all_pass(out)

    def radius_bound(mu):
        return compare(rm, a * m * m) <= 0, rm, a * m * m

    def density_bound(mu):
        out = []
        for t in _log_spread(1 / a, samples, seed=777):
            rho = rcdf_density(k, a, t)
            out.append((exact(rho * rho * t) <= 1, exact(rho * rho * t), 1))
        return all_pass(out)

    def slope_matches(mu):
        out = []
        for n in range(2, 14):
            lo, hi = a ** -(n + 1), a ** -n
            if hi > rm:
                continue
            t = exact((lo + hi) / 2)
            slope = exact((mu.mass(0, hi) - mu.mass(0, lo)) / (hi - lo))
            want = exact(2 * rcdf_density(k, a, t))
            out.append((slope == want, slope, want))
        return all_pass(out)

    facts = [
        Fact("knot-values", "radial CDF at a^-n is a^(-n/2), or a^((1-n)/2) when k divides n", knot_values),
        Fact("truncated-mass", "the truncated profile has mass m", total),
        Fact("sqrt-bracket", "s/a <= F(s)^2 <= a s below the truncation radius", bracket),
        Fact("truncation-radius", "r(m) <= a m^2", radius_bound),
        Fact("density-bound", "rho(t)^2 t <= 1", density_bound),
        Fact("density-slope", "the radial CDF slope is twice the density", slope_matches),
    ]
    if k2 is not None:
        facts.append(Fact("coprime-oscillation", "ratios sqrt(a) and 1/sqrt(a) recur along knot subsequences",
                          lambda mu: coprime_oscillation(k, m, k2, m2, a)))
    return facts


def coprime_oscillation(k: int, m, k2: int, m2, a, n_max: int = 60):
    """Ratios of two profiles along ``n = (i k2 - 1) k`` and ``n = (i k - 1) k2``."""
    a = exact(a)
    p1, p2 = make_rcdf_profile(k, m, a), make_rcdf_profile(k2, m2, a)
    top = min(p1.truncation, p2.truncation)
    up, down = [], []
    for i in range(1, n_max):
        n = (i * k2 - 1) * k
        if n <= n_max and a ** -n <= top:
            up.append(exact(p1.F(a ** -n) / p2.F(a ** -n)))
        n = (i * k - 1) * k2
        if n <= n_max and a ** -n <= top:
            down.append(exact(p1.F(a ** -n) / p2.F(a ** -n)))
    s, t = pow_half(a, 1), pow_half(a, -1)
    ok = len(up) >= 2 and len(down) >= 2 and all(q == s for q in up) and all(q == t for q in down)
    return ok, (up[:3], down[:3]), (s, t)


def make_rcdf_family(k: int = 2, m=Fraction(1, 2), a=Fraction(2), k2: int = 3, m2=Fraction(1, 8)) -> GalleryItem:
    a, m = exact(a), exact(m)
    prof = make_rcdf_profile(k, m, a)
    prof.grid_base = a
    facts = rcdf_family_facts(k, m, a, k2, m2)
    return GalleryItem("rcdf-family", {"k": k, "m": m, "a": a, "k2": k2, "m2": m2}, prof, facts,
                       {"truncation_radius": prof.truncation})


# ---------------------------------------------------------------------------
# two bumps: one wins at every radius, both are strong modes


def bimodal_half_width():
    """Positive root of ``1 - u**2 - u**4`` to 200 bits, with a sign check at both ends."""
    with mpmath.workprec(260):
        w = mpmath.sqrt((mpmath.sqrt(5) - 1) / 2)
        lo = Fraction(int(mpmath.floor(w * 2 ** 200)), 2 ** 200)
    hi = lo + Fraction(1, 2 ** 200)

    def P(u):
        return 1 - u ** 2 - u ** 4

    if not (P(lo) > 0 > P(hi)):
        raise ArithmeticError("root bracket failed")
    return CertifiedInterval(lo, hi)


def make_bimodal_hiding() -> GalleryItem:
    w = bimodal_half_width()
    plus = ClippedPolyBump(1, (1, 0, -1), 1)
    minus = ClippedPolyBump(-1, (1, 0, -1, 0, -1), w)
    mu = Mixture([plus, minus])
    radii = [Fraction(3, 10), Fraction(1, 4), Fraction(1, 5), Fraction(1, 8), Fraction(1, 10),
             Fraction(1, 16), Fraction(1, 50), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 2 ** 20)]
    grid = [Fraction(1, 2 ** n) for n in range(2, 16)]

    def plus_branch(m):
        out = []
        for r in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 7)):
            got, want = m.mass(1, r), exact(2 * r - Fraction(2, 3) * r ** 3)
            out.append((got == want, got, want))
        return all_pass(out)

    def minus_branch(m):
        out = []
        for r in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 7)):
            got, want = m.mass(-1, r), exact(2 * r - Fraction(2, 3) * r ** 3 - Fraction(2, 5) * r ** 5)
            out.append((got == want, got, want))
        return all_pass(out)

    def ratio(m):
        out = []
        for r in radii:
            got = _q(m, -1, 1, r)
            want = exact(1 - Fraction(2, 5) * r ** 4 / (2 - Fraction(2, 3) * r ** 2))
            out.append((got == want and got < 1, got, want))
        return all_pass(out)

    def ratio_limit(m):
        lim = ratio_limits(m, -1, 1)
        return lim.exact and lim.liminf == lim.limsup == 1, (lim.liminf, lim.limsup), (1, 1)

    def modes(m):
        out = []
        for r in radii:
            got = radius_r_modes(m, r, "line")
            out.append((got == [1], got, [1]))
        return all_pass(out)

    def strong(m):
        out = []
        for x in (1, -1):
            res = strong_mode_check(m, x, grid)
            out.append((res.exact and res.accepted and res.liminf == res.limsup == 1, (res.liminf, res.limsup), (1, 1)))
        return all_pass(out)

    def amf(m):
        rec = build_amf(m, "r", grid[:8], "line")
        keep = amf_upward_intersection(m, rec, [Fraction(-1), Fraction(1), Fraction(0)])
        return keep == [1], keep, [1]

    facts = [
        Fact("plus-branch", "mass at +1 is 2r - (2/3) r^3", plus_branch),
        Fact("minus-branch", "mass at -1 is 2r - (2/3) r^3 - (2/5) r^5", minus_branch),
        Fact("ratio-below-one", "the ratio of -1 to +1 is below 1 at every radius", ratio),
        Fact("ratio-limit", "the ratio tends to 1", ratio_limit),
        Fact("unique-radius-mode", "+1 is the unique radius-r mode for r <= 0.3", modes),
        Fact("both-strong", "both -1 and +1 pass the strong-mode check", strong),
        Fact("amf-excludes-minus", "the upward sets of the maximising family exclude -1", amf),
    ]
    return GalleryItem("bimodal-hiding", {}, mu, facts, {"half_width": w})


# ---------------------------------------------------------------------------
# upward closures


def make_upward_closure_a() -> GalleryItem:
    mu = PiecewisePolyDensity((0, 1), [(0, 2)])
    grid = [Fraction(j, 8) for j in range(-4, 13)]

    def ratio(m):
        out = []
        for y in (Fraction(5, 8), Fraction(3, 4), Fraction(7, 8), Fraction(2, 3)):
            lim = ratio_limits(m, 1, y)
            want = exact(1 / (2 * y))
            out.append((lim.exact and lim.liminf == lim.limsup == want, lim.liminf, want))
            v = compare_limit(m, 1, y).relation
            out.append((v == Relation.STRICTLY_LESS, v.value, Relation.STRICTLY_LESS.value))
        return all_pass(out)

    def closure(m):
        up = [y for y in grid if compare_limit(m, 1, y).relation.holds_le]
        want = [y for y in grid if Fraction(1, 2) <= y <= 1]
        return up == want, up, want

    def total(m):
        return m.total() == 1, m.total(), 1

    facts = [
        Fact("ratio", "the limiting ratio of 1 to y is 1/(2y) for 1/2 < y < 1", ratio),
        Fact("closure", "the upward closure of 1 on the grid is [1/2, 1]", closure),
        Fact("total-mass", "total mass is 1", total),
    ]
    return GalleryItem("upward-closure-a", {}, mu, facts)


def make_upward_closure_b(N: int = 12) -> GalleryItem:
    breaks, polys = [], []
    for n in range(1, N + 1):
        h = Fraction(1, 2 ** (n + 1) * n)
        if breaks:
            polys.append((0,))
        breaks += [n - h, n + h]
        polys.append((n,))
    mu = Mixture([PiecewisePolyDensity(breaks, polys)], [FarBumpsTail(N)], Z=1)
    pts = list(range(1, min(N, 8) + 1))

    def ratio(m):
        out = []
        for y in pts:
            for x in pts:
                if x > y:
                    lim = ratio_limits(m, x, y)
                    want = Fraction(x, y)
                    out.append((lim.exact and lim.liminf == lim.limsup == want, lim.liminf, want))
        return all_pass(out)

    def closure(m):
        out = []
        for y in pts:
            up = [z for z in pts if compare_limit(m, y, z).relation.holds_le]
            want = [z for z in pts if z >= y]
            out.append((up == want, up, want))
        return all_pass(out)

    def masses(m):
        out = []
        for n in pts:
            got = m.mass(n, Fraction(1, 2))
            out.append((got == Fraction(1, 2 ** n), got, Fraction(1, 2 ** n)))
        return all_pass(out)

    facts = [
        Fact("ratio", "the limiting ratio of x to y is x/y for integers x > y", ratio),
        Fact("closure", "the upward closure of y contains every integer from y on", closure),
        Fact("bump-masses", "the bump at n carries mass 2^-n", masses),
    ]
    return GalleryItem("upward-closure-b", {"N": N}, mu, facts, {"tail_mass": Fraction(1, 2 ** N)})


# ---------------------------------------------------------------------------
# relations that fail to be transitive


def limsup_nontransitive_measure() -> Mixture:
    half = Fraction(1, 2)
    f = GeometricCluster(-2, [(-half, Fraction(7, 32)), (half, Fraction(7, 32))], Fraction(1, 8), Fraction(1, 8))
    g = GeometricCluster(2, [(-half, Fraction(7, 64)), (half, Fraction(7, 64))], Fraction(1, 8), Fraction(1, 8))
    h = GeometricCluster(0, [(-half, Fraction(63, 128)), (half, Fraction(63, 128))], Fraction(1, 64),
                         Fraction(1, 64))
    mu = Mixture([f, g, h])
    mu.grid_base = Fraction(8)
    return mu


def nontransitive_targets(n: int):
    """Target radial CDFs at ``2**(2 - 3n)`` around -2, +2 and 0."""
    f = Fraction(1, 2 ** (3 * n - 2))
    g = Fraction(1, 2 ** (3 * n - 1))
    h = Fraction(1, 2 ** (3 * n - 3)) if n % 2 else Fraction(1, 2 ** (3 * n))
    return f, g, h


def make_limsup_nontransitive() -> GalleryItem:
    mu = limsup_nontransitive_measure()
    ns = range(1, 16)

    def targets(m):
        out = []
        for n in ns:
            r = Fraction(1, 2 ** (3 * n - 2))
            got = (m.mass(-2, r), m.mass(2, r), m.mass(0, r))
            want = nontransitive_targets(n)
            out.append((got == want, got, want))
        return all_pass(out)

    def pattern(x, y, odd, even):
        def check(m):
            out = []
            for n in ns:
                r = Fraction(1, 2 ** (3 * n - 2))
                want = odd if n % 2 else even
                got = _q(m, x, y, r)
                out.append((got == want, got, want))
            return all_pass(out)
        return check

    def audit(m):
        bad = transitivity_audit(as_relation(m, "limsup"), [-2, 0, 2])
        return bad == [(-2, 0, 2)], bad, [(-2, 0, 2)]

    def total(m):
        return m.total() == Fraction(7, 4), m.total(), Fraction(7, 4)

    facts = [
        Fact("target-rcdfs", "radial CDFs at -2, +2, 0 match the targets at the knots", targets),
        Fact("ratio-minus2-0", "ratio of -2 to 0 is 1/2 at odd knots and 4 at even knots",
             pattern(-2, 0, Fraction(1, 2), Fraction(4))),
        Fact("ratio-0-plus2", "ratio of 0 to +2 is 4 at odd knots and 1/2 at even knots",
             pattern(0, 2, Fraction(4), Fraction(1, 2))),
        Fact("ratio-minus2-plus2", "ratio of -2 to +2 is 2 at every knot", pattern(-2, 2, Fraction(2), Fraction(2))),
        Fact("limsup-intransitive", "the limsup relation fails transitivity exactly on (-2, 0, +2)", audit),
        Fact("normaliser", "Z = 7/4", total),
    ]
    return GalleryItem("limsup-nontransitive", {}, mu, facts)


def make_uniform_witnesses() -> GalleryItem:
    mu = PiecewisePolyDensity((0, 1), [(1,)])
    radii = [Fraction(1, 2 ** n) for n in range(3, 20)]
    xs = [Fraction(-3), Fraction(-1, 3), Fraction(0), Fraction(1, 7), Fraction(1, 2), Fraction(9, 10),
          Fraction(1), Fraction(5, 4), Fraction(4)]
    outside = [Fraction(-3), Fraction(-1, 3), Fraction(5, 4), Fraction(4), Fraction(11, 10)]

    def masses(m):
        out = []
        for r in radii:
            out.append((ball_mass(m, Fraction(1, 2), r) == 2 * r, ball_mass(m, Fraction(1, 2), r), 2 * r))
            for x in (1 + r + Fraction(1, 10 ** 6), 1 + 2 * r, Fraction(3)):
                out.append((ball_mass(m, x, r) == 0, ball_mass(m, x, r), 0))
        return all_pass(out)

    def claim_a(m):
        # x is dominated by 1 - r at radius r
        out = []
        for r in radii:
            for x in xs:
                out.append((m.mass(x, r) <= m.mass(1 - r, r), (x, r), "mass(x) <= mass(1 - r)"))
        return all_pass(out)

    def claim_b(m):
        out = []
        for r in radii:
            for x in xs:
                out.append((m.mass(1 + r, r) <= m.mass(x, r), (x, r), "mass(1 + r) <= mass(x)"))
        return all_pass(out)

    def claim_cd(m):
        # near a point at distance eps from [0, 1], balls of radius < eps/2 are empty
        out = []
        for x in outside:
            eps = -x if x < 0 else x - 1
            for r in radii:
                if not r < eps / 2:
                    continue
                for j in range(-4, 5):
                    y = x + eps * Fraction(j, 10)
                    out.append((m.mass(y, r) == 0 < m.mass(Fraction(1, 2), r), (x, y, r), "0 < mass(1/2)"))
        return all_pass(out)

    facts = [
        Fact("ball-masses", "mass at 1/2 is 2r and balls beyond 1 + r are empty", masses),
        Fact("dominated-by-1-minus-r", "every x is dominated by 1 - r at radius r", claim_a),
        Fact("1-plus-r-dominated", "1 + r is dominated by every x at radius r", claim_b),
        Fact("outside-points-lose", "points near a point outside [0, 1] never reach 1/2", claim_cd),
    ]
    return GalleryItem("uniform-witnesses", {}, mu, facts)


def make_appendixB_examples():
    return make_limsup_nontransitive(), make_uniform_witnesses()


def make_upward_closure_examples():
    return make_upward_closure_a(), make_upward_closure_b()


__all__ = ["make_oscillation_pair", "make_rcdf_family", "make_rcdf_profile", "truncation_radius", "rcdf_pattern",
           "rcdf_knot_value", "rcdf_density", "coprime_oscillation", "make_bimodal_hiding",
           "make_upward_closure_a", "make_upward_closure_b", "make_upward_closure_examples",
           "make_limsup_nontransitive", "make_uniform_witnesses", "make_appendixB_examples", "oscillation_alpha",
           "bimodal_half_width"]
