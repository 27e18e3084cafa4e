"""Independent reference computations.

None of these call into the package's evaluation code: they use brute
force, mpmath quadrature or closed forms.
"""
import itertools
import math
from fractions import Fraction

import mpmath


def atomic_ball_mass(atoms: dict, dist, x, r, closed=True):
    """Sum of atom masses within distance ``r`` of ``x``."""
    return sum((m for p, m in atoms.items() if (dist(x, p) <= r if closed else dist(x, p) < r)), Fraction(0))


def l1_distance(p, q):
    return sum(abs(a - b) for a, b in zip(p, q))


def piecewise_poly_interval_mass(breaks, polys, u, v):
    """Exact integral of a piecewise polynomial density over ``[u, v]`` by term-wise antiderivatives."""
    total = Fraction(0)
    for (a, b), coeffs in zip(zip(breaks, breaks[1:]), polys):
        lo, hi = max(Fraction(u), a), min(Fraction(v), b)
        if lo < hi:
            total += sum(Fraction(c) * (hi ** (i + 1) - lo ** (i + 1)) / (i + 1) for i, c in enumerate(coeffs))
    return total


def quad_mass(density, u, v, points=()):
    """mpmath quadrature of ``density`` on ``[u, v]``, split at ``points``."""
    def mpf(q):
        q = Fraction(q)
        return mpmath.mpf(q.numerator) / q.denominator

    with mpmath.workdps(30):
        nodes = sorted({mpf(u), mpf(v)} | {mpf(p) for p in points if u < p < v})
        return mpmath.quad(density, nodes)


def oscillation_alpha(a):
    return (a + 1) / (2 * math.sqrt(a))


def knot_interp(knots, r):
    """Piecewise-linear interpolation through ``(radius, value)`` knots, floats."""
    knots = sorted(knots)
    for (r1, v1), (r2, v2) in zip(knots, knots[1:]):
        if r1 <= r <= r2:
            return v1 + (r - r1) * (v2 - v1) / (r2 - r1)
    raise ValueError("radius outside the knot range")


def oscillation_rcdfs(a, n_max=40):
    """Float knots of the even and odd profiles: value ``a^(-n/2)`` at ``a^-n`` on the matching parity."""
    even = [(a ** -n, a ** (-n / 2)) for n in range(0, n_max + 1, 2)]
    odd = [(a ** -n, a ** (-n / 2)) for n in range(1, n_max + 1, 2)] + [(1.0, 1.0)]
    return even, odd


def gaussian_interval(c, r, scale=1.0):
    return 0.5 * (math.erf((c + r) / (scale * math.sqrt(2))) - math.erf((c - r) / (scale * math.sqrt(2))))


def argmax_all(values: dict):
    best = max(values.values())
    return {k for k, v in values.items() if v == best}


def triples(points):
    return list(itertools.permutations(points, 3))
