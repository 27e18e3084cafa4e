"""Antichains: a dense one in [0, 1] and a two-point one on a countable set."""
from __future__ import annotations

import itertools
from fractions import Fraction

from ..exact import CertifiedInterval, as_interval, compare, exact
from ..measures import Bump, DyadicLevelsTail, GeometricCluster, Mixture
from ..preorder import Relation, compare_at_radius, compare_limit
from .base import Fact, GalleryItem, all_pass
from .dyadic import dyadic_points, prime_index
from .line import make_rcdf_profile, rcdf_knot_value

MAX_LEVEL = 6
A = Fraction(2)


class ResourceLimit(RuntimeError):
    """The requested truncation exceeds the exact-arithmetic budget."""


def level_mass_parameter(level: int) -> Fraction:
    return Fraction(2, 4 ** level)


def dense_antichain_components(L: int) -> list:
    """``(DyadicPoint, prime, profile)`` for every dyadic of level at most ``L``."""
    out = []
    for d in dyadic_points(L):
        p = prime_index(d.level, d.index)
        out.append((d, p, make_rcdf_profile(p, level_mass_parameter(d.level), A, d.value)))
    return out


def designated_radii(p1: int, p2: int, n_min: int = 24) -> tuple:
    """Knot exponents ``n`` where the first profile leads (``p1 | n``) and where it trails."""
    def first(k, k2):
        i = 1
        while (i * k2 - 1) * k < n_min:
            i += 1
        return (i * k2 - 1) * k
    return first(p1, p2), first(p2, p1)


def _others(mu: Mixture, x, own, r):
    acc = Fraction(0)
    for c in mu.parts:
        if c is not own:
            acc = acc + c.mass(x, r)
    for t in mu.tails:
        acc = acc + t.contribution(x, r, True)
    if isinstance(acc, CertifiedInterval):
        return max(abs(acc.lo), abs(acc.hi))
    return abs(exact(acc))


def make_dense_antichain(L: int = 3) -> GalleryItem:
    if L < 1:
        raise ValueError("L must be at least 1")
    if L > MAX_LEVEL:
        raise ResourceLimit(f"levels beyond {MAX_LEVEL} exceed the exact-arithmetic budget")
    comps = dense_antichain_components(L)
    mu = Mixture([c for _, _, c in comps], [DyadicLevelsTail(L)], Z=1)
    C = DyadicLevelsTail.GERM_CONSTANT

    def level_masses(m):
        out = []
        for lev in range(1, L + 1):
            got = exact(sum(c.total() for d, _, c in comps if d.level == lev))
            out.append((got == Fraction(1, 2 ** lev), got, Fraction(1, 2 ** lev)))
        tail = DyadicLevelsTail(L).total()
        out.append((tail == Fraction(1, 2 ** L), tail, Fraction(1, 2 ** L)))
        return all_pass(out)

    def total(m):
        return m.total() == 1, m.total(), 1

    def supports(m):
        out = []
        for d, _, c in comps:
            bound = Fraction(8, 16 ** d.level)
            out.append((c.support_radius <= bound, c.support_radius, bound))
        return all_pass(out)

    def gaps(m):
        out = []
        for lev in range(1, L + 1):
            same = [c for d, _, c in comps if d.level == lev]
            want = Fraction(1, 2 ** lev) - Fraction(16, 16 ** lev)
            for c1, c2 in zip(same, same[1:]):
                gap = exact(c2.center - c1.center - c1.support_radius - c2.support_radius)
                out.append((gap >= want, gap, want))
        if len(out) == 0:
            return True, "single point per level", None
        return all_pass(out)

    def primes(m):
        got = [p for _, p, _ in comps][:3]
        want = [2, 3, 5][:len(got)]
        return got == want, got, want

    def pair_fact(i, j):
        (d1, p1, c1), (d2, p2, c2) = comps[i], comps[j]
        q1, q2 = d1.value, d2.value

        def check(m):
            n_up, n_down = designated_radii(p1, p2)
            out = []
            for n, side in ((n_up, 1), (n_down, -1)):
                r = Fraction(1, 2 ** n)
                m1, m2 = as_interval(m.mass(q1, r)), as_interval(m.mass(q2, r))
                # everything but the own profile, summed directly: far below interval precision here
                err_ok = all(compare(_others(m, q, c, r), C * r) <= 0 for q, c in ((q1, c1), (q2, c2)))
                q = m1 / m2
                sep = q.lo > 1 if side > 0 else q.hi < 1
                out.append((sep and err_ok, (n, float(q.lo), float(q.hi)), "ratio separated from 1"))
            v = compare_limit(m, q1, q2).relation
            out.append((v == Relation.INCOMPARABLE, v.value, Relation.INCOMPARABLE.value))
            return all_pass(out)
        return Fact(f"incomparable-{q1}-{q2}", f"{q1} and {q2} are incomparable", check)

    def knot_values(m):
        out = []
        for d, p, c in comps:
            for n in range(4 * d.level, 4 * d.level + 2 * p + 1):
                r = Fraction(1, 2 ** n)
                if r <= c.truncation:
                    got, want = c.F(r), rcdf_knot_value(p, A, n)
                    out.append((got == want, got, want))
        return all_pass(out)

    facts = [
        Fact("level-masses", "level l carries mass 2^-l", level_masses),
        Fact("total-mass", "total mass including the tail is 1", total),
        Fact("support-radii", "the profile at a level-l dyadic lives within 2^(3-4l)", supports),
        Fact("same-level-gaps", "same-level supports are separated by at least 2^-l - 2^(4-4l)", gaps),
        Fact("prime-indexing", "the first three dyadics carry the primes 2, 3, 5", primes),
        Fact("knot-values", "each profile takes its prescribed values at the knots", knot_values),
    ]
    facts += [pair_fact(i, j) for i, j in itertools.combinations(range(len(comps)), 2)]
    params = {"L": L, "a": A}
    return GalleryItem("dense-antichain", params, mu, facts,
                       {"tail_mass": Fraction(1, 2 ** L), "germ_error_constant": C},
                       "line", {"points": [d.value for d, _, _ in comps], "primes": [p for _, p, _ in comps]})


# ---------------------------------------------------------------------------
# two points on a countable set with ratios 1/4 and 4 infinitely often


def countable_antichain_measure(variant: str) -> Mixture:
    s = Fraction(1, 16)
    if variant == "atomic":
        plus = GeometricCluster(1, [Bump(Fraction(-1, 8), Fraction(1, 8))], s, s)
        minus = GeometricCluster(-1, [Bump(Fraction(1, 16), Fraction(1, 32))], s, s)
    elif variant == "triangle":
        plus = GeometricCluster(1, [Bump(Fraction(-1, 4), Fraction(1, 8), Fraction(1, 8))], s, s)
        minus = GeometricCluster(-1, [Bump(Fraction(1, 16), Fraction(1, 32), Fraction(1, 32))], s, s)
    else:
        raise ValueError("variant must be 'atomic' or 'triangle'")
    mu = Mixture([plus, minus])
    mu.grid_base = Fraction(2)
    return mu


def make_countable_space_antichain(variant: str = "atomic") -> GalleryItem:
    mu = countable_antichain_measure(variant)
    closed = variant == "triangle"
    ks = range(1, 9)

    def ratios(m):
        out = []
        for k in ks:
            for r, want in ((Fraction(2, 16 ** k), Fraction(1, 4)), (Fraction(1, 2 * 16 ** k), Fraction(4))):
                got = exact(m.mass(1, r, closed) / m.mass(-1, r, closed))
                out.append((got == want, got, want))
        return all_pass(out)

    def radius_verdicts(m):
        out = []
        for r, want in ((Fraction(1, 8), Relation.STRICTLY_LESS), (Fraction(1, 32), Relation.STRICTLY_GREATER)):
            v = compare_at_radius(m, 1, -1, r, closed).relation
            out.append((v == want, v.value, want.value))
        return all_pass(out)

    def incomparable(m):
        v = compare_limit(m, 1, -1).relation
        return v == Relation.INCOMPARABLE, v.value, Relation.INCOMPARABLE.value

    def total(m):
        return m.total() == Fraction(1, 6), m.total(), Fraction(1, 6)

    facts = [
        Fact("ratios", "the ratio of +1 to -1 is 1/4 at 2^(1-4k) and 4 at 2^(-1-4k)", ratios),
        Fact("radius-verdicts", "+1 loses at r = 1/8 and wins at r = 1/32", radius_verdicts),
        Fact("incomparable", "+1 and -1 are incomparable", incomparable),
        Fact("normaliser", "Z = 1/6", total),
    ]
    if variant == "triangle":
        def peak(m):
            # triangle of half-width w and height h: mass of [p - s, p + s] is h (2 s - s^2 / w)
            out = []
            c = m.components()[0]
            b = c.bumps[0]
            w, mass = b.half_width, b.mass
            h = mass / w
            p = 1 + b.offset
            for s in (Fraction(1, 64), Fraction(1, 100), Fraction(1, 1000)):
                got = c.mass(p, s)
                want = exact(h * (2 * s - s * s / w))
                out.append((got == want, got, want))
            out.append((h == 1, h, 1))
            return all_pass(out)
        facts.append(Fact("triangle-peak", "each triangle has peak height h at its centre", peak))
    return GalleryItem(f"countable-antichain-{variant}", {"variant": variant, "closed_balls": closed}, mu, facts)


__all__ = ["make_dense_antichain", "make_countable_space_antichain", "dense_antichain_components",
           "designated_radii", "ResourceLimit", "MAX_LEVEL"]
