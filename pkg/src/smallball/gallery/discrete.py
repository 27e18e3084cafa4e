"""Countable spaces whose ball masses have no maximiser."""
from __future__ import annotations

from fractions import Fraction

from ..exact import compare, exact
from ..measures import Atomic, FarSlicesTail, FunnyTail, Mixture, SegmentFamily, SliceTail, ball_mass
from ..metric import FunnyDiscrete, TwoLevelSpace, funny_delta
from ..modes import CountableDomain, sup_ball_mass
from .base import Fact, GalleryItem, all_pass


def _level(r) -> int:
    """``n`` with ``2**-n <= r < 2**(1-n)``."""
    r = exact(r)
    n = 0
    while Fraction(2) ** -n > r:
        n += 1
    while Fraction(2) ** (1 - n) <= r:
        n -= 1
    return n


# ---------------------------------------------------------------------------
# weighted atoms on the funny discrete space


class FunnyDomain(CountableDomain):
    """Every positive integer; the first ``N`` are explicit candidates."""

    name = "funny-discrete"

    def __init__(self, N: int):
        self.N = N

    def candidates(self, r):
        return list(range(1, self.N + 1))

    def remainder_supremum(self, r):
        r = exact(r)
        if r < 1:
            return Fraction(1, 2 ** (self.N + 1)), None
        if r < 2:
            first = self.N + 1 if self.N % 2 == 0 else self.N + 2
            return Fraction(1), lambda j: first + 2 * j
        return Fraction(1), None


def make_discrete_no_mode(N: int = 48) -> GalleryItem:
    if N < 2:
        raise ValueError("N must be at least 2")
    mu = Mixture([Atomic(FunnyDiscrete(), {k: Fraction(1, 2 ** k) for k in range(1, N + 1)})],
                 [FunnyTail(N)], Z=1)
    dom = FunnyDomain(N)
    kmax = min(20, (N - 1) // 2)

    def odd_even(m):
        out = []
        for k in range(1, kmax + 1):
            out.append((ball_mass(m, 2 * k - 1, 1) == 1 - Fraction(1, 4 ** k), ball_mass(m, 2 * k - 1, 1),
                        1 - Fraction(1, 4 ** k)))
            out.append((ball_mass(m, 2 * k, 1) == 1 - Fraction(2, 4 ** k), ball_mass(m, 2 * k, 1),
                        1 - Fraction(2, 4 ** k)))
        return all_pass(out)

    def small_r(m):
        out = []
        for r in (Fraction(1, 2), Fraction(9, 10), Fraction(1, 100)):
            rep = sup_ball_mass(m, r, dom)
            out.append((rep.attained and rep.maximisers == [1] and rep.complete and rep.M_r == Fraction(1, 2),
                        (rep.maximisers, rep.M_r), ([1], Fraction(1, 2))))
        return all_pass(out)

    def middle_r(m):
        out = []
        for r in (Fraction(1), Fraction(3, 2)):
            rep = sup_ball_mass(m, r, dom)
            out.append((rep.attained is False and rep.M_r == 1 and len(rep.witness) > 0,
                        (rep.attained, rep.M_r), (False, 1)))
        return all_pass(out)

    def large_r(m):
        rep = sup_ball_mass(m, 2, dom)
        return (rep.attained and rep.M_r == 1 and rep.maximisers == list(range(1, N + 1)) and not rep.complete,
                (rep.M_r, len(rep.maximisers)), (1, N))

    def metric(m):
        return all_pass([(funny_delta(3, 4) == 2, funny_delta(3, 4), 2), (funny_delta(2, 3) == 1, funny_delta(2, 3), 1),
                         (all(funny_delta(k, k) == 0 for k in range(1, 10)), 0, 0)])

    def total(m):
        return m.total() == 1, m.total(), 1

    facts = [
        Fact("radius-1-masses", "radius-1 ball masses are 1 - 4^-k at 2k-1 and 1 - 2^-(2k-1) at 2k", odd_even),
        Fact("unique-mode-below-1", "for r < 1 the point 1 is the unique radius-r mode", small_r),
        Fact("no-mode-1-to-2", "for 1 <= r < 2 the supremum 1 is approached but not attained", middle_r),
        Fact("all-modes-from-2", "for r >= 2 every point is a radius-r mode", large_r),
        Fact("metric", "pairs (2j-1, 2j) sit at distance 2, others at distance 1", metric),
        Fact("total-mass", "total mass is 1", total),
    ]
    return GalleryItem("discrete-no-mode", {"N": N}, mu, facts, {"tail_mass": Fraction(1, 2 ** N)}, dom)


# ---------------------------------------------------------------------------
# segments in slices of the two-level space


class TwoLevelDomain(CountableDomain):
    """All points of the two-level space, with the supremum found slice by slice.

    For ``2**-n <= r < 2**(1-n)``: a ball centred in slice ``m > n`` holds
    the whole slice, so slice ``n + 1`` dominates those; in slice ``n`` the
    ball misses only the partner segment; in a slice ``m < n`` the ball stays
    in one segment and ``(0, 1, m)`` is best.
    """

    name = "two-level"

    def __init__(self, sigma, K: int, M: int):
        self.sigma, self.K, self.M = exact(sigma), K, M

    def _slice_total(self, m):
        return exact((2 * self.sigma) ** -m)

    def candidates(self, r):
        n = _level(r)
        if r >= 1:
            return [(0, 1, 1)]
        if n + 1 > self.M:
            raise ValueError(f"radius {r} needs more than {self.M} explicit slices")
        return [(0, 1, m) for m in range(1, n)] + [(0, k, n) for k in range(1, 5)] + [(0, 1, n + 1)]

    def remainder_supremum(self, r):
        r = exact(r)
        n = _level(r)
        if r >= 2:
            return exact(sum(self._slice_total(m) for m in range(1, self.M + 1)) +
                         FarSlicesTail(self.M, self.sigma).total()), None
        if r >= 1:
            return self._slice_total(1), None
        first = 5
        return self._slice_total(n), lambda j: (0, first + 2 * j, n)


def _two_level_Z(sigma):
    return exact(1 / (2 * sigma - 1))


def make_two_level_no_mode(sigma=Fraction(5, 8), K: int = 8, M: int = 16) -> GalleryItem:
    sigma = exact(sigma)
    if not Fraction(1, 2) < sigma < 1:
        raise ValueError("sigma must lie in (1/2, 1)")
    segs = []
    for m in range(1, M + 1):
        for k in range(1, K + 1):
            segs.append(((k, m), Fraction(1, 2 ** (k + m + 1)), exact(sigma ** -m)))
    tails = [SliceTail(m, K, sigma) for m in range(1, M + 1)] + [FarSlicesTail(M, sigma)]
    Z = _two_level_Z(sigma)
    mu = Mixture([SegmentFamily(segs)], tails, Z=Z, space=TwoLevelSpace())
    dom = TwoLevelDomain(sigma, K, M)
    radii = two_level_radii()
    facts = two_level_facts(sigma, dom, radii)
    return GalleryItem("two-level", {"sigma": sigma, "K": K, "M": M}, mu, facts,
                       {"far_slices_mass": FarSlicesTail(M, sigma).total()}, dom)


def two_level_radii() -> list:
    """Ten radii in ``(0, 1/8)``, several inside one dyadic band."""
    return [Fraction(1, 16), Fraction(3, 32), Fraction(5, 64), Fraction(1, 32), Fraction(7, 128),
            Fraction(1, 128), Fraction(3, 256), Fraction(1, 512), Fraction(1000, 2 ** 20), Fraction(1, 4096)]


def two_level_facts(sigma, dom, radii) -> list:
    Z = _two_level_Z(sigma)

    def supremum(mu):
        out = []
        for r in radii:
            n = _level(r)
            rep = sup_ball_mass(mu, r, dom)
            want = exact((2 * sigma) ** -n / Z)
            out.append((rep.attained is False and rep.M_r == want, (rep.attained, rep.M_r), (False, want)))
        return all_pass(out)

    def case_same_slice(mu):
        out = []
        for r in radii:
            n = _level(r)
            for k in range(1, 10, 2):
                want = exact((2 * sigma) ** -n * (1 - Fraction(1, 2 ** (k + 1))) / Z)
                got = ball_mass(mu, (0, k, n), r)
                out.append((got == want, got, want))
        return all_pass(out)

    def case_finer_slices(mu):
        out = []
        for r in radii:
            n = _level(r)
            bound = exact((2 * sigma) ** -n / Z)
            for m in range(n + 1, n + 4):
                for k in (1, 2, 3):
                    got = ball_mass(mu, (0, k, m), r)
                    cap = exact((2 * sigma) ** -m / Z)
                    out.append((got <= cap < bound, got, cap))
        return all_pass(out)

    def case_coarser_slices(mu):
        # centred points of the widest segment dominate each coarser slice
        out = []
        for r in radii:
            n = _level(r)
            bound = exact((2 * sigma) ** -n / Z)
            for m in range(1, n):
                got = ball_mass(mu, (0, 1, m), r)
                out.append((compare(got, bound) == -1, got, bound))
        return all_pass(out)

    def total(mu):
        return mu.total() == Z, mu.total(), Z

    def metric(mu):
        sp = TwoLevelSpace()
        d = sp.distance((0, 1, 1), (0, 1, 2))
        return d == 2, d, 2

    return [
        Fact("supremum-not-attained", "M_r = (2 sigma)^-n / Z and no ball attains it", supremum),
        Fact("same-slice", "in slice n an odd k has mass (2 sigma)^-n (1 - 2^-(k+1)) / Z", case_same_slice),
        Fact("finer-slices", "in slices m > n the mass is at most (2 sigma)^-m / Z", case_finer_slices),
        Fact("coarser-slices", "in slices m < n the mass stays below (2 sigma)^-n / Z", case_coarser_slices),
        Fact("normalising-constant", "total mass equals Z = sum (2 sigma)^-m", total),
        Fact("metric", "different slices are at distance 2", metric),
    ]
