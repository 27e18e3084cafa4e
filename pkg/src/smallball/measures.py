"""Measure representations with exact ball masses.

Every measure reports *raw* (unnormalised) ball masses; a :class:`Mixture`
carries the normalisation ``Z``.  Verdicts downstream only use ratios and
argmaxes, so they work directly on raw masses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _poly
from .exact import CertifiedInterval, QSqrt, as_interval, compare, exact, is_exact
from .germs import Germ, KnotPattern, _pow, _power_index, germ_sum
from .metric import MetricSpace, RealLine, TwoLevelSpace

ZERO = Fraction(0)


def _check_radius(r):
    if isinstance(r, float):
        raise TypeError("radii must be exact (int, Fraction or QSqrt)")
    r = exact(r)
    if r < 0:
        raise ValueError(f"negative radius {r}")
    return r


def _within(d, r, closed: bool) -> bool:
    return d <= r if closed else d < r


class Measure:
    """Base class.  Subclasses implement ``mass`` and usually ``germ``."""

    kind = "abstract"
    space: MetricSpace = RealLine()
    unimodal_center = None  # set for symmetric unimodal components on the line
    # mass is strictly decreasing away from unimodal_center while |x - c| + r < strict_radius
    strict_radius = None
    grid_base = Fraction(2)

    def support_hull(self):
        """Closed interval containing the support, for measures on the line."""
        return None

    def mass(self, x, r, closed: bool = True):
        raise NotImplementedError

    def total(self):
        raise NotImplementedError

    def germ(self, x) -> Optional[Germ]:
        return None

    def in_support(self, x):
        g = self.germ(x)
        if g is None:
            return None
        if g.is_poly and not g.main:
            return False if not g.errors else None
        return True

    @property
    def Z(self):
        return Fraction(1)

    def components(self):
        return [self]

    def lattice(self, r) -> list:
        """Candidate centres for a maximiser of ``x -> mass(x, r)`` on the line."""
        return []


# ---------------------------------------------------------------------------
# finite atomic measures


class Atomic(Measure):
    kind = "atomic"

    def __init__(self, space: MetricSpace, atoms):
        self.space = space
        items = list(atoms.items()) if isinstance(atoms, dict) else list(atoms)
        if not items:
            raise ValueError("an atomic measure needs at least one atom")
        self.atoms = {}
        for p, m in items:
            space.check(p)
            m = exact(m)
            if m <= 0:
                raise ValueError("atom masses must be positive")
            if p in self.atoms:
                raise ValueError(f"duplicate atom {p!r}")
            self.atoms[p] = m

    def mass(self, x, r, closed=True):
        self.space.check(x)
        r = _check_radius(r)
        total = ZERO
        for p, m in self.atoms.items():
            if _within(self.space.distance(x, p), r, closed):
                total = total + m
        return exact(total)

    def total(self):
        return exact(sum(self.atoms.values(), ZERO))

    def germ(self, x):
        self.space.check(x)
        ds = [self.space.distance(x, p) for p in self.atoms if p != x]
        r0 = min(ds) / 2 if ds else Fraction(1)
        m = self.atoms.get(x)
        return Germ(r0, (m,) if m else ())

    def in_support(self, x):
        self.space.check(x)
        return x in self.atoms

    def lattice(self, r):
        out = set()
        for p in self.atoms:
            out.update((p, exact(p - r), exact(p + r)))
        return sorted(out)


# ---------------------------------------------------------------------------
# piecewise polynomial densities on the line


class PiecewisePolyDensity(Measure):
    """Density ``polys[i](t)`` on ``[breaks[i], breaks[i+1]]`` and zero outside."""

    kind = "piecewise-poly"

    def __init__(self, breaks, polys, unimodal_center=None):
        self.breaks = tuple(exact(b) for b in breaks)
        self.polys = tuple(tuple(exact(c) for c in p) for p in polys)
        if len(self.breaks) != len(self.polys) + 1 or not self.polys:
            raise ValueError("need len(breaks) == len(polys) + 1 >= 2")
        if any(a >= b for a, b in zip(self.breaks, self.breaks[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        for p, a, b in zip(self.polys, self.breaks, self.breaks[1:]):
            if _poly.peval(p, a) < 0 or _poly.peval(p, b) < 0:
                raise ValueError("density must be nonnegative")
            if len(p) > 2 and _poly.peval(p, (a + b) / 2) < 0:
                raise ValueError("density must be nonnegative")
        self._anti = tuple(_poly.antiderivative(p) for p in self.polys)
        if self.total() <= 0:
            raise ValueError("density has zero mass")
        self.unimodal_center = None if unimodal_center is None else exact(unimodal_center)

    @classmethod
    def piecewise_constant(cls, breaks, values):
        return cls(breaks, [(v,) for v in values])

    @classmethod
    def triangle(cls, center, w, h):
        """``h * (1 - |x - center| / w)`` on ``[center - w, center + w]``."""
        c, w, h = exact(center), exact(w), exact(h)
        out = cls((c - w, c, c + w), ((h - h * c / w, h / w), (h + h * c / w, -h / w)), unimodal_center=c)
        out.strict_radius = w
        return out

    def support_hull(self):
        return self.breaks[0], self.breaks[-1]

    def interval_mass(self, u, v):
        acc = ZERO
        for (a, b), Q in zip(zip(self.breaks, self.breaks[1:]), self._anti):
            lo, hi = max(u, a), min(v, b)
            if lo < hi:
                acc = acc + _poly.peval(Q, hi) - _poly.peval(Q, lo)
        return exact(acc)

    def mass(self, x, r, closed=True):
        RealLine().check(x)
        r = _check_radius(r)
        x = exact(x)
        return self.interval_mass(x - r, x + r)

    def total(self):
        return self.interval_mass(self.breaks[0], self.breaks[-1])

    def density(self, t):
        t = exact(t)
        for (a, b), p in zip(zip(self.breaks, self.breaks[1:]), self.polys):
            if a <= t <= b:
                return _poly.peval(p, t)
        return ZERO

    def _piece_at(self, t, side):
        for i, (a, b) in enumerate(zip(self.breaks, self.breaks[1:])):
            if (side > 0 and a <= t < b) or (side < 0 and a < t <= b):
                return i
        return None

    def germ(self, x):
        x = exact(x)
        L, R = self._piece_at(x, -1), self._piece_at(x, 1)
        left = _poly.taylor_shift(self.polys[L], x) if L is not None else None
        right = _poly.taylor_shift(self.polys[R], x) if R is not None else None
        gaps = [abs(b - x) for b in self.breaks if b != x]
        r0 = min(gaps) if gaps else Fraction(1)
        return Germ(r0, _poly.ball_integral_coeffs(left, right))

    def in_support(self, x):
        g = self.germ(x)
        return bool(g.main)

    def lattice(self, r):
        r = exact(r)
        pts = set()
        for b in self.breaks:
            pts.update((exact(b - r), exact(b + r)))
        pts = sorted(pts)
        extra = set()
        for a, b in zip(pts, pts[1:]):
            mid = (a + b) / 2
            extra.add(exact(mid))
            # stationary point of the mass map inside the cell
            L, R = self._piece_at(mid - r, 1), self._piece_at(mid + r, 1)
            pr = self.polys[R] if R is not None else ()
            pl = self.polys[L] if L is not None else ()
            d = _poly.psub(_poly.taylor_shift(pr, r) if pr else (), _poly.taylor_shift(pl, -r) if pl else ())
            while d and d[-1] == 0:
                d = d[:-1]
            if len(d) == 2:
                root = exact(-d[0] / d[1])
                if a < root < b:
                    extra.add(root)
        return sorted(pts + list(extra))

    @property
    def exact_lattice(self) -> bool:
        return all(len(p) <= 2 for p in self.polys)


# ---------------------------------------------------------------------------
# symmetric measures given by their radial CDF about a centre


class KnotRCDF(Measure):
    """Symmetric continuous measure on the line given by its radial CDF.

    Below ``pattern.top`` the radial CDF is the log-periodic ``pattern``;
    above it, linear interpolation through ``outer`` knots; it is frozen at
    the optional ``truncation`` radius.
    """

    kind = "knot-rcdf"

    def __init__(self, center, pattern: KnotPattern, outer=(), truncation=None):
        if pattern.mode != "linear":
            raise ValueError("a continuous radial CDF needs linear interpolation")
        self.center = exact(center)
        self.pattern = pattern
        self.outer = tuple((exact(r), exact(v)) for r, v in outer)
        prev_r, prev_v = pattern.top, pattern.values[0]
        for r, v in self.outer:
            if not (r > prev_r and v >= prev_v):
                raise ValueError("outer knots must increase in radius and value")
            prev_r, prev_v = r, v
        self.truncation = None if truncation is None else exact(truncation)
        if self.truncation is not None and self.truncation <= 0:
            raise ValueError("truncation radius must be positive")
        self.unimodal_center = self.center if self._concave() else None

    def F(self, s):
        s = exact(s)
        if s <= 0:
            return ZERO
        if self.truncation is not None and s > self.truncation:
            s = self.truncation
        if s <= self.pattern.top:
            return self.pattern.value(s)
        knots = [(self.pattern.top, self.pattern.values[0])] + list(self.outer)
        for (r1, v1), (r2, v2) in zip(knots, knots[1:]):
            if s <= r2:
                return exact(v1 + (s - r1) * (v2 - v1) / (r2 - r1))
        return knots[-1][1]

    @property
    def support_radius(self):
        top = self.outer[-1][0] if self.outer else self.pattern.top
        return top if self.truncation is None else min(top, self.truncation)

    def total(self):
        return self.F(self.support_radius)

    def support_hull(self):
        return exact(self.center - self.support_radius), exact(self.center + self.support_radius)

    def _G(self, t):
        d = t - self.center
        half = self.total() / 2
        if d == 0:
            return exact(half)
        return exact(half + (self.F(d) if d > 0 else -self.F(-d)) / 2)

    def mass(self, x, r, closed=True):
        RealLine().check(x)
        r = _check_radius(r)
        x = exact(x)
        return exact(self._G(x + r) - self._G(x - r))

    def _knots_between(self, lo, hi):
        out = set()
        top = self.pattern.top
        if lo < top:
            out.update(self.pattern.knots_in(lo, min(hi, top)))
        out.update(r for r, _ in self.outer if lo < r <= hi)
        if self.truncation is not None:
            out = {k for k in out if k < self.truncation}
            if lo < self.truncation <= hi:
                out.add(self.truncation)
        return sorted(out)

    def germ(self, x):
        x = exact(x)
        s = abs(x - self.center)
        if s == 0:
            pat = self.pattern
            r0 = pat.top if self.truncation is None else min(pat.top, self.truncation)
            if r0 < pat.top:
                pat = pat.retop(r0)
            return Germ(r0, pat)
        R = self.support_radius
        if s > R:
            return Germ.zero(s - R)
        lam = self.pattern.lam
        near = self._knots_between(s * lam * lam, max(s / (lam * lam), R))
        below = [k for k in near if k < s]
        above = [k for k in near if k > s]
        k_lo = below[-1]
        Fs = self.F(s)
        slope_l = (Fs - self.F(k_lo)) / (s - k_lo)
        if above:
            k_hi = above[0]
            slope_r = (self.F(k_hi) - Fs) / (k_hi - s)
            r0 = min(s - k_lo, k_hi - s)
        else:
            slope_r = ZERO
            r0 = s - k_lo
        return Germ(r0, (ZERO, exact((slope_l + slope_r) / 2)))

    def _concave(self) -> bool:
        lam = self.pattern.lam
        top = self.pattern.top
        if self.pattern.kappa < lam:
            return False
        pts = [lam * lam * top] + self._knots_between(lam * lam * top, self.support_radius)
        slopes = [(self.F(b) - self.F(a)) / (b - a) for a, b in zip(pts, pts[1:])]
        return all(s1 >= s2 for s1, s2 in zip(slopes, slopes[1:]))

    def lattice(self, r):
        r = exact(r)
        lo = r / 1024
        pts = {self.center, exact(self.center - r), exact(self.center + r)}
        for k in self._knots_between(lo, self.support_radius):
            for sgn in (1, -1):
                for e in (1, -1):
                    pts.add(exact(self.center + sgn * k + e * r))
        return sorted(pts)


# ---------------------------------------------------------------------------
# self-similar clusters of atoms or triangle bumps accumulating at a centre


@dataclass(frozen=True)
class Bump:
    offset: object
    mass: object
    half_width: object = Fraction(0)

    def rel_support(self):
        o, w = exact(self.offset), exact(self.half_width)
        return o - w, o + w


def _first_j_below(v, y, lam, strict):
    """Smallest ``j >= 0`` with ``lam**j * v <= y`` (``<`` if strict); None if never."""
    if y <= 0:
        return None
    ok = (lambda j: _pow(lam, j) * v < y) if strict else (lambda j: _pow(lam, j) * v <= y)
    if ok(0):
        return 0
    j = max(0, _power_index(y, v, lam))
    while not ok(j):
        j += 1
    while j > 0 and ok(j - 1):
        j -= 1
    return j


def _last_j_above(v, y, lam, strict):
    """Largest ``j >= 0`` with ``lam**j * v >= y`` (``>`` if strict); inf / -1."""
    if y < 0 or (y == 0 and not strict):
        return math.inf
    if y == 0:
        return math.inf
    ok = (lambda j: _pow(lam, j) * v > y) if strict else (lambda j: _pow(lam, j) * v >= y)
    if not ok(0):
        return -1
    j = max(0, _power_index(y, v, lam))
    while ok(j + 1):
        j += 1
    while not ok(j):
        j -= 1
    return j


def _triangle_cdf(t, p, w, m):
    if t <= p - w:
        return ZERO
    if t >= p + w:
        return m
    if t <= p:
        u = (t - p + w) / w
        return exact(m * u * u / 2)
    u = (p + w - t) / w
    return exact(m - m * u * u / 2)


class GeometricCluster(Measure):
    """Bumps at ``center + lam**j * offset`` with mass ``kappa**j * mass``, ``j >= 0``.

    Bumps with ``half_width == 0`` are atoms; others are triangles of
    half-width ``lam**j * half_width``.
    """

    kind = "geometric-cluster"

    def __init__(self, center, bumps, lam, kappa):
        self.center = exact(center)
        self.bumps = tuple(b if isinstance(b, Bump) else Bump(*b) for b in bumps)
        self.lam, self.kappa = exact(lam), exact(kappa)
        if not (0 < self.lam < 1 and 0 < self.kappa < 1):
            raise ValueError("lam and kappa must lie in (0, 1)")
        if not self.bumps:
            raise ValueError("empty cluster")
        for b in self.bumps:
            lo, hi = b.rel_support()
            if exact(b.mass) <= 0 or exact(b.half_width) < 0:
                raise ValueError("bump masses must be positive")
            if lo <= 0 <= hi:
                raise ValueError("bump supports must not contain the centre")
        self.atomic = all(exact(b.half_width) == 0 for b in self.bumps)

    def total(self):
        return exact(sum((exact(b.mass) for b in self.bumps), ZERO) / (1 - self.kappa))

    def _geo(self, m, j1, j2):
        if j2 == math.inf:
            return exact(m * _pow(self.kappa, j1) / (1 - self.kappa))
        if j2 < j1:
            return ZERO
        return exact(m * (_pow(self.kappa, j1) - _pow(self.kappa, j2 + 1)) / (1 - self.kappa))

    def _bump_mass(self, b: Bump, A, B, closed):
        lo, hi = b.rel_support()
        m = exact(b.mass)
        if lo < 0:  # mirror to the positive side
            lo, hi, A, B = -hi, -lo, -B, -A
        lam = self.lam
        if exact(b.half_width) == 0:
            strict = not closed
            j1 = _first_j_below(lo, B, lam, strict)
            j2 = _last_j_above(lo, A, lam, strict)
            if j1 is None or j2 < j1:
                return ZERO
            return self._geo(m, j1, j2)
        j1 = _first_j_below(lo, B, lam, False)
        j2 = _last_j_above(hi, A, lam, False)
        if j1 is None or j2 < j1:
            return ZERO
        i1 = _first_j_below(hi, B, lam, False)
        i2 = _last_j_above(lo, A, lam, False)
        total = ZERO
        if i1 is not None and i2 >= i1:
            total = self._geo(m, i1, i2)
            partial = [j for j in range(j1, i1)] + ([] if i2 == math.inf else list(range(i2 + 1, j2 + 1)))
        else:
            partial = list(range(j1, j2 + 1)) if j2 != math.inf else None
            if partial is None:
                raise AssertionError("unbounded partial range")
        o, w = exact(b.offset), exact(b.half_width)
        if o < 0:
            o = -o
        for j in set(partial):
            s = _pow(lam, j)
            mj = exact(m * _pow(self.kappa, j))
            total = total + _triangle_cdf(B, s * o, s * w, mj) - _triangle_cdf(A, s * o, s * w, mj)
        return exact(total)

    def mass(self, x, r, closed=True):
        RealLine().check(x)
        r = _check_radius(r)
        x = exact(x)
        A, B = x - r - self.center, x + r - self.center
        return exact(sum((self._bump_mass(b, A, B, closed) for b in self.bumps), ZERO))

    def _nearby(self, x):
        """Bumps (position, half width, mass) that come within ``|x-c|/2`` of ``x``."""
        d = abs(x - self.center)
        out = []
        for b in self.bumps:
            lo, hi = b.rel_support()
            far = max(abs(lo), abs(hi))
            j = 0
            while _pow(self.lam, j) * far >= d / 2:
                s = _pow(self.lam, j)
                out.append((exact(self.center + s * exact(b.offset)), exact(s * exact(b.half_width)),
                            exact(_pow(self.kappa, j) * exact(b.mass))))
                j += 1
        return out

    def germ(self, x):
        x = exact(x)
        if x == self.center:
            if not self.atomic:
                return None
            top = max(abs(exact(b.offset)) for b in self.bumps)
            knots = set()
            for b in self.bumps:
                v = abs(exact(b.offset))
                while v <= self.lam * top:
                    v = exact(v / self.lam)
                knots.add(v)
            knots = sorted(knots, reverse=True)
            pat = KnotPattern(top, self.lam, self.kappa, tuple(knots),
                              tuple(self.mass(x, k) for k in knots), "step")
            return Germ(top, pat)
        d = abs(x - self.center)
        gaps, own = [d / 2], ZERO
        for p, w, m in self._nearby(x):
            if w == 0 and p == x:
                own = m
                continue
            gap = abs(p - x) - w
            if gap <= 0:
                return None
            gaps.append(gap)
        return Germ(min(gaps) / 2, (own,) if own else ())

    def in_support(self, x):
        x = exact(x)
        if x == self.center:
            return True
        for p, w, _ in self._nearby(x):
            if abs(p - x) <= w:
                return True
        return False

    def lattice(self, r):
        r = exact(r)
        pts = {self.center, exact(self.center - r), exact(self.center + r)}
        for b in self.bumps:
            j = 0
            while _pow(self.lam, j) * abs(exact(b.offset)) >= r / 1024:
                p = exact(self.center + _pow(self.lam, j) * exact(b.offset))
                pts.update((p, exact(p - r), exact(p + r)))
                j += 1
        return sorted(pts)


# ---------------------------------------------------------------------------
# a clipped polynomial bump whose support endpoint may be irrational


class ClippedPolyBump(Measure):
    """Density ``max(P(x - center), 0)`` for an even ``P`` decreasing in ``|u|``.

    ``P`` vanishes at ``|u| = w``; ``w`` may be exact or a certified interval.
    """

    kind = "clipped-poly"

    def __init__(self, center, coeffs, half_width):
        self.center = exact(center)
        self.coeffs = tuple(exact(c) for c in coeffs)
        if any(c != 0 for c in self.coeffs[1::2]):
            raise ValueError("P must be even")
        self.w = half_width if isinstance(half_width, CertifiedInterval) else exact(half_width)
        wi = as_interval(self.w)
        self.w_lo, self.w_hi = wi.lo, wi.hi
        if _poly.peval(self.coeffs, 0) <= 0:
            raise ValueError("P(0) must be positive")
        if not _poly.peval(self.coeffs, as_interval(self.w)).contains(0):
            raise ValueError("P does not vanish at the stated half width")
        self._anti = _poly.antiderivative(self.coeffs)
        self.unimodal_center = self.center
        self.strict_radius = self.w_lo

    def support_hull(self):
        return self.center - self.w_hi, self.center + self.w_hi

    def _Q(self, t):
        return _poly.peval(self._anti, t)

    def _edge(self, u, side):
        """``max(u, -w)`` (side=-1) or ``min(u, w)`` (side=+1) as value or interval."""
        if side < 0:
            if u >= -self.w_lo:
                return u
            if u <= -self.w_hi:
                return -self.w if is_exact(self.w) else -as_interval(self.w)
            return CertifiedInterval(-self.w_hi, -self.w_lo).hull(u) if not is_exact(self.w) else max(u, -self.w)
        if u <= self.w_lo:
            return u
        if u >= self.w_hi:
            return self.w if is_exact(self.w) else as_interval(self.w)
        return CertifiedInterval(self.w_lo, self.w_hi).hull(u) if not is_exact(self.w) else min(u, self.w)

    def mass(self, x, r, closed=True):
        RealLine().check(x)
        r = _check_radius(r)
        x = exact(x)
        u, v = x - r - self.center, x + r - self.center
        if v <= -self.w_hi or u >= self.w_hi:
            return ZERO
        L, U = self._edge(u, -1), self._edge(v, 1)
        val = self._Q(U) - self._Q(L)
        if isinstance(val, CertifiedInterval):
            lo = max(val.lo, Fraction(0))
            return CertifiedInterval(lo, max(val.hi, lo))
        return exact(val)

    def total(self):
        val = self._Q(self.w) - self._Q(-self.w) if is_exact(self.w) else \
            self._Q(as_interval(self.w)) - self._Q(-as_interval(self.w))
        return val if isinstance(val, CertifiedInterval) else exact(val)

    def germ(self, x):
        x = exact(x)
        d = abs(x - self.center)
        if d < self.w_lo:
            t = _poly.taylor_shift(self.coeffs, x - self.center)
            r0 = self.w_lo - d if d else self.w_lo
            return Germ(r0 if d == 0 else r0 / 2, _poly.ball_integral_coeffs(t, t))
        if d > self.w_hi:
            return Germ.zero((d - self.w_hi) / 2)
        return None

    def in_support(self, x):
        d = abs(exact(x) - self.center)
        if d <= self.w_lo:
            return True
        if d > self.w_hi:
            return False
        return None

    def lattice(self, r):
        return [self.center]


# ---------------------------------------------------------------------------
# uniform segments in the two-level space


class SegmentFamily(Measure):
    """Uniform densities on finitely many labelled segments of :class:`TwoLevelSpace`."""

    kind = "segments"

    def __init__(self, segments):
        self.space = TwoLevelSpace()
        self.segments = tuple((tuple(lab), exact(w), exact(h)) for lab, w, h in segments)
        for lab, w, h in self.segments:
            if w <= 0 or h <= 0:
                raise ValueError("segments need positive width and density")

    def total(self):
        return exact(sum((2 * w * h for _, w, h in self.segments), ZERO))

    def mass(self, x, r, closed=True):
        self.space.check(x)
        r = _check_radius(r)
        xi, k, m = x
        xi = Fraction(xi)
        acc = ZERO
        for lab, w, h in self.segments:
            if lab == (k, m):
                lo, hi = max(xi - r, -w), min(xi + r, w)
                if hi > lo:
                    acc += h * (hi - lo)
            elif _within(TwoLevelSpace.label_distance((k, m), lab), r, closed):
                acc += 2 * w * h
        return exact(acc)

    def germ(self, x):
        self.space.check(x)
        xi, k, m = x
        xi = abs(Fraction(xi))
        gaps = [TwoLevelSpace.label_distance((k, m), lab) for lab, _, _ in self.segments if lab != (k, m)]
        coef = ZERO
        for lab, w, h in self.segments:
            if lab == (k, m):
                if xi < w:
                    coef = 2 * h
                    gaps.append(w - xi)
                elif xi == w:
                    coef = h
                    gaps.append(2 * w)
        r0 = min(gaps) if gaps else Fraction(1)
        return Germ(r0, (ZERO, coef) if coef else ())


# ---------------------------------------------------------------------------
# tails of countable constructions


class TailBlock:
    """Mass that is not represented atom by atom.

    ``contribution`` returns an exact value when the ball provably includes
    or excludes the whole block (or the block's own structure allows it), and
    a certified interval otherwise.
    """

    kind = "tail"

    def total(self):
        raise NotImplementedError

    def contribution(self, x, r, closed=True):
        raise NotImplementedError

    def germ(self, x) -> Optional[Germ]:
        return None

    def in_support(self, x):
        return None

    def params(self) -> dict:
        raise NotImplementedError


class FunnyTail(TailBlock):
    """Atoms ``2**-k`` at every ``k > N`` of the funny discrete space."""

    kind = "funny-tail"

    def __init__(self, N: int):
        self.N = int(N)

    def total(self):
        return Fraction(1, 2 ** self.N)

    def _atom(self, k):
        return Fraction(1, 2 ** k) if k > self.N else ZERO

    def contribution(self, x, r, closed=True):
        r = _check_radius(r)
        own = self._atom(x)
        partner = x + 1 if x % 2 else x - 1
        pm = self._atom(partner)
        rest = self.total() - own - pm
        acc = own if _within(ZERO, r, closed) else ZERO
        if _within(Fraction(1), r, closed):
            acc += rest
        if _within(Fraction(2), r, closed):
            acc += pm
        return exact(acc)

    def germ(self, x):
        return Germ(Fraction(1, 2), (self._atom(x),) if x > self.N else ())

    def in_support(self, x):
        return x > self.N

    def params(self):
        return {"N": self.N}


class SliceTail(TailBlock):
    """Segments ``(k, m)`` with ``k > K`` of one slice of the two-level construction."""

    kind = "slice-tail"

    def __init__(self, m: int, K: int, sigma):
        self.m, self.K, self.sigma = int(m), int(K), exact(sigma)

    def seg(self, k):
        w = Fraction(1, 2 ** (k + self.m + 1))
        mass = exact(self.sigma ** -self.m * Fraction(1, 2 ** (k + self.m)))
        return w, mass

    def total(self):
        return exact(self.sigma ** -self.m * Fraction(1, 2 ** (self.m + self.K)))

    def contribution(self, x, r, closed=True):
        r = _check_radius(r)
        xi, k, m = x
        if m != self.m:
            return self.total() if _within(Fraction(2), r, closed) else ZERO
        acc, rest = ZERO, self.total()
        if k > self.K:
            w, ms = self.seg(k)
            lo, hi = max(Fraction(xi) - r, -w), min(Fraction(xi) + r, w)
            if hi > lo:
                acc += ms * (hi - lo) / (2 * w)
            rest -= ms
        partner = k + 1 if k % 2 else k - 1
        if partner > self.K:
            _, pm = self.seg(partner)
            rest -= pm
            if _within(Fraction(2, 2 ** self.m), r, closed):
                acc += pm
        if _within(Fraction(1, 2 ** self.m), r, closed):
            acc += rest
        return exact(acc)

    def germ(self, x):
        xi, k, m = x
        if m != self.m:
            return Germ.zero(2)
        gap = Fraction(1, 2 ** self.m)
        if k <= self.K:
            return Germ.zero(gap)
        w, ms = self.seg(k)
        h = ms / (2 * w)
        a = abs(Fraction(xi))
        if a < w:
            return Germ(min(gap, w - a), (ZERO, 2 * h))
        return Germ(min(gap, 2 * w), (ZERO, h))

    def in_support(self, x):
        return x[2] == self.m and x[1] > self.K

    def params(self):
        return {"m": self.m, "K": self.K, "sigma": self.sigma}


class FarSlicesTail(TailBlock):
    """All slices ``m > M`` of the two-level construction."""

    kind = "far-slices-tail"

    def __init__(self, M: int, sigma):
        self.M, self.sigma = int(M), exact(sigma)

    def total(self):
        q = 1 / (2 * self.sigma)
        return exact(q ** (self.M + 1) / (1 - q))

    def contribution(self, x, r, closed=True):
        r = _check_radius(r)
        if _within(Fraction(2), r, closed):
            return self.total()
        if x[2] <= self.M:
            return ZERO
        return CertifiedInterval(0, self.total())

    def germ(self, x):
        return Germ.zero(2) if x[2] <= self.M else None

    def in_support(self, x):
        return True if x[2] > self.M else None

    def params(self):
        return {"M": self.M, "sigma": self.sigma}


class DyadicLevelsTail(TailBlock):
    """Levels ``> L`` of the dense dyadic construction, each of mass ``2**-level``.

    A level-``l`` component sits at an odd multiple of ``2**-l`` with mass
    ``2**(1-2l)`` and support radius at most ``2**(3-4l)``.
    """

    kind = "dyadic-levels-tail"
    GERM_CONSTANT = Fraction(24)

    def __init__(self, L: int):
        self.L = int(L)

    def total(self):
        return Fraction(1, 2 ** self.L)

    @staticmethod
    def _odd_count(lo, hi):
        """Number of odd integers in ``[lo, hi]``."""
        a, b = math.ceil(lo), math.floor(hi)
        if b < a:
            return 0
        return (b + 1) // 2 - a // 2

    def contribution(self, x, r, closed=True):
        r = _check_radius(r)
        xf = exact(x)
        if isinstance(xf, QSqrt):
            xf = as_interval(xf).lo
        if xf - r <= 0 and xf + r >= 1:
            return self.total()
        rr = as_interval(r).hi if isinstance(r, QSqrt) else r
        rl = as_interval(r).lo if isinstance(r, QSqrt) else r
        depth = 0 if rr >= 1 else int(math.log2(1 / float(rr))) + 1
        cut = max(self.L + 1, depth + 80)
        lo_acc, hi_acc = ZERO, ZERO
        for lev in range(self.L + 1, cut + 1):
            scale = 2 ** lev
            s = Fraction(1, 2 ** (4 * lev - 3))
            m = Fraction(1, 2 ** (2 * lev - 1))
            n_max = scale - 1
            reach = self._odd_count(max((xf - rr - s) * scale, 1), min((xf + rr + s) * scale, n_max))
            full = self._odd_count(max((xf - rl + s) * scale, 1), min((xf + rl - s) * scale, n_max))
            hi_acc += min(reach * m, Fraction(1, scale))
            lo_acc += full * m
        # levels beyond the cut: at most 2 r 2^-cut + 2^-2cut in total
        hi_acc += 2 * rr / 2 ** cut + Fraction(1, 4 ** cut)
        if lo_acc == hi_acc:
            return exact(lo_acc)
        return CertifiedInterval(lo_acc, min(hi_acc, self.total()))

    def germ(self, x):
        x = exact(x)
        if isinstance(x, Fraction) and 0 < x < 1:
            den = x.denominator
            if den & (den - 1) == 0 and den.bit_length() - 1 <= self.L:
                return Germ(Fraction(1), (), ((self.GERM_CONSTANT, Fraction(2)),))
        if x < 0 or x > 1:
            return Germ.zero(min(abs(x), abs(x - 1)) / 2) if x < -1 or x > 2 else None
        return None

    def in_support(self, x):
        x = exact(x)
        return 0 <= x <= 1

    def params(self):
        return {"L": self.L}


class FarBumpsTail(TailBlock):
    """Indicator bumps at the integers ``n > N`` of height ``n`` and mass ``2**-n``."""

    kind = "far-bumps-tail"

    def __init__(self, N: int):
        self.N = int(N)

    def total(self):
        return Fraction(1, 2 ** self.N)

    def _edge(self):
        n = self.N + 1
        return n - Fraction(1, 2 ** (n + 1) * n)

    def contribution(self, x, r, closed=True):
        r = _check_radius(r)
        if exact(x) + r < self._edge():
            return ZERO
        return CertifiedInterval(0, self.total())

    def germ(self, x):
        x = exact(x)
        if x < self._edge():
            return Germ.zero(self._edge() - x)
        return None

    def in_support(self, x):
        x = exact(x)
        if x < self._edge():
            return False
        return None

    def params(self):
        return {"N": self.N}


TAILS = {cls.kind: cls for cls in (FunnyTail, SliceTail, FarSlicesTail, DyadicLevelsTail, FarBumpsTail)}


# ---------------------------------------------------------------------------
# finite sums with certified tails


class Mixture(Measure):
    """``(sum of components + tails) / Z``."""

    kind = "mixture"

    def __init__(self, components, tails=(), Z=None, space=None):
        self.parts = tuple(components)
        self.tails = tuple(tails)
        if not self.parts:
            raise ValueError("empty measure")
        self.space = space or self.parts[0].space
        for c in self.parts:
            if c.space != self.space:
                raise ValueError("components live on different spaces")
            t = c.total()
            if compare(t, 0) is not None and compare(t, 0) <= 0:
                raise ValueError("zero-mass component")
        self._Z = self.total() if Z is None else (Z if isinstance(Z, CertifiedInterval) else exact(Z))
        self.unimodal_center = None

    @property
    def Z(self):
        return self._Z

    def components(self):
        return list(self.parts)

    def support_hull(self):
        hulls = [c.support_hull() for c in self.parts]
        if self.tails or any(h is None for h in hulls):
            return None
        return min(h[0] for h in hulls), max(h[1] for h in hulls)

    def total(self):
        acc = ZERO
        for c in self.parts:
            acc = acc + c.total()
        for t in self.tails:
            acc = acc + t.total()
        return acc if isinstance(acc, CertifiedInterval) else exact(acc)

    def mass(self, x, r, closed=True):
        self.space.check(x)
        r = _check_radius(r)
        acc = ZERO
        for c in self.parts:
            acc = acc + c.mass(x, r, closed)
        for t in self.tails:
            acc = acc + t.contribution(x, r, closed)
        return acc if isinstance(acc, CertifiedInterval) else exact(acc)

    def germ(self, x):
        self.space.check(x)
        gs = [c.germ(x) for c in self.parts] + [t.germ(x) for t in self.tails]
        return germ_sum(gs)

    def in_support(self, x):
        self.space.check(x)
        unknown = False
        for c in list(self.parts) + list(self.tails):
            v = c.in_support(x)
            if v:
                return True
            if v is None:
                unknown = True
        return None if unknown else False

    def lattice(self, r):
        pts = set()
        for c in self.parts:
            pts.update(c.lattice(r))
        return sorted(pts)


# ---------------------------------------------------------------------------
# public operations


def as_mixture(mu: Measure) -> Mixture:
    return mu if isinstance(mu, Mixture) else Mixture([mu])


def raw_mass(mu: Measure, x, r, closed: bool = True):
    return mu.mass(x, r, closed)


def ball_mass(mu: Measure, x, r, closed: bool = True):
    """Normalised mass of the closed ball (open if ``closed=False``)."""
    m = mu.mass(x, r, closed)
    Z = mu.Z
    if Z == 1:
        return m
    if isinstance(m, CertifiedInterval) or isinstance(Z, CertifiedInterval):
        return as_interval(m) / as_interval(Z)
    return exact(m / Z)


def support_contains(mu: Measure, x) -> bool:
    v = mu.in_support(x)
    if v is None:
        raise ValueError(f"support membership of {x!r} is not decidable from the representation")
    return bool(v)


class RCDF:
    """``r -> ball_mass(mu, x, r)`` on ``[0, r_max]``."""

    def __init__(self, mu: Measure, x, r_max):
        r_max = _check_radius(r_max)
        if r_max <= 0:
            raise ValueError("r_max must be positive")
        mu.space.check(x)
        self.mu, self.x, self.r_max = mu, x, r_max

    def __call__(self, r):
        r = _check_radius(r)
        if r > self.r_max:
            raise ValueError("radius beyond r_max")
        return ball_mass(self.mu, self.x, r)

    @property
    def exact(self) -> bool:
        return is_exact(self(self.r_max))

    def breakpoints(self, r_min=None):
        """Radii in ``(r_min, r_max]`` where the formula may change."""
        r_min = self.r_max / 2 ** 20 if r_min is None else exact(r_min)
        out = set()
        for c in self.mu.components():
            out.update(_component_breaks(c, self.x, r_min, self.r_max))
        return sorted(b for b in out if r_min < b <= self.r_max)

    def segments(self, r_min=None):
        """``(r_start, r_end, value_start, value_end)`` between consecutive breakpoints."""
        pts = self.breakpoints(r_min)
        if not pts or pts[-1] != self.r_max:
            pts.append(self.r_max)
        lo = self.r_max / 2 ** 20 if r_min is None else exact(r_min)
        pts = [lo] + [p for p in pts if p > lo]
        return [(a, b, self(a), self(b)) for a, b in zip(pts, pts[1:])]


def _component_breaks(c, x, lo, hi):
    if isinstance(c, Atomic):
        return [c.space.distance(x, p) for p in c.atoms]
    if isinstance(c, PiecewisePolyDensity):
        return [abs(b - exact(x)) for b in c.breaks]
    if isinstance(c, KnotRCDF):
        s = abs(exact(x) - c.center)
        ks = c._knots_between(lo / 2, hi + s)
        out = {s}
        for k in ks:
            out.update((abs(s - k), s + k))
        return out
    if isinstance(c, GeometricCluster):
        out = set()
        d = exact(x) - c.center
        for b in c.bumps:
            j = 0
            while _pow(c.lam, j) * abs(exact(b.offset)) >= lo / 4 and j < 4096:
                s = _pow(c.lam, j)
                for e in (exact(b.offset) - exact(b.half_width), exact(b.offset), exact(b.offset) + exact(b.half_width)):
                    out.add(abs(s * e - d))
                j += 1
        out.add(abs(d))
        return out
    return []


def rcdf(mu: Measure, x, r_max) -> RCDF:
    return RCDF(mu, x, r_max)
