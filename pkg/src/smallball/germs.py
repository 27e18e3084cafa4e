"""Small-radius descriptions of radial CDFs and exact analysis of their ratios.

A :class:`Germ` describes ``F(r) = mu(B(x, r))`` on ``(0, r0]`` as

* a polynomial in ``r`` (atoms, polynomial densities), or
* a log-periodic :class:`KnotPattern` with ``F(lam * r) = kappa * F(r)``,

plus optional nonnegative additive error terms ``C * r**beta``.  Limits of
ratios only see the leading homogeneous part, so they are exact even when
error terms are present; sign questions at a touching ratio need the full
description and refuse when errors are attached.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .exact import INF, QSqrt, exact


class Unsupported(Exception):
    """The exact analysis does not cover this pair of descriptions."""


def _log(x) -> float:
    x = exact(x)
    if isinstance(x, QSqrt):
        return float(mpmath.log(x.to_mpf(30)))
    return math.log(x.numerator) - math.log(x.denominator)


def _pow(x, n: int):
    return exact(x ** n) if n >= 0 else exact(1 / (x ** -n))


def _power_index(s, top, lam) -> int:
    """``j`` with ``lam**(j+1) * top < s <= lam**j * top``."""
    j = math.floor((_log(s) - _log(top)) / _log(lam))
    while _pow(lam, j) * top < s:
        j -= 1
    while _pow(lam, j + 1) * top >= s:
        j += 1
    return j


def _rational_exponent(kappa, lam, max_den: int = 12) -> Fraction:
    e = _log(kappa) / _log(lam)
    for den in range(1, max_den + 1):
        num = round(e * den)
        if num <= 0:
            continue
        if exact(kappa) ** den == exact(lam) ** num:
            return Fraction(num, den)
    raise Unsupported(f"scaling exponent log({kappa})/log({lam}) is not a small rational")


def common_period(lam1, lam2, max_power: int = 64):
    """Smallest ``(p, q)`` with ``lam1**p == lam2**q``."""
    if lam1 == lam2:
        return 1, 1
    l1, l2 = _log(lam1), _log(lam2)
    for p in range(1, max_power + 1):
        q = round(p * l1 / l2)
        if q >= 1 and exact(lam1) ** p == exact(lam2) ** q:
            return p, q
    raise Unsupported(f"radius scalings {lam1} and {lam2} are not commensurable")


@dataclass(frozen=True)
class KnotPattern:
    """Log-periodic function on ``(0, top]`` given by one period of knots.

    ``radii`` decrease from ``top`` and stay above ``lam * top``; the knot set
    is ``{lam**j * R : R in radii, j >= 0}`` with values scaled by ``kappa**j``.
    Between knots the function is linear in ``r`` or a right-continuous step.
    """

    top: object
    lam: object
    kappa: object
    radii: tuple
    values: tuple
    mode: str = "linear"
    exponent: Fraction = None

    def __post_init__(self):
        object.__setattr__(self, "top", exact(self.top))
        object.__setattr__(self, "lam", exact(self.lam))
        object.__setattr__(self, "kappa", exact(self.kappa))
        object.__setattr__(self, "radii", tuple(exact(r) for r in self.radii))
        object.__setattr__(self, "values", tuple(exact(v) for v in self.values))
        if not 0 < self.lam < 1:
            raise ValueError("lam must lie in (0, 1)")
        if not 0 < self.kappa <= 1:
            raise ValueError("kappa must lie in (0, 1]")
        if self.mode not in ("linear", "step"):
            raise ValueError(f"unknown interpolation mode {self.mode!r}")
        if not self.radii or self.radii[0] != self.top or len(self.radii) != len(self.values):
            raise ValueError("radii must start at top and match values")
        floor = self.lam * self.top
        for a, b in zip(self.radii, self.radii[1:] + (floor,)):
            if not a > b:
                raise ValueError("radii must decrease strictly and stay above lam*top")
        if any(v <= 0 for v in self.values):
            raise ValueError("knot values must be positive")
        ext = self.values + (self.kappa * self.values[0],)
        if any(a < b for a, b in zip(ext, ext[1:])):
            raise ValueError("knot values must be nondecreasing in the radius")
        if self.exponent is None:
            object.__setattr__(self, "exponent", _rational_exponent(self.kappa, self.lam))
        elif exact(self.kappa) ** self.exponent.denominator != exact(self.lam) ** self.exponent.numerator:
            raise ValueError("kappa is not lam**exponent")

    # -- evaluation --------------------------------------------------------------
    def _locate(self, s):
        s = exact(s)
        if s <= 0:
            raise ValueError("radius must be positive")
        j = _power_index(s, self.top, self.lam)
        u = exact(s / _pow(self.lam, j))
        radii = self.radii + (self.lam * self.top,)
        values = self.values + (self.kappa * self.values[0],)
        for i in range(len(self.radii)):
            if radii[i + 1] < u <= radii[i]:
                return j, u, i, radii, values
        raise AssertionError("knot search failed")

    def value(self, s):
        j, u, i, radii, values = self._locate(s)
        if u == radii[i]:
            v = values[i]
        elif self.mode == "step":
            v = values[i + 1]
        else:
            v = values[i + 1] + (u - radii[i + 1]) * (values[i] - values[i + 1]) / (radii[i] - radii[i + 1])
        return exact(_pow(self.kappa, j) * v)

    def left_value(self, s):
        j, u, i, radii, values = self._locate(s)
        if u == radii[i] and self.mode == "step":
            return exact(_pow(self.kappa, j) * values[i + 1])
        return self.value(s)

    def knots_in(self, lo, hi) -> list:
        """All knots ``k`` with ``lo < k <= hi`` (log-periodic extension)."""
        out = []
        for R in self.radii:
            j = _power_index(hi, R, self.lam)  # lam**(j+1) R < hi <= lam**j R
            k = exact(_pow(self.lam, j) * R)
            if k > hi:
                j += 1
                k = exact(k * self.lam)
            while k > lo:
                out.append(k)
                j += 1
                k = exact(k * self.lam)
        return sorted(set(out))

    def scaled(self, c) -> "KnotPattern":
        return KnotPattern(self.top, self.lam, self.kappa, self.radii,
                           tuple(exact(c * v) for v in self.values), self.mode, self.exponent)

    def retop(self, top, lam=None) -> "KnotPattern":
        """Same function described with a new top radius and period."""
        lam = self.lam if lam is None else exact(lam)
        p, q = common_period(self.lam, lam)
        if q != 1:
            raise Unsupported("new period must be a power of the old one")
        top = exact(top)
        knots = [k for k in self.knots_in(lam * top, top)]
        if top not in knots:
            knots.append(top)
        knots = sorted(set(knots), reverse=True)
        return KnotPattern(top, lam, _pow(self.kappa, p), tuple(knots),
                           tuple(self.value(k) for k in knots), self.mode, self.exponent)


@dataclass(frozen=True)
class Monomial:
    coef: object
    degree: int

    @property
    def exponent(self):
        return Fraction(self.degree)

    def value(self, s):
        return exact(self.coef * exact(s) ** self.degree)

    left_value = value

    def knots_in(self, lo, hi):
        return []


Main = Union[KnotPattern, tuple]


@dataclass(frozen=True)
class Germ:
    """``F`` on ``(0, r0]``: ``main`` plus errors in ``[0, sum C r**beta]``."""

    r0: object
    main: Main = ()
    errors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "r0", exact(self.r0))
        if self.r0 <= 0:
            raise ValueError("germ radius must be positive")
        if isinstance(self.main, tuple):
            coeffs = [exact(c) for c in self.main]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            object.__setattr__(self, "main", tuple(coeffs))

    @classmethod
    def zero(cls, r0) -> "Germ":
        return cls(r0, ())

    @property
    def is_poly(self) -> bool:
        return isinstance(self.main, tuple)

    @property
    def is_zero(self) -> bool:
        return self.is_poly and not self.main and not self.errors

    def leading(self):
        if isinstance(self.main, KnotPattern):
            return self.main
        for d, c in enumerate(self.main):
            if c != 0:
                return Monomial(c, d)
        return None

    @property
    def exponent(self):
        lead = self.leading()
        return None if lead is None else lead.exponent

    def value(self, s):
        """The error-free part at ``0 < s <= r0``."""
        if isinstance(self.main, KnotPattern):
            return self.main.value(s)
        s = exact(s)
        return exact(sum((c * s ** d for d, c in enumerate(self.main)), Fraction(0)))

    def scaled(self, c) -> "Germ":
        c = exact(c)
        main = self.main.scaled(c) if isinstance(self.main, KnotPattern) else tuple(c * v for v in self.main)
        return Germ(self.r0, main, tuple((exact(c * C), b) for C, b in self.errors))

    def as_pattern(self, lam=None):
        """The germ as a knot pattern when it is exactly log-periodic."""
        if self.errors:
            return None
        if isinstance(self.main, KnotPattern):
            return self.main.retop(min(self.r0, self.main.top)) if self.r0 < self.main.top else self.main
        nz = [(d, c) for d, c in enumerate(self.main) if c != 0]
        if len(nz) != 1 or nz[0][0] > 1:
            return None
        d, c = nz[0]
        lam = Fraction(1, 2) if lam is None else exact(lam)
        return KnotPattern(self.r0, lam, lam ** d, (self.r0,), (c * self.r0 ** d,), "linear", Fraction(d))


def _poly_bound(coeffs, d, r0):
    """``C`` with ``sum c_i r**i <= C r**d`` for ``0 < r <= r0`` (``c_i = 0`` for ``i < d``)."""
    return exact(sum((abs(c) * exact(r0) ** (i - d) for i, c in enumerate(coeffs) if i >= d), Fraction(0)))


def add_patterns(p1: KnotPattern, p2: KnotPattern) -> KnotPattern:
    if p1.exponent != p2.exponent:
        raise Unsupported("cannot merge patterns with different exponents")
    if p1.mode != p2.mode:
        raise Unsupported("cannot merge linear and step patterns")
    a, b = common_period(p1.lam, p2.lam)
    lam = exact(p1.lam ** a)
    top = min(p1.top, p2.top)
    knots = set(p1.knots_in(lam * top, top)) | set(p2.knots_in(lam * top, top)) | {top}
    knots = sorted(knots, reverse=True)
    kappa = exact(p1.kappa ** a)
    if kappa != exact(p2.kappa ** b):
        raise Unsupported("inconsistent value scalings")
    return KnotPattern(top, lam, kappa, tuple(knots),
                       tuple(exact(p1.value(k) + p2.value(k)) for k in knots), p1.mode, p1.exponent)


def germ_sum(germs) -> Optional[Germ]:
    """Sum of germs, or ``None`` when the sum has no supported description."""
    germs = list(germs)
    if any(g is None for g in germs):
        return None
    if not germs:
        raise ValueError("empty germ sum")
    r0 = min(g.r0 for g in germs)
    errors = tuple(e for g in germs for e in g.errors)
    polys = [g.main for g in germs if g.is_poly]
    pats = [g.main for g in germs if not g.is_poly]
    n = max((len(p) for p in polys), default=0)
    poly = tuple(exact(sum((p[i] for p in polys if i < len(p)), Fraction(0))) for i in range(n))
    try:
        pat = None
        for p in pats:
            pat = p if pat is None else add_patterns(pat, p)
    except Unsupported:
        return None
    if pat is None:
        return Germ(r0, poly, errors)
    if any(c != 0 for c in poly):
        d = next(i for i, c in enumerate(poly) if c != 0)
        if d > pat.exponent:
            errors = errors + ((_poly_bound(poly, d, r0), Fraction(d)),)
        else:
            extra = Germ(r0, poly).as_pattern(pat.lam)
            if extra is None:
                return None
            try:
                pat = add_patterns(pat, extra)
            except Unsupported:
                return None
    if pat.top > r0:
        pat = pat.retop(r0)
    return Germ(r0, pat, errors)


def _check_errors(g: Germ):
    e = g.exponent
    for _, beta in g.errors:
        if e is None or not beta > e:
            raise Unsupported("error term does not vanish relative to the main part")


def _sample_points(h1, h2):
    """Radii covering one common period of two homogeneous leading parts."""
    lams = [h.lam for h in (h1, h2) if isinstance(h, KnotPattern)]
    if not lams:
        return None
    if len(lams) == 2:
        a, _ = common_period(lams[0], lams[1])
        lam = exact(lams[0] ** a)
    else:
        lam = lams[0]
    tops = [h.top for h in (h1, h2) if isinstance(h, KnotPattern)]
    top = min(tops)
    pts = set(h1.knots_in(lam * top, top)) | set(h2.knots_in(lam * top, top)) | {top}
    return lam, top, sorted(pts)


def leading_ratio_limits(g1: Germ, g2: Germ):
    """Exact ``(liminf, limsup)`` of ``F1/F2`` as ``r -> 0``; ``INF`` allowed."""
    h1, h2 = g1.leading(), g2.leading()
    if h1 is None or h2 is None:
        raise ValueError("ratio limits need two points in the support")
    _check_errors(g1)
    _check_errors(g2)
    if h1.exponent != h2.exponent:
        return (Fraction(0), Fraction(0)) if h1.exponent > h2.exponent else (INF, INF)
    if isinstance(h1, Monomial) and isinstance(h2, Monomial):
        q = exact(h1.coef / h2.coef)
        return q, q
    for h in (h1, h2):
        if isinstance(h, Monomial) and h.degree > 1:
            raise Unsupported("polynomial of degree > 1 against a knot pattern")
    _, _, pts = _sample_points(h1, h2)
    ratios = []
    for p in pts:
        ratios.append(exact(h1.value(p) / h2.value(p)))
        ratios.append(exact(h1.left_value(p) / h2.left_value(p)))
    return min(ratios), max(ratios)


def _poly_diff_sign(p1, p2) -> int:
    """Eventual sign of ``p1 - p2`` as ``r -> 0+``."""
    n = max(len(p1), len(p2))
    for i in range(n):
        a = p1[i] if i < len(p1) else 0
        b = p2[i] if i < len(p2) else 0
        if a != b:
            return 1 if a > b else -1
    return 0


def _touching_cells(g1: Germ, g2: Germ):
    """Cells ``[a, b)`` of one period with ``(F1-F2)(a)`` and ``(F1-F2)(b-)``."""
    if g1.errors or g2.errors:
        raise Unsupported("touching ratio with uncertain error terms")
    lam_hint = next((g.main.lam for g in (g1, g2) if isinstance(g.main, KnotPattern)), None)
    p1, p2 = g1.as_pattern(lam_hint), g2.as_pattern(lam_hint)
    if p1 is None or p2 is None:
        raise Unsupported("touching ratio between non log-periodic descriptions")
    top = min(g1.r0, g2.r0, p1.top, p2.top)
    if top < p1.top:
        p1 = p1.retop(top)
    if top < p2.top:
        p2 = p2.retop(top)
    lam, top, pts = _sample_points(p1, p2)
    pts = [exact(lam * top)] + [p for p in pts if p > lam * top]
    cells = []
    for a, b in zip(pts, pts[1:]):
        cells.append((exact(p1.value(a) - p2.value(a)), exact(p1.left_value(b) - p2.left_value(b))))
    return cells


def eventually_le(g1: Germ, g2: Germ) -> bool:
    """Whether ``F1(r) <= F2(r)`` for every sufficiently small ``r``."""
    if g1.is_zero:
        return True
    if g2.is_zero:
        return False
    lo, hi = leading_ratio_limits(g1, g2)
    if hi < 1:
        return True
    if lo > 1 or (lo < 1 < hi):
        return False
    if g1.is_poly and g2.is_poly and not g1.errors and not g2.errors:
        return _poly_diff_sign(g1.main, g2.main) <= 0
    return all(a <= 0 and b <= 0 for a, b in _touching_cells(g1, g2))


def eventually_gt(g1: Germ, g2: Germ) -> bool:
    """Whether ``F1(r) > F2(r)`` for every sufficiently small ``r``."""
    if g1.is_zero:
        return False
    if g2.is_zero:
        return True
    lo, hi = leading_ratio_limits(g1, g2)
    if lo > 1:
        return True
    if hi < 1 or (lo < 1 < hi):
        return False
    if g1.is_poly and g2.is_poly and not g1.errors and not g2.errors:
        return _poly_diff_sign(g1.main, g2.main) > 0
    return all(a > 0 and b >= 0 for a, b in _touching_cells(g1, g2))
