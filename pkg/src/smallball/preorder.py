"""Positive-radius and small-radius comparisons of points under a measure."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .exact import (INF, CertifiedInterval, Undecidable, as_interval, compare, exact, is_exact,
                    point_str, scalar_to_json, exact_str, decimal_str)
from .germs import Unsupported, eventually_gt, eventually_le, leading_ratio_limits
from .measures import Measure

DEFAULT_DEPTH = 64


class Relation(str, Enum):
    STRICTLY_LESS = "StrictlyLess"
    STRICTLY_GREATER = "StrictlyGreater"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> "Relation":
        return {Relation.STRICTLY_LESS: Relation.STRICTLY_GREATER,
                Relation.STRICTLY_GREATER: Relation.STRICTLY_LESS}.get(self, self)

    @property
    def holds_le(self) -> bool:
        """Whether the verdict means ``x`` is dominated by ``x'``."""
        return self in (Relation.STRICTLY_LESS, Relation.EQUIVALENT)


def render(x):
    if isinstance(x, float) and math.isinf(x):
        return {"exact": "inf", "decimal": "inf", "json": {"inf": True}}
    return {"exact": exact_str(x), "decimal": decimal_str(x), "json": scalar_to_json(x)}


@dataclass(frozen=True)
class RatioLimits:
    """Limits of ``mu(B(x, r)) / mu(B(x', r))`` as ``r -> 0``.

    With ``exact`` set both are field elements (or ``inf``).  Otherwise they
    are hulls over the tail half of a geometric radius sample and ``window``
    is the sampled radius range.
    """

    liminf: object
    limsup: object
    window: tuple
    exact: bool

    def to_json(self):
        return {"liminf": render(self.liminf), "limsup": render(self.limsup),
                "window": [exact_str(w) for w in self.window], "exact": self.exact}


@dataclass(frozen=True)
class ComparisonVerdict:
    relation: Relation
    limits: Optional[RatioLimits] = None
    masses: Optional[tuple] = None
    radius: object = None
    note: str = ""

    def to_json(self):
        out = {"relation": self.relation.value, "exact": True}
        if self.limits is not None:
            out.update(self.limits.to_json())
        else:
            out.update({"liminf": None, "limsup": None, "window": None})
        if self.masses is not None:
            out["masses"] = [render(m) for m in self.masses]
            out["radius"] = exact_str(self.radius)
            out["exact"] = all(is_exact(m) for m in self.masses)
        if self.note:
            out["note"] = self.note
        return out


# ---------------------------------------------------------------------------
# fixed radius


def compare_at_radius(mu: Measure, x, xp, r, closed: bool = True) -> ComparisonVerdict:
    r = exact(r)
    if not r > 0:
        raise ValueError("the radius must be positive")
    m1, m2 = mu.mass(x, r, closed), mu.mass(xp, r, closed)
    if x == xp:
        return ComparisonVerdict(Relation.EQUIVALENT, masses=(m1, m2), radius=r)
    c = compare(m1, m2)
    if c is None:
        raise Undecidable(f"ball masses at {x!r} and {xp!r} overlap at r={r}", m1, m2)
    rel = {-1: Relation.STRICTLY_LESS, 0: Relation.EQUIVALENT, 1: Relation.STRICTLY_GREATER}[c]
    return ComparisonVerdict(rel, masses=(m1, m2), radius=r)


# ---------------------------------------------------------------------------
# small radius


def _grid_base(mu: Measure):
    return exact(getattr(mu, "grid_base", Fraction(2)))


def _support(mu: Measure, x):
    v = mu.in_support(x)
    if v is None:
        raise Undecidable(f"support membership of {x!r} is not decidable")
    return bool(v)


def exact_ratio_limits(mu: Measure, x, xp) -> Optional[RatioLimits]:
    g1, g2 = mu.germ(x), mu.germ(xp)
    if g1 is None or g2 is None:
        return None
    try:
        lo, hi = leading_ratio_limits(g1, g2)
    except (Unsupported, ValueError):
        return None
    return RatioLimits(lo, hi, (Fraction(0), min(g1.r0, g2.r0)), True)


def sampled_ratio_limits(mu: Measure, x, xp, depth: int = DEFAULT_DEPTH, base=None) -> RatioLimits:
    """Hull of the mass ratio over ``base**-n`` for the upper half of ``n <= depth``."""
    base = _grid_base(mu) if base is None else exact(base)
    ns = range(max(1, depth // 2), depth + 1)
    lows, highs, all_exact = [], [], True
    for n in ns:
        r = 1 / base ** n
        m1, m2 = mu.mass(x, r), mu.mass(xp, r)
        if is_exact(m1) and is_exact(m2):
            if m2 == 0:
                if m1 == 0:
                    continue
                lows.append(INF)
                highs.append(INF)
                continue
            q = exact(m1 / m2)
            lows.append(q)
            highs.append(q)
            continue
        all_exact = False
        a, b = as_interval(m1), as_interval(m2)
        if b.lo <= 0:
            lo = a.lo / b.hi if b.hi > 0 else Fraction(0)
            lows.append(lo)
            highs.append(INF)
            continue
        q = a / b
        lows.append(q.lo)
        highs.append(q.hi)
    if not lows:
        raise ValueError("both points have zero mass on the whole sample")
    window = (exact(1 / base ** depth), exact(1 / base ** ns[0]))
    if all_exact:
        return RatioLimits(min(lows), max(highs), window, False)
    lo_lo, lo_hi = min(lows), min(highs)
    hi_lo, hi_hi = max(lows), max(highs)
    liminf = CertifiedInterval(lo_lo, lo_hi) if lo_hi != INF else CertifiedInterval(lo_lo, max(lo_lo, hi_lo))
    limsup = INF if hi_hi == INF else CertifiedInterval(hi_lo, hi_hi)
    return RatioLimits(liminf, limsup, window, False)


def ratio_limits(mu: Measure, x, xp, depth: int = DEFAULT_DEPTH) -> RatioLimits:
    mu.space.check(x)
    mu.space.check(xp)
    if x == xp:
        return RatioLimits(Fraction(1), Fraction(1), (Fraction(0), Fraction(1)), True)
    for p in (x, xp):
        if mu.in_support(p) is False:
            raise ValueError(f"{p!r} is not in the support")
    got = exact_ratio_limits(mu, x, xp)
    if got is not None:
        return got
    return sampled_ratio_limits(mu, x, xp, depth)


def _side(v, one=1):
    """-1 / 0 / 1 position of ``v`` relative to 1; None if undecided."""
    if isinstance(v, float):
        return 1
    return compare(v, one)


def verdict_from_limits(lim: RatioLimits) -> Relation:
    lo, hi = lim.liminf, lim.limsup
    if lim.exact:
        if lo == 1 and hi == 1:
            return Relation.EQUIVALENT
        if hi <= 1:
            return Relation.STRICTLY_LESS
        if lo >= 1:
            return Relation.STRICTLY_GREATER
        return Relation.INCOMPARABLE
    s_lo, s_hi = _side(lo), _side(hi)
    lo_i = lo if isinstance(lo, float) else as_interval(lo)
    hi_i = hi if isinstance(hi, float) else as_interval(hi)
    if s_lo == 0 and s_hi == 0:
        return Relation.EQUIVALENT
    if not isinstance(hi_i, float) and hi_i.hi < 1:
        return Relation.STRICTLY_LESS
    if not isinstance(lo_i, float) and lo_i.lo > 1:
        return Relation.STRICTLY_GREATER
    if isinstance(lo_i, float) and lo_i > 1:
        return Relation.STRICTLY_GREATER
    if not isinstance(lo_i, float) and lo_i.hi < 1 and (isinstance(hi_i, float) or hi_i.lo > 1):
        return Relation.INCOMPARABLE
    raise Undecidable("sampled ratio limits do not separate from 1", lo, hi)


def compare_limit(mu: Measure, x, xp, depth: int = DEFAULT_DEPTH) -> ComparisonVerdict:
    mu.space.check(x)
    mu.space.check(xp)
    if x == xp:
        return ComparisonVerdict(Relation.EQUIVALENT, RatioLimits(Fraction(1), Fraction(1), (0, 1), True))
    s1, s2 = _support(mu, x), _support(mu, xp)
    if not s1 and not s2:
        return ComparisonVerdict(Relation.EQUIVALENT, note="both points outside the support")
    if not s1:
        return ComparisonVerdict(Relation.STRICTLY_LESS, note="first point outside the support")
    if not s2:
        return ComparisonVerdict(Relation.STRICTLY_GREATER, note="second point outside the support")
    lim = ratio_limits(mu, x, xp, depth)
    return ComparisonVerdict(verdict_from_limits(lim), lim)


def _germs(mu: Measure, x, xp):
    g1, g2 = mu.germ(x), mu.germ(xp)
    if g1 is None or g2 is None:
        raise Unsupported("no exact small-radius description at one of the points")
    return g1, g2


def compare_liminf_relation(mu: Measure, x, xp) -> bool:
    """``x`` has at most the mass of ``x'`` for every small enough radius."""
    if x == xp:
        return True
    g1, g2 = _germs(mu, x, xp)
    try:
        return eventually_le(g1, g2)
    except ValueError as e:
        raise Unsupported(str(e)) from e


def compare_limsup_relation(mu: Measure, x, xp) -> bool:
    """``x`` has at most the mass of ``x'`` along some null sequence of radii."""
    if x == xp:
        return True
    g1, g2 = _germs(mu, x, xp)
    try:
        return not eventually_gt(g1, g2)
    except ValueError as e:
        raise Unsupported(str(e)) from e


# ---------------------------------------------------------------------------
# order-theoretic queries


def as_relation(mu: Measure, kind: str, r=None, depth: int = DEFAULT_DEPTH) -> Callable:
    """Boolean relation ``R(x, y)`` meaning ``x`` is dominated by ``y``."""
    cache = {}

    def rel(x, y):
        key = (x, y)
        if key not in cache:
            if kind == "radius":
                cache[key] = compare_at_radius(mu, x, y, r).relation.holds_le
            elif kind == "limit":
                cache[key] = compare_limit(mu, x, y, depth).relation.holds_le
            elif kind == "liminf":
                cache[key] = compare_liminf_relation(mu, x, y)
            elif kind == "limsup":
                cache[key] = compare_limsup_relation(mu, x, y)
            else:
                raise ValueError(f"unknown relation kind {kind!r}")
        return cache[key]

    return rel


def transitivity_audit(relation: Callable, points) -> list:
    points = list(points)
    if len(points) < 3:
        raise ValueError("need at least three points")
    bad = []
    for x, y, z in itertools.permutations(points, 3):
        if relation(x, y) and relation(y, z) and not relation(x, z):
            bad.append((x, y, z))
    return bad


def _verdict(mu, x, y, mode, r, depth):
    if mode == "limit":
        return compare_limit(mu, x, y, depth).relation
    return compare_at_radius(mu, x, y, r).relation


def maximal_and_greatest(mu: Measure, candidates, mode: str = "limit", r=None, depth: int = DEFAULT_DEPTH):
    """``(maximal, greatest)`` among ``candidates`` for the radius-``r`` or limiting preorder."""
    cands = list(dict.fromkeys(candidates))
    if not cands:
        raise ValueError("candidates must be nonempty")
    if mode not in ("limit", "radius"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "radius" and r is None:
        raise ValueError("radius mode needs r")
    table = {}
    for i, x in enumerate(cands):
        for y in cands[i + 1:]:
            v = _verdict(mu, x, y, mode, r, depth)
            table[(x, y)], table[(y, x)] = v, v.flipped()
    maximal = [x for x in cands if not any(table[(x, y)] == Relation.STRICTLY_LESS for y in cands if y != x)]
    greatest = [x for x in cands if all(table[(x, y)] in (Relation.STRICTLY_GREATER, Relation.EQUIVALENT)
                                        for y in cands if y != x)]
    return maximal, greatest


@dataclass
class TotalityReport:
    passed: bool
    failed_condition: Optional[str] = None
    witness: tuple = ()
    details: list = field(default_factory=list)

    def to_json(self):
        return {"passed": self.passed, "failed_condition": self.failed_condition,
                "witness": [point_str(w) for w in self.witness], "details": self.details}


def essential_totality_check(mu: Measure, E, complement_sample, depth: int = DEFAULT_DEPTH) -> TotalityReport:
    """Check the three essential-totality conditions over finite sets.

    (a) ``E`` is a chain, (b) each sampled outside point is dominated by every
    element of ``E``, (c) each sampled outside point is strictly dominated by
    some element of ``E``.
    """
    E = list(E)
    if not E:
        raise ValueError("E must be nonempty")
    for i, x in enumerate(E):
        for y in E[i + 1:]:
            v = compare_limit(mu, x, y, depth)
            if v.relation == Relation.INCOMPARABLE:
                return TotalityReport(False, "a", (x, y), [v.to_json()])
    for xp in complement_sample:
        for x in E:
            if not compare_limit(mu, xp, x, depth).relation.holds_le:
                return TotalityReport(False, "b", (xp, x))
    for xp in complement_sample:
        if not any(compare_limit(mu, xp, x, depth).relation == Relation.STRICTLY_LESS for x in E):
            note = "outside point coincides with an element of E" if xp in E else "no strict domination"
            return TotalityReport(False, "c", (xp,), [note])
    return TotalityReport(True)
