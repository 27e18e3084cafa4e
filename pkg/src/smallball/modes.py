"""Radius-r modes, asymptotic maximising families and small-radius mode checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _poly
from .exact import Undecidable, as_interval, compare, exact, exact_str, is_exact, point_str
from .germs import KnotPattern, Unsupported, _pow, common_period, leading_ratio_limits
from .measures import Atomic, Measure, PiecewisePolyDensity
from .preorder import render

MAX_CELLS = 4000


def _norm(mu: Measure, m):
    Z = mu.Z
    if Z == 1:
        return m
    if is_exact(m) and is_exact(Z):
        return exact(m / Z)
    return as_interval(m) / as_interval(Z)


def _lower(x):
    return as_interval(x).lo if not is_exact(x) else x


def _upper(x):
    return as_interval(x).hi if not is_exact(x) else x


@dataclass
class ModeReport:
    r: object
    M_r: object
    attained: Optional[bool]
    maximisers: list = field(default_factory=list)
    maximiser_intervals: list = field(default_factory=list)
    witness: list = field(default_factory=list)
    complete: bool = True
    method: str = ""
    raw_M_r: object = None

    def to_json(self):
        return {"r": exact_str(self.r), "M_r": render(self.M_r),
                "attained": "Unknown" if self.attained is None else self.attained,
                "maximisers": [point_str(p) for p in self.maximisers],
                "maximiser_intervals": [[exact_str(a), exact_str(b)] for a, b in self.maximiser_intervals],
                "witness": [{"point": point_str(p), "mass": render(m)} for p, m in self.witness],
                "complete": self.complete, "method": self.method}


class CountableDomain:
    """All points of a countable construction, for exact suprema.

    Subclasses return a finite candidate set that contains every point whose
    mass could reach the supremum, and a closed form for the supremum over
    the remaining points together with points approaching it.
    """

    name = "countable"

    def candidates(self, r) -> list:
        raise NotImplementedError

    def remainder_supremum(self, r):
        """``(raw value, witness)`` bounding the masses outside the candidates.

        Every point outside the candidates has mass at most
        ``max(value, best candidate mass)``.  When the value exceeds every
        candidate it must be a supremum that is not attained, and
        ``witness(j)`` returns the ``j``-th point of a sequence whose masses
        increase strictly to it.  Otherwise ``witness`` may be None.
        """
        raise NotImplementedError


# ---------------------------------------------------------------------------
# finite candidate sets


def _argmax_report(mu, r, points, method):
    if not points:
        raise ValueError("empty candidate set")
    masses = [(p, mu.mass(p, r)) for p in points]
    best = masses[0][1]
    for _, m in masses[1:]:
        c = compare(m, best)
        if c is None:
            raise Undecidable("ball masses overlap", m, best)
        if c > 0:
            best = m
    maxi = []
    for p, m in masses:
        c = compare(m, best)
        if c is None:
            raise Undecidable("ball masses overlap", m, best)
        if c == 0:
            maxi.append(p)
    return best, maxi, masses


def _finite_report(mu, r, points, method="finite"):
    best, maxi, _ = _argmax_report(mu, r, points, method)
    return ModeReport(r, _norm(mu, best), True, maxi, method=method, raw_M_r=best)


def _atoms_of(mu):
    parts = mu.components()
    if not all(isinstance(c, Atomic) for c in parts) or getattr(mu, "tails", ()):
        raise ValueError("the 'atoms' domain needs a finite atomic measure")
    pts = []
    for c in parts:
        pts.extend(c.atoms)
    return list(dict.fromkeys(pts))


def _countable_report(mu, r, dom: CountableDomain):
    cands = dom.candidates(r)
    best, maxi, _ = _argmax_report(mu, r, cands, dom.name)
    sup, witness = dom.remainder_supremum(r)
    c = compare(sup, best)
    if c is None:
        raise Undecidable("remainder supremum overlaps the best candidate", sup, best)
    if c <= 0:
        # on a tie, points outside the candidates may attain the maximum too
        return ModeReport(r, _norm(mu, best), True, maxi, complete=c < 0, method=dom.name, raw_M_r=best)
    wit = []
    if witness is not None:
        prev = None
        for j in range(6):
            p = witness(j)
            m = mu.mass(p, r)
            if compare(m, sup) != -1 or (prev is not None and compare(m, prev) != 1):
                raise AssertionError("witness sequence is not strictly increasing below the supremum")
            wit.append((p, _norm(mu, m)))
            prev = m
    return ModeReport(r, _norm(mu, sup), False, [], witness=wit, method=dom.name, raw_M_r=sup)


# ---------------------------------------------------------------------------
# the real line


def merge_piecewise(parts) -> PiecewisePolyDensity:
    """Single piecewise polynomial density equal to the sum of ``parts``."""
    breaks = sorted({b for p in parts for b in p.breaks})
    polys = []
    for a, b in zip(breaks, breaks[1:]):
        mid = (a + b) / 2
        acc = ()
        for p in parts:
            for (u, v), q in zip(zip(p.breaks, p.breaks[1:]), p.polys):
                if u <= mid <= v:
                    acc = _poly.psub(acc, tuple(-c for c in q))
        polys.append(acc or (Fraction(0),))
    return PiecewisePolyDensity(breaks, polys)


def _piecewise_line_report(mu, dens: PiecewisePolyDensity, r):
    pts = dens.lattice(r)
    best, maxi, masses = _argmax_report(dens, r, pts, "lattice")
    exact_lattice = dens.exact_lattice
    intervals = []
    if exact_lattice:
        # consecutive lattice points both at the max: the mass map is flat in between
        # only when it is linear there (constant density on both ball ends)
        on = [compare(m, best) == 0 for _, m in masses]
        for i in range(len(pts) - 1):
            if on[i] and on[i + 1]:
                mid = (pts[i] + pts[i + 1]) / 2
                if compare(dens.mass(mid, r), best) == 0:
                    intervals.append((pts[i], pts[i + 1]))
        merged = []
        for a, b in intervals:
            if merged and merged[-1][1] == a:
                merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        intervals = merged
        maxi = [p for p in maxi if not any(a <= p <= b for a, b in intervals)]
    return ModeReport(r, _norm(mu, best), True if exact_lattice else None, maxi, intervals,
                      complete=exact_lattice, method="exact-lattice" if exact_lattice else "lattice-heuristic",
                      raw_M_r=best)


def _cell_bound(parts, u, v, r):
    total = Fraction(0)
    for c in parts:
        ck = c.unimodal_center
        if v <= ck:
            m = c.mass(v, r)
        elif u >= ck:
            m = c.mass(u, r)
        else:
            m = c.mass(ck, r)
        total = total + m
    return total


def _resolved_by_center(parts, u, v, r):
    """Centre whose component alone matters on ``[u, v]`` and is strictly peaked there."""
    inside = [c for c in parts if u <= c.unimodal_center <= v]
    if len(inside) != 1:
        return None
    c = inside[0]
    for o in parts:
        if o is c:
            continue
        hull = o.support_hull()
        if not (u - r > hull[1] or v + r < hull[0]):
            return None
    return c


def line_cover(mu: Measure, r, max_cells: int = MAX_CELLS):
    """Certified ``M_r`` for a finite sum of symmetric unimodal measures on the line.

    Returns ``(report, upper)`` where ``upper`` bounds the mass of every
    point outside the listed maximisers.
    """
    parts = mu.components()
    r = exact(r)
    centers = list(dict.fromkeys(c.unimodal_center for c in parts))
    best, maxi, _ = _argmax_report(mu, r, centers, "cover")
    hull = mu.support_hull()
    lo, hi = exact(hull[0] - r), exact(hull[1] + r)
    cells = [(lo, hi)]
    cuts = sorted(c for c in centers if lo < c < hi)
    if cuts:
        pts = [lo] + cuts + [hi]
        cells = list(zip(pts, pts[1:]))
    complete, upper = True, Fraction(0)
    processed = 0
    min_width = (hi - lo) / 2 ** 40
    while cells:
        u, v = cells.pop()
        processed += 1
        B = _cell_bound(parts, u, v, r)
        cb = compare(B, best)
        if cb is not None and cb < 0:
            upper = max(upper, _upper(B))
            continue
        c = _resolved_by_center(parts, u, v, r)
        if c is not None:
            strict = c.strict_radius
            ck = c.unimodal_center
            if strict is not None and max(ck - u, v - ck) + r < strict:
                continue  # only ck itself can reach the bound inside this cell
            if B == c.mass(ck, r) and is_exact(B):
                if not (ck in maxi and compare(B, best) == 0):
                    upper = max(upper, _upper(B))
                if strict is None or v - u < min_width:
                    complete = False
                    continue
        if processed > max_cells or v - u < min_width:
            complete = False
            upper = max(upper, _upper(B))
            continue
        m = (u + v) / 2
        cells.extend([(u, m), (m, v)])
    if compare(upper, best) == 1:
        raise Undecidable(f"line cover could not certify M_r at r={r}", best, upper)
    return ModeReport(r, _norm(mu, best), True, maxi, complete=complete, method="unimodal-cover",
                      raw_M_r=best), upper


def _line_report(mu, r):
    parts = mu.components()
    if getattr(mu, "tails", ()):
        return _heuristic_line(mu, r)
    if all(isinstance(c, PiecewisePolyDensity) for c in parts):
        dens = parts[0] if len(parts) == 1 else merge_piecewise(parts)
        return _piecewise_line_report(mu, dens, r)
    if all(c.unimodal_center is not None and c.support_hull() is not None for c in parts):
        return line_cover(mu, r)[0]
    return _heuristic_line(mu, r)


def _heuristic_line(mu, r):
    pts = mu.lattice(r)
    best, maxi, _ = _argmax_report(mu, r, pts, "lattice")
    return ModeReport(r, _norm(mu, best), None, maxi, complete=False, method="lattice-heuristic",
                      raw_M_r=best)


# ---------------------------------------------------------------------------
# public operations


def sup_ball_mass(mu: Measure, r, domain="atoms") -> ModeReport:
    r = exact(r)
    if not r > 0:
        raise ValueError("r must be positive")
    if isinstance(domain, CountableDomain):
        return _countable_report(mu, r, domain)
    if isinstance(domain, (list, tuple, set, frozenset)):
        return _finite_report(mu, r, list(domain))
    if domain == "atoms":
        return _finite_report(mu, r, _atoms_of(mu), "atoms")
    if domain == "line":
        return _line_report(mu, r)
    raise ValueError(f"unsupported domain descriptor {domain!r}")


def radius_r_modes(mu: Measure, r, domain="atoms") -> list:
    rep = sup_ball_mass(mu, r, domain)
    if rep.attained is None:
        raise Undecidable(f"attainment of M_r at r={r} is not certified")
    return list(rep.maximisers)


@dataclass
class AMFRecord:
    radii: list
    points: list
    eps: list
    ratios: list

    def to_json(self):
        return {"rows": [{"r": exact_str(r), "x_r": point_str(x), "eps": exact_str(e), "ratio": render(q)}
                         for r, x, e, q in zip(self.radii, self.points, self.eps, self.ratios)]}


def _eps_value(eps_rule, r):
    if callable(eps_rule):
        return exact(eps_rule(r))
    if eps_rule == "r":
        return r
    return exact(eps_rule)


def build_amf(mu: Measure, eps_rule, grid, domain="atoms") -> AMFRecord:
    grid = [exact(r) for r in grid]
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("radius grid must be strictly decreasing")
    radii, points, epss, ratios = [], [], [], []
    for r in grid:
        eps = _eps_value(eps_rule, r)
        if not eps > 0:
            raise ValueError("tolerances must be positive")
        rep = sup_ball_mass(mu, r, domain)
        if rep.maximisers:
            x = rep.maximisers[0]
        elif rep.maximiser_intervals:
            a, b = rep.maximiser_intervals[0]
            x = exact((a + b) / 2)
        else:
            x = _witness_point(mu, r, rep, eps, domain)
        q = _norm(mu, mu.mass(x, r))
        ratio = exact(q / rep.M_r) if is_exact(q) and is_exact(rep.M_r) else as_interval(q) / as_interval(rep.M_r)
        if compare(ratio, 1 - eps) == -1:
            raise RuntimeError(f"no point within tolerance found at r={exact_str(r)}")
        radii.append(r), points.append(x), epss.append(eps), ratios.append(ratio)
    return AMFRecord(radii, points, epss, ratios)


def _witness_point(mu, r, rep, eps, domain):
    if not isinstance(domain, CountableDomain):
        raise RuntimeError(f"search failed at r={exact_str(r)}")
    _, witness = domain.remainder_supremum(r)
    if witness is None:
        raise RuntimeError(f"no witness sequence at r={exact_str(r)}")
    target = (1 - eps) * _lower(rep.raw_M_r)
    for j in range(4096):
        p = witness(j)
        if compare(mu.mass(p, r), target) != -1:
            return p
    raise RuntimeError(f"witness sequence did not reach the tolerance at r={exact_str(r)}")


def default_grid(mu: Measure, n_min: int = 1, n_max: int = 24):
    base = exact(getattr(mu, "grid_base", Fraction(2)))
    return [exact(1 / base ** n) for n in range(n_min, n_max + 1)]


# ---------------------------------------------------------------------------
# strong and generalised modes


@dataclass
class StrongModeResult:
    liminf: object
    limsup: object
    exact: bool
    accepted: Optional[bool]
    ratios: list

    def to_json(self):
        return {"liminf": render(self.liminf), "limsup": render(self.limsup), "exact": self.exact,
                "accepted": "Unknown" if self.accepted is None else self.accepted,
                "ratios": [render(q) for q in self.ratios]}


def _is_geometric(grid):
    q = exact(grid[1] / grid[0])
    return all(exact(b / a) == q for a, b in zip(grid, grid[1:])), q


def _grid_ratio_limits(gx, gc, grid):
    """Exact limits of ``F_x / F_c`` along a geometric grid, or None."""
    if gx.errors or gc.errors:
        try:
            lo, hi = leading_ratio_limits(gx, gc)
        except (Unsupported, ValueError):
            return None
        return (lo, hi) if lo == hi else None
    if gx.is_poly and gc.is_poly:
        try:
            return leading_ratio_limits(gx, gc)
        except (Unsupported, ValueError):
            return None
    geo, q = _is_geometric(grid)
    if not geo:
        return None
    lams = [g.main.lam for g in (gx, gc) if isinstance(g.main, KnotPattern)]
    period = 1
    try:
        for lam in lams:
            p, s = common_period(q, lam)
            period = period * p // math.gcd(period, p)
    except Unsupported:
        return None
    r0 = min(gx.r0, gc.r0)
    start = next((i for i, r in enumerate(grid) if r <= r0), None)
    if start is None:
        return None
    r_first = grid[start]
    vals = []
    for j in range(period):
        r = exact(r_first * _pow(q, j))
        vals.append(exact(gx.value(r) / gc.value(r)))
    return min(vals), max(vals)


def strong_mode_check(mu: Measure, x, grid, domain="line") -> StrongModeResult:
    grid = [exact(r) for r in grid]
    if len(grid) < 2 or any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("need a strictly decreasing grid of at least two radii")
    reps = [sup_ball_mass(mu, r, domain) for r in grid]
    ratios = []
    for r, rep in zip(grid, reps):
        m = _norm(mu, mu.mass(x, r))
        ratios.append(exact(m / rep.M_r) if is_exact(m) and is_exact(rep.M_r)
                      else as_interval(m) / as_interval(rep.M_r))
    tail = ratios[len(ratios) // 2:]
    tail_reps = reps[len(reps) // 2:]
    # exact: the maximiser set is eventually a fixed finite set C with exact germs
    if all(rep.attained and rep.maximisers and not rep.maximiser_intervals
           for rep in tail_reps):
        C = sorted({p for rep in tail_reps for p in rep.maximisers}, key=repr)
        gx = mu.germ(x)
        lims = []
        if gx is not None:
            for c in C:
                gc = mu.germ(c)
                got = None if gc is None else _grid_ratio_limits(gx, gc, grid)
                if got is None:
                    lims = None
                    break
                lims.append(got)
        else:
            lims = None
        if lims:
            if len(C) == 1:
                lo, hi = lims[0]
            else:
                lo, hi = _min_of_periodic(mu, x, C, grid)
            if lo is not None:
                return StrongModeResult(lo, hi, True, compare(lo, 1) >= 0, ratios)
    lo = min(tail, key=_lower)
    hi = max(tail, key=_upper)
    if compare(_upper(hi), 1) == -1:
        acc = False
    elif all(compare(q, 1) == 0 for q in tail):
        acc = True
    else:
        acc = None
    return StrongModeResult(lo, hi, False, acc, ratios)


def _min_of_periodic(mu, x, C, grid):
    """Limits along the grid of ``min_c F_x / F_c`` when all ratios are grid-periodic."""
    geo, q = _is_geometric(grid)
    if not geo:
        return None, None
    gx = mu.germ(x)
    germs = [mu.germ(c) for c in C]
    if gx.errors or any(g.errors for g in germs):
        return None, None
    period = 1
    try:
        for g in [gx] + germs:
            if isinstance(g.main, KnotPattern):
                p, _ = common_period(q, g.main.lam)
                period = period * p // math.gcd(period, p)
            elif len([c for c in g.main if c != 0]) > 1:
                return None, None
    except Unsupported:
        return None, None
    r0 = min([gx.r0] + [g.r0 for g in germs])
    start = next((i for i, r in enumerate(grid) if r <= r0), None)
    if start is None:
        return None, None
    vals = []
    for j in range(period):
        r = exact(grid[start] * _pow(q, j))
        vals.append(min(exact(gx.value(r) / g.value(r)) for g in germs))
    return min(vals), max(vals)


@dataclass
class GeneralisedVerdict:
    verdict: str  # "Accepted", "Rejected", "Unknown"
    lower: list
    upper: list
    boxes: list

    def to_json(self):
        return {"verdict": self.verdict, "lower": [render(v) for v in self.lower],
                "upper": [render(v) for v in self.upper],
                "boxes": [[exact_str(a), exact_str(b)] for a, b in self.boxes]}


def _box_upper(mu, a, b, r):
    """Certified upper bound of ``mu(B(y, r))`` over ``y`` in ``[a, b]``."""
    parts = mu.components()
    if all(c.unimodal_center is not None for c in parts) and not getattr(mu, "tails", ()):
        cells = [(a, b)]
        centers = sorted(c.unimodal_center for c in parts if a < c.unimodal_center < b)
        if centers:
            pts = [a] + centers + [b]
            cells = list(zip(pts, pts[1:]))
        return max((_cell_bound(parts, u, v, r) for u, v in cells), key=_upper)
    # any measure: the ball around y sits inside the ball of radius r + (b - a) around the midpoint
    mid = (a + b) / 2
    return mu.mass(mid, r + (b - a) / 2)


def generalised_mode_check(mu: Measure, x, sequences, domain="line", samples: int = 64):
    """Check ``x`` against sequences of radii with shrinking search boxes.

    Each sequence is a list of radii or of ``(r, (a, b))`` pairs; a bare
    radius gets the box ``[x - 2r, x + 2r]``.
    """
    out = []
    for seq in sequences:
        lowers, uppers, boxes = [], [], []
        for item in seq:
            if isinstance(item, tuple):
                r, (a, b) = exact(item[0]), item[1]
                a, b = exact(a), exact(b)
            else:
                r = exact(item)
                a, b = exact(x - 2 * r), exact(x + 2 * r)
            rep = sup_ball_mass(mu, r, domain)
            M_raw = rep.raw_M_r
            pts = {exact(a + (b - a) * Fraction(i, samples)) for i in range(samples + 1)} | {exact(x)}
            if isinstance(domain, str) and domain == "line":
                pts |= {p for p in mu.lattice(r) if a <= p <= b}
            best = max((mu.mass(p, r) for p in pts), key=_lower)
            up = _box_upper(mu, a, b, r)
            lowers.append(exact(_lower(best) / _upper(M_raw)) if is_exact(best) and is_exact(M_raw)
                          else _lower(best) / _upper(M_raw))
            uppers.append(_upper(up) / _lower(M_raw))
            boxes.append((a, b))
        half = len(seq) // 2
        if all(u < 1 for u in uppers[half:]):
            verdict = "Rejected"
        elif all(l >= 1 for l in lowers[half:]):
            verdict = "Accepted"
        else:
            verdict = "Unknown"
        out.append(GeneralisedVerdict(verdict, lowers, uppers, boxes))
    return out


def amf_upward_intersection(mu: Measure, amf: AMFRecord, candidates, domain="line", check_strong=True):
    """Candidates whose ball mass is at least that of ``x_r`` at every grid radius."""
    keep = []
    for c in candidates:
        ok = True
        for r, xr in zip(amf.radii, amf.points):
            cmpv = compare(mu.mass(c, r), mu.mass(xr, r))
            if cmpv is None:
                raise Undecidable("ball masses overlap", c, xr)
            if cmpv < 0:
                ok = False
                break
        if ok:
            keep.append(c)
    if check_strong and len(amf.radii) >= 2:
        for c in keep:
            res = strong_mode_check(mu, c, amf.radii, domain)
            if res.accepted is False:
                raise AssertionError(f"{c!r} is in the intersection but fails the strong-mode check")
    return keep


def upward_nesting_report(mu: Measure, amf: AMFRecord, candidates):
    """Radius pairs ``s < r`` on the grid where the upward sets over candidates fail to nest."""
    ups = []
    for r, xr in zip(amf.radii, amf.points):
        base = mu.mass(xr, r)
        ups.append({c for c in candidates if compare(mu.mass(c, r), base) in (0, 1)})
    bad = []
    for i in range(len(ups)):
        for j in range(i + 1, len(ups)):
            if not ups[j] <= ups[i]:
                bad.append((amf.radii[i], amf.radii[j]))
    return bad


def weak_mode_check(mu: Measure, x, candidates, depth: int = 64) -> bool:
    from .preorder import compare_limit
    return all(compare_limit(mu, y, x, depth).relation.holds_le for y in candidates)


__all__ = ["ModeReport", "AMFRecord", "CountableDomain", "sup_ball_mass", "radius_r_modes", "build_amf",
           "strong_mode_check", "generalised_mode_check", "amf_upward_intersection", "line_cover",
           "merge_piecewise", "default_grid", "weak_mode_check", "upward_nesting_report"]
