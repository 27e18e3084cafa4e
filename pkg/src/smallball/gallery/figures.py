"""Figure data as ``(r, value, series)`` rows."""
from __future__ import annotations

import csv
import io
from fractions import Fraction

from ..exact import CertifiedInterval, compare, decimal_str, exact
from ..measures import Measure, Mixture

DIGITS = 30


def _density(mu: Measure, x):
    """Lebesgue density at ``x`` from the local radial description, or None at a kink."""
    total = Fraction(0)
    for c in mu.components():
        g = c.germ(x)
        if g is None or not g.is_poly:
            return None
        coeffs = g.main
        total = total + (coeffs[1] / 2 if len(coeffs) > 1 else 0)
    if mu.Z == 1:
        return exact(total)
    out = total / mu.Z
    return out if isinstance(out, CertifiedInterval) else exact(out)


def _row(r, value, series):
    # plotting data: an enclosure is drawn at its midpoint
    r, value = (v.mid if isinstance(v, CertifiedInterval) else v for v in (r, value))
    return (decimal_str(r, DIGITS), decimal_str(value, DIGITS), series)


def _xs(lo, hi, count):
    lo, hi = Fraction(lo), Fraction(hi)
    # odd denominators avoid the dyadic kinks of the constructions
    return [lo + (hi - lo) * Fraction(2 * j + 1, 2 * count + 1) for j in range(count + 1)]


def _log_radii(base, n_max, per=8):
    base = Fraction(base)
    out = []
    for n in range(0, n_max):
        for j in range(per):
            out.append(exact(base ** -n * (1 - (1 - 1 / base) * Fraction(j, per))))
    return sorted(set(out), reverse=True)


def ratio_rows(mu: Measure, x, y, radii) -> list:
    """Ratio of ball masses with running hulls over smaller radii included so far."""
    rows, vals = [], []
    for r in radii:
        q = mu.mass(x, r) / mu.mass(y, r)
        vals.append((r, q.mid if isinstance(q, CertifiedInterval) else exact(q)))
    lo = hi = None
    tail = {}
    for r, q in reversed(vals):
        lo = q if lo is None or compare(q, lo) < 0 else lo
        hi = q if hi is None or compare(q, hi) > 0 else hi
        tail[r] = (lo, hi)
    for r, q in vals:
        rows.append(_row(r, q, "ratio"))
        rows.append(_row(r, tail[r][1], "ratio_max"))
        rows.append(_row(r, tail[r][0], "ratio_min"))
    return rows


def figure_rows(fig: str) -> list:
    from .line import make_bimodal_hiding, make_oscillation_pair
    if fig == "1":
        mu = make_bimodal_hiding().measure
        rows = []
        for x in _xs(-2, 2, 400):
            d = _density(mu, x)
            if d is not None:
                rows.append(_row(x, d, "density"))
        for r in _xs(0, 1, 100)[1:]:
            rows.append(_row(r, mu.mass(1, r), "rcdf_plus"))
            rows.append(_row(r, mu.mass(-1, r), "rcdf_minus"))
        rows += [row for row in ratio_rows(mu, -1, 1, _log_radii(2, 12)) if row[2] == "ratio"]
        return rows
    if fig == "2":
        item = make_oscillation_pair(2)
        mu = item.measure
        mu_e, mu_o = mu.components()
        rows = []
        for r in _log_radii(2, 14):
            rows.append(_row(r, mu_e.F(r), "rcdf_even"))
            rows.append(_row(r, mu_o.F(r), "rcdf_odd"))
        for x in _xs(-2, 2, 400):
            d = _density(mu, x)
            if d is not None:
                rows.append(_row(x, d, "density"))
        rows += ratio_rows(mu, -1, 1, _log_radii(2, 14))
        return rows
    if fig == "5":
        from .antichain import dense_antichain_components
        comps = [c for _, _, c in dense_antichain_components(5)]
        mu = Mixture(comps, Z=1)
        rows = []
        for x in _xs(0, 1, 2000):
            d = _density(mu, x)
            if d is not None:
                rows.append(_row(x, d, "density"))
        return rows
    raise ValueError(f"no figure data for {fig!r}; choose 1, 2 or 5")


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("r", "value", "series"))
    w.writerows(rows)
    return buf.getvalue()
