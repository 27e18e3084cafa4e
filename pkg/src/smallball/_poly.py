"""Exact univariate polynomial helpers (coefficient tuples, lowest degree first)."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .exact import exact


def peval(coeffs, t):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return exact(acc) if not hasattr(acc, "lo") else acc


def antiderivative(coeffs) -> tuple:
    return (Fraction(0),) + tuple(exact(c / (i + 1)) for i, c in enumerate(coeffs))


def taylor_shift(coeffs, x) -> tuple:
    """Coefficients of ``t -> p(x + t)``."""
    n = len(coeffs)
    out = [Fraction(0)] * n
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        xp = Fraction(1)
        for j in range(i, -1, -1):
            # contributes c * comb(i, j) * x**(i-j) * t**j
            out[j] = out[j] + c * comb(i, j) * xp
            xp = xp * x
    return tuple(exact(c) for c in out)


def ball_integral_coeffs(left, right) -> tuple:
    """Polynomial in ``r`` for the integral over ``[x-r, x+r]``.

    ``left``/``right`` are the Taylor coefficients at ``x`` of the density on
    the left and right of ``x`` (``None`` for zero).
    """
    n = max(len(left or ()), len(right or ())) + 1
    out = [Fraction(0)] * n
    for k, c in enumerate(right or ()):
        out[k + 1] += exact(c / (k + 1))
    for k, c in enumerate(left or ()):
        out[k + 1] += exact(c * (-1) ** k / (k + 1))
    return tuple(exact(c) for c in out)


def psub(p, q) -> tuple:
    n = max(len(p), len(q))
    return tuple(exact((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)) for i in range(n))
