"""Dyadic points, best dyadic approximation and prime indexing."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..exact import CertifiedInterval, exact


class InsufficientPrecision(ValueError):
    """The binary expansion is not known to enough digits."""


@dataclass(frozen=True)
class DyadicPoint:
    level: int
    index: int

    def __post_init__(self):
        if self.level < 1 or not 1 <= self.index <= 2 ** (self.level - 1):
            raise ValueError(f"no dyadic point with level {self.level} and index {self.index}")

    @property
    def value(self) -> Fraction:
        return Fraction(2 * self.index - 1, 2 ** self.level)


def dyadic_points(L: int) -> list:
    return [DyadicPoint(l, i) for l in range(1, L + 1) for i in range(1, 2 ** (l - 1) + 1)]


def is_dyadic(x) -> bool:
    x = exact(x)
    if not isinstance(x, Fraction):
        return False
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class BinaryExpansion:
    """``x = sum digit(i) 2**-i`` over ``i >= 1``, evaluable up to ``depth`` digits."""

    digit: Callable
    depth: int

    def prefix(self, n: int) -> Fraction:
        if n > self.depth:
            raise InsufficientPrecision(f"expansion known to {self.depth} digits, {n} requested")
        acc = 0
        for i in range(1, n + 1):
            d = self.digit(i)
            if d not in (0, 1):
                raise ValueError(f"digit {i} is {d!r}")
            acc = 2 * acc + d
        return Fraction(acc, 2 ** n)

    @classmethod
    def of_fraction(cls, x, depth: int) -> "BinaryExpansion":
        x = Fraction(x)
        if not 0 <= x < 1:
            raise ValueError("need 0 <= x < 1")
        return cls(lambda i: (x * 2 ** i).numerator // (x * 2 ** i).denominator % 2, depth)

    @classmethod
    def sparse_ones(cls, beta: int, depth: int) -> "BinaryExpansion":
        """Ones exactly at positions ``beta**j``; zero runs grow by the factor ``beta``."""
        if beta < 2:
            raise ValueError("beta must be an integer >= 2")
        ones = set()
        p = 1
        while p <= depth:
            ones.add(p)
            p *= beta
        return cls(lambda i: 1 if i in ones else 0, depth)


def _nearest_grid_distance(y: Fraction, level: int) -> Fraction:
    """Distance from ``y`` to ``{j 2**-level : 1 <= j < 2**level}``."""
    n = 2 ** level
    j = math.floor(y * n)
    best = None
    for k in (j, j + 1):
        k = min(max(k, 1), n - 1)
        d = abs(y - Fraction(k, n))
        best = d if best is None or d < best else best
    return best


def dyadic_irrationality_measure(x, level: int):
    """Distance from ``x`` in ``[0, 1]`` to the dyadics of level at most ``level``.

    Exact for rational ``x``.  For a :class:`BinaryExpansion` the result is a
    certified interval using every known digit.
    """
    if level < 1:
        raise ValueError("level must be at least 1")
    if isinstance(x, BinaryExpansion):
        if x.depth <= level:
            raise InsufficientPrecision(f"need more than {level} digits, have {x.depth}")
        p = x.prefix(x.depth)
        eps = Fraction(1, 2 ** x.depth)
        # the distance is 1-Lipschitz and x lies in [p, p + eps]
        d = _nearest_grid_distance(p, level)
        d2 = _nearest_grid_distance(p + eps, level)
        lo = max(Fraction(0), min(d, d2) - eps)
        hi = max(d, d2) + eps
        return CertifiedInterval(lo, hi)
    x = exact(x)
    if not isinstance(x, Fraction) or not 0 <= x <= 1:
        raise ValueError("x must be a rational in [0, 1] or a BinaryExpansion")
    return _nearest_grid_distance(x, level)


def _log2(q: Fraction) -> float:
    """``log2`` of a positive rational far outside the float range."""
    return math.log2(q.numerator) - math.log2(q.denominator)


def dyadic_irrationality_exponent_estimate(x, level_max: int) -> tuple:
    """Bracket for the exponent from ``-log2 sigma(x, l) / l`` over ``l`` in the upper half.

    The exponent is the limsup of that quantity; the bracket allows a
    constant factor up to 4 either way in ``sigma``, which moves the
    exponent by at most ``2 / l``.
    """
    if level_max < 4:
        raise ValueError("level_max must be at least 4")
    if isinstance(x, BinaryExpansion):
        pass
    elif is_dyadic(x):
        raise ValueError("the exponent is undefined at dyadic rationals")
    lows, highs = [], []
    for l in range(level_max // 2, level_max + 1):
        s = dyadic_irrationality_measure(x, l)
        s_lo, s_hi = (s.lo, s.hi) if isinstance(s, CertifiedInterval) else (s, s)
        if s_lo <= 0:
            raise InsufficientPrecision(f"distance at level {l} is not separated from 0")
        lows.append((-_log2(s_hi) - 2) / l)
        highs.append((-_log2(s_lo) + 2) / l)
    return max(1.0, max(lows)), max(1.0, max(highs))


# -- primes ---------------------------------------------------------------------


def primes_up_to(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def nth_prime(n: int) -> int:
    """The ``n``-th prime, ``nth_prime(1) == 2``."""
    if n < 1:
        raise ValueError("n must be positive")
    bound = 16
    if n >= 6:
        bound = int(n * (math.log(n) + math.log(math.log(n)))) + 3
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= n:
            return ps[n - 1]
        bound *= 2


def prime_index(level: int, index: int) -> int:
    """Prime attached to the dyadic point ``(level, index)``: the ``(2**(level-1) + index - 1)``-th prime."""
    DyadicPoint(level, index)
    return nth_prime(2 ** (level - 1) + index - 1)
