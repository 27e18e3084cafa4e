"""Metric spaces with exact distances."""
from __future__ import annotations

from fractions import Fraction

from .exact import QSqrt, exact


class MetricSpace:
    name = "abstract"

    def contains(self, x) -> bool:
        raise NotImplementedError

    def distance(self, x, y):
        raise NotImplementedError

    def check(self, x):
        if not self.contains(x):
            raise ValueError(f"point {x!r} is not in {self.name}")
        return x

    def params(self) -> dict:
        return {}

    def __eq__(self, other):
        return type(self) is type(other) and self.params() == other.params()

    def __hash__(self):
        return hash((self.name, repr(sorted(self.params().items()))))


class RealLine(MetricSpace):
    name = "real-line"

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction, QSqrt))

    def distance(self, x, y):
        return abs(exact(x) - exact(y))


class FiniteMetric(MetricSpace):
    """A finite set of labelled points with an explicit distance table."""

    name = "finite"

    def __init__(self, points, table: dict):
        self.points = tuple(points)
        self._index = {p: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise ValueError("duplicate points")
        self.table = {}
        for (p, q), d in table.items():
            d = exact(d)
            if d < 0:
                raise ValueError("negative distance")
            self.table[(p, q)] = d
            self.table[(q, p)] = d
        for p in self.points:
            self.table[(p, p)] = Fraction(0)
        for p in self.points:
            for q in self.points:
                if (p, q) not in self.table:
                    raise ValueError(f"missing distance for {p!r}, {q!r}")
                if p != q and self.table[(p, q)] == 0:
                    raise ValueError("distinct points at distance zero")

    def contains(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def distance(self, x, y):
        return self.table[(x, y)]

    def params(self):
        return {"points": self.points,
                "table": tuple(sorted(((self._index[p], self._index[q]), d)
                                      for (p, q), d in self.table.items()))}


def funny_delta(k: int, l: int) -> Fraction:
    """Discrete metric on the positive integers where the pairs (2j-1, 2j) sit at distance 2."""
    if k == l:
        return Fraction(0)
    lo, hi = min(k, l), max(k, l)
    if lo % 2 == 1 and hi == lo + 1:
        return Fraction(2)
    return Fraction(1)


class FunnyDiscrete(MetricSpace):
    name = "funny-discrete"

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 1

    def distance(self, x, y):
        return funny_delta(x, y)


class TwoLevelSpace(MetricSpace):
    """Points ``(xi, k, m)`` on short segments indexed by ``k, m >= 1``.

    Segments in different slices ``m`` are at distance 2; within a slice the
    segments are spread by ``2**-m`` times the funny discrete metric.
    """

    name = "two-level"

    def contains(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 3):
            return False
        xi, k, m = x
        if not (isinstance(k, int) and isinstance(m, int) and k >= 1 and m >= 1):
            return False
        if not isinstance(xi, (int, Fraction)):
            return False
        return abs(Fraction(xi)) <= Fraction(1, 2 ** (k + m + 1))

    @staticmethod
    def label_distance(a, b) -> Fraction:
        (k, m), (l, n) = a, b
        if m != n:
            return Fraction(2)
        return Fraction(1, 2 ** m) * funny_delta(k, l)

    def distance(self, x, y):
        (xi, k, m), (eta, l, n) = x, y
        if (k, m) == (l, n):
            return abs(Fraction(xi) - Fraction(eta))
        return self.label_distance((k, m), (l, n))


SPACES = {cls.name: cls for cls in (RealLine, FunnyDiscrete, TwoLevelSpace)}
