"""Exact scalars in Q(sqrt t) and rational-endpoint certified intervals.

Every ball mass and every ratio produced by the package is one of

* ``Fraction`` (plain rationals),
* ``QSqrt``, an element ``rat + surd * sqrt(base)`` of a real quadratic field,
* ``CertifiedInterval``, a closed interval with rational endpoints that is
  guaranteed to contain the true value.

``QSqrt`` keeps ``base`` as a squarefree integer so that equal numbers have
equal representations (``sqrt(8)`` is stored as ``2*sqrt(2)``).
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

PREC_BITS = 200
INF = math.inf


class Undecidable(ArithmeticError):
    """A comparison could not be settled with the available precision."""

    def __init__(self, message, *evidence):
        super().__init__(message)
        self.evidence = evidence


@lru_cache(maxsize=256)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n == s*s*t`` and ``t`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, t, m, d = 1, 1, n, 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            t *= d
        d += 1 if d == 2 else 2
    return s, t * m


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class QSqrt:
    """``rat + surd*sqrt(base)`` with rational coefficients and squarefree ``base``."""

    __slots__ = ("rat", "surd", "base")

    def __init__(self, rat=0, surd=0, base=1):
        rat, surd = _frac(rat), _frac(surd)
        base = int(base)
        if base < 1:
            raise ValueError("base must be a positive integer")
        if base > 1:
            s, t = squarefree_split(base)
            surd *= s
            base = t
        if base == 1:
            rat, surd = rat + surd, Fraction(0)
        if surd == 0:
            base = 1
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "surd", surd)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt is immutable")

    @classmethod
    def sqrt(cls, a) -> "QSqrt":
        """Exact square root of a nonnegative rational."""
        a = _frac(a)
        if a < 0:
            raise ValueError("square root of a negative number")
        if a == 0:
            return cls()
        p, q = a.numerator, a.denominator
        s, t = squarefree_split(p * q)
        return cls(0, Fraction(s, q), t)

    # -- structure -------------------------------------------------------
    def is_rational(self) -> bool:
        return self.surd == 0

    def as_fraction(self) -> Fraction:
        if self.surd:
            raise ValueError(f"{self} is irrational")
        return self.rat

    def conjugate(self) -> "QSqrt":
        return QSqrt(self.rat, -self.surd, self.base)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.surd * self.surd * self.base

    def sign(self) -> int:
        r, s = self.rat, self.surd
        if s == 0:
            return (r > 0) - (r < 0)
        sr, ss = (r > 0) - (r < 0), (s > 0) - (s < 0)
        if sr == 0 or sr == ss:
            return ss
        # opposite signs: compare r^2 with s^2 * base
        d = r * r - s * s * self.base
        return sr if d > 0 else ss

    # -- coercion ----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt(other)
        return None

    def _base_with(self, other: "QSqrt") -> int:
        if self.base == 1:
            return other.base
        if other.base == 1 or other.base == self.base:
            return self.base
        raise ValueError(f"cannot mix sqrt({self.base}) and sqrt({other.base})")

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt(self.rat + o.rat, self.surd + o.surd, self._base_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(-self.rat, -self.surd, self.base)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt(self.rat - o.rat, self.surd - o.surd, self._base_with(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        b = self._base_with(o)
        return QSqrt(self.rat * o.rat + self.surd * o.surd * b,
                     self.rat * o.surd + self.surd * o.rat, b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.surd == 0:
            if o.rat == 0:
                raise ZeroDivisionError("division by zero")
            return QSqrt(self.rat / o.rat, self.surd / o.rat, self.base)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return QSqrt(num.rat / n, num.surd / n, num.base)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return QSqrt(1) / (self ** -n)
        result, base = QSqrt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparison ----------------------------------------------------------
    def _cmp(self, other):
        if isinstance(other, float):
            if math.isinf(other):
                return -1 if other > 0 else 1
            return NotImplemented
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self):
        if self.surd == 0:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.base))

    def __bool__(self):
        return self.rat != 0 or self.surd != 0

    def __float__(self):
        return float(self.to_mpf(30))

    def to_mpf(self, dps: int = 40):
        with mpmath.workdps(dps + 10):
            v = mpmath.mpf(self.rat.numerator) / self.rat.denominator
            if self.surd:
                v += mpmath.mpf(self.surd.numerator) / self.surd.denominator * mpmath.sqrt(self.base)
            return +v

    def __repr__(self):
        return f"QSqrt({self.rat}, {self.surd}, {self.base})"

    def __str__(self):
        if self.surd == 0:
            return str(self.rat)
        head = "" if self.rat == 0 else f"{self.rat} + "
        return f"{head}{self.surd}*sqrt({self.base})"


Exact = Union[Fraction, QSqrt]


def _rel_bits(x: Fraction, bits: int) -> int:
    """``bits`` significant bits: small magnitudes get a finer grid."""
    if x == 0:
        return bits
    return bits + max(0, x.denominator.bit_length() - abs(x.numerator).bit_length())


def _dyadic_floor(x: Fraction, bits: int) -> Fraction:
    bits = _rel_bits(x, bits)
    if x.denominator <= (1 << bits):
        return x
    return Fraction(math.floor(x * (1 << bits)), 1 << bits)


def _dyadic_ceil(x: Fraction, bits: int) -> Fraction:
    bits = _rel_bits(x, bits)
    if x.denominator <= (1 << bits):
        return x
    return Fraction(math.ceil(x * (1 << bits)), 1 << bits)


def _sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits``."""
    if x < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << (2 * bits)
    lo_int = math.isqrt(math.floor(x * scale))
    lo = Fraction(lo_int, 1 << bits)
    hi = lo if lo * lo == x else Fraction(lo_int + 1, 1 << bits)
    return lo, hi


class CertifiedInterval:
    """Closed interval ``[lo, hi]`` with rational endpoints, rounded outward to ``bits`` significant bits."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None, bits: int = PREC_BITS):
        if hi is None:
            hi = lo
        lo, hi = _to_bounds(lo, bits)[0], _to_bounds(hi, bits)[1]
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", _dyadic_floor(lo, bits))
        object.__setattr__(self, "hi", _dyadic_ceil(hi, bits))

    def __setattr__(self, name, value):
        raise AttributeError("CertifiedInterval is immutable")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, CertifiedInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def hull(self, other) -> "CertifiedInterval":
        o = as_interval(other)
        return CertifiedInterval(min(self.lo, o.lo), max(self.hi, o.hi))

    @staticmethod
    def _coerce(other):
        if isinstance(other, CertifiedInterval):
            return other
        if isinstance(other, (int, Fraction, QSqrt)):
            return CertifiedInterval(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CertifiedInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CertifiedInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return CertifiedInterval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * CertifiedInterval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = CertifiedInterval(1)
        for _ in range(n):
            result = result * self
        if n % 2 == 0 and self.lo < 0 < self.hi:
            result = CertifiedInterval(0, result.hi)
        return result

    def sqrt(self) -> "CertifiedInterval":
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        return CertifiedInterval(_sqrt_bounds(self.lo, PREC_BITS)[0],
                                 _sqrt_bounds(self.hi, PREC_BITS)[1])

    def sign(self):
        """-1, 0 or 1 when decided, ``None`` when the interval straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __float__(self):
        return float(self.mid)

    def __eq__(self, other):
        if isinstance(other, CertifiedInterval):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"CertifiedInterval({float(self.lo):.17g}, {float(self.hi):.17g})"


Scalar = Union[Fraction, QSqrt, CertifiedInterval]


def _to_bounds(x, bits: int = PREC_BITS) -> tuple[Fraction, Fraction]:
    if isinstance(x, CertifiedInterval):
        return x.lo, x.hi
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(x)
    if isinstance(x, QSqrt):
        if x.surd == 0:
            return x.rat, x.rat
        lo, hi = _sqrt_bounds(Fraction(x.base), bits + 8)
        a, b = x.rat + x.surd * lo, x.rat + x.surd * hi
        return min(a, b), max(a, b)
    raise TypeError(f"not a scalar: {x!r}")


def as_interval(x) -> CertifiedInterval:
    return x if isinstance(x, CertifiedInterval) else CertifiedInterval(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QSqrt))


def exact(x) -> Exact:
    """Normalise an exact value: rationals become ``Fraction``."""
    if isinstance(x, QSqrt):
        return x.rat if x.surd == 0 else x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def sign(x):
    """Exact sign, or ``None`` for an interval straddling zero."""
    if isinstance(x, CertifiedInterval):
        return x.sign()
    if isinstance(x, QSqrt):
        return x.sign()
    if isinstance(x, float):
        return (x > 0) - (x < 0)
    return (x > 0) - (x < 0)


def compare(x, y):
    """-1/0/1 comparing ``x`` and ``y``; ``None`` if intervals overlap."""
    if isinstance(x, float) or isinstance(y, float):
        if x == y:
            return 0
        return -1 if x < y else 1
    if isinstance(x, CertifiedInterval) or isinstance(y, CertifiedInterval):
        a, b = as_interval(x), as_interval(y)
        if a.hi < b.lo:
            return -1
        if a.lo > b.hi:
            return 1
        if a.lo == a.hi == b.lo == b.hi:
            return 0
        return None
    return sign(exact(x) - exact(y))


def pow_half(a, n: int) -> Exact:
    """``a ** (n/2)`` exactly, for rational ``a > 0`` and integer ``n``."""
    a = _frac(a)
    q, r = divmod(n, 2)
    v = a ** q
    if r:
        v = QSqrt.sqrt(a) * v
    return exact(v)


def to_mpf(x, dps: int = 40):
    if isinstance(x, QSqrt):
        return x.to_mpf(dps)
    if isinstance(x, CertifiedInterval):
        return to_mpf(x.mid, dps)
    if isinstance(x, float):
        return mpmath.mpf(x)
    x = _frac(x)
    with mpmath.workdps(dps + 10):
        return mpmath.mpf(x.numerator) / x.denominator


def decimal_str(x, digits: int = 30) -> str:
    """Presentation-only decimal rendering."""
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    if isinstance(x, CertifiedInterval):
        return f"[{decimal_str(x.lo, digits)}, {decimal_str(x.hi, digits)}]"
    with mpmath.workdps(digits + 10):
        return mpmath.nstr(to_mpf(x, digits + 10), digits)


def exact_str(x) -> str:
    if isinstance(x, float):
        return "inf" if math.isinf(x) else repr(x)
    if isinstance(x, CertifiedInterval):
        return f"[{x.lo}, {x.hi}]"
    return str(exact(x))


def point_str(p) -> str:
    """Points as text: exact scalars in ``exact_str`` form, tuples as ``(a,b,...)``."""
    if isinstance(p, tuple):
        return "(" + ",".join(point_str(v) for v in p) + ")"
    if isinstance(p, (bool, str)):
        return str(p)
    if isinstance(p, float) or is_exact(p):
        return exact_str(p)
    return repr(p)


# -- JSON ---------------------------------------------------------------------

def scalar_to_json(x):
    if isinstance(x, float) and math.isinf(x):
        return {"inf": True}
    if isinstance(x, CertifiedInterval):
        return {"lo": str(x.lo), "hi": str(x.hi)}
    x = exact(x)
    if isinstance(x, QSqrt):
        return {"rat": str(x.rat), "surd": str(x.surd), "base": str(x.base)}
    return {"rat": str(x), "surd": "0", "base": "1"}


def scalar_from_json(d):
    if not isinstance(d, dict):
        raise ValueError(f"malformed scalar: {d!r}")
    if d.get("inf"):
        return INF
    if "lo" in d:
        return CertifiedInterval(Fraction(d["lo"]), Fraction(d["hi"]))
    base = Fraction(d.get("base", "1"))
    rat, surd = Fraction(d["rat"]), Fraction(d.get("surd", "0"))
    if surd == 0:
        return rat
    if base.denominator != 1:
        # sqrt(p/q) = sqrt(pq)/q
        root = QSqrt.sqrt(base)
        return exact(rat + surd * root)
    return exact(QSqrt(rat, surd, base.numerator))
