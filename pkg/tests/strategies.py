"""Hypothesis strategies for random exact measures."""
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from smallball.measures import Atomic, PiecewisePolyDensity
from smallball.metric import FiniteMetric

from oracles import l1_distance

PROPERTY = settings(max_examples=1000, deadline=None, derandomize=True)

positive = st.fractions(min_value=Fraction(1, 64), max_value=8, max_denominator=64)
radii = st.fractions(min_value=Fraction(1, 128), max_value=4, max_denominator=128).filter(lambda r: r > 0)


@st.composite
def finite_metric_atomic(draw, max_points=20):
    """Atoms on distinct integer lattice points of the plane with the L1 metric."""
    n = draw(st.integers(2, max_points))
    coords = draw(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=n, max_size=n, unique=True))
    table = {(p, q): l1_distance(p, q) for p in coords for q in coords if p != q}
    space = FiniteMetric(coords, table)
    masses = draw(st.lists(positive, min_size=n, max_size=n))
    return Atomic(space, dict(zip(coords, masses)))


@st.composite
def piecewise_density(draw, max_pieces=5, degree=1):
    """Piecewise polynomial (constant or linear) nonnegative density with positive mass."""
    k = draw(st.integers(1, max_pieces))
    cuts = sorted(draw(st.lists(st.fractions(-4, 4, max_denominator=8), min_size=k + 1, max_size=k + 1,
                                unique=True)))
    polys = []
    for a, b in zip(cuts, cuts[1:]):
        va = draw(st.fractions(0, 4, max_denominator=8))
        vb = draw(st.fractions(0, 4, max_denominator=8)) if degree == 1 else va
        slope = (vb - va) / (b - a)
        polys.append((va - slope * a, slope) if slope else (va,))
    if all(all(c == 0 for c in p) for p in polys):
        polys[0] = (Fraction(1),)
    return PiecewisePolyDensity(cuts, polys)

