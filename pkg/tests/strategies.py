"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from puiseux_tree.berkovich import disk, type1
from puiseux_tree.field import ComplexPuiseux, PuiseuxNumber
from puiseux_tree.poly import Poly

exponents = st.sampled_from([Fraction(k, 6) for k in range(-12, 13)])
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def puiseux(draw, max_terms=3):
    terms = draw(st.lists(st.tuples(exponents, coefficients), max_size=max_terms))
    return PuiseuxNumber(terms)


nonzero_puiseux = puiseux().filter(lambda a: not a.is_zero())


@st.composite
def complex_puiseux(draw):
    im = draw(st.one_of(st.just(PuiseuxNumber()), puiseux(max_terms=2)))
    return ComplexPuiseux(draw(puiseux()), im)


log_radii = st.sampled_from([Fraction(k, 2) for k in range(-6, 7)])


@st.composite
def disks(draw, real=False):
    center = ComplexPuiseux(draw(puiseux())) if real else draw(complex_puiseux())
    return disk(center, draw(log_radii))


@st.composite
def points(draw):
    if draw(st.booleans()):
        return type1(draw(complex_puiseux()))
    return draw(disks())


@st.composite
def polys(draw, max_degree=4, real=False):
    coeff = puiseux(max_terms=2) if real else complex_puiseux()
    return Poly(draw(st.lists(coeff, max_size=max_degree + 1)))
