import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nokstring.polyval import (
    GradedValue,
    LeafSeparationError,
    MultiPoly,
    TermValuation,
    ValVector,
    ZeroValuationError,
    check_prevaluation_axioms,
    graded_extension,
    highest_term_valuation,
    leaf_reduce,
    leaf_reduce_polys,
    lowest_term_valuation,
    max_degree_function,
    random_poly,
)

x = MultiPoly.variable(2, 0)
y = MultiPoly.variable(2, 1)

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
polys = st.dictionaries(exps, coefs, min_size=1, max_size=5).map(lambda d: MultiPoly(3, d))


def test_examples_from_the_term_valuations():
    f = x ** 2 * y + x * y ** 3
    assert highest_term_valuation(MultiPoly.constant(2, 5)) == (0, 0)
    assert highest_term_valuation(f) == (-2, -1)
    assert lowest_term_valuation(f) == (1, 3)
    assert lowest_term_valuation(x * y ** 2) == (1, 2)


def test_variable_priority():
    f = x ** 2 * y + x * y ** 3
    assert highest_term_valuation(f, order=[1, 0]) == (-3, -1)
    v = TermValuation(2, highest=True, order=[1, 0])
    assert v.exponent_of(v.value(f)) == (1, 3)
    assert v.leading_coefficient(f) == 1


def test_zero_raises():
    with pytest.raises(ZeroValuationError):
        highest_term_valuation(MultiPoly(2))
    with pytest.raises(ZeroValuationError):
        lowest_term_valuation(MultiPoly(2))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_highest_term_multiplicative(f, g):
    assert highest_term_valuation(f * g) == highest_term_valuation(f) + highest_term_valuation(g)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_lowest_term_multiplicative_and_ultrametric(f, g):
    v = lowest_term_valuation
    assert v(f * g) == v(f) + v(g)
    if f + g:
        assert v(f + g) >= min(v(f), v(g))
        if v(f) != v(g):
            assert v(f + g) == min(v(f), v(g))


@settings(max_examples=40, deadline=None)
@given(polys, coefs)
def test_one_dimensional_leaves(f, c):
    val = TermValuation(3, highest=True)
    g = f * c + MultiPoly.constant(3, 0)
    assert val.value(g) == val.value(f)
    h = g - f * (val.leading_coefficient(g) / val.leading_coefficient(f))
    assert not h or val.value(h) > val.value(g)


def test_axiom_reports():
    rng = random.Random(7)
    sample = [random_poly(rng, 2) for _ in range(50)]
    for val in (TermValuation(2, True), TermValuation(2, False)):
        rep = check_prevaluation_axioms(sample, val)
        assert rep.violations == 0
        assert rep.pairs_checked == 50 * 49 // 2
    rep = check_prevaluation_axioms(sample, TermValuation(2, False), scalars=(Fraction(1),))
    assert rep.scalar == 0


def test_negative_control_flagged():
    rng = random.Random(7)
    sample = [random_poly(rng, 2) for _ in range(50)]
    sample.append(x)
    sample.append(MultiPoly.constant(2, 1) - x)
    rep = check_prevaluation_axioms(sample, max_degree_function, multiplicative=False)
    assert rep.violations > 0


def test_graded_extension_and_order():
    v = TermValuation(2, False)
    f1, f2 = x, x * y
    assert graded_extension([(1, f1, v(f1))]) == GradedValue(1, ValVector(v(f1)))
    got = graded_extension([(1, f1, v(f1)), (2, f2, v(f2)), (3, MultiPoly(2), (0, 0))])
    assert got.degree == 2
    assert GradedValue(1, (5, 5)) > GradedValue(2, (0, 0))
    assert GradedValue(2, (1, 0)) > GradedValue(2, (0, 9))
    a, b = GradedValue(1, (1, 0)), GradedValue(2, (0, 1))
    assert (a + b) == GradedValue(3, (1, 1))
    with pytest.raises(ZeroValuationError):
        graded_extension([(1, MultiPoly(2), (0, 0))])


def test_graded_additivity_on_products():
    v = TermValuation(2, False)
    # graded elements as {degree: piece}
    f = {1: x + y, 2: x * y}
    g = {0: MultiPoly.constant(2, 3), 1: y}
    prod = {}
    for a, p in f.items():
        for b, q in g.items():
            prod[a + b] = prod.get(a + b, MultiPoly(2)) + p * q

    def ext(h):
        return graded_extension([(k, p, v(p) if p else (0, 0)) for k, p in h.items()])

    assert ext(prod) == ext(f) + ext(g)


def test_leaf_reduce_examples():
    lowest = TermValuation(2, highest=False)
    vecs, vals = leaf_reduce_polys([x, y], lowest)
    assert vecs == [x, y]
    # lowest term with x > y already separates x and x + y: (1,0) vs (0,1)
    vecs, vals = leaf_reduce_polys([x, x + y], lowest)
    assert vecs == [x, x + y] and vals == [(1, 0), (0, 1)]
    for val in (TermValuation(2, highest=True), TermValuation(2, highest=False, order=[1, 0])):
        vecs, vals = leaf_reduce_polys([x, x + y], val)
        assert vecs[1] == y
    assert len(set(vals)) == 2
    with pytest.raises(LeafSeparationError):
        leaf_reduce_polys([x, x * 2], lowest)


def test_leaf_reduce_keeps_size():
    rng = random.Random(3)
    val = TermValuation(3, True)
    polys = [random_poly(rng, 3, max_exp=2) for _ in range(6)]
    vecs, vals = leaf_reduce(polys, val.leaf)
    assert len(vecs) == len(polys) == len(set(vals))


def test_multipoly_ops_and_json():
    f = x ** 2 * Fraction(1, 2) - y + 3
    assert MultiPoly.from_json(f.to_json()) == f
    assert f.derivative(0, 2) == MultiPoly.constant(2, 1)
    assert f.restrict_zero(0) == 3 - y
    assert f.evaluate((2, 1)) == 4
    assert f.total_degree() == 2 and f.degree_in(1) == 1
    assert (f - f) == MultiPoly(2)
    assert f.to_json()["terms"][0] == {"exp": [2, 0], "coef": "1/2"}
