import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_standard
from tcinv.exact import UniPoly
from tcinv.hilbert import WeightedHilbertSeries, minimalize, stable_polynomial

CUSP_LEAD = [(0, 2, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 3, 0)]
U = (0, 1, 0, 0)


def test_single_variable():
    s = WeightedHilbertSeries([], (0,))
    assert [s.hilbert_function(d) for d in range(6)] == [1] * 6
    assert s.hilbert_rational() == ([1], 1)


def test_cuspidal_fiber_series():
    s = WeightedHilbertSeries(CUSP_LEAD, U)
    for d in range(1, 11):
        n, hist = count_standard(CUSP_LEAD, 4, d, U)
        assert s.hilbert_function(d) == n == 3 * d + 1
        assert s.weight_sum(d) == sum(w * k for w, k in hist.items()) == 1
        assert s.zero_weight_count(d) == hist[0]
    polys = s.stable_polynomials()
    assert polys["N"] == (UniPoly([1, 3]), 1)
    assert polys["B"] == (UniPoly([1]), 1)


def test_principal_weighted_variable():
    s = WeightedHilbertSeries([(0, 1, 0)], (0, 1, 0))
    assert all(s.weight_sum(d) == 0 for d in range(8))
    assert [s.hilbert_function(d) for d in range(4)] == [1, 2, 3, 4]


def test_minimalize():
    assert minimalize([(1, 1), (1, 0), (2, 3), (0, 2)]) == ((0, 2), (1, 0))


def test_stable_polynomial_threshold():
    # 1 + q^3 over (1-q): coefficients 1,1,1,2,2,... -> constant 2 from degree 3
    poly, m0 = stable_polynomial([1, 0, 0, 1], 1)
    assert poly == UniPoly([2]) and m0 == 3
    poly, m0 = stable_polynomial([1, 0, 1], 0)
    assert poly.is_zero() and m0 == 3


monomial_ideals = st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=0, max_size=5)


@settings(max_examples=80, deadline=None)
@given(monomial_ideals, st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)))
def test_series_matches_enumeration(gens, weights):
    s = WeightedHilbertSeries(gens, weights)
    dist = s.weight_distribution(8)
    for d in range(9):
        n, hist = count_standard(gens, 3, d, weights)
        assert s.hilbert_function(d) == n
        assert dict(dist[d]) == hist
        assert s.weight_sum(d) == sum(w * k for w, k in hist.items())
        assert s.zero_weight_count(d) == hist.get(0, 0)


@pytest.mark.parametrize("seed", range(6))
def test_krull_dimension_of_random_ideals(seed):
    rng = random.Random(seed)
    gens = [tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(rng.randint(1, 4))]
    gens = [g for g in gens if any(g)]
    s = WeightedHilbertSeries(gens, (0, 0, 0, 0))
    h, e = s.hilbert_rational()
    poly, m0 = stable_polynomial(h, e)
    assert poly.degree == e - 1
    for d in range(m0, m0 + 5):
        assert poly(d) == count_standard(gens, 4, d)[0]
