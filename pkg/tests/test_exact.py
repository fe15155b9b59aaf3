from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_standard
from tcinv.exact import (
    InterpolationError,
    LimitClass,
    RationalFunction,
    UniPoly,
    expansion_at_infinity,
    interpolate_poly,
    limit_at_infinity,
)

L = UniPoly.x()


def test_interpolate_constant():
    assert interpolate_poly([(0, 5), (1, 5), (2, 5)], 2) == UniPoly([5])


def test_interpolate_identity():
    assert interpolate_poly([(0, 0), (1, 1), (2, 2)], 1) == L


def test_interpolate_cubic_hilbert_function():
    # brute-force count of standard monomials of the cuspidal central fibre
    lead = [(0, 2, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 3, 0)]
    pts = [(m, count_standard(lead, 4, m)[0]) for m in range(1, 5)]
    assert pts == [(1, 4), (2, 7), (3, 10), (4, 13)]
    assert interpolate_poly(pts, 1) == UniPoly([1, 3])


def test_interpolate_errors():
    with pytest.raises(InterpolationError, match="duplicate"):
        interpolate_poly([(0, 1), (0, 2)], 1)
    with pytest.raises(InterpolationError) as exc:
        interpolate_poly([(0, 0), (1, 1), (2, 4)], 1)
    assert exc.value.point == (2, 4)
    with pytest.raises(InterpolationError):
        interpolate_poly([(0, 1)], 2)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.integers(0, 3))
def test_interpolation_recovers_polynomial(coeffs, extra):
    p = UniPoly(coeffs)
    d = max(p.degree, 0)
    pts = [(x, p(x)) for x in range(-2, d + extra)]
    assert interpolate_poly(pts, d) == p


def test_limits():
    assert limit_at_infinity(RationalFunction(1, L)) == LimitClass.finite(0)
    assert limit_at_infinity(-L) == LimitClass("minus_infinity")
    s = RationalFunction(UniPoly([0, 0, -2]), UniPoly([1, 1]))
    assert limit_at_infinity(s) == LimitClass("minus_infinity")
    assert limit_at_infinity(RationalFunction(UniPoly([1, 3]), UniPoly([5, 2]))) == LimitClass.finite(F(3, 2))


def test_expansion_examples():
    assert expansion_at_infinity(L * L + 3, 2) == [(2, 1), (0, 3)]
    f = RationalFunction(-1, UniPoly([1, 3]))
    assert expansion_at_infinity(f, 2) == [(-1, F(-1, 3)), (-2, F(1, 9))]
    assert expansion_at_infinity(RationalFunction(0), 3) == []


def test_expansion_terminates_on_sparse_polynomials():
    assert expansion_at_infinity(L**5 + 1, 2) == [(5, 1), (0, 1)]
    assert expansion_at_infinity(L**5 + 1, 7) == [(5, 1), (0, 1)]


def _laurent_times(terms, den: UniPoly):
    """Multiply sum c l^e by den; return {exponent: coefficient}."""
    out = {}
    for e, c in terms:
        for i, d in enumerate(den.coeffs):
            out[e + i] = out.get(e + i, 0) + c * d
    return out


small = st.integers(-5, 5)


@st.composite
def rational_functions(draw):
    num = draw(st.lists(small, min_size=1, max_size=5))
    den = draw(st.lists(small, min_size=1, max_size=5))
    den[-1] = draw(st.integers(1, 5)) * draw(st.sampled_from([1, -1]))
    num[-1] = draw(st.integers(1, 5)) * draw(st.sampled_from([1, -1]))
    return RationalFunction(UniPoly(num), UniPoly(den))


@settings(max_examples=150)
@given(rational_functions(), st.integers(1, 6))
def test_expansion_multiply_back(f, count):
    terms = expansion_at_infinity(f, count)
    assert terms
    prod = _laurent_times(terms, f.den)
    diff = {e: prod.get(e, 0) - f.num.coeff(e) if e >= 0 else prod.get(e, 0) for e in set(prod) | set(range(f.num.degree + 1))}
    nonzero = [e for e, c in diff.items() if c != 0]
    lowest_kept = terms[-1][0] + f.den.degree
    assert all(e < lowest_kept for e in nonzero)


@settings(max_examples=150)
@given(rational_functions())
def test_limit_matches_evaluation(f):
    lim = limit_at_infinity(f)
    a, b = f(10**3), f(10**6)
    if lim.kind == "finite":
        assert abs(b - lim.value) <= abs(a - lim.value)
    elif lim.kind == "plus_infinity":
        assert b > 0 and b > a
    else:
        assert b < 0 and b < a


def test_rational_function_normal_form():
    f = RationalFunction(UniPoly([0, -6]), UniPoly([1, 3]))
    g = RationalFunction(UniPoly([0, -12, -6]), UniPoly([2, 7, 3]))  # multiplied by (l+2)
    assert f == g
    assert f.den == UniPoly([F(1, 3), 1])
    assert f.format() == "-6*l/(3*l + 1)"
    assert (f * RationalFunction(UniPoly([1, 3]), L)) == RationalFunction(-6)


def test_unipoly_arithmetic():
    p = UniPoly([1, 2, 1])
    q, r = divmod(p, UniPoly([1, 1]))
    assert q == UniPoly([1, 1]) and r.is_zero()
    assert p.scale_argument(2) == UniPoly([1, 4, 4])
    assert p(F(1, 2)) == F(9, 4)
    assert UniPoly([0, 0, 0]).degree == -1
