from fractions import Fraction
from math import factorial

import pytest

from conftest import CONIC, CUBIC
from tcinv.degeneration import build_configuration, degree_profile, stable_polynomials
from tcinv.exact import RationalFunction, UniPoly
from tcinv.invariants import (
    InvariantError,
    chow_weight_sweep,
    chow_weight_symbolic,
    classify_F1,
    compute_invariants,
    donaldson_diagnostic,
    donaldson_futaki,
    eventual_threshold,
    refined_sequence,
)

L = UniPoly.x()


def analyse(cfg, lmax=12):
    model = stable_polynomials(cfg)
    profiles = [degree_profile(cfg, ell) for ell in range(1, lmax + 1)]
    return compute_invariants(cfg, model, profiles)


@pytest.mark.parametrize("ell, q", [(1, Fraction(-3, 2)), (2, Fraction(-12, 7))])
def test_sweep_anchor_values(cubic, ell, q):
    fit = chow_weight_sweep(cubic, stable_polynomials(cubic), ell)
    assert fit.q == q


def test_sweep_matches_hand_formula(cubic):
    # q_l = -(n+1)! gamma_l a_n l^n with gamma_l = 1/(3l+1), a_n = 3, n = 1
    model = stable_polynomials(cubic)
    for ell in range(1, 7):
        assert chow_weight_sweep(cubic, model, ell).q == -2 * Fraction(1, 3 * ell + 1) * 3 * ell


def test_symbolic_chow_weight(cubic, conic):
    assert chow_weight_symbolic(stable_polynomials(cubic)) == RationalFunction(-6 * L, 3 * L + 1)
    assert chow_weight_symbolic(stable_polynomials(conic)) == RationalFunction(-4 * L * L, 2 * L + 1)


@pytest.mark.parametrize("name", ["cubic", "conic"])
def test_sweep_agrees_with_symbolic(name, request):
    cfg = request.getfixturevalue(name)
    model = stable_polynomials(cfg)
    q = chow_weight_symbolic(model)
    for ell in range(1, 13):
        assert chow_weight_sweep(cfg, model, ell).q == q(ell)


def test_sweep_kmax_guard(cubic):
    with pytest.raises(ValueError):
        chow_weight_sweep(cubic, stable_polynomials(cubic), 1, kmax=2)


def test_futaki_values(cubic, conic):
    m = stable_polynomials(cubic)
    f = donaldson_futaki(m, chow_weight_symbolic(m))
    assert f.df1 == 0 and f.donaldson_coefficient == 0
    assert f.higher == (Fraction(-1, 3), Fraction(1, 9))
    m = stable_polynomials(conic)
    f = donaldson_futaki(m, chow_weight_symbolic(m))
    assert f.df1 == Fraction(-1, 2) == f.donaldson_coefficient


def test_zero_chow_weight():
    m = stable_polynomials(build_configuration(**CUBIC))
    f = donaldson_futaki(m, RationalFunction(UniPoly([0])))
    assert f.df1 == 0 and f.higher == (0, 0)


def test_donaldson_diagnostic_zero_weight_sum():
    from dataclasses import replace

    m = replace(stable_polynomials(build_configuration(**CUBIC)), B_poly=UniPoly([0]))
    assert donaldson_diagnostic(m) == 0
    assert chow_weight_symbolic(m) == RationalFunction(UniPoly([0]))


def test_cubic_refined_sequence(cubic):
    inv = analyse(cubic)
    assert inv.refined.closed_form == RationalFunction(-L)
    assert inv.refined.valid_from == 1
    for ell, s in inv.refined.values.items():
        assert s == -ell
        assert s <= -ell * factorial(cubic.n + 1) / 2
    assert str(inv.f1) == "-infinity" and inv.f1.method == "exact"


def test_conic_refined_sequence(conic):
    inv = analyse(conic)
    assert inv.refined.closed_form == RationalFunction(-2 * L * L, L + 1)
    assert inv.df1 == Fraction(-1, 2)
    assert str(inv.f1) == "-infinity"


@pytest.mark.parametrize("factor", [2, 3])
def test_weight_rescaling_keeps_divergence(factor):
    inv = analyse(build_configuration(**dict(CUBIC, weights={"Z1": factor})), lmax=6)
    assert inv.df1 == 0
    assert inv.refined.closed_form == RationalFunction(-L)
    assert str(inv.f1) == "-infinity"


def test_trivial_action_rejected(cubic):
    model = stable_polynomials(cubic)
    profiles = [degree_profile(cubic, ell) for ell in range(1, 4)]
    for p in profiles:
        p.norm = Fraction(0)
    with pytest.raises(InvariantError):
        refined_sequence(cubic, model, chow_weight_symbolic(model), profiles)


def test_classify_exact():
    assert str(classify_F1(RationalFunction(UniPoly([5]), UniPoly([1, 1])))) == "0"
    assert str(classify_F1(Fraction(7, 2))) == "7/2"
    assert str(classify_F1(RationalFunction(L * L, L + 1))) == "+infinity"


def test_classify_heuristic():
    c = classify_F1({ell: -ell for ell in range(1, 9)})
    assert str(c) == "-infinity" and c.method == "heuristic"
    assert str(classify_F1({ell: Fraction(2) for ell in range(1, 9)})) == "2"
    assert str(classify_F1({ell: (-1) ** ell for ell in range(1, 9)})) == "inconclusive"
    with pytest.raises(ValueError):
        classify_F1({1: 1, 2: 2})


def test_eventual_threshold():
    # l^2 - 5l + 6 = (l-2)(l-3) is >= 0 for all integers, and > 0 from l = 4
    p = UniPoly([6, -5, 1])
    assert eventual_threshold([p], [], 1) == 1
    assert eventual_threshold([], [p], 1) == 4
    assert eventual_threshold([UniPoly([0, -1])], [], 1) is None
