"""One pass/fail line per acceptance criterion; run with ``pytest -s`` to see them inline."""

import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial

import pytest

from conftest import CONIC, CUBIC
from oracles import count_standard, quotient_dimension, random_homogeneous_gens
from tcinv.config import load_example
from tcinv.degeneration import build_configuration, structural_checks
from tcinv.exact import RationalFunction, UniPoly
from tcinv.groebner import Ideal, buchberger, same_ideal
from tcinv.hilbert import WeightedHilbertSeries
from tcinv.invariants import chow_weight_sweep, norm_bounds_hold
from tcinv.polyring import GREVLEX, LEX, MultiPoly, parse_polynomial
from tcinv.report import render_csv, render_json, run_analysis

L = UniPoly.x()


@pytest.fixture(scope="module")
def cubic_run():
    t0 = time.perf_counter()
    analysis = run_analysis(load_example("lixu-cubic"), lmax=12)
    return analysis, time.perf_counter() - t0


@pytest.fixture(scope="module")
def conic_run():
    return run_analysis(load_example("conic-double-line"), lmax=12)


def test_criterion_1_refined_sequence(cubic_run, acceptance_record):
    analysis, elapsed = cubic_run
    inv = analysis.invariants
    n = analysis.config.n
    exact = all(p.s == -p.ell for p in inv.profiles) and len(inv.profiles) == 12
    bound = all(p.s <= -p.ell * Fraction(factorial(n + 1), 2) for p in inv.profiles)
    symbolic = inv.refined.closed_form == RationalFunction(-L)
    ok = exact and bound and symbolic and str(inv.f1) == "-infinity" and elapsed < 60
    acceptance_record(1, ok, f"s_l = -l for l=1..12, s(l) = {inv.refined.closed_form.format()}, "
                             f"F1 = {inv.f1}, runtime {elapsed:.2f}s")
    assert ok


def test_criterion_2_vanishing_df(cubic_run, acceptance_record):
    inv = cubic_run[0].invariants
    ok = inv.df1 == 0 and inv.futaki.donaldson_coefficient == 0
    acceptance_record(2, ok, f"F1bar = {inv.df1}, Donaldson l^-1 coefficient = {inv.futaki.donaldson_coefficient}")
    assert ok


def test_criterion_3_chow_anchor(cubic_run, acceptance_record):
    analysis = cubic_run[0]
    model = analysis.invariants.model
    q_fn = analysis.invariants.q_function
    n, a_n = model.n, model.a_n
    values = []
    ok = True
    for ell in range(1, 7):
        gamma = Fraction(1, 3 * ell + 1)
        q = chow_weight_sweep(analysis.config, model, ell).q
        values.append(q)
        ok &= q == factorial(n + 1) * (-gamma * a_n * ell) == Fraction(-6 * ell, 3 * ell + 1) == q_fn(ell)
    acceptance_record(3, ok, "q_1..q_6 = " + ", ".join(str(v) for v in values))
    assert ok


def test_criterion_4_central_fiber(cubic_run, acceptance_record):
    cfg = cubic_run[0].config
    names = cfg.coordinates
    target = Ideal(names, [parse_polynomial(t, names) for t in ("Z1^2", "Z1*Z2", "Z1*Z3", "Z2^3 - Z0*Z3^2")])
    checks = structural_checks(cfg, 12)
    J = sorted(checks.reduced_fiber_detail["J"])
    flat = all(cfg.fiber_series.hilbert_function(ell) == 3 * ell + 1 for ell in range(1, 13))
    ok = same_ideal(cfg.central_fiber, target) and checks.reduced_fiber == "PASS" \
        and J == ["Z1", "Z2^3 - Z0*Z3^2"] and flat and checks.flatness == "PASS"
    acceptance_record(4, ok, f"fibre ({', '.join(cfg.central_fiber.format_gens())}), "
                             f"reduced {checks.reduced_fiber} with J = ({', '.join(J)}), N_l = 3l+1 for l<=12")
    assert ok


def test_criterion_5_norm_identities(cubic_run, conic_run, acceptance_record):
    ok = True
    count = 0
    for analysis in (cubic_run[0], conic_run):
        for p in analysis.invariants.profiles:
            ok &= p.normalized_weight_sum == 0 and norm_bounds_hold(p)
            count += 1
    acceptance_record(5, ok, f"sum of b' = 0 and gamma n <= ||psi|| <= 2 gamma N on {count} degrees")
    assert ok


def test_criterion_6_contrast(conic_run, acceptance_record):
    inv, checks = conic_run.invariants, conic_run.checks
    ok = inv.df1 == Fraction(-1, 2) and str(inv.f1) == "-infinity" \
        and checks.growth_21 == "FLAG" and checks.growth_degree == conic_run.config.n
    acceptance_record(6, ok, f"F1bar = {inv.df1}, F1 = {inv.f1}, growth {checks.growth_21} "
                             f"(degree {checks.growth_degree})")
    assert ok


def _random_monomial_ideal(rng):
    nvars = rng.randint(2, 4)
    gens = []
    for _ in range(rng.randint(1, 4)):
        m = tuple(rng.randint(0, 3) for _ in range(nvars))
        if any(m):
            gens.append(m)
    weights = tuple(rng.randint(0, 2) for _ in range(nvars))
    return nvars, gens, weights


def test_criterion_7_oracles(acceptance_record):
    ok = True
    # built-in examples
    for spec in (CUBIC, CONIC):
        cfg = build_configuration(**spec)
        lead, nv = cfg.fiber_leading_monomials, len(cfg.coordinates)
        for ell in range(1, 11):
            cnt, hist = count_standard(lead, nv, ell, cfg.weights.u)
            ok &= cfg.fiber_series.hilbert_function(ell) == cnt
            ok &= cfg.fiber_series.weight_sum(ell) == sum(w * k for w, k in hist.items())
    # random monomial ideals
    rng = random.Random(2024)
    for _ in range(20):
        nv, gens, weights = _random_monomial_ideal(rng)
        s = WeightedHilbertSeries(gens, weights)
        for ell in range(0, 11):
            cnt, hist = count_standard(gens, nv, ell, weights)
            ok &= s.hilbert_function(ell) == cnt
            ok &= s.weight_sum(ell) == sum(w * k for w, k in hist.items())
    # random homogeneous ideals against linear algebra
    rng = random.Random(7)
    names = ["x0", "x1", "x2", "x3"]
    for _ in range(10):
        gens = random_homogeneous_gens(rng, 4, rng.randint(2, 3), max_degree=3)
        gb = buchberger(Ideal(names, [MultiPoly(4, g) for g in gens]), GREVLEX)
        s = WeightedHilbertSeries(gb.leading_monomials, (0, 0, 0, 0))
        for d in range(1, 9):
            ok &= s.hilbert_function(d) == quotient_dimension(gens, 4, d)
    acceptance_record(7, ok, "series = enumeration (2 examples + 20 monomial ideals, l<=10); "
                             "Groebner dimension = rank oracle (10 ideals, d<=8)")
    assert ok


def test_criterion_8_determinism(tmp_path, acceptance_record):
    doc = load_example("lixu-cubic")
    a, b = run_analysis(doc, lmax=8), run_analysis(doc, lmax=8)
    same_reports = render_json(a) == render_json(b) and render_csv(a) == render_csv(b)
    cmd = [sys.executable, "-m", "tcinv", "example", "--name", "conic-double-line", "--format", "json"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    same_cli = outs[0] == outs[1]

    names = CUBIC["coordinates"]
    base = [parse_polynomial(t, names) for t in CUBIC["ideal_gens"]]
    rng = random.Random(3)
    invariant = True
    for order in (GREVLEX, LEX):
        ref = buchberger(Ideal(names, base), order).generators
        for perm in itertools.permutations(base):
            scaled = [g.scale(Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7]))) for g in perm]
            invariant &= buchberger(Ideal(names, scaled), order).generators == ref
    ok = same_reports and same_cli and invariant
    acceptance_record(8, ok, f"byte-identical reports {same_reports and same_cli}, "
                             f"basis invariant under permutation/rescaling {invariant}")
    assert ok
