"""End-to-end analysis of a configuration document and its renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .config import ConfigDocument
from .degeneration import (
    StructuralReport,
    TestConfiguration,
    build_configuration,
    degree_profile,
    stable_polynomials,
    structural_checks,
)
from .exact import format_rational
from .invariants import InvariantReport, compute_invariants
from .polyring import format_poly

DEFAULT_LMAX = 12
DEFAULT_CHECK_CAP = 12
CSV_HEADER = ("l", "N", "n", "B", "gamma", "norm", "q", "s")

CONVENTIONS = {
    "torus_weights": (
        "the torus acts on a standard monomial of weighted degree b by t^(-b); "
        "reported weights are the magnitudes b >= 0"
    ),
    "central_fiber": "ideal of initial forms of maximal weighted degree",
    "chow_weight": "(n+1)! times the k^(n+1) coefficient of B_(lk) - k*gamma_l*N_(lk)",
    "refined_sequence": "s_l = l*q_l/norm_l",
}


@dataclass
class Analysis:
    doc: ConfigDocument
    config: TestConfiguration
    checks: StructuralReport
    invariants: InvariantReport
    lmax: int


def build_from_document(doc: ConfigDocument, check_cap: int | None = None) -> TestConfiguration:
    cap = check_cap or doc.caps.get("check_cap", DEFAULT_CHECK_CAP)
    return build_configuration(doc.coordinates, doc.ideal, doc.W, doc.weights, doc.dimension, flatness_cap=cap)


def run_analysis(doc: ConfigDocument, lmax: int | None = None, kmax: int | None = None,
                 check_cap: int | None = None) -> Analysis:
    lmax = lmax or doc.caps.get("lmax", DEFAULT_LMAX)
    kmax = kmax or doc.caps.get("kmax")
    cap = check_cap or doc.caps.get("check_cap", DEFAULT_CHECK_CAP)
    config = build_from_document(doc, cap)
    model = stable_polynomials(config)
    checks = structural_checks(config, cap, model)
    profiles = [degree_profile(config, ell) for ell in range(1, lmax + 1)]
    inv = compute_invariants(config, model, profiles, kmax)
    return Analysis(doc, config, checks, inv, lmax)


def _r(x) -> str:
    return "" if x is None else format_rational(x)


def report_rows(analysis: Analysis) -> list:
    rows = []
    for p in analysis.invariants.profiles:
        rows.append({
            "l": str(p.ell),
            "N": str(p.N),
            "n": str(p.n),
            "B": str(p.B),
            "gamma": _r(p.gamma),
            "norm": _r(p.norm),
            "q": _r(p.q),
            "s": _r(p.s),
        })
    return rows


def render_csv(analysis: Analysis) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(report_rows(analysis))
    return buf.getvalue()


def report_document(analysis: Analysis) -> dict:
    cfg, inv, model = analysis.config, analysis.invariants, analysis.invariants.model
    checks = analysis.checks.as_dict()
    non_iso = checks.pop("non_isomorphism")
    refined = inv.refined
    return {
        "input": {
            "coordinates": list(cfg.coordinates),
            "ideal": [format_poly(g, cfg.coordinates) for g in cfg.ideal.gens],
            "W": list(cfg.w_coords),
            "weights": {cfg.coordinates[i]: cfg.weights.u[i] for i in cfg.weights.w_prime_indices},
            "dimension": cfg.n,
        },
        "conventions": CONVENTIONS,
        "central_fiber": cfg.central_fiber.format_gens(),
        "model": {
            "N": model.N_poly.format(),
            "B": model.B_poly.format(),
            "n_W": model.n_poly.format(),
            "m0": model.m0,
            "a_n": _r(model.a_n),
            "intersection_number": _r(model.intersection_number),
            "B_degree_within_n": model.b_degree_ok,
        },
        "rows": report_rows(analysis),
        "checks": checks,
        "invariants": {
            "DF1": _r(inv.df1),
            "expansion_coefficients": [_r(c) for c in inv.futaki.higher],
            "donaldson_check": _r(inv.futaki.donaldson_coefficient),
            "q_closed_form": inv.q_function.format(),
            "s_closed_form": None if refined.closed_form is None else refined.closed_form.format(),
            "s_valid_from": refined.valid_from,
            "norm_closed_form": None if refined.norm_closed_form is None else refined.norm_closed_form.format(),
            "F1_class": str(inv.f1),
            "F1_method": inv.f1.method,
        },
        "diagnostics": {
            "non_isomorphism": non_iso,
            "image_leading_coefficient": _r(cfg.diagnostics.get("image_leading_coefficient")),
            "variety_leading_coefficient": _r(cfg.diagnostics.get("variety_leading_coefficient")),
        },
    }


def render_json(analysis: Analysis) -> str:
    return json.dumps(report_document(analysis), indent=2, ensure_ascii=False) + "\n"


def _dec(x) -> str:
    return "" if x is None else f"{float(x):.6g}"


def render_summary(analysis: Analysis) -> str:
    """Human-readable summary; decimals are for reading only."""
    inv, checks = analysis.invariants, analysis.checks
    lines = [
        f"configuration: {analysis.doc.source}",
        f"central fibre: ({', '.join(analysis.config.central_fiber.format_gens())})",
        f"N(l) = {inv.model.N_poly.format()}, B(l) = {inv.model.B_poly.format()}, "
        f"n(l) = {inv.model.n_poly.format()}, from l = {inv.model.m0}",
        f"reduced fibre (bounded certification, cap {checks.flatness_checked_up_to}): {checks.reduced_fiber}",
        f"growth of N_l - n_l: degree {checks.growth_degree} (bound {checks.growth_bound}): {checks.growth_21}",
        f"flatness up to {checks.flatness_checked_up_to}: {checks.flatness}",
        f"non-isomorphism of the W-projection: {checks.non_isomorphism}",
        f"q(l) = {inv.q_function.format()}",
    ]
    if inv.refined.closed_form is not None:
        lines.append(f"s(l) = {inv.refined.closed_form.format()} for l >= {inv.refined.valid_from}")
    else:
        lines.append(f"s(l): no closed form ({inv.refined.reason})")
    lines.append(f"F1bar = {format_rational(inv.df1)}; F1 = {inv.f1} ({inv.f1.method})")
    lines.append("")
    lines.append(f"{'l':>3} {'N':>6} {'n':>6} {'B':>6} {'gamma':>10} {'norm':>10} {'q':>10} {'s':>10}")
    for p in inv.profiles:
        lines.append(
            f"{p.ell:>3} {p.N:>6} {p.n:>6} {p.B:>6} {_dec(p.gamma):>10} {_dec(p.norm):>10} "
            f"{_dec(p.q):>10} {_dec(p.s):>10}"
        )
    return "\n".join(lines) + "\n"


def render_checks(config: TestConfiguration, checks: StructuralReport) -> str:
    d = checks.as_dict()
    rf = d["reduced_fiber"]
    lines = [
        f"central fibre: ({', '.join(config.central_fiber.format_gens())})",
        f"reduced fibre: {rf['status']} (bounded certification, cap {rf['cap']})",
        f"  J = ({', '.join(rf['J'])})",
    ]
    if "powers" in rf:
        for g, m in rf["powers"].items():
            lines.append(f"  ({g})^{m} lies in the fibre ideal")
    if "reason" in rf:
        lines.append(f"  {rf['reason']}")
    g = d["growth_21"]
    lines.append(f"growth: N_l - n_l = {g['excess_polynomial']}, degree {g['degree']} vs bound {g['bound']}: {g['status']}")
    lines.append(f"flatness up to {d['flatness']['checked_up_to']}: {d['flatness']['status']}")
    lines.append(f"non-isomorphism: {d['non_isomorphism']}")
    return "\n".join(lines) + "\n"
