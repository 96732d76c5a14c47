"""Acceptance gate: every criterion at its stated tolerance, one printed
pass/fail line each.

All comparisons are exact (zero tolerance); the runtime limits are the
stated budgets.  Run with `pytest tests/test_acceptance.py -v -s` to see
the per-criterion lines.
"""

import time

from g2adjoint.g2model import verify_iwasawa, verify_lie_models
from g2adjoint.lfunc import (
    inner_integral_closed,
    inner_integral_shell,
    nonsplit_identity_check,
    poincare_oracle,
    proposition_check,
    split_identity_check,
    verify_lfactor,
)
from g2adjoint.orbits import double_coset_check, is_square_mod


def _report(label, ok, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {label}: {status} ({elapsed:.2f}s, budget {budget}s)")


def test_criterion_1_lie_models():
    start = time.time()
    report = verify_lie_models()
    names = {c.name for c in report.checks if c.status == "pass"}
    ok = report.passed and {
        "g2-so8-condition",
        "g2-derivation-of-trilinear-form",
        "g2-bracket-closure-rank-14",
        "su21-equals-constrained-g2",
        "v-rho-annihilator-is-rank-6-system",
    } <= names
    elapsed = time.time() - start
    _report("1 lie-model suite (exact)", ok, elapsed, 10)
    assert ok, report.to_text()
    assert elapsed < 10


def test_criterion_2_iwasawa():
    start = time.time()
    report = verify_iwasawa()
    names = {c.name for c in report.checks if c.status == "pass"}
    ok = report.passed and {
        "case1-product-is-torus-matrix",
        "case2-product-is-torus-matrix",
        "w2-conjugates-case1-u-into-P",
        "w2-conjugates-commutator-into-P",
    } <= names
    elapsed = time.time() - start
    _report("2 iwasawa suite (exact, N = a^2 - b^2 rho)", ok, elapsed, 10)
    assert ok, report.to_text()
    assert elapsed < 10


def test_criterion_3_poincare_lemma():
    start = time.time()
    report = poincare_oracle(10)
    elapsed = time.time() - start
    _report("3 poincare lemma, Sym^k vs closed form, k <= 10", report.passed,
            elapsed, 60)
    assert report.passed, report.to_text()
    assert elapsed < 60


def test_criterion_4_identity_suite():
    start = time.time()
    split = split_identity_check(12)
    nonsplit = nonsplit_identity_check(12)
    ok = split.passed and nonsplit.passed
    elapsed = time.time() - start
    _report("4 identity suite to total degree 12", ok, elapsed, 30)
    assert ok, split.to_text() + "\n" + nonsplit.to_text()
    assert elapsed < 30


def test_criterion_5_lfactor_suite():
    start = time.time()
    report = verify_lfactor("nonsplit")
    names = {c.name for c in report.checks if c.status == "pass"}
    ok = report.passed and {
        "determinant-equals-five-factor-product",
        "frobenius-eigenspace-dimensions",
        "frobenius-eigenvalue-lists",
        "frobenius-conjugation-rule",
    } <= names
    elapsed = time.time() - start
    _report("5 L-factor suite (symbolic mu, symbolic g)", ok, elapsed, 10)
    assert ok, report.to_text()
    assert elapsed < 10


def test_criterion_6_inner_integral():
    start = time.time()
    ok = all(
        inner_integral_shell(vc) == inner_integral_closed(vc)
        for vc in range(-3, 9)
    )
    elapsed = time.time() - start
    _report("6 inner integral, shells vs closed form on [-3, 8]", ok,
            elapsed, 5)
    assert ok
    assert elapsed < 5


def test_criterion_7_unramified_proposition():
    start = time.time()
    ok = True
    details = []
    for case in ("split", "nonsplit"):
        report = proposition_check(case, 12)
        ok = ok and report.passed
        details.append(report.to_text())
        winning = [
            c for c in report.checks
            if c.name.startswith("integral-equals-L-over-zeta-")
        ]
        ok = ok and winning and "{3s, 6s-2, 9s-3}" in winning[0].name
    elapsed = time.time() - start
    _report("7 unramified identity, both cases, degree 12, unique zeta "
            "triple {3s, 6s-2, 9s-3}", ok, elapsed, 120)
    assert ok, "\n".join(details)
    assert elapsed < 120


def test_criterion_8_double_coset_analogue():
    combos = [(5, 2), (5, 4), (7, 3), (7, 2)]
    assert {is_square_mod(r, q) for q, r in combos[:2]} == {True, False}
    assert {is_square_mod(r, q) for q, r in combos[2:]} == {True, False}
    ok = True
    for q, rho in combos:
        start = time.time()
        report = double_coset_check(q, rho)
        elapsed = time.time() - start
        names = {c.name for c in report.checks if c.status == "pass"}
        good = report.passed and {
            "orbit-inside-norm-sphere",
            "exactly-two-parabolic-orbits",
            "orbit-size-closed-form",
        } <= names
        _report(f"8 double-coset analogue q={q} rho={rho}", good, elapsed, 60)
        assert good, report.to_text()
        assert elapsed < 60
        ok = ok and good
    assert ok
