"""Finite-field orbit tests: generator integrity, BFS closure, and the
two-parabolic-orbit partition."""

import numpy as np
import pytest

from g2adjoint.algebra import LaurentPoly
from g2adjoint.g2model import ROOT_PARAMS, one_param
from g2adjoint.orbits import (
    companion_rho,
    coroot_mod,
    double_coset_check,
    generator_invariants_hold,
    group_generators,
    is_square_mod,
    one_param_mod,
    orbit,
    sphere_count,
    verify_orbits,
)


def test_one_param_mod_matches_symbolic():
    p = 11
    for param in ROOT_PARAMS:
        g = one_param(param, LaurentPoly.constant(3))
        expected = np.array(
            [
                [
                    int(g[i, j].as_fraction()) % p
                    if isinstance(g[i, j], LaurentPoly)
                    else int(g[i, j]) % p
                    for j in range(8)
                ]
                for i in range(8)
            ],
            dtype=np.int64,
        )
        assert (one_param_mod(param, 3, p) == expected).all(), param


def test_coroot_elements_are_diagonal_mod_p():
    for q in (5, 7):
        for param in ("a", "b"):
            for t in range(2, q):
                h = coroot_mod(param, t, q)
                off = h - np.diag(np.diag(h))
                assert not off.any(), (q, param, t)


def test_generator_counts():
    gens = group_generators(5, "full")
    # 12 roots x 4 parameters + 2 coroots x 3 nontrivial parameters
    assert len(gens) == 12 * 4 + 2 * 3
    par = group_generators(5, "parabolic")
    assert len(par) == 7 * 4 + 2 * 3


def test_generators_preserve_structures():
    for q in (5, 7):
        assert generator_invariants_hold(group_generators(q, "full"), q)


def test_orbit_under_identity_is_singleton():
    eye = np.eye(8, dtype=np.int64)
    out = orbit(np.array([0, 0, 1, 0, 0, 2, 0, 0]), [eye], 5)
    assert out.shape == (1, 8)


def test_orbit_cap_is_enforced():
    gens = group_generators(5, "full")
    with pytest.raises(RuntimeError):
        orbit(np.array([0, 0, 1, 0, 0, 2, 0, 0]), gens, 5, cap=100)


def test_sphere_count_matches_closed_form():
    for q in (5, 7, 11):
        for rho in range(1, q):
            sign = 1 if is_square_mod(rho, q) else -1
            assert sphere_count(q, rho) == q ** 6 + sign * q ** 3, (q, rho)


def test_validation_errors():
    with pytest.raises(ValueError):
        double_coset_check(4, 1)
    with pytest.raises(ValueError):
        double_coset_check(3, 1)
    with pytest.raises(ValueError):
        double_coset_check(5, 10)
    with pytest.raises(ValueError):
        group_generators(5, "levi")


def test_companion_rho():
    assert is_square_mod(companion_rho(5, 2), 5)
    assert not is_square_mod(companion_rho(5, 4), 5)


def test_double_coset_q5_nonsquare():
    report = double_coset_check(5, 2)
    assert report.passed, report.to_text()
    sizes = [c for c in report.checks if c.name == "orbit-size-closed-form"]
    assert "15500" in sizes[0].detail


def test_double_coset_q5_square():
    report = double_coset_check(5, 4)
    assert report.passed, report.to_text()
    sizes = [c for c in report.checks if c.name == "orbit-size-closed-form"]
    assert "15750" in sizes[0].detail


def test_verify_orbits_runs_both_classes():
    report = verify_orbits(5, 2)
    assert report.passed
    names = [c.name for c in report.checks]
    assert any(n.startswith("rho=2-non-square/") for n in names)
    assert any(n.startswith("rho=4-square/") for n in names)
