"""Smoke tests for the python bindings."""

import math

import pytest

import darboux


def test_special_functions():
    assert darboux.normal_cdf(0.0) == pytest.approx(0.5)
    assert darboux.normal_cdf(1.0) == pytest.approx(0.8413447460685429, abs=1e-12)
    assert darboux.hermite_poly(4, 1.0) == pytest.approx(-20.0)
    assert darboux.qn_poly(0, 1.0) == pytest.approx(-10.0)  # -(4y^3 + 6y) at y=1


def test_catalog_roundtrip():
    assert darboux.catalog_ids() == ["e1", "e2", "e3", "e4", "e5"]
    m = darboux.make_example("e1")
    assert m.id == "e1"
    assert m.lam == pytest.approx(0.5)
    assert m.m_h == 0.0
    # symmetric, positive kernel
    assert m.p_ytilde(1.0, 0.5, -0.2) == pytest.approx(m.p_ytilde(1.0, -0.2, 0.5), abs=1e-12)
    assert m.p_ytilde(1.0, 0.5, -0.2) > 0
    assert m.tilde_c(0.7) == pytest.approx(math.tanh(0.7) ** 2, abs=1e-12)


def test_construction_matches_closed_form():
    m = darboux.make_example("e1")
    a = m.construction_density(1.0, 0.5, -0.2)
    b = m.p_ytilde(1.0, 0.5, -0.2)
    assert a == pytest.approx(b, abs=1e-5)


def test_elastic_model_requires_gamma():
    with pytest.raises(Exception):
        darboux.make_example("e3")
    m = darboux.make_example("e3", gamma=0.5)
    assert m.gamma == 0.5


def test_invariance_residual():
    m = darboux.make_example("e2")
    assert m.invariance_residual(0.7, 1.1) < 1e-8


def test_spectral():
    m = darboux.make_example("e5")
    assert m.spectral(0.8, 0.3, -0.4) == pytest.approx(m.p_ytilde(0.8, 0.3, -0.4), abs=1e-8)


def test_simulation_deterministic():
    m = darboux.make_example("e1")
    a = darboux.simulate_survival(m, 0.0, 0.5, paths=2000, seed=7)
    b = darboux.simulate_survival(m, 0.0, 0.5, paths=2000, seed=7)
    assert a == b
    assert 0.5 < a < 1.0


def test_run_suite():
    results = darboux.run_suite("appendixA")
    assert len(results) == 3
    assert all(r["passed"] for r in results)
    assert "invariance" in darboux.suite_names()
