import math

import numpy as np
import pytest

import hllxw


def test_hllx_omega_zero_matches_hllx():
    nu = np.linspace(-0.4, 0.9, 27)
    a = hllxw.dissipation("hllx", nu, -0.4, 0.9)
    b = hllxw.dissipation("hllx-omega", nu, -0.4, 0.9, omega=0.0)
    assert np.max(np.abs(a - b)) < 1e-13


def test_beta_blends_alpha():
    alpha = hllxw.hllx_coeffs(-0.3, 0.8)["alpha"]
    beta = hllxw.beta_coeffs(-0.3, 0.8, 0.4)["beta"]
    assert beta == pytest.approx(0.4 + 0.6 * alpha, abs=1e-14)


def test_region_check():
    assert hllxw.region_check("hll", -0.5, 0.9)["monotone"]
    lw = hllxw.region_check("lw", -0.5, 0.9)
    assert not lw["monotone"] and lw["l2_stable"] and lw["max_violation"] > 0


def test_modified_equation_and_utilde():
    d_up, d_lw = hllxw.modified_eq_coeffs(1.0, 0.01, 0.5)
    assert d_up == pytest.approx(0.0025)
    assert d_lw == pytest.approx(-1.25e-5)
    u = hllxw.utilde(np.array([-40.0, 40.0]), 400.0)
    assert u[0] == pytest.approx(math.erf(-1.0), abs=2e-3)
    assert u[1] == pytest.approx(math.erf(1.0), abs=2e-3)


def test_sod_run():
    assert "sod" in hllxw.case_names()
    cfg = hllxw.case_config("sod")
    assert cfg["n_cells"] == 200
    res = hllxw.run("sod", n_cells=100, scheme="hllx-omega", omega=0.3)
    rho = res["variables"]["rho"]
    assert rho.shape == (100,) and res["x"].shape == (100,)
    assert res["t"] == pytest.approx(cfg["t_end"])
    assert res["conservation_residual"] < 1e-10
    assert 0.125 - 1e-9 < rho.min() and rho.max() < 1.0 + 1e-9


def test_errors():
    with pytest.raises(ValueError, match="omega"):
        hllxw.run("sod", scheme="hllx-omega", omega=1.5)
    with pytest.raises(ValueError, match="unknown key"):
        hllxw.run("sod", bogus=1)
    with pytest.raises(RuntimeError, match="inadmissible"):
        hllxw.run("r13-riemann")
