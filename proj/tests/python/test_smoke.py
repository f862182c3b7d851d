import cmath
import math

import numpy as np
import pytest

import gratetd as gt


@pytest.fixture
def vacuum():
    return gt.build_layered([(0.5, 1.0, 1.0)], period=1.0, h1=0.5, h2=-0.5,
                            nx=16, nz=16)


def test_medium_roundtrip_and_validation(vacuum):
    assert gt.validate(vacuum) == []
    assert vacuum.eps.shape == (16, 16)
    assert vacuum.polarization == "te"

    swapped = gt.swap_polarization(vacuum)
    assert swapped.polarization == "tm"
    back = gt.swap_polarization(swapped)
    np.testing.assert_array_equal(back.eps, vacuum.eps)

    with pytest.raises(gt.GratetdError):
        gt.build_layered([(0.5, 0.5, 1.0)], period=1.0, h1=0.5, h2=-0.5,
                         nx=8, nz=8)


def test_mode_symbol_closed_form():
    # mode 0 at normal incidence: beta = -s
    b = gt.beta_symbol(1.0 + 0.0j, 0.0, 0.0, 1.0, 1.0)
    assert abs(b - (-1.0)) < 1e-14
    # every admissible sample sits strictly in the left half-plane
    for s2 in (-30.0, 0.5, 12.0):
        b = gt.beta_symbol(0.3 + s2 * 1j, 7.0, 0.4, 2.0, 1.5)
        assert b.real < 0


def test_pulse_and_load():
    p = gt.poly_exp_pulse(order=4, sigma=1.0, amplitude=1.0, delay=0.0,
                          theta=math.pi / 2)
    assert gt.pulse_eval(p, 0.0) == 0.0
    assert gt.pulse_eval(p, 4.0) == pytest.approx(4.0 ** 4 * math.exp(-4.0))
    fh = gt.pulse_laplace(p, 1.0 + 0.0j)
    assert fh == pytest.approx(24.0 / 2.0 ** 5)
    rho = gt.rho_hat_coefficient(p, 1.0 + 0.0j)
    assert rho == pytest.approx(2.0 * fh)


def test_solve_matches_incident_field(vacuum):
    p = gt.poly_exp_pulse(order=4, sigma=1.0, amplitude=1.0, delay=0.5,
                          theta=math.pi / 3)
    s = 0.4 + 5.0j
    u = gt.solve_rp(vacuum, p, s)
    assert u.shape == (17, 16)
    zs = np.linspace(-0.5, 0.5, 17)
    exact = np.array([gt.homogeneous_reference(p, s, z, 0.5) for z in zs])
    err = np.linalg.norm(u - exact[:, None]) / np.linalg.norm(exact) / math.sqrt(16)
    assert err < 5e-3


def test_dtn_is_diagonal_on_modes(vacuum):
    nx = 16
    x = np.arange(nx) / nx
    mode = np.exp(2j * np.pi * 3 * x)
    out = gt.apply_dtn(mode, 1, vacuum, 0.0, 0.7 + 2.0j)
    beta = gt.beta_symbol(0.7 + 2.0j, 2.0 * np.pi * 3, 0.0, 1.0, 1.0)
    np.testing.assert_allclose(out, beta * mode, rtol=1e-12, atol=1e-12)


def test_small_simulation_is_causal():
    medium = gt.build_layered([(0.5, 1.0, 1.0)], period=1.0, h1=0.5, h2=-0.5,
                              nx=16, nz=16)
    pulse = gt.poly_exp_pulse(order=4, sigma=1.0, amplitude=1.0, delay=1.0,
                              theta=math.pi / 3)
    plan = gt.plan_sweep(pulse, 6.0, 1e-6)
    result = gt.simulate(medium, pulse, plan, threads=1)
    u, t = result["u"], result["t"]
    assert u.shape[0] == plan.nt
    peak = np.abs(u).max()
    pre = np.abs(u[t <= 0.9]).max()
    assert pre < 1e-3 * peak
    assert result["parseval_residual"] < 5e-3
    assert (result["e1"] >= 0).all()


def test_norms_reference_values(vacuum):
    ones = np.ones(8, dtype=complex)
    assert gt.hs_boundary_norm(ones, 1.0, 3.0 + 4.0j, 0.5) == pytest.approx(
        math.sqrt(5.0))
    field = np.ones((17, 16), dtype=complex)
    got = gt.hsp_volume_norm(field, vacuum, 0.6 + 0.8j)
    assert got == pytest.approx(1.0)  # |s|^2 * area = 1 on the unit strip
