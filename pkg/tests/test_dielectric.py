"""Permittivity model and reflection coefficients."""

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from casimir_lowt.dielectric import (IDEAL_METAL, SI_PAPER, DielectricModel,
                                     PermittivityMode, a_mu, b_coefficient,
                                     load_material, one_minus_r_tm_sq, permittivity,
                                     reflection_coeffs,
                                     reflection_limits_zero_frequency)
from casimir_lowt.precision import set_precision


def setup_module():
    set_precision(33)


def test_permittivity_pole_at_zero_frequency():
    with pytest.raises(ZeroDivisionError):
        permittivity(SI_PAPER, 0)


def test_permittivity_zero_frequency_without_conductivity():
    mat = DielectricModel(eps_bar=11.67, omega0=8e15, four_pi_sigma=0.0)
    assert abs(permittivity(mat, 0) - mpf("11.67")) < 1e-15  # float literal input


def test_permittivity_oscillator_rolloff():
    # far above omega0 the oscillator term dies off as (omega0/zeta)^2
    ep = permittivity(SI_PAPER, 8e17)
    assert abs(ep - 1 - mpf("10.67") / 10001 - mpf("1e12") / mpf("8e17")) < 1e-18


def test_low_freq_model_drops_oscillator():
    lo = DielectricModel(11.67, 8e15, 1e12, mode=PermittivityMode.LOW_FREQ)
    assert abs(permittivity(lo, 1e10) - (mpf("11.67") + 100)) < 1e-15


def test_model_validation():
    with pytest.raises(ValueError):
        DielectricModel(eps_bar=0.5, omega0=8e15, four_pi_sigma=0.0)
    with pytest.raises(ValueError):
        DielectricModel(eps_bar=2.0, omega0=-1.0, four_pi_sigma=0.0)
    with pytest.raises(ValueError):
        DielectricModel(eps_bar=2.0, omega0=1.0, four_pi_sigma=-1.0)


def test_reflection_vacuum():
    rc = reflection_coeffs(1.0, 2.0, 1.0)
    assert rc.r_te == 0
    assert rc.r_tm == 0


def test_reflection_grazing_limit():
    # kappa = zeta (normal incidence in these variables): r_te = -r_tm
    eps = mpf("4.0")
    rc = reflection_coeffs(eps, 1.0, 1.0)
    assert abs(rc.r_te + rc.r_tm) < 1e-30
    assert abs(rc.r_tm - mpf(1) / 3) < 1e-30  # (2-1)/(2+1) for sqrt(eps)=2


def test_reflection_requires_kappa_ge_zeta():
    with pytest.raises(ValueError):
        reflection_coeffs(2.0, 0.5, 1.0)


@given(st.floats(min_value=1.0, max_value=1e8),
       st.floats(min_value=1e-6, max_value=1e3),
       st.floats(min_value=0.0, max_value=1.0))
@settings(max_examples=50, deadline=None)
def test_reflection_bounds(eps, kappa, frac):
    # |r| <= 1 with r_te <= 0 <= r_tm everywhere on the imaginary axis
    zeta = kappa * frac
    rc = reflection_coeffs(eps, kappa, zeta)
    assert -1 <= rc.r_te <= 0
    assert 0 <= rc.r_tm <= 1


@given(st.floats(min_value=1.0, max_value=1e12),
       st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=50, deadline=None)
def test_one_minus_r_tm_sq_consistent(eps, kappa):
    zeta = kappa / 2
    rc = reflection_coeffs(eps, kappa, zeta)
    direct = 1 - rc.r_tm ** 2
    stable = one_minus_r_tm_sq(eps, kappa, zeta)
    assert abs(direct - stable) <= 1e-20 * abs(stable)


def test_zero_frequency_limits():
    te, tm = reflection_limits_zero_frequency(SI_PAPER)
    assert te == 0 and tm == 1
    te, tm = reflection_limits_zero_frequency(IDEAL_METAL)
    assert te == -1 and tm == 1
    mat = DielectricModel(11.67, 8e15, 0.0)
    te, tm = reflection_limits_zero_frequency(mat)
    assert te == 0
    assert abs(tm - mpf("10.67") / mpf("12.67")) < 1e-15


def test_a_mu_endpoints():
    assert a_mu(11.67, 0) == 1
    # large-mu plateau: ((eps-1)/(eps+1))^2
    assert abs(a_mu(11.67, 1e12) - (mpf("10.67") / mpf("12.67")) ** 2) < 1e-10


@given(st.floats(min_value=1.0, max_value=100.0),
       st.floats(min_value=0.0, max_value=10.0))
@settings(max_examples=50, deadline=None)
def test_a_mu_monotone_decreasing(eps_bar, mu):
    assert a_mu(eps_bar, mu + 0.1) <= a_mu(eps_bar, mu) + mpf("1e-30")


def test_b_coefficient_small_and_large_x():
    # B(0) = 1; B ~ 1/(2x)^4 at large x
    assert b_coefficient(0) == 1
    assert abs(b_coefficient(1e6) * (2e6) ** 4 - 1) < 1e-5


def test_load_material(tmp_path):
    p = tmp_path / "mat.txt"
    p.write_text("# silicon-like\neps_bar = 11.67\nomega0 = 8e15\n"
                 "sigma_over_eps0 = 1e12\nmodel = full\n")
    mat = load_material(p)
    assert mat == SI_PAPER
    p.write_text("model = ideal\n")
    assert load_material(p) == IDEAL_METAL
    p.write_text("nonsense line\n")
    with pytest.raises(ValueError):
        load_material(p)
