"""Core free-energy numerics: mode integrals, Matsubara summation, the
sum-minus-integral correction, and their limiting cases."""

import mpmath
import pytest
from mpmath import mp, mpf

from casimir_lowt import (IDEAL_METAL, SI_PAPER, DielectricModel, PlateSystem,
                          Polarization, PrecisionError, QuadratureSpec,
                          delta_f_direct, free_energy, mode_integral,
                          zero_temperature_energy)
from casimir_lowt.lifshitz import (ModeScan, constant_a_integral, g_of_m,
                                   mode_scan)
from casimir_lowt.precision import set_precision
from casimir_lowt.special import polylog, riemann_zeta

SIGMA0_SI = DielectricModel(eps_bar=11.67, omega0=8e15, four_pi_sigma=0.0)
VACUUM = DielectricModel(eps_bar=1.0, omega0=8e15, four_pi_sigma=0.0)


def setup_module():
    set_precision(33)


def _hbar_c():
    return mpf("1.054571817e-34") * mpf("299792458")


# --- limiting cases ---------------------------------------------------------

def test_ideal_conductor_zero_temperature():
    # perfectly reflecting plates at T = 0: -pi^2 hbar c / (720 a^3)
    a = 1e-6
    f0 = zero_temperature_energy(PlateSystem(a, 0.0, IDEAL_METAL))
    ref = -mpmath.pi ** 2 * _hbar_c() / (720 * mpf(a) ** 3)
    assert abs(f0 / ref - 1) < 1e-6


def test_vacuum_plates_zero_energy():
    sys_ = PlateSystem(1e-6, 0.5, VACUUM)
    res = free_energy(sys_)
    assert res.total == 0
    assert zero_temperature_energy(sys_) == 0


def test_m0_te_vanishes_for_conductor():
    assert g_of_m(PlateSystem(1e-6, 0.1, SI_PAPER), 0, "te") == 0


def test_m0_tm_conductor_is_zeta3():
    assert abs(g_of_m(PlateSystem(1e-6, 0.1, SI_PAPER), 0, "tm")
               + riemann_zeta(3)) < 1e-30


def test_m0_tm_dielectric_polylog_dual_route():
    # analytic: -Li_3(A0); quadrature: direct x-integral with constant A0
    sys_ = PlateSystem(1e-6, 0.1, SIGMA0_SI)
    a0 = (mpf("10.67") / mpf("12.67")) ** 2
    analytic = g_of_m(sys_, 0, "tm")
    assert abs(analytic + polylog(3, a0)) < 1e-15  # eps_bar is a float literal
    quadrature = constant_a_integral(a0)
    assert abs(quadrature - analytic) < 1e-12


# --- mode integrals ---------------------------------------------------------

def test_mode_summand_negative_and_small_error():
    sys_ = PlateSystem(1e-6, 0.5, SI_PAPER, Polarization.TM)
    s = mode_integral(sys_, 3)
    assert s.g_value < 0
    assert s.quadrature_error < 1e-20 * abs(s.g_value)


def test_mode_integral_needs_single_polarization():
    sys_ = PlateSystem(1e-6, 0.5, SI_PAPER, Polarization.BOTH)
    with pytest.raises(ValueError):
        mode_integral(sys_, 1)


def test_g_decreasing_magnitude_in_m():
    # the conductivity pole makes |g| largest at m = 0
    sys_ = PlateSystem(1e-6, 0.1, SI_PAPER)
    vals = [abs(g_of_m(sys_, m, "tm")) for m in [0, 1, 10, 100, 1000]]
    assert all(a > b for a, b in zip(vals, vals[1:]))


# --- free energy ------------------------------------------------------------

def test_free_energy_total_is_sum_of_modes():
    res = free_energy(PlateSystem(1e-6, 1.0, SI_PAPER, Polarization.BOTH))
    assert res.total == res.per_mode["tm"] + res.per_mode["te"]
    assert res.total < 0
    assert res.m_truncation >= 30


def test_free_energy_attractive_and_monotone_in_separation():
    vals = []
    for a_um in (0.5, 1.0, 2.0):
        res = free_energy(PlateSystem(a_um * 1e-6, 1.0, SI_PAPER, Polarization.BOTH))
        assert res.total < 0
        vals.append(abs(res.total))
    assert vals[0] > vals[1] > vals[2]


def test_quadrature_doubling_stability():
    base = PlateSystem(1e-6, 0.5, SI_PAPER, Polarization.TM)
    fine = PlateSystem(1e-6, 0.5, SI_PAPER, Polarization.TM,
                       quadrature=QuadratureSpec().refined())
    f1 = free_energy(base).per_mode["tm"]
    f2 = free_energy(fine).per_mode["tm"]
    assert abs(f1 / f2 - 1) < 1e-10


def test_golden_tm_value_at_1k():
    # frozen from an independent adaptive-quadrature run at 50 digits
    res = free_energy(PlateSystem(1e-6, 1.0, SI_PAPER, Polarization.TM))
    golden = mpf("-1.076163173412597086806701e-10")
    assert abs(res.per_mode["tm"] / golden - 1) < 1e-12


def test_sigma0_has_no_linear_thermal_term():
    # with the conductivity exactly zero the m = 0 summand equals the m -> 0
    # limit, so no linear-in-T anomaly survives: the thermal shift at 1 mK
    # must sit far below the would-be linear scale
    sys_cold = PlateSystem(1e-6, 1e-3, SIGMA0_SI, Polarization.TM)
    f = free_energy(sys_cold).per_mode["tm"]
    f0 = zero_temperature_energy(sys_cold)
    a0 = (mpf("10.67") / mpf("12.67")) ** 2
    k_b = mpf("1.380649e-23")
    linear_scale = k_b * mpf("1e-3") * abs(polylog(3, a0) - riemann_zeta(3)) / \
        (16 * mpmath.pi * mpf("1e-6") ** 2)
    assert abs(f - f0) < linear_scale / 100


def test_static_term_dominates_zero_t_energy():
    # switching sigma on top of eps_bar barely moves F(0): the static
    # dielectric response carries ~99.7% of it
    with_sigma = zero_temperature_energy(PlateSystem(1e-6, 0.0, SI_PAPER,
                                                     Polarization.TM))
    without = zero_temperature_energy(PlateSystem(1e-6, 0.0, SIGMA0_SI,
                                                  Polarization.TM))
    frac = float(without / with_sigma)
    assert 0.994 <= frac <= 1.0


# --- thermal correction -----------------------------------------------------

def test_delta_f_signs_at_small_t():
    df = delta_f_direct(PlateSystem(1e-6, 0.1, SI_PAPER, Polarization.BOTH))
    assert df["tm"] < 0
    assert df["te"] > 0


def test_delta_f_scales_like_t2():
    tm1 = delta_f_direct(PlateSystem(1e-6, 0.05, SI_PAPER, Polarization.TM))["tm"]
    tm2 = delta_f_direct(PlateSystem(1e-6, 0.1, SI_PAPER, Polarization.TM))["tm"]
    ratio = float(tm2 / tm1)
    assert 3.3 < ratio < 4.5  # ~4 with a modest T^3 enhancement


def test_delta_f_requires_positive_t():
    with pytest.raises(ValueError):
        delta_f_direct(PlateSystem(1e-6, 0.0, SI_PAPER, Polarization.TM))


def test_precision_guard_raises(monkeypatch):
    import casimir_lowt.lifshitz as lif
    starved = ModeScan(M=30, sum_part=mpf("-250"), integral_0_M=mpf("-250"),
                       integral_tail=mpf(0), d1=mpf(0), d3=mpf(0), d5=mpf(0),
                       )
    # fabricate a scan whose difference is ~1e-20 of its parts: at 15 digits
    # nothing trustworthy survives
    starved.sum_part = mpf("-250") + mpf("1e-18")
    monkeypatch.setattr(lif, "_scan_cached", lambda s, p: starved)
    mp.dps = 15
    try:
        with pytest.raises(PrecisionError):
            delta_f_direct(PlateSystem(1e-6, 0.1, SI_PAPER, Polarization.TM))
    finally:
        mp.dps = 33


def test_shared_kernel_consistency():
    # free_energy and delta_f_direct must agree through the identity
    # F = pref * (delta_gamma + integral): same scan feeds both
    sys_ = PlateSystem(1e-6, 0.3, SI_PAPER, Polarization.TM)
    scan = mode_scan(sys_, "tm")
    df = delta_f_direct(sys_)["tm"]
    f = free_energy(sys_).per_mode["tm"]
    pref = f / scan.sum_total
    assert abs(df - pref * scan.delta_gamma) < 1e-25 * abs(df)
