import math

import numpy as np
import pytest

from cpthermal.asymptotics import (F_SERIES_THETA, NonDiluteError, Regime, SlabSpec,
                                   classify_regime, clausius_mossotti, delta_f_percent,
                                   delta_v_percent, f_theta, polarizability_from_epsilon,
                                   slab_force_lifshitz, slab_force_per_area, theta_of, v_cp,
                                   v_highT, v_lifshitz, v_london)
from cpthermal.units import CODATA2018, AtomSpec, DomainError, potential_si

HBAR, KB = CODATA2018.hbar, CODATA2018.k_B


def test_london_values():
    assert v_london(1.0) == -0.125
    assert v_london(0.5) == -1.0


def test_london_si():
    atom = AtomSpec(2e15, 3e-30)
    z = 4e-8
    v = potential_si(atom, v_london(atom.k0 * z))
    assert v == pytest.approx(-HBAR * 2e15 * 3e-30 / (8 * z**3), rel=1e-13)


def test_cp_values():
    assert v_cp(1.0) == pytest.approx(-0.1193662, abs=1e-7)
    assert v_cp(10.0) == pytest.approx(-1.1937e-5, rel=1e-4)
    zs = 3 / math.pi
    assert v_cp(zs) == pytest.approx(v_london(zs), rel=1e-14)
    assert v_cp(2.0) / v_london(2.0) == pytest.approx(3 / (math.pi * 2.0), rel=1e-14)


def test_f_theta_values():
    assert f_theta(1.0) == pytest.approx(0.7615942, abs=1e-7)
    assert f_theta(3.0) == pytest.approx(0.96453821, abs=1e-8)
    assert f_theta(0.0) == 0.0
    assert f_theta(math.inf) == 1.0
    assert f_theta(0.01) == pytest.approx(0.01, rel=1e-15)


def test_f_theta_series_branch_continuous():
    t = F_SERIES_THETA
    assert f_theta(t * (1 + 1e-12)) == pytest.approx(t * math.tanh(1 / t), rel=1e-14)
    assert f_theta(1e8) == pytest.approx(1 - 1 / 3e16, rel=1e-16)


def test_f_theta_monotone_bounded():
    th = np.geomspace(1e-3, 1e5, 3000)
    f = np.array([f_theta(float(t)) for t in th])
    assert np.all(np.diff(f) > 0) and np.all(f <= 1) and np.all(f - th <= 0)


def test_f_theta_negative():
    with pytest.raises(DomainError):
        f_theta(-0.1)


def test_high_t_values():
    assert v_highT(1.0, math.inf) == v_london(1.0)
    assert v_highT(2.0, 1.0) == pytest.approx(-0.0118999, abs=1e-7)
    for theta in (1e-3, 0.05, 0.1):
        assert v_highT(1.3, theta) == pytest.approx(v_lifshitz(1.3, theta), rel=1e-8)


def test_high_t_above_lifshitz():
    for theta in (0.3, 1.0, 3.0):
        assert v_highT(1.0, theta) >= v_lifshitz(1.0, theta)


def test_lifshitz_values():
    assert v_lifshitz(1.0, 1.0) == -0.125
    atom = AtomSpec(1.5e15, 2e-30)
    T, z = 400.0, 3e-6
    theta = theta_of(T, atom.omega0)
    v = potential_si(atom, v_lifshitz(atom.k0 * z, theta))
    assert v == pytest.approx(-KB * T * 2e-30 / (4 * z**3), rel=1e-13)


def test_delta_v_anchors():
    assert 0.07 <= delta_v_percent(0.26) <= 0.12
    assert delta_v_percent(0.26) == pytest.approx(0.0913, abs=5e-4)
    assert 209 <= delta_v_percent(3.0) <= 213
    assert delta_v_percent(0.0) == 0.0
    assert delta_v_percent(1e-3) < 1e-300


def test_delta_v_definition():
    for theta in (0.2, 0.7, 1.0, 2.5):
        assert delta_v_percent(theta) == pytest.approx(
            100 * abs(1 - v_lifshitz(1.0, theta) / v_highT(1.0, theta)), rel=1e-12)


def test_delta_v_monotone():
    th = np.geomspace(0.05, 10, 500)
    d = [delta_v_percent(float(t)) for t in th]
    assert np.all(np.diff(d) > 0)


@pytest.mark.parametrize("point, regime", [
    ((0.01, 1000.0), Regime.LONDON),
    ((50.0, 1e5), Regime.CASIMIR_POLDER),
    ((30.0, 10.0), Regime.LIFSHITZ_HIGH_T),
    ((5.0, 0.01), Regime.LIFSHITZ_HIGH_T),
    ((1.0, 1.0), Regime.CROSSOVER),
    ((0.05, math.inf), Regime.LONDON),
    ((100.0, math.inf), Regime.CASIMIR_POLDER),
])
def test_classify(point, regime):
    rep = classify_regime(*point)
    assert rep.regime is regime
    if regime is Regime.CROSSOVER:
        assert rep.asymptotic_value == 0.0
    else:
        assert rep.asymptotic_value < 0 and rep.conditions


def test_classify_values():
    assert classify_regime(0.01, 1000.0).asymptotic_value == v_london(0.01)
    assert classify_regime(50.0, 1e5).asymptotic_value == v_cp(50.0)
    assert classify_regime(30.0, 10.0).asymptotic_value == v_highT(30.0, 0.2)


def test_classify_london_chain():
    for z in np.geomspace(1e-4, 1e4, 30):
        for t in np.geomspace(1e-3, 1e6, 30):
            rep = classify_regime(float(z), float(t))
            if rep.regime is Regime.LONDON:
                assert z <= 0.1 and t >= 10 * max(1, z)
            elif rep.regime is Regime.CASIMIR_POLDER:
                assert 10 <= z <= t / 10
            elif rep.regime is Regime.LIFSHITZ_HIGH_T:
                assert z >= t and (t >= 10 or t <= 0.1)


def test_slab_vacuum():
    f = slab_force_per_area(1e-6, 300.0, SlabSpec(1.0), 1e15)
    assert f == 0.0 and math.copysign(1.0, f) == 1.0


def test_slab_formula():
    omega0, a, eps = 2e15, 2e-7, 1.3
    T = 500.0
    theta = 2 * KB * T / (HBAR * omega0)
    f = slab_force_per_area(a, T, SlabSpec(eps), omega0)
    cm = (eps - 1) / (eps + 2)
    assert f == pytest.approx(-3 * HBAR * omega0 / (32 * math.pi) * f_theta(theta) / a**3 * cm,
                              rel=1e-14)
    assert slab_force_lifshitz(a, T, SlabSpec(eps)) == pytest.approx(
        -3 * KB * T * cm / (16 * math.pi * a**3), rel=1e-14)


def test_slab_high_temperature_limit():
    omega0, a, eps = 1e12, 1e-6, 1.1
    T = 1e6
    sat = -3 * HBAR * omega0 / (32 * math.pi) * (eps - 1) / (eps + 2) / a**3
    assert slab_force_per_area(a, T, SlabSpec(eps), omega0) / sat == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("theta", [0.1, 1.0, 3.0])
def test_slab_discrepancy_matches_potential(theta):
    omega0 = 1e15
    T = theta * HBAR * omega0 / (2 * KB)
    for eps in (1.0, 1.01, 2.5):
        assert delta_f_percent(3e-7, T, SlabSpec(eps), omega0) == pytest.approx(
            delta_v_percent(theta), rel=1e-12)
    # from the two forces themselves, away from the vacuum slab
    s = SlabSpec(1.7)
    ratio = slab_force_lifshitz(3e-7, T, s) / slab_force_per_area(3e-7, T, s, omega0)
    assert 100 * abs(1 - ratio) == pytest.approx(delta_v_percent(theta), rel=1e-12)


def test_slab_rejects():
    with pytest.raises(DomainError):
        SlabSpec(0.9)
    with pytest.raises(DomainError):
        slab_force_per_area(0.0, 300.0, SlabSpec(1.1), 1e15)


def test_clausius_mossotti():
    assert clausius_mossotti(1e-30, 0.0) == 1.0
    q = 0.01
    n = 3 * q / (4 * math.pi * 1e-30)
    assert clausius_mossotti(1e-30, n) == pytest.approx(1.02 / 0.99, rel=1e-14)
    assert polarizability_from_epsilon(clausius_mossotti(1e-30, n), n) == pytest.approx(
        1e-30, rel=1e-12)
    assert SlabSpec.from_density(1e-30, n).epsilon == pytest.approx(1.030303, abs=1e-6)


def test_clausius_mossotti_non_dilute():
    with pytest.raises(NonDiluteError):
        clausius_mossotti(1e-30, 3 / (4 * math.pi * 1e-30))


@pytest.mark.parametrize("theta", [0.5, 1.0, 3.0])
def test_slab_force_ratio_matches_discrepancy(theta):
    omega0 = 1.2e15
    T = theta * CODATA2018.hbar * omega0 / (2 * CODATA2018.k_B)
    slab = SlabSpec(2.5)
    ratio = slab_force_lifshitz(1e-7, T, slab) / slab_force_per_area(1e-7, T, slab, omega0)
    assert 100 * abs(1 - ratio) == pytest.approx(delta_f_percent(1e-7, T, slab, omega0), rel=1e-9)
