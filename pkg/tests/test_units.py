import math

import pytest

from cpthermal.units import (CODATA2018, EPSILON0, AtomSpec, DomainError, ReducedPoint,
                             ThermalSpec, potential_si, reduce)

HBAR, C, KB = 1.054571817e-34, 299792458.0, 1.380649e-23


def test_codata_values():
    assert (CODATA2018.hbar, CODATA2018.c, CODATA2018.k_B) == (HBAR, C, KB)


def test_zeta_from_k0():
    atom = AtomSpec(1e7 * C, 1e-30)
    p = reduce(atom, 1e-7, 300.0)
    assert p.zeta == pytest.approx(1.0, rel=1e-15)


def test_zero_temperature():
    atom = AtomSpec(1e15, 1e-30)
    p = reduce(atom, 1e-7, ThermalSpec(0.0))
    assert math.isinf(p.tau) and p.theta == 0.0


def test_theta_one():
    omega0 = 2.4180e14
    T = HBAR * omega0 / (2 * KB)
    p = reduce(AtomSpec(omega0, 1e-30), 1e-6, T)
    assert p.theta == pytest.approx(1.0, rel=1e-14)
    assert p.tau == pytest.approx(2.0, rel=1e-14)


def test_theta_tau_product():
    for tau in (1e-3, 0.7, 2.0, 55.0, 1e6):
        p = ReducedPoint.from_zeta_tau(1.0, tau)
        assert p.theta * p.tau == pytest.approx(2.0, rel=1e-15)


def test_from_theta_zero():
    assert math.isinf(ReducedPoint.from_zeta_theta(1.0, 0.0).tau)


@pytest.mark.parametrize("z, T", [(0.0, 300.0), (-1e-7, 300.0), (1e-7, -1.0)])
def test_reduce_rejects(z, T):
    with pytest.raises(DomainError):
        reduce(AtomSpec(1e15, 1e-30), z, T)


def test_atom_validation():
    with pytest.raises(DomainError):
        AtomSpec(-1.0, 1e-30)
    with pytest.raises(DomainError):
        AtomSpec(1e15, 0.0)


def test_si_polarizability_conversion():
    a = AtomSpec.from_si_polarizability(1e15, 4 * math.pi * EPSILON0 * 2e-30)
    assert a.alpha0 == pytest.approx(2e-30, rel=1e-14)


def test_potential_si_zero():
    assert potential_si(AtomSpec(1e15, 1e-30), 0.0) == 0.0


def test_potential_si_london_scale():
    # -1/8 at k0 z = 1 is -hbar omega0 alpha0 / (8 z**3)
    atom = AtomSpec(3e15, 2e-30)
    z = 1.0 / atom.k0
    assert potential_si(atom, -0.125) == pytest.approx(-HBAR * 3e15 * 2e-30 / (8 * z**3), rel=1e-14)


def test_potential_si_arithmetic():
    # hbar c * 1e-30 * (1e7)**4 * (-0.125)
    atom = AtomSpec(1e7 * C, 1e-30)
    expected = -HBAR * C * 1e-30 * 1e28 * 0.125
    assert potential_si(atom, -0.125) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(-3.952e-29, rel=1e-3)


def test_potential_si_linear():
    atom = AtomSpec(1e15, 1e-30)
    x, y = -0.37, 1.9
    assert potential_si(atom, x + y) == pytest.approx(
        potential_si(atom, x) + potential_si(atom, y), rel=1e-14)


def test_potential_si_rejects_nonfinite():
    with pytest.raises(DomainError):
        potential_si(AtomSpec(1e15, 1e-30), math.nan)


def test_reduce_monotone():
    atom = AtomSpec(1e15, 1e-30)
    zs = [reduce(atom, z, 300.0).zeta for z in (1e-9, 1e-8, 1e-7)]
    taus = [reduce(atom, 1e-7, T).tau for T in (1.0, 10.0, 100.0)]
    assert zs == sorted(zs) and taus == sorted(taus, reverse=True)
