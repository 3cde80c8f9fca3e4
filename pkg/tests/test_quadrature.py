import math

import numpy as np
import pytest

from cpthermal.kernels import g_kernel
from cpthermal.quadrature import (ConvergenceError, PvSpec, QuadratureResult, abel_regularized,
                                  damped_tail, euler_average, integrate_adaptive,
                                  oscillatory_tail, pv_integrate, richardson_zero)
from cpthermal.units import DomainError

# frozen from tests/oracles.py (mpmath, 30 digits)
INT_G10 = 0.007846694179889114
PV_EXP = 5.747811685312523
SI_TAIL = 0.6247132564277136


def test_polynomial():
    r = integrate_adaptive(lambda x: x * x, 0.0, 1.0, 1e-12)
    assert abs(r.value - 1 / 3) <= 1e-12
    assert r.abs_error_estimate >= 0 and r.panels_used >= 1


def test_sine():
    assert abs(integrate_adaptive(np.sin, 0.0, math.pi, 1e-12).value - 2.0) <= 1e-12


def test_g_oracle():
    r = integrate_adaptive(lambda x: g_kernel(10 * x), 0.0, 1.0, 1e-12)
    assert abs(r.value - INT_G10) <= 1e-9


def test_error_estimate_is_honest():
    r = integrate_adaptive(lambda x: np.exp(3 * x) * np.cos(40 * x), 0.0, 2.0, 1e-6)
    exact = (math.exp(6) * (3 * math.cos(80) + 40 * math.sin(80)) - 3) / (9 + 1600)
    assert abs(r.value - exact) <= r.abs_error_estimate <= 1e-6 * abs(exact)


def test_panel_limit_carries_best():
    with pytest.raises(ConvergenceError) as info:
        integrate_adaptive(lambda x: 1 / np.sqrt(x), 0.0, 1.0, 1e-14, max_panels=20)
    best = info.value.best
    assert isinstance(best, QuadratureResult) and abs(best.value - 2.0) < 0.1


def test_bad_interval():
    with pytest.raises(DomainError):
        integrate_adaptive(np.sin, 1.0, 0.0)


def test_nonfinite_integrand():
    with pytest.raises(DomainError):
        integrate_adaptive(lambda x: np.full_like(x, np.nan), 0.0, 1.0)


def test_pv_constant_is_zero():
    for d in (0.1, 0.5, 0.9):
        assert pv_integrate(np.ones_like, PvSpec(1.0, d)).value == 0.0


def test_pv_linear():
    r = pv_integrate(lambda k: k, PvSpec(1.0, 0.5), 1e-12)
    assert r.value == pytest.approx(1.0, abs=1e-12)


def test_pv_exponential():
    # the window [0, 2] touches the lower end of the domain; allow delta = x0 here
    r = integrate_adaptive(lambda s: (np.exp(1 + s) - np.exp(1 - s)) / s, 0.0, 1.0, 1e-12)
    assert r.value == pytest.approx(PV_EXP, rel=1e-12)
    # the same value through the window machinery with delta = 1/2
    w = (integrate_adaptive(lambda k: np.exp(k) / (k - 1), 0.0, 0.5, 1e-13)
         + pv_integrate(np.exp, PvSpec(1.0, 0.5), 1e-13)
         + integrate_adaptive(lambda k: np.exp(k) / (k - 1), 1.5, 2.0, 1e-13))
    assert w.value == pytest.approx(PV_EXP, rel=1e-12)


def test_pv_plus_complement():
    spec = PvSpec(1.0, 0.5)

    def f(k):
        return k * k / (k - 1)

    total = (integrate_adaptive(f, 0.0, 0.5, 1e-13) + pv_integrate(lambda k: k * k, spec, 1e-13)
             + integrate_adaptive(f, 1.5, 2.0, 1e-13))
    assert total.value == pytest.approx(4.0, abs=1e-10)


def test_pv_window_independence():
    def h(k):
        return np.cos(3 * k) * np.exp(k)

    def f(k):
        return h(k) / (k - 1)

    vals = []
    for d in (0.5, 0.25):
        vals.append((integrate_adaptive(f, 0.0, 1 - d, 1e-13) + pv_integrate(h, PvSpec(1.0, d), 1e-13)
                     + integrate_adaptive(f, 1 + d, 3.0, 1e-13)).value)
    assert vals[0] == pytest.approx(vals[1], rel=1e-9)


@pytest.mark.parametrize("d", [0.0, -0.1, 1.0, 2.0])
def test_pv_spec_rejects(d):
    with pytest.raises(DomainError):
        PvSpec(1.0, d)


def test_si_tail():
    r = oscillatory_tail(lambda x: np.sin(x) / x, math.pi, 1.0, 1e-12)
    assert r.value == pytest.approx(SI_TAIL, abs=1e-12)
    assert r.acceleration_terms > 0
    assert abs(r.value - SI_TAIL) <= r.abs_error_estimate


def test_abel_sine_by_lobes():
    r = oscillatory_tail(np.sin, math.pi, 0.0, 1e-10)
    assert r.value == pytest.approx(1.0, abs=1e-10)


def test_growing_lobes():
    # Abel values: int x sin x = 0, int x**2 sin x = -2
    assert abs(oscillatory_tail(lambda x: x * np.sin(x), math.pi, 0.0, 1e-10).value) < 1e-8
    r = oscillatory_tail(lambda x: x * x * np.sin(x), math.pi, 0.0, 1e-10)
    assert r.value == pytest.approx(-2.0, abs=1e-8)


def test_fallback_on_positive_lobes():
    def f(x):
        return np.exp(-x / 4) * (2 + np.sin(x))

    r = oscillatory_tail(f, math.pi, 0.0, 1e-8)
    assert r.diagnostics.get("fallback") is True
    ref = integrate_adaptive(f, 0.0, 400.0, 1e-12)
    assert r.value == pytest.approx(ref.value, rel=1e-6)


def test_abel_sine():
    r = abel_regularized(np.sin, start=0.0, tol=1e-6)
    assert r.value == pytest.approx(1.0, abs=1e-6)
    assert len(r.regularization_etas) >= 3


def test_abel_x_sine():
    r = abel_regularized(lambda x: x * np.sin(x), start=0.0, tol=1e-6, abs_tol=1e-5)
    assert abs(r.value) <= 1e-5


def test_abel_convergent_integrand():
    r = abel_regularized(lambda x: np.exp(-x), start=0.0, tol=1e-6)
    assert r.value == pytest.approx(1.0, rel=1e-6)


def test_abel_bad_etas():
    with pytest.raises(DomainError):
        abel_regularized(np.sin, etas=[1e-3, 1e-2])


def test_abel_spread_failure():
    # a single decade of damping cannot resolve a slowly converging tail
    with pytest.raises(ConvergenceError) as info:
        abel_regularized(lambda x: x**3 * np.sin(x), etas=[0.3, 0.2], tol=1e-12)
    assert info.value.best is not None


@pytest.mark.parametrize("zeta", [0.1, 1.0, 10.0])
def test_tail_cross_oracle(zeta):
    # lobe acceleration and Abel damping agree on the reaction-term tail
    def f(k):
        return k**4 / (k * k - 1) * g_kernel(2 * k * zeta)

    spacing = math.pi / (2 * zeta)
    a = oscillatory_tail(f, spacing, 2.0, 1e-10)
    b = abel_regularized(f, start=2.0, tol=1e-6, period_scale=spacing)
    assert abs(a.value - b.value) <= a.abs_error_estimate + b.abs_error_estimate


def test_damped_tail():
    r = damped_tail(lambda x: np.exp(-x) * np.sin(x), 0.0, 60.0, math.pi, 1e-12)
    assert r.value == pytest.approx(0.5, abs=1e-12)
    assert damped_tail(np.sin, 2.0, 1.0, math.pi).value == 0.0


def test_euler_average_alternating_harmonic():
    sums = np.cumsum([(-1) ** n / (n + 1) for n in range(40)])
    est, err = euler_average(sums)
    assert est == pytest.approx(math.log(2), abs=1e-12)
    assert err < 1e-10


def test_richardson_polynomial():
    etas = [0.3, 0.2, 0.1]
    vals = [2 + 3 * e - 5 * e * e for e in etas]
    assert richardson_zero(etas, vals) == pytest.approx(2.0, abs=1e-14)


def test_result_algebra():
    a = QuadratureResult(1.0, 0.1, 3)
    b = QuadratureResult(2.0, 0.2, 4)
    c = (a + b).scaled(-2.0)
    assert (c.value, c.abs_error_estimate, c.panels_used) == (-6.0, pytest.approx(0.6), 7)
