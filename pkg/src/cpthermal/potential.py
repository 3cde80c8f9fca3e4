"""Reduced atom-wall potential of a thermally populated two-level atom.

All quantities are in units of ``hbar c alpha0 k0**4`` and functions of
``zeta = k0 z`` and ``tau = k0 lambda_T`` (``tau = inf`` at zero temperature).

The level shift splits into a reservoir-reaction part ``rr`` (same for both
levels) and a field-fluctuation part ``fr`` (opposite sign for the excited
level).  With ``coth(kappa tau / 2) = 1 + bose`` the fluctuation part is
further split into a vacuum and a thermal piece::

    rr          = 1/pi PV int kappa^3 * kappa/(kappa^2 - 1) * G(2 kappa zeta)
    fr_vacuum   = 1/pi PV int kappa^3 * 1/(1 - kappa^2)     * G(2 kappa zeta)
    fr_thermal  = 1/pi PV int kappa^3 * 1/(1 - kappa^2)     * G(2 kappa zeta) * bose
    g_vacuum    = 1/pi    int kappa^3 * 1/(1 + kappa)       * G(2 kappa zeta)

``g_vacuum`` has no pole and equals ``fr_vacuum + rr``; it is computed on its
own as a check of the principal-value route.  The populations enter as

    v = tanh(tau/2) * (fr_vacuum + fr_thermal + rr) + 2 p_e * rr,
    p_e = 1 / (exp(tau) + 1).

Undamped integrals grow like ``kappa**2`` times an oscillation and are taken
in the Abel sense (see :func:`cpthermal.quadrature.oscillatory_tail`).
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .kernels import bose_factor, g_kernel
from .quadrature import (ConvergenceError, PvSpec, QuadratureResult, damped_tail,
                         integrate_adaptive, oscillatory_tail, pv_integrate)
from .units import DomainError

__all__ = [
    "ZETA_MIN",
    "ZETA_MAX",
    "DEFAULT_PV",
    "ComponentError",
    "PopulationWeights",
    "ReducedPotential",
    "weights",
    "v_rr",
    "v_fr_vacuum",
    "v_fr_thermal",
    "v_g_vacuum",
    "components",
    "v_ground",
    "v_total",
    "v_excited",
]

ZETA_MIN, ZETA_MAX = 1e-6, 1e4
DEFAULT_PV = PvSpec(1.0, 0.5)
DEFAULT_TOL = 1e-6
# the Bose tail is dropped beyond kappa * tau = _THERMAL_CUT (exp(-80) ~ 2e-35)
_THERMAL_CUT = 80.0
_INNER_FLOOR = 1e-14


class ComponentError(ConvergenceError):
    """Convergence failure of one named potential component."""

    def __init__(self, component: str, message: str, best=None):
        super().__init__(f"{component}: {message}", best)
        self.component = component


@dataclass(frozen=True)
class PopulationWeights:
    p_excited: float
    tanh_weight: float


def weights(tau: float) -> PopulationWeights:
    """Excited population 1/(e^tau + 1) and ground-excited difference tanh(tau/2)."""
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    if math.isinf(tau):
        return PopulationWeights(0.0, 1.0)
    e = math.exp(-tau)
    p = e / (1.0 + e)
    return PopulationWeights(p, math.tanh(0.5 * tau))


@dataclass(frozen=True)
class ReducedPotential:
    """A reduced potential value together with its components.

    ``kind`` is ``"ground"``, ``"excited"`` or ``"average"`` (the
    population-weighted value) and fixes how ``total`` is assembled.
    """

    total: float
    fr_vacuum: float
    fr_thermal: float
    rr: float
    abs_error_estimate: float
    zeta: float
    tau: float
    kind: str = "average"

    @property
    def ground(self) -> float:
        return self.fr_vacuum + self.fr_thermal + self.rr

    @property
    def excited(self) -> float:
        return self.rr - self.fr_vacuum - self.fr_thermal


def _check_point(zeta: float, tau: float = math.inf):
    if not (ZETA_MIN <= zeta <= ZETA_MAX):
        raise DomainError(
            f"zeta={zeta!r} outside the validated range [{ZETA_MIN:g}, {ZETA_MAX:g}]")
    if not tau > 0:
        raise DomainError(f"tau must be positive (inf allowed), got {tau!r}")


def _lattice(zeta: float, a: float, b: float) -> np.ndarray:
    """Zeros of sin(2 kappa zeta) strictly inside (a, b)."""
    spacing = math.pi / (2.0 * zeta)
    n_lo = math.floor(a / spacing) + 1
    n_hi = math.ceil(b / spacing)
    return spacing * np.arange(n_lo, n_hi)


def _wall_integral(full, odd, zeta: float, inner: float, pv: PvSpec,
                   damped_stop: float | None = None) -> QuadratureResult:
    """1/pi times the Abel/principal-value integral of ``full`` over (0, inf).

    ``odd`` is ``(kappa - 1) * full`` (smooth at the pole) or None when the
    integrand has no pole.  ``damped_stop`` switches the tail to plain
    integration up to that point.
    """
    spacing = math.pi / (2.0 * zeta)
    lo, hi = pv.pole_location - pv.window_half_width, pv.pole_location + pv.window_half_width
    if damped_stop is not None and damped_stop <= lo:
        res = integrate_adaptive(full, 0.0, damped_stop, inner,
                                 points=_lattice(zeta, 0.0, damped_stop))
        return res.scaled(1.0 / math.pi)
    if odd is None:
        res = integrate_adaptive(full, 0.0, hi, inner, points=_lattice(zeta, 0.0, hi))
    else:
        res = integrate_adaptive(full, 0.0, lo, inner, points=_lattice(zeta, 0.0, lo))
        s_points = np.abs(_lattice(zeta, lo, hi) - pv.pole_location)
        res = res + pv_integrate(odd, pv, inner, points=s_points[s_points > 0])
    if damped_stop is not None:
        res = res + damped_tail(full, hi, damped_stop, spacing, inner)
    else:
        res = res + oscillatory_tail(full, spacing, hi, inner)
    return res.scaled(1.0 / math.pi)


def _converge(name: str, compute, tol: float, abs_tol: float) -> QuadratureResult:
    """Tighten the inner tolerance until the end-to-end target is met.

    A result whose error stops shrinking under tightening, or that misses the
    target with the inner tolerance already at its floor, is round-off
    limited: it is returned with its honest estimate and flagged in
    ``diagnostics["roundoff_limited"]``.  Quadrature failures (panel budget
    exhausted) raise :class:`ComponentError`.
    """
    inner = max(min(tol * 1e-2, 1e-8), _INNER_FLOOR)
    prev = None
    while True:
        try:
            res = compute(inner)
        except ConvergenceError as exc:
            if inner <= _INNER_FLOOR:
                raise ComponentError(name, str(exc), exc.best) from exc
            inner = max(inner * 1e-2, _INNER_FLOOR)
            continue
        target = max(tol * abs(res.value), abs_tol)
        if res.abs_error_estimate <= target:
            return res
        stalled = prev is not None and res.abs_error_estimate > 0.5 * prev.abs_error_estimate
        if stalled or inner <= _INNER_FLOOR:
            best = res if prev is None or res.abs_error_estimate <= prev.abs_error_estimate else prev
            diag = dict(best.diagnostics, roundoff_limited=True)
            return dataclasses.replace(best, diagnostics=diag)
        prev = res
        inner = max(inner * 1e-2, _INNER_FLOOR)


def v_rr(zeta: float, tol: float = DEFAULT_TOL, abs_tol: float = 0.0,
         pv: PvSpec = DEFAULT_PV) -> QuadratureResult:
    """Reservoir-reaction part, identical for ground and excited level."""
    _check_point(zeta)

    def full(k):
        return k**4 / (k * k - 1.0) * g_kernel(2.0 * k * zeta)

    def odd(k):
        return k**4 / (k + 1.0) * g_kernel(2.0 * k * zeta)

    return _converge("rr", lambda inner: _wall_integral(full, odd, zeta, inner, pv),
                     tol, abs_tol)


def v_fr_vacuum(zeta: float, tol: float = DEFAULT_TOL, abs_tol: float = 0.0,
                pv: PvSpec = DEFAULT_PV) -> QuadratureResult:
    """Vacuum-fluctuation part of the ground-level shift."""
    _check_point(zeta)

    def full(k):
        return k**3 / (1.0 - k * k) * g_kernel(2.0 * k * zeta)

    def odd(k):
        return -(k**3) / (k + 1.0) * g_kernel(2.0 * k * zeta)

    return _converge("fr_vacuum", lambda inner: _wall_integral(full, odd, zeta, inner, pv),
                     tol, abs_tol)


def v_g_vacuum(zeta: float, tol: float = DEFAULT_TOL, abs_tol: float = 0.0,
               pv: PvSpec = DEFAULT_PV) -> QuadratureResult:
    """Zero-temperature ground-level potential from the pole-free integrand.

    The fluctuation and reaction polarizability factors add up to
    ``1 / (1 + kappa)``, so no principal value is needed.
    """
    _check_point(zeta)

    def full(k):
        return k**3 / (1.0 + k) * g_kernel(2.0 * k * zeta)

    return _converge("g_vacuum", lambda inner: _wall_integral(full, None, zeta, inner, pv),
                     tol, abs_tol)


def v_fr_thermal(zeta: float, tau: float, tol: float = DEFAULT_TOL, abs_tol: float = 0.0,
                 pv: PvSpec = DEFAULT_PV) -> QuadratureResult:
    """Thermal-photon part of the fluctuation shift; exactly 0 at ``tau = inf``."""
    _check_point(zeta, tau)
    if math.isinf(tau):
        return QuadratureResult(0.0, 0.0)

    def full(k):
        return k**3 / (1.0 - k * k) * g_kernel(2.0 * k * zeta) * bose_factor(k, tau)

    def odd(k):
        return -(k**3) / (k + 1.0) * g_kernel(2.0 * k * zeta) * bose_factor(k, tau)

    stop = _THERMAL_CUT / tau
    if stop > pv.pole_location - pv.window_half_width:
        stop = max(stop, pv.pole_location + pv.window_half_width)
    return _converge(
        "fr_thermal",
        lambda inner: _wall_integral(full, odd, zeta, inner, pv, damped_stop=stop),
        tol, abs_tol)


def components(zeta: float, tau: float = math.inf, tol: float = DEFAULT_TOL,
               abs_tol: float = 0.0, pv: PvSpec = DEFAULT_PV):
    """The three components (fr_vacuum, fr_thermal, rr) as quadrature results."""
    _check_point(zeta, tau)
    return (v_fr_vacuum(zeta, tol, abs_tol, pv),
            v_fr_thermal(zeta, tau, tol, abs_tol, pv),
            v_rr(zeta, tol, abs_tol, pv))


def _assemble(kind: str, zeta, tau, tol, abs_tol, pv) -> ReducedPotential:
    w = weights(tau)
    coeff = {
        # (fr_vacuum, fr_thermal, rr)
        "ground": (1.0, 1.0, 1.0),
        "excited": (-1.0, -1.0, 1.0),
        "average": (w.tanh_weight, w.tanh_weight, w.tanh_weight + 2.0 * w.p_excited),
    }[kind]
    fv, ft, rr = components(zeta, tau, tol, 0.0, pv)
    for attempt in range(4):
        total = coeff[0] * fv.value + coeff[1] * ft.value + coeff[2] * rr.value
        err = sum(abs(c) * r.abs_error_estimate for c, r in zip(coeff, (fv, ft, rr)))
        target = max(tol * abs(total), abs_tol)
        if err <= target:
            break
        if attempt == 3:
            # round-off limited components carry an honest estimate; anything else fails
            if not any(r.diagnostics.get("roundoff_limited") for r in (fv, ft, rr)):
                raise ComponentError(kind, f"assembled error {err:.3g} above target {target:.3g}")
            break
        # components cancel; tighten each to its share of the assembled target
        share = 0.25 * target

        def rel(c, r):
            return min(tol, max(share / max(abs(c * r.value), 1e-300), 1e-15))

        fv, ft, rr = (v_fr_vacuum(zeta, rel(coeff[0], fv), 0.0, pv),
                      v_fr_thermal(zeta, tau, rel(coeff[1], ft), 0.0, pv),
                      v_rr(zeta, rel(coeff[2], rr), 0.0, pv))
    return ReducedPotential(total, fv.value, ft.value, rr.value, err, zeta, tau, kind)


def v_ground(zeta: float, tau: float = math.inf, tol: float = DEFAULT_TOL,
             abs_tol: float = 0.0, pv: PvSpec = DEFAULT_PV) -> ReducedPotential:
    """Ground-level potential fr_vacuum + fr_thermal + rr."""
    _check_point(zeta, tau)
    return _assemble("ground", zeta, tau, tol, abs_tol, pv)


def v_excited(zeta: float, tau: float = math.inf, tol: float = DEFAULT_TOL,
              abs_tol: float = 0.0, pv: PvSpec = DEFAULT_PV) -> ReducedPotential:
    """Excited-level potential: fluctuation part flips sign, reaction part does not."""
    _check_point(zeta, tau)
    return _assemble("excited", zeta, tau, tol, abs_tol, pv)


def v_total(zeta: float, tau: float = math.inf, tol: float = DEFAULT_TOL,
            abs_tol: float = 0.0, pv: PvSpec = DEFAULT_PV) -> ReducedPotential:
    """Population-averaged potential tanh(tau/2) v_g + 2 p_e v_rr.

    Examples
    --------
    >>> round(v_total(0.005, 1000.0).total * 8 * 0.005**3, 2)
    -1.0
    """
    _check_point(zeta, tau)
    return _assemble("average", zeta, tau, tol, abs_tol, pv)
