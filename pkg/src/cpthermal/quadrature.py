"""Adaptive quadrature, principal values and oscillatory tails.

The building block is a vectorised 21-point Gauss-Kronrod rule applied to
many panels at once.  Integrands must accept numpy arrays of any shape and
return arrays of the same shape.

Tails of the form ``A(x) sin(w x) + B(x) cos(w x)`` with slowly varying (and
possibly polynomially growing) ``A``, ``B`` are summed lobe by lobe between
the zeros of the dominant oscillation.  The alternating partial sums are
accelerated by iterated averaging (the Euler transform), which assigns the
Abel value to integrals whose lobes grow like a power of the lobe index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.stats import binom

from .units import DomainError

__all__ = [
    "ConvergenceError",
    "QuadratureResult",
    "PvSpec",
    "integrate_adaptive",
    "pv_integrate",
    "oscillatory_tail",
    "abel_regularized",
    "damped_tail",
    "euler_average",
    "richardson_zero",
]

Integrand = Callable[[np.ndarray], np.ndarray]

_EPS = np.finfo(float).eps
# Abel dampings in units of 1 / oscillation period
_DEFAULT_ETAS = (1e-1, 3e-2, 1e-2, 3e-3)
_TINY = np.finfo(float).tiny

# Kronrod 21-point abscissae (positive half, descending) and weights; the
# odd-indexed abscissae are the 10-point Gauss nodes.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980184855,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# full symmetric node set on [-1, 1] and matching weight vectors
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
for _i, _w in zip(range(1, 10, 2), _WG):
    GAUSS_WEIGHTS[_i] = _w
    GAUSS_WEIGHTS[20 - _i] = _w


class ConvergenceError(ArithmeticError):
    """A quadrature did not reach its tolerance; ``best`` holds the last estimate."""

    def __init__(self, message: str, best: "QuadratureResult | None" = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    panels_used: int = 0
    acceleration_terms: int = 0
    regularization_etas: tuple = ()
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.panels_used + other.panels_used,
            self.acceleration_terms + other.acceleration_terms,
            self.regularization_etas + other.regularization_etas,
            {**self.diagnostics, **other.diagnostics},
        )

    def scaled(self, factor: float) -> "QuadratureResult":
        return replace(self, value=self.value * factor,
                       abs_error_estimate=self.abs_error_estimate * abs(factor))


@dataclass(frozen=True)
class PvSpec:
    """Symmetric principal-value window [pole - delta, pole + delta]."""

    pole_location: float = 1.0
    window_half_width: float = 0.5

    def __post_init__(self):
        if not 0 < self.window_half_width < self.pole_location:
            raise DomainError(
                "PV window must satisfy 0 < delta < pole_location, got "
                f"delta={self.window_half_width!r}, pole={self.pole_location!r}")


def _gk21(f: Integrand, a: np.ndarray, b: np.ndarray):
    """Apply the Gauss-Kronrod pair to each panel [a_i, b_i].

    Returns (value, error, resabs) arrays, with the QUADPACK error heuristic.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = np.asarray(f(c[:, None] + h[:, None] * NODES[None, :]), dtype=float)
    if y.shape != (a.size, NODES.size):
        y = np.broadcast_to(y, (a.size, NODES.size))
    if not np.all(np.isfinite(y)):
        raise DomainError("integrand returned a non-finite value")
    resk = y @ KRONROD_WEIGHTS
    resg = y @ GAUSS_WEIGHTS
    resabs = np.abs(y) @ KRONROD_WEIGHTS
    resasc = np.abs(y - 0.5 * resk[:, None]) @ KRONROD_WEIGHTS
    ah = np.abs(h)
    err = np.abs((resk - resg) * h)
    resabs *= ah
    resasc *= ah
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0) & (err > 0), scaled, err)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return resk * h, err, resabs


def _refine(f: Integrand, a, b, rtol: float, atol: float, max_panels: int):
    """Locally adaptive bisection over a batch of initial panels.

    A panel is accepted when its error estimate is below
    ``max(rtol * resabs, atol * width / total_width)`` or sits at the
    round-off floor.  Per initial panel, returns the value, the truncation
    error, the round-off error (panels accepted at the floor) and
    ``int |f|``, followed by the number of rule applications and a success flag.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    n0 = a.size
    owner = np.arange(n0)
    total_width = float(np.sum(np.abs(b - a))) or 1.0
    values, trunc, rnd, l1 = (np.zeros(n0) for _ in range(4))
    used = 0
    ok = True
    while a.size:
        v, e, ra = _gk21(f, a, b)
        used += a.size
        width = np.abs(b - a)
        budget = np.maximum(rtol * ra, atol * width / total_width)
        floor = e <= 50.0 * _EPS * ra * 1.0001
        tiny = width <= 1e-13 * np.maximum(np.abs(a), np.abs(b))
        done = (e <= budget) | floor | tiny
        if used + 2 * np.count_nonzero(~done) > max_panels:
            # out of budget: keep the current estimates of unfinished panels
            done[:] = True
            ok = False
        np.add.at(values, owner[done], v[done])
        np.add.at(trunc, owner[done & ~floor], e[done & ~floor])
        np.add.at(rnd, owner[done & floor], e[done & floor])
        np.add.at(l1, owner[done], ra[done])
        keep = ~done
        a, b, owner = a[keep], b[keep], owner[keep]
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
        owner = np.concatenate([owner, owner])
    return values, trunc, rnd, l1, used, ok


def integrate_adaptive(f: Integrand, a: float, b: float, tol: float = 1e-8,
                       abs_tol: float = 0.0, points: Sequence[float] | None = None,
                       max_panels: int = 200_000) -> QuadratureResult:
    """Integrate ``f`` over [a, b] by adaptive Gauss-Kronrod bisection.

    Parameters
    ----------
    f : callable
        Vectorised integrand.
    a, b : float
        Finite limits with a < b.
    tol : float
        Target relative error.
    abs_tol : float
        Absolute error floor; the target is ``max(tol * |I|, abs_tol)``.
    points : sequence of float, optional
        Initial breakpoints inside (a, b), e.g. zeros of an oscillation.

    The target never drops below ``100 eps int |f|``, the round-off floor of
    the rule.

    Raises
    ------
    ConvergenceError
        If the target is not met within ``max_panels`` rule applications.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"integrate_adaptive needs finite a < b, got [{a}, {b}]")
    edges = np.array([a, b]) if points is None else np.unique(
        np.concatenate([[a, b], np.asarray(points, dtype=float)]))
    edges = edges[(edges >= a) & (edges <= b)]
    lo, hi = edges[:-1], edges[1:]
    rtol = min(tol, 1e-3) * 0.1
    used = 0
    while True:
        vals, trunc, rnd, l1, n, ok = _refine(f, lo, hi, rtol, 0.1 * abs_tol, max_panels)
        used += n
        value, err = float(vals.sum()), float(trunc.sum() + rnd.sum())
        # nothing below the round-off floor of the rule can be resolved
        target = max(tol * abs(value), abs_tol, 100.0 * _EPS * float(l1.sum()))
        res = QuadratureResult(value, err, n)
        if err <= target:
            return res
        if not ok or rtol < 1e-15:
            raise ConvergenceError(
                f"integrate_adaptive: error {err:.3g} above target {target:.3g} "
                f"after {used} panels", res)
        # the local criterion was too lax for the net (cancelling) integral
        rtol *= 1e-2


def pv_integrate(h: Integrand, spec: PvSpec = PvSpec(), tol: float = 1e-8,
                 abs_tol: float = 0.0, points: Sequence[float] | None = None
                 ) -> QuadratureResult:
    """Principal value of ``h(x) / (x - x0)`` over the window ``x0 -/+ delta``.

    Evaluated as ``int_0^delta [h(x0 + s) - h(x0 - s)] / s ds``, whose integrand
    extends continuously to ``2 h'(x0)`` at ``s = 0``.  Gauss-Kronrod nodes
    never touch ``s = 0``.  ``points`` are optional breakpoints in ``s``.
    """
    x0, delta = spec.pole_location, spec.window_half_width

    def odd_part(s):
        return (h(x0 + s) - h(x0 - s)) / s

    # the subtraction leaves ~eps |h| / s of noise, ~eps |h| log(delta / s) once
    # integrated; it is invisible to the rule, so it enters as an absolute floor
    s_probe = delta * (0.5 + 0.5 * _XGK)
    h_max = float(np.max(np.abs(np.concatenate([h(x0 + s_probe), h(x0 - s_probe)]))))
    abs_tol = max(abs_tol, 100.0 * _EPS * h_max)
    res = integrate_adaptive(odd_part, 0.0, delta, tol, abs_tol, points=points)
    return replace(res, diagnostics={"pv_window": (x0 - delta, x0 + delta)})


def euler_average(partial_sums: Sequence[float]):
    """Iterated averaging of partial sums (Euler transform).

    Returns ``(estimate, error)``, the top of the averaging triangle and the
    spread of the two entries it was built from.
    """
    row = np.asarray(partial_sums, dtype=float)
    if row.size == 1:
        return float(row[0]), math.inf
    while row.size > 2:
        row = 0.5 * (row[:-1] + row[1:])
    return float(0.5 * (row[0] + row[1])), float(abs(row[1] - row[0]))


def _lobes(f: Integrand, first: float, spacing: float, n_start: int, count: int,
           rtol: float, atol: float, max_panels: int):
    k = np.arange(n_start, n_start + count, dtype=float)
    lo = first + k * spacing
    vals, trunc, rnd, _, used, ok = _refine(f, lo, lo + spacing, rtol, atol * count,
                                            max_panels)
    if not ok:
        raise ConvergenceError("lobe integration exceeded its panel budget")
    return vals, trunc, rnd, used


def _combine_errors(trunc, rnd, weights=None):
    # truncation errors add linearly, round-off errors in quadrature
    if weights is not None:
        trunc, rnd = trunc * weights, rnd * weights
    return float(np.sum(trunc)) + float(np.sqrt(np.sum(rnd * rnd)))


def _alternating(lobes: np.ndarray) -> bool:
    tail = lobes[len(lobes) // 4:]
    scale = np.max(np.abs(tail)) if tail.size else 0.0
    if scale == 0.0:
        return False
    sig = tail[np.abs(tail) > 1e-12 * scale]
    return sig.size >= 4 and bool(np.all(sig[:-1] * sig[1:] < 0))


def oscillatory_tail(f: Integrand, period_scale: float, start: float, tol: float = 1e-8,
                     abs_tol: float = 0.0, min_lobes: int = 24, max_lobes: int = 1536,
                     max_panels: int = 500_000) -> QuadratureResult:
    """Abel value of ``int_start^inf f`` for an asymptotically oscillating ``f``.

    Parameters
    ----------
    f : callable
        Vectorised integrand whose dominant oscillation has zeros on the
        lattice ``n * period_scale``.
    period_scale : float
        Spacing of consecutive zeros of the dominant oscillation.
    start : float
        Lower limit.  The stretch up to the first lattice zero is integrated
        adaptively, after which lobes between lattice zeros are summed and
        accelerated.

    Notes
    -----
    If the lobes do not alternate in sign the integral is handed to
    :func:`abel_regularized` and ``diagnostics["fallback"]`` is set.
    """
    if not period_scale > 0:
        raise DomainError("period_scale must be positive")
    n_first = math.ceil(start / period_scale - 1e-12)
    first = n_first * period_scale
    head = QuadratureResult(0.0, 0.0)
    inner = max(min(tol * 1e-3, 1e-10), 1e-14)
    if first > start:
        head = integrate_adaptive(f, start, first, inner, 0.1 * abs_tol,
                                  max_panels=max_panels)
        head = replace(head, abs_error_estimate=max(
            head.abs_error_estimate, 8 * _EPS * abs(head.value)))

    count = min_lobes
    lobes, ltr, lrn, used = _lobes(f, first, period_scale, 0, count, inner, 0.0,
                                   max_panels)
    while True:
        if not _alternating(lobes):
            res = abel_regularized(f, start=start, tol=max(tol, 1e-6), abs_tol=abs_tol,
                                   period_scale=period_scale)
            return replace(res, diagnostics={**res.diagnostics, "fallback": True})
        sums = head.value + np.cumsum(lobes)
        est, spread = euler_average(sums)
        # partial sum S_j enters with binomial weight w_j; lobe i sits in every
        # S_j with j >= i
        reach = binom.sf(np.arange(count) - 1, count - 1, 0.5)
        qerr = _combine_errors(ltr, lrn, reach) + head.abs_error_estimate
        qerr = max(qerr, 16 * _EPS * float(np.max(np.abs(sums))))
        err = spread + qerr
        # once the averaging spread is below the quadrature noise, more lobes
        # cannot help
        target = max(tol * abs(est), abs_tol)
        if spread <= max(target, qerr) or count >= max_lobes:
            res = QuadratureResult(est, err, head.panels_used + used, count, (),
                                   {"fallback": False, "lobes": count, "spread": spread})
            if spread > max(target, qerr):
                raise ConvergenceError(
                    f"oscillatory_tail: error {err:.3g} above target {target:.3g} "
                    f"with {count} lobes", res)
            return res
        more, mtr, mrn, mused = _lobes(f, first, period_scale, count, count, inner, 0.0,
                                       max_panels)
        lobes = np.concatenate([lobes, more])
        ltr = np.concatenate([ltr, mtr])
        lrn = np.concatenate([lrn, mrn])
        used += mused
        count *= 2


def richardson_zero(etas: Sequence[float], values: Sequence[float]) -> float:
    """Value at eta = 0 of the polynomial through the points (Neville)."""
    x = list(map(float, etas))
    p = list(map(float, values))
    n = len(x)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (x[i] * p[i + 1] - x[i + m] * p[i]) / (x[i] - x[i + m])
    return p[0]


def _damped_integral(f: Integrand, eta: float, start: float, spacing: float,
                     rtol: float, max_panels: int):
    def g(x):
        return f(x) * np.exp(-eta * (x - start))

    chunk = 256
    total, trunc, rnd2, used, n = 0.0, 0.0, 0.0, 0, 0
    scale = 0.0
    while True:
        # far lobes are damped to nothing; hold them to an absolute accuracy
        # instead of a relative one their round-off cannot meet
        vals, tr, rn, u = _lobes(g, start, spacing, n, chunk, rtol, rtol * scale,
                                 max_panels)
        scale = max(scale, float(np.max(np.abs(vals))))
        total += float(vals.sum())
        trunc += float(tr.sum())
        rnd2 += float(np.sum(rn * rn))
        used += u
        n += chunk
        size = float(np.abs(vals).sum())
        if size <= 1e-17 * max(abs(total), _TINY) or eta * n * spacing > 745:
            return total, trunc + math.sqrt(rnd2), used
        chunk = min(2 * chunk, 1 << 16)


def abel_regularized(f: Integrand, etas: Sequence[float] | None = None, start: float = 0.0,
                     tol: float = 1e-6, abs_tol: float = 0.0, period_scale: float = math.pi,
                     max_panels: int = 5_000_000) -> QuadratureResult:
    """Abel-regularised ``int_start^inf f``.

    Computes ``I(eta) = int f(x) exp(-eta (x - start)) dx`` for each damping in
    ``etas`` and extrapolates to eta = 0 with the interpolating polynomial.
    The default dampings are ``(1e-1, 3e-2, 1e-2, 3e-3)`` divided by the
    oscillation period ``2 * period_scale``.  Smaller dampings reach lobes so
    far out that, for growing amplitudes, round-off in ``I(eta)`` outweighs
    the gain in extrapolation accuracy.

    Raises
    ------
    ConvergenceError
        If the extrapolation spread exceeds ``max(tol * |value|, abs_tol)``.
    """
    if etas is None:
        period = 2.0 * period_scale
        etas = tuple(c / period for c in _DEFAULT_ETAS)
    etas = tuple(float(e) for e in etas)
    if len(etas) < 2 or any(e <= 0 for e in etas) or any(
            e2 >= e1 for e1, e2 in zip(etas, etas[1:])):
        raise DomainError("etas must be a strictly decreasing sequence of positive dampings")
    vals, errs, used = [], [], 0
    for eta in etas:
        v, e, u = _damped_integral(f, eta, start, period_scale, 1e-12, max_panels)
        vals.append(v)
        errs.append(e)
        used += u
    value = richardson_zero(etas, vals)
    spread = abs(value - richardson_zero(etas[1:], vals[1:]))
    # the extrapolated value is linear in the I(eta); propagate through its weights
    weights = [richardson_zero(etas, np.eye(len(etas))[j]) for j in range(len(etas))]
    err = spread + sum(abs(w) * e for w, e in zip(weights, errs))
    res = QuadratureResult(value, err, used, 0, etas,
                           {"abel_values": tuple(vals), "fallback": False})
    target = max(tol * abs(value), abs_tol)
    if err > target:
        raise ConvergenceError(
            f"abel_regularized: spread {err:.3g} above target {target:.3g}", res)
    return res


def damped_tail(f: Integrand, start: float, stop: float, period_scale: float,
                tol: float = 1e-8, abs_tol: float = 0.0,
                max_panels: int = 2_000_000) -> QuadratureResult:
    """Plain adaptive integration of an exponentially damped tail on [start, stop].

    Breakpoints are seeded on the zero lattice of the oscillation so each
    initial panel holds at most one lobe.
    """
    if stop <= start:
        return QuadratureResult(0.0, 0.0)
    n_lobes = (stop - start) / period_scale
    step = period_scale * max(1, math.ceil(n_lobes / (max_panels // 8)))
    first = math.ceil(start / step) * step
    points = np.arange(first, stop, step)
    return integrate_adaptive(f, start, stop, tol, abs_tol, points=points,
                              max_panels=max_panels)
