"""Scalar kernels entering the wall integrals.

All functions accept scalars or numpy arrays and return the same kind.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .units import DomainError

__all__ = [
    "PoleError",
    "X_SWITCH",
    "Branch",
    "KernelEval",
    "g_kernel",
    "g_kernel_eval",
    "alpha_plus_hat",
    "alpha_minus_hat",
    "bose_factor",
]

# below X_SWITCH the Maclaurin series of G is used
X_SWITCH = 1e-2
# the closed form is evaluated in extended precision below this argument,
# where its three terms cancel down to ~x**2 of their size
_X_EXTENDED = 1.0
_BOSE_SMALL = 1e-4

# G(x) = sum_n (-1)^n x^(2n) / ((2n)! (2n+3))
_G_SERIES = (1.0 / 3.0, -1.0 / 10.0, 1.0 / 168.0, -1.0 / 6480.0, 1.0 / 443520.0)


class PoleError(DomainError):
    """A polarizability factor was evaluated exactly on its pole kappa = 1."""


class Branch(enum.Enum):
    SERIES = "series"
    DIRECT = "direct"


@dataclass(frozen=True)
class KernelEval:
    value: float
    branch: Branch


def _scalar_out(x, out):
    return float(out) if np.ndim(x) == 0 else out


def _g_series(x):
    x2 = x * x
    acc = np.zeros_like(x) + _G_SERIES[-1]
    for c in _G_SERIES[-2::-1]:
        acc = acc * x2 + c
    return acc


def _g_direct(x):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    near = x < _X_EXTENDED
    if np.any(near):
        xl = x[near].astype(np.longdouble)
        s, c = np.sin(xl), np.cos(xl)
        out[near] = (s / xl + 2 * c / xl**2 - 2 * s / xl**3).astype(float)
    far = ~near
    if np.any(far):
        xf = x[far]
        s, c = np.sin(xf), np.cos(xf)
        out[far] = s / xf + 2 * c / xf**2 - 2 * s / xf**3
    return out


def g_kernel(x):
    """Wall geometry function G(x) = sin x/x + 2 cos x/x**2 - 2 sin x/x**3.

    G(0) = 1/3.  Arguments below ``X_SWITCH`` use the Maclaurin series; the
    closed form is used elsewhere.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(np.isnan(xa)):
        raise DomainError("g_kernel requires x >= 0")
    out = np.empty_like(xa)
    small = xa < X_SWITCH
    out[small] = _g_series(xa[small])
    out[~small] = _g_direct(xa[~small])
    return _scalar_out(x, out)


def g_kernel_eval(x: float) -> KernelEval:
    """Evaluate G at a scalar and report which branch was taken."""
    branch = Branch.SERIES if abs(x) < X_SWITCH else Branch.DIRECT
    return KernelEval(g_kernel(float(x)), branch)


def _check_kappa(kappa):
    k = np.asarray(kappa, dtype=float)
    if np.any(k < 0) or np.any(np.isnan(k)):
        raise DomainError("kappa must be >= 0")
    if np.any(k == 1.0):
        raise PoleError("kappa = 1 is the pole; use the principal-value machinery")
    return k


def alpha_plus_hat(kappa):
    """Reduced polarizability factor 1 / (1 - kappa**2) multiplying the field fluctuations."""
    k = _check_kappa(kappa)
    # (1 - k)(1 + k) keeps full relative accuracy next to the pole
    return _scalar_out(kappa, 1.0 / ((1.0 - k) * (1.0 + k)))


def alpha_minus_hat(kappa):
    """Reduced radiation-reaction factor kappa / (kappa**2 - 1)."""
    k = _check_kappa(kappa)
    return _scalar_out(kappa, k / ((k - 1.0) * (k + 1.0)))


def bose_factor(kappa, tau):
    """Thermal occupation 2 / (exp(kappa tau) - 1) = coth(kappa tau / 2) - 1.

    Zero at ``tau = inf`` (no thermal photons).
    """
    k = np.asarray(kappa, dtype=float)
    if np.any(k <= 0) or np.any(np.isnan(k)):
        raise DomainError("bose_factor requires kappa > 0")
    if not tau > 0:
        raise DomainError("bose_factor requires tau > 0")
    if np.isinf(tau):
        return _scalar_out(kappa, np.zeros_like(k))
    y = k * tau
    out = np.empty_like(y)
    small = y < _BOSE_SMALL
    ys = y[small]
    out[small] = 2.0 / ys - 1.0 + ys / 6.0
    yl = y[~small]
    e = np.exp(-yl)
    out[~small] = 2.0 * e / -np.expm1(-yl)
    return _scalar_out(kappa, out)
