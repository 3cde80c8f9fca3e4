"""Closed-form regime formulas and the dilute-slab force.

Reduced potentials here share the scaling of :mod:`cpthermal.potential`,
``v = V / (hbar c alpha0 k0**4)``.

The slab force is the closed form obtained by pairwise summation of the
atom-wall potential over a dilute dielectric.  Pairwise summation ignores
the non-additivity of dispersion forces, so for dense media the true force
may differ; the formula is implemented as stated, not re-derived.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .units import CODATA2018, DomainError, PhysicalConstants, ThermalSpec

__all__ = [
    "THRESHOLD",
    "F_SERIES_THETA",
    "Regime",
    "RegimeReport",
    "SlabSpec",
    "NonDiluteError",
    "v_london",
    "v_cp",
    "f_theta",
    "v_highT",
    "v_lifshitz",
    "delta_v_percent",
    "classify_regime",
    "theta_of",
    "slab_force_per_area",
    "slab_force_lifshitz",
    "delta_f_percent",
    "clausius_mossotti",
    "polarizability_from_epsilon",
]

# "much less than" is read as one decade
THRESHOLD = 10.0
# above this theta, tanh(1/theta) is replaced by its Taylor series
F_SERIES_THETA = 1e3


def _positive(name, x):
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")


def _theta_ok(theta):
    if not theta >= 0:
        raise DomainError(f"theta must be >= 0, got {theta!r}")


def v_london(zeta: float) -> float:
    """Unretarded London-van der Waals potential -1/(8 zeta**3)."""
    _positive("zeta", zeta)
    return -1.0 / (8.0 * zeta**3)


def v_cp(zeta: float) -> float:
    """Retarded zero-temperature Casimir-Polder potential -3/(8 pi zeta**4)."""
    _positive("zeta", zeta)
    return -3.0 / (8.0 * math.pi * zeta**4)


def f_theta(theta: float) -> float:
    """Crossover function f(theta) = theta tanh(1/theta).

    Rises from f(0) = 0 to 1 as theta grows.  For ``theta > 1e3`` the series
    1 - 1/(3 theta**2) + 2/(15 theta**4) is used.

    Examples
    --------
    >>> round(f_theta(1.0), 7)
    0.7615942
    """
    _theta_ok(theta)
    if theta == 0:
        return 0.0
    if math.isinf(theta):
        return 1.0
    if theta > F_SERIES_THETA:
        u = 1.0 / (theta * theta)
        return 1.0 - u / 3.0 + 2.0 * u * u / 15.0
    return theta * math.tanh(1.0 / theta)


def v_highT(zeta: float, theta: float) -> float:
    """Thermal potential beyond the thermal length, -f(theta)/(8 zeta**3)."""
    _positive("zeta", zeta)
    return -f_theta(theta) / (8.0 * zeta**3)


def v_lifshitz(zeta: float, theta: float) -> float:
    """Lifshitz large-distance limit -theta/(8 zeta**3), i.e. -kB T alpha0 / (4 z**3)."""
    _positive("zeta", zeta)
    _theta_ok(theta)
    if math.isinf(theta):
        raise DomainError("v_lifshitz is unbounded at theta = inf")
    return -theta / (8.0 * zeta**3)


def delta_v_percent(theta: float) -> float:
    """Percent discrepancy 100 |1 - V_Lif / V| between the Lifshitz and thermal forms.

    Equal to 100 (coth(1/theta) - 1) = 200 / (exp(2/theta) - 1); tends to 0 as
    theta -> 0.
    """
    _theta_ok(theta)
    if theta == 0:
        return 0.0
    if math.isinf(theta):
        return math.inf
    y = 2.0 / theta
    if y > 700.0:
        return 200.0 * math.exp(-y)
    return 200.0 / math.expm1(y)


class Regime(str, enum.Enum):
    LONDON = "London"
    CASIMIR_POLDER = "CasimirPolder"
    LIFSHITZ_HIGH_T = "LifshitzHighT"
    CROSSOVER = "Crossover"


@dataclass(frozen=True)
class RegimeReport:
    regime: Regime
    asymptotic_value: float
    conditions: str


def classify_regime(zeta: float, tau: float) -> RegimeReport:
    """Assign (zeta, tau) to one asymptotic regime with a one-decade margin.

    London
        zeta <= 0.1 and tau >= 10 max(1, zeta)
    CasimirPolder
        10 <= zeta <= tau / 10
    LifshitzHighT
        zeta >= tau with either tau >= 10 (low T) or tau <= 0.1 (high T)

    Points matching none of these are ``Crossover`` with value 0.

    Examples
    --------
    >>> classify_regime(50.0, 1e5).regime.value
    'CasimirPolder'
    """
    _positive("zeta", zeta)
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    c = THRESHOLD
    theta = 0.0 if math.isinf(tau) else 2.0 / tau
    if zeta <= 1.0 / c and tau >= c * max(1.0, zeta):
        return RegimeReport(Regime.LONDON, v_london(zeta),
                            f"zeta <= {1 / c:g} and tau >= {c:g}*max(1, zeta)")
    if c <= zeta <= tau / c:
        return RegimeReport(Regime.CASIMIR_POLDER, v_cp(zeta), f"{c:g} <= zeta <= tau/{c:g}")
    if zeta >= tau and tau >= c:
        return RegimeReport(Regime.LIFSHITZ_HIGH_T, v_highT(zeta, theta),
                            f"tau >= {c:g} and zeta >= tau")
    if zeta >= tau and tau <= 1.0 / c:
        return RegimeReport(Regime.LIFSHITZ_HIGH_T, v_highT(zeta, theta),
                            f"tau <= {1 / c:g} and zeta >= tau")
    return RegimeReport(Regime.CROSSOVER, 0.0, "none")


class NonDiluteError(DomainError):
    """4 pi alpha0 N / 3 >= 1: the Clausius-Mossotti inverse has no dilute solution."""


@dataclass(frozen=True)
class SlabSpec:
    """Dielectric half-space facing the atom.

    Parameters
    ----------
    epsilon : float
        Relative dielectric constant, >= 1.
    number_density : float, optional
        Particles per m**3, only needed to recover alpha0 from epsilon.
    """

    epsilon: float
    number_density: float | None = None

    def __post_init__(self):
        if not (self.epsilon >= 1 and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be >= 1, got {self.epsilon!r}")
        if self.number_density is not None and not self.number_density >= 0:
            raise DomainError(f"number_density must be >= 0, got {self.number_density!r}")

    @property
    def cm_factor(self) -> float:
        """(eps - 1) / (eps + 2), in [0, 1)."""
        return (self.epsilon - 1.0) / (self.epsilon + 2.0)

    @classmethod
    def from_density(cls, alpha0: float, number_density: float) -> "SlabSpec":
        return cls(clausius_mossotti(alpha0, number_density), number_density)


def theta_of(T: ThermalSpec | float, omega0: float,
             constants: PhysicalConstants = CODATA2018) -> float:
    """theta = 2 kB T / (hbar omega0)."""
    temp = T.temperature if isinstance(T, ThermalSpec) else float(T)
    if not (temp >= 0 and math.isfinite(temp)):
        raise DomainError(f"temperature must be >= 0, got {temp!r}")
    _positive("omega0", omega0)
    return 2.0 * constants.k_B * temp / (constants.hbar * omega0)


def slab_force_per_area(a: float, T: ThermalSpec | float, slab: SlabSpec, omega0: float,
                        constants: PhysicalConstants = CODATA2018) -> float:
    """Force per area -(3 hbar omega0 / 32 pi) f(theta) / a**3 (eps-1)/(eps+2), in N/m**2."""
    _positive("a", a)
    f = f_theta(theta_of(T, omega0, constants))
    # + 0.0 turns the -0.0 of a vacuum slab into 0.0
    return -3.0 * constants.hbar * omega0 / (32.0 * math.pi) * f / a**3 * slab.cm_factor + 0.0


def slab_force_lifshitz(a: float, T: ThermalSpec | float, slab: SlabSpec,
                        constants: PhysicalConstants = CODATA2018) -> float:
    """Lifshitz slab force -3 kB T (eps-1) / (16 pi (eps+2) a**3), in N/m**2."""
    _positive("a", a)
    temp = T.temperature if isinstance(T, ThermalSpec) else float(T)
    if not (temp >= 0 and math.isfinite(temp)):
        raise DomainError(f"temperature must be >= 0, got {temp!r}")
    return -3.0 * constants.k_B * temp * slab.cm_factor / (16.0 * math.pi * a**3) + 0.0


def delta_f_percent(a: float, T: ThermalSpec | float, slab: SlabSpec, omega0: float,
                    constants: PhysicalConstants = CODATA2018) -> float:
    """Percent discrepancy 100 |1 - F_Lif / F| between the two slab forces.

    The ratio F_Lif / F is theta / f(theta) = coth(1/theta) for any slab, so
    the common factor (eps-1)/(eps+2) and the distance drop out and a vacuum
    slab gets the limiting value.  The residual 1 - coth(1/theta) is
    evaluated as -2 / expm1(2/theta); forming it from the two forces loses
    about 2/(theta ln 10) digits to cancellation at small theta.
    """
    _positive("a", a)
    _positive("omega0", omega0)
    return delta_v_percent(theta_of(T, omega0, constants))


def clausius_mossotti(alpha0: float, number_density) -> float:
    """Dielectric constant of a dilute medium, eps = (1 + 2q)/(1 - q), q = 4 pi alpha0 N / 3."""
    _positive("alpha0", alpha0)
    n = np.asarray(number_density, dtype=float)
    if np.any(n < 0) or np.any(~np.isfinite(n)):
        raise DomainError("number_density must be >= 0 and finite")
    q = 4.0 * math.pi * alpha0 * n / 3.0
    if np.any(q >= 1):
        raise NonDiluteError(f"4 pi alpha0 N / 3 = {float(np.max(q)):.3g} >= 1")
    out = (1.0 + 2.0 * q) / (1.0 - q)
    return float(out) if np.ndim(number_density) == 0 else out


def polarizability_from_epsilon(epsilon: float, number_density: float) -> float:
    """Inverse Clausius-Mossotti: alpha0 = 3 (eps-1) / (4 pi N (eps+2))."""
    _positive("number_density", number_density)
    return 3.0 * SlabSpec(epsilon).cm_factor / (4.0 * math.pi * number_density)
