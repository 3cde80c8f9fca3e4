"""Physical constants and the SI <-> dimensionless reduction.

Every integral in this package is evaluated in reduced variables

    zeta  = k0 * z           (distance in units of the reduced transition wavelength)
    tau   = k0 * lambda_T    (inverse temperature, lambda_T = hbar c / kB T)
    theta = 2 / tau          (= 2 kB T / hbar omega0)

and a reduced potential ``v`` is converted back to an energy with
``V = hbar c alpha0 k0**4 v``.  With this scaling the London limit reads
``v = -1/(8 zeta**3)``.

Units
-----
The potential formulas use a polarizability *volume* ``alpha0`` (m**3), the
Gaussian-style convention.  A polarizability given in SI units (C m**2 / V)
must be divided by ``4 pi eps0`` first; :meth:`AtomSpec.from_si_polarizability`
does exactly that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "PhysicalConstants",
    "CODATA2018",
    "EPSILON0",
    "AtomSpec",
    "ThermalSpec",
    "ReducedPoint",
    "reduce",
    "potential_si",
]


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34  # J s
    c: float = 299792458.0  # m / s
    k_B: float = 1.380649e-23  # J / K

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c


CODATA2018 = PhysicalConstants()

# vacuum permittivity, only needed to convert SI polarizabilities
EPSILON0 = 8.8541878128e-12  # F / m


@dataclass(frozen=True)
class AtomSpec:
    """Two-level atom: angular transition frequency and static polarizability.

    Parameters
    ----------
    omega0 : float
        Angular transition frequency in rad/s.
    alpha0 : float
        Static polarizability volume in m**3.
    """

    omega0: float
    alpha0: float
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if not (self.omega0 > 0 and math.isfinite(self.omega0)):
            raise DomainError(f"omega0 must be positive and finite, got {self.omega0!r}")
        if not (self.alpha0 > 0 and math.isfinite(self.alpha0)):
            raise DomainError(f"alpha0 must be positive and finite, got {self.alpha0!r}")

    @property
    def k0(self) -> float:
        """Transition wavenumber omega0 / c in 1/m."""
        return self.omega0 / self.constants.c

    @classmethod
    def from_si_polarizability(cls, omega0: float, alpha_si: float) -> "AtomSpec":
        """Build from a polarizability in C m**2 / V."""
        return cls(omega0, alpha_si / (4.0 * math.pi * EPSILON0))


@dataclass(frozen=True)
class ThermalSpec:
    """Temperature of the field reservoir in kelvin (0 allowed)."""

    temperature: float
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if not (self.temperature >= 0 and math.isfinite(self.temperature)):
            raise DomainError(f"temperature must be >= 0, got {self.temperature!r}")

    @property
    def thermal_length(self) -> float:
        """lambda_T = hbar c / (kB T) in m; +inf at T = 0."""
        if self.temperature == 0:
            return math.inf
        return self.constants.hbar_c / (self.constants.k_B * self.temperature)


@dataclass(frozen=True)
class ReducedPoint:
    """Dimensionless evaluation point (zeta, tau, theta) with theta * tau = 2."""

    zeta: float
    tau: float
    theta: float

    def __post_init__(self):
        if not (self.zeta > 0 and math.isfinite(self.zeta)):
            raise DomainError(f"zeta must be positive and finite, got {self.zeta!r}")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive (inf allowed), got {self.tau!r}")

    @classmethod
    def from_zeta_tau(cls, zeta: float, tau: float) -> "ReducedPoint":
        tau = float(tau)
        theta = 0.0 if math.isinf(tau) else 2.0 / tau
        return cls(float(zeta), tau, theta)

    @classmethod
    def from_zeta_theta(cls, zeta: float, theta: float) -> "ReducedPoint":
        theta = float(theta)
        if not theta >= 0:
            raise DomainError(f"theta must be >= 0, got {theta!r}")
        tau = math.inf if theta == 0 else 2.0 / theta
        return cls(float(zeta), tau, theta)


def reduce(atom: AtomSpec, z: float, T: ThermalSpec | float) -> ReducedPoint:
    """Map a physical configuration (atom, distance z in m, temperature) to reduced form."""
    if not isinstance(T, ThermalSpec):
        T = ThermalSpec(float(T), atom.constants)
    if not (z > 0 and math.isfinite(z)):
        raise DomainError(f"distance z must be positive, got {z!r}")
    k0 = atom.k0
    return ReducedPoint.from_zeta_tau(k0 * z, k0 * T.thermal_length)


def potential_si(atom: AtomSpec, v: float) -> float:
    """Convert a reduced potential to joules: hbar c alpha0 k0**4 v."""
    if not math.isfinite(v):
        raise DomainError(f"reduced potential must be finite, got {v!r}")
    scale = atom.constants.hbar_c * atom.alpha0 * atom.k0**4
    out = scale * v
    if not math.isfinite(out):
        raise OverflowError(f"energy overflow converting v={v!r} with scale {scale!r}")
    return out
