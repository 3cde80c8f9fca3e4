"""Finite-temperature Casimir-Polder potential of a two-level atom near a perfect mirror."""
from .units import (CODATA2018, AtomSpec, DomainError, PhysicalConstants, ReducedPoint,
                    ThermalSpec, potential_si, reduce)
from .kernels import PoleError, alpha_minus_hat, alpha_plus_hat, bose_factor, g_kernel
from .quadrature import (ConvergenceError, PvSpec, QuadratureResult, abel_regularized,
                         integrate_adaptive, oscillatory_tail, pv_integrate)
from .potential import (ComponentError, PopulationWeights, ReducedPotential, v_excited,
                        v_fr_thermal, v_fr_vacuum, v_g_vacuum, v_ground, v_rr, v_total, weights)
from .asymptotics import (Regime, RegimeReport, SlabSpec, classify_regime, clausius_mossotti,
                          delta_v_percent, f_theta, slab_force_per_area, v_cp, v_highT,
                          v_lifshitz, v_london)

__version__ = "0.1.0"
