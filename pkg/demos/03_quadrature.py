# %% [markdown]
# # Quadrature building blocks
#
# Three primitives carry the frequency integrals: adaptive Gauss-Kronrod on
# finite intervals, a symmetric principal value around a simple pole, and
# Abel-regularised tails for integrands that oscillate without decaying.

# %%
import math

import numpy as np
from scipy.special import shichi

from cpthermal import PvSpec, abel_regularized, integrate_adaptive, oscillatory_tail, pv_integrate

r = integrate_adaptive(np.sin, 0.0, math.pi, tol=1e-12)
print(f"int_0^pi sin = {r.value:.15f} +/- {r.abs_error_estimate:.1e} ({r.panels_used} panels)")

# %% [markdown]
# PV of exp(x) / (x - 1) over [0.5, 1.5] equals 2 e Shi(0.5).

# %%
pv = pv_integrate(np.exp, PvSpec(1.0, 0.5), tol=1e-12)
print(f"PV = {pv.value:.15f}, closed form {2 * math.e * shichi(0.5)[0]:.15f}")

# %% [markdown]
# A decaying oscillatory tail: int_1^inf sin(x) / x dx = pi/2 - Si(1).
# The lobe partial sums are accelerated by repeated Euler averaging.

# %%
from scipy.special import sici
t = oscillatory_tail(lambda x: np.sin(x) / x, math.pi, 1.0, tol=1e-10)
print(f"tail = {t.value:.12f}, exact {math.pi / 2 - sici(1.0)[0]:.12f}, "
      f"{t.acceleration_terms} lobes")

# %% [markdown]
# A tail that does not decay at all has only an Abel value:
# lim eta->0 of int_0^inf sin(x) exp(-eta x) dx is 1, and for x sin x it is 0.

# %%
for name, f, exact in (("sin x", np.sin, 1.0), ("x sin x", lambda x: x * np.sin(x), 0.0)):
    a = abel_regularized(f, tol=1e-6, abs_tol=1e-6)
    print(f"Abel int {name} = {a.value: .8f} (exact {exact}), etas {a.regularization_etas}")
