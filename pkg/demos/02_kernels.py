# %% [markdown]
# # Kernels
#
# The wall kernel G(x) = sin x / x + 2 cos x / x**2 - 2 sin x / x**3 loses all
# its digits to cancellation as x -> 0, where it behaves like x**2 / 15.  The
# package switches to a Taylor series below x = 1e-2 and evaluates the direct
# form in extended precision for x < 1.

# %%
import numpy as np

from cpthermal import alpha_minus_hat, alpha_plus_hat, bose_factor, g_kernel
from cpthermal.kernels import g_kernel_eval

for x in (1e-6, 1e-3, 1e-2, 0.5, 10.0):
    ev = g_kernel_eval(x)
    print(f"G({x:g}) = {ev.value: .15e}  [{ev.branch.name}]  x^2/15 = {x * x / 15: .6e}")

# %% [markdown]
# The two reduced polarizabilities each have a simple pole at kappa = 1.
# Their sum is pole free.

# %%
k = np.array([0.0, 0.5, 0.99, 1.01, 2.0, 10.0])
print(np.column_stack([k, alpha_plus_hat(k), alpha_minus_hat(k),
                       alpha_plus_hat(k) + alpha_minus_hat(k), 1 / (1 + k)]))

# %% [markdown]
# The doubled Bose factor 2 / (exp(kappa tau) - 1) vanishes at zero temperature.

# %%
print(bose_factor(np.array([0.1, 1.0, 10.0]), 2.0), bose_factor(1.0, np.inf))
print(g_kernel(np.linspace(0, 20, 5)))
