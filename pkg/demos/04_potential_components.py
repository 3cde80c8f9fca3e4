# %% [markdown]
# # The thermal potential and its pieces
#
# The population-averaged potential is built from three frequency integrals:
# the radiation-reaction part v_rr, which is temperature independent, and the
# vacuum and thermal field-fluctuation parts.  The ground and excited levels
# follow as rr + fr and rr - fr.

# %%
from cpthermal import v_fr_vacuum, v_g_vacuum, v_rr, v_total, weights

for zeta in (0.1, 1.0, 10.0):
    fr, rr, g = v_fr_vacuum(zeta), v_rr(zeta), v_g_vacuum(zeta)
    print(f"zeta={zeta:5g}  v_rr={rr.value: .10e}  v_fr={fr.value: .10e}"
          f"  sum={fr.value + rr.value: .10e}  pole-free v_g={g.value: .10e}")

# %% [markdown]
# The two routes to the zero-temperature ground level agree to quadrature
# accuracy.  At finite temperature the excited fraction is p = 1/(exp(tau) + 1).

# %%
for tau in (0.5, 2.0, 10.0, 1e3):
    r = v_total(1.0, tau)
    w = weights(tau)
    print(f"tau={tau:7g}  p_excited={w.p_excited:.3e}  v_total={r.total: .10e}"
          f"  ground={r.ground: .6e}  excited={r.excited: .6e}  err={r.abs_error_estimate:.1e}")

# %% [markdown]
# The excited-state admixture fades like exp(-tau): compare with the ground
# level at the same temperature.

# %%
import math
from cpthermal import v_ground
for tau in (10.0, 12.0, 14.0):
    d = abs(v_total(1.0, tau, 1e-10).total - v_ground(1.0, tau, 1e-10).total)
    print(f"tau={tau:4g}  |v_total - v_ground| = {d:.4e}  ratio to exp(-tau) = {d / math.exp(-tau):.4f}")
