# %% [markdown]
# # Asymptotic regimes
#
# The numerical potential reduces to four closed forms: London (-1/(8 zeta**3))
# close to the wall, Casimir-Polder (-3/(8 pi zeta**4)) in the retarded zone,
# and -f(theta)/(8 zeta**3) beyond the thermal length, which becomes the
# Lifshitz form -theta/(8 zeta**3) at high temperature.

# %%
import numpy as np

from cpthermal import classify_regime, delta_v_percent, f_theta, v_total

for zeta, tau in ((0.005, 1e3), (50.0, 1e5), (40.0, 20.0), (1.0, 0.01), (1.0, 2.0)):
    rep = classify_regime(zeta, tau)
    v = v_total(zeta, tau).total
    ratio = v / rep.asymptotic_value if rep.asymptotic_value else float("nan")
    print(f"({zeta:6g}, {tau:7g})  {rep.regime.value:14s} v={v: .6e}  v/asymptote={ratio:.5f}")

# %% [markdown]
# The crossover function f and the percent gap between the Lifshitz and the
# full thermal form.  These tables are what ``cpthermal fig1`` and
# ``cpthermal fig2`` write to CSV.

# %%
for theta in np.geomspace(0.01, 3, 7):
    print(f"theta={theta:7.4f}  f={f_theta(theta):.6f}  dV%={delta_v_percent(theta):.4e}")
