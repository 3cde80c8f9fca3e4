# %% [markdown]
# # Dilute dielectric slab
#
# Summing the atom-wall potential over a dilute half-space gives a force per
# area proportional to (eps - 1)/(eps + 2).  Pairwise summation ignores
# non-additivity, so this is a dilute-medium estimate.

# %%
from cpthermal import SlabSpec, clausius_mossotti, slab_force_per_area
from cpthermal.asymptotics import delta_f_percent, slab_force_lifshitz, theta_of

omega0 = 2.41e15
slab = SlabSpec.from_density(alpha0=4.7e-29, number_density=1e27)
print(f"eps from Clausius-Mossotti: {slab.epsilon:.6f}")

for T in (300.0, 3000.0, 30000.0):
    F = slab_force_per_area(1e-6, T, slab, omega0)
    FL = slab_force_lifshitz(1e-6, T, slab)
    print(f"T={T:7g} K theta={theta_of(T, omega0):.3e}  F={F: .4e} N/m^2"
          f"  F_Lif={FL: .4e}  dF%={delta_f_percent(1e-6, T, slab, omega0):.3e}")

# %% [markdown]
# A vacuum slab exerts no force, and a dense medium is refused.

# %%
print(slab_force_per_area(1e-6, 300.0, SlabSpec(1.0), omega0))
try:
    clausius_mossotti(4.7e-29, 1e28)
except ValueError as exc:
    print(type(exc).__name__, exc)
