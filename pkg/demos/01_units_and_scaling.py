# %% [markdown]
# # Reduced units
#
# Every potential in the package is computed in reduced form.  Distances are
# measured in units of the inverse transition wavenumber, zeta = k0 z, and the
# thermal wavelength in the same units gives tau = k0 hbar c / (kB T).  The
# energy scale is hbar c alpha0 k0**4.

# %%
from cpthermal import AtomSpec, ThermalSpec, potential_si, reduce, v_total

# A rubidium-like atom: D2 line near 780 nm, polarizability volume about 47 A^3
atom = AtomSpec(omega0=2.41e15, alpha0=4.7e-29)
print(f"k0 = {atom.k0:.4e} 1/m, 1/k0 = {1e9 / atom.k0:.1f} nm")

# %% [markdown]
# Room temperature has a thermal length of about 7.6 micrometres, so tau is
# large and the atom sits far inside the zero-temperature world.

# %%
T = ThermalSpec(300.0)
print(f"lambda_T = {T.thermal_length * 1e6:.2f} um")
for z in (10e-9, 100e-9, 1e-6):
    p = reduce(atom, z, T)
    v = v_total(p.zeta, p.tau).total
    print(f"z = {z * 1e9:7.1f} nm  zeta = {p.zeta:8.4f}  tau = {p.tau:7.1f}"
          f"  v = {v: .6e}  V = {potential_si(atom, v): .4e} J")
