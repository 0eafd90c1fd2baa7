# %% [markdown]
# # Fourier coefficients of Cantor measures
# The quaternary Cantor measure is an IFS measure: scale 4, digits {0, 2}.
# Its Fourier coefficients come from an infinite product that we cut once
# the remaining factors are within 1e-14 of one.

# %%
import numpy as np

from hardyrep.measure import MU3, MU4, fourier_coefficients, ifs_depth, monte_carlo_fourier

ks = np.arange(0, 17)
vals, errs = fourier_coefficients(MU4, ks)
for k, v, e in zip(ks, vals, errs):
    print(f"{k:3d}  |mu4_hat| = {abs(v):.3e}   error bound {e:.1e}")

# %% [markdown]
# Offsets 1, 3, 4, 5, 12, 13, ... vanish. The truncation depth grows like log4 |k|.

# %%
for k in (1, 100, 10**6, 10**12):
    print(k, ifs_depth(MU4, k))

# %% [markdown]
# Chaos-game cross-check: a million random points, compared against the product.

# %%
rng = np.random.default_rng(7)
ks = np.array([-8, -6, -3, -2, -1, 1, 2, 3, 6, 8])
mc, se = monte_carlo_fourier(MU3, ks, n=10**6, rng=rng)
exact, _ = fourier_coefficients(MU3, ks)
print("max z-score:", np.max(np.abs(mc - exact) / se))
