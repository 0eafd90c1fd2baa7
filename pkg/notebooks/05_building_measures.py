# %% [markdown]
# # Absolutely continuous representing measures
# Put cosine mass only on frequencies that are not differences of Γ₄.

# %%
import numpy as np

from hardyrep.boundary import norm_preservation_residual, reproduce_residual_quadrature
from hardyrep.builder import build_ac_representing_measure, certify
from hardyrep.errors import ConstructionError
from hardyrep.gamma import gamma3, gamma4
from hardyrep.kernel import gamma_diagonal
from hardyrep.measure import density_eval

mu = build_ac_representing_measure(gamma4(5), 100, mass_budget=0.5, decay=0.5)
print(list(mu.b.items())[:6], "...", len(mu.b), "frequencies")
x = np.linspace(0, 1, 4096, endpoint=False)
print("density range:", density_eval(mu, x).min(), density_eval(mu, x).max())

# %%
cert = certify(mu, gamma4(5), 64)
print(cert.passed, cert.residual)
print(reproduce_residual_quadrature(gamma_diagonal(gamma4(5)), mu, 0.3, 0.5, 64, 1024))

# %% [markdown]
# Norms of trigonometric polynomials on Γ₄ frequencies are preserved.

# %%
rng = np.random.default_rng(3)
a = rng.normal(size=16) + 1j * rng.normal(size=16)
print(norm_preservation_residual(gamma4(3), a, mu))

# %% [markdown]
# Γ₃ leaves no room: its differences cover every integer.

# %%
try:
    build_ac_representing_measure(gamma3(9), 1000)
except ConstructionError as exc:
    print("refused:", exc)
