# %% [markdown]
# # The C = CMC test
# M is the Toeplitz matrix of Fourier coefficients of a measure. A measure
# reproduces K_C through boundary values when C = CMC; we test it on a window.

# %%
from hardyrep.gamma import gamma3, gamma4
from hardyrep.kernel import bergman_diagonal, gamma_diagonal
from hardyrep.measure import MU4, Lebesgue, TrigDensity
from hardyrep.momenteq import (
    build_moment_matrix,
    cmc_residual,
    diag_nonexistence_certificate,
    fourier_vanishing_check,
)

print(build_moment_matrix(TrigDensity({2: 0.4}), 4).entries.real)

# %%
C4 = gamma_diagonal(gamma4(8))
print("Γ4 vs µ4:      ", cmc_residual(C4, build_moment_matrix(MU4, 64)).residual)
print("Γ4 vs Lebesgue:", cmc_residual(C4, build_moment_matrix(Lebesgue(), 64)).residual)
r = cmc_residual(gamma_diagonal(gamma3(4)), build_moment_matrix(TrigDensity({2: 0.4}), 8))
print("Γ3 vs b2=0.4:  ", r.residual, "at", r.worst_entry)
print(r.tail_note)

# %% [markdown]
# For a 0/1 diagonal the test reduces to µ̂ vanishing on nonzero differences.

# %%
print(fourier_vanishing_check(MU4, gamma4(7), 4096))

# %% [markdown]
# The Bergman diagonal has distinct nonzero values, so no measure of any mass works.

# %%
print(diag_nonexistence_certificate(bergman_diagonal(), 1.0, size=8))
