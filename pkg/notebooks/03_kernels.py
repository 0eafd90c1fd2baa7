# %% [markdown]
# # Kernels on the disc
# K₄(w, z) is both a sum over Γ₄ and an infinite product. Both evaluations
# carry a certified bound on what they leave out.

# %%
import numpy as np

from hardyrep.gamma import gamma4
from hardyrep.kernel import (
    bergman_diagonal,
    eval_product,
    eval_series,
    gamma_diagonal,
    gram_at_points,
    named_kernel,
    psd_check,
)

C = gamma_diagonal(gamma4(4))
for w, z in [(0.5, 0.5), (0.9, 0.9), (0.3 + 0.4j, -0.6j)]:
    p, s = eval_product(4, w, z), eval_series(C, w, z)
    print(f"{w!s:>10} {z!s:>8}  product {p.value:.14f}  series {s.value:.14f}  bound {p.tail_bound + s.tail_bound:.1e}")

# %% [markdown]
# The Bergman kernel has growing coefficients n + 1; its tail bound uses that growth.

# %%
kv = eval_series(bergman_diagonal(), 0.5, 0.5)
print(kv.value, 16 / 9, kv.tail_bound)

# %% [markdown]
# Sample matrices of a positive kernel are positive semidefinite.

# %%
rng = np.random.default_rng(1)
pts = 0.9 * np.sqrt(rng.uniform(size=20)) * np.exp(2j * np.pi * rng.uniform(size=20))
for name in ("szego", "k3", "k4"):
    print(name, psd_check(gram_at_points(named_kernel(name), pts)))
