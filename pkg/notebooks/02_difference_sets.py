# %% [markdown]
# # Digit sets and their differences
# Γ₄ uses base-4 digits {0, 1}; Γ₃ uses base-3 digits {0, 1}.

# %%
from hardyrep.gamma import check_coverage, check_disjoint_difference, difference_set, gamma3, gamma4, gamma4_prime

print(gamma4(2).elements)
print(gamma3(2).elements)

# %% [markdown]
# Differences of Γ₃ fill every integer, while Γ₄ skips 2 (and many more).

# %%
print("Γ3 level 9, first gap up to 1000:", check_coverage(gamma3(9), 1000))
print("Γ4 level 8, first gap up to 10:", check_coverage(gamma4(8), 10))
d = difference_set(gamma4(6), 40)
print("positive differences of Γ4 up to 40:", d[d > 0].tolist())

# %% [markdown]
# Γ₄′ (digits {0, 2}) meets the differences of Γ₄ only at 0.

# %%
print(check_disjoint_difference(gamma4_prime(5), gamma4(5), 4096))
