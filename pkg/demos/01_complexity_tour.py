# %% [markdown]
# # Abelian complexity of a few classic words
#
# The abelian complexity rho(n) counts how many distinct letter-count
# vectors appear among the length-n windows of a word.  Sturmian words sit
# at rho = 2, periodic words oscillate, and Tribonacci stays small but
# wanders.

# %%
import numpy as np

from wordlab import (
    abelian_counts,
    balance_profile,
    catalog_spec,
    complexity_profile,
    generate,
    subword_counts,
)

fib = generate(catalog_spec("fibonacci", 5000))
print(str(fib)[:40], "...")

# %% [markdown]
# Fibonacci: factor complexity n + 1, abelian complexity 2, letters
# 1-balanced.

# %%
print("rho(1..20) =", abelian_counts(fib, 20).tolist())
print("p(1..20)   =", subword_counts(fib, 20).tolist())
print("max deviation:", balance_profile(fib, 200).max_deviation())

# %% [markdown]
# Tribonacci on a long prefix.  The abelian complexity climbs slowly; the
# larger values only show up once windows reach the hundreds or thousands.

# %%
trib = generate(catalog_spec("tribonacci", 100_000))
rho = abelian_counts(trib, 300)
values, counts = np.unique(rho, return_counts=True)
for v, c in zip(values, counts):
    first = int(np.argmax(rho == v)) + 1
    print(f"rho = {v}: {c:3d} window lengths, first at n = {first}")

# %% [markdown]
# A full profile bundles everything, and exports to CSV or JSON.

# %%
prof = complexity_profile(trib, 12, word_id="tribonacci")
print(prof.to_csv())
