# %% [markdown]
# # Decoloring and the torus-rotation conflict
#
# Decoloring keeps one letter and sends every other letter to 0.  Two
# decolored Sturmian codings can be merged back into a ternary word unless
# both flag the same position, a conflict.  With rotation angles
# sqrt(2) - 1 and sqrt(3) - 1 a conflict arrives almost at once.

# %%
from wordlab import (
    DecoloringSpec,
    FiniteWord,
    TorusRotation,
    decolor,
    equidistribution_check,
    find_conflict,
    generate,
    merge_and_detect,
    sturmian_diagnostic,
)
from wordlab.angles import SQRT2, SQRT3
from wordlab.words import RotationBinary, WordGeneratorSpec

w = FiniteWord.from_string("123123")
print(decolor(w, DecoloringSpec("2")), decolor(w, DecoloringSpec("3")))

# %%
alpha, beta = SQRT2 - 1, SQRT3 - 1
t = TorusRotation(alpha, beta)
print("first conflict at n =", find_conflict(t, 10**6))
stats = equidistribution_check(t, 10**6)
print(stats.as_dict())

# %% [markdown]
# Build the two codings explicitly and merge them.

# %%
b2 = generate(WordGeneratorSpec(RotationBinary(alpha, 0, "A", "02"), 1000))
b3 = generate(WordGeneratorSpec(RotationBinary(beta, 0, "A", "03"), 1000))
merged = merge_and_detect(b2, b3)
print("merged:", merged.merged, "conflicts start:", merged.conflicts[:8])
print(sturmian_diagnostic(b2, 100).verdict)
