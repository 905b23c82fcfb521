# %% [markdown]
# # Bounded-complexity search and the lemma check suite
#
# Depth-first search over ternary words, pruning any prefix where some
# window length already shows more than three Parikh vectors.  Survivors at
# finite length say nothing about infinite words on their own; the report
# carries that caveat.

# %%
from wordlab import SearchConfig, SuiteBounds, default_corpus, run_lemma_suite, search_rho_bounded

rep = search_rho_bounded(SearchConfig(max_length=12, report_top=3))
print("survivors by length:", rep.counts_by_length)
for s in rep.survivors:
    print(s.as_dict())
print(rep.disclaimer)

# %% [markdown]
# The suite replays the structural checks over the catalog.

# %%
suite = run_lemma_suite(default_corpus(10_000), SuiteBounds())
for word, row in suite.matrix().items():
    print(f"{word:18s}", row)
print("all ok:", suite.ok)
