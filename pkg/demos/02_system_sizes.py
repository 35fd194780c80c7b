# %% [markdown]
# # How big the raw systems get
#
# With the grading matrices of the three exceptional pairs fixed, the generic
# ansatz already carries over a hundred parameters.  This script prints the
# size table and the degree profile of each system.

# %%
from orbifold import fixtures
from orbifold.ansatz import build_generic
from orbifold.equations import append_nonvanishing, extract, stats
from orbifold.problem import load_problem

for name in ("q10_e14", "q12_e18", "q18_e30"):
    problem = load_problem(fixtures.path(name + ".problem"))
    gmf = build_generic(problem.spec(use_seed=False))
    st = stats(append_nonvanishing(extract(gmf, half=True), gmf))
    print(st.row(problem.name), " degrees", st.degree_histogram)

# %% [markdown]
# Extracting both products roughly doubles the equation count without
# changing the ideal.

# %%
problem = load_problem(fixtures.path("q10_e14.problem"))
gmf = build_generic(problem.spec())
print(len(extract(gmf, half=False)), "equations with both products")
