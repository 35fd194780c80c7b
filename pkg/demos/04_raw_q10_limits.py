# %% [markdown]
# # The raw Q10 ~ E14 system is out of reach
#
# Without a seed there is nothing linear to eliminate, and the Groebner
# computation runs into its limits.  The system can still be exported for an
# external MQ solver.

# %%
from orbifold import fixtures
from orbifold.ansatz import build_generic
from orbifold.equations import append_nonvanishing, extract, linear_eliminate
from orbifold.feasibility import check, export
from orbifold.groebner import Limits
from orbifold.problem import load_problem

problem = load_problem(fixtures.path("q10_e14.problem"))
gmf = build_generic(problem.spec())
core = extract(gmf, half=True)
print(len(linear_eliminate(core).eliminated), "linear eliminations available")

# %%
text = export(core, "mq_style")
print("\n".join(text.splitlines()[1:4]))

# %%
print(check(append_nonvanishing(core, gmf), Limits(seconds=10)))
