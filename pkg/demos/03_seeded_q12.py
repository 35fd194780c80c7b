# %% [markdown]
# # Q12 ~ E18 from a hand-made seed
#
# Start from a 4x4 block whose determinant is the square of a truncated
# target, perturb it by every monomial its grading allows, eliminate the
# linear equations, and hand the small remainder to the Groebner check.
# The check takes a few tens of seconds.

# %%
from orbifold import fixtures, matrix
from orbifold.ansatz import build_generic
from orbifold.feasibility import check, reduce_system
from orbifold.mf import parse_matrix_file
from orbifold.problem import load_problem

problem = load_problem(fixtures.path("q12_e18_seeded.problem"))
pair = problem.pair()
seed = parse_matrix_file(fixtures.path("q12_adjugate.mf").read_text(), pair.ring)
print("det(sharp) =", matrix.det(seed.sharp))

# %%
gmf = build_generic(problem.spec(pair))
print(len(gmf.parameters), "parameters after seeding")
system = reduce_system(gmf)
core = system.core()
print("after elimination:", len(core.parameters), "variables,", len(core.equations), "equations")
for eq in core.equations:
    print("  ", eq)

# %%
verdict = check(system)
print(verdict)
