# %% [markdown]
# # x^3 and y^3, by hand and by machine
#
# The smallest orbifold equivalence: the identity defect of x^3, with one even
# and one odd summand.  We build the generic rank (1|1) ansatz, look at the
# four equations it produces, and let the Groebner check confirm consistency.

# %%
from orbifold import fixtures
from orbifold.ansatz import AnsatzSpec, build_generic
from orbifold.equations import append_nonvanishing, extract
from orbifold.feasibility import check, find_witness, verify_witness
from orbifold.mf import quantum_dimension
from orbifold.problem import load_problem

pair = load_problem(fixtures.path("x3_y3.problem")).pair()
gmf = build_generic(AnsatzSpec(pair, [0], ["-1/3"]))
print("sharp:", gmf.mf.sharp[0][0])
print("flat: ", gmf.mf.flat[0][0])

# %% [markdown]
# Only one product is needed: the other block gives the same ideal.

# %%
system = extract(gmf, half=True)
for eq in system.equations:
    print(eq, "= 0")

# %% [markdown]
# The left quantum dimension is a quadratic form in the parameters.  Asking
# for it to be invertible adds a helper variable per side.

# %%
print("q_l =", quantum_dimension(gmf.mf, pair, "left"))
full = append_nonvanishing(system, gmf)
print(len(full.parameters), "variables,", len(full.equations), "equations")
verdict = check(full)
print(verdict)

# %%
point = find_witness(full)
print(", ".join(f"{k}={v}" for k, v in point.items()))
print("round trip ok:", verify_witness(gmf, full, point))
