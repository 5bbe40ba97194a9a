"""Strata and sheets of Sp4 and G2."""
from weylstrata import GroupSpec, compute

# %%
c = compute(GroupSpec("C2"))
for L in c.pseudo_levis:
    print(f"{L.name:>6} levi={L.is_levi_of_G!s:5}  excluded in char {sorted(L.excluded_primes)}")

# %%
for X in c.compute_strata():
    print(f"phi {X.phi:>8}  dim {X.orbit_dim}  classes {len(X.classes)}  sheets {len(X.components)}")

# %%
# the subregular stratum meets two sheets: one through each Levi A1
for S in c.sheets:
    if S.orbit_dim == 6:
        print(S.generator.key, "->", [M.key for M in S.members])

# %%
g = compute(GroupSpec("G2"))
for X in g.compute_strata():
    print(f"phi {X.phi:>8}  dim {X.orbit_dim:>2}  sheets {len(X.components)}")

# %%
# theorem check
print(c.verify_theorem()["passed"], g.verify_theorem()["passed"])

# %%
# characteristic 3 removes the A2 pseudo-Levi of G2
g3 = compute(GroupSpec("G2", characteristic=3))
print([L.name for L in g3.realizable_levis], g3.exclusions_log)
