"""Unipotent classes, the Springer map, and two kinds of induction."""
from weylstrata.repops import j_induce
from weylstrata.rootsys import CartanType, classify_subsystem
from weylstrata.unipotent import InductionDatum, classify_unipotent, ls_induce, springer
from weylstrata.weylgrp import ReflectionSubgroup, weyl_group

# %%
for u in classify_unipotent("C3"):
    print(f"{u.label:>14}  dim {u.dim_class:>2}  ->  {u.springer_label}")

# %%
# b(springer(u)) = (dim G - dim u - rank) / 2
W = weyl_group("C3")
for u in classify_unipotent("C3"):
    b = W.table.b[W.table.index(u.springer_label)]
    print(u.label, b, (21 - u.dim_class - 3) // 2)

# %%
# Richardson class of the Siegel parabolic of Sp6: induce 0 from GL3
c3 = CartanType.parse("C3")
r = ls_induce(InductionDatum(c3, gl_parts=((1, 1, 1),)))
print("Ind(GL3, 0) =", r.partition, "springer:", springer("C3", r.classes[0]))

# %%
# the same answer by truncated induction from W(A2) inside W(C3)
rs = W.root_system
gl3 = ReflectionSubgroup(W, classify_subsystem(rs, rs.simple_roots[:2]))
print("j-induction of sign(A2):", j_induce(gl3, W, "(1,1,1)"))

# %%
# very even classes in D4 come in pairs
for u in classify_unipotent("D4"):
    if u.is_very_even:
        print(u.label, u.springer_label)
