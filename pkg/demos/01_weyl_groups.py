"""Weyl groups, exact character tables and b-invariants."""
import numpy as np

from weylstrata.repops import fake_degrees, poincare_polynomial
from weylstrata.rootsys import build_root_system, extended_diagram
from weylstrata.weylgrp import weyl_group

# %%
rs = build_root_system("C2")
print("Cartan matrix of C2:\n", rs.cartan_matrix)
print("positive roots:", rs.positive_roots)  # simple-root coordinates
print("highest root:", rs.highest_roots[0], "marks:", rs.marks[0])

# %%
# the affine diagram: node 0 is minus the highest root
(d,) = extended_diagram(rs)
print("affine nodes:", d.nodes, "marks:", d.marks)

# %%
W = weyl_group("C2")
print("|W| =", W.order, " classes:", len(W.classes))
tab = W.table
for lab, b, row in zip(tab.labels, tab.b, tab.values):
    print(f"{lab:>8}  b={b}  {row}")

# %%
# orthogonality, exactly
G = (tab.values * np.array(tab.class_sizes)) @ tab.values.T
print("Gram matrix / |W| is the identity:", np.array_equal(G, W.order * np.eye(len(tab))))

# %%
# fake degrees add up to the Poincare polynomial of W
fd = fake_degrees(W)
total = np.zeros(len(poincare_polynomial(W.cartan_type)), dtype=int)
for lab, dim in zip(tab.labels, tab.dims):
    total += dim * np.array(fd[lab])
print("sum dim * fake degree:", total.tolist())
print("Poincare polynomial:  ", poincare_polynomial(W.cartan_type))

# %%
g2 = weyl_group("G2").table
print("G2 labels:", g2.labels, "b:", g2.b)
