"""SL2 by hand, then by machine.

Semisimple classes of SL2 are diag(t, 1/t) up to t <-> 1/t.  Centralizers:
  t = 1 or -1 : all of SL2 (central), pseudo-Levi G
  t != 1, -1  : the torus T
In characteristic 2, -1 = 1, so only one central element survives.

Jordan class data (pseudo-Levi, unipotent class of it, central element):
  (G, regular, 1) (G, regular, -1) (G, trivial, 1) (G, trivial, -1) (T, 1)
giving 5 data, or 3 when the characteristic is 2.

Regular closure: a regular semisimple t tends to +1 or -1 and the limit of
its class is the regular unipotent class times +-1 (dimension 2).  So the
dimension-2 layer is one sheet {T, reg, -reg}, and the two central points
+1 and -1 are one-point sheets: 3 sheets.

phi: Springer of regular unipotent in SL2 is trivial; j-induction from W(T)
of the trivial character is trivial too.  Springer of u = 1 is sign.  So
two strata: phi = triv (dimension 2), phi = sign (dimension 0, the two
central points, 2 components).
"""
from weylstrata import GroupSpec, compute

# %%
for p in (0, 3, 2):
    c = compute(GroupSpec("A1", characteristic=p))
    print(f"char {p}: data {len(c.jordan_classes)}, sheets {len(c.sheets)},"
          f" strata {len(c.strata)}")
    for X in c.strata:
        print("   phi", X.phi, "dim", X.orbit_dim, "classes", [J.key for J in X.classes],
              "components", len(X.components))
