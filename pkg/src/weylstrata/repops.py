"""Class functions on Weyl groups: induction, b-invariants and truncated
(j-)induction."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlgorithmError, IntegrityError
from .rootsys import fundamental_degrees


def _table(G):
    """Character table of a WeylGroup or ReflectionSubgroup."""
    return G.table


def _order(G):
    return G.order


@dataclass(frozen=True)
class ClassFunction:
    """Exact class function, stored as its value vector on ``group``'s classes."""

    group: object
    values: tuple

    @classmethod
    def from_decomposition(cls, group, coeffs):
        tab = _table(group)
        vals = np.zeros(len(tab.class_sizes), dtype=np.int64)
        for lab, m in coeffs.items():
            vals += m * tab.values[tab.index(lab)]
        return cls(group, tuple(int(x) for x in vals))

    @classmethod
    def irreducible(cls, group, label):
        tab = _table(group)
        return cls(group, tuple(int(x) for x in tab.values[tab.index(label)]))

    def decomposition(self):
        return _table(self.group).decompose(self.values)

    @property
    def degree(self):
        return self.values[0]


# ------------------------------------------------------------------ Molien

def char_poly_coeffs(M):
    """Coefficients (1, c_1, ..., c_r) with det(1 - qM) = sum c_k q^k (Faddeev-LeVerrier)."""
    M = np.array(M, dtype=object)
    r = M.shape[0]
    coeffs = [1]
    Mk = np.zeros((r, r), dtype=object)
    I = np.eye(r, dtype=object)
    for k in range(1, r + 1):
        Mk = M.dot(Mk) + coeffs[-1] * I
        tr = int(np.trace(M.dot(Mk)))
        if tr % k:
            raise AlgorithmError("non-integral characteristic polynomial")
        coeffs.append(-tr // k)
    return coeffs


def inverse_series(poly, degree):
    """Power series 1/poly (poly[0] == 1) truncated after q^degree."""
    out = [0] * (degree + 1)
    out[0] = 1
    for m in range(1, degree + 1):
        out[m] = -sum(poly[i] * out[m - i] for i in range(1, min(m, len(poly) - 1) + 1))
    return out


def molien_series(W, values, degree=None):
    """Multiplicities of each row of ``values`` in S^i(V), i = 0..degree.

    Returns a list of integer lists, one per row.
    """
    cl = W.classes
    if degree is None:
        degree = W.root_system.num_positive
    invs = [inverse_series(char_poly_coeffs(W.matrices[g]), degree) for g in cl.representatives]
    out = []
    for row in np.asarray(values):
        series = []
        for i in range(degree + 1):
            s = sum(int(sz) * int(x) * inv[i] for sz, x, inv in zip(cl.sizes, row, invs))
            if s % W.order:
                raise AlgorithmError("Molien coefficient is not an integer")
            series.append(s // W.order)
        out.append(series)
    return out


def molien_b_values(W, values):
    """b(E) = least i with E occurring in S^i(V), for each row of ``values``."""
    bound = W.root_system.num_positive
    out = []
    for series in molien_series(W, values, bound):
        b = next((i for i, c in enumerate(series) if c), None)
        if b is None:
            raise AlgorithmError(f"no occurrence up to degree {bound} in W({W.cartan_type})")
        out.append(b)
    return out


@dataclass(frozen=True)
class BInvariantTable:
    group: object
    b: dict

    def __getitem__(self, label):
        return self.b[label]


def molien_b_invariants(W) -> BInvariantTable:
    tab = W.table
    return BInvariantTable(W, dict(zip(tab.labels, molien_b_values(W, tab.values))))


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def fake_degrees(W):
    """Graded multiplicities of each irreducible in the coinvariant algebra."""
    degs = fundamental_degrees(W.cartan_type)
    top = sum(d - 1 for d in degs)
    tab = W.table
    series = molien_series(W, tab.values, top)
    num = [1]
    for d in degs:
        num = poly_mul(num, [1] + [0] * (d - 1) + [-1])
    out = {}
    for lab, s in zip(tab.labels, series):
        f = poly_mul(s, num)[: top + 1]
        out[lab] = f
    return out


def poincare_polynomial(cartan_type):
    out = [1]
    for d in fundamental_degrees(cartan_type):
        out = poly_mul(out, [1] * d)
    return out


# --------------------------------------------------------------- induction

def induce(sub, parent, f):
    """Frobenius induction of a class function on ``sub`` to ``parent``."""
    from .weylgrp import class_fusion

    vals = f.values if isinstance(f, ClassFunction) else tuple(f)
    ptab = _table(parent)
    stab = _table(sub)
    fusion = class_fusion(sub, parent)
    acc = [0] * len(ptab.class_sizes)
    for c, t in enumerate(fusion):
        acc[t] += stab.class_sizes[c] * int(vals[c])
    out = []
    for t, a in enumerate(acc):
        num = a * _order(parent)
        den = _order(sub) * ptab.class_sizes[t]
        if num % den:
            raise IntegrityError("induced class function is not integral",
                                 {"sub": str(stab.cartan_type), "parent": str(ptab.cartan_type)})
        out.append(num // den)
    res = ClassFunction(parent, tuple(out))
    if _is_character(stab, vals) and any(m < 0 for m in res.decomposition().values()):
        raise IntegrityError("induced character has negative multiplicity",
                             {"sub": str(stab.cartan_type), "parent": str(ptab.cartan_type)})
    return res


def _is_character(tab, vals):
    return all(m >= 0 for m in tab.decompose(vals).values())


def restrict(parent, sub, label):
    """Restriction of a parent irreducible to ``sub``, as a value vector."""
    from .weylgrp import class_fusion

    row = _table(parent).values[_table(parent).index(label)]
    return tuple(int(row[t]) for t in class_fusion(sub, parent))


def j_induce(sub, parent, label):
    """Truncated induction j_sub^parent of the irreducible ``label`` of ``sub``."""
    stab, ptab = _table(sub), _table(parent)
    b0 = stab.b[stab.index(label)]
    dec = induce(sub, parent, ClassFunction.irreducible(sub, label)).decomposition()
    detail = {"sub": str(stab.cartan_type), "parent": str(ptab.cartan_type), "character": label,
              "b": b0, "constituents": {k: [m, ptab.b[ptab.index(k)]] for k, m in dec.items()}}
    bmin = min(ptab.b[ptab.index(k)] for k in dec)
    if bmin != b0:
        raise IntegrityError("minimal b among induced constituents differs from b(E)", detail)
    at_min = [(k, m) for k, m in dec.items() if ptab.b[ptab.index(k)] == b0]
    if len(at_min) != 1 or at_min[0][1] != 1:
        raise IntegrityError("j-induction is not multiplicity-free at minimal b", detail)
    return at_min[0][0]


def j_transitivity_check(sub, mid, parent, label):
    """True iff j_sub^parent(E) == j_mid^parent(j_sub^mid(E))."""
    return j_induce(sub, parent, label) == j_induce(mid, parent, j_induce(sub, mid, label))
