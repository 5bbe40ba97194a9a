"""Root systems of types A-D and G2 in simple-root coordinates.

Roots are integer tuples giving coefficients on the simple roots.  Lengths
and angles come from an integral symmetric form ``form`` on that basis, so
non-simply-laced types never need irrational coordinates.

Classical types additionally carry their usual realisation in the
coordinates e_1, ..., e_m (``standard_realization``); the Weyl group module
uses it to read off cycle types and the unipotent module to read off Levi
block structures.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np

from .config import DEFAULT_CAPS, Caps
from .errors import ConfigurationError, InvalidInputError

FAMILY_ORDER = "ABCDG"

Root = tuple  # tuple[int, ...]


def _normalize_factor(family, rank):
    if family not in "ABCDG":
        raise ConfigurationError(f"unsupported family {family!r}")
    if rank < 1:
        raise ConfigurationError(f"rank must be positive, got {family}{rank}")
    if family in "BC" and rank == 1:
        return [("A", 1)]
    if family == "D":
        if rank == 1:
            raise ConfigurationError("D1 is a torus, not a root system type")
        if rank == 2:
            return [("A", 1), ("A", 1)]
        if rank == 3:
            return [("A", 3)]
    if family == "G" and rank != 2:
        raise ConfigurationError(f"G{rank} does not exist")
    return [(family, rank)]


def factor_sort_key(factor):
    family, rank = factor
    return (FAMILY_ORDER.index(family), rank)


@dataclass(frozen=True)
class CartanType:
    """Isomorphism type of a (possibly reducible, possibly empty) root system.

    ``factors`` is a sorted tuple of ``(family, rank)`` pairs; the empty tuple
    is the type of a torus.
    """

    factors: tuple = ()

    def __post_init__(self):
        norm = []
        for fam, rk in self.factors:
            norm.extend(_normalize_factor(fam, int(rk)))
        object.__setattr__(self, "factors", tuple(sorted(norm, key=factor_sort_key)))

    @classmethod
    def parse(cls, text):
        """Parse ``"C2"``, ``"A1xA1"``, ``"T"`` (torus) and similar."""
        if not isinstance(text, str):
            raise ConfigurationError(f"cannot parse Cartan type from {text!r}")
        text = text.strip()
        if text in ("T", ""):
            return cls(())
        factors = []
        for part in re.split(r"\s*[x×*]\s*", text):
            m = re.fullmatch(r"([A-Ga-g])(\d+)", part)
            if not m:
                raise ConfigurationError(f"cannot parse Cartan type {text!r}")
            factors.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(factors))

    @property
    def rank(self):
        return sum(r for _, r in self.factors)

    @property
    def is_irreducible(self):
        return len(self.factors) == 1

    @property
    def family(self):
        if not self.is_irreducible:
            raise ValueError(f"{self} is not irreducible")
        return self.factors[0][0]

    def __str__(self):
        if not self.factors:
            return "T"
        return "x".join(f"{f}{r}" for f, r in self.factors)

    def __repr__(self):
        return f"CartanType({str(self)!r})"


def _irreducible_order(family, n):
    from math import factorial

    if family == "A":
        return factorial(n + 1)
    if family in "BC":
        return 2**n * factorial(n)
    if family == "D":
        return 2 ** (n - 1) * factorial(n)
    return 12


def _degrees(family, n):
    if family == "A":
        return list(range(2, n + 2))
    if family in "BC":
        return list(range(2, 2 * n + 1, 2))
    if family == "D":
        return sorted(list(range(2, 2 * n - 1, 2)) + [n])
    return [2, 6]


def weyl_order(t: CartanType):
    out = 1
    for f, n in t.factors:
        out *= _irreducible_order(f, n)
    return out


def fundamental_degrees(t: CartanType):
    out = []
    for f, n in t.factors:
        out.extend(_degrees(f, n))
    return out


def root_count(t: CartanType):
    """Number of roots, by closed formula."""
    total = 0
    for f, n in t.factors:
        total += {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n,
                  "D": 2 * n * (n - 1), "G": 12}[f]
    return total


def standard_realization(family, n):
    """Columns are the simple roots written in coordinates e_1..e_m.

    Type A_n lives in an (n+1)-dimensional space.  G2 has no integral
    orthonormal realisation and returns ``None``.
    """
    if family == "G":
        return None
    if family == "A":
        P = np.zeros((n + 1, n), dtype=np.int64)
        for i in range(n):
            P[i, i], P[i + 1, i] = 1, -1
        return P
    P = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        P[i, i], P[i + 1, i] = 1, -1
    if family == "B":
        P[n - 1, n - 1] = 1
    elif family == "C":
        P[n - 1, n - 1] = 2
    elif family == "D":
        P[n - 2, n - 1], P[n - 1, n - 1] = 1, 1
    return P


def _irreducible_form(family, n):
    if family == "G":
        # alpha_1 short, alpha_2 long
        return np.array([[2, -3], [-3, 6]], dtype=np.int64)
    P = standard_realization(family, n)
    return P.T @ P


def _block_diag(blocks):
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def cartan_from_form(form):
    """Cartan integers a_ij = 2(a_i, a_j)/(a_i, a_i)."""
    form = np.asarray(form, dtype=np.int64)
    diag = np.diag(form)
    A = 2 * form // diag[:, None]
    if np.any(A * diag[:, None] != 2 * form):
        raise InvalidInputError("form does not give integral Cartan integers")
    return A


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: CartanType
    form: np.ndarray
    cartan_matrix: np.ndarray
    positive_roots: tuple
    factor_slices: tuple  # (start, stop) of each factor in simple coordinates

    @property
    def rank(self):
        return self.cartan_type.rank

    @cached_property
    def simple_roots(self):
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def roots(self):
        """Positive roots followed by their negatives, same order."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @cached_property
    def root_index(self):
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def root_array(self):
        return np.array(self.roots, dtype=np.int64).reshape(len(self.roots), self.rank)

    @property
    def num_positive(self):
        return len(self.positive_roots)

    def inner(self, a, b):
        return int(np.asarray(a) @ self.form @ np.asarray(b))

    def coroot_pairing(self, v, a):
        """<v, a^vee> = 2(v, a)/(a, a)."""
        num, den = 2 * self.inner(v, a), self.inner(a, a)
        if num % den:
            raise InvalidInputError(f"non-integral pairing of {v} with {a}")
        return num // den

    def reflect(self, v, a):
        c = self.coroot_pairing(v, a)
        return tuple(int(x) - c * int(y) for x, y in zip(v, a))

    def reflection_matrix(self, a):
        """Matrix of s_a acting on column vectors of simple coordinates."""
        cols = [self.reflect(e, a) for e in self.simple_roots]
        return np.array(cols, dtype=np.int64).T.reshape(self.rank, self.rank)

    def factor_of(self, root):
        for k, (lo, hi) in enumerate(self.factor_slices):
            if any(root[lo:hi]):
                return k
        raise InvalidInputError(f"{root} is zero")

    @cached_property
    def highest_roots(self):
        out = []
        for lo, hi in self.factor_slices:
            cands = [r for r in self.positive_roots if any(r[lo:hi])]
            out.append(max(cands, key=lambda r: (sum(r), r)))
        return tuple(out)

    @cached_property
    def marks(self):
        return tuple(tuple(h[lo:hi]) for h, (lo, hi) in zip(self.highest_roots, self.factor_slices))

    def to_json(self):
        return json.dumps({
            "cartan_type": str(self.cartan_type),
            "cartan_matrix": self.cartan_matrix.tolist(),
            "form": self.form.tolist(),
            "positive_roots": [list(r) for r in self.positive_roots],
            "highest_roots": [list(r) for r in self.highest_roots],
            "marks": [list(m) for m in self.marks],
        }, sort_keys=True)


@lru_cache(maxsize=None)
def _build(t: CartanType):
    blocks = [_irreducible_form(f, n) for f, n in t.factors]
    form = _block_diag(blocks) if blocks else np.zeros((0, 0), dtype=np.int64)
    slices, i = [], 0
    for b in blocks:
        slices.append((i, i + b.shape[0]))
        i += b.shape[0]
    r = t.rank
    A = cartan_from_form(form) if r else np.zeros((0, 0), dtype=np.int64)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for v in frontier:
            for i in range(r):
                c = int(sum(A[i, j] * v[j] for j in range(r)))
                w = tuple(v[j] - c * (j == i) for j in range(r))
                if all(x >= 0 for x in w) and w not in found:
                    found.add(w)
                    new.append(w)
        frontier = new
    positive = tuple(sorted(found, key=lambda v: (sum(v), v)))
    return RootSystem(t, form, A, positive, tuple(slices))


def build_root_system(t, caps: Caps = DEFAULT_CAPS) -> RootSystem:
    """Root system of ``t`` (a CartanType or a string such as ``"C2"``)."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    if t.rank > caps.max_rank:
        raise ConfigurationError(f"{t} exceeds the rank cap {caps.max_rank}")
    rs = _build(t)
    if len(rs.roots) != root_count(t):
        raise ConfigurationError(f"root enumeration failed for {t}")
    return rs


@dataclass(frozen=True)
class ExtendedDiagram:
    """Affine diagram of one irreducible factor.

    ``nodes[0]`` is the negative highest root, followed by the simple roots of
    the factor (as roots of the ambient system).  ``marks[0] == 1``.
    """

    factor: int
    nodes: tuple
    marks: tuple
    cartan: np.ndarray

    def bonds(self):
        out = []
        n = len(self.nodes)
        for i, j in combinations(range(n), 2):
            if self.cartan[i, j] or self.cartan[j, i]:
                out.append((i, j, int(self.cartan[i, j]), int(self.cartan[j, i])))
        return out


def extended_diagram(rs: RootSystem):
    """One ExtendedDiagram per irreducible factor."""
    out = []
    for k, (lo, hi) in enumerate(rs.factor_slices):
        theta = rs.highest_roots[k]
        nodes = [tuple(-c for c in theta)] + [rs.simple_roots[i] for i in range(lo, hi)]
        n = len(nodes)
        C = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                C[i, j] = rs.coroot_pairing(nodes[j], nodes[i])
        marks = (1,) + tuple(theta[lo:hi])
        out.append(ExtendedDiagram(k, tuple(nodes), marks, C))
    return out


# --------------------------------------------------------------------------
# subsystems

@dataclass(frozen=True, eq=False)
class Component:
    """Irreducible piece of a subsystem with its base in Bourbaki order."""

    family: str
    rank: int
    base: tuple

    @property
    def type(self):
        return CartanType(((self.family, self.rank),))


@dataclass(frozen=True, eq=False)
class RootSubsystem:
    parent: RootSystem
    components: tuple
    cartan_type: CartanType = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cartan_type",
                           CartanType(tuple((c.family, c.rank) for c in self.components)))

    @property
    def base(self):
        return tuple(b for c in self.components for b in c.base)

    @property
    def semisimple_rank(self):
        return len(self.base)

    @cached_property
    def roots(self):
        """All roots of the subsystem, as a frozenset of parent roots."""
        rs = self.parent
        found = set()
        for b in self.base:
            found.add(b)
            found.add(tuple(-c for c in b))
        frontier = list(found)
        while frontier:
            new = []
            for v in frontier:
                for b in self.base:
                    w = rs.reflect(v, b)
                    if w not in found:
                        found.add(w)
                        new.append(w)
            frontier = new
        return frozenset(found)

    @cached_property
    def root_indices(self):
        idx = self.parent.root_index
        return frozenset(idx[r] for r in self.roots)

    def transform(self, perm):
        """Image under a Weyl group element given as a root permutation."""
        rs = self.parent
        comps = tuple(
            Component(c.family, c.rank, tuple(rs.roots[perm[rs.root_index[b]]] for b in c.base))
            for c in self.components
        )
        return RootSubsystem(rs, comps)


def _components_of(cartan):
    n = cartan.shape[0]
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i, j]:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _path_from(end, adj):
    order, prev = [end], None
    while True:
        nxt = [j for j in adj[order[-1]] if j != prev]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _identify(base, lengths, cartan, double_laced_rank2):
    """Return (family, ordered list of local indices)."""
    m = len(base)
    adj = {i: [j for j in range(m) if j != i and cartan[i, j]] for i in range(m)}
    if m == 1:
        return "A", [0]
    prods = {(i, j): cartan[i, j] * cartan[j, i] for i in range(m) for j in adj[i]}
    if any(any(j not in range(m) for j in a) for a in adj.values()):
        raise InvalidInputError("bad adjacency")
    if sum(1 for i in adj if len(adj[i]) == 1) != 2 and not any(len(a) == 3 for a in adj.values()):
        raise InvalidInputError("base does not form a finite Dynkin diagram")
    if max(prods.values()) > 3 or any(len(a) > 3 for a in adj.values()):
        raise InvalidInputError("base does not form a finite Dynkin diagram")
    if 3 in prods.values():
        if m != 2:
            raise InvalidInputError("triple bond outside G2")
        short = 0 if lengths[0] < lengths[1] else 1
        return "G", [short, 1 - short]
    if 2 in prods.values():
        if any(len(a) > 2 for a in adj.values()):
            raise InvalidInputError("branched diagram with a double bond")
        if list(prods.values()).count(2) > 2:
            raise InvalidInputError("more than one double bond")
        ends = [i for i in range(m) if len(adj[i]) == 1]
        if m == 2:
            long_ = 0 if lengths[0] > lengths[1] else 1
            if double_laced_rank2 == "B":
                return "B", [long_, 1 - long_]
            return "C", [1 - long_, long_]
        # the end sitting on the double bond goes last
        for e in ends:
            (nb,) = adj[e]
            if prods[(e, nb)] == 2:
                last = e
        first = [e for e in ends if e != last][0]
        order = _path_from(first, adj)
        fam = "B" if lengths[last] < lengths[order[0]] else "C"
        return fam, order
    branch = [i for i in range(m) if len(adj[i]) == 3]
    if not branch:
        ends = sorted((i for i in range(m) if len(adj[i]) == 1), key=lambda i: base[i], reverse=True)
        return "A", _path_from(ends[0], adj)
    if len(branch) > 1:
        raise InvalidInputError("diagram with two branch nodes")
    (b,) = branch
    arms = []
    for nb in adj[b]:
        arm, prev = [nb], b
        while True:
            nxt = [j for j in adj[arm[-1]] if j != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)
    short_arms = sorted((a for a in arms if len(a) == 1), key=lambda a: base[a[0]], reverse=True)
    long_arms = sorted((a for a in arms if len(a) > 1), key=len)
    if len(long_arms) > 1 or len(short_arms) < 2:
        raise InvalidInputError("exceptional diagram (E-type) is not supported")
    if long_arms:
        head = list(reversed(long_arms[0]))
        tail = [short_arms[0][0], short_arms[1][0]]
    else:  # D4: three leaves
        head = [short_arms[0][0]]
        tail = [short_arms[1][0], short_arms[2][0]]
    return "D", head + [b] + tail


def _natural_d4_order(rs, roots, order):
    """Reorder the leaves of a D4 base so it matches the ambient vector frame.

    Inside B_n or D_n the leaf whose e-support differs from the other two
    must come first; otherwise partition labels would be read through a
    triality twist.
    """
    k = rs.factor_of(roots[0])
    fam, n = rs.cartan_type.factors[k]
    if fam not in "BD":
        return order
    lo, hi = rs.factor_slices[k]
    P = standard_realization(fam, n)
    supp = [frozenset(np.flatnonzero(P @ np.array(r[lo:hi])).tolist()) for r in roots]
    leaves = [0, 2, 3]
    odd = [i for i in leaves if sum(supp[i] == supp[j] for j in leaves) == 1]
    if len(odd) != 1:
        raise InvalidInputError("D4 component has no vector-frame leaf")
    rest = [i for i in leaves if i != odd[0]]
    return [order[odd[0]], order[1]] + [order[i] for i in rest]


def classify_subsystem(rs: RootSystem, base, double_laced_rank2=None) -> RootSubsystem:
    """Type and Bourbaki-ordered components of the subsystem spanned by ``base``.

    ``double_laced_rank2`` picks the name ("B" or "C") of rank-2 doubly laced
    components; by default it follows the family of the ambient factor.
    """
    base = [tuple(int(x) for x in b) for b in base]
    for b in base:
        if b not in rs.root_index:
            raise InvalidInputError(f"{b} is not a root of {rs.cartan_type}")
    if len(set(base)) != len(base):
        raise InvalidInputError("repeated roots in base")
    if base and np.linalg.matrix_rank(np.array(base, dtype=float)) != len(base):
        raise InvalidInputError("base is linearly dependent")
    m = len(base)
    C = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            C[i, j] = rs.coroot_pairing(base[j], base[i])
            if i != j and C[i, j] > 0:
                raise InvalidInputError("base is not a simple system (obtuse angles required)")
    lengths = [rs.inner(b, b) for b in base]
    comps = []
    for loc in _components_of(C):
        sub = [base[i] for i in loc]
        hint = double_laced_rank2
        if hint is None:
            fam = rs.cartan_type.factors[rs.factor_of(sub[0])][0]
            hint = "B" if fam == "B" else "C"
        family, order = _identify(sub, [lengths[i] for i in loc], C[np.ix_(loc, loc)], hint)
        if family == "D" and len(loc) == 4:
            order = _natural_d4_order(rs, [sub[i] for i in order], order)
        comps.append(Component(family, len(loc), tuple(sub[i] for i in order)))
    comps.sort(key=lambda c: (factor_sort_key((c.family, c.rank)), c.base))
    return RootSubsystem(rs, tuple(comps))


def full_subsystem(rs: RootSystem) -> RootSubsystem:
    return classify_subsystem(rs, rs.simple_roots)
