"""Weyl groups as permutation groups on roots, their conjugacy classes and
exact character tables.

Elements are stored as permutations of the root list of the root system
(``WeylGroup.perms``); matrices on the simple-root basis are recovered on
demand.  The character table of an irreducible Weyl group is computed with
the Burnside-Dixon eigenvector method over a prime field and lifted to the
integers; product groups use tensor products of factor tables.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, isqrt

import numpy as np

from . import combinat
from .config import DEFAULT_CAPS, Caps
from .errors import AlgorithmError, EmbeddingError, ResourceError
from .rootsys import (CartanType, RootSystem, build_root_system, standard_realization,
                      weyl_order)


class WeylGroup:
    """Finite reflection group of ``root_system``.

    Element 0 is the identity; ``generators[i]`` is the index of the simple
    reflection s_i.  ``words[w]`` is a reduced expression: the product
    s_{words[w][0]} s_{words[w][1]} ... equals w.
    """

    def __init__(self, root_system, perms, words, generators):
        self.root_system = root_system
        self.perms = perms
        self.words = words
        self.generators = generators
        self.index = {p.tobytes(): i for i, p in enumerate(perms)}

    @property
    def order(self):
        return len(self.perms)

    @property
    def cartan_type(self):
        return self.root_system.cartan_type

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"WeylGroup({self.cartan_type}, order={self.order})"

    def lookup(self, perm):
        try:
            return self.index[np.ascontiguousarray(perm, dtype=self.perms.dtype).tobytes()]
        except KeyError:
            raise EmbeddingError("permutation is not an element of the group") from None

    def mult(self, a, b):
        """Index of the composite a∘b."""
        return self.index[self.perms[a][self.perms[b]].tobytes()]

    @cached_property
    def inverses(self):
        out = np.empty(self.order, dtype=np.int64)
        for i, p in enumerate(self.perms):
            out[i] = self.index[np.argsort(p).astype(p.dtype).tobytes()]
        return out

    @cached_property
    def matrices(self):
        """Array (|W|, r, r): column j of matrices[w] is w(alpha_j)."""
        rs = self.root_system
        r = rs.rank
        if r == 0:
            return np.zeros((self.order, 0, 0), dtype=np.int64)
        simple_idx = [rs.root_index[a] for a in rs.simple_roots]
        imgs = rs.root_array[self.perms[:, simple_idx]]  # (|W|, j, coords)
        return np.transpose(imgs, (0, 2, 1)).copy()

    def element_order(self, w):
        p = self.perms[w]
        seen = np.zeros(len(p), dtype=bool)
        out = 1
        for i in range(len(p)):
            if seen[i]:
                continue
            j, n = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                n += 1
            out = out * n // gcd(out, n)
        return out

    @cached_property
    def exponent(self):
        e = 1
        for w in range(self.order):
            o = self.element_order(w)
            e = e * o // gcd(e, o)
        return e

    def element_from_matrix(self, M):
        rs = self.root_system
        imgs = rs.root_array @ np.asarray(M, dtype=np.int64).T
        try:
            perm = [rs.root_index[tuple(int(x) for x in v)] for v in imgs]
        except KeyError:
            raise EmbeddingError("matrix does not permute the roots") from None
        return self.lookup(perm)

    @cached_property
    def classes(self):
        return conjugacy_classes(self)

    @cached_property
    def table(self):
        return character_table(self)


def enumerate_group(rs, caps: Caps = DEFAULT_CAPS) -> WeylGroup:
    """Enumerate W(rs) by closure from the simple reflections."""
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs, caps)
    predicted = weyl_order(rs.cartan_type)
    if predicted > caps.order_cap:
        raise ResourceError(f"|W({rs.cartan_type})| = {predicted} exceeds cap {caps.order_cap}",
                            predicted=predicted)
    N = len(rs.roots)
    dtype = np.int16
    gens = []
    for a in rs.simple_roots:
        gens.append(np.array([rs.root_index[rs.reflect(v, a)] for v in rs.roots], dtype=dtype))
    ident = np.arange(N, dtype=dtype)
    perms, words = [ident], [()]
    seen = {ident.tobytes(): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for i, g in enumerate(gens):
                p = g[perms[w]]
                key = p.tobytes()
                if key not in seen:
                    seen[key] = len(perms)
                    perms.append(p)
                    words.append((i,) + words[w])
                    nxt.append(seen[key])
        frontier = nxt
    if len(perms) != predicted:
        raise AlgorithmError(f"enumerated {len(perms)} elements, expected {predicted}")
    arr = np.array(perms, dtype=dtype).reshape(len(perms), N)
    gen_idx = tuple(seen[g.tobytes()] for g in gens)
    return WeylGroup(rs, arr, words, gen_idx)


@lru_cache(maxsize=None)
def weyl_group(t) -> WeylGroup:
    """Cached Weyl group of a CartanType (or type string) at default caps."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    return enumerate_group(build_root_system(t))


# ------------------------------------------------------------------ classes

@dataclass
class ConjugacyClasses:
    representatives: list
    class_of: np.ndarray
    sizes: list
    members: list = field(repr=False)

    def __len__(self):
        return len(self.sizes)


def conjugacy_classes(W: WeylGroup) -> ConjugacyClasses:
    """Orbit partition under conjugation by the simple reflections."""
    n = W.order
    class_of = np.full(n, -1, dtype=np.int64)
    gens = [W.perms[g] for g in W.generators]
    reps, sizes, members = [], [], []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        c = len(reps)
        class_of[x] = c
        orbit = [x]
        stack = [x]
        while stack:
            y = stack.pop()
            py = W.perms[y]
            for g in gens:
                z = W.index[g[py[g]].tobytes()]
                if class_of[z] < 0:
                    class_of[z] = c
                    orbit.append(z)
                    stack.append(z)
        reps.append(x)
        sizes.append(len(orbit))
        members.append(sorted(orbit))
    return ConjugacyClasses(reps, class_of, sizes, members)


# --------------------------------------------------------- character tables

@dataclass(frozen=True)
class WeylCharacter:
    label: str
    values: tuple
    dim: int
    b_invariant: int | None = None


@dataclass(eq=False)
class CharacterTable:
    """Irreducible characters (rows) on conjugacy classes (columns)."""

    cartan_type: CartanType
    order: int
    class_sizes: tuple
    values: np.ndarray
    labels: list
    b: list | None = None
    aliases: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise AlgorithmError(f"duplicate labels in table of {self.cartan_type}")

    def __len__(self):
        return len(self.labels)

    @property
    def dims(self):
        return [int(v) for v in self.values[:, 0]]

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an irreducible of W({self.cartan_type})") from None

    def character(self, label):
        i = self.index(label)
        return WeylCharacter(label, tuple(int(x) for x in self.values[i]), int(self.values[i, 0]),
                             None if self.b is None else self.b[i])

    @property
    def trivial(self):
        return self.labels[int(np.flatnonzero(np.all(self.values == 1, axis=1))[0])]

    @property
    def sign_values(self):
        """Values of the sign character (determinant of the reflection representation)."""
        return self.values[self.index(self.sign)]

    @property
    def sign(self):
        return self._sign_label

    def inner(self, f, g):
        """Class-weighted inner product of two value vectors (exact)."""
        s = sum(int(a) * int(b) * int(c) for a, b, c in zip(f, g, self.class_sizes))
        if s % self.order:
            raise AlgorithmError("inner product is not an integer")
        return s // self.order

    def decompose(self, values):
        weighted = np.asarray(values, dtype=np.int64) * np.asarray(self.class_sizes, dtype=np.int64)
        raw = self.values.astype(np.int64) @ weighted
        if np.any(raw % self.order):
            raise AlgorithmError("inner product is not an integer")
        return {lab: int(m) for lab, m in zip(self.labels, raw // self.order) if m}

    def to_dict(self):
        return {
            "cartan_type": str(self.cartan_type),
            "order": self.order,
            "class_sizes": list(self.class_sizes),
            "labels": list(self.labels),
            "dims": self.dims,
            "b": None if self.b is None else list(self.b),
            "values": self.values.tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def dixon_prime(order, exponent):
    """Least prime p > 2|W| with p = 1 mod exponent."""
    p = 2 * order + 1
    p += (1 - p) % exponent
    while not _is_prime(p):
        p += exponent
    return p


def _nullspace_mod(M, p):
    """Row basis of {x : M x = 0} over F_p."""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-M[i, f]) % p
    return basis


def class_structure_matrix(W, classes, r):
    """A[s, t] = #{x in C_r : x^-1 g_t in C_s}, so that A omega = omega_r omega."""
    k = len(classes)
    A = np.zeros((k, k), dtype=np.int64)
    inv = W.inverses
    for t, g in enumerate(classes.representatives):
        pg = W.perms[g]
        for x in classes.members[r]:
            y = W.index[W.perms[inv[x]][pg].tobytes()]
            A[classes.class_of[y], t] += 1
    return A


def dixon_character_values(W: WeylGroup):
    """Integer matrix of irreducible character values (unsorted rows)."""
    cl = W.classes
    k = len(cl)
    n = W.order
    if k == 1:
        return np.ones((1, 1), dtype=np.int64)
    p = dixon_prime(n, W.exponent)
    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(1, k):
        if all(s.shape[0] == 1 for s in spaces):
            break
        A = class_structure_matrix(W, cl, r)
        eig = sorted({int(round(z.real)) for z in np.linalg.eigvals(A.astype(float))})
        new = []
        for S in spaces:
            if S.shape[0] == 1:
                new.append(S)
                continue
            got = 0
            for lam in eig:
                B = ((A - lam * np.eye(k, dtype=np.int64)) % p) @ S.T % p
                null = _nullspace_mod(B, p)
                if null.shape[0]:
                    new.append(null @ S % p)
                    got += null.shape[0]
            if got != S.shape[0]:
                raise AlgorithmError(f"eigenspace split failed for W({W.cartan_type})")
        spaces = new
    if len(spaces) != k:
        raise AlgorithmError(f"common eigenspaces did not separate W({W.cartan_type})")
    inv_class = [int(cl.class_of[W.inverses[g]]) for g in cl.representatives]
    rows = []
    for S in spaces:
        v = S[0]
        if v[0] == 0:
            raise AlgorithmError("eigenvector vanishes at the identity class")
        omega = v * pow(int(v[0]), -1, p) % p
        s = sum(int(omega[t]) * int(omega[inv_class[t]]) * pow(cl.sizes[t], -1, p)
                for t in range(k)) % p
        d2 = n * pow(s, -1, p) % p
        dim = next((d for d in range(1, isqrt(n) + 1) if d * d % p == d2), None)
        if dim is None:
            raise AlgorithmError("no integral degree lifts the modular degree")
        row = []
        for t in range(k):
            x = int(omega[t]) * dim * pow(cl.sizes[t], -1, p) % p
            row.append(x - p if x > p // 2 else x)
        rows.append(row)
    vals = np.array(rows, dtype=np.int64)
    check_orthogonality(vals, cl.sizes, n)
    return vals


def check_orthogonality(values, sizes, order):
    """Exact row and column orthogonality; raises AlgorithmError otherwise."""
    values = np.asarray(values, dtype=object)
    sizes = list(sizes)
    k = len(sizes)
    if values.shape != (k, k):
        raise AlgorithmError("table is not square")
    gram = (values * np.array(sizes, dtype=object)) @ values.T
    if not np.array_equal(gram, np.eye(k, dtype=object) * order):
        raise AlgorithmError("row orthogonality fails")
    col = values.T @ values
    cent = [order // s for s in sizes]
    if not np.array_equal(col, np.diag(np.array(cent, dtype=object))):
        raise AlgorithmError("column orthogonality fails")


# ---------------------------------------------------------------- labelling

def signed_permutation(family, n, M):
    """Action of a simple-coordinate matrix on e_1..e_m as (targets, signs)."""
    P = standard_realization(family, n)
    M = np.asarray(M, dtype=np.int64)
    if family == "A":
        m = n + 1
        targets = [None] * m
        for i in range(n):
            v = P @ (M @ np.array([1 if i <= j else 0 for j in range(n)], dtype=np.int64))
            a = int(np.flatnonzero(v == 1)[0])
            b = int(np.flatnonzero(v == -1)[0])
            targets[i], targets[n] = a, b
        return targets, [1] * m
    E = np.rint(P @ M @ np.linalg.inv(P)).astype(np.int64)
    targets, signs = [], []
    for i in range(n):
        nz = np.flatnonzero(E[:, i])
        if len(nz) != 1 or abs(E[nz[0], i]) != 1:
            raise AlgorithmError("element is not a signed permutation")
        targets.append(int(nz[0]))
        signs.append(int(E[nz[0], i]))
    return targets, signs


def signed_cycle_type(targets, signs):
    """(positive cycle lengths, negative cycle lengths)."""
    seen = set()
    pos, neg = [], []
    for i in range(len(targets)):
        if i in seen:
            continue
        j, length, sgn = i, 0, 1
        while j not in seen:
            seen.add(j)
            sgn *= signs[j]
            j = targets[j]
            length += 1
        (pos if sgn > 0 else neg).append(length)
    return combinat.normalize(pos), combinat.normalize(neg)


def _class_cycle_types(W):
    family, n = W.cartan_type.factors[0]
    return [signed_cycle_type(*signed_permutation(family, n, W.matrices[g]))
            for g in W.classes.representatives]


def _match_rows(values, candidates):
    """Map each row of ``values`` to the unique label with identical values."""
    by_vals = {}
    for lab, vec in candidates:
        by_vals.setdefault(tuple(vec), []).append(lab)
    labels = []
    for row in values:
        labs = by_vals.get(tuple(int(x) for x in row))
        if not labs or len(labs) != 1:
            raise AlgorithmError("combinatorial label matching failed")
        labels.append(labs[0])
    if len(set(labels)) != len(labels):
        raise AlgorithmError("combinatorial label matching is not injective")
    return labels


def _phi_labels(values, bs):
    keys = {}
    for i, row in enumerate(values):
        keys.setdefault((int(row[0]), bs[i]), []).append(i)
    labels = [None] * len(values)
    for (d, b), idx in keys.items():
        if len(idx) == 1:
            labels[idx[0]] = f"phi{d}_{b}"
            continue
        idx.sort(key=lambda i: tuple(int(x) for x in values[i]))
        for k, i in enumerate(idx):
            labels[i] = f"phi{d}_{b}" + "'" * (k + 1)
    return labels


def d_symbol_aliases(W, values):
    """For type D: label each row by its unordered bipartition {alpha; beta}.

    Rows with alpha == beta come in pairs and get suffixes ``+`` / ``-``
    (the ``+`` member being the lexicographically smaller value vector).
    """
    _, n = W.cartan_type.factors[0]
    cts = _class_cycle_types(W)
    rows = {tuple(int(x) for x in r): i for i, r in enumerate(values)}
    out = {}
    for a, b in combinat.bipartitions(n):
        if (a, b) > (b, a):
            continue
        chi = tuple(combinat.bn_character(a, b, pc, nc) for pc, nc in cts)
        name = combinat.format_bipartition(a, b)
        if a != b:
            if chi not in rows:
                raise AlgorithmError(f"restriction of {name} is not irreducible")
            out[rows[chi]] = "{" + name[1:-1] + "}"
            continue
        pair = [(i, j) for i in range(len(values)) for j in range(i + 1, len(values))
                if tuple(int(x) + int(y) for x, y in zip(values[i], values[j])) == chi]
        if len(pair) != 1:
            raise AlgorithmError(f"degenerate symbol {name} does not split in two")
        i, j = pair[0]
        lo, hi = sorted((i, j), key=lambda q: tuple(int(x) for x in values[q]))
        out[lo] = "{" + name[1:-1] + "}+"
        out[hi] = "{" + name[1:-1] + "}-"
    return out


def _irreducible_table(W: WeylGroup) -> CharacterTable:
    from .repops import molien_b_values

    family, n = W.cartan_type.factors[0]
    vals = dixon_character_values(W)
    sizes = W.classes.sizes
    aliases = {}
    if family == "A":
        cts = _class_cycle_types(W)
        cands = [(combinat.format_partition(lam), [combinat.sn_character(lam, pc) for pc, _ in cts])
                 for lam in combinat.partitions(n + 1)]
        labels = _match_rows(vals, cands)
    elif family in "BC":
        cts = _class_cycle_types(W)
        cands = [(combinat.format_bipartition(a, b),
                  [combinat.bn_character(a, b, pc, nc) for pc, nc in cts])
                 for a, b in combinat.bipartitions(n)]
        labels = _match_rows(vals, cands)
    else:
        bs = molien_b_values(W, vals)
        labels = _phi_labels(vals, bs)
        if family == "D":
            al = d_symbol_aliases(W, vals)
            aliases = {labels[i]: s for i, s in al.items()}
    order = sorted(range(len(labels)),
                   key=lambda i: (int(vals[i, 0]), tuple(-int(x) for x in vals[i])))
    vals = vals[order]
    labels = [labels[i] for i in order]
    tab = CharacterTable(W.cartan_type, W.order, tuple(sizes), vals, labels, aliases=aliases)
    tab.b = molien_b_values(W, vals)
    tab._sign_label = _find_sign(W, tab)
    return tab


def _find_sign(W, tab):
    dets = [int(round(np.linalg.det(W.matrices[g]))) if W.root_system.rank else 1
            for g in W.classes.representatives]
    for lab, row in zip(tab.labels, tab.values):
        if [int(x) for x in row] == dets:
            return lab
    raise AlgorithmError("sign character missing from table")


def join_labels(parts):
    return " x ".join(parts) if parts else "triv"


def product_table(tables, class_tuples, class_sizes, order, cartan_type):
    """Tensor product of factor tables, on classes given as tuples of factor classes."""
    labels, rows, bs = [], [], []
    for combo in product(*[range(len(t)) for t in tables]):
        labels.append(join_labels([t.labels[i] for t, i in zip(tables, combo)]))
        row = []
        for ct in class_tuples:
            v = 1
            for t, i, c in zip(tables, combo, ct):
                v *= int(t.values[i, c])
            row.append(v)
        rows.append(row)
        bs.append(sum(t.b[i] for t, i in zip(tables, combo)))
    vals = np.array(rows, dtype=np.int64).reshape(len(rows), len(class_tuples))
    tab = CharacterTable(cartan_type, order, tuple(class_sizes), vals, labels, b=bs)
    tab._sign_label = join_labels([t.sign for t in tables])
    return tab


def character_table(W: WeylGroup) -> CharacterTable:
    """Labelled exact character table of W, with b-invariants filled in."""
    t = W.cartan_type
    if len(t.factors) == 1:
        return _irreducible_table(W)
    # product group: split block-diagonal matrices into factors
    rs = W.root_system
    factor_groups = [weyl_group(CartanType((f,))) for f in t.factors]
    tables = [g.table for g in factor_groups]
    class_tuples = []
    for g in W.classes.representatives:
        M = W.matrices[g]
        ct = []
        for (lo, hi), fg in zip(rs.factor_slices, factor_groups):
            idx = fg.element_from_matrix(M[lo:hi, lo:hi])
            ct.append(int(fg.classes.class_of[idx]))
        class_tuples.append(tuple(ct))
    tab = product_table(tables, class_tuples, W.classes.sizes, W.order, t)
    if len(tab) != len(W.classes):
        raise AlgorithmError("product table is not square")
    check_orthogonality(tab.values, tab.class_sizes, tab.order)
    return tab


# ------------------------------------------------------ reflection subgroups

class ReflectionSubgroup:
    """Reflection subgroup W_R of a Weyl group W, for a subsystem R.

    The character table is the tensor product of the standard tables of the
    components of R; ``class_of`` maps an element of W (by index) lying in the
    subgroup to its class in that product table.
    """

    def __init__(self, parent: WeylGroup, subsystem):
        self.parent = parent
        self.subsystem = subsystem
        rs = parent.root_system
        comps = subsystem.components
        self.factor_groups = [weyl_group(c.type) for c in comps]
        # image of each factor element in the parent
        images = []
        for c, fg in zip(comps, self.factor_groups):
            refl = [parent.lookup([rs.root_index[rs.reflect(v, b)] for v in rs.roots])
                    for b in c.base]
            img = np.empty(fg.order, dtype=np.int64)
            img[0] = 0
            for w in range(1, fg.order):
                word = fg.words[w]
                # words[w] = (i,) + words[v] for its BFS parent v
                v = fg.index[fg.perms[fg.generators[word[0]]][fg.perms[w]].tobytes()]
                img[w] = parent.mult(refl[word[0]], int(img[v]))
            images.append(img)
        self.factor_images = images
        self.class_of = {}
        elements = [0]
        class_tuples = {(): 0} if not comps else {}
        tuple_list = [()] if not comps else []
        sizes = [1] if not comps else []
        if comps:
            for combo in product(*[range(fg.order) for fg in self.factor_groups]):
                x = 0
                for img, w in zip(images, combo):
                    x = parent.mult(x, int(img[w]))
                ct = tuple(int(fg.classes.class_of[w]) for fg, w in zip(self.factor_groups, combo))
                if ct not in class_tuples:
                    class_tuples[ct] = len(tuple_list)
                    tuple_list.append(ct)
                    sizes.append(0)
                c = class_tuples[ct]
                sizes[c] += 1
                self.class_of[x] = c
            elements = sorted(self.class_of)
        else:
            self.class_of[0] = 0
        self.elements = elements
        order = len(self.class_of)
        expected = 1
        for fg in self.factor_groups:
            expected *= fg.order
        if order != expected:
            raise EmbeddingError("reflection subgroup image is not faithful")
        self.class_tuples = tuple_list
        self.order = order
        self.class_sizes = sizes
        # representatives: least parent index in each class
        reps = [None] * len(tuple_list)
        for x in sorted(self.class_of):
            c = self.class_of[x]
            if reps[c] is None:
                reps[c] = x
        self.representatives = reps
        self.table = product_table([fg.table for fg in self.factor_groups], tuple_list, sizes,
                                   order, subsystem.cartan_type)

    def __contains__(self, w):
        return int(w) in self.class_of


def class_fusion(sub: ReflectionSubgroup, parent) -> list:
    """For each class of ``sub``, the class of ``parent`` containing it.

    ``parent`` is the ambient WeylGroup or another ReflectionSubgroup of the
    same ambient group.
    """
    out = []
    for g in sub.representatives:
        if isinstance(parent, WeylGroup):
            out.append(int(parent.classes.class_of[g]))
        else:
            if g not in parent.class_of:
                raise EmbeddingError("subgroup element is not in the target subgroup")
            out.append(parent.class_of[g])
    return out
