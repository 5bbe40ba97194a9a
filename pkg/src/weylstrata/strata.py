"""Pseudo-Levi subgroups, Jordan classes, sheets and Lusztig strata.

A Jordan class is modelled by a pair (pseudo-Levi L up to W-conjugacy,
unipotent class of L up to N_W(L)); when L = G the central element is tracked
explicitly.  The regular part of the closure of J(su) is generated by the
pairs (L, L') with L = C_{L'}(Z(L)°): each contributes the class
Ind_L^{L'}(O) of L'.  Sheets are the maximal elements of that order within
each dimension layer, and strata are the fibres of

    phi(su) = j_{W_s}^W (Springer representation of u in W_s).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import gcd

import numpy as np

from . import combinat
from .errors import ConfigurationError, IntegrityError, InvalidInputError
from .repops import j_induce
from .rootsys import (CartanType, RootSubsystem, build_root_system, classify_subsystem,
                      extended_diagram, standard_realization)
from .unipotent import (InductionDatum, classify_unipotent, find_class, group_dimension,
                        ls_induce)
from .weylgrp import ReflectionSubgroup, join_labels, weyl_group

log = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"


def _prime_factors(n):
    out, d = set(), 2
    while n > 1 and d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _is_prime(n):
    return n > 1 and _prime_factors(n) == {n}


@dataclass(frozen=True)
class GroupSpec:
    semisimple_type: CartanType
    total_rank: int | None = None
    isogeny: str = "simply_connected"
    characteristic: int = 0

    def __post_init__(self):
        t = self.semisimple_type
        if isinstance(t, str):
            t = CartanType.parse(t)
            object.__setattr__(self, "semisimple_type", t)
        if self.total_rank is None:
            object.__setattr__(self, "total_rank", t.rank)
        if self.total_rank < t.rank:
            raise ConfigurationError("total rank is smaller than the semisimple rank")
        if self.isogeny != "simply_connected":
            raise ConfigurationError(f"isogeny {self.isogeny!r} is not supported")
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ConfigurationError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def dimension(self):
        return group_dimension(self.semisimple_type) + self.total_rank - self.semisimple_type.rank

    def center_order(self):
        """Order of the prime-to-p part of the component group of Z(G)."""
        n = 1
        for f, r in self.semisimple_type.factors:
            n *= {"A": r + 1, "B": 2, "C": 2, "D": 4, "G": 1}[f]
        p = self.characteristic
        while p and n % p == 0:
            n //= p
        return n

    def to_dict(self):
        return {"type": str(self.semisimple_type), "total_rank": self.total_rank,
                "isogeny": self.isogeny, "characteristic": self.characteristic}


@dataclass(eq=False)
class PseudoLevi:
    index: int
    name: str
    subsystem: RootSubsystem
    root_indices: frozenset
    central_torus_rank: int
    is_levi_of_G: bool
    excluded_primes: frozenset
    realizations: list = field(repr=False)

    @property
    def cartan_type(self):
        return self.subsystem.cartan_type

    @property
    def semisimple_rank(self):
        return self.subsystem.semisimple_rank

    def realizable(self, p):
        return p not in self.excluded_primes

    def to_dict(self):
        return {
            "index": self.index, "name": self.name, "type": str(self.cartan_type),
            "base": [list(b) for b in self.subsystem.base],
            "central_torus_rank": self.central_torus_rank,
            "is_levi_of_G": self.is_levi_of_G,
            "excluded_characteristics": sorted(self.excluded_primes),
        }


@dataclass(frozen=True)
class JordanClassDatum:
    levi: int
    uclass: tuple
    orbit_dim: int
    phi: str
    central_index: int | None = None

    @property
    def key(self):
        z = "" if self.central_index is None else f"@z{self.central_index}"
        return f"L{self.levi}:{join_labels(list(self.uclass)) if self.uclass else '1'}{z}"


@dataclass
class Sheet:
    index: int
    generator: JordanClassDatum
    members: list
    orbit_dim: int
    ambiguous_pair: bool = False


@dataclass
class Stratum:
    phi: str
    classes: list
    orbit_dim: int
    components: list


@dataclass(frozen=True)
class LeviPair:
    """L (pseudo-Levi ``sub``) embedded by ``element`` as a Levi of ``sup``."""

    sub: int
    sup: int
    element: int
    image: frozenset


def _class_tuples(subsystem):
    lists = [[u.label for u in classify_unipotent(c.type)] for c in subsystem.components]
    return [tuple(t) for t in product(*lists)]


def _solve_int(B, v):
    """Integer x with B x = v (B has independent columns)."""
    x, *_ = np.linalg.lstsq(B.astype(float), np.asarray(v, dtype=float), rcond=None)
    xi = np.rint(x).astype(np.int64)
    if not np.array_equal(B @ xi, np.asarray(v, dtype=np.int64)):
        raise IntegrityError("root is not an integral combination of the component base")
    return xi


class StrataComputation:
    """All data attached to one GroupSpec; every stage is computed lazily."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.rs = build_root_system(spec.semisimple_type)
        self.W = weyl_group(spec.semisimple_type)
        self._subgroups = {}
        self.exclusions_log = []

    # ------------------------------------------------------------ helpers

    def subgroup(self, subsystem):
        key = subsystem.base
        if key not in self._subgroups:
            self._subgroups[key] = ReflectionSubgroup(self.W, subsystem)
        return self._subgroups[key]

    @cached_property
    def _root_mat(self):
        return self.rs.root_array.astype(float)

    def _span_closure(self, idx):
        """Indices of all roots in the Q-span of the roots ``idx``."""
        R = self._root_mat
        if not idx:
            return frozenset()
        B = R[sorted(idx)]
        # residual of every root after projection onto the row space of B
        coef, *_ = np.linalg.lstsq(B.T, R.T, rcond=None)
        resid = np.abs(R.T - B.T @ coef).max(axis=0)
        return frozenset(int(i) for i in np.flatnonzero(resid < 1e-8)) | frozenset(idx)

    def _orbit_images(self, idx):
        idx = sorted(idx)
        if not idx:
            return np.zeros((self.W.order, 0), dtype=np.int64)
        return np.sort(self.W.perms[:, idx].astype(np.int64), axis=1)

    def _canonical_key(self, idx):
        imgs = self._orbit_images(idx)
        if imgs.shape[1] == 0:
            return ()
        order = np.lexsort(imgs.T[::-1])
        return tuple(int(x) for x in imgs[order[0]])

    # ------------------------------------------------------ pseudo-Levis

    @cached_property
    def pseudo_levis(self):
        """All pseudo-Levi subsystems up to W-conjugacy (realizable or not)."""
        rs = self.rs
        diagrams = extended_diagram(rs)
        per_factor = []
        for d in diagrams:
            n = len(d.nodes)
            opts = []
            # subsets avoiding the affine node (node 0) first: standard Levis
            subsets = [s for k in range(n) for s in combinations(range(n), k)]
            subsets.sort(key=lambda s: (0 in s, -len(s), s))
            for keep in subsets:
                removed = [i for i in range(n) if i not in keep]
                g = 0
                for i in removed:
                    g = gcd(g, d.marks[i])
                opts.append(([d.nodes[i] for i in keep], g))
            per_factor.append(opts)
        found = {}
        order = []
        for combo in product(*per_factor):
            base = [b for nodes, _ in combo for b in nodes]
            bad = set()
            for _, g in combo:
                bad |= _prime_factors(g)
            sub = classify_subsystem(rs, base)
            idx = sub.root_indices
            key = self._canonical_key(idx)
            if key not in found:
                found[key] = {"sub": sub, "idx": idx, "bad": [bad]}
                order.append(key)
            else:
                found[key]["bad"].append(bad)
        out = []
        for key in order:
            info = found[key]
            excluded = frozenset.intersection(*[frozenset(b) for b in info["bad"]])
            sub, idx = info["sub"], info["idx"]
            is_levi = self._span_closure(idx) == idx
            out.append(PseudoLevi(len(out), "", sub, idx,
                                  self.spec.total_rank - sub.semisimple_rank,
                                  is_levi, excluded, info["bad"]))
        self._name_levis(out)
        return out

    def _name_levis(self, levis):
        rs = self.rs
        maxlen = {}
        for k, (lo, hi) in enumerate(rs.factor_slices):
            maxlen[k] = max(rs.inner(r, r) for r in rs.positive_roots if any(r[lo:hi]))
        names = []
        for L in levis:
            parts = []
            for c in L.subsystem.components:
                b = c.base[0]
                short = c.family == "A" and rs.inner(b, b) < maxlen[rs.factor_of(b)]
                parts.append(("~" if short else "") + f"{c.family}{c.rank}")
            names.append("x".join(parts) if parts else "T")
        counts = {}
        for n in names:
            counts[n] = counts.get(n, 0) + 1
        seen = {}
        for L, n in zip(levis, names):
            if counts[n] > 1:
                seen[n] = seen.get(n, 0) + 1
                n = f"{n}#{seen[n]}"
            L.name = n

    def enumerate_pseudo_levis(self):
        """Pseudo-Levis realizable in the group's characteristic."""
        p = self.spec.characteristic
        out = []
        for L in self.pseudo_levis:
            if L.realizable(p):
                out.append(L)
            else:
                self.exclusions_log.append(
                    f"{L.name}: excluded in characteristic {p} (every realization removes "
                    f"affine nodes whose marks are all divisible by {p})")
        for msg in self.exclusions_log:
            log.info(msg)
        return out

    @cached_property
    def realizable_levis(self):
        return self.enumerate_pseudo_levis()

    @cached_property
    def full_levi(self):
        full = frozenset(range(len(self.rs.roots)))
        return next(L for L in self.pseudo_levis if L.root_indices == full)

    # ---------------------------------------------------------- normalizers

    def _stabilizer(self, L):
        idx = sorted(L.root_indices)
        if not idx:
            return list(range(self.W.order))
        imgs = self._orbit_images(idx)
        target = np.array(idx, dtype=np.int64)
        return [int(w) for w in np.flatnonzero(np.all(imgs == target, axis=1))]

    @cached_property
    def _comp_roots_cache(self):
        return {}

    def _component_roots(self, comp):
        key = comp.base
        if key not in self._comp_roots_cache:
            self._comp_roots_cache[key] = RootSubsystem(self.rs, (comp,)).roots
        return self._comp_roots_cache[key]

    def _character_actions(self, L):
        """Permutations of the irreducible labels of W_L induced by N_W(L).

        Transporting through characters sidesteps the choice of coordinates
        on each component (an outer automorphism of D4 inside B4 can look like
        triality in the standard realization).
        """
        sub = self.subgroup(L.subsystem)
        tab = sub.table
        W = self.W
        inv = W.inverses
        stab = np.array(self._stabilizer(L), dtype=np.int64)
        P, Pinv = W.perms[stab], W.perms[inv[stab]]
        cols = []
        for g in sub.representatives:
            # w g w^-1 for every w in the stabilizer at once
            conj = np.take_along_axis(P, W.perms[g][Pinv], axis=1)
            cols.append([sub.class_of[W.index[row.tobytes()]] for row in conj])
        sigmas = set(zip(*cols)) if cols else {()}
        rows = {tuple(int(x) for x in r): lab for r, lab in zip(tab.values, tab.labels)}
        out = []
        for s in sorted(sigmas):
            perm = {}
            for r, lab in zip(tab.values, tab.labels):
                img = tuple(int(r[c]) for c in s)
                if img not in rows:
                    raise IntegrityError("conjugate character missing from the table",
                                         {"levi": L.name, "character": lab})
                perm[lab] = rows[img]
            out.append(perm)
        return out

    @cached_property
    def _class_actions(self):
        out = {}
        for L in self.pseudo_levis:
            by_springer = {self.springer_label(L.subsystem, t): t
                           for t in _class_tuples(L.subsystem)}
            acts = []
            for perm in self._character_actions(L):
                act = {}
                for E, t in by_springer.items():
                    if perm[E] not in by_springer:
                        raise IntegrityError("normalizer does not preserve Springer image",
                                             {"levi": L.name, "character": E})
                    act[t] = by_springer[perm[E]]
                acts.append(act)
            out[L.index] = acts
        return out

    def canonical_class(self, L, labels):
        """Least label tuple in the N_W(L)-orbit of ``labels``."""
        labels = tuple(labels)
        return min(act[labels] for act in self._class_actions[L.index])

    # -------------------------------------------------------- Levi pairs

    @cached_property
    def levi_pairs(self):
        """Pairs (L, L') with an embedding of L as C_{L'}(Z(L)°), up to W_{L'}."""
        levis = self.realizable_levis
        out = []
        n_roots = len(self.rs.roots)
        for L in levis:
            idx = sorted(L.root_indices)
            imgs = self.W.perms[:, idx].astype(np.int64) if idx else np.zeros((self.W.order, 0), int)
            sorted_imgs = np.sort(imgs, axis=1)
            for Lp in levis:
                if Lp.semisimple_rank < L.semisimple_rank:
                    continue
                mask = np.zeros(n_roots, dtype=bool)
                mask[list(Lp.root_indices)] = True
                ok = np.all(mask[imgs], axis=1) if idx else np.ones(self.W.order, dtype=bool)
                ws = np.flatnonzero(ok)
                if not len(ws):
                    continue
                if idx:
                    _, first = np.unique(sorted_imgs[ws], axis=0, return_index=True)
                else:
                    first = np.array([0])
                seen_images = {tuple(int(x) for x in sorted_imgs[ws[i]]): int(ws[i]) for i in first}
                sub_Lp = self.subgroup(Lp.subsystem)
                canon_seen = set()
                for key, w in sorted(seen_images.items(), key=lambda kv: kv[1]):
                    image = frozenset(key)
                    if self._span_closure(image) & Lp.root_indices != image:
                        continue
                    canon = self._wl_canonical(sub_Lp, key)
                    if canon in canon_seen:
                        continue
                    canon_seen.add(canon)
                    out.append(LeviPair(L.index, Lp.index, w, image))
        return out

    def _wl_canonical(self, subgroup, key):
        if not key:
            return ()
        els = np.array(subgroup.elements, dtype=np.int64)
        imgs = np.sort(self.W.perms[els][:, list(key)].astype(np.int64), axis=1)
        order = np.lexsort(imgs.T[::-1])
        return tuple(int(x) for x in imgs[order[0]])

    # ------------------------------------------------------ Jordan classes

    def levi_by_index(self, i):
        return self.pseudo_levis[i]

    def springer_label(self, subsystem, labels):
        return join_labels([find_class(c.type, lab).springer_label
                            for c, lab in zip(subsystem.components, labels)])

    def class_dim(self, subsystem, labels):
        return sum(find_class(c.type, lab).dim_class for c, lab in zip(subsystem.components, labels))

    def levi_dim(self, L):
        return len(L.root_indices) + self.spec.total_rank

    def phi(self, L, labels):
        return j_induce(self.subgroup(L.subsystem), self.W, self.springer_label(L.subsystem, labels))

    @cached_property
    def jordan_classes(self):
        out = []
        G = self.full_levi
        gdim = self.spec.dimension
        for L in self.realizable_levis:
            classes = sorted({self.canonical_class(L, t) for t in _class_tuples(L.subsystem)})
            for labels in classes:
                d = gdim - (self.levi_dim(L) - self.class_dim(L.subsystem, labels))
                ph = self.phi(L, labels)
                if L is G:
                    for z in range(self.spec.center_order()):
                        out.append(JordanClassDatum(L.index, labels, d, ph, z))
                else:
                    out.append(JordanClassDatum(L.index, labels, d, ph))
        out.sort(key=lambda j: (-j.orbit_dim, j.key))
        return out

    @cached_property
    def _by_key(self):
        return {j.key: j for j in self.jordan_classes}

    def lookup(self, levi, labels, central_index=None):
        return self._by_key[JordanClassDatum(levi, tuple(labels), 0, "", central_index).key]

    # ------------------------------------------------- Levi induction data

    def _factor_datum(self, F, parts):
        """InductionDatum for the factor F of L' given the L-components ``parts``.

        ``parts`` is a list of (component, class label) lying inside F.
        """
        rs = self.rs
        if len(parts) == 1 and parts[0][0].rank == F.rank and parts[0][0].family == F.family:
            return None  # Levi is all of F
        if F.family == "G":
            if not parts:
                return InductionDatum(F.type, levi="T", source="1")
            (c, lab), = parts
            b = c.base[0]
            long_ = rs.inner(b, b) == max(rs.inner(x, x) for x in F.base)
            return InductionDatum(F.type, levi="A1" if long_ else "~A1", source=lab)
        P = standard_realization(F.family, F.rank)
        B = np.array(F.base, dtype=np.int64).T
        dim = P.shape[0]
        parent = list(range(dim))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        comp_e = []
        for c, lab in parts:
            roots = [P @ _solve_int(B, r) for r in self._component_roots(c)]
            comp_e.append((c, lab, roots))
            for v in roots:
                nz = np.flatnonzero(v)
                for a in nz[1:]:
                    parent[find(int(a))] = find(int(nz[0]))
        blocks = {}
        for i in range(dim):
            blocks.setdefault(find(i), []).append(i)
        block_of_comp = [find(int(np.flatnonzero(roots[0])[0])) for _, _, roots in comp_e]
        gl_parts, core, core_seen = [], (), False
        if F.family == "B":
            core = (1,)
        for root_id, members in sorted(blocks.items()):
            inside = [(c, lab, roots) for (c, lab, roots), b in zip(comp_e, block_of_comp)
                      if b == root_id]
            is_core = False
            if F.family in "BCD":
                for _, _, roots in inside:
                    for v in roots:
                        if np.count_nonzero(v) == 1:
                            is_core = True
                pairs = {}
                for _, _, roots in inside:
                    for v in roots:
                        nz = np.flatnonzero(v)
                        if len(nz) == 2:
                            pairs.setdefault(tuple(nz), set()).add(int(v[nz[0]] * v[nz[1]]))
                if any(len(s) == 2 for s in pairs.values()):
                    is_core = True
            size = len(members)
            if not is_core:
                if len(inside) > 1:
                    raise IntegrityError("two components share a GL block")
                if inside:
                    c, lab, _ = inside[0]
                    if c.family != "A" or c.rank != size - 1:
                        raise IntegrityError("GL block does not match its component")
                    gl_parts.append(combinat.parse_partition(lab))
                else:
                    gl_parts.append((1,))
                continue
            if core_seen:
                raise IntegrityError("Levi has two core blocks")
            core_seen = True
            core = self._core_partition(F.family, size, [(c, lab) for c, lab, _ in inside])
        return InductionDatum(F.type, gl_parts=tuple(gl_parts), core=core)

    @staticmethod
    def _core_partition(family, size, comps):
        labs = [lab for _, lab in comps]
        fams = [(c.family, c.rank) for c, _ in comps]
        strip = lambda s: s[:-2] if s.endswith("II") else (s[:-1] if s.endswith("I") else s)
        if family == "C":
            if fams in ([("A", 1)], [("C", size)]):
                return combinat.parse_partition(strip(labs[0]))
        elif family == "B":
            if size == 1 and fams == [("A", 1)]:
                return {"(2)": (3,), "(1,1)": (1, 1, 1)}[labs[0]]
            if fams == [("B", size)]:
                return combinat.parse_partition(labs[0])
        elif family == "D":
            if size == 2 and fams == [("A", 1), ("A", 1)]:
                key = tuple(sorted(labs))
                return {("(2)", "(2)"): (3, 1), ("(1,1)", "(2)"): (2, 2),
                        ("(1,1)", "(1,1)"): (1, 1, 1, 1)}[key]
            if size == 3 and fams == [("A", 3)]:
                return {"(4)": (5, 1), "(3,1)": (3, 3), "(2,2)": (3, 1, 1, 1),
                        "(2,1,1)": (2, 2, 1, 1), "(1,1,1,1)": (1,) * 6}[labs[0]]
            if fams == [("D", size)]:
                return combinat.parse_partition(strip(labs[0]))
        raise IntegrityError(f"unexpected core {fams} of size {size} in type {family}")

    def induce_along(self, pair: LeviPair, labels):
        """Classes of L' (as label tuples, before N_W canonicalisation) induced from L.

        Returns (candidates, ambiguous).  Several candidates occur only for
        very even D-type results.
        """
        L = self.levi_by_index(pair.sub)
        Lp = self.levi_by_index(pair.sup)
        emb = L.subsystem.transform(self.W.perms[pair.element])
        rs = self.rs
        per_factor = []
        ambiguous = False
        for F in Lp.subsystem.components:
            Froots = {rs.root_index[r] for r in self._component_roots(F)}
            parts = [(c, lab) for c, lab in zip(emb.components, labels)
                     if rs.root_index[c.base[0]] in Froots]
            d = self._factor_datum(F, parts)
            if d is None:
                per_factor.append([parts[0][1]])
                continue
            res = ls_induce(d)
            ambiguous |= res.ambiguous
            per_factor.append([u.label for u in res.classes])
        return [tuple(t) for t in product(*per_factor)], ambiguous, emb

    def induced_class(self, pair: LeviPair, labels):
        """The class of L' (canonical labels) induced from (L, labels), plus audit flags."""
        L = self.levi_by_index(pair.sub)
        Lp = self.levi_by_index(pair.sup)
        cands, ambiguous, emb = self.induce_along(pair, labels)
        chosen = cands[0]
        if ambiguous:
            target = j_induce(self.subgroup(emb), self.subgroup(Lp.subsystem),
                              self.springer_label(L.subsystem, labels))
            hits = [c for c in cands if self.springer_label(Lp.subsystem, c) == target]
            if len(hits) != 1:
                raise IntegrityError("very even induction could not be resolved",
                                     {"L": L.name, "L'": Lp.name, "class": list(labels)})
            chosen = hits[0]
        dim_sub = self.class_dim(L.subsystem, labels)
        dim_sup = self.class_dim(Lp.subsystem, chosen)
        expected = len(Lp.root_indices) - len(L.root_indices) + dim_sub
        if dim_sup != expected:
            raise IntegrityError("Lusztig-Spaltenstein dimension formula fails",
                                 {"L": L.name, "L'": Lp.name, "class": list(labels),
                                  "induced": list(chosen), "dim": dim_sup, "expected": expected})
        return self.canonical_class(Lp, chosen), ambiguous

    def induction_audit(self):
        """Compare Lusztig-Spaltenstein induction with truncated induction.

        For every Levi pair and every class of L (not only N_W(L)-orbit
        representatives) the Springer label of the induced class must equal
        j_{W_L}^{W_L'} of the Springer label of the class, and j-induction
        must be transitive along L < L' < G.  Returns a list of failures.
        """
        failures = []
        for pr in self.levi_pairs:
            L, Lp = self.levi_by_index(pr.sub), self.levi_by_index(pr.sup)
            for labels in _class_tuples(L.subsystem):
                cands, ambiguous, emb = self.induce_along(pr, labels)
                E = self.springer_label(L.subsystem, labels)
                sub, mid = self.subgroup(emb), self.subgroup(Lp.subsystem)
                target = j_induce(sub, mid, E)
                got = sorted(self.springer_label(Lp.subsystem, c) for c in cands)
                ok = target in got if ambiguous else got == [target]
                direct = j_induce(sub, self.W, E)
                chained = j_induce(mid, self.W, target)
                if not ok or direct != chained:
                    failures.append({"L": L.name, "L'": Lp.name, "class": list(labels),
                                     "springer_of_induced": got, "j_induced": target,
                                     "j_direct": direct, "j_chained": chained})
        return failures

    # ---------------------------------------------------- closures, sheets

    @cached_property
    def _pairs_by_sub(self):
        out = {}
        for pr in self.levi_pairs:
            out.setdefault(pr.sub, []).append(pr)
        return out

    @cached_property
    def _closure_map(self):
        out, amb = {}, set()
        G = self.full_levi
        for J in self.jordan_classes:
            members = {J.key}
            if J.levi != G.index:
                for pr in self._pairs_by_sub.get(J.levi, []):
                    labels, ambiguous = self.induced_class(pr, J.uclass)
                    if pr.sup == G.index:
                        targets = [self.lookup(pr.sup, labels, z)
                                   for z in range(self.spec.center_order())]
                    else:
                        targets = [self.lookup(pr.sup, labels)]
                    for T in targets:
                        if T.orbit_dim != J.orbit_dim:
                            raise IntegrityError("regular closure leaves the dimension layer",
                                                 {"J": J.key, "member": T.key})
                        members.add(T.key)
                        if ambiguous:
                            amb.add((J.key, T.key))
            out[J.key] = members
        return out, amb

    def regular_closure(self, J):
        return [self._by_key[k] for k in sorted(self._closure_map[0][J.key])]

    @cached_property
    def _transitive_closure(self):
        direct = self._closure_map[0]
        out = {}
        for k in direct:
            seen, stack = {k}, [k]
            while stack:
                x = stack.pop()
                for y in direct[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out[k] = seen
        return out

    @cached_property
    def sheets(self):
        tc = self._transitive_closure
        amb = self._closure_map[1]
        out = []
        for J in self.jordan_classes:
            dominated = any(J.key in tc[K.key] and K.key != J.key
                            for K in self.jordan_classes if K.orbit_dim == J.orbit_dim)
            if dominated:
                continue
            members = sorted((self._by_key[k] for k in tc[J.key]),
                             key=lambda j: (-j.orbit_dim, j.key))
            flag = any(a == J.key or a in tc[J.key] for a, _ in amb)
            out.append(Sheet(len(out), J, members, J.orbit_dim, flag))
        return out

    def compute_sheets(self):
        return self.sheets

    @cached_property
    def strata(self):
        groups = {}
        for J in self.jordan_classes:
            groups.setdefault(J.phi, []).append(J)
        out = []
        for ph, classes in groups.items():
            dims = {J.orbit_dim for J in classes}
            if len(dims) != 1:
                raise IntegrityError("stratum meets several dimension layers",
                                     {"phi": ph, "dims": sorted(dims)})
            comps = [S.index for S in self.sheets if S.generator.phi == ph]
            out.append(Stratum(ph, classes, dims.pop(), comps))
        out.sort(key=lambda s: (-s.orbit_dim, s.phi))
        return out

    def compute_strata(self):
        keys = {J.key: J.phi for J in self.jordan_classes}
        for X in self.strata:
            for s in X.components:
                for M in self.sheets[s].members:
                    if keys[M.key] != X.phi:
                        raise IntegrityError("sheet straddles two strata",
                                             {"sheet": self.sheets[s].generator.key,
                                              "member": M.key, "phi": [X.phi, M.phi]})
        return self.strata

    # ------------------------------------------------------- verification

    def verify_theorem(self):
        """Check phi-constancy on regular closures, strata = unions of sheets,
        and components = sheets.  Returns a dict report."""
        failures = {"phi_constancy": [], "union_of_sheets": [], "components": []}
        for J in self.jordan_classes:
            for K in self.regular_closure(J):
                if K.phi != J.phi:
                    pr = [p for p in self._pairs_by_sub.get(J.levi, []) if p.sup == K.levi]
                    failures["phi_constancy"].append({
                        "J": J.key, "member": K.key, "phi": J.phi, "member_phi": K.phi,
                        "chain": [self.levi_by_index(J.levi).name,
                                  self.levi_by_index(K.levi).name],
                        "pairs": len(pr)})
        tc = self._transitive_closure
        for X in self.strata:
            keys = {J.key for J in X.classes}
            covered = set()
            for s in X.components:
                mem = {M.key for M in self.sheets[s].members}
                if not mem <= keys:
                    failures["union_of_sheets"].append(
                        {"phi": X.phi, "sheet": self.sheets[s].generator.key,
                         "outside": sorted(mem - keys)})
                covered |= mem
            if covered != keys:
                failures["union_of_sheets"].append({"phi": X.phi, "uncovered": sorted(keys - covered)})
            maximal = sorted(k for k in keys
                             if not any(k in tc[o] for o in keys if o != k))
            gens = sorted(self.sheets[s].generator.key for s in X.components)
            if maximal != gens:
                failures["components"].append({"phi": X.phi, "maximal": maximal, "sheets": gens})
        checks = {name: {"passed": not f, "failures": f} for name, f in failures.items()}
        return {"group": self.spec.to_dict(), "checks": checks,
                "passed": all(c["passed"] for c in checks.values())}

    # ------------------------------------------------------------- export

    def to_dict(self):
        from .unipotent import provenance

        types = sorted({(c.family, c.rank) for L in self.realizable_levis
                        for c in L.subsystem.components})
        amb = self._closure_map[1]
        pairs = []
        for pr in self.levi_pairs:
            pairs.append({"sub": self.levi_by_index(pr.sub).name,
                          "sup": self.levi_by_index(pr.sup).name,
                          "realizing_element_assumed": True})
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.spec.to_dict(),
            "data_provenance": {f"{f}{r}": provenance(CartanType(((f, r),))) for f, r in types},
            "pseudo_levis": [L.to_dict() for L in self.pseudo_levis],
            "excluded": self.exclusions_log,
            "levi_pairs": pairs,
            "jordan_classes": [
                {"key": J.key, "levi": self.levi_by_index(J.levi).name, "class": list(J.uclass),
                 "central_index": J.central_index, "orbit_dim": J.orbit_dim, "phi": J.phi,
                 "regular_closure": [K.key for K in self.regular_closure(J)]}
                for J in self.jordan_classes],
            "sheets": [
                {"index": S.index, "generator": S.generator.key, "orbit_dim": S.orbit_dim,
                 "members": [M.key for M in S.members],
                 "flags": ["ambiguous-pair"] if S.ambiguous_pair else []}
                for S in self.sheets],
            "strata": [
                {"phi": X.phi, "orbit_dim": X.orbit_dim, "classes": [J.key for J in X.classes],
                 "components": [self.sheets[s].generator.key for s in X.components]}
                for X in self.compute_strata()],
            "ambiguous_inductions": sorted([list(a) for a in amb]),
            "open_flags": {"coset_refinement_untracked_for_proper_pseudo_levis": True},
            "verification": self.verify_theorem(),
        }


# ------------------------------------------------------------------ API

SIMPLE_FACTORS = ([("A", n) for n in range(1, 6)] + [("B", n) for n in range(2, 6)]
                  + [("C", n) for n in range(2, 6)] + [("D", 4), ("D", 5), ("G", 2)])


def supported_types(max_rank=5):
    """Every semisimple type with shipped Springer data and rank <= max_rank."""
    out = []

    def grow(factors, rank, start):
        if factors:
            out.append(CartanType(tuple(factors)))
        for i in range(start, len(SIMPLE_FACTORS)):
            f = SIMPLE_FACTORS[i]
            if rank + f[1] <= max_rank:
                grow(factors + [f], rank + f[1], i)

    grow([], 0, 0)
    return sorted(set(out), key=lambda t: (t.rank, str(t)))



def compute(spec) -> StrataComputation:
    if not isinstance(spec, GroupSpec):
        spec = GroupSpec(spec)
    return StrataComputation(spec)


def enumerate_pseudo_levis(spec):
    return compute(spec).enumerate_pseudo_levis()


def levi_pairs(spec):
    return compute(spec).levi_pairs


def jordan_classes(spec):
    return compute(spec).jordan_classes


def compute_sheets(spec):
    return compute(spec).sheets


def compute_strata(spec):
    return compute(spec).compute_strata()


def verify_theorem(spec):
    return compute(spec).verify_theorem()
