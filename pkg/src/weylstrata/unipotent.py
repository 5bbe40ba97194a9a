"""Unipotent classes of simple groups of types A-D and G2 (good characteristic).

Classical classes are parametrised by partitions of the natural
representation's dimension: type A_{n-1} by partitions of n; B_n by
partitions of 2n+1 whose even parts have even multiplicity; C_n by partitions
of 2n whose odd parts have even multiplicity; D_n like B_n but of 2n, with
very even partitions (all parts even) giving two classes, flagged I and II.

Springer representations (trivial local system) for types B, C, D and G2 are
read from the JSON data files in ``weylstrata/data`` (overridable through the
``WEYL_STRATA_DATA`` environment variable).  Each file is validated on load.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from . import combinat
from .combinat import dominance_leq, format_partition, normalize, partitions, transpose
from .errors import InvalidInputError, IntegrityError
from .rootsys import CartanType, root_count

SCHEMA_VERSION = 1
VALIDATION_SUITE = "weylstrata-unipotent-1"

G2_LABELS = ("G2", "G2(a1)", "~A1", "A1", "1")


@dataclass(frozen=True)
class UnipotentClass:
    group_type: CartanType
    label: str
    dim_class: int
    springer_label: str
    partition: tuple | None = None
    flag: str | None = None  # "I" / "II" for very even classes of type D

    @property
    def is_very_even(self):
        return self.flag is not None


def natural_size(family, rank):
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[family]


def is_valid_partition(lam, family):
    lam = normalize(lam)
    if family == "A":
        return True
    bad_parity = 0 if family in "BD" else 1
    return all(lam.count(x) % 2 == 0 for x in set(lam) if x % 2 == bad_parity)


def is_very_even(lam, family):
    lam = normalize(lam)
    return family == "D" and bool(lam) and is_valid_partition(lam, "D") and all(x % 2 == 0 for x in lam)


def class_dimension(family, rank, lam):
    """Dimension of the unipotent class with Jordan type ``lam``."""
    lam = normalize(lam)
    s = sum(x * x for x in transpose(lam))
    odd = sum(1 for x in lam if x % 2)
    if family == "A":
        n = rank + 1
        return n * n - s
    N = natural_size(family, rank)
    if family == "C":
        num = N * (N + 1) - s - odd
    else:
        num = N * (N - 1) - s + odd
    if num % 2:
        raise InvalidInputError(f"{lam} is not a {family}{rank} partition")
    return num // 2


def group_dimension(t: CartanType):
    return root_count(t) + t.rank


def class_label(lam, flag=None):
    return format_partition(lam) + (flag or "")


# ---------------------------------------------------------------- collapse

def collapse(lam, family):
    """Largest partition of type ``family`` (B, C or D) dominated by ``lam``."""
    lam = list(normalize(lam))
    size = sum(lam)
    if family not in "BCD":
        raise InvalidInputError(f"collapse is defined for B, C, D, not {family}")
    if (family == "B") != (size % 2 == 1):
        raise InvalidInputError(f"size {size} impossible for type {family}")
    bad = 1 if family == "C" else 0
    while True:
        offenders = [x for x in set(lam) if x % 2 == bad and lam.count(x) % 2]
        if not offenders:
            return tuple(lam)
        q = max(offenders)
        last = max(i for i, x in enumerate(lam) if x == q)
        lam[last] -= 1
        j = next((i for i in range(last + 1, len(lam)) if lam[i] < q - 1), None)
        if j is None:
            lam.append(1)
        else:
            lam[j] += 1
        lam = list(normalize(lam))


def collapse_bruteforce(lam, family):
    """Collapse by exhaustive search over valid partitions (test oracle)."""
    lam = normalize(lam)
    below = [mu for mu in partitions(sum(lam))
             if is_valid_partition(mu, family) and dominance_leq(mu, lam)]
    tops = [mu for mu in below if all(dominance_leq(nu, mu) for nu in below)]
    if len(tops) != 1:
        raise InvalidInputError("no unique maximal valid partition")
    return tops[0]


# ------------------------------------------------------------ enumeration

def classical_partitions(family, rank):
    N = natural_size(family, rank)
    return [lam for lam in partitions(N) if is_valid_partition(lam, family)]


def springer_bipartition(family, lam):
    """Bipartition (alpha, beta) attached to a B/C/D partition by Lusztig's symbols.

    For type D the pair is unordered; it is returned with alpha <= beta.
    """
    lam = sorted(normalize(lam))
    parity_of_count = 0 if family == "D" else 1
    if len(lam) % 2 != parity_of_count:
        lam = [0] + lam
    vals = [x + i for i, x in enumerate(lam)]
    evens = sorted(v // 2 for v in vals if v % 2 == 0)
    odds = sorted((v - 1) // 2 for v in vals if v % 2 == 1)
    if family == "B":
        top, bottom = odds, evens
    else:
        top, bottom = evens, odds
    alpha = normalize(x - i for i, x in enumerate(top))
    beta = normalize(x - i for i, x in enumerate(bottom))
    if family == "D" and alpha > beta:
        alpha, beta = beta, alpha
    return alpha, beta


# ------------------------------------------------------------ data files

_DEFAULT_DATA = str(Path(__file__).with_name("data"))


def data_dir():
    return Path(_data_key())


def _data_key():
    return os.environ.get("WEYL_STRATA_DATA") or _DEFAULT_DATA


def data_file(family, rank, directory=None):
    return Path(directory or data_dir()) / f"springer_{family}{rank}.json"


def generate_table(family, rank):
    """Springer data for a classical type from the symbol algorithm."""
    from .weylgrp import weyl_group

    if family not in "BCD":
        raise InvalidInputError("the symbol generator covers types B, C, D")
    tab = weyl_group(CartanType(((family, rank),))).table
    by_alias = {v: k for k, v in tab.aliases.items()}
    entries = []
    for lam in classical_partitions(family, rank):
        a, b = springer_bipartition(family, lam)
        dim = class_dimension(family, rank, lam)
        if family != "D":
            entries.append({"label": class_label(lam), "dim": dim,
                            "springer": combinat.format_bipartition(a, b)})
            continue
        name = "{" + combinat.format_bipartition(a, b)[1:-1] + "}"
        if is_very_even(lam, "D"):
            for flag, sign in (("I", "+"), ("II", "-")):
                entries.append({"label": class_label(lam, flag), "dim": dim,
                                "springer": by_alias[name + sign]})
        else:
            entries.append({"label": class_label(lam), "dim": dim, "springer": by_alias[name]})
    return entries


def write_data_file(family, rank, directory=None):
    """Regenerate one classical data file (developer tool)."""
    path = data_file(family, rank, directory)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "type": f"{family}{rank}",
        "provenance": {
            "source": "DERIVED: symbol algorithm, validated by b-identity and injectivity",
            "validation_suite": VALIDATION_SUITE,
        },
        "classes": generate_table(family, rank),
    }
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    return path


def _parse_label(family, label):
    if family == "G":
        return None, None
    flag = None
    for f in ("II", "I"):
        if label.endswith(f):
            flag, label = f, label[: -len(f)]
            break
    return combinat.parse_partition(label), flag


def validate_classes(t: CartanType, classes):
    """Return the list of violated invariants (empty when all hold)."""
    from .weylgrp import weyl_group

    family, rank = t.factors[0]
    tab = weyl_group(t).table
    problems = []
    gdim = group_dimension(t)
    seen = set()
    for u in classes:
        if u.springer_label not in tab.labels:
            problems.append(f"{u.label}: unknown character {u.springer_label}")
            continue
        num = gdim - u.dim_class - rank
        if u.dim_class % 2:
            problems.append(f"{u.label}: odd class dimension {u.dim_class}")
        if num % 2 or tab.b[tab.index(u.springer_label)] != num // 2:
            problems.append(f"{u.label}: b-identity fails for {u.springer_label}")
        if u.springer_label in seen:
            problems.append(f"{u.label}: Springer label {u.springer_label} repeated")
        seen.add(u.springer_label)
        if u.partition is not None and class_dimension(family, rank, u.partition) != u.dim_class:
            problems.append(f"{u.label}: dimension disagrees with the partition formula")
    by_dim = sorted(classes, key=lambda u: -u.dim_class)
    if by_dim[0].springer_label != tab.trivial:
        problems.append("regular class does not map to the trivial character")
    if by_dim[-1].dim_class != 0 or by_dim[-1].springer_label != tab.sign:
        problems.append("trivial class does not map to the sign character")
    sub = by_dim[1]
    if sub.dim_class != gdim - rank - 2 or tab.b[tab.index(sub.springer_label)] != 1:
        problems.append("subregular class does not map to the reflection character")
    if family != "G":
        expected = set()
        for lam in classical_partitions(family, rank):
            if is_very_even(lam, family):
                expected |= {class_label(lam, "I"), class_label(lam, "II")}
            else:
                expected.add(class_label(lam))
        if expected != {u.label for u in classes}:
            problems.append("class list is incomplete or has extra entries")
    return problems


@lru_cache(maxsize=None)
def _load(family, rank, directory):
    path = data_file(family, rank, directory)
    if not path.exists():
        raise IntegrityError(f"missing Springer data file {path.name}", {"path": str(path)})
    doc = json.loads(path.read_text())
    if doc.get("schema_version") != SCHEMA_VERSION or doc.get("type") != f"{family}{rank}":
        raise IntegrityError(f"{path.name}: schema mismatch", {"path": str(path)})
    t = CartanType(((family, rank),))
    classes = []
    for e in doc["classes"]:
        if not {"label", "dim", "springer"} <= set(e):
            raise IntegrityError(f"{path.name}: malformed entry {e}")
        lam, flag = _parse_label(family, e["label"])
        classes.append(UnipotentClass(t, e["label"], int(e["dim"]), e["springer"], lam, flag))
    problems = validate_classes(t, classes)
    if problems:
        raise IntegrityError(f"{path.name} failed validation", {"violations": problems})
    return tuple(sorted(classes, key=lambda u: (-u.dim_class, u.label))), doc


def provenance(t: CartanType):
    family, rank = t.factors[0]
    if family == "A":
        return {"source": "computed: partitions, identity Springer map"}
    return _load(family, rank, _data_key())[1]["provenance"]


def g2_induction_table():
    """{(levi, source class): target class} for G2, from the curated file."""
    doc = _load("G", 2, _data_key())[1]
    return {(e["levi"], e["source"]): e["target"] for e in doc["induction"]}


def classify_unipotent(t) -> list:
    """Unipotent classes of the simple type ``t``, by decreasing dimension."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    return list(_classes(t, _data_key()))


@lru_cache(maxsize=None)
def _classes(t, directory):
    if not t.is_irreducible:
        raise InvalidInputError(f"{t} is not simple; classes of products are tuples")
    family, rank = t.factors[0]
    if family == "A":
        out = [UnipotentClass(t, format_partition(lam), class_dimension("A", rank, lam),
                              format_partition(lam), lam)
               for lam in partitions(rank + 1)]
        return tuple(sorted(out, key=lambda u: (-u.dim_class, u.label)))
    return tuple(_load(family, rank, directory)[0])


@lru_cache(maxsize=None)
def _class_index(t, directory):
    return {u.label: u for u in _classes(t, directory)}


def find_class(t, label):
    if isinstance(t, str):
        t = CartanType.parse(t)
    try:
        return _class_index(t, _data_key())[label]
    except KeyError:
        raise InvalidInputError(f"no unipotent class {label!r} in {t}") from None


def springer(t, u) -> str:
    """Springer representation (trivial local system) of the class ``u``."""
    label = u.label if isinstance(u, UnipotentClass) else u
    return find_class(t, label).springer_label


# ------------------------------------------------------------- induction

@dataclass(frozen=True)
class InductionDatum:
    """Levi subgroup of a simple group of type ``target`` and a class on it.

    Classical targets: ``gl_parts`` are partitions of the block sizes of the
    GL factors (size-one blocks included) and ``core`` is a partition of the
    natural module of the same-type factor (empty for A; ``(1,)`` for a
    trivial B core).  For G2, ``levi`` names the Levi ("T", "A1", "~A1",
    "G2") and ``source`` is the class label on it.
    """

    target: CartanType
    gl_parts: tuple = ()
    core: tuple = ()
    levi: str | None = None
    source: str | None = None


@dataclass(frozen=True)
class InducedClass:
    partition: tuple | None
    classes: tuple
    ambiguous: bool = False


def ls_induce(d: InductionDatum) -> InducedClass:
    """Lusztig-Spaltenstein induction from a Levi subgroup."""
    family, rank = d.target.factors[0]
    if family == "G":
        table = g2_induction_table()
        key = (d.levi, d.source)
        if key not in table:
            raise InvalidInputError(f"no G2 induction datum {key}")
        return InducedClass(None, (find_class(d.target, table[key]),))
    parts = [normalize(p) for p in d.gl_parts]
    N = natural_size(family, rank)
    if family == "A":
        if d.core:
            raise InvalidInputError("type A Levis have no core")
        if sum(sum(p) for p in parts) != N:
            raise InvalidInputError("GL blocks do not fill the natural module")
        lam = combinat.add_partitions(*parts)
        return InducedClass(lam, (find_class(d.target, class_label(lam)),))
    core = normalize(d.core)
    if 2 * sum(sum(p) for p in parts) + sum(core) != N:
        raise InvalidInputError("2 * (GL block sizes) + core size != natural dimension")
    if not is_valid_partition(core, family):
        raise InvalidInputError(f"core {core} is not a {family} partition")
    lam = collapse(combinat.add_partitions(core, *[tuple(2 * x for x in p) for p in parts]), family)
    if is_very_even(lam, family):
        return InducedClass(lam, (find_class(d.target, class_label(lam, "I")),
                                  find_class(d.target, class_label(lam, "II"))), True)
    return InducedClass(lam, (find_class(d.target, class_label(lam)),))


def levi_dimension(d: InductionDatum):
    """Dimension of the Levi subgroup described by a classical datum."""
    family, rank = d.target.factors[0]
    dim = sum(sum(p) ** 2 for p in d.gl_parts)
    if family == "A":
        return dim - 1
    c = sum(d.core)
    core_rank = c // 2
    if core_rank:
        dim += group_dimension(CartanType(((family, core_rank),))) if not (
            family == "D" and core_rank == 1) else 1
    return dim
