import json
import shutil

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weylstrata import combinat as cb
from weylstrata.errors import IntegrityError, InvalidInputError
from weylstrata.rootsys import CartanType
from weylstrata.unipotent import (InductionDatum, class_dimension, classical_partitions,
                                  classify_unipotent, collapse, collapse_bruteforce, data_dir,
                                  find_class, group_dimension, is_valid_partition, levi_dimension,
                                  ls_induce, natural_size, springer, validate_classes)

SHIPPED = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5",
           "D4", "D5", "G2"]


# ---- oracle: centralizer dimension of an explicit nilpotent matrix --------

def _block_form(k):
    # form on a single Jordan block for which the shift is skew-adjoint;
    # symmetric for odd k, alternating for even k
    B = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        B[i, k - 1 - i] = (-1) ** i
    return B


def _nilpotent(family, lam):
    """(e, M): nilpotent e of Jordan type lam preserving the form M."""
    want_sym = family in "BD"
    blocks = []
    for k in sorted(set(lam), reverse=True):
        m = lam.count(k)
        J = np.eye(k, k, -1, dtype=np.int64)
        F = _block_form(k)
        block_sym = k % 2 == 1
        if block_sym == want_sym:
            blocks += [(J, F)] * m
        else:
            # the block form has the wrong symmetry, so pair it with an alternating one
            pair = np.array([[0, 1], [-1, 0]])
            blocks += [(np.kron(np.eye(2, dtype=np.int64), J), np.kron(pair, F))] * (m // 2)
    N = sum(lam)
    e, M = np.zeros((N, N), dtype=np.int64), np.zeros((N, N), dtype=np.int64)
    i = 0
    for J, F in blocks:
        s = J.shape[0]
        e[i:i + s, i:i + s], M[i:i + s, i:i + s] = J, F
        i += s
    return e, M


def centralizer_dim(family, lam):
    lam = list(lam)
    N = sum(lam)
    if family == "A":
        e = np.zeros((N, N), dtype=np.int64)
        i = 0
        for k in lam:
            e[i:i + k, i:i + k] = np.eye(k, k, -1)
            i += k
        rows = [np.kron(e, np.eye(N)) - np.kron(np.eye(N), e.T)]
        return N * N - np.linalg.matrix_rank(np.vstack(rows)) - 1  # sl_n
    e, M = _nilpotent(family, lam)
    assert np.array_equal(e.T @ M, -M @ e)
    assert np.array_equal(M.T, M if family in "BD" else -M)
    assert abs(round(np.linalg.det(M))) == 1
    I = np.eye(N)
    # x in g:  x^T M + M x = 0 ;  [x, e] = 0   (x flattened row-major)
    P = np.zeros((N * N, N * N))
    for a in range(N):
        for b in range(N):
            P[a * N + b, b * N + a] = 1
    form = np.kron(I, M.T) @ P + np.kron(M, I)
    comm = np.kron(I, e.T) - np.kron(e, I)
    return N * N - np.linalg.matrix_rank(np.vstack([form, comm]))


def algebra_dim(family, rank):
    return group_dimension(CartanType(((family, rank),)))


CLASSICAL = [("A", n) for n in (1, 2, 3, 4)] + [("B", 2), ("B", 3), ("B", 4), ("C", 2),
                                                 ("C", 3), ("C", 4), ("D", 4), ("D", 5)]


@pytest.mark.parametrize("family,rank", CLASSICAL)
def test_class_dimension_against_matrix_centralizer(family, rank):
    parts = cb.partitions(rank + 1) if family == "A" else classical_partitions(family, rank)
    for lam in parts:
        expected = algebra_dim(family, rank) - centralizer_dim(family, lam)
        assert class_dimension(family, rank, lam) == expected, lam


# ---- collapse -------------------------------------------------------------

sizes = st.sampled_from([("B", n) for n in (3, 5, 7, 9, 11)] + [("C", n) for n in (2, 4, 6, 8, 10)]
                        + [("D", n) for n in (4, 6, 8, 10)])


@given(sizes.flatmap(lambda fs: st.tuples(st.just(fs[0]), st.sampled_from(cb.partitions(fs[1])))))
def test_collapse_matches_bruteforce(case):
    family, lam = case
    got = collapse(lam, family)
    assert got == collapse_bruteforce(lam, family)
    assert is_valid_partition(got, family) and cb.dominance_leq(got, lam)


def test_collapse_rejects_bad_sizes():
    with pytest.raises(InvalidInputError):
        collapse((2, 2), "B")
    with pytest.raises(InvalidInputError):
        collapse((3,), "A")


# ---- Springer data --------------------------------------------------------

@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_data_is_valid(name):
    t = CartanType.parse(name)
    classes = classify_unipotent(t)
    assert validate_classes(t, classes) == []
    labels = [u.springer_label for u in classes]
    assert len(labels) == len(set(labels))


def test_class_counts():
    # partitions valid for each type, very even ones counted twice
    assert len(classify_unipotent("C2")) == 4
    assert len(classify_unipotent("B3")) == 7
    assert len(classify_unipotent("D4")) == 12
    assert len(classify_unipotent("G2")) == 5


def test_springer_examples():
    assert springer("C2", "(4)") == "(2;)"
    assert springer("C2", "(2,2)") == "(1;1)"
    assert springer("C2", "(2,1,1)") == "(1,1;)"
    assert springer("C2", "(1,1,1,1)") == "(;1,1)"
    assert springer("G2", "G2(a1)") == "phi2_1"
    assert springer("A3", "(2,2)") == "(2,2)"


def test_very_even_pairs_are_distinct():
    d4 = {u.label: u.springer_label for u in classify_unipotent("D4")}
    assert d4["(4,4)I"] != d4["(4,4)II"]
    assert d4["(2,2,2,2)I"] != d4["(2,2,2,2)II"]


# ---- induction ------------------------------------------------------------

@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("C", 4)])
def test_induction_dimension_rule(family, rank):
    t = CartanType(((family, rank),))
    gdim = algebra_dim(family, rank)
    count = 0
    for core_rank in range(0, rank + 1) if family != "A" else [None]:
        block_total = rank + 1 if family == "A" else rank - core_rank
        if family == "D" and core_rank == 1:
            continue  # SO(2) core is a torus, already a GL1 block
        for blocks in cb.partitions(block_total):
            core_size = 0 if family == "A" else {"B": 2 * core_rank + 1, "C": 2 * core_rank,
                                                  "D": 2 * core_rank}[family]
            cores = [()] if family == "A" else [
                c for c in cb.partitions(core_size) if is_valid_partition(c, family)] or [()]
            for core in cores:
                gl = tuple((1,) * b for b in blocks)  # zero class on each GL block
                d = InductionDatum(t, gl_parts=gl, core=core)
                res = ls_induce(d)
                ldim = levi_dimension(d)
                core_dim = 0 if not core_rank else class_dimension(family, core_rank, core)
                for u in res.classes:
                    assert u.dim_class == gdim - ldim + core_dim
                count += 1
    assert count > 3


def test_ls_induce_examples():
    c2 = CartanType.parse("C2")
    # Richardson class of the Siegel parabolic (GL2 Levi) is (2,2)
    assert ls_induce(InductionDatum(c2, gl_parts=((1, 1),))).partition == (2, 2)
    # Borel: regular
    assert ls_induce(InductionDatum(c2, gl_parts=((1,), (1,)))).partition == (4,)
    d4 = CartanType.parse("D4")
    r = ls_induce(InductionDatum(d4, gl_parts=((1, 1, 1, 1),)))
    assert r.ambiguous and {u.label for u in r.classes} == {"(2,2,2,2)I", "(2,2,2,2)II"}
    g2 = CartanType.parse("G2")
    assert ls_induce(InductionDatum(g2, levi="A1", source="(1,1)")).classes[0].label == "G2(a1)"


def test_induction_rejects_bad_sizes():
    with pytest.raises(InvalidInputError):
        ls_induce(InductionDatum(CartanType.parse("C2"), gl_parts=((1,),)))


# ---- data directory override ---------------------------------------------

def test_tampered_data_raises(tmp_path, monkeypatch):
    for f in data_dir().glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    doc = json.loads((tmp_path / "springer_C3.json").read_text())
    a, b = doc["classes"][0], doc["classes"][1]
    a["springer"], b["springer"] = b["springer"], a["springer"]
    (tmp_path / "springer_C3.json").write_text(json.dumps(doc))
    monkeypatch.setenv("WEYL_STRATA_DATA", str(tmp_path))
    with pytest.raises(IntegrityError):
        classify_unipotent("C3")
    (tmp_path / "springer_C3.json").unlink()
    with pytest.raises(IntegrityError):
        classify_unipotent("C3")
    assert find_class("C2", "(4)").springer_label == "(2;)"
