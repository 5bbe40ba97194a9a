"""Partition combinatorics: enumeration, dominance, rim hooks and the
Murnaghan-Nakayama rule for symmetric and hyperoctahedral groups."""
from __future__ import annotations

from functools import lru_cache

from .errors import InvalidInputError


def partitions(n, max_part=None):
    """All partitions of ``n`` as weakly decreasing tuples, reverse-lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def normalize(p):
    return tuple(sorted((int(x) for x in p if x), reverse=True))


def transpose(p):
    p = normalize(p)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def n_invariant(p):
    """n(p) = sum (i-1) p_i."""
    return sum(i * x for i, x in enumerate(normalize(p)))


def dominance_leq(lam, mu):
    """True iff lam <= mu in dominance order."""
    lam, mu = normalize(lam), normalize(mu)
    if sum(lam) != sum(mu):
        raise InvalidInputError(f"size mismatch: {lam} vs {mu}")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def add_partitions(*parts):
    """Coordinatewise sum of partitions (shorter ones padded with zeros)."""
    parts = [normalize(p) for p in parts]
    L = max((len(p) for p in parts), default=0)
    return normalize(sum(p[i] if i < len(p) else 0 for p in parts) for i in range(L))


def format_partition(p):
    return "(" + ",".join(str(x) for x in normalize(p)) + ")"


def parse_partition(text):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise InvalidInputError(f"not a partition label: {text!r}")
    body = text[1:-1].strip()
    return normalize(int(x) for x in body.split(",")) if body else ()


def bipartitions(n):
    out = []
    for k in range(n, -1, -1):
        for a in partitions(k):
            for b in partitions(n - k):
                out.append((a, b))
    return out


def format_bipartition(a, b):
    fa = ",".join(str(x) for x in normalize(a))
    fb = ",".join(str(x) for x in normalize(b))
    return f"({fa};{fb})"


def parse_bipartition(text):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")) or ";" not in text:
        raise InvalidInputError(f"not a bipartition label: {text!r}")
    left, right = text[1:-1].split(";")
    conv = lambda s: normalize(int(x) for x in s.split(",")) if s.strip() else ()
    return conv(left), conv(right)


# ---------------------------------------------------------------- rim hooks

def _beta(p, length):
    p = normalize(p)
    p = p + (0,) * (length - len(p))
    return tuple(p[i] + (length - 1 - i) for i in range(length))


def _from_beta(beta):
    b = sorted(beta, reverse=True)
    L = len(b)
    return normalize(b[i] - (L - 1 - i) for i in range(L))


def remove_rim_hooks(p, k):
    """Yield (sign, remainder) for every rim hook of size ``k`` in ``p``.

    sign = (-1)^(leg length).
    """
    p = normalize(p)
    beta = _beta(p, len(p))
    bset = set(beta)
    for x in beta:
        y = x - k
        if y < 0 or y in bset:
            continue
        leg = sum(1 for z in beta if y < z < x)
        rest = [z for z in beta if z != x] + [y]
        yield (-1) ** leg, _from_beta(rest)


@lru_cache(maxsize=None)
def sn_character(lam, cycle_type):
    """chi^lam on permutations of cycle type ``cycle_type`` (Murnaghan-Nakayama)."""
    lam, cycle_type = normalize(lam), normalize(cycle_type)
    if sum(lam) != sum(cycle_type):
        raise InvalidInputError("size mismatch")
    if not cycle_type:
        return 1
    k, rest = cycle_type[0], cycle_type[1:]
    return sum(s * sn_character(r, rest) for s, r in remove_rim_hooks(lam, k))


@lru_cache(maxsize=None)
def bn_character(alpha, beta, pos_cycles, neg_cycles):
    """Irreducible character of W(B_n) labelled (alpha; beta) at a signed cycle type.

    Convention: ((n); -) is trivial and (-; (1^n)) is the sign character;
    (-; (n)) is trivial on S_n and -1 on each sign change.
    """
    alpha, beta = normalize(alpha), normalize(beta)
    pos_cycles, neg_cycles = normalize(pos_cycles), normalize(neg_cycles)
    if sum(alpha) + sum(beta) != sum(pos_cycles) + sum(neg_cycles):
        raise InvalidInputError("size mismatch")
    if pos_cycles:
        k, pos_rest, neg_rest, eps = pos_cycles[0], pos_cycles[1:], neg_cycles, 1
    elif neg_cycles:
        k, pos_rest, neg_rest, eps = neg_cycles[0], pos_cycles, neg_cycles[1:], -1
    else:
        return 1
    total = 0
    for s, a2 in remove_rim_hooks(alpha, k):
        total += s * bn_character(a2, beta, pos_rest, neg_rest)
    for s, b2 in remove_rim_hooks(beta, k):
        total += eps * s * bn_character(alpha, b2, pos_rest, neg_rest)
    return total
