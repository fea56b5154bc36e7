"""Independent brute-force references for the tests.

Everything here runs on explicit index loops and Python sets, touching
relations only through the single-bit accessor, so agreement with the
word-parallel kernels is a meaningful check.
"""

from __future__ import annotations

import itertools

from conceptual.relalg import Relation


def compose_oracle(r: Relation, s: Relation) -> Relation:
    pairs = []
    for a in range(r.src_size):
        for c in range(s.dst_size):
            if any(r.bit(a, b) and s.bit(b, c) for b in range(r.dst_size)):
                pairs.append((a, c))
    return Relation.from_pairs(r.src_size, s.dst_size, pairs)


def left_residual_oracle(r: Relation, t: Relation) -> Relation:
    pairs = []
    for b in range(r.dst_size):
        for c in range(t.dst_size):
            if all(not r.bit(a, b) or t.bit(a, c) for a in range(r.src_size)):
                pairs.append((b, c))
    return Relation.from_pairs(r.dst_size, t.dst_size, pairs)


def right_residual_oracle(t: Relation, s: Relation) -> Relation:
    pairs = []
    for a in range(t.src_size):
        for b in range(s.src_size):
            if all(not s.bit(b, c) or t.bit(a, c) for c in range(t.dst_size)):
                pairs.append((a, b))
    return Relation.from_pairs(t.src_size, s.src_size, pairs)


def subrelation_oracle(r: Relation, t: Relation) -> bool:
    return all(
        not r.bit(a, b) or t.bit(a, b)
        for a in range(r.src_size)
        for b in range(r.dst_size)
    )


def enumerate_relations(src: int, dst: int):
    for code in range(1 << (src * dst)):
        rows = tuple(code >> a * dst & (1 << dst) - 1 for a in range(src))
        yield Relation(src, dst, rows)


def best_left_residual(r: Relation, t: Relation) -> Relation:
    """Union of every s with compose(r, s) contained in t, by enumeration."""
    rows = [0] * r.dst_size
    for s in enumerate_relations(r.dst_size, t.dst_size):
        if subrelation_oracle(compose_oracle(r, s), t):
            rows = [x | y for x, y in zip(rows, s.rows)]
    return Relation(r.dst_size, t.dst_size, tuple(rows))


def best_right_residual(t: Relation, s: Relation) -> Relation:
    rows = [0] * t.src_size
    for r in enumerate_relations(t.src_size, s.src_size):
        if subrelation_oracle(compose_oracle(r, s), t):
            rows = [x | y for x, y in zip(rows, r.rows)]
    return Relation(t.src_size, s.src_size, tuple(rows))


def random_relation(rng, src: int, dst: int) -> Relation:
    return Relation(src, dst, tuple(rng.getrandbits(dst) for _ in range(src)))


# -- set-based derivation and concepts ------------------------------------------


def instance_types(K, a: int) -> set[int]:
    return {t for t in range(len(K.types)) if K.incidence.bit(a, t)}


def intent_oracle(K, instance_set: set[int]) -> set[int]:
    out = set(range(len(K.types)))
    for a in instance_set:
        out &= instance_types(K, a)
    return out


def extent_oracle(K, type_set: set[int]) -> set[int]:
    return {
        a
        for a in range(len(K.instances))
        if all(K.incidence.bit(a, t) for t in type_set)
    }


def closed_pairs_oracle(K) -> set[tuple[frozenset, frozenset]]:
    """Close every instance subset and dedupe."""
    out = set()
    n = len(K.instances)
    for code in range(1 << n):
        subset = {a for a in range(n) if code >> a & 1}
        intent = intent_oracle(K, subset)
        extent = extent_oracle(K, intent)
        out.add((frozenset(extent), frozenset(intent)))
    return out


def concept_set(L) -> set[tuple[frozenset, frozenset]]:
    """The library lattice as comparably-typed closed pairs."""
    out = set()
    for c in L.concepts:
        extent = frozenset(i for i in range(len(L.instance_labels)) if c.extent >> i & 1)
        intent = frozenset(t for t in range(len(L.type_labels)) if c.intent >> t & 1)
        out.add((extent, intent))
    return out


def inf_oracle(L, indices: list[int]) -> int | None:
    """Order-theoretic infimum: the greatest common lower bound, by search."""
    candidates = [
        x
        for x in range(L.size)
        if all(L.order.bit(x, i) for i in indices)
    ]
    for x in candidates:
        if all(L.order.bit(y, x) for y in candidates):
            return x
    return None


def sup_oracle(L, indices: list[int]) -> int | None:
    candidates = [
        x
        for x in range(L.size)
        if all(L.order.bit(i, x) for i in indices)
    ]
    for x in candidates:
        if all(L.order.bit(x, y) for y in candidates):
            return x
    return None


def all_functions(src: int, dst: int):
    yield from itertools.product(range(dst), repeat=src)
