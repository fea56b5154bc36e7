"""Concept lattices: construction, order structure, embeddings, and the
collective-concept machinery.

``build_lattice`` enumerates closed intents in lectic order (NextClosure
style): starting from the closure of the empty type set, it repeatedly finds
the lectically next closed intent by trying to add one type index at a time
from the top down.  That yields every concept exactly once, in a canonical
order, with no duplicate bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from . import relalg
from .classification import Classification
from .errors import ResourceLimitError, ShapeError, ValidationError
from .relalg import FunctionGraph, Relation, bits, compose, left_residual, right_residual, transpose

DEFAULT_CONCEPT_CAP = 1_000_000


class FormalConcept(NamedTuple):
    """Closed (extent, intent) pair, both as index bitmasks."""

    extent: int
    intent: int


@dataclass(frozen=True)
class ConceptLattice:
    """The concept lattice of a classification, plus both embeddings.

    ``order`` relates concept indices by extent inclusion.  ``iota`` sends an
    instance to its smallest containing concept, ``tau`` a type to its
    largest; ``iota_rel``/``tau_rel`` are the order-saturated membership
    relations recovering extents (columns) and intents (rows).
    """

    concepts: tuple[FormalConcept, ...]
    order: Relation
    instance_labels: tuple[str, ...]
    type_labels: tuple[str, ...]
    iota: FunctionGraph
    tau: FunctionGraph

    @property
    def size(self) -> int:
        return len(self.concepts)

    def __len__(self) -> int:
        return len(self.concepts)

    @cached_property
    def iota_rel(self) -> Relation:
        """instance x concept: the instance lies in the concept's extent."""
        return compose(self.iota.rel, self.order)

    @cached_property
    def tau_rel(self) -> Relation:
        """concept x type: the type lies in the concept's intent."""
        return compose(self.order, transpose(self.tau.rel))

    @cached_property
    def extent_index(self) -> dict[int, int]:
        return {c.extent: i for i, c in enumerate(self.concepts)}

    @cached_property
    def intent_index(self) -> dict[int, int]:
        return {c.intent: i for i, c in enumerate(self.concepts)}

    @cached_property
    def concept_index(self) -> dict[FormalConcept, int]:
        return {c: i for i, c in enumerate(self.concepts)}

    @cached_property
    def top(self) -> int:
        full = (1 << len(self.instance_labels)) - 1
        return self.extent_index[full]

    @cached_property
    def bottom(self) -> int:
        full = (1 << len(self.type_labels)) - 1
        return self.intent_index[full]

    def leq(self, i: int, j: int) -> bool:
        return self.order.bit(i, j)

    def meet_index(self, indices: Iterable[int]) -> int:
        """Meet by the extent-intersection formula."""
        extent = (1 << len(self.instance_labels)) - 1
        for i in indices:
            extent &= self.concepts[i].extent
        return self.extent_index[extent]

    def join_index(self, indices: Iterable[int]) -> int:
        """Join by the intent-intersection formula."""
        intent = (1 << len(self.type_labels)) - 1
        for i in indices:
            intent &= self.concepts[i].intent
        return self.intent_index[intent]

    @cached_property
    def covers(self) -> Relation:
        """Transitive reduction of the strict order (the Hasse diagram)."""
        n = self.size
        strict = [self.order.rows[i] & ~(1 << i) for i in range(n)]
        out = []
        for i in range(n):
            row = strict[i]
            for j in bits(strict[i]):
                row &= ~strict[j]
            out.append(row)
        return Relation(n, n, tuple(out))

    def extent_labels(self, c: FormalConcept) -> tuple[str, ...]:
        return tuple(self.instance_labels[i] for i in bits(c.extent))

    def intent_labels(self, c: FormalConcept) -> tuple[str, ...]:
        return tuple(self.type_labels[i] for i in bits(c.intent))

    def __repr__(self):
        return f"ConceptLattice({self.size} concepts)"


def build_lattice(K: Classification, max_concepts: int = DEFAULT_CONCEPT_CAP) -> ConceptLattice:
    """All formal concepts of ``K``, in lectic order of their intents."""
    m = len(K.instances)
    n = len(K.types)
    rows = K.rows
    cols = K.cols
    full_i = (1 << m) - 1
    full_t = (1 << n) - 1

    def extent(tmask: int) -> int:
        e = full_i
        while tmask:
            low = tmask & -tmask
            e &= cols[low.bit_length() - 1]
            tmask ^= low
        return e

    def intent(imask: int) -> int:
        t = full_t
        while imask:
            low = imask & -imask
            t &= rows[low.bit_length() - 1]
            imask ^= low
        return t

    pairs: list[FormalConcept] = []
    cur = intent(full_i)
    while True:
        ext = extent(cur)
        pairs.append(FormalConcept(ext, cur))
        if len(pairs) > max_concepts:
            raise ResourceLimitError(
                f"more than {max_concepts} concepts; raise max_concepts to proceed"
            )
        nxt = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if cur & bit:
                continue
            below = bit - 1
            cand = intent(extent((cur & below) | bit))
            if cand & below == cur & below:
                nxt = cand
                break
        if nxt is None:
            break
        cur = nxt

    nc = len(pairs)
    extents = [c.extent for c in pairs]
    order_rows = []
    for i in range(nc):
        ei = extents[i]
        row = 0
        for j in range(nc):
            if ei & ~extents[j] == 0:
                row |= 1 << j
        order_rows.append(row)
    order = Relation(nc, nc, tuple(order_rows))

    intent_idx = {c.intent: k for k, c in enumerate(pairs)}
    extent_idx = {c.extent: k for k, c in enumerate(pairs)}
    iota = FunctionGraph.from_targets(tuple(intent_idx[rows[a]] for a in range(m)), nc)
    tau = FunctionGraph.from_targets(tuple(extent_idx[cols[t]] for t in range(n)), nc)

    return ConceptLattice(tuple(pairs), order, K.instances, K.types, iota, tau)


@lru_cache(maxsize=4096)
def concept_lattice_of(K: Classification) -> ConceptLattice:
    """Cached ``build_lattice``; bonds and functors share lattices through it."""
    return build_lattice(K)


def assemble_lattice(
    order: Relation,
    instance_labels: Sequence[str],
    type_labels: Sequence[str],
    iota: FunctionGraph,
    tau: FunctionGraph,
) -> ConceptLattice:
    """Assemble an abstract concept lattice from untrusted parts.

    Validates the partial order, completeness, and the two density
    conditions, then derives the concept pairs that the embeddings induce.
    """
    instance_labels = tuple(instance_labels)
    type_labels = tuple(type_labels)
    n = order.src_size
    if order.dst_size != n:
        raise ShapeError(f"order must be square, got {order.shape}")
    if iota.src_size != len(instance_labels) or iota.dst_size != n:
        raise ValidationError("instance embedding does not match order size")
    if tau.src_size != len(type_labels) or tau.dst_size != n:
        raise ValidationError("type embedding does not match order size")

    up = order.rows
    down = transpose(order).rows
    for i in range(n):
        if not up[i] >> i & 1:
            raise ValidationError(f"order not reflexive at {i}", witness=(i,))
        for j in bits(up[i]):
            if up[j] & ~up[i]:
                raise ValidationError(f"order not transitive at {i}", witness=(i, j))
            if i != j and up[j] >> i & 1:
                raise ValidationError(f"order not antisymmetric at {i},{j}", witness=(i, j))

    full = (1 << n) - 1

    def join_of(mask: int) -> int:
        ub = full
        for i in bits(mask):
            ub &= up[i]
        for j in bits(ub):
            if ub & ~up[j] == 0:
                return j
        raise ValidationError(f"no join for element set {mask:b}", witness=(mask,))

    def meet_of(mask: int) -> int:
        lb = full
        for i in bits(mask):
            lb &= down[i]
        for j in bits(lb):
            if lb & ~down[j] == 0:
                return j
        raise ValidationError(f"no meet for element set {mask:b}", witness=(mask,))

    join_of(0)
    meet_of(0)
    for i in range(n):
        for j in range(i + 1, n):
            join_of((1 << i) | (1 << j))
            meet_of((1 << i) | (1 << j))

    iota_rel = compose(iota.rel, order)
    tau_rel = compose(order, transpose(tau.rel))
    iota_cols = transpose(iota_rel).rows
    for x in range(n):
        below = relalg.mask_of(iota(a) for a in bits(iota_cols[x]))
        if join_of(below) != x:
            raise ValidationError(
                f"instance embedding image is not join-dense at element {x}", witness=(x,)
            )
        above = relalg.mask_of(tau(t) for t in bits(tau_rel.rows[x]))
        if meet_of(above) != x:
            raise ValidationError(
                f"type embedding image is not meet-dense at element {x}", witness=(x,)
            )

    concepts = tuple(
        FormalConcept(iota_cols[x], tau_rel.rows[x]) for x in range(n)
    )
    if len({c.extent for c in concepts}) != n:
        raise ValidationError("embedding-induced extents are not distinct")
    return ConceptLattice(concepts, order, instance_labels, type_labels, iota, tau)


def meet(L: ConceptLattice, concepts: Iterable[FormalConcept]) -> FormalConcept:
    """Meet by extent intersection; the empty meet is the top concept."""
    return L.concepts[L.meet_index(_indices(L, concepts))]


def join(L: ConceptLattice, concepts: Iterable[FormalConcept]) -> FormalConcept:
    """Join by intent intersection; the empty join is the bottom concept."""
    return L.concepts[L.join_index(_indices(L, concepts))]


def _indices(L: ConceptLattice, concepts: Iterable[FormalConcept]) -> list[int]:
    idx = L.concept_index
    out = []
    for c in concepts:
        if c not in idx:
            raise ValidationError(f"concept {c} does not belong to this lattice", witness=(c,))
        out.append(idx[c])
    return out


def instance_concept(L: ConceptLattice, label: str) -> FormalConcept:
    """Closure of a singleton instance."""
    try:
        a = L.instance_labels.index(label)
    except ValueError:
        raise ValidationError(f"unknown instance label {label!r}") from None
    return L.concepts[L.iota(a)]


def type_concept(L: ConceptLattice, label: str) -> FormalConcept:
    try:
        t = L.type_labels.index(label)
    except ValueError:
        raise ValidationError(f"unknown type label {label!r}") from None
    return L.concepts[L.tau(t)]


def decomposition_check(K: Classification, L: ConceptLattice) -> bool:
    """Incidence must equal instance-embedding ; order ; type-embedding-op."""
    recomposed = compose(compose(L.iota.rel, L.order), transpose(L.tau.rel))
    return recomposed == K.incidence


# -- collective concepts -----------------------------------------------------


@dataclass(frozen=True)
class CollectiveConcept:
    """An indexed family of concepts given by a closed relation pair.

    ``a`` relates instances to the index set, ``alpha`` the index set to
    types; closedness means each coordinate is the residuation of the other
    against the incidence.
    """

    index_labels: tuple[str, ...]
    a: Relation
    alpha: Relation


def is_collective_concept(K: Classification, c: CollectiveConcept) -> bool:
    x = len(c.index_labels)
    if c.a.shape != (len(K.instances), x) or c.alpha.shape != (x, len(K.types)):
        raise ShapeError(
            f"collective concept shapes {c.a.shape}/{c.alpha.shape} do not fit "
            f"{len(K.instances)} instances x {len(K.types)} types over {x} indices"
        )
    return (
        c.a == right_residual(K.incidence, c.alpha)
        and c.alpha == left_residual(c.a, K.incidence)
    )


def mediating_function(K: Classification, L: ConceptLattice, c: CollectiveConcept) -> FunctionGraph:
    """The unique function sending each index to its concept in the lattice."""
    if not is_collective_concept(K, c):
        raise ValidationError("not a collective concept")
    acols = transpose(c.a).rows
    targets = []
    for x in range(len(c.index_labels)):
        targets.append(L.extent_index[acols[x]])
    return FunctionGraph.from_targets(tuple(targets), L.size)


def collective_from_function(
    K: Classification,
    L: ConceptLattice,
    f: FunctionGraph,
    index_labels: Sequence[str] | None = None,
) -> CollectiveConcept:
    """The collective concept picked out by a function into the lattice."""
    if f.dst_size != L.size:
        raise ShapeError(f"function lands in {f.dst_size} elements, lattice has {L.size}")
    if index_labels is None:
        index_labels = tuple(f"x{i}" for i in range(f.src_size))
    a = compose(L.iota_rel, transpose(f.rel))
    alpha = compose(f.rel, L.tau_rel)
    return CollectiveConcept(tuple(index_labels), a, alpha)


def collective_leq(c1: CollectiveConcept, c2: CollectiveConcept) -> bool:
    """Componentwise extent inclusion (equivalently reversed intents)."""
    return relalg.subrelation(c1.a, c2.a)


def collective_transport(
    K: Classification, r: Relation, c: CollectiveConcept, side: str
) -> CollectiveConcept:
    """Transport a collective concept along an index relation ``r``.

    With ``side="left"`` (the left adjoint) the input is indexed by the
    source of ``r`` and the result by its destination; ``side="right"`` (the
    right adjoint) goes the other way.
    """
    A = K.incidence
    if side == "left":
        if c.a.dst_size != r.src_size:
            raise ShapeError(f"left transport: index set {c.a.dst_size} vs relation {r.shape}")
        alpha = left_residual(r, c.alpha)
        a = right_residual(A, left_residual(compose(c.a, r), A))
        labels = tuple(f"y{i}" for i in range(r.dst_size))
        return CollectiveConcept(labels, a, alpha)
    if side == "right":
        if c.a.dst_size != r.dst_size:
            raise ShapeError(f"right transport: index set {c.a.dst_size} vs relation {r.shape}")
        a = right_residual(c.a, r)
        alpha = left_residual(right_residual(A, compose(r, c.alpha)), A)
        labels = tuple(f"x{i}" for i in range(r.src_size))
        return CollectiveConcept(labels, a, alpha)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
