"""The six structure maps between the relation world and the lattice world,
with constructive witnesses for all three equivalences.

Naming follows the directions of travel: ``lattice_of_morphism`` /
``classification_of_lattice`` mediate the functional equivalence,
``adjoint_of_bond`` / ``bond_of_adjoint`` the relational one, and
``hom_of_pair`` / ``pair_of_hom`` the complete-relational one.  Every
witness construction validates its round trips on the spot and raises with
a witness if the books do not balance.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from functools import cached_property, lru_cache

from .bond import Bond, BondingPair, compose_bonding_pairs, compose_bonds
from .classification import Classification, extent_of, intent_of
from .errors import CheckResult, ShapeError, ValidationError
from .infomorphism import FunctionalInfomorphism
from .lattice import (
    ConceptLattice,
    FormalConcept,
    build_lattice,
    concept_lattice_of,
)
from .relalg import FunctionGraph, Relation, bits, compose, mask_of, transpose


# -- complete lattices -------------------------------------------------------


@dataclass(frozen=True)
class CompleteLattice:
    """A finite lattice presented by its order relation; always complete."""

    elements: tuple[str, ...]
    leq: Relation

    def __post_init__(self):
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise ShapeError(f"order shape {self.leq.shape} for {n} elements")
        if len(set(self.elements)) != n:
            raise ValidationError("duplicate element labels")
        up = self.leq.rows
        for i in range(n):
            if not up[i] >> i & 1:
                raise ValidationError(f"order not reflexive at {self.elements[i]!r}")
            for j in bits(up[i]):
                if up[j] & ~up[i]:
                    raise ValidationError(
                        f"order not transitive at {self.elements[i]!r}", witness=(i, j)
                    )
                if i != j and up[j] >> i & 1:
                    raise ValidationError(
                        f"order not antisymmetric between {self.elements[i]!r} "
                        f"and {self.elements[j]!r}",
                        witness=(i, j),
                    )
        # force meets/joins (including the empty ones, i.e. top and bottom)
        # so a non-lattice order fails at construction
        self.top
        self.bottom
        self.meet_table
        self.join_table

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return transpose(self.leq).rows

    @property
    def up(self) -> tuple[int, ...]:
        return self.leq.rows

    def meet_of(self, mask: int) -> int:
        """Greatest lower bound of a set of elements; top for the empty set."""
        lb = (1 << self.size) - 1
        for i in bits(mask):
            lb &= self.down[i]
        for j in bits(lb):
            if lb & ~self.down[j] == 0:
                return j
        raise ValidationError(f"no meet for element set {mask:#x}", witness=(mask,))

    def join_of(self, mask: int) -> int:
        ub = (1 << self.size) - 1
        for i in bits(mask):
            ub &= self.up[i]
        for j in bits(ub):
            if ub & ~self.up[j] == 0:
                return j
        raise ValidationError(f"no join for element set {mask:#x}", witness=(mask,))

    @cached_property
    def top(self) -> int:
        return self.meet_of(0)

    @cached_property
    def bottom(self) -> int:
        return self.join_of(0)

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(
            tuple(self.meet_of((1 << i) | (1 << j)) for j in range(n)) for i in range(n)
        )

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(
            tuple(self.join_of((1 << i) | (1 << j)) for j in range(n)) for i in range(n)
        )

    def __repr__(self):
        return f"CompleteLattice({self.size} elements)"


@lru_cache(maxsize=4096)
def complete_lattice_of(L: ConceptLattice) -> CompleteLattice:
    """Forget the embeddings; elements are named by concept position."""
    return CompleteLattice(tuple(f"c{i}" for i in range(L.size)), L.order)


def lattice_classification(L: CompleteLattice) -> Classification:
    """The lattice classified by its own order (instances = types = elements)."""
    return Classification(L.elements, L.elements, L.leq)


def abstract_concept_lattice(L: CompleteLattice) -> ConceptLattice:
    """A complete lattice as a concept lattice over itself, both embeddings
    the identity."""
    n = L.size
    ident = FunctionGraph.identity(n)
    concepts = tuple(FormalConcept(L.down[x], L.up[x]) for x in range(n))
    return ConceptLattice(concepts, L.leq, L.elements, L.elements, ident, ident)


# -- functional equivalence ---------------------------------------------------


@dataclass(frozen=True)
class ConceptLatticeMorphism:
    """Adjoint lattice maps riding on instance/type functions.

    ``psi`` runs forward and respects the type embeddings through ``g``;
    ``phi`` runs backward and respects the instance embeddings through
    ``f``; the two are adjoint.
    """

    source: ConceptLattice
    target: ConceptLattice
    phi: FunctionGraph  # target lattice -> source lattice
    psi: FunctionGraph  # source lattice -> target lattice
    f: FunctionGraph  # target instances -> source instances
    g: FunctionGraph  # source types -> target types
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.phi.rel.shape != (self.target.size, self.source.size):
            raise ShapeError(f"phi shape {self.phi.rel.shape} is wrong")
        if self.psi.rel.shape != (self.source.size, self.target.size):
            raise ShapeError(f"psi shape {self.psi.rel.shape} is wrong")
        if validate:
            verdict = check_lattice_morphism(self)
            if not verdict:
                raise ValidationError(verdict.reason, witness=verdict.witness)


def check_lattice_morphism(m: ConceptLatticeMorphism) -> CheckResult:
    src, tgt = m.source, m.target
    for y in range(tgt.size):
        # adjointness: phi(y) <= x  iff  y <= psi(x)
        lhs = src.order.rows[m.phi(y)]
        rhs = m.psi.inverse_image(tgt.order.rows[y])
        if lhs != rhs:
            x = next(bits(lhs ^ rhs))
            return CheckResult(False, witness=(y, x), reason="adjointness fails")
    if m.source.tau.then(m.psi) != m.g.then(m.target.tau):
        return CheckResult(False, reason="psi does not preserve type concepts")
    if m.target.iota.then(m.phi) != m.f.then(m.source.iota):
        return CheckResult(False, reason="phi does not preserve instance concepts")
    return CheckResult(True)


def identity_lattice_morphism(L: ConceptLattice) -> ConceptLatticeMorphism:
    return ConceptLatticeMorphism(
        L,
        L,
        FunctionGraph.identity(L.size),
        FunctionGraph.identity(L.size),
        FunctionGraph.identity(len(L.instance_labels)),
        FunctionGraph.identity(len(L.type_labels)),
    )


def compose_lattice_morphisms(
    m1: ConceptLatticeMorphism, m2: ConceptLatticeMorphism
) -> ConceptLatticeMorphism:
    if m1.target != m2.source:
        raise ShapeError("compose_lattice_morphisms: middle lattices differ")
    return ConceptLatticeMorphism(
        m1.source,
        m2.target,
        m2.phi.then(m1.phi),
        m1.psi.then(m2.psi),
        m2.f.then(m1.f),
        m1.g.then(m2.g),
    )


def lattice_of_morphism(m: FunctionalInfomorphism) -> ConceptLatticeMorphism:
    """Functional equivalence, object-to-lattice direction on morphisms.

    ``psi`` sends a concept to the closure of the inverse image of its
    extent; ``phi`` dually via inverse images of intents.
    """
    LA = concept_lattice_of(m.source)
    LB = concept_lattice_of(m.target)
    psi = FunctionGraph.from_targets(
        tuple(LB.extent_index[m.f.inverse_image(c.extent)] for c in LA.concepts),
        LB.size,
    )
    phi = FunctionGraph.from_targets(
        tuple(LA.intent_index[m.g.inverse_image(c.intent)] for c in LB.concepts),
        LA.size,
    )
    return ConceptLatticeMorphism(LA, LB, phi, psi, m.f, m.g)


def classification_of_lattice(L: ConceptLattice) -> Classification:
    """Instances and types of the lattice, classified through the embeddings."""
    incidence = compose(L.iota_rel, transpose(L.tau.rel))
    return Classification(L.instance_labels, L.type_labels, incidence)


def morphism_of_lattice_morphism(cm: ConceptLatticeMorphism) -> FunctionalInfomorphism:
    """Functional equivalence, lattice-to-classification direction."""
    return FunctionalInfomorphism(
        classification_of_lattice(cm.source),
        classification_of_lattice(cm.target),
        cm.f,
        cm.g,
    )


@dataclass(frozen=True)
class LatticeWitness:
    """Inverse monotone maps between a lattice and the lattice it rebuilds."""

    lattice: ConceptLattice
    rebuilt: ConceptLattice
    forward: FunctionGraph  # rebuilt -> lattice
    backward: FunctionGraph  # lattice -> rebuilt


def lattice_equivalence_witness(L: ConceptLattice) -> LatticeWitness:
    """Rebuild the lattice from its own classification and exhibit the
    isomorphism; raises if the maps fail to invert or to respect order."""
    K = classification_of_lattice(L)
    M = build_lattice(K)
    iota_cols = transpose(L.iota_rel).rows
    backward = FunctionGraph.from_targets(
        tuple(M.extent_index[iota_cols[x]] for x in range(L.size)), M.size
    )
    fwd = []
    for c in M.concepts:
        via_join = L.join_index([L.iota(a) for a in bits(c.extent)])
        via_meet = L.meet_index([L.tau(t) for t in bits(c.intent)])
        if via_join != via_meet:
            raise ValidationError(
                "join-of-instances and meet-of-types disagree", witness=(c,)
            )
        fwd.append(via_join)
    forward = FunctionGraph.from_targets(tuple(fwd), L.size)
    for x in range(L.size):
        if forward(backward(x)) != x:
            raise ValidationError("round trip lattice->rebuilt->lattice fails", witness=(x,))
    for i in range(M.size):
        if backward(forward(i)) != i:
            raise ValidationError("round trip rebuilt->lattice->rebuilt fails", witness=(i,))
    if not _monotone(M.order, L.order, forward) or not _monotone(L.order, M.order, backward):
        raise ValidationError("equivalence witness is not monotone")
    return LatticeWitness(L, M, forward, backward)


def _monotone(src_order: Relation, dst_order: Relation, fn: FunctionGraph) -> bool:
    for i in range(src_order.src_size):
        for j in bits(src_order.rows[i]):
            if not dst_order.bit(fn(i), fn(j)):
                return False
    return True


def witness_as_lattice_morphism(w: LatticeWitness) -> ConceptLatticeMorphism:
    """The rebuild isomorphism as a concept lattice morphism (identity on
    instances and types)."""
    return ConceptLatticeMorphism(
        w.rebuilt,
        w.lattice,
        w.backward,
        w.forward,
        FunctionGraph.identity(len(w.lattice.instance_labels)),
        FunctionGraph.identity(len(w.lattice.type_labels)),
    )


# -- relational equivalence ---------------------------------------------------


@dataclass(frozen=True)
class AdjointPair:
    """Contravariant adjoint maps between two complete lattices."""

    source: CompleteLattice
    target: CompleteLattice
    phi: FunctionGraph  # target -> source, left adjoint
    psi: FunctionGraph  # source -> target, right adjoint
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.phi.rel.shape != (self.target.size, self.source.size):
            raise ShapeError(f"phi shape {self.phi.rel.shape} is wrong")
        if self.psi.rel.shape != (self.source.size, self.target.size):
            raise ShapeError(f"psi shape {self.psi.rel.shape} is wrong")
        if validate:
            verdict = check_adjoint(self)
            if not verdict:
                raise ValidationError(verdict.reason, witness=verdict.witness)


def check_adjoint(p: AdjointPair) -> CheckResult:
    for y in range(p.target.size):
        lhs = p.source.up[p.phi(y)]
        rhs = p.psi.inverse_image(p.target.up[y])
        if lhs != rhs:
            x = next(bits(lhs ^ rhs))
            return CheckResult(
                False,
                witness=(p.target.elements[y], p.source.elements[x]),
                reason="adjointness fails",
            )
    return CheckResult(True)


def identity_adjoint(L: CompleteLattice) -> AdjointPair:
    ident = FunctionGraph.identity(L.size)
    return AdjointPair(L, L, ident, ident)


def compose_adjoints(p1: AdjointPair, p2: AdjointPair) -> AdjointPair:
    if p1.target != p2.source:
        raise ShapeError("compose_adjoints: middle lattices differ")
    return AdjointPair(
        p1.source, p2.target, p2.phi.then(p1.phi), p1.psi.then(p2.psi)
    )


def adjoint_of_bond(F: Bond) -> AdjointPair:
    """Derivation along the bond, in both directions."""
    LA = concept_lattice_of(F.source)
    LB = concept_lattice_of(F.target)
    F_cls = Classification(F.target.instances, F.source.types, F.rel)
    psi = FunctionGraph.from_targets(
        tuple(LB.extent_index[extent_of(F_cls, c.intent)] for c in LA.concepts),
        LB.size,
    )
    phi = FunctionGraph.from_targets(
        tuple(LA.intent_index[intent_of(F_cls, d.extent)] for d in LB.concepts),
        LA.size,
    )
    return AdjointPair(complete_lattice_of(LA), complete_lattice_of(LB), phi, psi)


def bond_of_adjoint(p: AdjointPair) -> Bond:
    """The adjointness relation itself, as a bond between order
    classifications."""
    rows = tuple(p.source.up[p.phi(y)] for y in range(p.target.size))
    rel = Relation(p.target.size, p.source.size, rows)
    return Bond(
        lattice_classification(p.source), lattice_classification(p.target), rel
    )


@dataclass(frozen=True)
class EmbeddingBonds:
    """The two embedding bonds tying a classification to its lattice."""

    classification: Classification
    order_classification: Classification
    instance_bond: Bond  # lattice classification -> classification
    type_bond: Bond  # classification -> lattice classification


def embedding_bonds(A: Classification) -> EmbeddingBonds:
    """Exhibit ``A``'s isomorphism with its own concept lattice in the bond
    category; the two bonds are mutually inverse (checked)."""
    LA = concept_lattice_of(A)
    order_cls = lattice_classification(complete_lattice_of(LA))
    instance_bond = Bond(order_cls, A, LA.iota_rel)
    type_bond = Bond(A, order_cls, LA.tau_rel)
    there = compose_bonds(instance_bond, type_bond)
    if there.rel != order_cls.incidence:
        raise ValidationError("instance;type composite is not the lattice identity bond")
    back = compose_bonds(type_bond, instance_bond)
    if back.rel != A.incidence:
        raise ValidationError("type;instance composite is not the identity bond")
    return EmbeddingBonds(A, order_cls, instance_bond, type_bond)


def bond_naturality_holds(F: Bond) -> bool:
    """Rebuilt bond against embedding bonds: both composition paths agree."""
    emb_src = embedding_bonds(F.source)
    emb_tgt = embedding_bonds(F.target)
    rebuilt = bond_of_adjoint(adjoint_of_bond(F))
    lhs = compose_bonds(rebuilt, emb_tgt.instance_bond)
    rhs = compose_bonds(emb_src.instance_bond, F)
    return lhs == rhs


def down_up_witness(L: CompleteLattice) -> FunctionGraph:
    """Each element to its principal concept in the rebuilt order lattice."""
    M = concept_lattice_of(lattice_classification(L))
    targets = tuple(M.extent_index[L.down[x]] for x in range(L.size))
    if len(set(targets)) != M.size:
        raise ValidationError("principal concepts do not exhaust the rebuilt lattice")
    return FunctionGraph.from_targets(targets, M.size)


def adjoint_roundtrip_holds(p: AdjointPair) -> bool:
    """Conjugating the rebuilt adjoint by the principal-concept witnesses
    recovers the original pair."""
    q = adjoint_of_bond(bond_of_adjoint(p))
    w_src = down_up_witness(p.source)
    w_tgt = down_up_witness(p.target)
    return (
        w_src.then(q.psi) == p.psi.then(w_tgt)
        and w_tgt.then(q.phi) == p.phi.then(w_src)
    )


# -- complete relational equivalence ------------------------------------------


@dataclass(frozen=True)
class CompleteHomomorphism:
    """Monotone map preserving all meets and joins, empty ones included."""

    source: CompleteLattice
    target: CompleteLattice
    psi: FunctionGraph
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.psi.rel.shape != (self.source.size, self.target.size):
            raise ShapeError(f"psi shape {self.psi.rel.shape} is wrong")
        if validate:
            verdict = is_complete_homomorphism(self.source, self.target, self.psi)
            if not verdict:
                raise ValidationError(verdict.reason, witness=verdict.witness)


def is_complete_homomorphism(
    L: CompleteLattice, K: CompleteLattice, psi: FunctionGraph
) -> CheckResult:
    """Binary meets/joins plus the empty ones; enough at finite scale."""
    if psi(L.top) != K.top:
        return CheckResult(False, witness=("top",), reason="top is not preserved")
    if psi(L.bottom) != K.bottom:
        return CheckResult(False, witness=("bottom",), reason="bottom is not preserved")
    for i in range(L.size):
        for j in range(i + 1, L.size):
            if psi(L.meet_table[i][j]) != K.meet_table[psi(i)][psi(j)]:
                return CheckResult(
                    False,
                    witness=("meet", L.elements[i], L.elements[j]),
                    reason="a binary meet is not preserved",
                )
            if psi(L.join_table[i][j]) != K.join_table[psi(i)][psi(j)]:
                return CheckResult(
                    False,
                    witness=("join", L.elements[i], L.elements[j]),
                    reason="a binary join is not preserved",
                )
    return CheckResult(True)


def identity_hom(L: CompleteLattice) -> CompleteHomomorphism:
    return CompleteHomomorphism(L, L, FunctionGraph.identity(L.size))


def compose_homs(
    h1: CompleteHomomorphism, h2: CompleteHomomorphism
) -> CompleteHomomorphism:
    if h1.target != h2.source:
        raise ShapeError("compose_homs: middle lattices differ")
    return CompleteHomomorphism(h1.source, h2.target, h1.psi.then(h2.psi))


def canonical_adjoints(h: CompleteHomomorphism) -> tuple[FunctionGraph, FunctionGraph]:
    """Left and right adjoints of a complete homomorphism, by meet/join
    formulas over the preimages."""
    L, K, psi = h.source, h.target, h.psi
    phi = FunctionGraph.from_targets(
        tuple(L.meet_of(psi.inverse_image(K.up[y])) for y in range(K.size)), L.size
    )
    theta = FunctionGraph.from_targets(
        tuple(L.join_of(psi.inverse_image(K.down[y])) for y in range(K.size)), L.size
    )
    return phi, theta


def hom_of_pair(p: BondingPair) -> CompleteHomomorphism:
    """Right adjoint of the forward bond; checked against the left adjoint of
    the backward bond, which must agree pointwise."""
    fwd = adjoint_of_bond(p.forward)
    bwd = adjoint_of_bond(p.backward)
    if fwd.psi != bwd.phi:
        diff = next(
            i for i in range(fwd.psi.src_size) if fwd.psi(i) != bwd.phi(i)
        )
        raise ValidationError(
            "forward right adjoint and backward left adjoint disagree",
            witness=(diff,),
        )
    return CompleteHomomorphism(fwd.source, fwd.target, fwd.psi)


def pair_of_hom(h: CompleteHomomorphism) -> BondingPair:
    """Spread a complete homomorphism into its two adjunction bonds."""
    phi, theta = canonical_adjoints(h)
    forward = bond_of_adjoint(AdjointPair(h.source, h.target, phi, h.psi))
    backward = bond_of_adjoint(AdjointPair(h.target, h.source, h.psi, theta))
    return BondingPair(forward, backward)


def embedding_bonding_pairs(A: Classification) -> tuple[BondingPair, BondingPair]:
    """The mutually inverse pairs between ``A`` and its order classification:
    first A to the lattice side, then the lattice side back to A."""
    emb = embedding_bonds(A)
    to_lattice = BondingPair(emb.type_bond, emb.instance_bond)
    from_lattice = BondingPair(emb.instance_bond, emb.type_bond)
    return to_lattice, from_lattice


def pair_roundtrip_holds(p: BondingPair) -> bool:
    """Conjugation by the embedding pairs equals the rebuilt pair, bit-exact."""
    to_src = embedding_bonding_pairs(p.source)[1]
    to_tgt = embedding_bonding_pairs(p.target)[0]
    conjugated = compose_bonding_pairs(compose_bonding_pairs(to_src, p), to_tgt)
    rebuilt = pair_of_hom(hom_of_pair(p))
    return conjugated == rebuilt


def hom_roundtrip_holds(h: CompleteHomomorphism) -> bool:
    """Principal-concept witnesses intertwine a hom with its rebuilt hom."""
    rebuilt = hom_of_pair(pair_of_hom(h))
    w_src = down_up_witness(h.source)
    w_tgt = down_up_witness(h.target)
    return w_src.then(rebuilt.psi) == h.psi.then(w_tgt)


# -- irreducibility ------------------------------------------------------------


def meet_irreducibles(L: ConceptLattice) -> int:
    """Mask of elements with exactly one upper cover."""
    cov = L.covers
    return mask_of(i for i in range(L.size) if cov.rows[i].bit_count() == 1)


def join_irreducibles(L: ConceptLattice) -> int:
    cov_down = transpose(L.covers)
    return mask_of(i for i in range(L.size) if cov_down.rows[i].bit_count() == 1)


def is_type_reduced(L: ConceptLattice) -> bool:
    """Every type concept is meet-irreducible."""
    irr = meet_irreducibles(L)
    return all(irr >> L.tau(t) & 1 for t in range(len(L.type_labels)))


def is_instance_reduced(L: ConceptLattice) -> bool:
    irr = join_irreducibles(L)
    return all(irr >> L.iota(a) & 1 for a in range(len(L.instance_labels)))
