"""Executable verification of the three equivalences over a generated corpus.

The corpus holds every context up to 3x3, seeded random contexts beyond,
and the named scales; morphisms are found by exhaustive search between
small pairs and by construction elsewhere.  Everything is deterministic
under a fixed seed, and the report orders records by corpus position.
"""

from __future__ import annotations

import itertools
import random

from . import colimit, functors
from .bond import (
    Bond,
    BondingPair,
    bond_of,
    close_to_bond,
    compose_bonding_pairs,
    compose_bonds,
    identity_bond,
    identity_bonding_pair,
)
from .classification import (
    Classification,
    antichain_classification,
    chain_classification,
    contranominal_classification,
    powerset_classification,
)
from .errors import ConceptualError
from .infomorphism import (
    FunctionalInfomorphism,
    compose_functional,
    dual_functional,
    fn2rel,
    identity_functional,
    instance_infomorphism,
)
from .lattice import concept_lattice_of
from .relalg import FunctionGraph, Relation, bits
from .report import VerificationReport

CHECK_FAMILIES = (
    "classification-roundtrip",
    "infomorphism-roundtrip",
    "lattice-roundtrip",
    "cl-naturality",
    "embedding-inverse",
    "bond-naturality",
    "adjoint-functoriality",
    "bond-functoriality",
    "adjoint-roundtrip",
    "pair-psi-phi",
    "pair-roundtrip",
    "hom-roundtrip",
    "pair-functoriality",
    "hom-functoriality",
    "irreducibility",
    "sum-universal",
    "sum-transport",
    "apposition-universal",
    "apposition-transport",
)


def k1_classification() -> Classification:
    return Classification.from_pairs(
        ("1", "2"), ("a", "b"), [("1", "a"), ("2", "a"), ("2", "b")]
    )


def context_corpus(max_size: int, rng: random.Random) -> list[tuple[str, Classification]]:
    items: list[tuple[str, Classification]] = []
    exh = min(3, max_size)
    for m in range(exh + 1):
        for n in range(exh + 1):
            inst = tuple(f"i{k}" for k in range(m))
            typ = tuple(f"t{k}" for k in range(n))
            for code in range(1 << (m * n)):
                rows = tuple(code >> a * n & (1 << n) - 1 for a in range(m))
                items.append(
                    (f"exh-{m}x{n}-{code}", Classification(inst, typ, Relation(m, n, rows)))
                )
    for size in range(exh + 1, min(6, max_size) + 1):
        inst = tuple(f"i{k}" for k in range(size))
        typ = tuple(f"t{k}" for k in range(size))
        for trial in range(2):
            rows = tuple(rng.getrandbits(size) for _ in range(size))
            items.append(
                (f"rand-{size}x{size}-{trial}", Classification(inst, typ, Relation(size, size, rows)))
            )
    if max_size >= 2:
        items.append(("k1", k1_classification()))
    for n in range(1, min(4, max_size) + 1):
        items.append((f"chain-{n}", chain_classification(n)))
    for n in (2, 3):
        if n <= max_size:
            items.append((f"antichain-{n}", antichain_classification(n)))
            items.append((f"contranominal-{n}", contranominal_classification(n)))
    if max_size >= 2:
        items.append(("powerset-2", powerset_classification(("x", "y"))))
    return items


def _sample(rng: random.Random, items: list, k: int) -> list:
    if len(items) <= k:
        return list(items)
    return rng.sample(items, k)


def _small(items, max_inst, max_typ):
    return [
        (i, K)
        for i, K in items
        if len(K.instances) <= max_inst and len(K.types) <= max_typ
    ]


def infomorphism_corpus(
    contexts, rng: random.Random
) -> list[tuple[str, FunctionalInfomorphism]]:
    items: list[tuple[str, FunctionalInfomorphism]] = []
    for cid, K in _sample(rng, contexts, 10):
        items.append((f"id-{cid}", identity_functional(K)))
    for cid, K in _sample(rng, _small(contexts, 3, 3), 6):
        items.append((f"eta-{cid}", instance_infomorphism(K)))
    small = _small(contexts, 2, 2)
    for sid, tid in _sample(rng, list(itertools.product(range(len(small)), repeat=2)), 6):
        a_id, A = small[sid]
        b_id, B = small[tid]
        found = list(itertools.islice(colimit.enumerate_infomorphisms(A, B), 4))
        for k, m in enumerate(found):
            items.append((f"enum-{a_id}>{b_id}-{k}", m))
    for mid, m in list(items):
        if len(m.source.types) <= 3 and len(m.target.types) <= 3 and len(items) < 60:
            items.append((f"dual-{mid}", dual_functional(m)))
    composable = [
        (i1, i2)
        for i1 in range(len(items))
        for i2 in range(len(items))
        if items[i1][1].target == items[i2][1].source
    ]
    for i1, i2 in _sample(rng, composable, 8):
        items.append(
            (
                f"comp-{items[i1][0]}-{items[i2][0]}",
                compose_functional(items[i1][1], items[i2][1]),
            )
        )
    return items


def bond_corpus(contexts, morphisms, rng: random.Random) -> list[tuple[str, Bond]]:
    items: list[tuple[str, Bond]] = []
    for cid, K in _sample(rng, contexts, 8):
        items.append((f"idbond-{cid}", identity_bond(K)))
    for mid, m in _sample(rng, morphisms, 10):
        items.append((f"fnbond-{mid}", bond_of(fn2rel(m))))
    small = _small(contexts, 3, 3)
    for _ in range(8):
        a_id, A = rng.choice(small)
        b_id, B = rng.choice(small)
        seed = Relation(
            len(B.instances),
            len(A.types),
            tuple(rng.getrandbits(len(A.types)) for _ in range(len(B.instances))),
        )
        items.append((f"closed-{a_id}>{b_id}", Bond(A, B, close_to_bond(A, B, seed))))
    for cid, K in _sample(rng, small, 3):
        emb = functors.embedding_bonds(K)
        items.append((f"iota-{cid}", emb.instance_bond))
        items.append((f"tau-{cid}", emb.type_bond))
    return items


def adjoint_corpus(contexts, bonds, rng: random.Random):
    items = []
    for cid, K in _sample(rng, contexts, 6):
        L = functors.complete_lattice_of(concept_lattice_of(K))
        items.append((f"idadj-{cid}", functors.identity_adjoint(L)))
    for bid, F in _sample(rng, bonds, 10):
        items.append((f"adj-{bid}", functors.adjoint_of_bond(F)))
    lattices = []
    for cid, K in _sample(rng, _small(contexts, 2, 2), 5):
        lattices.append((cid, functors.complete_lattice_of(concept_lattice_of(K))))
    for (aid, L), (bid, Kl) in _sample(
        rng, list(itertools.product(lattices, repeat=2)), 4
    ):
        count = 0
        for psi_t in itertools.product(range(Kl.size), repeat=L.size):
            psi = FunctionGraph.from_targets(psi_t, Kl.size)
            phi_t = []
            try:
                for y in range(Kl.size):
                    phi_t.append(L.meet_of(psi.inverse_image(Kl.up[y])))
                pair = functors.AdjointPair(
                    L, Kl, FunctionGraph.from_targets(tuple(phi_t), L.size), psi
                )
            except ConceptualError:
                continue
            items.append((f"enumadj-{aid}>{bid}-{count}", pair))
            count += 1
            if count >= 3:
                break
    return items


def hom_corpus(contexts, rng: random.Random):
    items = []
    for cid, K in _sample(rng, contexts, 5):
        L = functors.complete_lattice_of(concept_lattice_of(K))
        items.append((f"idhom-{cid}", functors.identity_hom(L)))
    lattices = []
    for cid, K in _sample(rng, _small(contexts, 2, 2), 5):
        lattices.append((cid, functors.complete_lattice_of(concept_lattice_of(K))))
    for (aid, L), (bid, Kl) in _sample(
        rng, list(itertools.product(lattices, repeat=2)), 5
    ):
        count = 0
        for psi_t in itertools.product(range(Kl.size), repeat=L.size):
            psi = FunctionGraph.from_targets(psi_t, Kl.size)
            if functors.is_complete_homomorphism(L, Kl, psi):
                items.append(
                    (f"enumhom-{aid}>{bid}-{count}", functors.CompleteHomomorphism(L, Kl, psi))
                )
                count += 1
                if count >= 3:
                    break
    return items


def pair_corpus(contexts, homs, rng: random.Random) -> list[tuple[str, BondingPair]]:
    items: list[tuple[str, BondingPair]] = []
    for cid, K in _sample(rng, contexts, 8):
        items.append((f"idpair-{cid}", identity_bonding_pair(K)))
    for cid, K in _sample(rng, _small(contexts, 3, 3), 4):
        to_lattice, from_lattice = functors.embedding_bonding_pairs(K)
        items.append((f"embto-{cid}", to_lattice))
        items.append((f"embfrom-{cid}", from_lattice))
    for hid, h in homs:
        items.append((f"spread-{hid}", functors.pair_of_hom(h)))
    composable = [
        (i1, i2)
        for i1 in range(len(items))
        for i2 in range(len(items))
        if items[i1][1].target == items[i2][1].source
    ]
    for i1, i2 in _sample(rng, composable, 6):
        items.append(
            (
                f"comp-{items[i1][0]}-{items[i2][0]}",
                compose_bonding_pairs(items[i1][1], items[i2][1]),
            )
        )
    return items


def abstract_lattice_corpus(contexts, adjoints, rng: random.Random):
    lattices = []
    for cid, K in _sample(rng, contexts, 12):
        lattices.append((f"built-{cid}", concept_lattice_of(K)))
    for cid, K in _sample(rng, _small(contexts, 3, 3), 6):
        L = functors.complete_lattice_of(concept_lattice_of(K))
        lattices.append((f"selfdual-{cid}", functors.abstract_concept_lattice(L)))
    morphisms = []
    for aid, p in adjoints:
        src = functors.abstract_concept_lattice(p.source)
        tgt = functors.abstract_concept_lattice(p.target)
        morphisms.append(
            (
                f"abs-{aid}",
                functors.ConceptLatticeMorphism(src, tgt, p.phi, p.psi, p.phi, p.psi),
            )
        )
    return lattices, morphisms


def _eta_morphism(w: functors.LatticeWitness) -> functors.ConceptLatticeMorphism:
    return functors.ConceptLatticeMorphism(
        w.lattice,
        w.rebuilt,
        w.forward,
        w.backward,
        FunctionGraph.identity(len(w.lattice.instance_labels)),
        FunctionGraph.identity(len(w.lattice.type_labels)),
    )


def verify_equivalences(
    max_size: int = 3, seed: int = 0, inject_bug: bool = False
) -> VerificationReport:
    rng = random.Random(seed)
    report = VerificationReport()
    contexts = context_corpus(max_size, rng)
    morphisms = infomorphism_corpus(contexts, rng)
    bonds = bond_corpus(contexts, morphisms, rng)
    adjoints = adjoint_corpus(contexts, bonds, rng)
    homs = hom_corpus(contexts, rng)
    pairs = pair_corpus(contexts, homs, rng)
    abstract_lattices, abstract_morphisms = abstract_lattice_corpus(contexts, adjoints, rng)

    # functional equivalence
    injected = inject_bug
    for cid, K in contexts:
        L = concept_lattice_of(K)
        back = functors.classification_of_lattice(L)
        if injected and K.instances and K.types:
            rows = list(back.incidence.rows)
            rows[0] ^= 1
            back = Classification(back.instances, back.types, Relation(len(rows), len(K.types), tuple(rows)))
            injected = False
        report.add(
            "classification-roundtrip",
            cid,
            back == K,
            witness=f"incidence differs: {back.incidence!r} vs {K.incidence!r}",
        )
    for mid, m in morphisms:
        rebuilt = functors.morphism_of_lattice_morphism(functors.lattice_of_morphism(m))
        report.add("infomorphism-roundtrip", mid, rebuilt == m, witness="C(L(m)) != m")
    for lid, L in abstract_lattices:
        try:
            functors.lattice_equivalence_witness(L)
            report.add("lattice-roundtrip", lid, True)
        except ConceptualError as e:
            report.add("lattice-roundtrip", lid, False, witness=str(e))
    for mid, cm in abstract_morphisms:
        try:
            w_src = functors.lattice_equivalence_witness(cm.source)
            w_tgt = functors.lattice_equivalence_witness(cm.target)
            rebuilt_cm = functors.lattice_of_morphism(
                functors.morphism_of_lattice_morphism(cm)
            )
            lhs = functors.compose_lattice_morphisms(_eta_morphism(w_src), rebuilt_cm)
            rhs = functors.compose_lattice_morphisms(cm, _eta_morphism(w_tgt))
            report.add("cl-naturality", mid, lhs == rhs, witness="naturality square broke")
        except ConceptualError as e:
            report.add("cl-naturality", mid, False, witness=str(e))

    # relational equivalence
    for cid, K in contexts:
        try:
            functors.embedding_bonds(K)
            report.add("embedding-inverse", cid, True)
        except ConceptualError as e:
            report.add("embedding-inverse", cid, False, witness=str(e))
    for bid, F in bonds:
        report.add(
            "bond-naturality", bid, functors.bond_naturality_holds(F), witness="paths differ"
        )
    composable_bonds = [
        (b1, b2)
        for b1 in range(len(bonds))
        for b2 in range(len(bonds))
        if bonds[b1][1].target == bonds[b2][1].source
    ]
    for b1, b2 in _sample(rng, composable_bonds, 10):
        F, G = bonds[b1][1], bonds[b2][1]
        lhs = functors.adjoint_of_bond(compose_bonds(F, G))
        rhs = functors.compose_adjoints(
            functors.adjoint_of_bond(F), functors.adjoint_of_bond(G)
        )
        report.add(
            "adjoint-functoriality",
            f"{bonds[b1][0]};{bonds[b2][0]}",
            lhs == rhs,
            witness="composite adjoint differs",
        )
    for cid, K in _sample(rng, contexts, 6):
        lhs = functors.adjoint_of_bond(identity_bond(K))
        rhs = functors.identity_adjoint(
            functors.complete_lattice_of(concept_lattice_of(K))
        )
        report.add("adjoint-functoriality", f"identity-{cid}", lhs == rhs)
    composable_adj = [
        (a1, a2)
        for a1 in range(len(adjoints))
        for a2 in range(len(adjoints))
        if adjoints[a1][1].target == adjoints[a2][1].source
    ]
    for a1, a2 in _sample(rng, composable_adj, 10):
        p1, p2 = adjoints[a1][1], adjoints[a2][1]
        lhs = functors.bond_of_adjoint(functors.compose_adjoints(p1, p2))
        rhs = compose_bonds(functors.bond_of_adjoint(p1), functors.bond_of_adjoint(p2))
        report.add(
            "bond-functoriality",
            f"{adjoints[a1][0]};{adjoints[a2][0]}",
            lhs == rhs,
            witness="composite bond differs",
        )
    for aid, p in adjoints:
        report.add(
            "adjoint-roundtrip", aid, functors.adjoint_roundtrip_holds(p), witness="conjugated round trip differs"
        )

    # complete relational equivalence
    for pid, p in pairs:
        try:
            functors.hom_of_pair(p)
            report.add("pair-psi-phi", pid, True)
        except ConceptualError as e:
            report.add("pair-psi-phi", pid, False, witness=str(e))
        try:
            report.add(
                "pair-roundtrip", pid, functors.pair_roundtrip_holds(p), witness="conjugation differs from rebuild"
            )
        except ConceptualError as e:
            report.add("pair-roundtrip", pid, False, witness=str(e))
    for hid, h in homs:
        report.add(
            "hom-roundtrip", hid, functors.hom_roundtrip_holds(h), witness="witness maps do not intertwine"
        )
    composable_pairs = [
        (p1, p2)
        for p1 in range(len(pairs))
        for p2 in range(len(pairs))
        if pairs[p1][1].target == pairs[p2][1].source
    ]
    for p1, p2 in _sample(rng, composable_pairs, 8):
        q1, q2 = pairs[p1][1], pairs[p2][1]
        lhs = functors.hom_of_pair(compose_bonding_pairs(q1, q2))
        rhs = functors.compose_homs(functors.hom_of_pair(q1), functors.hom_of_pair(q2))
        report.add(
            "pair-functoriality",
            f"{pairs[p1][0]};{pairs[p2][0]}",
            lhs == rhs,
            witness="composite homomorphism differs",
        )
    composable_homs = [
        (h1, h2)
        for h1 in range(len(homs))
        for h2 in range(len(homs))
        if homs[h1][1].target == homs[h2][1].source
    ]
    for h1, h2 in _sample(rng, composable_homs, 8):
        g1, g2 = homs[h1][1], homs[h2][1]
        lhs = functors.pair_of_hom(functors.compose_homs(g1, g2))
        rhs = compose_bonding_pairs(functors.pair_of_hom(g1), functors.pair_of_hom(g2))
        report.add(
            "hom-functoriality",
            f"{homs[h1][0]};{homs[h2][0]}",
            lhs == rhs,
            witness="composite pair differs",
        )

    # irreducibility preservation
    for mid, m in morphisms:
        LA = concept_lattice_of(m.source)
        LB = concept_lattice_of(m.target)
        cm = functors.lattice_of_morphism(m)
        ok = True
        if functors.is_type_reduced(LB):
            irr_a = functors.meet_irreducibles(LA)
            irr_b = functors.meet_irreducibles(LB)
            ok = all(irr_b >> cm.psi(x) & 1 for x in bits(irr_a))
        if ok and functors.is_instance_reduced(LA):
            irr_b = functors.join_irreducibles(LB)
            irr_a = functors.join_irreducibles(LA)
            ok = all(irr_a >> cm.phi(y) & 1 for y in bits(irr_b))
        report.add("irreducibility", mid, ok, witness="irreducibility lost")

    # colimit transport
    small = _small(contexts, 2, 2)
    summands = _sample(rng, [item for item in small if item[1].instances], 2)
    first_transport = True
    for (aid, A), (bid, B) in itertools.product(summands, repeat=2):
        d = colimit.coproduct_sum(A, B)
        sub = colimit.transport_coproduct(
            d, targets=[A], inject_bug=inject_bug and first_transport
        )
        first_transport = False
        for r in sub.records:
            report.records.append(
                type(r)(r.check, f"{aid}+{bid}:{r.item}", r.verdict, r.witness)
            )
    for cid, K in _sample(rng, [item for item in small if item[1].instances], 2):
        d = colimit.apposition(K, K)
        sub = colimit.transport_coproduct(d, targets=[K])
        for r in sub.records:
            report.records.append(
                type(r)(r.check, f"{cid}|{cid}:{r.item}", r.verdict, r.witness)
            )

    present = {r.check for r in report.records}
    for family in CHECK_FAMILIES:
        if family not in present:
            report.flag_no_coverage(family)
    return report
