import pytest

from conceptual.classification import (
    Classification,
    antichain_classification,
    chain_classification,
    dual,
    powerset_classification,
)
from conceptual.colimit import (
    DualInvariant,
    apposition,
    check_coproduct_property,
    check_dual_invariant,
    coproduct_mediator,
    coproduct_sum,
    dual_quotient,
    enumerate_infomorphisms,
    fiber_initial,
    fiber_terminal,
    product,
    subposition,
    transport_coproduct,
)
from conceptual.errors import ShapeError, ValidationError
from conceptual.infomorphism import check_functional, compose_functional, instance_infomorphism
from conceptual.relalg import Relation
from conceptual.report import VerificationReport

from conftest import random_context


class TestSum:
    def test_type_count_is_disjoint_union(self, k1, rng):
        B = random_context(rng, 2, 3)
        d = coproduct_sum(k1, B)
        assert len(d.apex.types) == 2 + 3
        assert len(d.apex.instances) == 2 * 2

    def test_injections_valid_by_construction(self, k1, rng):
        for _ in range(5):
            A = random_context(rng, 2, 2)
            B = random_context(rng, 2, 2)
            d = coproduct_sum(A, B)
            assert check_functional(d.left_injection)
            assert check_functional(d.right_injection)

    def test_sum_with_typeless_singleton_is_relabelled_k1(self, k1):
        E = Classification(("e",), (), Relation.empty(1, 0))
        d = coproduct_sum(k1, E)
        assert len(d.apex.instances) == 2
        assert d.apex.incidence == k1.incidence
        assert [t.split(":", 1)[1] for t in d.apex.types] == list(k1.types)

    def test_universal_property_and_unique_mediator(self, k1, rng):
        report = VerificationReport()
        A = random_context(rng, 2, 2)
        d = coproduct_sum(k1, A)
        check_coproduct_property(d, [k1, A], report)
        assert report.records and report.ok

    def test_mediator_equations(self, k1, rng):
        A = random_context(rng, 2, 2)
        d = coproduct_sum(k1, A)
        legs_a = list(enumerate_infomorphisms(k1, A))
        legs_b = list(enumerate_infomorphisms(A, A))
        if legs_a and legs_b:
            m = coproduct_mediator(d, legs_a[0], legs_b[0])
            assert compose_functional(d.left_injection, m) == legs_a[0]
            assert compose_functional(d.right_injection, m) == legs_b[0]


class TestProduct:
    def test_dual_coherence(self, k1, rng):
        B = random_context(rng, 2, 3)
        p = product(k1, B)
        s = coproduct_sum(dual(k1), dual(B))
        assert dual(p.apex) == s.apex

    def test_projections_valid(self, k1, rng):
        for _ in range(5):
            B = random_context(rng, 3, 2)
            p = product(k1, B)
            assert check_functional(p.left_projection)
            assert check_functional(p.right_projection)

    def test_universal_property_of_cones(self, k1):
        B = antichain_classification(2)
        p = product(k1, B)
        for C in (k1, B):
            mediators = list(enumerate_infomorphisms(C, p.apex))
            legs_a = list(enumerate_infomorphisms(C, k1))
            legs_b = list(enumerate_infomorphisms(C, B))
            for na in legs_a:
                for nb in legs_b:
                    found = [
                        m
                        for m in mediators
                        if compose_functional(m, p.left_projection) == na
                        and compose_functional(m, p.right_projection) == nb
                    ]
                    assert len(found) == 1


class TestFiberConstructions:
    def test_apposition_duplicates_types(self, k1):
        d = apposition(k1, k1)
        assert len(d.apex.instances) == 2
        assert len(d.apex.types) == 4

    def test_apposition_with_typeless_context_keeps_incidence(self, k1):
        zero = Classification(k1.instances, (), Relation.empty(2, 0))
        d = apposition(k1, zero)
        assert d.apex.incidence == k1.incidence

    def test_apposition_requires_shared_instances(self, k1):
        other = Classification(("x", "y"), ("t",), Relation.empty(2, 1))
        with pytest.raises(ShapeError):
            apposition(k1, other)

    def test_apposition_universal_in_fiber(self, k1, rng):
        report = VerificationReport()
        other = Classification(
            k1.instances, ("u", "v"), Relation(2, 2, (rng.getrandbits(2), rng.getrandbits(2)))
        )
        d = apposition(k1, other)
        check_coproduct_property(d, [k1, other], report)
        assert report.records and report.ok

    def test_subposition_stacks_instances(self, k1):
        d = subposition(k1, k1)
        assert len(d.apex.instances) == 4
        assert d.apex.types == k1.types
        assert check_functional(d.left_projection)
        assert check_functional(d.right_projection)

    def test_subposition_mirrors_apposition_under_duality(self, k1):
        d = subposition(k1, k1)
        a = apposition(dual(k1), dual(k1))
        assert dual(d.apex).incidence == a.apex.incidence

    def test_fiber_initial_and_terminal(self, k1):
        zero = fiber_initial(k1.instances)
        assert zero.types == ()
        # initial: exactly one fiber morphism into any context over the
        # same instances
        assert len(list(enumerate_infomorphisms(zero, k1, instance_identity=True))) == 1
        top = fiber_terminal(k1.instances)
        assert top == powerset_classification(k1.instances)

    def test_eta_is_the_unique_fiber_morphism_to_terminal(self, k1):
        top = fiber_terminal(k1.instances)
        found = list(enumerate_infomorphisms(k1, top, instance_identity=True))
        assert found == [instance_infomorphism(k1)]

    def test_fiber_of_empty_instance_set(self):
        zero = fiber_initial(())
        top = fiber_terminal(())
        assert len(list(enumerate_infomorphisms(zero, top, instance_identity=True))) == 1


class TestDualQuotient:
    def test_identity_relation_relabels_only(self, k1):
        J = DualInvariant(k1.full_instances, Relation.empty(2, 2))
        Q, proj = dual_quotient(k1, J)
        assert Q.incidence == k1.incidence
        assert Q.types == ("[a]", "[b]")
        assert check_functional(proj)

    def test_k1_merge_on_kept_two(self, k1):
        J = DualInvariant(k1.instance_mask(["2"]), Relation.from_pairs(2, 2, [(0, 1)]))
        Q, proj = dual_quotient(k1, J)
        assert len(Q.instances) == 1
        assert len(Q.types) == 1
        assert Q.incidence == Relation.full(1, 1)

    def test_k1_merge_on_all_instances_rejected(self, k1):
        J = DualInvariant(k1.full_instances, Relation.from_pairs(2, 2, [(0, 1)]))
        verdict = check_dual_invariant(k1, J)
        assert not verdict
        assert verdict.witness == ("1", "a", "b")
        with pytest.raises(ValidationError):
            dual_quotient(k1, J)

    def test_equivalence_closure_merges_chains(self):
        K = Classification.from_pairs(
            ("1",), ("a", "b", "c"), [("1", "a"), ("1", "b"), ("1", "c")]
        )
        J = DualInvariant(1, Relation.from_pairs(3, 3, [(0, 1), (1, 2)]))
        Q, _ = dual_quotient(K, J)
        assert Q.types == ("[a,b,c]",)

    def test_compatibility_quantifies_only_over_kept(self, k1):
        # instance 1 separates a and b but is not kept
        J = DualInvariant(k1.instance_mask(["2"]), Relation.from_pairs(2, 2, [(1, 0)]))
        assert check_dual_invariant(k1, J)


class TestTransport:
    def test_sum_transport_passes(self, k1):
        d = coproduct_sum(k1, antichain_classification(2))
        report = transport_coproduct(d, targets=[k1])
        assert report.records and report.ok

    def test_apposition_transport_passes(self, k1):
        d = apposition(k1, k1)
        report = transport_coproduct(d, targets=[k1])
        assert report.records and report.ok

    def test_bug_injection_fails_with_witness(self, k1):
        d = coproduct_sum(k1, antichain_classification(2))
        report = transport_coproduct(d, targets=[k1], inject_bug=True)
        assert not report.ok
        assert report.failures[0].witness
