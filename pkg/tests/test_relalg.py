import pytest

from conceptual.errors import ShapeError, ValidationError
from conceptual.relalg import (
    FunctionGraph,
    Relation,
    complement,
    compose,
    identity,
    intersection,
    left_residual,
    right_residual,
    subrelation,
    transpose,
    union,
)

from oracles import (
    best_left_residual,
    best_right_residual,
    compose_oracle,
    enumerate_relations,
    left_residual_oracle,
    random_relation,
    right_residual_oracle,
)

M = Relation.from_matrix


def random_shapes(rng, count, max_size=6):
    for _ in range(count):
        yield rng.randint(0, max_size), rng.randint(0, max_size), rng.randint(0, max_size)


class TestCompose:
    def test_identity_is_left_unit(self):
        r = M([[1, 0], [1, 1]])
        assert compose(identity(2), r) == r

    def test_frozen_example_matches_oracle(self):
        r = M([[1, 1], [0, 1]])
        s = M([[1, 0], [1, 1]])
        expected = M([[1, 1], [1, 1]])
        assert compose(r, s) == expected
        assert compose_oracle(r, s) == expected

    def test_empty_relation_annihilates(self):
        empty = Relation.empty(2, 2)
        for s in enumerate_relations(2, 2):
            assert compose(empty, s) == empty

    def test_matches_oracle_on_random_shapes(self, rng):
        for a, b, c in random_shapes(rng, 40):
            r = random_relation(rng, a, b)
            s = random_relation(rng, b, c)
            assert compose(r, s) == compose_oracle(r, s)

    def test_associative(self, rng):
        for a, b, c in random_shapes(rng, 25, max_size=5):
            d = rng.randint(0, 5)
            r = random_relation(rng, a, b)
            s = random_relation(rng, b, c)
            t = random_relation(rng, c, d)
            assert compose(compose(r, s), t) == compose(r, compose(s, t))

    def test_shape_mismatch_names_both_shapes(self):
        with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 2\)"):
            compose(Relation.empty(2, 3), Relation.empty(2, 2))


class TestIdentityTransposeComplement:
    def test_identity_en_zero_and_two(self):
        assert identity(0) == Relation(0, 0, ())
        assert identity(2) == M([[1, 0], [0, 1]])

    def test_identity_is_right_unit(self, rng):
        for _ in range(10):
            r = random_relation(rng, 3, rng.randint(0, 4))
            assert compose(identity(3), r) == r

    def test_transpose_involution(self, rng):
        for a, b, _ in random_shapes(rng, 20):
            r = random_relation(rng, a, b)
            assert transpose(transpose(r)) == r

    def test_transpose_example(self):
        assert transpose(M([[1, 1], [0, 1]])) == M([[1, 0], [1, 1]])

    def test_transpose_fixes_identity(self):
        for n in range(5):
            assert transpose(identity(n)) == identity(n)

    def test_transpose_reverses_composition(self, rng):
        for a, b, c in random_shapes(rng, 20, max_size=5):
            r = random_relation(rng, a, b)
            s = random_relation(rng, b, c)
            assert transpose(compose(r, s)) == compose(transpose(s), transpose(r))

    def test_complement(self):
        assert complement(Relation.empty(2, 2)) == Relation.full(2, 2)
        assert complement(M([[1, 0]])) == M([[0, 1]])

    def test_complement_involution(self, rng):
        for a, b, _ in random_shapes(rng, 15):
            r = random_relation(rng, a, b)
            assert complement(complement(r)) == r


class TestResiduals:
    def test_left_residual_identity_law(self, rng):
        for _ in range(10):
            t = random_relation(rng, 3, rng.randint(0, 4))
            assert left_residual(identity(3), t) == t

    def test_left_residual_frozen_example(self):
        r = M([[1], [1]])
        t = M([[1, 0], [0, 1]])
        expected = M([[0, 0]])
        assert left_residual(r, t) == expected
        assert left_residual_oracle(r, t) == expected

    def test_left_residual_is_largest_solution(self):
        # exhaustive maximality over all 16 candidate factors at 2x2
        for r in enumerate_relations(2, 2):
            for t in enumerate_relations(2, 2):
                assert left_residual(r, t) == best_left_residual(r, t)

    def test_right_residual_identity_law(self, rng):
        for _ in range(10):
            t = random_relation(rng, rng.randint(0, 4), 3)
            assert right_residual(t, identity(3)) == t

    def test_right_residual_frozen_example(self):
        t = M([[1, 0], [0, 1]])
        s = M([[1, 1]])
        expected = M([[0], [0]])
        assert right_residual(t, s) == expected
        assert right_residual_oracle(t, s) == expected

    def test_right_residual_is_largest_solution(self):
        for t in enumerate_relations(2, 2):
            for s in enumerate_relations(2, 2):
                assert right_residual(t, s) == best_right_residual(t, s)

    def test_residuals_match_oracle_on_random_shapes(self, rng):
        for a, b, c in random_shapes(rng, 40):
            r = random_relation(rng, a, b)
            t = random_relation(rng, a, c)
            assert left_residual(r, t) == left_residual_oracle(r, t)
            u = random_relation(rng, b, c)
            v = random_relation(rng, a, c)
            assert right_residual(v, u) == right_residual_oracle(v, u)

    def test_transpose_dualizes_residuation_on_3x3(self, rng):
        for _ in range(60):
            r = random_relation(rng, 3, 3)
            t = random_relation(rng, 3, 3)
            assert transpose(left_residual(r, t)) == right_residual(
                transpose(t), transpose(r)
            )
            assert transpose(right_residual(t, r)) == left_residual(
                transpose(r), transpose(t)
            )

    def test_vacuous_quantifiers_yield_full(self):
        # no source instances: both residuals are full relations
        r = Relation.empty(0, 2)
        t = Relation.empty(0, 3)
        assert left_residual(r, t) == Relation.full(2, 3)
        assert right_residual(Relation.empty(2, 0), Relation.empty(3, 0)) == Relation.full(2, 3)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            left_residual(Relation.empty(2, 2), Relation.empty(3, 2))
        with pytest.raises(ShapeError):
            right_residual(Relation.empty(2, 2), Relation.empty(2, 3))


class TestAdjointness:
    def test_exhaustive_small(self):
        for r in enumerate_relations(2, 2):
            for s in enumerate_relations(2, 2):
                rs = compose(r, s)
                for t in enumerate_relations(2, 2):
                    below = subrelation(rs, t)
                    assert below == subrelation(s, left_residual(r, t))
                    assert below == subrelation(r, right_residual(t, s))

    def test_random_shapes(self, rng):
        for a, b, c in random_shapes(rng, 60):
            r = random_relation(rng, a, b)
            s = random_relation(rng, b, c)
            t = random_relation(rng, a, c)
            below = subrelation(compose(r, s), t)
            assert below == subrelation(s, left_residual(r, t))
            assert below == subrelation(r, right_residual(t, s))


class TestDerivedLaws:
    def test_residuation_preserves_composition(self, rng):
        for a, b, c in random_shapes(rng, 30, max_size=5):
            d = rng.randint(0, 5)
            r1 = random_relation(rng, a, b)
            r2 = random_relation(rng, b, c)
            t = random_relation(rng, a, d)
            assert left_residual(compose(r1, r2), t) == left_residual(
                r2, left_residual(r1, t)
            )
            s1 = random_relation(rng, c, b)
            s2 = random_relation(rng, b, a)
            u = random_relation(rng, d, a)
            assert right_residual(u, compose(s1, s2)) == right_residual(
                right_residual(u, s2), s1
            )

    def test_unconstrained_associative_law(self, rng):
        # (r\t)/s == r\(t/s)
        for _ in range(40):
            a, b, c, d = (rng.randint(0, 4) for _ in range(4))
            t = random_relation(rng, a, b)
            r = random_relation(rng, a, c)
            s = random_relation(rng, d, b)
            assert right_residual(left_residual(r, t), s) == left_residual(
                r, right_residual(t, s)
            )

    def test_constrained_associative_law(self, rng):
        # close both operands against an endo-relation first
        for _ in range(40):
            a, b, c = rng.randint(1, 4), rng.randint(0, 4), rng.randint(0, 4)
            t = random_relation(rng, a, a)
            r0 = random_relation(rng, a, b)
            s0 = random_relation(rng, c, a)
            r = right_residual(t, left_residual(r0, t))
            s = left_residual(right_residual(t, s0), t)
            assert r == right_residual(t, left_residual(r, t))
            assert s == left_residual(right_residual(t, s), t)
            assert left_residual(right_residual(t, s), r) == right_residual(
                s, left_residual(r, t)
            )

    def test_function_laws(self, rng):
        # residuating by the transpose of a function graph is composition:
        # transpose(f)\r == f.rel o r, and s/g == s o transpose(g)
        for _ in range(30):
            a, b, c = rng.randint(1, 4), rng.randint(1, 4), rng.randint(0, 4)
            f = FunctionGraph.from_targets(
                tuple(rng.randrange(b) for _ in range(a)), b
            )
            r = random_relation(rng, b, c)
            assert left_residual(transpose(f.rel), r) == compose(f.rel, r)
            s = random_relation(rng, c, b)
            g = FunctionGraph.from_targets(
                tuple(rng.randrange(b) for _ in range(a)), b
            )
            assert right_residual(s, g.rel) == compose(s, transpose(g.rel))


class TestValuesAndValidation:
    def test_value_semantics(self):
        r1 = M([[1, 0], [0, 1]])
        r2 = identity(2)
        assert r1 == r2 and hash(r1) == hash(r2)
        assert r1 != M([[1, 0], [1, 1]])

    def test_row_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            Relation(1, 2, (4,))
        with pytest.raises(ValidationError):
            Relation(2, 2, (1,))

    def test_from_pairs_bounds(self):
        with pytest.raises(ValidationError):
            Relation.from_pairs(2, 2, [(2, 0)])

    def test_union_intersection(self, rng):
        for _ in range(10):
            r = random_relation(rng, 3, 3)
            t = random_relation(rng, 3, 3)
            u = union(r, t)
            i = intersection(r, t)
            assert subrelation(r, u) and subrelation(t, u)
            assert subrelation(i, r) and subrelation(i, t)

    def test_function_graph_rejects_non_functions(self):
        with pytest.raises(ValidationError):
            FunctionGraph(M([[1, 1]]))
        with pytest.raises(ValidationError):
            FunctionGraph(M([[0, 0]]))

    def test_function_graph_composition_and_inverse_image(self):
        f = FunctionGraph.from_targets((1, 0, 1), 2)
        g = FunctionGraph.from_targets((0, 0), 1)
        assert f.then(g).targets == (0, 0, 0)
        assert f.inverse_image(0b10) == 0b101
        assert FunctionGraph.identity(3).is_identity()
