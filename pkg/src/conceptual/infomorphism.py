"""Functional and relational infomorphisms between classifications.

Both variants are contravariant pairs validated eagerly against the
fundamental property; pass ``validate=False`` to build first and check
afterwards with ``check_functional``/``check_relational``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

from . import relalg
from .classification import (
    Classification,
    extent_of,
    instance_preorder,
    powerset_classification,
    type_preorder,
    dual as dual_classification,
)
from .errors import CheckResult, ShapeError, ValidationError
from .relalg import FunctionGraph, Relation, compose, left_residual, right_residual, transpose


@dataclass(frozen=True)
class FunctionalInfomorphism:
    """Type function forward, instance function backward, biconditionally tied."""

    source: Classification
    target: Classification
    f: FunctionGraph  # instances: target -> source
    g: FunctionGraph  # types: source -> target
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.f.rel.shape != (len(self.target.instances), len(self.source.instances)):
            raise ShapeError(
                f"instance function shape {self.f.rel.shape} does not map "
                f"target instances to source instances"
            )
        if self.g.rel.shape != (len(self.source.types), len(self.target.types)):
            raise ShapeError(
                f"type function shape {self.g.rel.shape} does not map "
                f"source types to target types"
            )
        if validate:
            verdict = check_functional(self)
            if not verdict:
                raise ValidationError(
                    f"fundamental property fails at {verdict.witness}",
                    witness=verdict.witness,
                )

    def __repr__(self):
        return f"FunctionalInfomorphism({self.source!r} => {self.target!r})"


def check_functional(m: FunctionalInfomorphism) -> CheckResult:
    """Fundamental property: f(b) carries t in the source iff b carries g(t)."""
    lhs = compose(m.f.rel, m.source.incidence)
    rhs = compose(m.target.incidence, transpose(m.g.rel))
    if lhs == rhs:
        return CheckResult(True)
    for b, (x, y) in enumerate(zip(lhs.rows, rhs.rows)):
        if x != y:
            t = next(relalg.bits(x ^ y))
            return CheckResult(
                False,
                witness=(m.target.instances[b], m.source.types[t]),
                reason="fundamental property fails",
            )
    raise AssertionError("unreachable")


def identity_functional(K: Classification) -> FunctionalInfomorphism:
    return FunctionalInfomorphism(
        K,
        K,
        FunctionGraph.identity(len(K.instances)),
        FunctionGraph.identity(len(K.types)),
    )


def compose_functional(
    m1: FunctionalInfomorphism, m2: FunctionalInfomorphism
) -> FunctionalInfomorphism:
    """Diagrammatic composite: types run forward, instances backward."""
    if m1.target != m2.source:
        raise ShapeError("compose_functional: middle classifications differ")
    return FunctionalInfomorphism(
        m1.source, m2.target, m2.f.then(m1.f), m1.g.then(m2.g)
    )


def dual_functional(m: FunctionalInfomorphism) -> FunctionalInfomorphism:
    """Swap roles over the dual classifications; an involution."""
    return FunctionalInfomorphism(
        dual_classification(m.target), dual_classification(m.source), m.g, m.f
    )


def powerset_infomorphism(
    a_labels: tuple[str, ...], b_labels: tuple[str, ...], f: FunctionGraph
) -> FunctionalInfomorphism:
    """Lift a function between label sets to their powerset classifications.

    ``f`` maps the second label set into the first; types go forward by
    inverse image.
    """
    if f.rel.shape != (len(b_labels), len(a_labels)):
        raise ShapeError(f"function shape {f.rel.shape} does not map {len(b_labels)} into {len(a_labels)}")
    pa = powerset_classification(a_labels)
    pb = powerset_classification(b_labels)
    # subset masks double as type indices in both powersets
    g = FunctionGraph.from_targets(
        tuple(f.inverse_image(s) for s in range(1 << len(a_labels))), 1 << len(b_labels)
    )
    return FunctionalInfomorphism(pa, pb, f, g)


def instance_infomorphism(K: Classification) -> FunctionalInfomorphism:
    """The instance-identity infomorphism into the instance powerset."""
    p = powerset_classification(K.instances)
    g = FunctionGraph.from_targets(
        tuple(extent_of(K, 1 << t) for t in range(len(K.types))), 1 << len(K.instances)
    )
    return FunctionalInfomorphism(K, p, FunctionGraph.identity(len(K.instances)), g)


@dataclass(frozen=True)
class RelationalInfomorphism:
    """Relations in place of functions; the two residuals must coincide."""

    source: Classification
    target: Classification
    r: Relation  # instances: source -> target
    s: Relation  # types: source -> target
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        if self.r.shape != (len(self.source.instances), len(self.target.instances)):
            raise ShapeError(f"instance relation shape {self.r.shape} is wrong")
        if self.s.shape != (len(self.source.types), len(self.target.types)):
            raise ShapeError(f"type relation shape {self.s.shape} is wrong")
        if validate:
            verdict = check_relational(self)
            if not verdict:
                raise ValidationError(
                    f"fundamental property fails at {verdict.witness}",
                    witness=verdict.witness,
                )

    def __repr__(self):
        return f"RelationalInfomorphism({self.source!r} => {self.target!r})"


def check_relational(m: RelationalInfomorphism) -> CheckResult:
    """Fundamental property: the two residuals agree (their value is the bond)."""
    lhs = left_residual(m.r, m.source.incidence)
    rhs = right_residual(m.target.incidence, m.s)
    if lhs == rhs:
        return CheckResult(True)
    for b, (x, y) in enumerate(zip(lhs.rows, rhs.rows)):
        if x != y:
            t = next(relalg.bits(x ^ y))
            return CheckResult(
                False,
                witness=(m.target.instances[b], m.source.types[t]),
                reason="residuals differ",
            )
    raise AssertionError("unreachable")


def identity_relational(K: Classification) -> RelationalInfomorphism:
    n_i = len(K.instances)
    n_t = len(K.types)
    return RelationalInfomorphism(K, K, relalg.identity(n_i), relalg.identity(n_t))


def compose_relational(
    m1: RelationalInfomorphism, m2: RelationalInfomorphism
) -> RelationalInfomorphism:
    if m1.target != m2.source:
        raise ShapeError("compose_relational: middle classifications differ")
    return RelationalInfomorphism(
        m1.source, m2.target, compose(m1.r, m2.r), compose(m1.s, m2.s)
    )


def dual_relational(m: RelationalInfomorphism) -> RelationalInfomorphism:
    return RelationalInfomorphism(
        dual_classification(m.target),
        dual_classification(m.source),
        transpose(m.s),
        transpose(m.r),
    )


def fn2rel(m: FunctionalInfomorphism) -> RelationalInfomorphism:
    """Relational widening of a functional infomorphism via the induced orders."""
    src_pre = instance_preorder(m.source)
    tgt_pre = type_preorder(m.target)
    # r(a, b) iff a <= f(b) in the source instance preorder
    r = compose(src_pre, transpose(m.f.rel))
    # s(t, u) iff g(t) <= u in the target type preorder
    s = compose(m.g.rel, tgt_pre)
    return RelationalInfomorphism(m.source, m.target, r, s)
