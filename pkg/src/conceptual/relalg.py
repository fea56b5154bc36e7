"""Finite boolean relations with composition, transpose, complement and the
two residuals.

A relation is stored row-major as one Python int per source index: bit ``b``
of ``rows[a]`` holds exactly when ``(a, b)`` is in the relation.  Arbitrary-
precision ints act as dense bitset blocks, so composition and both residuals
sweep whole machine words along the destination axis instead of visiting
cells one at a time.

Empty carriers (0 x n, n x 0) are legal everywhere; residuals over a vacuous
quantifier come out full, which keeps the adjunction laws total.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ShapeError, ValidationError


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


def submask(a: int, b: int) -> bool:
    """True when every bit of ``a`` is also set in ``b``."""
    return a & ~b == 0


@dataclass(frozen=True)
class Relation:
    """Boolean matrix between two finite index sets, value semantics."""

    src_size: int
    dst_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.src_size < 0 or self.dst_size < 0:
            raise ValidationError("relation sizes must be nonnegative")
        if len(self.rows) != self.src_size:
            raise ValidationError(
                f"expected {self.src_size} rows, got {len(self.rows)}"
            )
        full = (1 << self.dst_size) - 1
        for a, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValidationError(f"row {a} has bits outside 0..{self.dst_size - 1}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, src_size: int, dst_size: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        rows = [0] * src_size
        for a, b in pairs:
            if not (0 <= a < src_size and 0 <= b < dst_size):
                raise ValidationError(f"pair ({a}, {b}) out of range {src_size}x{dst_size}")
            rows[a] |= 1 << b
        return cls(src_size, dst_size, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], dst_size: int | None = None) -> "Relation":
        """Build from a 0/1 row-of-rows; ``dst_size`` disambiguates 0 rows."""
        if dst_size is None:
            dst_size = len(matrix[0]) if matrix else 0
        rows = []
        for cells in matrix:
            if len(cells) != dst_size:
                raise ValidationError("ragged incidence matrix")
            row = 0
            for b, cell in enumerate(cells):
                if cell not in (0, 1, False, True):
                    raise ValidationError(f"matrix cell must be 0/1, got {cell!r}")
                if cell:
                    row |= 1 << b
            rows.append(row)
        return cls(len(matrix), dst_size, tuple(rows))

    @classmethod
    def empty(cls, src_size: int, dst_size: int) -> "Relation":
        return cls(src_size, dst_size, (0,) * src_size)

    @classmethod
    def full(cls, src_size: int, dst_size: int) -> "Relation":
        return cls(src_size, dst_size, ((1 << dst_size) - 1,) * src_size)

    # -- element access ----------------------------------------------------

    def bit(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def row(self, a: int) -> int:
        return self.rows[a]

    def column(self, b: int) -> int:
        mask = 0
        probe = 1 << b
        for a, row in enumerate(self.rows):
            if row & probe:
                mask |= 1 << a
        return mask

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return transpose(self).rows

    def pairs(self) -> Iterator[tuple[int, int]]:
        for a, row in enumerate(self.rows):
            for b in bits(row):
                yield a, b

    def matrix(self) -> list[list[int]]:
        return [[row >> b & 1 for b in range(self.dst_size)] for row in self.rows]

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.src_size, self.dst_size)

    def __repr__(self):
        body = ", ".join(format(row, f"0{self.dst_size}b")[::-1] for row in self.rows)
        return f"Relation({self.src_size}x{self.dst_size}: [{body}])"


def _require(cond: bool, op: str, r: Relation, s: Relation):
    if not cond:
        raise ShapeError(f"{op}: incompatible shapes {r.shape} and {s.shape}")


def compose(r: Relation, s: Relation) -> Relation:
    """Boolean matrix product: ``(a, c)`` iff some ``b`` links both legs."""
    _require(r.dst_size == s.src_size, "compose", r, s)
    srows = s.rows
    out = []
    for row in r.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= srows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return Relation(r.src_size, s.dst_size, tuple(out))


def identity(n: int) -> Relation:
    if n < 0:
        raise ValidationError("identity size must be nonnegative")
    return Relation(n, n, tuple(1 << i for i in range(n)))


def transpose(r: Relation) -> Relation:
    out = [0] * r.dst_size
    for a, row in enumerate(r.rows):
        abit = 1 << a
        while row:
            low = row & -row
            out[low.bit_length() - 1] |= abit
            row ^= low
    return Relation(r.dst_size, r.src_size, tuple(out))


def complement(r: Relation) -> Relation:
    full = (1 << r.dst_size) - 1
    return Relation(r.src_size, r.dst_size, tuple(row ^ full for row in r.rows))


def left_residual(r: Relation, t: Relation) -> Relation:
    """Largest ``s`` with ``compose(r, s) <= t``.

    ``(b, c)`` is in ``r\\t`` iff every ``a`` related to ``b`` by ``r`` is
    related to ``c`` by ``t``; computed as a row sweep intersecting ``t``
    rows into the output.
    """
    _require(r.src_size == t.src_size, "left_residual", r, t)
    full = (1 << t.dst_size) - 1
    out = [full] * r.dst_size
    for a, row in enumerate(r.rows):
        ta = t.rows[a]
        if ta == full:
            continue
        while row:
            low = row & -row
            out[low.bit_length() - 1] &= ta
            row ^= low
    return Relation(r.dst_size, t.dst_size, tuple(out))


def right_residual(t: Relation, s: Relation) -> Relation:
    """Largest ``r`` with ``compose(r, s) <= t``.

    ``(a, b)`` is in ``t/s`` iff the ``s``-row of ``b`` is contained in the
    ``t``-row of ``a``.
    """
    _require(t.dst_size == s.dst_size, "right_residual", t, s)
    srows = s.rows
    out = []
    for ta in t.rows:
        acc = 0
        for b, sb in enumerate(srows):
            if sb & ~ta == 0:
                acc |= 1 << b
        out.append(acc)
    return Relation(t.src_size, s.src_size, tuple(out))


def subrelation(r: Relation, t: Relation) -> bool:
    """Containment ``r <= t`` of equally-shaped relations."""
    _require(r.shape == t.shape, "subrelation", r, t)
    return all(a & ~b == 0 for a, b in zip(r.rows, t.rows))


def union(r: Relation, t: Relation) -> Relation:
    _require(r.shape == t.shape, "union", r, t)
    return Relation(r.src_size, r.dst_size, tuple(a | b for a, b in zip(r.rows, t.rows)))


def intersection(r: Relation, t: Relation) -> Relation:
    _require(r.shape == t.shape, "intersection", r, t)
    return Relation(r.src_size, r.dst_size, tuple(a & b for a, b in zip(r.rows, t.rows)))


@dataclass(frozen=True)
class FunctionGraph:
    """Relation that is total and single-valued: one set bit per row."""

    rel: Relation

    def __post_init__(self):
        for a, row in enumerate(self.rel.rows):
            if row == 0 or row & (row - 1):
                raise ValidationError(
                    f"row {a} of a function graph must have exactly one bit"
                )

    @classmethod
    def from_targets(cls, targets: Sequence[int], dst_size: int) -> "FunctionGraph":
        rows = []
        for a, b in enumerate(targets):
            if not 0 <= b < dst_size:
                raise ValidationError(f"target {b} of {a} out of range 0..{dst_size - 1}")
            rows.append(1 << b)
        return cls(Relation(len(targets), dst_size, tuple(rows)))

    @classmethod
    def identity(cls, n: int) -> "FunctionGraph":
        return cls(identity(n))

    @cached_property
    def targets(self) -> tuple[int, ...]:
        return tuple(row.bit_length() - 1 for row in self.rel.rows)

    def __call__(self, a: int) -> int:
        return self.targets[a]

    @property
    def src_size(self) -> int:
        return self.rel.src_size

    @property
    def dst_size(self) -> int:
        return self.rel.dst_size

    def then(self, other: "FunctionGraph") -> "FunctionGraph":
        """Diagrammatic composition: first self, then other."""
        if self.dst_size != other.src_size:
            raise ShapeError(
                f"then: incompatible shapes {self.rel.shape} and {other.rel.shape}"
            )
        return FunctionGraph.from_targets(
            tuple(other.targets[b] for b in self.targets), other.dst_size
        )

    def inverse_image(self, mask: int) -> int:
        """Sources whose target lands in ``mask``."""
        out = 0
        for a, b in enumerate(self.targets):
            if mask >> b & 1:
                out |= 1 << a
        return out

    def is_identity(self) -> bool:
        return self.src_size == self.dst_size and all(
            b == a for a, b in enumerate(self.targets)
        )
