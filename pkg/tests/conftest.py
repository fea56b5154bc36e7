import random

import pytest

from conceptual.classification import Classification
from conceptual.relalg import Relation


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def k1():
    return Classification.from_pairs(
        ("1", "2"), ("a", "b"), [("1", "a"), ("2", "a"), ("2", "b")]
    )


def all_contexts(max_inst: int, max_typ: int):
    """Every context with at most the given dimensions, exhaustively."""
    for m in range(max_inst + 1):
        for n in range(max_typ + 1):
            inst = tuple(f"i{k}" for k in range(m))
            typ = tuple(f"t{k}" for k in range(n))
            for code in range(1 << (m * n)):
                rows = tuple(code >> a * n & (1 << n) - 1 for a in range(m))
                yield Classification(inst, typ, Relation(m, n, rows))


def random_context(rng, m: int, n: int) -> Classification:
    inst = tuple(f"i{k}" for k in range(m))
    typ = tuple(f"t{k}" for k in range(n))
    rows = tuple(rng.getrandbits(n) for _ in range(m))
    return Classification(inst, typ, Relation(m, n, rows))
