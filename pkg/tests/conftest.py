import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from bredon.corpus import corpus  # noqa: E402
from bredon.orbitcat import (GroupSpec, conjugate_system, permutation_system,  # noqa: E402
                             validate_system)
from bredon.ratlinalg import RatMatrix  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

C1 = GroupSpec(2, 0)
C2 = GroupSpec(2, 1)
C4 = GroupSpec(2, 2)
C8 = GroupSpec(2, 3)
C3 = GroupSpec(3, 1)
C9 = GroupSpec(3, 2)


@pytest.fixture(scope="session")
def builtin_corpus():
    return corpus()


def small_matrices(max_rows=5, max_cols=5, lo=-3, hi=3):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c).map(
                lambda e: RatMatrix(r, c, tuple(e)))))


def random_invertible(rng: random.Random, size: int) -> RatMatrix:
    """Unipotent-times-permutation, so invertibility is guaranteed."""
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = rng.choice([1, -1, 2])
        for j in range(i + 1, size):
            rows[i][j] = rng.randint(-2, 2)
    perm = list(range(size))
    rng.shuffle(perm)
    return RatMatrix.from_rows([rows[p] for p in perm], cols=size)


def random_system(g: GroupSpec, rng: random.Random):
    """A random valid coefficient system: a permutation system on a random
    G-set, with a random change of basis at every level."""
    orbits = [rng.randint(0, g.n) for _ in range(rng.randint(1, 3))]
    m = permutation_system(g, orbits)
    changes = [random_invertible(rng, d) for d in m.dims]
    m = conjugate_system(m, changes)
    assert validate_system(m) == []
    return m
