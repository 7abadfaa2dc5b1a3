import itertools
import json
import random

import pytest

from bredon.errors import SchemaError
from bredon.orbitcat import (CoefficientSystem, GroupSpec, OrbitMorphism, compose,
                             constant_system, hom_set, identity, permutation_system,
                             validate_system, zero_system)
from bredon.ratlinalg import RatMatrix
from conftest import C2, C3, C4, C8, C9, random_system


def all_morphisms(g):
    return [f for h in g.levels for k in g.levels for f in hom_set(g, h, k)]


def test_group_spec():
    assert C8.order == 8 and list(C8.levels) == [0, 1, 2, 3]
    with pytest.raises(ValueError):
        GroupSpec(4, 1)
    with pytest.raises(ValueError):
        GroupSpec(2, -1)


def test_hom_set_examples():
    assert [f.rep for f in hom_set(C4, 0, 1)] == [0, 1]
    assert hom_set(C4, 1, 0) == []
    assert hom_set(C2, 1, 1) == [identity(C2, 1)]


@pytest.mark.parametrize("g", [C2, C4, C8, C3, C9])
def test_hom_set_counts(g):
    for h, k in itertools.product(g.levels, repeat=2):
        expected = g.p ** (g.n - k) if h <= k else 0
        assert len(hom_set(g, h, k)) == expected


def test_morphism_validation():
    with pytest.raises(ValueError):
        OrbitMorphism(C4, 1, 0, 0)
    with pytest.raises(ValueError):
        OrbitMorphism(C4, 0, 1, 2)


def test_compose_examples():
    f = OrbitMorphism(C4, 0, 1, 1)
    assert compose(identity(C4, 0), f) == f
    t = OrbitMorphism(C4, 1, 1, 1)
    assert compose(t, t) == identity(C4, 1)
    assert compose(OrbitMorphism(C8, 0, 1, 3), OrbitMorphism(C8, 1, 2, 1)) == OrbitMorphism(C8, 0, 2, 0)
    with pytest.raises(ValueError):
        compose(OrbitMorphism(C4, 0, 1, 0), OrbitMorphism(C4, 0, 1, 0))


@pytest.mark.parametrize("g", [C2, C4, C8, C3, C9])
def test_category_laws(g):
    mors = all_morphisms(g)
    for f in mors:
        assert compose(identity(g, f.source), f) == f
        assert compose(f, identity(g, f.target)) == f
    for f in mors:
        for h in mors:
            if h.source != f.target:
                continue
            for k in mors:
                if k.source == h.target:
                    assert compose(compose(f, h), k) == compose(f, compose(h, k))


def test_apply_examples():
    q = constant_system(C4)
    for f in all_morphisms(C4):
        assert q.apply(f) == RatMatrix.identity(1)
    swap = RatMatrix.from_rows([[0, 1], [1, 0]])
    m = CoefficientSystem(C2, (2, 1), (swap, RatMatrix.identity(1)),
                          (RatMatrix.from_rows([[1], [1]]),))
    assert validate_system(m) == []
    assert m.apply(OrbitMorphism(C2, 0, 0, 1)) == swap
    assert m.apply(identity(C2, 0)) == RatMatrix.identity(2)
    assert m.apply(OrbitMorphism(C2, 0, 1, 0)) == RatMatrix.from_rows([[1], [1]])


def test_validate_examples():
    assert validate_system(constant_system(C2)) == []
    order3 = RatMatrix.from_rows([[0, -1], [1, -1]])
    assert order3.power(3) == RatMatrix.identity(2)
    bad = CoefficientSystem(C2, (2, 0), (order3, RatMatrix.zeros(0, 0)), (RatMatrix.zeros(2, 0),))
    (v,) = validate_system(bad)
    assert v.kind == "weyl-order" and v.message == "A_0^2 != I"
    # swap at level 0, identity at level 1, but the restriction is not swap-invariant
    swap = RatMatrix.from_rows([[0, 1], [1, 0]])
    incompatible = CoefficientSystem(C2, (2, 1), (swap, RatMatrix.identity(1)),
                                     (RatMatrix.from_rows([[1], [0]]),))
    (v,) = validate_system(incompatible)
    assert v.kind == "compatibility" and v.where == {"k": 1}


def test_constant_system_examples():
    assert constant_system(C2).dims == (1, 1)
    assert constant_system(C9).dims == (1, 1, 1)
    for g in (C2, C4, C8, C3, C9, GroupSpec(5, 1)):
        assert validate_system(constant_system(g)) == []
        assert validate_system(zero_system(g)) == []


def test_permutation_system_dims():
    m = permutation_system(C4, [0, 1, 2])
    # |(G/e)^H| + |(G/C2)^H| + |(G/G)^H| for H = e, C2, C4
    assert m.dims == (4 + 2 + 1, 2 + 1, 1)
    assert validate_system(m) == []


@pytest.mark.parametrize("g", [C2, C4, C3])
def test_functoriality_random_systems(g):
    rng = random.Random(17 + g.order)
    mors = all_morphisms(g)
    for _ in range(5):
        m = random_system(g, rng)
        for f in mors:
            for h in mors:
                if h.source == f.target:
                    assert m.apply(compose(f, h)) == m.apply(f) @ m.apply(h)


def test_restrict_to_matches_translated_morphisms():
    rng = random.Random(5)
    m = random_system(C8, rng)
    for level in C8.levels:
        sub = m.restrict_to(level)
        assert validate_system(sub) == []
        step = C8.p ** (C8.n - level)
        for f in all_morphisms(sub.group):
            big = OrbitMorphism(C8, f.source, f.target, (f.rep * step) % C8.orbit_size(f.target))
            assert sub.apply(f) == m.apply(big)


def test_system_json_round_trip():
    m = random_system(C4, random.Random(3))
    data = json.loads(json.dumps(m.to_json()))
    assert CoefficientSystem.from_json(data) == m
    assert data["dims"] == list(m.dims)


def test_system_schema_errors():
    data = constant_system(C2).to_json()
    data["dims"] = [1]
    with pytest.raises(SchemaError, match="dims"):
        CoefficientSystem.from_json(data)
    data = constant_system(C2).to_json()
    data["weyl"][1] = [["1.5"]]
    with pytest.raises(SchemaError, match=r"weyl\[1\]"):
        CoefficientSystem.from_json(data)
