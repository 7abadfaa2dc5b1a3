"""Acceptance criteria AC1-AC10.

Every check is exact (rational arithmetic, integer dimensions); there are no
tolerances.  Each test prints one ``[PASS]``/``[FAIL]`` line.
"""

import io
import itertools
import json
import random
from contextlib import contextmanager

import pytest

from bredon.cli import run
from bredon.cohomology import cohomology, cohomology_table, euler_characteristic
from bredon.corpus import builtin
from bredon.errors import HypothesisViolation
from bredon.gcw import (EPS, GCWComplex, irreducible_sphere, smash, trivial_sphere,
                        validate_complex, wedge)
from bredon.homotopy import lgood_check, mapping_decomposition, nullification_truncate
from bredon.orbitcat import compose, hom_set
from conftest import C1, C2, C3, C4, C8, C9, random_system
from oracles import (cohomology_from_boundaries, dd_is_zero, orbit_quotient_cohomology,
                     random_simplicial_complex)


@contextmanager
def criterion(capsys, label):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\n[FAIL] {label}")
        raise
    with capsys.disabled():
        print(f"\n[PASS] {label}")


def padded(a, n):
    return tuple(a) + (0,) * (n - len(a))


def test_ac1_corpus_validates(capsys, builtin_corpus):
    with criterion(capsys, "AC1 every builtin complex validates (dd = 0)"):
        assert len(builtin_corpus) >= 25
        groups = {str(x.group) for _, x in builtin_corpus}
        assert {"C2", "C4", "C8", "C3", "C9"} <= groups
        for g in (C2, C4, C8, C3, C9):
            irreducibles = [n for n, x in builtin_corpus
                            if x.group == g and ("lambda" in n or "sigma" in n)]
            assert irreducibles, g
        for name, x in builtin_corpus:
            assert validate_complex(x) == [], name
            assert dd_is_zero(x), name


def test_ac2_quotient_oracle(capsys, builtin_corpus):
    with criterion(capsys, "AC2 constant-Q Bredon cohomology equals quotient cohomology"):
        for name, x in builtin_corpus:
            for level in x.group.levels:
                for reduced in (False, True):
                    got = cohomology(x, level=level, reduced=reduced).dims
                    want = orbit_quotient_cohomology(x, level, reduced)
                    assert got == want, (name, level, reduced)


def test_ac3_trivial_group(capsys):
    with criterion(capsys, "AC3 trivial group gives ordinary cellular cohomology"):
        rng = random.Random(2024)
        for _ in range(10):
            counts, bd = random_simplicial_complex(rng, n_vertices=6, n_top=4, top_dim=3)
            boundary = {(d, i, j): ((0, c),) for d, e in bd.items() for (i, j), c in e.items()}
            x = GCWComplex(C1, tuple((0,) * n for n in counts), boundary)
            assert validate_complex(x) == []
            assert cohomology(x).dims == cohomology_from_boundaries(counts, bd)


def test_ac4_euler(capsys, builtin_corpus):
    with criterion(capsys, "AC4 Euler characteristic identity"):
        for name, x in builtin_corpus:
            for level in x.group.levels:
                dims = cohomology(x, level=level).dims
                assert euler_characteristic(x, level) == \
                    sum((-1) ** d * v for d, v in enumerate(dims)), (name, level)


def test_ac5_suspension(capsys, builtin_corpus):
    with criterion(capsys, "AC5 suspension by S^eps shifts reduced cohomology by one"):
        for name, x in builtin_corpus:
            sx = smash(x, irreducible_sphere(x.group, EPS))
            for level in x.group.levels:
                a = cohomology(sx, level=level, reduced=True).dims
                b = (0,) + cohomology(x, level=level, reduced=True).dims
                n = max(len(a), len(b))
                assert padded(a, n) == padded(b, n), (name, level)


def _oracle_top(a):
    r = 0
    for level in a.group.levels:
        r = max([r] + [d for d, v in enumerate(orbit_quotient_cohomology(a, level, True)) if v])
    return r


MAPEILEN_SOURCES = [("C2:sigma", 1), ("C2:eps", 1), ("C4:lambda(1)", 2)]


def test_ac6_mapping_decomposition(capsys):
    with criterion(capsys, "AC6 mapping-space decomposition shape and values"):
        for desc, expected_r in MAPEILEN_SOURCES:
            a = builtin(desc)
            r = _oracle_top(a)
            assert r == expected_r
            for m in (r + 2, r + 5):
                d = mapping_decomposition(a, m)
                assert d.top_degree == r
                assert d.factors
                for i in range(m - r, m + 1):
                    want = []
                    for level in a.group.levels:
                        dims = orbit_quotient_cohomology(a, level, True)
                        want.append(dims[m - i] if m - i < len(dims) else 0)
                    f = d.factor(i)
                    assert (f.values if f else (0,) * len(want)) == tuple(want), (desc, m, i)
                assert all(m - r <= i <= m for i in d.degrees())
            for m in (r, r - 1, 0):
                with pytest.raises(HypothesisViolation):
                    mapping_decomposition(a, m)


def test_ac7_truncation(capsys):
    with criterion(capsys, "AC7 truncation at m-r leaves the single factor K(M^r, m-r)"):
        for desc in ["C2:sigma", "C2:eps", "C4:lambda(1)", "C4:wedge(sigma, eps^2)",
                     "C8:lambda(1)+lambda(2)", "C9:lambda(3)+eps"]:
            a = builtin(desc)
            r = _oracle_top(a)
            assert any(padded(orbit_quotient_cohomology(a, k, True), r + 1)[r]
                       for k in a.group.levels)
            for m in (r + 1, r + 2, r + 5):
                t = nullification_truncate(mapping_decomposition(a, m), m - r)
                assert len(t.nontrivial()) == 1, (desc, m)
                (f,) = t.factors
                assert f.degree == m - r
                assert f.values == tuple(padded(orbit_quotient_cohomology(a, k, True), r + 1)[r]
                                         for k in a.group.levels)


def test_ac8_lgood(capsys):
    with criterion(capsys, "AC8 L-good necessary-condition verdicts"):
        for g, k in itertools.product((C2, C4, C3), (1, 2, 3)):
            v = lgood_check(trivial_sphere(g, k))
            assert v.outcome == "necessary-condition-holds" and v.k == k
        for desc, k in [("C4:lambda(1)", 2), ("C8:lambda(1)+2eps", 4), ("C3:lambda(1)", 2),
                        ("C9:lambda(1)+eps", 3), ("C2:eps^2", 2), ("C2:lambda(1)+eps", 3)]:
            v = lgood_check(builtin(desc))
            assert v.outcome == "necessary-condition-holds" and v.k == k, desc
        e = irreducible_sphere(C2, EPS)
        v = lgood_check(wedge(e, smash(e, e)))
        assert v.outcome == "not-l-good" and v.witness == (2, 1)
        rng = random.Random(8)
        for _ in range(5):
            g = rng.choice([C2, C4, C3])
            s, r = sorted(rng.sample(range(1, 6), 2))
            first, second = rng.sample([r, s], 2)
            a = wedge(trivial_sphere(g, first), trivial_sphere(g, second))
            v = lgood_check(a)
            assert v.outcome == "not-l-good" and v.witness == (r, s), (g, r, s)


def test_ac9_functoriality(capsys):
    with criterion(capsys, "AC9 coefficient systems are contravariant functors"):
        for g in (C2, C4, C3):
            rng = random.Random(90 + g.order)
            mors = [f for h in g.levels for k in g.levels for f in hom_set(g, h, k)]
            for _ in range(5):
                m = random_system(g, rng)
                for f in mors:
                    for h in mors:
                        if h.source == f.target:
                            assert m.apply(compose(f, h)) == m.apply(f) @ m.apply(h)


def _corpus_json(corpus, jobs):
    out = []
    for name, x in corpus:
        entry = {"name": name, "complex": x.to_json(),
                 "unreduced": cohomology_table(x, jobs=jobs).to_json(),
                 "reduced": cohomology_table(x, reduced=True, jobs=jobs).to_json()}
        if cohomology(x).dims[0] == 1:
            entry["lgood"] = lgood_check(x).to_json()
        profile = entry["reduced"]["levels"]
        if x.is_based and all(lv["dims"][0] == 0 for lv in profile):
            r = max([0] + [d for lv in profile for d, v in enumerate(lv["dims"]) if v])
            entry["map"] = mapping_decomposition(x, r + 3, with_restrictions=True,
                                                 jobs=jobs).to_json()
        out.append(entry)
    return json.dumps(out, indent=2)


def test_ac10_determinism(capsys, builtin_corpus):
    with criterion(capsys, "AC10 byte-identical JSON across runs and thread counts"):
        first = _corpus_json(builtin_corpus, 1)
        assert _corpus_json(builtin_corpus, 1) == first
        assert _corpus_json(builtin_corpus, 4) == first
        for name, _ in builtin_corpus[::4]:
            outputs = set()
            for jobs in ("1", "1", "4"):
                buf = io.StringIO()
                assert run(["cohomology", "--builtin", name, "--all-levels", "--reduced",
                            "--json", "--jobs", jobs], buf, io.StringIO()) == 0
                outputs.add(buf.getvalue())
            assert len(outputs) == 1, name
