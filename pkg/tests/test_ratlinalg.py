from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bredon.ratlinalg import (DimensionMismatch, InconsistentSystem, RatMatrix, format_rational,
                              image_basis, kernel_basis, multiply, parse_rational, rank, rref,
                              solve)
from conftest import small_matrices
from oracles import integer_rank


def M(rows, cols=None):
    return RatMatrix.from_rows(rows, cols)


def test_rank_examples():
    assert rank(RatMatrix.identity(2)) == 2
    assert rank(RatMatrix.zeros(3, 3)) == 0
    assert rank(M([[1, 2], [2, 4], [3, 6]])) == 1
    assert rank(RatMatrix.zeros(0, 4)) == 0
    assert rank(RatMatrix.zeros(4, 0)) == 0


def _spans(vectors, target):
    """Whether ``vectors`` is a basis of the line through ``target``."""
    if len(vectors) != 1:
        return False
    (v,) = vectors
    ratio = None
    for a, b in zip(v, target):
        if b == 0:
            if a != 0:
                return False
        else:
            r = Fraction(a) / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio not in (None, 0)


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(2)) == []
    assert _spans(kernel_basis(M([[1, -1]])), (1, 1))
    assert _spans(kernel_basis(M([[1, 2], [2, 4]])), (2, -1))


def test_multiply_examples():
    m = M([[1, 2], [3, Fraction(1, 2)]])
    assert RatMatrix.identity(2) @ m == m
    assert m @ RatMatrix.zeros(2, 3) == RatMatrix.zeros(2, 3)
    swap = M([[0, 1], [1, 0]])
    assert swap @ swap == RatMatrix.identity(2)
    with pytest.raises(DimensionMismatch):
        multiply(RatMatrix.zeros(2, 3), RatMatrix.zeros(2, 3))


def test_rational_strings():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    for bad in ("1.5", "1/0", "x", "", True, 0.5, "1e3"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_entries_are_fractions_in_lowest_terms():
    m = RatMatrix(1, 2, (2, Fraction(4, 6)))
    assert all(isinstance(e, Fraction) for e in m.entries)
    assert m[0, 1] == Fraction(2, 3) and m[0, 1].denominator == 3


def test_json_round_trip():
    m = M([[1, Fraction(-2, 3)], [0, 5]])
    assert m.to_json() == [["1", "-2/3"], ["0", "5"]]
    assert RatMatrix.from_json(m.to_json(), 2, 2) == m
    assert RatMatrix.from_json([], 0, 3) == RatMatrix.zeros(0, 3)


def test_solve_and_image():
    a = M([[1, 1, 0], [0, 1, 1]])
    x = solve(a, (2, 3))
    assert a.apply(x) == (2, 3)
    with pytest.raises(InconsistentSystem):
        solve(M([[1, 1], [2, 2]]), (1, 3))
    img = image_basis(M([[1, 2, 0], [2, 4, 1]]))
    assert img == [(1, 2), (0, 1)]


def test_rref_is_deterministic():
    m = M([[0, 2, 4], [1, 1, 1], [2, 4, 6]])
    r, pivots = rref(m)
    assert pivots == (0, 1)
    assert r.row(0) == (1, 0, -1) and r.row(1) == (0, 1, 2)
    assert rref(m) == (r, pivots)


def test_power():
    rot = M([[0, -1], [1, 0]])
    assert rot.power(4) == RatMatrix.identity(2)
    assert rot.power(0) == RatMatrix.identity(2)
    assert rot.power(2) == RatMatrix.identity(2).scale(-1)


@given(small_matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert not any(m.apply(v))


@given(small_matrices())
def test_rank_matches_integer_oracle(m):
    assert rank(m) == integer_rank(m.to_rows())


@given(small_matrices(4, 4))
def test_rank_matches_sympy(m):
    assert rank(m) == (sympy.Matrix(m.rows, m.cols, list(m.entries)).rank() if m.rows and m.cols else 0)


def _matrix(r, c):
    return st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c).map(
        lambda e: RatMatrix(r, c, tuple(e)))


@given(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).flatmap(
    lambda shape: st.tuples(_matrix(shape[0], shape[1]), _matrix(shape[1], shape[2]))))
def test_rank_of_product(pair):
    a, b = pair
    assert rank(a @ b) <= min(rank(a), rank(b))


@given(small_matrices(4, 4))
def test_image_basis_size_is_rank(m):
    img = image_basis(m)
    assert len(img) == rank(m)
    assert integer_rank([list(v) for v in img]) == len(img)
