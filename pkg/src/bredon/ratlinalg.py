"""Exact dense linear algebra over Q.

Scalars are :class:`fractions.Fraction`. Matrices are immutable, dense and
row-major. Every elimination pivots on the first nonzero entry in column
order, so results (kernel bases in particular) are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value) -> Fraction:
    """Read a rational from an int, a Fraction or a string ``"a/b"`` / ``"a"``."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL_RE.match(text):
            try:
                return Fraction(text)
            except ZeroDivisionError:
                pass
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q) -> str:
    return str(Fraction(q))


class DimensionMismatch(ValueError):
    pass


class InconsistentSystem(ValueError):
    pass


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)],
                             cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, size: int) -> "RatMatrix":
        return cls(size, size, tuple(Fraction(int(i == j))
                                     for i in range(size) for j in range(size)))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * e for e in self.entries))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return multiply(self, other)

    def power(self, k: int) -> "RatMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = RatMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            row = self.row(i)
            out.append(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)))
        return tuple(out)

    def to_json(self) -> list:
        return [[format_rational(e) for e in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, rows: int, cols: int) -> "RatMatrix":
        """Inverse of :meth:`to_json`; the shape is passed in because empty
        matrices carry no column count."""
        if not isinstance(data, list) or len(data) != rows:
            raise ValueError(f"expected {rows} rows")
        out = []
        for i, r in enumerate(data):
            if not isinstance(r, list) or len(r) != cols:
                raise ValueError(f"row {i}: expected {cols} entries")
            out.append([parse_rational(e) for e in r])
        return cls(rows, cols, tuple(e for r in out for e in r))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(e) for e in self.row(i))
                         for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def multiply(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = [Fraction(0)] * (a.rows * b.cols)
    bc = b.cols
    for i in range(a.rows):
        base = i * bc
        for k, aik in enumerate(a.row(i)):
            if not aik:
                continue
            for j, bkj in enumerate(b.entries[k * bc:(k + 1) * bc]):
                if bkj:
                    out[base + j] += aik * bkj
    return RatMatrix(a.rows, b.cols, tuple(out))


def block_matrix(blocks: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
    """Assemble a matrix from a rectangular grid of compatible blocks."""
    rows = []
    for block_row in blocks:
        height = block_row[0].rows if block_row else 0
        for i in range(height):
            rows.append([e for blk in block_row for e in blk.row(i)])
    cols = sum(blk.cols for blk in blocks[0]) if blocks else 0
    return RatMatrix.from_rows(rows, cols=cols)


def _echelon(rows: list, ncols: int, reduced: bool) -> list:
    """Row-reduce ``rows`` (lists of Fractions) in place; return pivot columns.

    On return the first ``len(pivots)`` rows form the echelon form, with unit
    pivots when ``reduced`` is set.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        prow = rows[r]
        pv = prow[c]
        if reduced and pv != 1:
            inv = 1 / pv
            prow[:] = [e * inv if e else e for e in prow]
            pv = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            f = f / pv
            for j in nz:
                row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def _rows_of(m: RatMatrix) -> list:
    return [list(m.row(i)) for i in range(m.rows)]


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.cols > m.rows:
        m = m.transpose()
    return len(_echelon(_rows_of(m), m.cols, reduced=False))


def rref(m: RatMatrix) -> tuple:
    """Reduced row echelon form and pivot columns."""
    rows = _rows_of(m)
    pivots = _echelon(rows, m.cols, reduced=True)
    return RatMatrix.from_rows(rows, cols=m.cols), tuple(pivots)


def kernel_basis(m: RatMatrix) -> list:
    """Basis of {v : m v = 0}, one vector per free column, in column order."""
    rows = _rows_of(m)
    pivots = _echelon(rows, m.cols, reduced=True)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def image_basis(m: RatMatrix) -> list:
    """Basis of the column space: the pivot columns of ``m`` itself."""
    rows = _rows_of(m)
    pivots = _echelon(rows, m.cols, reduced=False)
    return [m.column(c) for c in pivots]


def solve(a: RatMatrix, b: Sequence) -> Vector:
    """One solution x of a x = b (free variables set to zero)."""
    if len(b) != a.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {a.shape}")
    rows = [list(a.row(i)) + [Fraction(b[i])] for i in range(a.rows)]
    pivots = _echelon(rows, a.cols + 1, reduced=True)
    if pivots and pivots[-1] == a.cols:
        raise InconsistentSystem("system has no solution")
    x = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][a.cols]
    return tuple(x)


def extend_to_complement(subspace: Iterable[Sequence], candidates: Iterable[Sequence]) -> list:
    """Pick, in order, the candidates independent of ``subspace`` and of each other.

    The returned vectors span a complement of span(subspace) inside
    span(subspace + candidates).
    """
    sub = [list(map(Fraction, v)) for v in subspace]
    chosen = []
    current = rank_of_vectors(sub)
    for v in candidates:
        trial = sub + [list(map(Fraction, w)) for w in chosen] + [list(map(Fraction, v))]
        r = rank_of_vectors(trial)
        if r > current:
            chosen.append(tuple(Fraction(e) for e in v))
            current = r
    return chosen


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    vectors = [list(map(Fraction, v)) for v in vectors]
    if not vectors:
        return 0
    return len(_echelon(vectors, len(vectors[0]), reduced=False))
