"""Bredon cochains Hom_{O_G}(C_*(X), M) and their cohomology.

By Yoneda, an orbit cell of type G/H contributes M(G/H) to the cochains, and
the coboundary block from a d-cell tau to a (d+1)-cell sigma is
sum coeff * M(f) over the boundary terms f: G/H_sigma -> G/K_tau.
Cohomology at a subgroup level P is computed by restricting both the complex
and the coefficients to P and working over P.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .gcw import GCWComplex, quotient, restrict
from .orbitcat import CoefficientSystem, OrbitMorphism, constant_system
from .ratlinalg import (RatMatrix, extend_to_complement, image_basis, kernel_basis,
                        rank)


@dataclass(frozen=True)
class CochainComplex:
    dims: tuple           # dimension of C^d for d = 0..top
    coboundaries: tuple   # delta^d : C^d -> C^{d+1}, for d = 0..top-1
    offsets: tuple = field(default=(), compare=False)  # per degree, start of each cell's block

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def delta(self, d: int) -> RatMatrix:
        """delta^d, with zero maps outside the stored range."""
        if 0 <= d < len(self.coboundaries):
            return self.coboundaries[d]
        src = self.dims[d] if 0 <= d <= self.top else 0
        tgt = self.dims[d + 1] if 0 <= d + 1 <= self.top else 0
        return RatMatrix.zeros(tgt, src)


def _cells_in_use(x: GCWComplex, d: int, reduced: bool) -> list:
    return [i for i in range(x.n_cells(d))
            if not (reduced and d == 0 and i == x.basepoint)]


def cochain_complex(x: GCWComplex, m: CoefficientSystem, reduced: bool = False) -> CochainComplex:
    if reduced and x.basepoint is None:
        raise DomainError("reduced cochains need a basepoint")
    if m.group != x.group:
        raise DomainError(f"coefficients over {m.group} for a complex over {x.group}")
    g = x.group
    used = [_cells_in_use(x, d, reduced) for d in range(x.dim + 1)]
    offsets, dims = [], []
    for d, cells in enumerate(used):
        pos, start = {}, 0
        for i in cells:
            pos[i] = start
            start += m.dims[x.stab(d, i)]
        offsets.append(pos)
        dims.append(start)
    cache = {}

    def image(h, k, rep):
        key = (h, k, rep)
        if key not in cache:
            cache[key] = m.apply(OrbitMorphism(g, h, k, rep))
        return cache[key]

    deltas = []
    for d in range(x.dim):
        rows, cols = dims[d + 1], dims[d]
        entries = [Fraction(0)] * (rows * cols)
        for (dd, i, j), terms in x.boundary.items():
            if dd != d + 1 or j not in offsets[d] or i not in offsets[d + 1]:
                continue
            h, k = x.stab(d + 1, i), x.stab(d, j)
            r0, c0 = offsets[d + 1][i], offsets[d][j]
            for rep, coeff in terms:
                blk = image(h, k, rep)
                for a in range(blk.rows):
                    base = (r0 + a) * cols + c0
                    for b in range(blk.cols):
                        e = blk.entries[a * blk.cols + b]
                        if e:
                            entries[base + b] += coeff * e
        deltas.append(RatMatrix(rows, cols, tuple(entries)))
    return CochainComplex(tuple(dims), tuple(deltas),
                          tuple(tuple(sorted(o.items())) for o in offsets))


@dataclass(frozen=True)
class CohomologyRow:
    level: int
    dims: tuple
    bases: tuple | None = None   # per degree, cocycle representatives (debugging aid)


def cohomology_of(c: CochainComplex, with_bases: bool = False) -> tuple:
    """Dimensions (and optionally cocycle representatives) of H^*(c)."""
    ranks = [rank(c.delta(d)) for d in range(c.top + 1)]
    dims = []
    for d in range(c.top + 1):
        prev = ranks[d - 1] if d > 0 else 0
        dims.append(c.dims[d] - ranks[d] - prev)
    bases = None
    if with_bases:
        bases = []
        for d in range(c.top + 1):
            cocycles = kernel_basis(c.delta(d))
            boundaries = image_basis(c.delta(d - 1)) if d > 0 else []
            bases.append(tuple(extend_to_complement(boundaries, cocycles)))
        bases = tuple(bases)
    return tuple(dims), bases


def cohomology(x: GCWComplex, m: CoefficientSystem | None = None, level: int | None = None,
               reduced: bool = False, with_bases: bool = False) -> CohomologyRow:
    """H^*_P(x; m) for P = C_{p^level} (default: the whole group)."""
    g = x.group
    if m is None:
        m = constant_system(g)
    if level is None:
        level = g.n
    g.check_level(level)
    xs = restrict(x, level)
    ms = m.restrict_to(level)
    dims, bases = cohomology_of(cochain_complex(xs, ms, reduced), with_bases)
    return CohomologyRow(level, dims, bases)


@dataclass(frozen=True)
class CohomologyTable:
    group: object
    coefficients: str
    reduced: bool
    rows: tuple          # CohomologyRow, in the order requested

    def dims(self, level: int) -> tuple:
        for row in self.rows:
            if row.level == level:
                return row.dims
        raise KeyError(level)

    def to_json(self) -> dict:
        return {
            "levels": [{"P": r.level, "dims": list(r.dims)} for r in self.rows],
            "reduced": self.reduced,
            "coefficients": self.coefficients,
        }


def cohomology_table(x: GCWComplex, m: CoefficientSystem | None = None, levels=None,
                     reduced: bool = False, coefficients: str = "constant-Q",
                     jobs: int = 1) -> CohomologyTable:
    """Cohomology at several levels (default: all, top level first).

    With ``jobs > 1`` the levels are computed on a thread pool; the rows are
    assembled in request order, so output does not depend on scheduling.
    """
    g = x.group
    if levels is None:
        levels = list(reversed(g.levels))
    levels = list(levels)
    if jobs > 1 and len(levels) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda k: cohomology(x, m, k, reduced), levels))
    else:
        rows = [cohomology(x, m, k, reduced) for k in levels]
    return CohomologyTable(g, coefficients, reduced, tuple(rows))


def cellular_cohomology(x: GCWComplex, reduced: bool = False) -> tuple:
    """Ordinary rational cellular cohomology of a complex over the trivial group."""
    if x.group.n != 0:
        raise DomainError("cellular_cohomology expects a trivial-group complex")
    if reduced and x.basepoint is None:
        raise DomainError("reduced cohomology needs a basepoint")
    used = [_cells_in_use(x, d, reduced) for d in range(x.dim + 1)]
    pos = [{i: t for t, i in enumerate(cells)} for cells in used]
    ranks = []
    for d in range(1, x.dim + 1):
        # cellular boundary  C_d -> C_{d-1}
        rows = [[0] * len(used[d]) for _ in used[d - 1]]
        for (dd, i, j), terms in x.boundary.items():
            if dd == d and j in pos[d - 1]:
                rows[pos[d - 1][j]][pos[d][i]] += sum(c for _, c in terms)
        ranks.append(rank(RatMatrix.from_rows(rows, cols=len(used[d]))))
    ranks.append(0)
    dims = []
    for d in range(x.dim + 1):
        below = ranks[d - 1] if d > 0 else 0   # rank of boundary C_d -> C_{d-1}
        dims.append(len(used[d]) - below - ranks[d])
    return tuple(dims)


def quotient_oracle(x: GCWComplex, level: int | None = None, reduced: bool = False) -> CohomologyRow:
    """Cohomology of the orbit space x/P, which must agree with Bredon
    cohomology with constant rational coefficients."""
    if level is None:
        level = x.group.n
    return CohomologyRow(level, cellular_cohomology(quotient(restrict(x, level)), reduced))


def euler_characteristic(x: GCWComplex, level: int | None = None) -> int:
    if level is None:
        level = x.group.n
    q = quotient(restrict(x, level))
    return sum((-1) ** d * len(layer) for d, layer in enumerate(q.cells))
