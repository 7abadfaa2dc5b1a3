"""Finite C_{p^n}-CW complexes stored as cellular chain complexes.

A complex is a list of orbit cells per dimension, each labelled by the
exponent of its stabilizer, plus boundary blocks.  The block for a d-cell
sigma and a (d-1)-cell tau is a formal integer combination of orbit-category
morphisms G/H_sigma -> G/K_tau, recorded as ``((rep, coeff), ...)``: the
term (a, c) says that the boundary of the representative cell sigma contains
c times the translate a.tau.  Attaching maps are never stored; the chain
data is what cohomology consumes, and d o d = 0 is the checked proxy for
realisability.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DomainError, SchemaError, Violation
from .orbitcat import GroupSpec


def _canonical_terms(terms) -> tuple:
    acc = defaultdict(int)
    for rep, coeff in terms:
        acc[rep] += coeff
    return tuple(sorted((r, c) for r, c in acc.items() if c))


@dataclass(frozen=True)
class GCWComplex:
    group: GroupSpec
    cells: tuple                 # cells[d] = (stab_0, stab_1, ...)
    boundary: dict = field(default_factory=dict)  # (d, i, j) -> ((rep, coeff), ...)
    basepoint: int | None = None  # index of a 0-cell

    def __post_init__(self):
        cells = [tuple(c) for c in self.cells]
        while len(cells) > 1 and not cells[-1]:
            cells.pop()
        if not cells:
            cells = [()]
        object.__setattr__(self, "cells", tuple(cells))
        bd = {}
        for key in sorted(self.boundary):
            terms = _canonical_terms(self.boundary[key])
            if terms:
                bd[tuple(key)] = terms
        object.__setattr__(self, "boundary", bd)

    __hash__ = None

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def n_cells(self, d: int) -> int:
        return len(self.cells[d]) if 0 <= d < len(self.cells) else 0

    def stab(self, d: int, i: int) -> int:
        return self.cells[d][i]

    @property
    def is_based(self) -> bool:
        return self.basepoint is not None

    def faces(self, d: int, i: int) -> list:
        """Boundary blocks of cell (d, i) as [(j, terms), ...]."""
        return [(key[2], terms) for key, terms in self.boundary.items()
                if key[0] == d and key[1] == i]

    def boundary_index(self) -> dict:
        """(d, i) -> [(j, terms)], built once for the constructions below."""
        out = defaultdict(list)
        for (d, i, j), terms in self.boundary.items():
            out[(d, i)].append((j, terms))
        return out

    def cell_count(self) -> int:
        return sum(len(c) for c in self.cells)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "basepoint": None if self.basepoint is None else {"dim": 0, "index": self.basepoint},
            "cells": [[{"stab": k} for k in layer] for layer in self.cells],
            "boundary": [
                {"dim": d, "from": i, "to": j,
                 "terms": [{"rep": r, "coeff": c} for r, c in terms]}
                for (d, i, j), terms in self.boundary.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "GCWComplex":
        """Parse and schema-check; algebraic checks are left to validate_complex."""
        if not isinstance(data, dict):
            raise SchemaError("", "expected a JSON object")
        g = GroupSpec.from_json(data.get("group"))
        cells_data = data.get("cells")
        if not isinstance(cells_data, list) or not cells_data:
            raise SchemaError("cells", "expected a non-empty list of dimensions")
        cells = []
        for d, layer in enumerate(cells_data):
            if not isinstance(layer, list):
                raise SchemaError(f"cells[{d}]", "expected a list of cells")
            row = []
            for i, cell in enumerate(layer):
                k = cell.get("stab") if isinstance(cell, dict) else None
                if not _is_int(k) or not 0 <= k <= g.n:
                    raise SchemaError(f"cells[{d}][{i}].stab",
                                      f"stabilizer index {k!r} outside 0..{g.n}")
                row.append(k)
            cells.append(tuple(row))
        bp = data.get("basepoint")
        basepoint = None
        if bp is not None:
            if not isinstance(bp, dict) or bp.get("dim") != 0 or not _is_int(bp.get("index")):
                raise SchemaError("basepoint", "expected {\"dim\": 0, \"index\": i} or null")
            basepoint = bp["index"]
            if not 0 <= basepoint < len(cells[0]):
                raise SchemaError("basepoint.index", f"no 0-cell {basepoint}")
        blocks_data = data.get("boundary", [])
        if not isinstance(blocks_data, list):
            raise SchemaError("boundary", "expected a list of blocks")
        boundary = defaultdict(list)
        for b, blk in enumerate(blocks_data):
            path = f"boundary[{b}]"
            if not isinstance(blk, dict):
                raise SchemaError(path, "expected an object")
            d, i, j = blk.get("dim"), blk.get("from"), blk.get("to")
            if not _is_int(d) or not 1 <= d < len(cells):
                raise SchemaError(f"{path}.dim", f"no cells in dimension {d!r}")
            if not _is_int(i) or not 0 <= i < len(cells[d]):
                raise SchemaError(f"{path}.from", f"no {d}-cell {i!r}")
            if not _is_int(j) or not 0 <= j < len(cells[d - 1]):
                raise SchemaError(f"{path}.to", f"no {d - 1}-cell {j!r}")
            terms = blk.get("terms")
            if not isinstance(terms, list):
                raise SchemaError(f"{path}.terms", "expected a list")
            modulus = g.orbit_size(cells[d - 1][j])
            for t, term in enumerate(terms):
                tpath = f"{path}.terms[{t}]"
                if not isinstance(term, dict):
                    raise SchemaError(tpath, "expected an object")
                rep, coeff = term.get("rep"), term.get("coeff")
                if not _is_int(rep) or not 0 <= rep < modulus:
                    raise SchemaError(f"{tpath}.rep", f"rep {rep!r} outside 0..{modulus - 1}")
                if not _is_int(coeff):
                    raise SchemaError(f"{tpath}.coeff", f"coefficient {coeff!r} is not an integer")
                boundary[(d, i, j)].append((rep, coeff))
        return cls(g, tuple(cells), dict(boundary), basepoint)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_complex(x: GCWComplex) -> list:
    """Structural and d o d = 0 checks.  Returns a list of violations."""
    g = x.group
    out = []
    for d, layer in enumerate(x.cells):
        for i, k in enumerate(layer):
            if not 0 <= k <= g.n:
                out.append(Violation("stabilizer", f"cell (d={d}, {i}) has stabilizer index "
                                     f"{k} outside 0..{g.n}", {"dim": d, "cell": i}))
    if out:
        return out
    if x.basepoint is not None:
        if not 0 <= x.basepoint < x.n_cells(0):
            out.append(Violation("basepoint", f"basepoint {x.basepoint} is not a 0-cell"))
        elif x.stab(0, x.basepoint) != g.n:
            out.append(Violation("basepoint", f"basepoint 0-cell {x.basepoint} is not G-fixed",
                                 {"index": x.basepoint}))
    for (d, i, j), terms in x.boundary.items():
        where = {"dim": d, "from": i, "to": j}
        if not (1 <= d <= x.dim and 0 <= i < x.n_cells(d) and 0 <= j < x.n_cells(d - 1)):
            out.append(Violation("block", f"block (d={d}, cell {i} -> cell {j}) names a missing cell",
                                 where))
            continue
        h, k = x.stab(d, i), x.stab(d - 1, j)
        if h > k:
            out.append(Violation("stabilizer-order",
                                 f"boundary entry at block (d={d}, cell {i} -> cell {j}) "
                                 f"from stabilizer {h} to stabilizer {k} (needs h <= k)", where))
            continue
        for rep, _ in terms:
            if not 0 <= rep < g.orbit_size(k):
                out.append(Violation("rep", f"rep {rep} out of range at block "
                                     f"(d={d}, cell {i} -> cell {j})", where))
    if out:
        return out
    index = x.boundary_index()
    for d in range(2, x.dim + 1):
        for i in range(x.n_cells(d)):
            acc = defaultdict(int)
            for j, t1 in index.get((d, i), ()):
                for l, t2 in index.get((d - 1, j), ()):
                    mod = g.orbit_size(x.stab(d - 2, l))
                    for a, c in t1:
                        for b, e in t2:
                            acc[(l, (a + b) % mod)] += c * e
            bad = sorted({l for (l, _), v in acc.items() if v})
            for l in bad:
                out.append(Violation("ddboundary", f"ddboundary nonzero at block (d={d}, cell {i} "
                                     f"→ cell {l})", {"dim": d, "from": i, "to": l}))
    return out


# ---------------------------------------------------------------- builtins

def point(g: GroupSpec) -> GCWComplex:
    """A single fixed vertex, which is its own basepoint."""
    return GCWComplex(g, ((g.n,),), {}, basepoint=0)


def sphere0(g: GroupSpec) -> GCWComplex:
    """S^0: a point with a disjoint fixed basepoint."""
    return GCWComplex(g, ((g.n, g.n),), {}, basepoint=0)


def trivial_sphere(g: GroupSpec, k: int) -> GCWComplex:
    """S^k with trivial action as a basepoint plus one fixed k-cell."""
    if k < 0:
        raise ValueError("sphere dimension must be non-negative")
    if k == 0:
        return sphere0(g)
    cells = [(g.n,)] + [()] * (k - 1) + [(g.n,)]
    boundary = {(1, 0, 0): ((0, 1), (0, -1))} if k == 1 else {}
    return GCWComplex(g, tuple(cells), boundary, basepoint=0)


@dataclass(frozen=True, order=True)
class Irreducible:
    kind: str       # "eps", "sigma" or "lambda"
    j: int = 0

    @property
    def dimension(self) -> int:
        return 2 if self.kind == "lambda" else 1

    def __str__(self):
        return f"lambda({self.j})" if self.kind == "lambda" else self.kind


EPS = Irreducible("eps")
SIGMA = Irreducible("sigma")


def rotation(j: int) -> Irreducible:
    return Irreducible("lambda", j)


@dataclass(frozen=True)
class RepresentationDescriptor:
    """A real C_{p^n}-representation as a multiset of irreducibles."""
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    @property
    def dimension(self) -> int:
        return sum(s.dimension for s in self.summands)

    def normalized(self, g: GroupSpec) -> "RepresentationDescriptor":
        """Check against ``g`` and reduce rotation indices mod p^n."""
        out = []
        for s in self.summands:
            if s.kind == "eps":
                out.append(s)
            elif s.kind == "sigma":
                if g.p != 2 or g.n == 0:
                    raise DomainError(f"sign representation needs p = 2 and n >= 1, got {g}")
                out.append(s)
            elif s.kind == "lambda":
                j = s.j % g.order
                if j == 0:
                    raise DomainError(f"lambda({s.j}) is trivial for {g}")
                out.append(rotation(j))
            else:
                raise DomainError(f"unknown irreducible {s.kind!r}")
        return RepresentationDescriptor(tuple(out))

    def __add__(self, other: "RepresentationDescriptor") -> "RepresentationDescriptor":
        return RepresentationDescriptor(self.summands + other.summands)

    def __str__(self):
        return "+".join(str(s) for s in self.summands) or "0"


def regular_representation(g: GroupSpec) -> RepresentationDescriptor:
    """The real regular representation split into irreducibles."""
    summands = [EPS]
    if g.n == 0:
        return RepresentationDescriptor(tuple(summands))
    if g.p == 2:
        summands.append(SIGMA)
    summands += [rotation(j) for j in range(1, (g.order + 1) // 2)]
    return RepresentationDescriptor(tuple(summands))


def _valuation(j: int, p: int) -> int:
    v = 0
    while j % p == 0:
        j //= p
        v += 1
    return v


def irreducible_sphere(g: GroupSpec, s: Irreducible) -> GCWComplex:
    """S^V for one irreducible V; 0-cell 0 is the point at infinity (basepoint),
    0-cell 1 is the origin."""
    (s,) = RepresentationDescriptor((s,)).normalized(g).summands
    fixed = g.n
    if s.kind == "eps":
        cells = ((fixed, fixed), (fixed, fixed))
        boundary = {(1, 0, 0): ((0, 1),), (1, 0, 1): ((0, -1),),
                    (1, 1, 0): ((0, 1),), (1, 1, 1): ((0, -1),)}
        return GCWComplex(g, cells, boundary, basepoint=0)
    if s.kind == "sigma":
        cells = ((fixed, fixed), (g.n - 1,))
        boundary = {(1, 0, 0): ((0, 1),), (1, 0, 1): ((0, -1),)}
        return GCWComplex(g, cells, boundary, basepoint=0)
    # rotation by j: the kernel C_{p^v} fixes everything, the rest rotates
    # q = p^(n-v) rays and q sectors; the generator moves ray t to ray t + j'
    v = _valuation(s.j, g.p)
    q = g.p ** (g.n - v)
    unit = (s.j // g.p ** v) % q
    step = pow(unit, -1, q)  # translate carrying ray 0 to ray 1
    cells = ((fixed, fixed), (v,), (v,))
    boundary = {(1, 0, 0): ((0, 1),), (1, 0, 1): ((0, -1),),
                (2, 0, 0): ((0, 1), (step, -1))}
    return GCWComplex(g, cells, boundary, basepoint=0)


def rep_sphere(g: GroupSpec, v: RepresentationDescriptor) -> GCWComplex:
    """One-point compactification S^V, the smash of its irreducible spheres."""
    summands = v.normalized(g).summands
    if not summands:
        return sphere0(g)
    x = irreducible_sphere(g, summands[0])
    for s in summands[1:]:
        x = smash(x, irreducible_sphere(g, s))
    return x


# ----------------------------------------------------------- constructions

def _restriction_layout(x: GCWComplex, m: int) -> list:
    """Per dimension, the list of (old cell, orbit residue b) in new-cell order."""
    g = x.group
    layout = []
    for layer in x.cells:
        row = []
        for i, k in enumerate(layer):
            row += [(i, b) for b in range(g.p ** (g.n - max(m, k)))]
        layout.append(row)
    return layout


def restrict(x: GCWComplex, level: int) -> GCWComplex:
    """View ``x`` as a C_{p^m}-complex, m = level.

    A cell of type G/C_{p^k} splits into p^(n - max(m, k)) orbits of type
    C_{p^m}/C_{p^min(m,k)}; the orbit of the translate e.sigma is indexed by
    e mod p^(n - max(m, k)), and e sits at position (e - b) / p^(n-m) inside it.
    """
    g = x.group
    g.check_level(level)
    m = level
    if m == g.n:
        return x
    p, n = g.p, g.n
    layout = _restriction_layout(x, m)
    offset = []
    for d, layer in enumerate(x.cells):
        pos, start = {}, 0
        for i, k in enumerate(layer):
            pos[i] = start
            start += p ** (n - max(m, k))
        offset.append(pos)
    new_cells = tuple(tuple(min(m, x.stab(d, i)) for i, _ in row) for d, row in enumerate(layout))
    boundary = defaultdict(list)
    for (d, i, j), terms in x.boundary.items():
        k_sigma, k_tau = x.stab(d, i), x.stab(d - 1, j)
        mod_tau = p ** (n - k_tau)
        orbits_tau = p ** (n - max(m, k_tau))
        for b in range(p ** (n - max(m, k_sigma))):
            src = offset[d][i] + b
            for rep, coeff in terms:
                e = (b + rep) % mod_tau
                b2 = e % orbits_tau
                pos = (e - b2) // p ** (n - m) if m >= k_tau else 0
                boundary[(d, src, offset[d - 1][j] + b2)].append((pos, coeff))
    bp = None if x.basepoint is None else offset[0][x.basepoint]
    return GCWComplex(g.subgroup(m), new_cells, dict(boundary), bp)


def restriction_projection(x: GCWComplex, fine: int, coarse: int) -> list:
    """Cellular quotient map x/C_{p^fine} -> x/C_{p^coarse} (fine <= coarse).

    Returns, per dimension, the index in restrict(x, coarse) of the image of
    each cell of restrict(x, fine).
    """
    g = x.group
    if fine > coarse:
        raise ValueError("projection goes from a smaller subgroup to a larger one")
    fine_layout = _restriction_layout(x, fine)
    coarse_layout = _restriction_layout(x, coarse)
    out = []
    for d in range(len(x.cells)):
        index = {cell: t for t, cell in enumerate(coarse_layout[d])}
        row = []
        for i, b in fine_layout[d]:
            row.append(index[(i, b % g.p ** (g.n - max(coarse, x.stab(d, i))))])
        out.append(row)
    return out


def fixed_points(x: GCWComplex, level: int) -> GCWComplex:
    """The C_{p^m}-fixed subcomplex: cells whose stabilizer contains C_{p^m}."""
    x.group.check_level(level)
    keep = [[i for i, k in enumerate(layer) if k >= level] for layer in x.cells]
    renum = [{old: new for new, old in enumerate(row)} for row in keep]
    cells = tuple(tuple(x.stab(d, i) for i in row) for d, row in enumerate(keep))
    boundary = {(d, renum[d][i], renum[d - 1][j]): terms
                for (d, i, j), terms in x.boundary.items()
                if i in renum[d] and j in renum[d - 1]}
    bp = None if x.basepoint is None else renum[0].get(x.basepoint)
    return GCWComplex(x.group, cells, boundary, bp)


def quotient(x: GCWComplex) -> GCWComplex:
    """Orbit space x/G as a complex over the trivial group."""
    triv = GroupSpec(x.group.p, 0)
    cells = tuple((0,) * len(layer) for layer in x.cells)
    boundary = {key: ((0, sum(c for _, c in terms)),) for key, terms in x.boundary.items()}
    return GCWComplex(triv, cells, boundary, x.basepoint)


def underlying(x: GCWComplex) -> GCWComplex:
    return restrict(x, 0)


def _require_based(*xs):
    for x in xs:
        if x.basepoint is None:
            raise DomainError("operation needs based complexes")
    if len({x.group for x in xs}) != 1:
        raise DomainError("complexes live over different groups")


def smash(x: GCWComplex, y: GCWComplex) -> GCWComplex:
    """X ^ Y = X x Y / X v Y with product cells split into diagonal orbits.

    Product orbit cells (sigma, tau) have representatives (sigma, c.tau) for
    0 <= c < p^(n - max(h, k)) and stabilizer C_{p^min(h,k)}.  Boundary by
    d(s x t) = ds x t + (-1)^|s| s x dt, faces on either basepoint dropped.
    """
    _require_based(x, y)
    g = x.group
    p, n = g.p, g.n
    xs = [(d, i) for d, layer in enumerate(x.cells) for i in range(len(layer))
          if not (d == 0 and i == x.basepoint)]
    ys = [(d, j) for d, layer in enumerate(y.cells) for j in range(len(layer))
          if not (d == 0 and j == y.basepoint)]
    top = x.dim + y.dim
    cells = [[] for _ in range(top + 1)]
    cells[0].append(n)
    index = {}
    for (dx, i) in xs:
        h = x.stab(dx, i)
        for (dy, j) in ys:
            k = y.stab(dy, j)
            for c in range(p ** (n - max(h, k))):
                d = dx + dy
                index[(dx, i, dy, j, c)] = len(cells[d])
                cells[d].append(min(h, k))

    def orbit_of(dx, i, a, dy, j, b):
        """Orbit index and group translate of the product cell (a.sigma, b.tau)."""
        h, k = x.stab(dx, i), y.stab(dy, j)
        c = (b - a) % p ** (n - max(h, k))
        gel = a % p ** (n - h) if h <= k else (b - c) % p ** (n - k)
        return index[(dx, i, dy, j, c)], gel

    xb, yb = x.boundary_index(), y.boundary_index()
    boundary = defaultdict(list)
    for (dx, i, dy, j, c), src in index.items():
        d = dx + dy
        for i2, terms in xb.get((dx, i), ()):
            if dx - 1 == 0 and i2 == x.basepoint:
                continue
            for a, coeff in terms:
                tgt, gel = orbit_of(dx - 1, i2, a, dy, j, c)
                boundary[(d, src, tgt)].append((gel, coeff))
        sign = -1 if dx % 2 else 1
        for j2, terms in yb.get((dy, j), ()):
            if dy - 1 == 0 and j2 == y.basepoint:
                continue
            mod = p ** (n - y.stab(dy - 1, j2))
            for a, coeff in terms:
                tgt, gel = orbit_of(dx, i, 0, dy - 1, j2, (c + a) % mod)
                boundary[(d, src, tgt)].append((gel, sign * coeff))
    return GCWComplex(g, tuple(tuple(c) for c in cells), dict(boundary), basepoint=0)


def wedge(x: GCWComplex, y: GCWComplex) -> GCWComplex:
    """Disjoint union with the two basepoints identified (x's basepoint kept)."""
    _require_based(x, y)
    top = max(x.dim, y.dim)
    cells, shift = [], []
    for d in range(top + 1):
        xl = list(x.cells[d]) if d <= x.dim else []
        yl = list(y.cells[d]) if d <= y.dim else []
        if d == 0:
            rest = [j for j in range(len(yl)) if j != y.basepoint]
            renum = {j: len(xl) + t for t, j in enumerate(rest)}
            renum[y.basepoint] = x.basepoint
            yl = [yl[j] for j in rest]
        else:
            renum = {j: len(xl) + j for j in range(len(yl))}
        shift.append(renum)
        cells.append(tuple(xl + yl))
    boundary = dict(x.boundary)
    for (d, i, j), terms in y.boundary.items():
        key = (d, shift[d][i], shift[d - 1][j])
        boundary[key] = boundary.get(key, ()) + terms
    return GCWComplex(x.group, tuple(cells), boundary, x.basepoint)


def euler_cell_count(x: GCWComplex) -> int:
    return sum((-1) ** d * len(layer) for d, layer in enumerate(x.cells))
