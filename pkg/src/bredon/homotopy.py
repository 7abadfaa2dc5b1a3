"""Rational Eilenberg-MacLane data of based mapping spaces out of a C_{p^n}-complex.

For a finite based complex A whose reduced Bredon cohomology (with constant
rational coefficients, at every subgroup level) vanishes above degree r,
Map_*(A, K(Q, m)) splits for m > r as a product of equivariant
Eilenberg-MacLane spaces.  The factor in homotopical degree i has
pi_i^P = reduced H^{m-i}_P(A; Q).  Everything here is bookkeeping on that
graded data: factors are never realised as spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .cohomology import cochain_complex, cohomology, cohomology_table
from .errors import DisconnectedComplex, DomainError, HypothesisViolation
from .gcw import (EPS, GCWComplex, RepresentationDescriptor, regular_representation,
                  restrict, restriction_projection)
from .orbitcat import GroupSpec, constant_system
from .ratlinalg import RatMatrix, image_basis, solve


@dataclass(frozen=True)
class EMFactor:
    degree: int
    values: tuple            # dimension at level P = 0..n
    restrictions: tuple | None = None  # R_1..R_n between adjacent levels, when computed

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"Eilenberg-MacLane factor in degree {self.degree} < 1")

    @property
    def is_trivial(self) -> bool:
        return not any(self.values)

    def to_json(self) -> dict:
        out = {"degree": self.degree,
               "values": {f"P{k}": v for k, v in enumerate(self.values)}}
        if self.restrictions is not None:
            out["restrictions_extension"] = [r.to_json() for r in self.restrictions]
        return out


@dataclass(frozen=True)
class EMDecomposition:
    target_dim: int
    top_degree: int
    factors: tuple = ()

    def degrees(self) -> list:
        return [f.degree for f in self.factors]

    def factor(self, degree: int) -> EMFactor | None:
        for f in self.factors:
            if f.degree == degree:
                return f
        return None

    def nontrivial(self) -> list:
        return [f for f in self.factors if not f.is_trivial]

    def to_json(self) -> dict:
        return {"m": self.target_dim, "r": self.top_degree,
                "factors": [f.to_json() for f in self.factors], "reduced": True}


def reduced_profile(a: GCWComplex, jobs: int = 1) -> list:
    """Reduced H^*_P(a; Q) dimensions for P = 0..n."""
    table = cohomology_table(a, levels=list(a.group.levels), reduced=True, jobs=jobs)
    return [row.dims for row in table.rows]


def top_degree(profile) -> int:
    """Largest degree with a nonzero reduced group at some level (0 if none)."""
    r = 0
    for dims in profile:
        for d, v in enumerate(dims):
            if v:
                r = max(r, d)
    return r


def _check_connected(a: GCWComplex, profile) -> None:
    if a.basepoint is None:
        raise DomainError("mapping spaces need a based complex")
    if profile[0] and profile[0][0]:
        raise DisconnectedComplex("complex is not connected (reduced H^0 is nonzero)")


def mapping_decomposition(a: GCWComplex, m: int, with_restrictions: bool = False,
                          jobs: int = 1) -> EMDecomposition:
    """Factors K(M, i), m - r <= i <= m, of Map_*(a, K(Q, m)).

    Trivial factors are omitted.  With ``with_restrictions`` each factor also
    carries the maps M(G/C_{p^k}) -> M(G/C_{p^(k-1)}) induced by the orbit-space
    projections a/C_{p^(k-1)} -> a/C_{p^k}.  These maps are an extension;
    the decomposition itself only fixes the values.
    """
    profile = reduced_profile(a, jobs)
    _check_connected(a, profile)
    r = top_degree(profile)
    if m <= r:
        raise HypothesisViolation(
            f"target dimension m must exceed top cohomological degree r (m={m}, r={r})")
    factors = []
    for i in range(m - r, m + 1):
        q = m - i
        values = tuple(dims[q] if q < len(dims) else 0 for dims in profile)
        if not any(values):
            continue
        res = induced_restrictions(a, q) if with_restrictions else None
        factors.append(EMFactor(i, values, res))
    return EMDecomposition(m, r, tuple(factors))


def induced_restrictions(a: GCWComplex, degree: int) -> tuple:
    """Matrices of H~^q(a/C_{p^k}) -> H~^q(a/C_{p^(k-1)}) in cocycle bases."""
    g = a.group
    reps = []
    for k in g.levels:
        row = cohomology(a, level=k, reduced=True, with_bases=True)
        reps.append(row.bases[degree] if degree < len(row.bases) else ())
    out = []
    for k in range(1, g.n + 1):
        fine = restrict(a, k - 1)
        coarse = restrict(a, k)
        proj = restriction_projection(a, k - 1, k)[degree] if degree <= a.dim else []
        cc_fine = cochain_complex(fine, constant_system(fine.group), reduced=True)
        cc_coarse = cochain_complex(coarse, constant_system(coarse.group), reduced=True)
        fine_pos = dict(cc_fine.offsets[degree]) if degree <= cc_fine.top else {}
        coarse_pos = dict(cc_coarse.offsets[degree]) if degree <= cc_coarse.top else {}
        exact = image_basis(cc_fine.delta(degree - 1)) if degree > 0 else []
        basis = list(reps[k - 1])
        cols = basis + exact
        size = cc_fine.dims[degree] if degree <= cc_fine.top else 0
        system = RatMatrix.from_columns(cols, size) if cols else RatMatrix.zeros(size, 0)
        matrix_cols = []
        for phi in reps[k]:
            pulled = [Fraction(0)] * size
            for cell, pos in fine_pos.items():
                target = proj[cell]
                if target in coarse_pos:
                    pulled[pos] = phi[coarse_pos[target]]
            coeffs = solve(system, pulled)
            matrix_cols.append(coeffs[:len(basis)])
        out.append(RatMatrix.from_columns(matrix_cols, len(basis))
                   if matrix_cols else RatMatrix.zeros(len(basis), 0))
    return tuple(out)


def loop_shift(d: EMDecomposition) -> EMDecomposition:
    """Omega: every factor drops one degree; degree-0 factors disappear."""
    factors = tuple(replace(f, degree=f.degree - 1) for f in d.factors if f.degree > 1)
    return EMDecomposition(d.target_dim - 1, d.top_degree, factors)


def nullification_truncate(d: EMDecomposition, rho_dim: int) -> EMDecomposition:
    """Postnikov section keeping homotopy in degrees <= rho_dim.

    This is the effect of nullifying S^rho -> * with dim rho = rho_dim on a
    product of rational Eilenberg-MacLane spaces.
    """
    if rho_dim < 1:
        raise ValueError("nullification needs a representation of dimension >= 1")
    return EMDecomposition(d.target_dim, d.top_degree,
                           tuple(f for f in d.factors if f.degree <= rho_dim))


def nullification_representation(g: GroupSpec, m: int, r: int) -> RepresentationDescriptor:
    """rho = regular + (m - r - |G|) eps, of dimension m - r; needs m - r >= |G|."""
    extra = m - r - g.order
    if extra < 0:
        raise HypothesisViolation(
            f"need m - r >= |G| to build rho (m={m}, r={r}, |G|={g.order})")
    return regular_representation(g) + RepresentationDescriptor((EPS,) * extra)


@dataclass(frozen=True)
class LGoodVerdict:
    outcome: str                 # "not-l-good" or "necessary-condition-holds"
    witness: tuple | None        # (r, s), r > s > 0
    k: int | None
    dims: tuple                  # unreduced top-level Bredon cohomology

    @property
    def is_obstructed(self) -> bool:
        return self.outcome == "not-l-good"

    def to_json(self) -> dict:
        return {"outcome": self.outcome,
                "witness": list(self.witness) if self.witness else None,
                "k": self.k, "dims": list(self.dims)}


def lgood_check(a: GCWComplex) -> LGoodVerdict:
    """Necessary condition for L-goodness: positive-degree top-level cohomology
    in at most one degree.  Never certifies goodness."""
    dims = cohomology(a, level=a.group.n).dims
    if dims[0] > 1:
        raise DisconnectedComplex(f"complex is not connected (H^0 has dimension {dims[0]})")
    positive = [d for d in range(1, len(dims)) if dims[d]]
    if len(positive) >= 2:
        return LGoodVerdict("not-l-good", (positive[-1], positive[-2]), None, dims)
    return LGoodVerdict("necessary-condition-holds", None,
                        positive[0] if positive else None, dims)
