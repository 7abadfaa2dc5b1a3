"""Orbit category of a cyclic p-group and its coefficient systems.

Subgroups of G = C_{p^n} form a chain, so a subgroup is named by its
exponent k (the subgroup C_{p^k}, generated by p^(n-k) inside Z/p^n).  The
orbit G/C_{p^k} is Z/p^(n-k), and a G-map G/C_{p^h} -> G/C_{p^k} exists only
for h <= k; it is determined by the coset a + C_{p^k} hit by the identity
coset, so morphisms are triples (h, k, a) with 0 <= a < p^(n-k).

A coefficient system is a contravariant functor from the orbit category to
rational vector spaces.  It is presented by one Weyl generator per level
(the image of translation by 1 on G/C_{p^k}) and the images of the adjacent
projections G/C_{p^(k-1)} -> G/C_{p^k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SchemaError, Violation
from .ratlinalg import RatMatrix


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    p: int
    n: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p={self.p!r} is not prime")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"n={self.n!r} must be a non-negative integer")

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def levels(self) -> range:
        return range(self.n + 1)

    def orbit_size(self, k: int) -> int:
        """|G/C_{p^k}|, which is also the modulus of morphism reps into level k."""
        self.check_level(k)
        return self.p ** (self.n - k)

    def check_level(self, k: int) -> None:
        if not isinstance(k, int) or not 0 <= k <= self.n:
            raise ValueError(f"subgroup index {k!r} outside 0..{self.n}")

    def subgroup(self, m: int) -> "GroupSpec":
        """C_{p^m} as a group in its own right."""
        self.check_level(m)
        return GroupSpec(self.p, m)

    def __str__(self):
        return f"C{self.order}" if self.n else "C1"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n}

    @classmethod
    def from_json(cls, data, path: str = "group") -> "GroupSpec":
        if not isinstance(data, dict):
            raise SchemaError(path, "expected an object with keys p, n")
        p, n = data.get("p"), data.get("n")
        if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
            raise SchemaError(f"{path}.p", f"{p!r} is not a prime")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise SchemaError(f"{path}.n", f"{n!r} is not a non-negative integer")
        return cls(p, n)


@dataclass(frozen=True)
class OrbitMorphism:
    group: GroupSpec
    source: int
    target: int
    rep: int

    def __post_init__(self):
        g = self.group
        g.check_level(self.source)
        g.check_level(self.target)
        if self.source > self.target:
            raise ValueError(f"no morphism G/C_{{p^{self.source}}} -> G/C_{{p^{self.target}}}")
        if not 0 <= self.rep < g.orbit_size(self.target):
            raise ValueError(f"rep {self.rep} outside 0..{g.orbit_size(self.target) - 1}")

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.rep == 0


def identity(g: GroupSpec, k: int) -> OrbitMorphism:
    return OrbitMorphism(g, k, k, 0)


def hom_set(g: GroupSpec, h: int, k: int) -> list:
    g.check_level(h)
    g.check_level(k)
    if h > k:
        return []
    return [OrbitMorphism(g, h, k, a) for a in range(g.orbit_size(k))]


def compose(f: OrbitMorphism, g: OrbitMorphism) -> OrbitMorphism:
    """``f`` followed by ``g`` (so g o f as maps of G-sets)."""
    if f.group != g.group or f.target != g.source:
        raise ValueError(f"morphisms {f} and {g} are not composable")
    grp = f.group
    return OrbitMorphism(grp, f.source, g.target, (f.rep + g.rep) % grp.orbit_size(g.target))


@dataclass(frozen=True)
class CoefficientSystem:
    group: GroupSpec
    dims: tuple
    weyl: tuple          # A_0..A_n, A_k is dims[k] x dims[k]
    restrictions: tuple  # R_1..R_n, R_k is dims[k-1] x dims[k]

    def __post_init__(self):
        g = self.group
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "weyl", tuple(self.weyl))
        object.__setattr__(self, "restrictions", tuple(self.restrictions))
        if len(self.dims) != g.n + 1 or len(self.weyl) != g.n + 1 or len(self.restrictions) != g.n:
            raise ValueError(f"a system over {g} needs {g.n + 1} levels and {g.n} restrictions")
        for k, (d, a) in enumerate(zip(self.dims, self.weyl)):
            if d < 0 or a.shape != (d, d):
                raise ValueError(f"A_{k} has shape {a.shape}, expected {(d, d)}")
        for k in range(1, g.n + 1):
            r = self.restrictions[k - 1]
            if r.shape != (self.dims[k - 1], self.dims[k]):
                raise ValueError(f"R_{k} has shape {r.shape}, "
                                 f"expected {(self.dims[k - 1], self.dims[k])}")

    def apply(self, f: OrbitMorphism) -> RatMatrix:
        """M(f): M(G/K) -> M(G/H) for f: G/H -> G/K."""
        if f.group != self.group:
            raise ValueError(f"morphism over {f.group} applied to a system over {self.group}")
        mat = self.weyl[f.target].power(f.rep)
        for k in range(f.target, f.source, -1):
            mat = self.restrictions[k - 1] @ mat
        return mat

    def restrict_to(self, m: int) -> "CoefficientSystem":
        """Restriction along C_{p^m} -> G: levels 0..m, Weyl generator A_k^(p^(n-m))."""
        g = self.group
        g.check_level(m)
        if m == g.n:
            return self
        step = g.p ** (g.n - m)
        return CoefficientSystem(g.subgroup(m), self.dims[:m + 1],
                                 tuple(a.power(step) for a in self.weyl[:m + 1]),
                                 self.restrictions[:m])

    def is_constant(self) -> bool:
        return self == constant_system(self.group)

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "dims": list(self.dims),
            "weyl": [a.to_json() for a in self.weyl],
            "restrictions": [r.to_json() for r in self.restrictions],
        }

    @classmethod
    def from_json(cls, data) -> "CoefficientSystem":
        if not isinstance(data, dict):
            raise SchemaError("", "expected a JSON object")
        g = GroupSpec.from_json(data.get("group"))
        dims = data.get("dims")
        if (not isinstance(dims, list) or len(dims) != g.n + 1
                or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in dims)):
            raise SchemaError("dims", f"expected {g.n + 1} non-negative integers")
        weyl_data = data.get("weyl")
        if not isinstance(weyl_data, list) or len(weyl_data) != g.n + 1:
            raise SchemaError("weyl", f"expected {g.n + 1} matrices")
        res_data = data.get("restrictions")
        if not isinstance(res_data, list) or len(res_data) != g.n:
            raise SchemaError("restrictions", f"expected {g.n} matrices")
        weyl, res = [], []
        for k, a in enumerate(weyl_data):
            try:
                weyl.append(RatMatrix.from_json(a, dims[k], dims[k]))
            except ValueError as exc:
                raise SchemaError(f"weyl[{k}]", str(exc)) from None
        for k, r in enumerate(res_data, start=1):
            try:
                res.append(RatMatrix.from_json(r, dims[k - 1], dims[k]))
            except ValueError as exc:
                raise SchemaError(f"restrictions[{k - 1}]", str(exc)) from None
        return cls(g, tuple(dims), tuple(weyl), tuple(res))


def constant_system(g: GroupSpec) -> CoefficientSystem:
    one = RatMatrix.identity(1)
    return CoefficientSystem(g, (1,) * (g.n + 1), (one,) * (g.n + 1), (one,) * g.n)


def zero_system(g: GroupSpec) -> CoefficientSystem:
    z = RatMatrix.zeros(0, 0)
    return CoefficientSystem(g, (0,) * (g.n + 1), (z,) * (g.n + 1), (z,) * g.n)


def validate_system(m: CoefficientSystem) -> list:
    """Check the order and translation-compatibility axioms; [] means ok."""
    g = m.group
    out = []
    for k in g.levels:
        order = g.orbit_size(k)
        a = m.weyl[k]
        if a.power(order) != RatMatrix.identity(m.dims[k]):
            out.append(Violation("weyl-order", f"A_{k}^{order} != I", {"k": k}))
    for k in range(1, g.n + 1):
        r = m.restrictions[k - 1]
        if m.weyl[k - 1] @ r != r @ m.weyl[k]:
            out.append(Violation("compatibility", f"A_{k - 1} R_{k} != R_{k} A_{k} at k={k}",
                                 {"k": k}))
    return out


def permutation_system(g: GroupSpec, orbits: Sequence[int]) -> CoefficientSystem:
    """Linearised fixed points of the G-set  ⊔ G/C_{p^k}  (k over ``orbits``).

    M(G/C_{p^k}) has basis the C_{p^k}-fixed elements; maps are induced by
    precomposition, so translation acts by the group generator and
    projections become inclusions of fixed-point sets.
    """
    elements = [(o, a) for o, k in enumerate(orbits) for a in range(g.orbit_size(k))]
    kinds = list(orbits)

    def fixed(level):
        # C_{p^level} fixes every point of G/C_{p^k} iff level <= k
        return [e for e in elements if level <= kinds[e[0]]]

    fixed_sets = [fixed(k) for k in g.levels]
    dims = tuple(len(s) for s in fixed_sets)
    weyl = []
    for k in g.levels:
        pos = {e: i for i, e in enumerate(fixed_sets[k])}
        rows = [[0] * dims[k] for _ in range(dims[k])]
        for i, (o, a) in enumerate(fixed_sets[k]):
            img = (o, (a + 1) % g.orbit_size(kinds[o]))
            rows[pos[img]][i] = 1
        weyl.append(RatMatrix.from_rows(rows, cols=dims[k]))
    res = []
    for k in range(1, g.n + 1):
        pos = {e: i for i, e in enumerate(fixed_sets[k - 1])}
        rows = [[0] * dims[k] for _ in range(dims[k - 1])]
        for j, e in enumerate(fixed_sets[k]):
            rows[pos[e]][j] = 1
        res.append(RatMatrix.from_rows(rows, cols=dims[k]))
    return CoefficientSystem(g, dims, tuple(weyl), tuple(res))


def conjugate_system(m: CoefficientSystem, changes: Sequence[RatMatrix]) -> CoefficientSystem:
    """Change basis at every level by invertible T_k: A_k -> T_k A_k T_k^-1."""
    from .ratlinalg import solve

    def inverse(t: RatMatrix) -> RatMatrix:
        cols = [solve(t, tuple(int(i == j) for i in range(t.rows))) for j in range(t.cols)]
        return RatMatrix.from_columns(cols, t.rows)

    inv = [inverse(t) for t in changes]
    weyl = tuple(changes[k] @ m.weyl[k] @ inv[k] for k in m.group.levels)
    res = tuple(changes[k - 1] @ m.restrictions[k - 1] @ inv[k] for k in range(1, m.group.n + 1))
    return CoefficientSystem(m.group, m.dims, weyl, res)
