"""
Classical generators and independent oracles: function algebras of finite
groups, G-set comodule algebras, representations as comodules, equivariant
functions, and the explicit vector-bundle identifications of the canonical map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .comodule import LEFT, CoactionData, ComoduleData, cotensor, diagonal_coaction, invariants
from .galois import (
    balanced_tensor,
    beta_lift,
    beta_map,
    can_lift,
    canonical_map,
)
from .groups import FiniteGroup, GSet, is_free
from .hopf import AlgebraData, CoalgebraData, HopfData, StructureError
from .linalg import FieldSpec, LinMap, Subspace, kernel_basis, tensor
from .comodule import trivial_comodule


def function_hopf(g: FiniteGroup, field: FieldSpec) -> HopfData:
    """Map(G, F): basis delta_g, pointwise product, Delta(delta_g) = sum_{hk=g} delta_h (x) delta_k."""
    n = g.order
    mult = LinMap.from_function(field, n, n * n, lambda k: {k // n: 1} if k // n == k % n else {})
    algebra = AlgebraData(field, n, mult, (1,) * n)
    comult_cols = [{} for _ in range(n)]
    for h in range(n):
        for k in range(n):
            comult_cols[g.mul(h, k)][h * n + k] = 1
    counit = LinMap.row(field, [1 if x == g.identity else 0 for x in range(n)])
    coalgebra = CoalgebraData(field, n, LinMap(field, n * n, n, comult_cols), counit)
    antipode = LinMap(field, n, n, [{g.inv(x): 1} for x in range(n)])
    names = tuple(f"d{x}" for x in range(n))
    return HopfData(algebra, coalgebra, antipode, f"Map({g.name or g.order},{field})", names)


def group_algebra(g: FiniteGroup, field: FieldSpec) -> HopfData:
    """F[G]: u_g u_h = u_gh, Delta(u_g) = u_g (x) u_g, eps = 1, S(u_g) = u_{g^-1}."""
    n = g.order
    mult = LinMap.from_function(field, n, n * n, lambda k: {g.mul(k // n, k % n): 1})
    unit = tuple(1 if x == g.identity else 0 for x in range(n))
    comult = LinMap(field, n * n, n, [{x * n + x: 1} for x in range(n)])
    counit = LinMap.row(field, [1] * n)
    antipode = LinMap(field, n, n, [{g.inv(x): 1} for x in range(n)])
    names = tuple(f"u{x}" for x in range(n))
    return HopfData(AlgebraData(field, n, mult, unit), CoalgebraData(field, n, comult, counit), antipode,
                    f"F[{g.name or g.order}]", names)


def point_algebra(field: FieldSpec, points: int) -> AlgebraData:
    """Map(X, F) with pointwise product."""
    n = points
    mult = LinMap.from_function(field, n, n * n, lambda k: {k // n: 1} if k // n == k % n else {})
    return AlgebraData(field, n, mult, (1,) * n)


def gset_comodule_algebra(s: GSet, field: FieldSpec, hopf: Optional[HopfData] = None) -> CoactionData:
    """delta(e_x) = sum_g e_{x.g^-1} (x) delta_g, i.e. (delta(f)(g))(x) = f(xg)."""
    g = s.group
    h = function_hopf(g, field) if hopf is None else hopf
    n, d = s.points, g.order
    cols = []
    for x in range(n):
        col = {}
        for gi in range(d):
            col[s.act(x, g.inv(gi)) * d + gi] = 1
        cols.append(col)
    return CoactionData(point_algebra(field, n), h, LinMap(field, n * d, n, cols), s.name)


def freeness_oracle(s: GSet) -> bool:
    return is_free(s)


# representations ---------------------------------------------------------


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    """A left representation: ``matrices[g]`` acts on F^dim, rho(gh) = rho(g) rho(h)."""

    group: FiniteGroup
    dim: int
    matrices: tuple
    name: str = ""

    def __post_init__(self):
        G = self.group
        if len(self.matrices) != G.order:
            raise RepresentationError("one matrix per group element required")
        for m in self.matrices:
            if m.shape != (self.dim, self.dim):
                raise RepresentationError("matrix of the wrong size")
        for a in G.elements():
            for b in G.elements():
                if self.matrices[G.mul(a, b)] != self.matrices[a] @ self.matrices[b]:
                    raise RepresentationError(f"not a homomorphism at ({a}, {b})")

    @property
    def field(self) -> FieldSpec:
        return self.matrices[0].field

    def __call__(self, g: int) -> LinMap:
        return self.matrices[g]


def trivial_rep(g: FiniteGroup, field: FieldSpec, dim: int = 1) -> Representation:
    return Representation(g, dim, tuple(LinMap.identity(field, dim) for _ in g.elements()), "trivial")


def character_rep(g: FiniteGroup, field: FieldSpec, chi: Sequence[int], name: str = "chi") -> Representation:
    return Representation(g, 1, tuple(LinMap.from_dense(field, [[c]]) for c in chi), name)


def sign_rep(g: FiniteGroup, field: FieldSpec) -> Representation:
    """The sign character of Z/2 (index 1 is the generator)."""
    if g.order != 2:
        raise RepresentationError("sign_rep is for the group of order 2")
    return character_rep(g, field, [1, -1], "sign")


def regular_rep(g: FiniteGroup, field: FieldSpec) -> Representation:
    """(rho(g) f)(h) = f(g^-1 h) on Map(G, F)."""
    n = g.order
    mats = []
    for a in g.elements():
        # delta_k -> delta_{a k}
        mats.append(LinMap(field, n, n, [{g.mul(a, k): 1} for k in range(n)]))
    return Representation(g, n, tuple(mats), "regular")


def tensor_rep(r: Representation, s: Representation) -> Representation:
    return Representation(r.group, r.dim * s.dim, tuple(tensor(a, b) for a, b in zip(r.matrices, s.matrices)),
                          f"{r.name}(x){s.name}")


def permutation_rep(s: GSet, field: FieldSpec) -> Representation:
    """Left representation on Map(X, F): (rho(g) f)(x) = f(x.g)."""
    g = s.group
    n = s.points
    mats = []
    for a in g.elements():
        # rho(a) e_y = e_{y.a^-1}
        mats.append(LinMap(field, n, n, [{s.act(y, g.inv(a)): 1} for y in range(n)]))
    return Representation(g, n, tuple(mats), f"perm({s.name})")


def rep_to_comodule(rho: Representation, h: HopfData) -> ComoduleData:
    """_V Delta(v) = sum_g delta_g (x) rho(g^-1) v over Map(G, F)."""
    g, f, n = rho.group, rho.field, rho.dim
    d = g.order
    if h.dim != d:
        raise RepresentationError("Hopf algebra does not match the group")
    cols = []
    for j in range(n):
        col = {}
        for a in g.elements():
            for i, x in rho(g.inv(a))._cols[j].items():
                col[a * n + i] = x
        cols.append(col)
    return ComoduleData(h, LEFT, n, LinMap(f, d * n, n, cols), rho.name)


def equivariant_functions(s: GSet, rho: Representation) -> Subspace:
    """{f : X -> V | f(xg) = rho(g^-1) f(x)} inside Map(X, V) = Map(X, F) (x) V."""
    g, f = s.group, rho.field
    n, m = s.points, rho.dim
    # one block of m equations per (x, g)
    rows = []
    for x in range(n):
        for a in g.elements():
            y = s.act(x, a)
            ra = rho(g.inv(a))
            for i in range(m):
                row = {y * m + i: 1}
                for j in range(m):
                    c = ra[i, j]
                    if c:
                        k = x * m + j
                        row[k] = f.add(row.get(k, 0), f.neg(c))
                rows.append({k: v for k, v in row.items() if v})
    system = LinMap(f, len(rows), n * m, [{} for _ in range(n * m)])
    cols = [{} for _ in range(n * m)]
    for r, row in enumerate(rows):
        for k, v in row.items():
            cols[k][r] = v
    system = LinMap(f, len(rows), n * m, cols)
    return kernel_basis(system)


@dataclass
class EquivariantComparison:
    functions: Subspace
    cotensor: Subspace

    @property
    def equal(self) -> bool:
        return self.functions == self.cotensor


def equivariant_vs_cotensor(s: GSet, rho: Representation, c: Optional[CoactionData] = None) -> EquivariantComparison:
    """C_G(X, V) computed directly, and A box V computed as a kernel, as subspaces of A (x) V."""
    c = gset_comodule_algebra(s, rho.field) if c is None else c
    v = rep_to_comodule(rho, c.hopf)
    return EquivariantComparison(equivariant_functions(s, rho), cotensor(c.as_comodule(), v).subspace)


# the diag map --------------------------------------------------------------


def diag_lift(points: int, dv: int, dw: int, field: FieldSpec) -> LinMap:
    """(e_x (x) v) (x) (e_y (x) w) -> [x = y] e_x (x) v (x) w, pointwise."""
    cols = []
    for x in range(points):
        for i in range(dv):
            for y in range(points):
                for j in range(dw):
                    cols.append({(x * dv + i) * dw + j: 1} if x == y else {})
    return LinMap(field, points * dv * dw, points * dv * points * dw, cols)


@dataclass
class DiagComparison:
    diag_rank: int
    beta_rank: int
    codomains_equal: bool
    matrices_equal: bool
    diag_bijective: bool
    beta_bijective: bool

    @property
    def ok(self) -> bool:
        return (self.codomains_equal and self.matrices_equal and self.diag_rank == self.beta_rank
                and self.diag_bijective == self.beta_bijective)


def diag_vs_beta_crosscheck(s: GSet, rho_v: Representation, rho_w: Representation,
                            c: Optional[CoactionData] = None) -> DiagComparison:
    """The diag map on equivariant functions against beta on cotensor products."""
    f = rho_v.field
    c = gset_comodule_algebra(s, f) if c is None else c
    v, w = rep_to_comodule(rho_v, c.hopf), rep_to_comodule(rho_w, c.hopf)
    beta = beta_map(c, v, w)

    # diag side, built only from equivariant functions and pointwise products
    cv = equivariant_functions(s, rho_v)
    cw = equivariant_functions(s, rho_w)
    cvw = equivariant_functions(s, tensor_rep(rho_v, rho_w))
    base = invariants(c).subspace
    a = c.algebra
    iv, iw = LinMap.identity(f, rho_v.dim), LinMap.identity(f, rho_w.dim)
    racts = [cv.restrict(tensor(a.right_mult(b), iv)) for b in base.basis_vectors()]
    lacts = [cw.restrict(tensor(a.left_mult(b), iw)) for b in base.basis_vectors()]
    rt = balanced_tensor(f, cv.dim, racts, cw.dim, lacts)
    dl = diag_lift(s.points, rho_v.dim, rho_w.dim, f)
    dmat = cvw.corestrict(dl @ tensor(cv.inclusion, cw.inclusion) @ rt.quotient.section)

    # both maps on the same ambient domain must agree
    same = dl == beta_lift(c, v, w)
    codomains = cvw == cotensor(c.as_comodule(), diagonal_coaction(v, w)).subspace
    d_rank = dmat.rank()
    return DiagComparison(d_rank, beta.rank, codomains, same,
                          d_rank == rt.dim == cvw.dim, beta.bijective)


# the composite through equivariant functions -------------------------------


def w_star_intertwiner(g: FiniteGroup, field: FieldSpec) -> LinMap:
    """Pullback along W(g, g') = (g, g g'): delta_a (x) delta_b -> delta_a (x) delta_{a^-1 b}."""
    n = g.order
    cols = []
    for a in range(n):
        for b in range(n):
            cols.append({a * n + g.mul(g.inv(a), b): 1})
    return LinMap(field, n * n, n * n, cols)


def w_star_intertwines(g: FiniteGroup, field: FieldSpec) -> bool:
    """W* carries the diagonal coaction on H (x) H to Delta (x) trivial."""
    h = function_hopf(g, field)
    from .comodule import regular_comodule

    reg = regular_comodule(h)
    src = diagonal_coaction(reg, reg)
    dst = diagonal_coaction(reg, trivial_comodule(h, g.order))
    w = w_star_intertwiner(g, field)
    ih = LinMap.identity(field, h.dim)
    return dst.coaction @ w == tensor(ih, w) @ src.coaction


def e_map(s: GSet, field: FieldSpec) -> LinMap:
    """E: Map(X) -> Map(X, Map(G)), (E(f)(x))(g) = f(xg)."""
    g = s.group
    n, d = s.points, g.order
    cols = [{} for _ in range(n)]
    for x in range(n):
        for a in g.elements():
            cols[s.act(x, a)][x * d + a] = 1
    return LinMap(field, n * d, n, cols)


def f_map(s: GSet, field: FieldSpec) -> LinMap:
    """F: Map(X, Map(G)) -> Map(X), F(alpha)(x) = alpha(x)(e)."""
    g = s.group
    n, d = s.points, g.order
    cols = []
    for x in range(n):
        for a in g.elements():
            cols.append({x: 1} if a == g.identity else {})
    return LinMap(field, n, n * d, cols)


def evaluation_contraction(points: int, d: int, field: FieldSpec) -> LinMap:
    """sum_i (id (x) e^i) (x) e_i : Map(X, H (x) H^triv) -> Map(X, H) (x) H."""
    cols = []
    for x in range(points):
        for a in range(d):
            for i in range(d):
                # e^i picks the second tensor leg; the result is paired with e_i
                cols.append({(x * d + a) * d + i: 1})
    return LinMap(field, points * d * d, points * d * d, cols)


@dataclass
class CompositeReport:
    lift_equal: bool
    matrix_equal: bool
    e_f_inverse: bool
    e_lands_equivariant: bool

    @property
    def ok(self) -> bool:
        return self.lift_equal and self.matrix_equal and self.e_f_inverse and self.e_lands_equivariant


class NotFreeError(ValueError):
    pass


def composite_equals_can(s: GSet, field: FieldSpec, c: Optional[CoactionData] = None) -> CompositeReport:
    """(F (x) id) o contraction o W* o diag o (E (x) E) against the canonical map, entrywise."""
    if not is_free(s):
        raise NotFreeError(f"{s.name or 'G-set'}: action is not free; the identification needs a free action")
    g = s.group
    n, d = s.points, g.order
    c = gset_comodule_algebra(s, field) if c is None else c
    E, F = e_map(s, field), f_map(s, field)
    equivariant = equivariant_functions(s, regular_rep(g, field))
    lands = all(equivariant.contains(col) for col in E._cols)
    ef = F @ E == LinMap.identity(field, n) and equivariant.restrict(E @ F) == LinMap.identity(field, equivariant.dim)
    diag = diag_lift(n, d, d, field)
    wstar = tensor(LinMap.identity(field, n), w_star_intertwiner(g, field))
    contr = evaluation_contraction(n, d, field)
    composite = tensor(F, LinMap.identity(field, d)) @ contr @ wstar @ diag @ tensor(E, E)
    lift = can_lift(c)
    can = canonical_map(c)
    mat_equal = can.matrix is not None and composite @ can.relative.quotient.section == can.matrix
    return CompositeReport(composite == lift, mat_equal, ef, lands)
