"""
Comodules and comodule algebras over a verified Hopf algebra.

Left coactions are maps ``V -> H (x) V``, right coactions ``V -> V (x) H``.
A comodule algebra (``CoactionData``) is always a right comodule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .hopf import (
    AlgebraData,
    Check,
    HaarFunctional,
    HopfData,
    StructureError,
    VerificationReport,
    compare_maps,
    verify_algebra,
)
from .linalg import (
    FieldSpec,
    LinMap,
    Subspace,
    as_vector,
    dense,
    image,
    kernel_basis,
    leg_permutation,
    preimage,
    solve,
    tensor,
)

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True, eq=False)
class ComoduleData:
    hopf: HopfData
    side: str
    dim: int
    coaction: LinMap
    name: str = ""

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise StructureError(f"side must be 'left' or 'right', got {self.side!r}")
        d = self.hopf.dim
        if self.coaction.shape != (d * self.dim, self.dim):
            raise StructureError(f"coaction must be {d * self.dim}x{self.dim}, got {self.coaction.shape}")

    @property
    def field(self) -> FieldSpec:
        return self.hopf.field


def verify_comodule(v: ComoduleData) -> VerificationReport:
    h, f = v.hopf, v.field
    iv, ih = LinMap.identity(f, v.dim), LinMap.identity(f, h.dim)
    rho = v.coaction
    if v.side == LEFT:
        checks = [
            compare_maps("coassociativity", tensor(h.comult, iv) @ rho, tensor(ih, rho) @ rho),
            compare_maps("counitality", tensor(h.counit, iv) @ rho, iv),
        ]
    else:
        checks = [
            compare_maps("coassociativity", tensor(rho, ih) @ rho, tensor(iv, h.comult) @ rho),
            compare_maps("counitality", tensor(iv, h.counit) @ rho, iv),
        ]
    return VerificationReport(v.name or f"{v.side} comodule", checks)


def trivial_comodule(h: HopfData, dim: int = 1, side: str = LEFT) -> ComoduleData:
    f = h.field
    iv = LinMap.identity(f, dim)
    rho = tensor(h.unit_map, iv) if side == LEFT else tensor(iv, h.unit_map)
    return ComoduleData(h, side, dim, rho, "trivial" if dim == 1 else f"trivial^{dim}")


def regular_comodule(h: HopfData, side: str = LEFT) -> ComoduleData:
    """H over itself via the comultiplication."""
    return ComoduleData(h, side, h.dim, h.comult, "H")


def contragredient(v: ComoduleData) -> ComoduleData:
    """The dual comodule on V*: rho(v^i) = sum_j S(c_ij) (x) v^j for left V with rho(v_j) = sum_i c_ij (x) v_i."""
    if v.side != LEFT:
        raise StructureError("contragredient implemented for left comodules")
    h, f, n, d = v.hopf, v.field, v.dim, v.hopf.dim
    coef = coefficient_matrix(v)  # coef[i][j] = c_ij as sparse vector in H
    cols = []
    for i in range(n):
        col = {}
        for j in range(n):
            sc = h.antipode.apply(coef[i][j])
            for t, x in sc.items():
                col[t * n + j] = x
        cols.append(col)
    return ComoduleData(h, LEFT, n, LinMap(f, d * n, n, cols), f"{v.name}*" if v.name else "dual")


def direct_sum_comodule(v: ComoduleData, w: ComoduleData) -> ComoduleData:
    if v.hopf is not w.hopf or v.side != w.side:
        raise StructureError("direct sum needs same Hopf algebra and side")
    f, d, n, m = v.field, v.hopf.dim, v.dim, w.dim
    cols = []
    for src, off in ((v, 0), (w, n)):
        for c in src.coaction._cols:
            col = {}
            for r, x in c.items():
                if src.side == LEFT:
                    t, i = divmod(r, src.dim)
                    col[t * (n + m) + i + off] = x
                else:
                    i, t = divmod(r, d)
                    col[(i + off) * d + t] = x
            cols.append(col)
    return ComoduleData(v.hopf, v.side, n + m, LinMap(f, d * (n + m), n + m, cols), f"{v.name}+{w.name}")


def diagonal_coaction(v: ComoduleData, w: ComoduleData) -> ComoduleData:
    """Left coaction on V (x) W: (m_H (x) id (x) id)(id (x) flip (x) id)(rho_V (x) rho_W)."""
    if v.hopf is not w.hopf:
        raise StructureError("diagonal coaction needs the same Hopf algebra")
    if v.side != LEFT or w.side != LEFT:
        raise StructureError("diagonal coaction is defined here for left comodules")
    h, f = v.hopf, v.field
    d, n, m = h.dim, v.dim, w.dim
    swap = leg_permutation(f, (d, n, d, m), (0, 2, 1, 3))
    rho = tensor(h.mult, LinMap.identity(f, n * m)) @ swap @ tensor(v.coaction, w.coaction)
    return ComoduleData(h, LEFT, n * m, rho, f"{v.name}(x){w.name}")


def coefficient_matrix(v: ComoduleData) -> list:
    """``c[i][j]``: the H-coefficient of basis vector i in the coaction of basis vector j."""
    n, d = v.dim, v.hopf.dim
    c = [[{} for _ in range(n)] for _ in range(n)]
    for j, col in enumerate(v.coaction._cols):
        for r, x in col.items():
            if v.side == LEFT:
                t, i = divmod(r, n)
            else:
                i, t = divmod(r, d)
            c[i][j][t] = x
    return c


def coefficient_coalgebra(v: ComoduleData) -> Subspace:
    """H_V: the span of the matrix coefficients of the coaction."""
    vecs = [c for row in coefficient_matrix(v) for c in row if c]
    return Subspace.span(v.field, v.hopf.dim, vecs)


def comodule_morphism_check(f_map: LinMap, v: ComoduleData, w: ComoduleData) -> bool:
    """Colinearity of ``f_map: V -> W``."""
    ih = LinMap.identity(v.field, v.hopf.dim)
    if v.side == LEFT:
        return w.coaction @ f_map == tensor(ih, f_map) @ v.coaction
    return w.coaction @ f_map == tensor(f_map, ih) @ v.coaction


# comodule algebras -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoactionData:
    """A right comodule algebra (A, delta: A -> A (x) H)."""

    algebra: AlgebraData
    hopf: HopfData
    delta: LinMap
    name: str = ""

    def __post_init__(self):
        n, d = self.algebra.dim, self.hopf.dim
        if self.algebra.field != self.hopf.field:
            raise StructureError("algebra and Hopf algebra over different fields")
        if self.delta.shape != (n * d, n):
            raise StructureError(f"delta must be {n * d}x{n}, got {self.delta.shape}")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def as_comodule(self) -> ComoduleData:
        return ComoduleData(self.hopf, RIGHT, self.dim, self.delta, self.name)

    def one_tensor(self) -> LinMap:
        """a -> a (x) 1_H."""
        return tensor(LinMap.identity(self.field, self.dim), self.hopf.unit_map)

    def peter_weyl_subalgebra(self) -> Subspace:
        """In finite dimensions delta(A) always lies in A (x) H, so this is all of A."""
        return Subspace.full(self.field, self.dim)


def verify_coaction(c: CoactionData) -> VerificationReport:
    a, h, f = c.algebra, c.hopf, c.field
    n, d = a.dim, h.dim
    checks = [Check(f"algebra {chk.name}", chk.status, chk.reason, chk.witness) for chk in verify_algebra(a)]
    checks += verify_comodule(c.as_comodule()).checks
    delta = c.delta
    mult_ah = a.tensor_algebra(h.algebra)
    checks.append(compare_maps("delta multiplicative", delta @ a.mult, mult_ah.mult @ tensor(delta, delta)))
    checks.append(compare_maps("delta unital", delta @ a.unit_map, tensor(a.unit_map, h.unit_map)))
    if delta.rank() == n:
        checks.append(Check("delta injective", "pass"))
    else:
        checks.append(Check("delta injective", "fail", f"rank {delta.rank()} < {n}",
                            witness=kernel_basis(delta).basis[0]))
    return VerificationReport(c.name or "coaction", checks)


def require_coaction(c: CoactionData) -> None:
    rep = verify_coaction(c)
    if not rep.ok:
        raise StructureError(f"{c.name or 'coaction'} fails axioms: {', '.join(rep.failed())}")


@dataclass(frozen=True, eq=False)
class InvariantSubalgebra:
    parent: CoactionData
    subspace: Subspace
    contains_unit: bool
    closed: bool

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def algebra(self) -> AlgebraData:
        return self.parent.algebra.subalgebra(self.subspace)


def invariants(c: CoactionData) -> InvariantSubalgebra:
    """B = {a : delta(a) = a (x) 1}, with closure certificates."""
    sub = kernel_basis(c.delta - c.one_tensor())
    a = c.algebra
    contains_unit = sub.contains(as_vector(c.field, a.unit))
    basis = sub.basis_vectors()
    closed = all(sub.contains(a.product(x, y)) for x in basis for y in basis)
    return InvariantSubalgebra(c, sub, contains_unit, closed)


@dataclass(frozen=True, eq=False)
class CotensorSpace:
    left: ComoduleData
    right: ComoduleData
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


def cotensor(m: ComoduleData, n: ComoduleData) -> CotensorSpace:
    """M box N = ker(rho_M (x) id - id (x) rho_N) inside M (x) N."""
    if m.hopf is not n.hopf:
        raise StructureError("cotensor needs the same Hopf algebra on both sides")
    if m.side != RIGHT or n.side != LEFT:
        raise StructureError("cotensor takes a right comodule and a left comodule")
    f = m.field
    im, in_ = LinMap.identity(f, m.dim), LinMap.identity(f, n.dim)
    diff = tensor(m.coaction, in_) - tensor(im, n.coaction)
    return CotensorSpace(m, n, kernel_basis(diff))


def isotypic_subspace(c: CoactionData, v: ComoduleData) -> Subspace:
    """A_V = {a : delta(a) in A (x) H_V}."""
    hv = coefficient_coalgebra(v)
    target = Subspace.full(c.field, c.dim).tensor(hv)
    return preimage(c.delta, target)


def conditional_expectation(c: CoactionData, phi: Optional[HaarFunctional]) -> LinMap:
    """E_B = (id (x) phi) o delta."""
    if phi is None:
        raise StructureError("no Haar functional: the conditional expectation is undefined")
    return tensor(LinMap.identity(c.field, c.dim), phi.phi) @ c.delta


def b_valued_form(c: CoactionData, phi: HaarFunctional, a, b) -> dict:
    """<a, b>_B = E_B(a b) (bilinear; no involution over exact fields)."""
    f = c.field
    a = {a: 1} if isinstance(a, int) else (a if isinstance(a, dict) else as_vector(f, a))
    b = {b: 1} if isinstance(b, int) else (b if isinstance(b, dict) else as_vector(f, b))
    return conditional_expectation(c, phi).apply(c.algebra.product(a, b))


# projectivity ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RightModule:
    """A right module over ``algebra`` given by ``action: M (x) B -> M``."""

    algebra: AlgebraData
    dim: int
    action: LinMap

    def act_by(self, b) -> LinMap:
        """m -> m . b for a fixed b."""
        f, k = self.algebra.field, self.algebra.dim
        b = b if isinstance(b, dict) else as_vector(f, b)
        return self.action @ tensor(LinMap.identity(f, self.dim), LinMap.column(f, dense(b, k), k))

    def verify(self) -> VerificationReport:
        f, n, k = self.algebra.field, self.dim, self.algebra.dim
        im, ib = LinMap.identity(f, n), LinMap.identity(f, k)
        act = self.action
        return VerificationReport("right module", [
            compare_maps("module associativity", act @ tensor(act, ib), act @ tensor(im, self.algebra.mult)),
            compare_maps("module unital", act @ tensor(im, self.algebra.unit_map), im),
        ])


def free_module(algebra: AlgebraData, rank: int) -> RightModule:
    """B^rank with B acting by right multiplication in each copy."""
    f, k = algebra.field, algebra.dim
    act = tensor(LinMap.identity(f, rank), algebra.mult)
    return RightModule(algebra, rank * k, act)


def submodule_of_algebra(ambient: AlgebraData, base: Subspace, sub: Subspace) -> RightModule:
    """A subspace of A closed under right multiplication by B (as a subalgebra of A)."""
    f = ambient.field
    bbasis = base.basis_vectors()
    balg = ambient.subalgebra(base)
    k, n = len(bbasis), sub.dim
    cols = []
    for i in range(n):
        x = sub.inclusion.column_vector(i)
        for t in range(k):
            y = ambient.product(x, bbasis[t])
            if sub.residual(y):
                raise StructureError("subspace is not closed under the right B-action")
            cols.append({r: v for r, v in enumerate(sub.coordinates(y)) if v})
    return RightModule(balg, n, LinMap(f, n, n * k, cols))


@dataclass(frozen=True, eq=False)
class Splitting:
    """A B-linear right inverse ``section`` of ``surjection: B^k -> M``."""

    generators: int
    surjection: LinMap
    section: LinMap


def solve_linear(field: FieldSpec, shape: tuple, constraint, rhs: Sequence[LinMap]):
    """Find X (shape rows x cols) with ``constraint(X) == rhs`` for a linear ``constraint``.

    ``constraint`` returns a tuple of LinMaps.  The system matrix is assembled
    column by column by evaluating ``constraint`` on elementary matrices.
    Returns ``(X, nullity)`` or ``(None, None)`` if infeasible; free
    variables are set to zero.
    """
    rows, cols = shape
    system_cols = []
    offsets = None
    for var in range(rows * cols):
        r, c = divmod(var, cols)
        e = LinMap(field, rows, cols, [({r: 1} if j == c else {}) for j in range(cols)])
        outs = constraint(e)
        if offsets is None:
            offsets = []
            off = 0
            for o in outs:
                offsets.append(off)
                off += o.rows * o.cols
            total = off
        col = {}
        for o, off in zip(outs, offsets):
            for j, oc in enumerate(o._cols):
                base = off + j * o.rows
                for i, x in oc.items():
                    col[base + i] = x
        system_cols.append(col)
    if offsets is None:
        return LinMap(field, rows, cols), 0
    target = {}
    for o, off in zip(rhs, offsets):
        for j, oc in enumerate(o._cols):
            for i, x in oc.items():
                target[off + j * o.rows + i] = x
    system = LinMap(field, total, rows * cols, system_cols)
    sol = solve(system, target)
    if sol is None:
        return None, None
    xcols = [{} for _ in range(cols)]
    for var, x in sol.items():
        r, c = divmod(var, cols)
        xcols[c][r] = x
    nullity = rows * cols - system.rank()
    return LinMap(field, rows, cols, xcols), nullity


def projectivity_check(module: RightModule) -> Optional[Splitting]:
    """Search for a B-linear splitting of B^k -> M built from a field basis of M.

    The generating set is the shortest prefix of the field basis that
    generates M as a B-module.  Once any surjection from a free module is
    fixed, a splitting exists iff M is projective, so one solve decides.
    """
    f, n = module.algebra.field, module.dim
    balg = module.algebra
    k = balg.dim
    if n == 0:
        return Splitting(0, LinMap(f, 0, 0), LinMap(f, 0, 0))
    for gens in range(1, n + 1):
        # surjection B^gens -> M: (b_1..b_g) -> sum m_i . b_i
        surj_cols = []
        for i in range(gens):
            for t in range(k):
                surj_cols.append(module.action.apply({i * k + t: 1}))
        surj = LinMap(f, n, gens * k, surj_cols)
        if surj.rank() == n:
            break
    free = free_module(balg, gens)
    bvecs = [{t: 1} for t in range(k)]
    acts_m = [module.act_by(b) for b in bvecs]
    acts_f = [free.act_by(b) for b in bvecs]

    def constraint(s):
        return (surj @ s,) + tuple(s @ am - af @ s for am, af in zip(acts_m, acts_f))

    rhs = (LinMap.identity(f, n),) + tuple(LinMap(f, gens * k, n) for _ in bvecs)
    sec, _ = solve_linear(f, (gens * k, n), constraint, rhs)
    if sec is None:
        return None
    return Splitting(gens, surj, sec)


def is_idempotent(m: LinMap) -> bool:
    return m @ m == m


def image_of(m: LinMap) -> Subspace:
    return image(m)
