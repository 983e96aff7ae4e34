"""
Algebras fibred over a finite base: a central unital copy of Map(X, F)
inside a comodule algebra, the fiber algebras A/J_x with their induced
coactions, and the fibrewise-versus-global comparison of the canonical map.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .comodule import CoactionData, invariants, verify_coaction
from .galois import CanReport, WellDefinednessError, can_lift, canonical_map
from .hopf import AlgebraData, Check, StructureError, VerificationReport, compare_maps
from .linalg import LinMap, QuotientData, Subspace, as_vector, direct_sum, quotient_by, tensor


@dataclass(frozen=True, eq=False)
class FibredAlgebra:
    """``theta`` maps Map(X, F) (basis: point indicators) into A."""

    base_points: int
    total: CoactionData
    theta: LinMap
    name: str = ""

    def __post_init__(self):
        if self.theta.shape != (self.total.dim, self.base_points):
            raise StructureError(f"theta must be {self.total.dim}x{self.base_points}, got {self.theta.shape}")

    @property
    def field(self):
        return self.total.field


def verify_fibred(f: FibredAlgebra) -> VerificationReport:
    c, fld = f.total, f.field
    a = c.algebra
    m = f.base_points
    th = f.theta
    checks = []
    ones = {x: 1 for x in range(m)}
    unit = as_vector(fld, a.unit)
    checks.append(Check("theta unital", "pass" if th.apply(ones) == unit else "fail"))
    mult_ok = True
    for x in range(m):
        for y in range(m):
            want = th.column_vector(x) if x == y else {}
            if a.product(th.column_vector(x), th.column_vector(y)) != want:
                mult_ok = False
    checks.append(Check("theta multiplicative", "pass" if mult_ok else "fail"))
    checks.append(Check("theta injective", "pass" if th.rank() == m else "fail"))
    central = all(a.product(th.column_vector(x), {j: 1}) == a.product({j: 1}, th.column_vector(x))
                  for x in range(m) for j in range(a.dim))
    checks.append(Check("theta central", "pass" if central else "fail"))
    inv = invariants(c).subspace
    bad = [x for x in range(m) if not inv.contains(th.column_vector(x))]
    checks.append(Check("theta lands in invariants", "fail" if bad else "pass",
                        f"point {bad[0]}" if bad else ""))
    return VerificationReport(f.name or "fibred algebra", checks)


def fiber_ideal(f: FibredAlgebra, x: int) -> Subspace:
    """J_x: the two-sided ideal generated by theta(g) for functions g vanishing at x."""
    a = f.total.algebra
    n = a.dim
    gens = [a.product(f.theta.column_vector(y), {j: 1}) for y in range(f.base_points) if y != x for j in range(n)]
    j_sub = Subspace.span(f.field, n, gens)
    for _ in range(n + 1):
        vecs = j_sub.basis_vectors()
        more = [a.product(v, {j: 1}) for v in vecs for j in range(n)]
        more += [a.product({j: 1}, v) for v in vecs for j in range(n)]
        nxt = Subspace.span(f.field, n, vecs + more)
        if nxt.dim == j_sub.dim:
            return j_sub
        j_sub = nxt
    raise StructureError("ideal saturation did not stabilise")  # unreachable: dim bounded by n


@dataclass(frozen=True, eq=False)
class Fiber:
    point: int
    ideal: Subspace
    quotient: QuotientData
    coaction: CoactionData


def fiber_coaction(f: FibredAlgebra, x: int) -> Fiber:
    """A_x = A / J_x with delta_x(pi_x(a)) = (pi_x (x) id) delta(a)."""
    c, fld = f.total, f.field
    a = c.algebra
    j_sub = fiber_ideal(f, x)
    q = quotient_by(j_sub)
    ih = LinMap.identity(fld, c.hopf.dim)
    pushed = tensor(q.projection, ih) @ c.delta
    for v in j_sub.inclusion._cols:
        if pushed.apply(v):
            raise WellDefinednessError(f"induced coaction on fiber {x} is not well defined",
                                       witness=[v.get(i, 0) for i in range(a.dim)])
    mult_x = q.projection @ a.mult @ tensor(q.section, q.section)
    unit_x = q.projection.apply(as_vector(fld, a.unit))
    alg_x = AlgebraData(fld, q.dim, mult_x, tuple(unit_x.get(i, 0) for i in range(q.dim)))
    cx = CoactionData(alg_x, c.hopf, pushed @ q.section, f"{c.name or 'A'}[{x}]")
    return Fiber(x, j_sub, q, cx)


@dataclass
class FibredReport:
    name: str
    global_can: CanReport
    fiber_cans: list
    diagrams: list
    dims_add: bool
    invariants_add: bool
    fiber_axioms: list = dc_field(default_factory=list)

    @property
    def fibers_bijective(self) -> bool:
        return all(r.bijective for r in self.fiber_cans)

    @property
    def offending(self) -> list:
        return [x for x, r in enumerate(self.fiber_cans) if not r.bijective]

    @property
    def agree(self) -> bool:
        return self.global_can.bijective == self.fibers_bijective

    @property
    def ok(self) -> bool:
        return (self.agree and all(d.passed for d in self.diagrams) and self.dims_add
                and self.invariants_add and all(self.fiber_axioms))

    def to_dict(self) -> dict:
        return {
            "object": self.name,
            "global_can": self.global_can.to_dict(),
            "fiber_can_bijective": [r.bijective for r in self.fiber_cans],
            "offending_fibers": self.offending,
            "biconditional_holds": self.agree,
            "diagrams": [d.to_dict() for d in self.diagrams],
            "dimensions_add": self.dims_add,
            "invariants_add": self.invariants_add,
        }


def fibred_freeness_check(f: FibredAlgebra) -> FibredReport:
    """Global can against fiber cans; the squares pi_x (x) pi_x / pi_x (x) id commute."""
    c, fld = f.total, f.field
    ih = LinMap.identity(fld, c.hopf.dim)
    lift = can_lift(c)
    global_can = canonical_map(c)
    fibers = [fiber_coaction(f, x) for x in range(f.base_points)]
    cans, diagrams, axioms = [], [], []
    for fb in fibers:
        cans.append(canonical_map(fb.coaction))
        p = fb.quotient.projection
        diagrams.append(compare_maps(f"diagram at fiber {fb.point}", tensor(p, ih) @ lift,
                                     can_lift(fb.coaction) @ tensor(p, p)))
        axioms.append(verify_coaction(fb.coaction).ok)
    dims_add = sum(fb.quotient.dim for fb in fibers) == c.dim
    if dims_add and fibers:
        # joint kernel of the projections is zero
        joint = LinMap(fld, sum(fb.quotient.dim for fb in fibers), c.dim,
                       [_stack_column([fb.quotient.projection for fb in fibers], j) for j in range(c.dim)])
        dims_add = joint.rank() == c.dim
    inv_add = invariants(c).dim == sum(invariants(fb.coaction).dim for fb in fibers)
    return FibredReport(f.name or c.name, global_can, cans, diagrams, dims_add, inv_add, axioms)


def _stack_column(maps: Sequence[LinMap], j: int) -> dict:
    out, off = {}, 0
    for m in maps:
        for i, x in m._cols[j].items():
            out[off + i] = x
        off += m.rows
    return out


def assemble_fibred(fibers: Sequence[CoactionData], name: str = "") -> FibredAlgebra:
    """prod_x A_x with the block coaction and theta(e_x) = unit of block x."""
    if not fibers:
        raise StructureError("need at least one fiber")
    h = fibers[0].hopf
    if any(fb.hopf is not h for fb in fibers):
        raise StructureError("fibers must share one Hopf algebra object")
    fld = h.field
    dims = [fb.dim for fb in fibers]
    n, d = sum(dims), h.dim
    offsets = [sum(dims[:k]) for k in range(len(dims))]
    mult_cols = [{} for _ in range(n * n)]
    unit = [0] * n
    delta_cols = []
    theta_cols = []
    for fb, off in zip(fibers, offsets):
        m = fb.dim
        for i in range(m):
            for j in range(m):
                mult_cols[(off + i) * n + off + j] = {off + r: x for r, x in fb.algebra.mult._cols[i * m + j].items()}
        block_unit = {off + i: x for i, x in enumerate(fb.algebra.unit) if x}
        for i, x in block_unit.items():
            unit[i] = x
        theta_cols.append(block_unit)
        for j in range(m):
            delta_cols.append({(off + r // d) * d + r % d: x for r, x in fb.delta._cols[j].items()})
    alg = AlgebraData(fld, n, LinMap(fld, n, n * n, mult_cols), tuple(unit))
    total = CoactionData(alg, h, LinMap(fld, n * d, n, delta_cols), name)
    return FibredAlgebra(len(fibers), total, LinMap(fld, n, len(fibers), theta_cols), name)
