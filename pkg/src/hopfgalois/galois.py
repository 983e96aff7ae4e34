"""
Relative tensor products, the canonical map, the beta map, strong
connections and the principality cross-checks.

Every verdict is a direct rank computation.  The equivalences between the
verdicts are asserted afterwards, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .comodule import (
    LEFT,
    CoactionData,
    ComoduleData,
    Splitting,
    comodule_morphism_check,
    contragredient,
    cotensor,
    diagonal_coaction,
    invariants,
    regular_comodule,
    solve_linear,
    trivial_comodule,
)
from .hopf import Check, HopfData, StructureError, inverse, is_cosemisimple
from .linalg import (
    FieldSpec,
    LinMap,
    QuotientData,
    Subspace,
    as_vector,
    dense,
    flip,
    hstack,
    image,
    kernel_basis,
    leg_permutation,
    quotient_by,
    tensor,
)


class WellDefinednessError(ValueError):
    """A map does not descend to a quotient; ``witness`` is an offending vector."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class RelativeTensor:
    """``left (x)_B right`` as a quotient of ``left (x) right``."""

    left_dim: int
    right_dim: int
    balancing: Subspace
    quotient: QuotientData
    base_dim: int
    base_is_invariants: Optional[bool] = None

    @property
    def dim(self) -> int:
        return self.quotient.dim


def balanced_tensor(field: FieldSpec, left_dim: int, right_actions: Sequence[LinMap],
                    right_dim: int, left_actions: Sequence[LinMap]) -> RelativeTensor:
    """Quotient of L (x) R by span{x.b (x) y - x (x) b.y} over a basis b of B.

    ``right_actions[t]`` is x -> x.b_t on L, ``left_actions[t]`` is y -> b_t.y on R.
    """
    il, ir = LinMap.identity(field, left_dim), LinMap.identity(field, right_dim)
    gens = [tensor(rb, ir) - tensor(il, lb) for rb, lb in zip(right_actions, left_actions)]
    if gens:
        bal = image(hstack(gens))
    else:
        bal = Subspace.zero(field, left_dim * right_dim)
    return RelativeTensor(left_dim, right_dim, bal, quotient_by(bal), len(gens))


def check_base(c: CoactionData, base: Subspace) -> None:
    a = c.algebra
    if base.ambient_dim != c.dim:
        raise StructureError("declared base lives in the wrong space")
    if not base.contains(as_vector(c.field, a.unit)):
        raise StructureError("declared base does not contain the unit")
    vecs = base.basis_vectors()
    for x in vecs:
        for y in vecs:
            if not base.contains(a.product(x, y)):
                raise StructureError("declared base is not closed under multiplication")


def scalars(c: CoactionData) -> Subspace:
    """The subalgebra F.1 of A."""
    return Subspace.span(c.field, c.dim, [as_vector(c.field, c.algebra.unit)])


def relative_tensor(c: CoactionData, declared_base: Optional[Subspace] = None) -> RelativeTensor:
    """A (x)_B A with B the invariants, or a declared unital subalgebra."""
    inv = invariants(c).subspace
    if declared_base is None:
        base, same = inv, True
    else:
        check_base(c, declared_base)
        base, same = declared_base, declared_base == inv
    a = c.algebra
    bvecs = base.basis_vectors()
    rt = balanced_tensor(c.field, c.dim, [a.right_mult(b) for b in bvecs],
                         c.dim, [a.left_mult(b) for b in bvecs])
    return RelativeTensor(rt.left_dim, rt.right_dim, rt.balancing, rt.quotient, rt.base_dim, same)


def can_lift(c: CoactionData) -> LinMap:
    """x (x) y -> (x (x) 1) delta(y) on A (x) A."""
    f = c.field
    return tensor(c.algebra.mult, LinMap.identity(f, c.hopf.dim)) @ tensor(LinMap.identity(f, c.dim), c.delta)


@dataclass
class MapReport:
    """Rank verdicts for a map descended to a relative tensor product."""

    name: str
    matrix: Optional[LinMap]
    domain_dim: int
    codomain_dim: int
    rank: int = 0
    well_defined: bool = True
    surjective: bool = False
    injective: bool = False
    witnesses: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.well_defined and self.surjective and self.injective

    def _fill(self):
        if self.matrix is not None and self.well_defined:
            self.rank = self.matrix.rank()
            self.surjective = self.rank == self.codomain_dim
            self.injective = self.rank == self.domain_dim
            if not self.injective:
                self.witnesses["kernel"] = kernel_basis(self.matrix).basis[0]
        return self

    def to_dict(self) -> dict:
        d = {
            "map": self.name,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
            "rank": self.rank,
            "well_defined": self.well_defined,
            "surjective": self.surjective,
            "injective": self.injective,
            "bijective": self.bijective,
        }
        if self.witnesses:
            d["witnesses"] = {k: [str(x) for x in v] for k, v in sorted(self.witnesses.items())}
        if self.notes:
            d["notes"] = list(self.notes)
        return d


@dataclass
class CanReport(MapReport):
    lift_rank: int = 0
    relative: Optional[RelativeTensor] = None
    base_is_invariants: Optional[bool] = None

    @property
    def span_full(self) -> bool:
        """(A (x) 1) delta(A) spans A (x) H."""
        return self.lift_rank == self.codomain_dim

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["span_rank"] = self.lift_rank
        d["base_is_invariants"] = self.base_is_invariants
        return d


def _descends(lift: LinMap, bal: Subspace) -> Optional[list]:
    """None if ``lift`` kills the balancing subspace, else a witness vector."""
    for v in bal.inclusion._cols:
        if lift.apply(v):
            return dense(v, bal.ambient_dim)
    return None


def canonical_map(c: CoactionData, declared_base: Optional[Subspace] = None) -> CanReport:
    """Build can on A (x)_B A, certify it descends, and report ranks."""
    rt = relative_tensor(c, declared_base)
    lift = can_lift(c)
    codim = c.dim * c.hopf.dim
    rep = CanReport("can", None, rt.dim, codim, relative=rt, base_is_invariants=rt.base_is_invariants)
    rep.notes.append("Peter-Weyl subalgebra equals A (finite dimension)")
    rep.lift_rank = lift.rank()
    witness = _descends(lift, rt.balancing)
    if witness is not None:
        rep.well_defined = False
        rep.witnesses["descent"] = witness
        rep.notes.append("declared base is not contained in the invariants; can does not descend")
        return rep
    rep.matrix = lift @ rt.quotient.section
    return rep._fill()


# cotensor modules and beta -------------------------------------------------


@dataclass(frozen=True, eq=False)
class AssociatedModule:
    """A box V with the B-actions from multiplication in the A leg."""

    coaction: CoactionData
    comodule: ComoduleData
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


def associated_module(c: CoactionData, v: ComoduleData) -> AssociatedModule:
    return AssociatedModule(c, v, cotensor(c.as_comodule(), v).subspace)


def _leg_action(c: CoactionData, mod: AssociatedModule, base: Subspace, side: str) -> list:
    a, f = c.algebra, c.field
    iv = LinMap.identity(f, mod.comodule.dim)
    out = []
    for b in base.basis_vectors():
        op = a.right_mult(b) if side == "right" else a.left_mult(b)
        out.append(mod.subspace.restrict(tensor(op, iv)))
    return out


def beta_lift(c: CoactionData, v: ComoduleData, w: ComoduleData) -> LinMap:
    """(a (x) v) (x) (b (x) w) -> ab (x) v (x) w on (A (x) V) (x) (A (x) W)."""
    f, n = c.field, c.dim
    p, q = v.dim, w.dim
    swap = leg_permutation(f, (n, p, n, q), (0, 2, 1, 3))
    return tensor(c.algebra.mult, LinMap.identity(f, p * q)) @ swap


@dataclass
class BetaReport(MapReport):
    pair: tuple = ()

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["pair"] = list(self.pair)
        return d


def beta_map(c: CoactionData, v: ComoduleData, w: ComoduleData,
             base: Optional[Subspace] = None) -> BetaReport:
    """beta: (A box V) (x)_B (A box W) -> A box (V (x) W)."""
    if v.hopf is not c.hopf or w.hopf is not c.hopf:
        raise StructureError("beta needs comodules over the coaction's Hopf algebra")
    base = invariants(c).subspace if base is None else base
    mv, mw = associated_module(c, v), associated_module(c, w)
    vw = diagonal_coaction(v, w)
    target = associated_module(c, vw).subspace
    rt = balanced_tensor(c.field, mv.dim, _leg_action(c, mv, base, "right"),
                         mw.dim, _leg_action(c, mw, base, "left"))
    lift = beta_lift(c, v, w) @ tensor(mv.subspace.inclusion, mw.subspace.inclusion)
    rep = BetaReport("beta", None, rt.dim, target.dim, pair=(v.name, w.name))
    witness = _descends(lift, rt.balancing)
    if witness is not None:
        rep.well_defined = False
        rep.witnesses["descent"] = witness
        return rep
    ambient = lift @ rt.quotient.section
    try:
        rep.matrix = target.corestrict(ambient)
    except ValueError:
        rep.well_defined = False
        rep.notes.append("image leaves the cotensor product")
        return rep
    return rep._fill()


def default_comodules(h: HopfData) -> list:
    """trivial, H (via the comultiplication) and the contragredient of H."""
    reg = regular_comodule(h)
    dual = contragredient(reg)
    return [trivial_comodule(h), reg, ComoduleData(h, LEFT, dual.dim, dual.coaction, "H*")]


@dataclass
class MonoidalReport:
    reports: list
    defaults_used: bool = False

    @property
    def all_bijective(self) -> bool:
        return all(r.bijective for r in self.reports)

    def failing_pairs(self) -> list:
        return [r.pair for r in self.reports if not r.bijective]


def strong_monoidality(c: CoactionData, comodules: Optional[Sequence[ComoduleData]] = None) -> MonoidalReport:
    defaults = not comodules
    comodules = default_comodules(c.hopf) if defaults else list(comodules)
    base = invariants(c).subspace
    reps = [beta_map(c, v, w, base) for v in comodules for w in comodules]
    return MonoidalReport(reps, defaults)


# strong connections --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StrongConnection:
    ell: LinMap  # H -> A (x) A
    nullity: int = 0


def left_coaction(c: CoactionData) -> LinMap:
    """_P Delta = (S^-1 (x) id) o flip o delta : A -> H (x) A."""
    h = c.hopf
    sinv = inverse(h.antipode)
    if sinv is None:
        raise StructureError("antipode is not bijective")
    return tensor(sinv, LinMap.identity(c.field, c.dim)) @ flip(c.field, c.dim, h.dim) @ c.delta


def _connection_constraints(c: CoactionData):
    f, h = c.field, c.hopf
    n, d = c.dim, h.dim
    ia, ih = LinMap.identity(f, n), LinMap.identity(f, d)
    ld = left_coaction(c)
    delta_h = h.comult
    cl = can_lift(c)
    unit_h = h.unit_map
    d1 = tensor(ia, c.delta)
    d2 = tensor(ld, ia)

    def constraint(ell):
        return (
            ell @ unit_h,
            d1 @ ell - tensor(ell, ih) @ delta_h,
            d2 @ ell - tensor(ih, ell) @ delta_h,
            cl @ ell,
        )

    one_one = tensor(c.algebra.unit_map, c.algebra.unit_map)
    rhs = (one_one, LinMap(f, n * n * d, d), LinMap(f, d * n * n, d), tensor(c.algebra.unit_map, ih))
    return constraint, rhs


def connection_axioms(c: CoactionData, ell: LinMap) -> list:
    """Evaluate unitality and the three strong-connection axioms on a candidate."""
    constraint, rhs = _connection_constraints(c)
    names = ["unital", "right colinear", "left colinear", "splits can"]
    return [Check(nm, "pass" if lhs == r else "fail") for nm, lhs, r in zip(names, constraint(ell), rhs)]


def strong_connection_solve(c: CoactionData) -> Optional[StrongConnection]:
    """Solve the stacked linear constraints for ell; None when infeasible."""
    constraint, rhs = _connection_constraints(c)
    ell, nullity = solve_linear(c.field, (c.dim * c.dim, c.hopf.dim), constraint, rhs)
    if ell is None:
        return None
    return StrongConnection(ell, nullity)


def hopf_self_coaction(h: HopfData) -> CoactionData:
    return CoactionData(h.algebra, h, h.comult, f"{h.name or 'H'}-self")


def translation_connection(h: HopfData) -> LinMap:
    """ell = (S (x) id) o Delta, the strong connection of (H, Delta)."""
    return tensor(h.antipode, LinMap.identity(h.field, h.dim)) @ h.comult


# equivariant projectivity and principality ----------------------------------


def equivariant_projectivity_check(c: CoactionData) -> Optional[Splitting]:
    """Left B-linear right H-colinear s: A -> B (x) A with mult o s = id."""
    f, a = c.field, c.algebra
    n, d = c.dim, c.hopf.dim
    inv = invariants(c).subspace
    k = inv.dim
    bvecs = inv.basis_vectors()
    balg = a.subalgebra(inv)
    # mult: B (x) A -> A, b (x) x -> b x
    mult_ba = a.mult @ tensor(inv.inclusion, LinMap.identity(f, n))
    ia, ib, ih = LinMap.identity(f, n), LinMap.identity(f, k), LinMap.identity(f, d)
    lacts = [a.left_mult(b) for b in bvecs]
    bacts = [tensor(balg.left_mult({t: 1}), ia) for t in range(k)]
    d_ba = tensor(ib, c.delta)

    def constraint(s):
        return ((mult_ba @ s,)
                + tuple(s @ la - ba @ s for la, ba in zip(lacts, bacts))
                + (tensor(s, ih) @ c.delta - d_ba @ s,))

    rhs = ((ia,) + tuple(LinMap(f, k * n, n) for _ in bvecs) + (LinMap(f, k * n * d, n),))
    s, _ = solve_linear(f, (k * n, n), constraint, rhs)
    if s is None:
        return None
    return Splitting(1, mult_ba, s)


@dataclass
class PrincipalityReport:
    can: CanReport
    projective: bool
    connection: Optional[StrongConnection]

    @property
    def principal(self) -> bool:
        return self.can.bijective and self.projective

    @property
    def has_connection(self) -> bool:
        return self.connection is not None

    @property
    def agree(self) -> bool:
        return self.principal == self.has_connection

    def to_dict(self) -> dict:
        return {
            "principal": self.principal,
            "can_bijective": self.can.bijective,
            "equivariantly_projective": self.projective,
            "strong_connection": self.has_connection,
            "agree": self.agree,
        }


def principality_check(c: CoactionData) -> PrincipalityReport:
    can = canonical_map(c)
    proj = equivariant_projectivity_check(c) is not None
    return PrincipalityReport(can, proj, strong_connection_solve(c))


# exactness -----------------------------------------------------------------


class ExactnessInputError(ValueError):
    pass


def cotensor_exactness_check(c: CoactionData, u: ComoduleData, v: ComoduleData, w: ComoduleData,
                             f_map: LinMap, g_map: LinMap) -> bool:
    """Apply A box (-) to 0 -> U -> V -> W -> 0 and check exactness at each spot."""
    for m, src, dst in ((f_map, u, v), (g_map, v, w)):
        if not comodule_morphism_check(m, src, dst):
            raise ExactnessInputError("map is not a comodule morphism")
    if f_map.rank() != u.dim or g_map.rank() != w.dim or not (g_map @ f_map).is_zero() \
            or f_map.rank() + w.dim != v.dim:
        raise ExactnessInputError("input sequence is not short exact")
    ia = LinMap.identity(c.field, c.dim)
    cu, cv, cw = (associated_module(c, x).subspace for x in (u, v, w))
    fu = cu.restrict(tensor(ia, f_map), cv)
    gv = cv.restrict(tensor(ia, g_map), cw)
    injective = fu.rank() == cu.dim
    surjective = gv.rank() == cw.dim
    middle = fu.rank() == cv.dim - gv.rank() and (gv @ fu).is_zero()
    return injective and surjective and middle


# surjectivity implies injectivity -----------------------------------------


@dataclass
class CrossCheck:
    status: str  # pass | skip | violation
    reason: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def surjectivity_implies_bijectivity_crosscheck(c: CoactionData, report: Optional[CanReport] = None,
                                                cosemisimple: Optional[bool] = None) -> CrossCheck:
    """On cosemisimple H with B the invariants, surjective can must be injective."""
    rep = canonical_map(c) if report is None else report
    if cosemisimple is None:
        cosemisimple = is_cosemisimple(c.hopf)
    if not cosemisimple:
        return CrossCheck("skip", "Hopf algebra is not cosemisimple")
    if rep.base_is_invariants is False:
        return CrossCheck("skip", "descent base differs from the invariants")
    if not rep.well_defined:
        return CrossCheck("skip", "can is not well defined")
    if not rep.surjective:
        return CrossCheck("pass", "can not surjective (vacuous)")
    if rep.injective:
        return CrossCheck("pass", "surjective and injective")
    return CrossCheck("violation", "can surjective but not injective on cosemisimple H")
