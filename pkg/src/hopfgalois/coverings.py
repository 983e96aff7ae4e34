"""Finite coverings X -> Y with a supplied group of deck transformations."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .classical import function_hopf, gset_comodule_algebra
from .comodule import CoactionData, invariants
from .galois import CanReport, canonical_map
from .groups import GSet, group_from_permutations, symmetric_group
from .linalg import FieldSpec, LinMap, Subspace, tensor


class CoveringError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteCovering:
    """``projection[x]`` is the base point under x; ``deck`` generates the deck subgroup.

    Each deck generator is a permutation of the total set with
    projection o h = projection.
    """

    total: int
    base: int
    projection: tuple
    deck: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "projection", tuple(self.projection))
        object.__setattr__(self, "deck", tuple(tuple(h) for h in self.deck))
        if len(self.projection) != self.total:
            raise CoveringError("projection table has the wrong length")
        if any(not 0 <= y < self.base for y in self.projection):
            raise CoveringError("projection lands outside the base")
        if set(self.projection) != set(range(self.base)):
            raise CoveringError("projection is not surjective")
        for k, h in enumerate(self.deck):
            if sorted(h) != list(range(self.total)):
                raise CoveringError(f"deck generator {k} is not a permutation")
            for x in range(self.total):
                if self.projection[h[x]] != self.projection[x]:
                    raise CoveringError(f"deck generator {k} moves point {x} off its fiber")

    def fiber(self, y: int) -> tuple:
        return tuple(x for x in range(self.total) if self.projection[x] == y)

    def gset(self) -> GSet:
        """The deck group (closed under composition) acting on the total set."""
        gens = [tuple(range(self.total))] + list(self.deck)
        g, elems = group_from_permutations(gens, f"deck({self.name})")
        return GSet(g, tuple(tuple(elems[k][x] for k in range(g.order)) for x in range(self.total)), self.name)


def pullbacks(cov: FiniteCovering, field: FieldSpec) -> Subspace:
    """pi^*Map(Y): spanned by the fiber indicators."""
    return Subspace.span(field, cov.total, [{x: 1 for x in cov.fiber(y)} for y in range(cov.base)])


def pullback_map(cov: FiniteCovering, field: FieldSpec) -> LinMap:
    return LinMap(field, cov.total, cov.base, [{x: 1 for x in cov.fiber(y)} for y in range(cov.base)])


def fiber_average(cov: FiniteCovering, field: FieldSpec) -> Optional[LinMap]:
    """Theta: Map(X) -> Map(Y), the average over each fiber; None if a fiber size vanishes in F."""
    cols = []
    for x in range(cov.total):
        size = field(len(cov.fiber(cov.projection[x])))
        if size == 0:
            return None
        cols.append({cov.projection[x]: field.inv(size)})
    return LinMap(field, cov.base, cov.total, cols)


def combinatorially_regular(cov: FiniteCovering, s: Optional[GSet] = None) -> bool:
    """Deck group free and transitive on every fiber."""
    s = cov.gset() if s is None else s
    g = s.group
    for y in range(cov.base):
        fib = cov.fiber(y)
        x0 = fib[0]
        if sorted(s.act(x0, a) for a in g.elements()) != list(fib):
            return False
    return all(s.act(x, a) != x for x in range(s.points) for a in g.elements() if a != g.identity)


@dataclass
class CoveringReport:
    name: str
    regular: bool
    can: CanReport
    theta: Optional[bool]
    notes: list = dc_field(default_factory=list)

    @property
    def agree(self) -> bool:
        """regular <=> can bijective, and can bijective => invariants are pullbacks."""
        ok = self.regular == self.can.bijective
        if self.can.bijective and self.theta is not None:
            ok = ok and self.theta
        return ok

    def to_dict(self) -> dict:
        return {
            "covering": self.name,
            "combinatorially_regular": self.regular,
            "can": self.can.to_dict(),
            "invariants_are_pullbacks": self.theta,
            "agree": self.agree,
            "notes": list(self.notes),
        }


def _theta_identification(cov: FiniteCovering, c: CoactionData, can: CanReport, field: FieldSpec) -> Optional[bool]:
    """Derive invariants = pullbacks from injectivity of can by the averaging argument.

    For an invariant f, 1 (x) f and f (x) 1 have the same image under can, so
    they agree in A (x)_B A.  The map x (x) y -> pi^*Theta(x) y descends to
    A (x)_B A and sends them to f and pi^*Theta(f).
    """
    theta = fiber_average(cov, field)
    if theta is None:
        return None
    n = c.dim
    avg = pullback_map(cov, field) @ theta
    t_map = c.algebra.mult @ tensor(avg, LinMap.identity(field, n))
    bal = can.relative.balancing
    if any(t_map.apply(v) for v in bal.inclusion._cols):
        return False
    one = {i: x for i, x in enumerate(c.algebra.unit) if x}
    for f in invariants(c).subspace.basis_vectors():
        diff = {}
        for i, x in one.items():
            for j, y in f.items():
                diff[i * n + j] = field.add(diff.get(i * n + j, 0), field.mul(x, y))
                diff[j * n + i] = field.add(diff.get(j * n + i, 0), field.neg(field.mul(x, y)))
        diff = {k: v for k, v in diff.items() if v}
        if not bal.contains(diff):
            return False
        if avg.apply(f) != f:
            return False
    return True


def covering_regularity_check(cov: FiniteCovering, field: FieldSpec = FieldSpec(0)) -> CoveringReport:
    s = cov.gset()
    h = function_hopf(s.group, field)
    c = gset_comodule_algebra(s, field, h)
    can = canonical_map(c, pullbacks(cov, field))
    notes = []
    theta: Optional[bool] = None
    if fiber_average(cov, field) is None:
        notes.append(f"characteristic {field.characteristic} divides a fiber size; averaging skipped")
    elif can.bijective:
        theta = _theta_identification(cov, c, can, field)
    else:
        # the implication is vacuous; still record whether the conclusion holds
        theta = invariants(c).subspace == pullbacks(cov, field)
    return CoveringReport(cov.name, combinatorially_regular(cov, s), can, theta, notes)


def trivial_covering(base: int, gset_perms: Sequence[Sequence[int]], name: str = "") -> FiniteCovering:
    """Y x Gamma -> Y with Gamma acting on the second factor by the given permutations of Gamma."""
    k = len(gset_perms[0])
    proj = tuple(x // k for x in range(base * k))
    deck = [tuple(y * k + p[i] for y in range(base) for i in range(k)) for p in gset_perms]
    return FiniteCovering(base * k, base, proj, tuple(deck), name or f"trivial-{base}x{k}")


def _cycle(n: int, offset: int = 0, total: Optional[int] = None) -> tuple:
    total = n if total is None else total
    p = list(range(total))
    for i in range(n):
        p[offset + i] = offset + (i + 1) % n
    return tuple(p)


def _swap(a: int, b: int, total: int) -> tuple:
    p = list(range(total))
    p[a], p[b] = b, a
    return tuple(p)


def _compose(*perms: tuple) -> tuple:
    out = tuple(range(len(perms[0])))
    for p in perms:
        out = tuple(p[x] for x in out)
    return out


def bundled_coverings() -> dict:
    """A battery of small coverings: regular, irregular, non-free and non-transitive."""
    covs = []
    # trivial coverings Y x Gamma with Gamma by right translation on itself
    covs.append(trivial_covering(1, [_cycle(2)], "trivial-1xZ2"))
    covs.append(trivial_covering(2, [_cycle(2)], "trivial-2xZ2"))
    covs.append(trivial_covering(3, [_cycle(2)], "trivial-3xZ2"))
    covs.append(trivial_covering(2, [_cycle(3)], "trivial-2xZ3"))
    covs.append(trivial_covering(1, [_cycle(4)], "trivial-1xZ4"))
    covs.append(trivial_covering(2, [(1, 0, 3, 2), (2, 3, 0, 1)], "trivial-2xV4"))
    s3 = symmetric_group(3)
    covs.append(trivial_covering(1, [tuple(s3.mul(x, a) for x in s3.elements()) for a in s3.elements()],
                                 "trivial-1xS3"))
    covs.append(FiniteCovering(1, 1, (0,), ((0,),), "identity-point"))
    covs.append(FiniteCovering(3, 3, (0, 1, 2), ((0, 1, 2),), "identity-3"))
    # 3-point fiber over a point
    covs.append(FiniteCovering(3, 1, (0, 0, 0), (_cycle(3),), "z3-regular-cover"))
    covs.append(FiniteCovering(3, 1, (0, 0, 0), (_swap(0, 1, 3),), "z2-irregular-cover"))
    covs.append(FiniteCovering(3, 1, (0, 0, 0), (_swap(0, 1, 3), _cycle(3)), "s3-irregular-cover"))
    # trivial deck group on a nontrivial fiber: can surjective, not injective
    covs.append(FiniteCovering(2, 1, (0, 0), ((0, 1),), "trivial-deck-2"))
    covs.append(FiniteCovering(4, 2, (0, 0, 1, 1), ((0, 1, 2, 3),), "trivial-deck-2x2"))
    # two fibers of size 2
    covs.append(FiniteCovering(4, 2, (0, 0, 1, 1), ((1, 0, 3, 2),), "z2-both-fibers"))
    covs.append(FiniteCovering(4, 2, (0, 0, 1, 1), ((1, 0, 2, 3),), "z2-one-fiber"))
    covs.append(FiniteCovering(4, 2, (0, 0, 1, 1), ((1, 0, 2, 3), (0, 1, 3, 2)), "product-of-fiber-swaps"))
    # fibers of different sizes
    covs.append(FiniteCovering(5, 2, (0, 0, 1, 1, 1), ((1, 0, 2, 3, 4), _cycle(3, 2, 5)), "mixed-sizes"))
    covs.append(FiniteCovering(5, 2, (0, 0, 0, 1, 1), ((1, 2, 0, 3, 4),), "partly-covered"))
    # a deck group not transitive on the fiber (finite moral of a graph covering)
    covs.append(FiniteCovering(4, 1, (0, 0, 0, 0), ((1, 0, 3, 2),), "z2-on-4-two-orbits"))
    covs.append(FiniteCovering(4, 1, (0, 0, 0, 0), ((1, 0, 3, 2), (2, 3, 0, 1)), "v4-regular-4"))
    covs.append(FiniteCovering(4, 1, (0, 0, 0, 0), (_cycle(4),), "z4-regular-4"))
    covs.append(FiniteCovering(6, 2, (0, 0, 0, 1, 1, 1), (_compose(_cycle(3, 0, 6), _cycle(3, 3, 6)),),
                               "z3-diagonal-2-fibers"))
    covs.append(FiniteCovering(6, 2, (0, 0, 0, 1, 1, 1), (_cycle(3, 0, 6), _cycle(3, 3, 6)),
                               "z3xz3-independent"))
    return {c.name: c for c in covs}
