"""Finite field extensions E/F as comodule algebras over Map(Aut, F)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .comodule import CoactionData, invariants
from .galois import CanReport, canonical_map, scalars
from .groups import FiniteGroup, GroupError
from .hopf import AlgebraData, HopfData, StructureError, verify_algebra
from .linalg import FieldSpec, LinMap, Subspace, as_vector, kernel_basis, tensor, vstack


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FieldExtensionData:
    """E as an F-algebra with an explicit list of F-algebra automorphisms.

    The list must be a group under composition; the product of entries
    ``a`` and ``b`` is ``a o b``.
    """

    base: FieldSpec
    algebra: AlgebraData
    automorphisms: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "automorphisms", tuple(self.automorphisms))
        a = self.algebra
        if a.field != self.base:
            raise ExtensionError("extension algebra is over a different field")
        if not self.automorphisms:
            raise ExtensionError("automorphism list is empty; include the identity")
        n = a.dim
        one = as_vector(self.base, a.unit)
        for k, g in enumerate(self.automorphisms):
            if g.shape != (n, n):
                raise ExtensionError(f"automorphism {k} has shape {g.shape}")
            if g.rank() != n:
                raise ExtensionError(f"automorphism {k} is not invertible")
            if g.apply(one) != one:
                raise ExtensionError(f"automorphism {k} does not fix 1")
            if g @ a.mult != a.mult @ tensor(g, g):
                raise ExtensionError(f"automorphism {k} does not respect the product")
        _ = self.group  # closure check

    @property
    def degree(self) -> int:
        return self.algebra.dim

    @cached_property
    def group(self) -> FiniteGroup:
        auts = self.automorphisms
        index = {}
        for k, g in enumerate(auts):
            index.setdefault(g, k)
        if len(index) != len(auts):
            raise ExtensionError("automorphism list has repeated entries")
        ident = LinMap.identity(self.base, self.degree)
        if ident not in index:
            raise ExtensionError("automorphism list does not contain the identity")
        table = []
        for a in auts:
            row = []
            for b in auts:
                ab = a @ b
                if ab not in index:
                    raise ExtensionError("automorphism list is not closed under composition")
                row.append(index[ab])
            table.append(tuple(row))
        try:
            return FiniteGroup(tuple(table), index[ident], f"Aut({self.name})")
        except GroupError as exc:
            raise ExtensionError(f"automorphisms do not form a group: {exc}") from exc


def _poly_mult_table(field: FieldSpec, minpoly: Sequence) -> AlgebraData:
    """F[x]/(m) in the basis 1, x, ..., x^{n-1}; ``minpoly`` is monic, lowest degree first."""
    m = [field(c) for c in minpoly]
    n = len(m) - 1
    if n < 1 or m[-1] != 1:
        raise ExtensionError("minimal polynomial must be monic of degree >= 1")
    # x^k for k < 2n-1 reduced mod m
    powers = [{k: 1} for k in range(n)]
    for k in range(n, 2 * n - 1):
        prev = powers[k - 1]
        shifted = {}
        for i, c in prev.items():
            if i + 1 < n:
                shifted[i + 1] = field.add(shifted.get(i + 1, 0), c)
            else:
                for j in range(n):
                    t = field.mul(field.neg(c), m[j])
                    shifted[j] = field.add(shifted.get(j, 0), t)
        powers.append({i: c for i, c in shifted.items() if c})
    return AlgebraData.from_table(field, n, lambda i, j: powers[i + j], {0: 1})


def _power(a: AlgebraData, v: dict, k: int) -> dict:
    out = as_vector(a.field, a.unit)
    for _ in range(k):
        out = a.product(out, v)
    return out


def _eval_poly(a: AlgebraData, coeffs: Sequence, v: dict) -> dict:
    f = a.field
    out: dict = {}
    p = as_vector(f, a.unit)
    for c in coeffs:
        c = f(c)
        for i, x in p.items():
            out[i] = f.add(out.get(i, 0), f.mul(c, x))
        p = a.product(p, v)
    return {i: x for i, x in out.items() if x}


def automorphism_from_root(a: AlgebraData, minpoly: Sequence, root: dict) -> LinMap:
    """The F-algebra map F[x]/(m) -> E sending x to ``root`` (which must satisfy m)."""
    if _eval_poly(a, minpoly, root):
        raise ExtensionError(f"{root} is not a root of the minimal polynomial")
    return LinMap.from_columns(a.field, a.dim, [_power(a, root, k) for k in range(a.dim)])


def simple_extension(field: FieldSpec, minpoly: Sequence, roots: Sequence[dict], name: str = "") -> FieldExtensionData:
    """E = F[x]/(m) with automorphisms x -> r for each listed root r."""
    a = _poly_mult_table(field, minpoly)
    bad = verify_algebra(a)
    if any(not c.passed for c in bad):
        raise ExtensionError("polynomial algebra fails the algebra axioms")
    auts = [automorphism_from_root(a, minpoly, r) for r in roots]
    return FieldExtensionData(field, a, tuple(auts), name)


def quadratic_extension(field: FieldSpec, b, c, name: str = "") -> FieldExtensionData:
    """F[x]/(x^2 + b x + c); automorphisms x -> x and x -> -b - x."""
    f = field
    other = {k: v for k, v in {0: f.neg(f(b)), 1: f.neg(1)}.items() if v}
    return simple_extension(field, [c, b, 1], [{1: 1}, other], name)


def frobenius(a: AlgebraData) -> LinMap:
    """x -> x^p on an F_p-algebra."""
    p = a.field.characteristic
    if p == 0:
        raise ExtensionError("Frobenius needs a prime field")
    return LinMap.from_columns(a.field, a.dim, [_power(a, {k: 1}, p) for k in range(a.dim)])


def finite_field_extension(p: int, minpoly: Sequence, name: str = "") -> FieldExtensionData:
    """F_{p^n} = F_p[x]/(m) with the Frobenius powers as automorphisms."""
    field = FieldSpec(p)
    a = _poly_mult_table(field, minpoly)
    fr = frobenius(a)
    auts = [LinMap.identity(field, a.dim)]
    while True:
        nxt = auts[-1] @ fr
        if nxt == auts[0]:
            break
        auts.append(nxt)
        if len(auts) > a.dim:
            raise ExtensionError("Frobenius order exceeds the degree; polynomial is not irreducible")
    return FieldExtensionData(field, a, tuple(auts), name)


def trivial_extension(field: FieldSpec) -> FieldExtensionData:
    a = AlgebraData.from_table(field, 1, lambda i, j: {0: 1}, {0: 1})
    return FieldExtensionData(field, a, (LinMap.identity(field, 1),), f"{field}/{field}")


def bundled_extensions() -> dict:
    """The desk-scale families: five Galois extensions and one non-Galois cubic."""
    q = FieldSpec(0)
    return {
        "gauss-qi": quadratic_extension(q, 0, 1, "Q(i)/Q"),
        "q-sqrt2": quadratic_extension(q, 0, -2, "Q(sqrt2)/Q"),
        # only the real cube root of 2 lies in Q(cbrt2)
        "cbrt2": simple_extension(q, [-2, 0, 0, 1], [{1: 1}], "Q(cbrt2)/Q"),
        "f4-over-f2": finite_field_extension(2, [1, 1, 1], "F4/F2"),
        "f8-over-f2": finite_field_extension(2, [1, 1, 0, 1], "F8/F2"),
        "f9-over-f3": finite_field_extension(3, [1, 0, 1], "F9/F3"),
    }


def galois_coaction(e: FieldExtensionData, hopf: Optional[HopfData] = None) -> tuple:
    """delta(x) = sum_g g(x) (x) delta_g over Map(Aut, F); returns (coaction, F.1)."""
    from .classical import function_hopf

    g = e.group
    h = function_hopf(g, e.base) if hopf is None else hopf
    n, d = e.degree, g.order
    cols = []
    for j in range(n):
        col = {}
        for k, aut in enumerate(e.automorphisms):
            for i, x in aut._cols[j].items():
                col[i * d + k] = x
        cols.append(col)
    c = CoactionData(e.algebra, h, LinMap(e.base, n * d, n, cols), e.name)
    return c, scalars(c)


def fixed_field(e: FieldExtensionData) -> Subspace:
    """Common fixed points of all automorphisms, as a joint kernel."""
    ident = LinMap.identity(e.base, e.degree)
    return kernel_basis(vstack([g - ident for g in e.automorphisms]))


@dataclass
class GaloisCriterion:
    degree: int
    group_order: int
    fixed_dim: int
    can: CanReport

    @property
    def dim_count(self) -> bool:
        """Classical test: |Aut| = [E:F]."""
        return self.group_order == self.degree

    @property
    def hopf_galois(self) -> bool:
        return self.fixed_dim == 1 and self.can.bijective

    @property
    def agree(self) -> bool:
        return self.dim_count == self.hopf_galois

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "aut_order": self.group_order,
            "fixed_field_dim": self.fixed_dim,
            "can": self.can.to_dict(),
            "galois_by_dim_count": self.dim_count,
            "galois_by_can": self.hopf_galois,
            "agree": self.agree,
        }


def galois_criterion(e: FieldExtensionData) -> GaloisCriterion:
    c, base = galois_coaction(e)
    fixed = fixed_field(e)
    if fixed != invariants(c).subspace:
        raise StructureError("fixed field and coinvariants disagree")
    return GaloisCriterion(e.degree, e.group.order, fixed.dim, canonical_map(c, base))
