"""Finite-dimensional algebras, coalgebras and Hopf algebras as structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .linalg import (
    FieldSpec,
    LinMap,
    Subspace,
    as_vector,
    dense,
    flip,
    is_bijective,
    kernel_basis,
    leg_permutation,
    solve,
    tensor,
)


class StructureError(ValueError):
    """Inconsistent dimensions or fields in structure-constant data."""


@dataclass
class Check:
    """Outcome of one axiom or cross-check."""

    name: str
    status: str  # "pass" | "fail" | "skip"
    reason: str = ""
    witness: Optional[list] = None
    data: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.reason:
            d["reason"] = self.reason
        if self.witness is not None:
            d["witness"] = [str(x) for x in self.witness]
        if self.data:
            d["data"] = self.data
        return d


@dataclass
class VerificationReport:
    subject: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list:
        return [c.name for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def compare_maps(name: str, lhs: LinMap, rhs: LinMap, basis_names=None) -> Check:
    """Check ``lhs == rhs``; on failure the witness is the first basis vector where they differ."""
    if lhs.shape != rhs.shape:
        return Check(name, "fail", f"shape mismatch {lhs.shape} vs {rhs.shape}")
    for j in range(lhs.cols):
        a, b = lhs._cols[j], rhs._cols[j]
        if a != b:
            w = [0] * lhs.cols
            w[j] = 1
            label = basis_names[j] if basis_names else f"e{j}"
            return Check(name, "fail", f"differs on basis vector {label}", witness=w)
    return Check(name, "pass")


@dataclass(frozen=True, eq=False)
class AlgebraData:
    field: FieldSpec
    dim: int
    mult: LinMap  # n*n -> n
    unit: tuple  # length n

    def __post_init__(self):
        n = self.dim
        if self.mult.shape != (n, n * n):
            raise StructureError(f"mult must be {n}x{n * n}, got {self.mult.shape}")
        if len(self.unit) != n:
            raise StructureError(f"unit must have length {n}")
        if self.mult.field != self.field:
            raise StructureError("mult over the wrong field")

    @classmethod
    def from_table(cls, field: FieldSpec, n: int, product, unit) -> "AlgebraData":
        """``product(i, j)`` gives the sparse vector e_i * e_j."""
        mult = LinMap.from_function(field, n, n * n, lambda k: product(k // n, k % n))
        return cls(field, n, mult, tuple(dense(as_vector(field, unit), n)))

    @property
    def unit_map(self) -> LinMap:
        return LinMap.column(self.field, self.unit, self.dim)

    def product(self, a, b) -> dict:
        a = a if isinstance(a, dict) else as_vector(self.field, a)
        b = b if isinstance(b, dict) else as_vector(self.field, b)
        n = self.dim
        v = {}
        f = self.field
        for i, x in a.items():
            for j, y in b.items():
                v[i * n + j] = f.add(v.get(i * n + j, 0), f.mul(x, y))
        return self.mult.apply({k: x for k, x in v.items() if x})

    def left_mult(self, a) -> LinMap:
        """The operator ``y -> a * y``."""
        a = a if isinstance(a, dict) else as_vector(self.field, a)
        n = self.dim
        return LinMap.from_function(self.field, n, n, lambda j: self.product(a, {j: 1}))

    def right_mult(self, b) -> LinMap:
        """The operator ``x -> x * b``."""
        b = b if isinstance(b, dict) else as_vector(self.field, b)
        n = self.dim
        return LinMap.from_function(self.field, n, n, lambda i: self.product({i: 1}, b))

    def tensor_algebra(self, other: "AlgebraData") -> "AlgebraData":
        """Componentwise product on A (x) B."""
        f, n, m = self.field, self.dim, other.dim
        mid = leg_permutation(f, (n, m, n, m), (0, 2, 1, 3))
        mult = tensor(self.mult, other.mult) @ mid
        unit = tensor(self.unit_map, other.unit_map).column_vector(0)
        return AlgebraData(f, n * m, mult, tuple(dense(unit, n * m)))

    def is_commutative(self) -> bool:
        return self.mult == self.mult @ flip(self.field, self.dim, self.dim)

    def subalgebra(self, sub: Subspace) -> "AlgebraData":
        """Structure constants of a subalgebra in the basis of ``sub``."""
        basis = sub.basis_vectors()
        k = len(basis)

        def prod(i, j):
            v = self.product(basis[i], basis[j])
            if sub.residual(v):
                raise StructureError("subspace is not closed under multiplication")
            return {t: x for t, x in enumerate(sub.coordinates(v)) if x}

        unit = as_vector(self.field, self.unit)
        if sub.residual(unit):
            raise StructureError("subspace does not contain the unit")
        return AlgebraData.from_table(self.field, k, prod, sub.coordinates(unit))


@dataclass(frozen=True, eq=False)
class CoalgebraData:
    field: FieldSpec
    dim: int
    comult: LinMap  # n -> n*n
    counit: LinMap  # n -> 1

    def __post_init__(self):
        n = self.dim
        if self.comult.shape != (n * n, n):
            raise StructureError(f"comult must be {n * n}x{n}, got {self.comult.shape}")
        if self.counit.shape != (1, n):
            raise StructureError(f"counit must be 1x{n}, got {self.counit.shape}")


@dataclass(frozen=True, eq=False)
class HopfData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: LinMap
    name: str = ""
    basis_names: Optional[tuple] = None

    def __post_init__(self):
        a, c = self.algebra, self.coalgebra
        if a.dim != c.dim:
            raise StructureError(f"algebra dim {a.dim} != coalgebra dim {c.dim}")
        if a.field != c.field or self.antipode.field != a.field:
            raise StructureError("field mismatch between structure maps")
        if self.antipode.shape != (a.dim, a.dim):
            raise StructureError("antipode must be square")

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def mult(self) -> LinMap:
        return self.algebra.mult

    @property
    def unit(self) -> tuple:
        return self.algebra.unit

    @property
    def unit_map(self) -> LinMap:
        return self.algebra.unit_map

    @property
    def comult(self) -> LinMap:
        return self.coalgebra.comult

    @property
    def counit(self) -> LinMap:
        return self.coalgebra.counit

    def antipode_inverse(self) -> Optional[LinMap]:
        return inverse(self.antipode)


def inverse(m: LinMap) -> Optional[LinMap]:
    if not is_bijective(m):
        return None
    n = m.rows
    cols = [solve(m, {j: 1}) for j in range(n)]
    return LinMap(m.field, n, n, cols)


def verify_algebra(a: AlgebraData) -> list:
    f, n = a.field, a.dim
    i = LinMap.identity(f, n)
    u = a.unit_map
    return [
        compare_maps("associativity", a.mult @ tensor(a.mult, i), a.mult @ tensor(i, a.mult)),
        compare_maps("unit (left)", a.mult @ tensor(u, i), i),
        compare_maps("unit (right)", a.mult @ tensor(i, u), i),
    ]


def verify_coalgebra(c: CoalgebraData) -> list:
    f, n = c.field, c.dim
    i = LinMap.identity(f, n)
    return [
        compare_maps("coassociativity", tensor(c.comult, i) @ c.comult, tensor(i, c.comult) @ c.comult),
        compare_maps("counit (left)", tensor(c.counit, i) @ c.comult, i),
        compare_maps("counit (right)", tensor(i, c.counit) @ c.comult, i),
    ]


def verify_hopf(h: HopfData) -> VerificationReport:
    """Check every Hopf algebra axiom; witnesses are basis vectors of the failing input."""
    f, n = h.field, h.dim
    names = list(h.basis_names) if h.basis_names else None
    checks = verify_algebra(h.algebra) + verify_coalgebra(h.coalgebra)
    i = LinMap.identity(f, n)
    one = LinMap.identity(f, 1)
    u, eps, delta, m, s = h.unit_map, h.counit, h.comult, h.mult, h.antipode

    mult_hh = tensor(m, m) @ leg_permutation(f, (n, n, n, n), (0, 2, 1, 3))
    checks.append(compare_maps("comult multiplicative", delta @ m, mult_hh @ tensor(delta, delta)))
    checks.append(compare_maps("comult unital", delta @ u, tensor(u, u)))
    checks.append(compare_maps("counit multiplicative", eps @ m, tensor(eps, eps)))
    checks.append(compare_maps("counit unital", eps @ u, one))
    ue = u @ eps
    checks.append(compare_maps("antipode (left)", m @ tensor(s, i) @ delta, ue, names))
    checks.append(compare_maps("antipode (right)", m @ tensor(i, s) @ delta, ue, names))
    if is_bijective(s):
        checks.append(Check("antipode bijective", "pass"))
    else:
        k = kernel_basis(s)
        checks.append(Check("antipode bijective", "fail", f"rank {s.rank()} < {n}",
                            witness=k.basis[0] if k.dim else None))
    return VerificationReport(h.name or "hopf", checks)


def require_hopf(h: HopfData) -> None:
    rep = verify_hopf(h)
    if not rep.ok:
        raise StructureError(f"{h.name or 'Hopf algebra'} fails axioms: {', '.join(rep.failed())}")


@dataclass(frozen=True, eq=False)
class HaarFunctional:
    phi: LinMap  # n -> 1
    unique: bool = True

    def __call__(self, v) -> object:
        return self.phi.apply(v).get(0, 0)

    def values(self) -> list:
        return dense({j: c.get(0, 0) for j, c in enumerate(self.phi._cols)}, self.phi.cols)


def haar_integral(h: HopfData) -> Optional[HaarFunctional]:
    """Normalised two-sided invariant functional, or None when none exists.

    Solves (id (x) phi) Delta = 1 phi, (phi (x) id) Delta = 1 phi and
    phi(1) = 1 as one linear system in the n unknowns phi(e_j).
    """
    f, n = h.field, h.dim
    delta = h.comult
    unit = as_vector(f, h.unit)
    # unknown phi_k; equation rows indexed by (side, i, j)
    cols = []
    for k in range(n):
        e = LinMap(f, 1, n, [({0: 1} if t == k else {}) for t in range(n)])
        right = tensor(LinMap.identity(f, n), e) @ delta - h.unit_map @ e
        left = tensor(e, LinMap.identity(f, n)) @ delta - h.unit_map @ e
        col = {}
        for j, c in enumerate(right._cols):
            for r, x in c.items():
                col[j * n + r] = x
        for j, c in enumerate(left._cols):
            for r, x in c.items():
                col[n * n + j * n + r] = x
        if unit.get(k):
            col[2 * n * n] = unit[k]
        cols.append(col)
    system = LinMap(f, 2 * n * n + 1, n, cols)
    sol = solve(system, {2 * n * n: 1})
    if sol is None:
        return None
    homogeneous = LinMap(f, 2 * n * n, n, [{r: x for r, x in c.items() if r < 2 * n * n} for c in cols])
    unique = kernel_basis(homogeneous).dim <= 1
    phi = LinMap(f, 1, n, [({0: sol[j]} if sol.get(j) else {}) for j in range(n)])
    return HaarFunctional(phi, unique)


def is_cosemisimple(h: HopfData) -> bool:
    """A finite-dimensional Hopf algebra is cosemisimple iff it has a normalised integral."""
    return haar_integral(h) is not None


def dual_hopf(h: HopfData) -> HopfData:
    """Transpose every structure map; the dual basis keeps the same indices."""
    f, n = h.field, h.dim
    algebra = AlgebraData(f, n, h.comult.transpose(), tuple(dense(h.counit.transpose().column_vector(0), n)))
    coalgebra = CoalgebraData(f, n, h.mult.transpose(), h.unit_map.transpose())
    names = tuple(f"{b}*" for b in h.basis_names) if h.basis_names else None
    return HopfData(algebra, coalgebra, h.antipode.transpose(), f"dual({h.name})" if h.name else "", names)


def same_structure(h1: HopfData, h2: HopfData) -> bool:
    """Structure constants equal entrywise (same basis indexing)."""
    return (h1.dim == h2.dim and h1.mult == h2.mult and h1.unit == h2.unit and h1.comult == h2.comult
            and h1.counit == h2.counit and h1.antipode == h2.antipode)


def trivial_hopf(field: FieldSpec) -> HopfData:
    """The one-dimensional Hopf algebra F."""
    one = LinMap.identity(field, 1)
    return HopfData(AlgebraData(field, 1, one, (1,)), CoalgebraData(field, 1, one, one), one, "F", ("1",))
