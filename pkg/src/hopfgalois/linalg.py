"""
Exact linear algebra over the rationals and prime fields.

Scalars over Q are Python ints or normalized Fractions (a Fraction with
denominator 1 is always stored as an int, which keeps the common 0/1/-1
case on the fast path).  Scalars over F_p are ints in ``range(p)``.

Tensor index convention, used everywhere in the package:

    index(i (x) j) = i * dim2 + j

and for more legs the row-major generalisation.  Vectors are sparse
``dict[int, scalar]`` internally; dense sequences are accepted at the
public entry points.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Vector = dict  # sparse: index -> nonzero scalar
VectorLike = Union[Mapping[int, object], Sequence[object]]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def kind(self) -> str:
        return "Q" if self.p == 0 else "Fp"

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    # scalar arithmetic -----------------------------------------------------

    def __call__(self, x) -> object:
        """Coerce an int, Fraction or literal string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        raise FieldError(f"cannot coerce {x!r} into {self}")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        if isinstance(x, int):
            if x in (1, -1):
                return x
            return Fraction(1, x)
        return _norm(1 / x)

    def mul(self, a, b):
        if self.p:
            return (a * b) % self.p
        return _norm(a * b)

    def add(self, a, b):
        if self.p:
            return (a + b) % self.p
        return _norm(a + b)

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def parse(self, token: str):
        """Parse an exact literal: ``"5"``, ``"-3/7"``; residues mod p."""
        s = token.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                num, den = int(num), int(den)
            else:
                num, den = int(s), 1
        except ValueError:
            raise FieldError(f"malformed scalar {token!r}") from None
        if den == 0 or (self.p and den % self.p == 0):
            raise FieldError(f"malformed scalar {token!r}: zero denominator")
        return self(Fraction(num, den))

    def format(self, x) -> str:
        return str(x)


QQ = FieldSpec(0)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# sparse vector helpers ------------------------------------------------------


def as_vector(field: FieldSpec, v: VectorLike) -> Vector:
    """Sparse copy of ``v`` with entries coerced into ``field``."""
    items = v.items() if isinstance(v, Mapping) else enumerate(v)
    out = {}
    for i, x in items:
        x = field(x)
        if x:
            out[int(i)] = x
    return out


def dense(v: Mapping[int, object], n: int) -> list:
    return [v.get(i, 0) for i in range(n)]


def _axpy(field: FieldSpec, y: dict, a, x: Mapping[int, object]) -> None:
    """y += a*x in place, dropping zeros."""
    p = field.p
    if p:
        for k, xv in x.items():
            val = (y.get(k, 0) + a * xv) % p
            if val:
                y[k] = val
            else:
                y.pop(k, None)
    else:
        for k, xv in x.items():
            val = y.get(k, 0) + a * xv
            if val:
                y[k] = val.numerator if type(val) is Fraction and val.denominator == 1 else val
            else:
                y.pop(k, None)


def vec_add(field: FieldSpec, *terms: tuple) -> Vector:
    """Linear combination ``sum(c * v for c, v in terms)``."""
    out: dict = {}
    for c, v in terms:
        if c:
            _axpy(field, out, field(c), v)
    return out


def vec_scale(field: FieldSpec, c, v: Mapping) -> Vector:
    out: dict = {}
    _axpy(field, out, field(c), v)
    return out


# elimination ----------------------------------------------------------------


def _rref(field: FieldSpec, rows: Iterable[Mapping[int, object]], reduced: bool = True):
    """Row echelon form of the span of ``rows``.

    Pivots are chosen as the first nonzero column of each incoming row
    after reduction, which makes the fully reduced form canonical for the
    row space regardless of input order.

    Returns ``(pivot_rows, pivots)`` sorted by pivot column; every pivot
    row is normalised to 1 at its pivot.
    """
    p = field.p
    piv: dict[int, dict] = {}
    for row in rows:
        r = dict(row)
        if not r:
            continue
        heap = [c for c in r if c in piv]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = r.get(c)
            if not a:
                continue
            prow = piv[c]
            _axpy(field, r, field.neg(a), prow)
            for k in prow:
                if k > c and k in piv and k in r:
                    heapq.heappush(heap, k)
        if not r:
            continue
        lead = min(r)
        inv = field.inv(r[lead])
        if inv != 1:
            r = {k: ((v * inv) % p if p else _norm(v * inv)) for k, v in r.items()}
        piv[lead] = r
    pivots = sorted(piv)
    if reduced:
        # back substitution from the last pivot upwards
        for i in range(len(pivots) - 1, -1, -1):
            ci = pivots[i]
            ri = piv[ci]
            for cj in pivots[i + 1:]:
                a = ri.get(cj)
                if a:
                    _axpy(field, ri, field.neg(a), piv[cj])
    return [piv[c] for c in pivots], pivots


# linear maps ----------------------------------------------------------------


class LinMap:
    """A linear map F^cols -> F^rows stored as sparse columns.

    Column ``j`` is the image of the ``j``-th basis vector.  Instances are
    treated as immutable; every operation returns a new map.
    """

    __slots__ = ("field", "rows", "cols", "_cols", "_rank")

    def __init__(self, field: FieldSpec, rows: int, cols: int, columns=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError(f"expected {cols} columns, got {len(columns)}")
        self._cols = columns
        self._rank = None

    # construction ------------------------------------------------------

    @classmethod
    def from_entries(cls, field: FieldSpec, rows: int, cols: int, entries) -> "LinMap":
        columns = [{} for _ in range(cols)]
        for r, c, x in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if r in columns[c]:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            x = field(x)
            if x:
                columns[c][r] = x
        return cls(field, rows, cols, columns)

    @classmethod
    def from_dense(cls, field: FieldSpec, matrix: Sequence[Sequence[object]], cols: int | None = None) -> "LinMap":
        rows = len(matrix)
        if cols is None:
            cols = len(matrix[0]) if rows else 0
        entries = [(i, j, x) for i, row in enumerate(matrix) for j, x in enumerate(row) if x]
        return cls.from_entries(field, rows, cols, entries)

    @classmethod
    def from_columns(cls, field: FieldSpec, rows: int, columns: Sequence[VectorLike]) -> "LinMap":
        cols = [as_vector(field, v) for v in columns]
        for c in cols:
            if c and (min(c) < 0 or max(c) >= rows):
                raise IndexError("column entry out of range")
        return cls(field, rows, len(cols), cols)

    @classmethod
    def from_function(cls, field: FieldSpec, rows: int, cols: int, fn) -> "LinMap":
        """Build the map whose ``j``-th column is ``fn(j)`` (a sparse vector)."""
        return cls(field, rows, cols, [as_vector(field, fn(j)) for j in range(cols)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "LinMap":
        return cls(field, n, n, [{j: 1} for j in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int) -> "LinMap":
        return cls(field, rows, cols)

    @classmethod
    def row(cls, field: FieldSpec, values: VectorLike, cols: int | None = None) -> "LinMap":
        """A functional F^cols -> F given by its values on basis vectors."""
        v = as_vector(field, values)
        if cols is None:
            cols = len(values)
        return cls(field, 1, cols, [({0: v[j]} if j in v else {}) for j in range(cols)])

    @classmethod
    def column(cls, field: FieldSpec, vector: VectorLike, rows: int | None = None) -> "LinMap":
        """The map F -> F^rows sending 1 to ``vector``."""
        if rows is None:
            rows = len(vector)
        return cls(field, rows, 1, [as_vector(field, vector)])

    # access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column_vector(self, j: int) -> Vector:
        return dict(self._cols[j])

    def columns(self) -> list[Vector]:
        return [dict(c) for c in self._cols]

    def entries(self) -> Iterator[tuple[int, int, object]]:
        """(row, col, value) triples sorted by row then column."""
        out = [(r, c, x) for c, col in enumerate(self._cols) for r, x in col.items()]
        out.sort()
        return iter(out)

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self._cols[c].get(r, 0)

    def to_dense(self) -> list[list]:
        m = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self._cols):
            for r, x in col.items():
                m[r][c] = x
        return m

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.rows)]
        for c, col in enumerate(self._cols):
            for r, x in col.items():
                rows[r][c] = x
        return rows

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        return hash((self.field, self.shape, tuple(sorted(self.entries()))))

    def __repr__(self):
        return f"LinMap({self.field}, {self.rows}x{self.cols}, nnz={self.nnz()})"

    # algebra -----------------------------------------------------------

    def _check(self, other: "LinMap"):
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def apply(self, v: VectorLike) -> Vector:
        v = v if isinstance(v, dict) else as_vector(self.field, v)
        out: dict = {}
        for j, a in v.items():
            if a:
                _axpy(self.field, out, a, self._cols[j])
        return out

    def __matmul__(self, other: "LinMap") -> "LinMap":
        """Composition ``self o other``."""
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        return LinMap(self.field, self.rows, other.cols, [self.apply(c) for c in other._cols])

    compose = __matmul__

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        cols = []
        for a, b in zip(self._cols, other._cols):
            c = dict(a)
            _axpy(self.field, c, 1, b)
            cols.append(c)
        return LinMap(self.field, self.rows, self.cols, cols)

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, c) -> "LinMap":
        c = self.field(c)
        return LinMap(self.field, self.rows, self.cols, [vec_scale(self.field, c, col) for col in self._cols])

    def transpose(self) -> "LinMap":
        return LinMap(self.field, self.cols, self.rows, self.row_dicts())

    T = property(transpose)

    def restrict_columns(self, idx: Sequence[int]) -> "LinMap":
        return LinMap(self.field, self.rows, len(idx), [dict(self._cols[j]) for j in idx])

    def rank(self) -> int:
        if self._rank is None:
            if self.rows < self.cols:
                _, piv = _rref(self.field, self._cols, reduced=False)
            else:
                _, piv = _rref(self.field, self.row_dicts(), reduced=False)
            self._rank = len(piv)
        return self._rank

    def is_zero(self) -> bool:
        return not any(self._cols)


def hstack(maps: Sequence[LinMap]) -> LinMap:
    """[m1 | m2 | ...], i.e. the map from the direct sum of domains."""
    field, rows = maps[0].field, maps[0].rows
    cols = []
    for m in maps:
        if m.rows != rows or m.field != field:
            raise ValueError("hstack: incompatible maps")
        cols.extend(dict(c) for c in m._cols)
    return LinMap(field, rows, len(cols), cols)


def vstack(maps: Sequence[LinMap]) -> LinMap:
    """Stack codomains: the map into the direct sum of codomains."""
    field, ncols = maps[0].field, maps[0].cols
    cols = [{} for _ in range(ncols)]
    off = 0
    for m in maps:
        if m.cols != ncols or m.field != field:
            raise ValueError("vstack: incompatible maps")
        for j, col in enumerate(m._cols):
            for r, x in col.items():
                cols[j][r + off] = x
        off += m.rows
    return LinMap(field, off, ncols, cols)


def direct_sum(maps: Sequence[LinMap]) -> LinMap:
    """Block diagonal map."""
    field = maps[0].field
    rows = sum(m.rows for m in maps)
    cols = []
    off = 0
    for m in maps:
        cols.extend({r + off: x for r, x in col.items()} for col in m._cols)
        off += m.rows
    return LinMap(field, rows, len(cols), cols)


# the public operations -------------------------------------------------------


def rank(m: LinMap) -> int:
    return m.rank()


def is_bijective(m: LinMap) -> bool:
    return m.rows == m.cols and m.rank() == m.rows


def tensor(*maps: LinMap) -> LinMap:
    """Kronecker product with ``index(i (x) j) = i * dim2 + j``."""
    if not maps:
        raise ValueError("tensor of nothing")
    out = maps[0]
    for m in maps[1:]:
        out._check(m)
        field = out.field
        p = field.p
        cols = []
        for ca in out._cols:
            for cb in m._cols:
                col = {}
                for ra, xa in ca.items():
                    base = ra * m.rows
                    for rb, xb in cb.items():
                        col[base + rb] = (xa * xb) % p if p else _norm(xa * xb)
                cols.append(col)
        out = LinMap(field, out.rows * m.rows, out.cols * m.cols, cols)
    return out


def leg_permutation(field: FieldSpec, dims: Sequence[int], order: Sequence[int]) -> LinMap:
    """Reorder tensor legs: ``v_0 (x) ... (x) v_k -> v_order[0] (x) ...``.

    ``dims`` are the dimensions of the input legs; output leg ``t`` is input
    leg ``order[t]``.
    """
    k = len(dims)
    if sorted(order) != list(range(k)):
        raise ValueError(f"{order} is not a permutation of {k} legs")
    out_dims = [dims[o] for o in order]
    total = 1
    for d in dims:
        total *= d
    cols = []
    for idx in range(total):
        digits = []
        rem = idx
        for d in reversed(dims):
            digits.append(rem % d)
            rem //= d
        digits.reverse()
        out = 0
        for t, o in enumerate(order):
            out = out * out_dims[t] + digits[o]
        cols.append({out: 1})
    return LinMap(field, total, total, cols)


def flip(field: FieldSpec, d1: int, d2: int) -> LinMap:
    """The swap ``V (x) W -> W (x) V``."""
    return leg_permutation(field, (d1, d2), (1, 0))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^ambient_dim with a linearly independent basis.

    ``coords`` is a list of ambient positions at which the basis matrix is
    the identity, so the coordinates of a member vector are read off
    directly.
    """

    field: FieldSpec
    ambient_dim: int
    inclusion: LinMap
    coords: tuple

    @property
    def dim(self) -> int:
        return self.inclusion.cols

    @property
    def basis(self) -> list[list]:
        return [dense(c, self.ambient_dim) for c in self.inclusion._cols]

    def basis_vectors(self) -> list[Vector]:
        return self.inclusion.columns()

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[VectorLike]) -> "Subspace":
        """Subspace spanned by arbitrary vectors; basis in reduced echelon form."""
        vecs = [v if isinstance(v, dict) else as_vector(field, v) for v in vectors]
        rows, piv = _rref(field, vecs)
        return cls(field, ambient_dim, LinMap(field, ambient_dim, len(rows), rows), tuple(piv))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, LinMap(field, n, 0, []), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, LinMap.identity(field, n), tuple(range(n)))

    def coordinates(self, v: VectorLike) -> list:
        """Coordinates of a member vector in this basis (membership not checked)."""
        v = v if isinstance(v, dict) else as_vector(self.field, v)
        return [v.get(c, 0) for c in self.coords]

    def residual(self, v: VectorLike) -> Vector:
        """``v`` minus its candidate expansion; zero iff ``v`` lies in the subspace."""
        v = v if isinstance(v, dict) else as_vector(self.field, v)
        r = dict(v)
        for coef, b in zip(self.coordinates(v), self.inclusion._cols):
            if coef:
                _axpy(self.field, r, self.field.neg(coef), b)
        return r

    def contains(self, v: VectorLike) -> bool:
        return not self.residual(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.inclusion._cols)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains_subspace(other))

    __hash__ = None

    def coordinate_map(self) -> LinMap:
        """A left inverse of ``inclusion`` (valid on the subspace)."""
        cols: list[dict] = [{} for _ in range(self.ambient_dim)]
        for i, c in enumerate(self.coords):
            cols[c] = {i: 1}
        return LinMap(self.field, self.dim, self.ambient_dim, cols)

    def restrict(self, m: LinMap, target: "Subspace | None" = None) -> LinMap:
        """Matrix of ``m`` restricted to this subspace, in the basis of ``target``.

        Raises ValueError if the image leaves ``target``.
        """
        target = self if target is None else target
        cols = []
        for b in self.inclusion._cols:
            img = m.apply(b)
            if target.residual(img):
                raise ValueError("image is not contained in the target subspace")
            cols.append({i: x for i, x in enumerate(target.coordinates(img)) if x})
        return LinMap(self.field, target.dim, self.dim, cols)

    def corestrict(self, m: LinMap) -> LinMap:
        """Columns of ``m`` (which must land in this subspace) in this basis."""
        cols = []
        for img in m._cols:
            if self.residual(img):
                raise ValueError("image is not contained in the target subspace")
            cols.append({i: x for i, x in enumerate(self.coordinates(img)) if x})
        return LinMap(self.field, self.dim, m.cols, cols)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient_dim,
                             self.inclusion.columns() + other.inclusion.columns())

    def intersection(self, other: "Subspace") -> "Subspace":
        # kernel of [inc_self | -inc_other]
        k = kernel_basis(hstack([self.inclusion, -other.inclusion]))
        vecs = [self.inclusion.apply({i: x for i, x in v.items() if i < self.dim})
                for v in k.inclusion._cols]
        return Subspace.span(self.field, self.ambient_dim, vecs)

    def tensor(self, other: "Subspace") -> "Subspace":
        inc = tensor(self.inclusion, other.inclusion)
        coords = tuple(a * other.ambient_dim + b for a in self.coords for b in other.coords)
        return Subspace(self.field, self.ambient_dim * other.ambient_dim, inc, coords)


def kernel_basis(m: LinMap) -> Subspace:
    """Basis of ``{v : m(v) = 0}``; one vector per free column, free entry 1."""
    field = m.field
    rows, piv = _rref(field, m.row_dicts())
    pivset = set(piv)
    free = [c for c in range(m.cols) if c not in pivset]
    # column f of the kernel: e_f - sum_i R_i[f] e_{piv_i}
    by_free: dict[int, dict] = {f: {f: 1} for f in free}
    for r, pc in zip(rows, piv):
        for c, x in r.items():
            if c != pc:
                by_free[c][pc] = field.neg(x)
    inc = LinMap(field, m.cols, len(free), [by_free[f] for f in free])
    return Subspace(field, m.cols, inc, tuple(free))


def image(m: LinMap) -> Subspace:
    return Subspace.span(m.field, m.rows, m._cols)


def solve(m: LinMap, target: VectorLike):
    """A particular solution of ``m x = target`` (free variables zero), or None."""
    field = m.field
    t = target if isinstance(target, dict) else as_vector(field, target)
    if len(target) != m.rows and not isinstance(target, dict):
        raise ValueError(f"target length {len(target)} != rows {m.rows}")
    aug = m.cols
    rows = m.row_dicts()
    for r, x in t.items():
        rows[r][aug] = x
    red, piv = _rref(field, rows)
    if piv and piv[-1] == aug:
        return None
    sol: dict = {}
    for r, pc in zip(red, piv):
        x = r.get(aug, 0)
        if x:
            sol[pc] = x
    return sol


def solve_dense(m: LinMap, target: VectorLike):
    """Like :func:`solve` but returns a dense list or None."""
    s = solve(m, target)
    return None if s is None else dense(s, m.cols)


@dataclass(frozen=True, eq=False)
class QuotientData:
    """A quotient F^n / killed with a chosen complement of coordinate vectors.

    The complement is spanned by the standard basis vectors at the non-pivot
    positions of the killed subspace's reduced echelon basis.
    """

    ambient_dim: int
    killed: Subspace
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.projection.rows


def quotient_by(killed: Subspace) -> QuotientData:
    field, n = killed.field, killed.ambient_dim
    rows, piv = _rref(field, killed.inclusion._cols)
    pivset = set(piv)
    keep = [c for c in range(n) if c not in pivset]
    pos = {c: i for i, c in enumerate(keep)}
    cols: list[dict] = [None] * n  # type: ignore[list-item]
    for c in keep:
        cols[c] = {pos[c]: 1}
    for r, pc in zip(rows, piv):
        col = {}
        for c, x in r.items():
            if c != pc:
                col[pos[c]] = field.neg(x)
        cols[pc] = col
    projection = LinMap(field, len(keep), n, cols)
    section = LinMap(field, n, len(keep), [{c: 1} for c in keep])
    return QuotientData(n, killed, projection, section)


def preimage(m: LinMap, target: Subspace) -> Subspace:
    """``{v : m(v) in target}``."""
    q = quotient_by(target)
    return kernel_basis(q.projection @ m)
