"""
JSON documents of named objects given by structure constants.

A document is ``{"version": 1, "field": {"kind": "Q"|"Fp", "p": int},
"objects": {name: record}}``.  Scalars are strings (``"5"``, ``"-3/7"``),
maps are ``{"rows": r, "cols": c, "entries": [[i, j, "x"], ...]}``.  A
record may carry its own ``"field"``; references to other objects are
either a name or an inline record.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .comodule import LEFT, RIGHT, CoactionData, ComoduleData
from .coverings import FiniteCovering
from .extensions import FieldExtensionData
from .fibred import FibredAlgebra, assemble_fibred
from .galois import StrongConnection
from .groups import FiniteGroup, GSet
from .hopf import AlgebraData, CoalgebraData, HopfData
from .linalg import FieldError, FieldSpec, LinMap, Subspace

FORMAT_VERSION = 1
MAX_DIM = 64


class InputError(ValueError):
    """Malformed or inconsistent input; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


class ResolutionError(InputError):
    def __init__(self, name: str, available):
        super().__init__(f"unknown object {name!r}; available: {', '.join(sorted(available))}")
        self.name = name
        self.available = sorted(available)


# scalars, fields, maps -------------------------------------------------------


def field_to_json(f: FieldSpec) -> dict:
    return {"kind": "Q"} if f.p == 0 else {"kind": "Fp", "p": f.p}


def field_from_json(d: Any, where: str = "field") -> FieldSpec:
    if isinstance(d, str):
        return parse_field_flag(d)
    if not isinstance(d, dict) or d.get("kind") not in ("Q", "Fp"):
        raise InputError("field must be {\"kind\": \"Q\"} or {\"kind\": \"Fp\", \"p\": prime}", where)
    if d["kind"] == "Q":
        return FieldSpec(0)
    p = d.get("p")
    if not isinstance(p, int):
        raise InputError("Fp field needs an integer p", where)
    try:
        return FieldSpec(p)
    except FieldError as exc:
        raise InputError(str(exc), where) from None


def parse_field_flag(s: str) -> FieldSpec:
    """``Q``, ``F5`` or ``Fp:5``."""
    t = s.strip()
    try:
        if t in ("Q", "QQ"):
            return FieldSpec(0)
        if t.startswith("Fp:"):
            return FieldSpec(int(t[3:]))
        if t.startswith("F"):
            return FieldSpec(int(t[1:]))
    except (ValueError, FieldError) as exc:
        raise InputError(f"bad field {s!r}: {exc}") from None
    raise InputError(f"bad field {s!r}; use Q or F<p>")


def scalar_from_json(f: FieldSpec, tok: Any, where: str):
    if isinstance(tok, bool) or not isinstance(tok, (str, int)):
        raise InputError(f"scalar must be a string, got {tok!r}", where)
    try:
        return f.parse(str(tok))
    except FieldError as exc:
        raise InputError(f"{exc} (token {str(tok)!r})", where) from None


def linmap_to_json(m: LinMap) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[i, j, str(x)] for i, j, x in m.entries()]}


def _int(d: dict, key: str, where: str) -> int:
    v = d.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"{key!r} must be a non-negative integer", where)
    return v


def linmap_from_json(f: FieldSpec, d: Any, where: str, shape: Optional[tuple] = None) -> LinMap:
    if not isinstance(d, dict):
        raise InputError("map must be an object with rows, cols, entries", where)
    rows, cols = _int(d, "rows", where), _int(d, "cols", where)
    if shape is not None and (rows, cols) != shape:
        raise InputError(f"map must be {shape[0]}x{shape[1]}, got {rows}x{cols}", where)
    entries = d.get("entries")
    if not isinstance(entries, list):
        raise InputError("'entries' must be a list", where)
    cols_ = [{} for _ in range(cols)]
    seen = set()
    for k, e in enumerate(entries):
        w = f"{where}.entries[{k}]"
        if not isinstance(e, list) or len(e) != 3:
            raise InputError("entry must be [row, col, scalar]", w)
        i, j, tok = e
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < rows and 0 <= j < cols):
            raise InputError(f"index ({i}, {j}) outside {rows}x{cols}", w)
        if (i, j) in seen:
            raise InputError(f"duplicate entry at ({i}, {j})", w)
        seen.add((i, j))
        x = scalar_from_json(f, tok, w + "[2]")
        if x:
            cols_[j][i] = x
    return LinMap(f, rows, cols, cols_)


def vector_from_json(f: FieldSpec, v: Any, n: int, where: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise InputError(f"vector must be a list of {n} scalars", where)
    return tuple(scalar_from_json(f, t, f"{where}[{k}]") for k, t in enumerate(v))


def _vec_json(v) -> list:
    return [str(x) for x in v]


# records -------------------------------------------------------------------


class Document:
    """Parsed objects, resolved lazily and memoised so shared references stay shared."""

    def __init__(self, raw: dict, field_override: Optional[FieldSpec] = None, source: str = "<input>"):
        if not isinstance(raw, dict):
            raise InputError("top level must be an object", source)
        if raw.get("version") != FORMAT_VERSION:
            raise InputError(f"unsupported version {raw.get('version')!r}; expected {FORMAT_VERSION}", source)
        self.field = field_override or field_from_json(raw.get("field", {"kind": "Q"}), "field")
        objs = raw.get("objects")
        if not isinstance(objs, dict):
            raise InputError("'objects' must be an object", source)
        self.records = objs
        self._cache: dict = {}
        self._resolving: set = set()

    def names(self) -> list:
        return sorted(self.records)

    def kind(self, name: str) -> str:
        rec = self.records.get(name)
        if rec is None:
            raise ResolutionError(name, self.records)
        return rec.get("type", "?") if isinstance(rec, dict) else "?"

    def get(self, name: str):
        if name in self._cache:
            return self._cache[name]
        if name not in self.records:
            raise ResolutionError(name, self.records)
        if name in self._resolving:
            raise InputError("circular reference", f"objects.{name}")
        self._resolving.add(name)
        try:
            obj = self._build(self.records[name], f"objects.{name}", name)
        finally:
            self._resolving.discard(name)
        self._cache[name] = obj
        return obj

    def _ref(self, ref: Any, where: str):
        if isinstance(ref, str):
            return self.get(ref)
        if isinstance(ref, dict):
            return self._build(ref, where, "")
        raise InputError("reference must be a name or an inline record", where)

    def _build(self, rec: Any, where: str, name: str):
        if not isinstance(rec, dict) or not isinstance(rec.get("type"), str):
            raise InputError("record must be an object with a 'type'", where)
        builder = _BUILDERS.get(rec["type"])
        if builder is None:
            raise InputError(f"unknown record type {rec['type']!r}; known: {', '.join(sorted(_BUILDERS))}", where)
        f = field_from_json(rec["field"], where + ".field") if "field" in rec else self.field
        try:
            return builder(self, rec, f, where, name)
        except InputError:
            raise
        except (ValueError, IndexError) as exc:
            raise InputError(str(exc), where) from None


def _dim(rec: dict, where: str) -> int:
    n = _int(rec, "dim", where)
    if n > MAX_DIM:
        raise InputError(f"dimension {n} exceeds the bound {MAX_DIM}", where)
    return n


def _algebra(rec: dict, f: FieldSpec, where: str) -> AlgebraData:
    n = _dim(rec, where)
    mult = linmap_from_json(f, rec.get("mult"), where + ".mult", (n, n * n))
    unit = vector_from_json(f, rec.get("unit"), n, where + ".unit")
    return AlgebraData(f, n, mult, unit)


def _build_group(doc, rec, f, where, name):
    table = rec.get("table")
    if not isinstance(table, list):
        raise InputError("'table' must be a list of rows", where)
    return FiniteGroup(tuple(tuple(r) for r in table), rec.get("identity", 0), name)


def _build_gset(doc, rec, f, where, name):
    g = doc._ref(rec.get("group"), where + ".group")
    if not isinstance(g, FiniteGroup):
        raise InputError("'group' must refer to a group", where)
    return GSet(g, tuple(tuple(r) for r in rec.get("action", [])), name)


def _build_hopf(doc, rec, f, where, name):
    a = _algebra(rec, f, where)
    n = a.dim
    comult = linmap_from_json(f, rec.get("comult"), where + ".comult", (n * n, n))
    counit = linmap_from_json(f, rec.get("counit"), where + ".counit", (1, n))
    antipode = linmap_from_json(f, rec.get("antipode"), where + ".antipode", (n, n))
    names = rec.get("basis_names")
    return HopfData(a, CoalgebraData(f, n, comult, counit), antipode, name,
                    tuple(names) if isinstance(names, list) else None)


def _build_comodule(doc, rec, f, where, name):
    h = doc._ref(rec.get("hopf"), where + ".hopf")
    if not isinstance(h, HopfData):
        raise InputError("'hopf' must refer to a Hopf algebra", where)
    side = rec.get("side", LEFT)
    if side not in (LEFT, RIGHT):
        raise InputError("side must be 'left' or 'right'", where)
    n = _dim(rec, where)
    co = linmap_from_json(h.field, rec.get("coaction"), where + ".coaction", (h.dim * n, n))
    return ComoduleData(h, side, n, co, name)


def _build_coaction(doc, rec, f, where, name):
    h = doc._ref(rec.get("hopf"), where + ".hopf")
    if not isinstance(h, HopfData):
        raise InputError("'hopf' must refer to a Hopf algebra", where)
    a = _algebra(rec, h.field, where)
    delta = linmap_from_json(h.field, rec.get("delta"), where + ".delta", (a.dim * h.dim, a.dim))
    return CoactionData(a, h, delta, name)


def _build_extension(doc, rec, f, where, name):
    a = _algebra(rec, f, where)
    auts = rec.get("automorphisms")
    if not isinstance(auts, list):
        raise InputError("'automorphisms' must be a list of maps", where)
    maps = [linmap_from_json(f, m, f"{where}.automorphisms[{k}]", (a.dim, a.dim)) for k, m in enumerate(auts)]
    return FieldExtensionData(f, a, tuple(maps), name)


def _build_covering(doc, rec, f, where, name):
    total, base = _int(rec, "total", where), _int(rec, "base", where)
    return FiniteCovering(total, base, tuple(rec.get("projection", [])),
                          tuple(tuple(h) for h in rec.get("deck", [])), name)


def _build_fibred(doc, rec, f, where, name):
    if "fibers" in rec:
        fibers = [doc._ref(r, f"{where}.fibers[{k}]") for k, r in enumerate(rec["fibers"])]
        if not fibers or not all(isinstance(c, CoactionData) for c in fibers):
            raise InputError("'fibers' must be a non-empty list of coactions", where)
        return assemble_fibred(fibers, name)
    total = doc._ref(rec.get("total"), where + ".total")
    if not isinstance(total, CoactionData):
        raise InputError("'total' must refer to a coaction", where)
    m = _int(rec, "base_points", where)
    theta = linmap_from_json(total.field, rec.get("theta"), where + ".theta", (total.dim, m))
    return FibredAlgebra(m, total, theta, name)


def _build_subalgebra(doc, rec, f, where, name):
    c = doc._ref(rec.get("of"), where + ".of")
    if not isinstance(c, CoactionData):
        raise InputError("'of' must refer to a coaction", where)
    basis = rec.get("basis")
    if not isinstance(basis, list):
        raise InputError("'basis' must be a list of vectors", where)
    vecs = [vector_from_json(c.field, v, c.dim, f"{where}.basis[{k}]") for k, v in enumerate(basis)]
    return NamedSubalgebra(c, Subspace.span(c.field, c.dim, vecs))


def _build_connection(doc, rec, f, where, name):
    c = doc._ref(rec.get("coaction"), where + ".coaction")
    if not isinstance(c, CoactionData):
        raise InputError("'coaction' must refer to a coaction", where)
    ell = linmap_from_json(c.field, rec.get("ell"), where + ".ell", (c.dim * c.dim, c.hopf.dim))
    return ConnectionRecord(c, StrongConnection(ell))


class NamedSubalgebra:
    """A declared base subalgebra of a coaction's algebra."""

    def __init__(self, coaction: CoactionData, subspace: Subspace):
        self.coaction = coaction
        self.subspace = subspace


class ConnectionRecord:
    def __init__(self, coaction: CoactionData, connection: StrongConnection):
        self.coaction = coaction
        self.connection = connection


_BUILDERS = {
    "group": _build_group,
    "gset": _build_gset,
    "hopf": _build_hopf,
    "comodule": _build_comodule,
    "coaction": _build_coaction,
    "extension": _build_extension,
    "covering": _build_covering,
    "fibred": _build_fibred,
    "subalgebra": _build_subalgebra,
    "connection": _build_connection,
}


def parse_document(text: str, field_override: Optional[FieldSpec] = None, source: str = "<input>") -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from None
    return Document(raw, field_override, source)


def load_document(path: str, field_override: Optional[FieldSpec] = None) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, field_override, path)


# serialization ---------------------------------------------------------------


class Serializer:
    """Turn named objects into records; shared sub-objects become name references."""

    def __init__(self, objects: dict, field: FieldSpec):
        self.objects = objects
        self.field = field
        self._names = {id(o): n for n, o in objects.items()}

    def ref(self, obj) -> Any:
        name = self._names.get(id(obj))
        return name if name is not None else self.record(obj)

    def _with_field(self, rec: dict, f: FieldSpec) -> dict:
        if f != self.field:
            rec["field"] = field_to_json(f)
        return rec

    def _algebra(self, a: AlgebraData) -> dict:
        return {"dim": a.dim, "mult": linmap_to_json(a.mult), "unit": _vec_json(a.unit)}

    def record(self, obj) -> dict:
        if isinstance(obj, FiniteGroup):
            return {"type": "group", "table": [list(r) for r in obj.table], "identity": obj.identity}
        if isinstance(obj, GSet):
            return {"type": "gset", "group": self.ref(obj.group), "action": [list(r) for r in obj.action]}
        if isinstance(obj, HopfData):
            rec = {"type": "hopf", **self._algebra(obj.algebra), "comult": linmap_to_json(obj.comult),
                   "counit": linmap_to_json(obj.counit), "antipode": linmap_to_json(obj.antipode)}
            if obj.basis_names:
                rec["basis_names"] = list(obj.basis_names)
            return self._with_field(rec, obj.field)
        if isinstance(obj, ComoduleData):
            return {"type": "comodule", "hopf": self.ref(obj.hopf), "side": obj.side, "dim": obj.dim,
                    "coaction": linmap_to_json(obj.coaction)}
        if isinstance(obj, CoactionData):
            return {"type": "coaction", "hopf": self.ref(obj.hopf), **self._algebra(obj.algebra),
                    "delta": linmap_to_json(obj.delta)}
        if isinstance(obj, FieldExtensionData):
            rec = {"type": "extension", **self._algebra(obj.algebra),
                   "automorphisms": [linmap_to_json(m) for m in obj.automorphisms]}
            return self._with_field(rec, obj.base)
        if isinstance(obj, FiniteCovering):
            return {"type": "covering", "total": obj.total, "base": obj.base,
                    "projection": list(obj.projection), "deck": [list(h) for h in obj.deck]}
        if isinstance(obj, FibredAlgebra):
            return {"type": "fibred", "base_points": obj.base_points, "total": self.ref(obj.total),
                    "theta": linmap_to_json(obj.theta)}
        if isinstance(obj, NamedSubalgebra):
            return {"type": "subalgebra", "of": self.ref(obj.coaction),
                    "basis": [_vec_json(v) for v in obj.subspace.basis]}
        if isinstance(obj, ConnectionRecord):
            return {"type": "connection", "coaction": self.ref(obj.coaction),
                    "ell": linmap_to_json(obj.connection.ell)}
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json_dict(objects: dict, field: FieldSpec) -> dict:
    ser = Serializer(objects, field)
    return {"version": FORMAT_VERSION, "field": field_to_json(field),
            "objects": {n: ser.record(o) for n, o in sorted(objects.items())}}


def dumps(doc: dict) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def document_objects(doc: Document) -> dict:
    return {n: doc.get(n) for n in doc.names()}
