"""Command-line entry point: verdict reports over JSON documents and the sweep harness."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import io as hio
from .classical import composite_equals_can, function_hopf, gset_comodule_algebra
from .comodule import CoactionData, ComoduleData, conditional_expectation, invariants, verify_coaction, verify_comodule
from .coverings import FiniteCovering, covering_regularity_check, pullbacks
from .extensions import FieldExtensionData, galois_coaction, galois_criterion
from .fibred import FibredAlgebra, fibred_freeness_check, verify_fibred
from .galois import (
    WellDefinednessError,
    canonical_map,
    check_base,
    connection_axioms,
    principality_check,
    scalars,
    strong_connection_solve,
    strong_monoidality,
    surjectivity_implies_bijectivity_crosscheck,
)
from .groups import FiniteGroup, GSet, enumerate_gsets, is_free, small_groups
from .hopf import Check, HopfData, StructureError, haar_integral, verify_hopf
from .linalg import FieldSpec, image
from .registry import random_gsets, registry

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_MAX_POINTS, DEFAULT_MAX_ORDER = 8, 6


class Report:
    """A verdict with its checks; ``duration`` is kept out of the deterministic body."""

    def __init__(self, command: str, obj: str):
        self.command = command
        self.object = obj
        self.checks: list = []
        self.data: dict = {}
        self.duration = 0.0
        self.verdict: Optional[bool] = None

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def body(self) -> dict:
        ok = self.verdict if self.verdict is not None else all(c.status != "fail" for c in self.checks)
        return {
            "command": self.command,
            "object": self.object,
            "verdict": "pass" if ok else "fail",
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
        }

    @property
    def passed(self) -> bool:
        return self.body()["verdict"] == "pass"

    def to_json(self) -> str:
        d = self.body()
        d["duration_seconds"] = round(self.duration, 3)
        return json.dumps(d, indent=2, sort_keys=True)

    def to_text(self) -> str:
        b = self.body()
        lines = [f"{b['command']} {b['object']}: {b['verdict'].upper()}"]
        for c in b["checks"]:
            extra = f" ({c['reason']})" if c.get("reason") else ""
            lines.append(f"  [{c['status']}] {c['name']}{extra}")
        for k, v in sorted(b["data"].items()):
            lines.append(f"  {k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}")
        lines.append(f"  duration: {self.duration:.3f}s")
        return "\n".join(lines)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _as_coaction(obj, name: str, field: FieldSpec) -> tuple:
    """(coaction, default declared base or None)."""
    if isinstance(obj, CoactionData):
        return obj, None
    if isinstance(obj, GSet):
        return gset_comodule_algebra(obj, field), None
    if isinstance(obj, FieldExtensionData):
        c, _ = galois_coaction(obj)
        return c, None
    if isinstance(obj, FiniteCovering):
        s = obj.gset()
        c = gset_comodule_algebra(s, field)
        return c, pullbacks(obj, c.field)
    if isinstance(obj, FibredAlgebra):
        return obj.total, None
    if isinstance(obj, hio.ConnectionRecord):
        return obj.coaction, None
    raise hio.InputError(f"{name!r} is a {type(obj).__name__}; expected a coaction, G-set, extension or covering")


def _resolve_base(doc: hio.Document, c: CoactionData, base: Optional[str]):
    if base is None:
        return None
    if base in ("Q", "F", "scalars") or (base.startswith("F") and base[1:].isdigit()):
        return scalars(c)
    obj = doc.get(base)
    if not isinstance(obj, hio.NamedSubalgebra):
        raise hio.InputError(f"--base {base!r} is not a subalgebra record")
    if obj.subspace.ambient_dim != c.dim:
        raise hio.InputError(f"--base {base!r} lives in a space of the wrong dimension")
    return obj.subspace


# commands ------------------------------------------------------------------


def cmd_verify(doc: hio.Document, name: str) -> Report:
    obj = doc.get(name)
    rep = Report("verify", name)
    rep.data["type"] = doc.kind(name)
    if isinstance(obj, HopfData):
        vr = verify_hopf(obj)
        rep.checks.extend(vr.checks)
        phi = haar_integral(obj) if vr.ok else None
        rep.data["haar_integral"] = None if phi is None else [str(x) for x in phi.values()]
    elif isinstance(obj, CoactionData):
        rep.checks.extend(verify_coaction(obj).checks)
        rep.data["invariants_dim"] = invariants(obj).dim
    elif isinstance(obj, ComoduleData):
        rep.checks.extend(verify_comodule(obj).checks)
    elif isinstance(obj, FieldExtensionData):
        rep.add(Check("automorphisms form a group", "pass"))
        c, _ = galois_coaction(obj)
        rep.checks.extend(verify_coaction(c).checks)
        crit = galois_criterion(obj)
        rep.data["degree"] = obj.degree
        rep.data["aut_order"] = obj.group.order
        rep.data["galois_by_dim_count"] = crit.dim_count
        rep.data["galois_by_can"] = crit.hopf_galois
    elif isinstance(obj, FibredAlgebra):
        rep.checks.extend(verify_coaction(obj.total).checks)
        rep.checks.extend(verify_fibred(obj).checks)
    elif isinstance(obj, hio.ConnectionRecord):
        rep.checks.extend(connection_axioms(obj.coaction, obj.connection.ell))
    elif isinstance(obj, (FiniteGroup, GSet, FiniteCovering)):
        rep.add(Check("structure axioms", "pass", "checked on load"))
    elif isinstance(obj, hio.NamedSubalgebra):
        try:
            check_base(obj.coaction, obj.subspace)
            rep.add(Check("unital subalgebra", "pass"))
        except StructureError as exc:
            rep.add(Check("unital subalgebra", "fail", str(exc)))
    return rep


def cmd_can(doc: hio.Document, name: str, base: Optional[str] = None) -> Report:
    obj = doc.get(name)
    c, default_base = _as_coaction(obj, name, doc.field)
    declared = _resolve_base(doc, c, base)
    declared = default_base if declared is None else declared
    can = canonical_map(c, declared)
    rep = Report("can", name)
    rep.add(Check("well defined", _status(can.well_defined)))
    rep.add(Check("surjective", _status(can.surjective), f"rank {can.rank} of {can.codomain_dim}"))
    rep.add(Check("injective", _status(can.injective), f"rank {can.rank} of {can.domain_dim}"))
    rep.data.update(can.to_dict())
    if declared is None:
        rep.data["surjective_implies_injective"] = surjectivity_implies_bijectivity_crosscheck(c, can).to_dict()
    rep.verdict = can.bijective
    return rep


def cmd_connection(doc: hio.Document, name: str, emit: Optional[str] = None) -> tuple:
    obj = doc.get(name)
    c, _ = _as_coaction(obj, name, doc.field)
    rep = Report("connection", name)
    conn = strong_connection_solve(c)
    if conn is None:
        rep.add(Check("strong connection", "fail", "infeasible"))
        rep.data["status"] = "infeasible"
        return rep, None
    rep.checks.extend(connection_axioms(c, conn.ell))
    rep.data["status"] = "found"
    rep.data["solution_space_dim"] = conn.nullity
    rep.data["ell"] = hio.linmap_to_json(conn.ell)
    out = None
    if emit:
        objs = {f"{name}-coaction": c, f"{name}-connection": hio.ConnectionRecord(c, conn), "hopf": c.hopf}
        out = hio.dumps(hio.to_json_dict(objs, doc.field))
    return rep, out


def cmd_monoidal(doc: hio.Document, name: str, comodules: Optional[list] = None) -> Report:
    obj = doc.get(name)
    c, _ = _as_coaction(obj, name, doc.field)
    vs = []
    for cname in comodules or []:
        v = doc.get(cname)
        if not isinstance(v, ComoduleData):
            raise hio.InputError(f"{cname!r} is not a comodule")
        if v.hopf is not c.hopf:
            raise hio.InputError(f"comodule {cname!r} is over a different Hopf algebra than {name!r}")
        vs.append(ComoduleData(v.hopf, v.side, v.dim, v.coaction, cname))
    mono = strong_monoidality(c, vs)
    rep = Report("monoidal", name)
    if mono.defaults_used:
        rep.data["note"] = "no comodules given; defaults trivial, H, H* applied"
    for r in mono.reports:
        rep.add(Check(f"beta {r.pair[0]} x {r.pair[1]}", _status(r.bijective), f"rank {r.rank}"))
    can = canonical_map(c)
    has_regular = mono.defaults_used or any(v.side == "left" and v.coaction == c.hopf.comult for v in vs)
    if has_regular:
        rep.add(Check("agrees with can", _status(mono.all_bijective == can.bijective)))
    else:
        rep.add(Check("agrees with can", "skip", "comodule list does not contain H"))
    rep.data["pairs"] = [r.to_dict() for r in mono.reports]
    rep.data["can_bijective"] = can.bijective
    rep.verdict = mono.all_bijective and all(ch.status != "fail" for ch in rep.checks)
    return rep


def cmd_fibred(doc: hio.Document, name: str) -> Report:
    obj = doc.get(name)
    if not isinstance(obj, FibredAlgebra):
        raise hio.InputError(f"{name!r} is not a fibred algebra")
    rep = Report("fibred", name)
    rep.checks.extend(verify_fibred(obj).checks)
    try:
        fr = fibred_freeness_check(obj)
    except WellDefinednessError as exc:
        rep.add(Check("fiber coactions well defined", "fail", str(exc),
                      witness=[str(x) for x in exc.witness] if exc.witness else None))
        rep.verdict = False
        return rep
    rep.add(Check("global can bijective", _status(fr.global_can.bijective)))
    for x, r in enumerate(fr.fiber_cans):
        rep.add(Check(f"fiber {x} can bijective", _status(r.bijective), f"rank {r.rank}"))
    rep.add(Check("global <=> all fibers", _status(fr.agree)))
    rep.checks.extend(fr.diagrams)
    rep.add(Check("dimensions add over fibers", _status(fr.dims_add)))
    rep.add(Check("invariants add over fibers", _status(fr.invariants_add)))
    rep.data.update(fr.to_dict())
    rep.verdict = fr.global_can.bijective and fr.ok
    return rep


def cmd_cover(doc: hio.Document, name: str) -> Report:
    obj = doc.get(name)
    if not isinstance(obj, FiniteCovering):
        raise hio.InputError(f"{name!r} is not a covering")
    cr = covering_regularity_check(obj, doc.field)
    rep = Report("cover", name)
    rep.add(Check("combinatorially regular", _status(cr.regular)))
    rep.add(Check("can bijective", _status(cr.can.bijective), f"rank {cr.can.rank}"))
    if cr.theta is None:
        rep.add(Check("invariants are pullbacks", "skip", "; ".join(cr.notes)))
    else:
        rep.add(Check("invariants are pullbacks", _status(cr.theta)))
    rep.add(Check("verdicts agree", _status(cr.agree)))
    rep.data.update(cr.to_dict())
    rep.verdict = cr.regular and cr.agree
    return rep


# the sweep -----------------------------------------------------------------


def run_instance(s: GSet, field: FieldSpec) -> dict:
    """The agreement battery on one G-set; each entry is pass, violation or skip."""
    h = function_hopf(s.group, field)
    c = gset_comodule_algebra(s, field, h)
    can = canonical_map(c)
    free = is_free(s)
    out: dict = {}

    def record(key, ok, skip_reason=None):
        out[key] = "skip" if skip_reason else ("pass" if ok else "violation")

    record("freeness <=> can", free == can.bijective)
    record("density <=> can", can.span_full == can.bijective)
    mono = strong_monoidality(c)
    record("beta <=> can", mono.all_bijective == can.bijective)
    pr = principality_check(c)
    record("connection <=> principal", pr.agree)
    record("principal <=> can", pr.principal == can.bijective)
    if free:
        record("composite = can", composite_equals_can(s, field, c).ok)
    phi = haar_integral(h)
    cross = surjectivity_implies_bijectivity_crosscheck(c, can, phi is not None)
    record("surjective => injective", cross.status != "violation",
           None if phi is not None else f"characteristic {field.characteristic} divides |G|")
    if phi is not None:
        e = conditional_expectation(c, phi)
        record("E_B idempotent onto B", e @ e == e and image(e) == invariants(c).subspace)
    else:
        record("E_B idempotent onto B", True, "no Haar integral")
    return {"instance": f"{s.group.name}:{s.name}", "points": s.points, "free": free,
            "can_bijective": can.bijective, "checks": out}


def _run_packed(args):
    s, p = args
    return run_instance(s, FieldSpec(p))


def sweep_instances(max_points: int, max_order: int) -> list:
    out = []
    for g in small_groups(max_order):
        out.extend(enumerate_gsets(g, max_points))
    return out


def cmd_suite(max_points: int, max_order: int, field: FieldSpec, jobs: int = 1) -> Report:
    if max_order > 7:
        raise hio.InputError("--max-order is limited to 7")
    instances = sweep_instances(max_points, max_order)
    packed = [(s, field.p) for s in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_packed, packed, chunksize=4))
    else:
        results = [_run_packed(a) for a in packed]
    results.sort(key=lambda r: r["instance"])
    violations = [(r["instance"], k) for r in results for k, v in sorted(r["checks"].items()) if v == "violation"]
    skipped = sum(1 for r in results for v in r["checks"].values() if v == "skip")
    rep = Report("suite", f"points<={max_points}, order<={max_order}, field {field}")
    totals: dict = {}
    for r in results:
        for k, v in r["checks"].items():
            totals.setdefault(k, {"pass": 0, "violation": 0, "skip": 0})[v] += 1
    for k in sorted(totals):
        t = totals[k]
        status = "fail" if t["violation"] else ("skip" if not t["pass"] else "pass")
        rep.add(Check(k, status, f"{t['pass']} pass, {t['violation']} violations, {t['skip']} skipped"))
    rep.data["instances"] = len(results)
    rep.data["free_instances"] = sum(r["free"] for r in results)
    rep.data["violations"] = [f"{i}: {k}" for i, k in violations]
    rep.data["skipped_checks"] = skipped
    rep.data["summary"] = f"{len(results)} instances, {len(violations)} violations, {skipped} skipped"
    rep.verdict = not violations
    return rep


def cmd_gen(field: FieldSpec, seed: int, count: int) -> str:
    objs = registry(field)
    for k, s in enumerate(random_gsets(seed, count)):
        objs[f"random-{k}"] = gset_comodule_algebra(s, field)
    return hio.dumps(hio.to_json_dict(objs, field))


# argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or F<p>; overrides the document's default field")
    common.add_argument("--output", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for generated test vectors")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the suite")

    p = argparse.ArgumentParser(prog="hopfgalois", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in ("verify", "can", "connection", "monoidal", "fibred", "cover"):
        sp = sub.add_parser(cmd, parents=[common])
        sp.add_argument("input")
        sp.add_argument("name")
        if cmd == "can":
            sp.add_argument("--base", help="Q for the scalars, or a subalgebra record name")
        if cmd == "connection":
            sp.add_argument("--emit", help="write the coaction and connection to this JSON file")
        if cmd == "monoidal":
            sp.add_argument("--comodules", default="", help="comma-separated comodule names")
    sp = sub.add_parser("suite", parents=[common])
    sp.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
    sp.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    sp = sub.add_parser("gen", parents=[common])
    sp.add_argument("path", help="output file, or - for stdout")
    sp.add_argument("--random", type=int, default=0, help="number of random G-set coactions to add")
    return p


def _emit(rep: Report, fmt: str, out) -> None:
    out.write((rep.to_json() if fmt == "json" else rep.to_text()) + "\n")


def main(argv: Optional[list] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        field = hio.parse_field_flag(args.field) if args.field else None
        if args.command == "gen":
            text = cmd_gen(field or FieldSpec(0), args.seed, args.random)
            if args.path == "-":
                out.write(text)
            else:
                with open(args.path, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return EXIT_PASS
        if args.command == "suite":
            rep = cmd_suite(args.max_points, args.max_order, field or FieldSpec(0), args.jobs)
        else:
            doc = hio.load_document(args.input, field)
            if args.command == "verify":
                rep = cmd_verify(doc, args.name)
            elif args.command == "can":
                rep = cmd_can(doc, args.name, args.base)
            elif args.command == "connection":
                rep, emitted = cmd_connection(doc, args.name, args.emit)
                if emitted is not None:
                    with open(args.emit, "w", encoding="utf-8") as fh:
                        fh.write(emitted)
            elif args.command == "monoidal":
                names = [n for n in args.comodules.split(",") if n]
                rep = cmd_monoidal(doc, args.name, names)
            elif args.command == "fibred":
                rep = cmd_fibred(doc, args.name)
            else:
                rep = cmd_cover(doc, args.name)
    except (hio.InputError, StructureError, ValueError) as exc:
        kind = "input error" if isinstance(exc, hio.InputError) else "invalid input"
        sys.stderr.write(f"{kind}: {exc}\n")
        return EXIT_INPUT
    rep.duration = time.perf_counter() - t0
    _emit(rep, args.output, out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
