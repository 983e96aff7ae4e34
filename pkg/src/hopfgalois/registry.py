"""Named example objects, shared by the CLI, the tests and ``gen``."""

from __future__ import annotations

import random
from typing import Optional

from .classical import function_hopf, group_algebra, gset_comodule_algebra, rep_to_comodule, sign_rep
from .comodule import ComoduleData, contragredient, regular_comodule, trivial_comodule
from .coverings import bundled_coverings
from .extensions import bundled_extensions
from .fibred import assemble_fibred
from .galois import hopf_self_coaction
from .groups import (
    GSet,
    cyclic_group,
    enumerate_gsets,
    regular_gset,
    small_groups,
    symmetric_group,
    trivial_gset,
)
from .linalg import FieldSpec


def registry(field: Optional[FieldSpec] = None) -> dict:
    """Bundled examples over ``field`` (default Q); extensions keep their own fields."""
    f = FieldSpec(0) if field is None else field
    objs: dict = {}
    z2, z3, s3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
    objs.update({"z2": z2, "z3": z3, "s3": s3})
    h2, h3, hs3 = function_hopf(z2, f), function_hopf(z3, f), function_hopf(s3, f)
    objs.update({"z2-hopf": h2, "z3-hopf": h3, "s3-hopf": hs3, "z2-group-algebra": group_algebra(z2, f)})

    reg = regular_comodule(h2)
    objs["z2-trivial"] = trivial_comodule(h2)
    objs["z2-H"] = reg
    dual = contragredient(reg)
    objs["z2-Hstar"] = ComoduleData(h2, dual.side, dual.dim, dual.coaction, "H*")
    if f.p != 2:
        objs["z2-sign"] = rep_to_comodule(sign_rep(z2, f), h2)

    free2 = regular_gset(z2)
    fix3 = GSet(z2, ((0, 1), (1, 0), (2, 2)), "z2-fixpoint-3")
    objs["z2-free-2-set"] = free2
    objs["z2-fixpoint-3-set"] = fix3
    objs["z2-free-2"] = gset_comodule_algebra(free2, f, h2)
    objs["z2-fixpoint-3"] = gset_comodule_algebra(fix3, f, h2)
    objs["z2-trivial-3"] = gset_comodule_algebra(trivial_gset(z2, 3), f, h2)
    objs["z2-free-4"] = gset_comodule_algebra(free2.disjoint_union(free2), f, h2)
    objs["z3-free-3"] = gset_comodule_algebra(regular_gset(z3), f, h3)
    objs["s3-free-6"] = gset_comodule_algebra(regular_gset(s3), f, hs3)
    objs["z2-hopf-self"] = hopf_self_coaction(h2)

    objs["fibred-all-free"] = assemble_fibred([objs["z2-free-2"], objs["z2-free-2"]], "fibred-all-free")
    objs["fibred-mixed"] = assemble_fibred([objs["z2-free-2"], objs["z2-fixpoint-3"]], "fibred-mixed")
    objs["fibred-single"] = assemble_fibred([objs["z2-fixpoint-3"]], "fibred-single")

    objs.update(bundled_extensions())
    objs.update(bundled_coverings())
    return objs


def random_gsets(seed: int, count: int, max_points: int = 8, max_order: int = 6) -> list:
    """``count`` G-sets drawn from the isomorphism classes, reproducible from ``seed``."""
    rng = random.Random(seed)
    pool = []
    for g in small_groups(max_order):
        pool.extend(enumerate_gsets(g, max_points))
    return [pool[rng.randrange(len(pool))] for _ in range(count)]
