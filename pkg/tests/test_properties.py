"""Randomised invariants over G-sets, Hopf algebras and comodules."""

from hypothesis import assume, given
from hypothesis import strategies as st

from hopfgalois.classical import function_hopf, group_algebra, gset_comodule_algebra
from hopfgalois.comodule import (
    LEFT,
    ComoduleData,
    coefficient_coalgebra,
    conditional_expectation,
    cotensor,
    direct_sum_comodule,
    invariants,
    regular_comodule,
    trivial_comodule,
    verify_comodule,
)
from hopfgalois.fibred import assemble_fibred, fibred_freeness_check
from hopfgalois.galois import canonical_map
from hopfgalois.groups import enumerate_gsets, small_groups
from hopfgalois.hopf import haar_integral
from hopfgalois.linalg import QQ, FieldSpec, LinMap, image, solve_dense, tensor
from oracles import is_free_brute, orbit_count

GROUPS = small_groups(6)
POOL = [s for g in GROUPS for s in enumerate_gsets(g, 5)]
FIELDS = [QQ, FieldSpec(2), FieldSpec(3), FieldSpec(5)]

BY_GROUP = [[s for s in POOL if s.group is g] for g in GROUPS]
gsets = st.sampled_from(POOL)
fields = st.sampled_from(FIELDS)
# several G-sets over one common group
same_group = st.sampled_from(BY_GROUP).flatmap(lambda sets: st.lists(st.sampled_from(sets), min_size=1, max_size=3))


def vectors(n, f):
    vals = st.integers(-5, 5) if f.p == 0 else st.integers(0, f.p - 1)
    return st.lists(vals, min_size=n, max_size=n).map(lambda xs: {i: f(x) for i, x in enumerate(xs) if f(x)})


@given(gsets, fields)
def test_invariants_are_orbit_functions(s, f):
    inv = invariants(gset_comodule_algebra(s, f))
    assert inv.dim == orbit_count(s.action)
    assert inv.contains_unit and inv.closed


@given(gsets, fields)
def test_can_bijective_iff_free(s, f):
    assert canonical_map(gset_comodule_algebra(s, f)).bijective == is_free_brute(s.action, s.group.order)


@given(gsets, fields, st.data())
def test_delta_multiplicative_on_elements(s, f, data):
    c = gset_comodule_algebra(s, f)
    a = data.draw(vectors(c.dim, f))
    b = data.draw(vectors(c.dim, f))
    ah = c.algebra.tensor_algebra(c.hopf.algebra)
    assert c.delta.apply(c.algebra.product(a, b)) == ah.product(c.delta.apply(a), c.delta.apply(b))


@given(gsets, fields)
def test_expectation_projects_onto_invariants(s, f):
    c = gset_comodule_algebra(s, f)
    phi = haar_integral(c.hopf)
    assume(phi is not None)
    e = conditional_expectation(c, phi)
    assert e @ e == e
    assert image(e) == invariants(c).subspace
    etriv = c.hopf.unit_map @ phi.phi
    assert c.delta @ e == tensor(LinMap.identity(f, c.dim), etriv) @ c.delta


@given(same_group)
def test_invariants_additive_over_unions(sets):
    s, t = sets[0], sets[-1]
    u = s.disjoint_union(t)
    dims = [invariants(gset_comodule_algebra(x, QQ)).dim for x in (s, t, u)]
    assert dims[2] == dims[0] + dims[1]


@given(gsets, st.integers(1, 2))
def test_cotensor_additive(s, k):
    c = gset_comodule_algebra(s, QQ)
    h = c.hopf
    v, w = regular_comodule(h), trivial_comodule(h, k)
    m = c.as_comodule()
    assert cotensor(m, direct_sum_comodule(v, w)).dim == cotensor(m, v).dim + cotensor(m, w).dim


@given(st.sampled_from(GROUPS), fields, st.data())
def test_hopf_identities_on_elements(g, f, data):
    for h in (function_hopf(g, f), group_algebra(g, f)):
        x = data.draw(vectors(h.dim, f))
        y = data.draw(vectors(h.dim, f))
        hh = h.algebra.tensor_algebra(h.algebra)
        assert h.comult.apply(h.algebra.product(x, y)) == hh.product(h.comult.apply(x), h.comult.apply(y))
        assert h.antipode.apply(h.algebra.product(x, y)) == h.algebra.product(h.antipode.apply(y),
                                                                            h.antipode.apply(x))
        assert h.antipode.apply(h.antipode.apply(x)) == x


@given(st.sampled_from(GROUPS), st.data())
def test_coefficient_coalgebra_basis_free(g, data):
    h = function_hopf(g, QQ)
    v = regular_comodule(h)
    n = v.dim
    shift = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    # unipotent change of basis: e_j -> e_j + shift[j] e_{j+1}
    p = LinMap.from_function(QQ, n, n, lambda j: {j: 1, **({j + 1: shift[j]} if j + 1 < n and shift[j] else {})})
    pinv = LinMap.from_columns(QQ, n, [solve_dense(p, {j: 1}) for j in range(n)])
    moved = ComoduleData(h, LEFT, n, tensor(LinMap.identity(QQ, h.dim), pinv) @ v.coaction @ p)
    assert verify_comodule(moved).ok
    assert coefficient_coalgebra(moved) == coefficient_coalgebra(v)


@given(same_group, fields)
def test_fibred_global_iff_fibers_on_random_products(parts, f):
    g = parts[0].group
    h = function_hopf(g, f)
    fa = assemble_fibred([gset_comodule_algebra(p, f, h) for p in parts])
    rep = fibred_freeness_check(fa)
    assert rep.ok
    assert rep.global_can.bijective == all(is_free_brute(p.action, g.order) for p in parts)
