import pytest

from hopfgalois.classical import function_hopf, group_algebra, gset_comodule_algebra, rep_to_comodule, sign_rep
from hopfgalois.comodule import (
    direct_sum_comodule,
    invariants,
    regular_comodule,
    trivial_comodule,
)
from hopfgalois.extensions import bundled_extensions, galois_coaction
from hopfgalois.galois import (
    ExactnessInputError,
    beta_map,
    can_lift,
    canonical_map,
    connection_axioms,
    cotensor_exactness_check,
    equivariant_projectivity_check,
    hopf_self_coaction,
    principality_check,
    relative_tensor,
    scalars,
    strong_connection_solve,
    strong_monoidality,
    surjectivity_implies_bijectivity_crosscheck,
    translation_connection,
)
from hopfgalois.groups import GSet, cyclic_group, enumerate_gsets, regular_gset, small_groups, symmetric_group
from hopfgalois.hopf import StructureError
from hopfgalois.linalg import QQ, FieldSpec, LinMap, Subspace, tensor
from oracles import can_matrix_gset, dense_rank, is_free_brute

Z2, Z3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
FREE2 = regular_gset(Z2)
POINT = GSet(Z2, ((0, 0),), "pt")
FIX3 = GSet(Z2, ((0, 1), (1, 0), (2, 2)), "fix3")
SMALL = [s for g in (Z2, Z3, S3) for s in enumerate_gsets(g, 4)]
EXT = bundled_extensions()


def sid(s):
    return f"{s.group.name}:{s.action}"


# relative tensor -----------------------------------------------------------


def test_relative_tensor_over_scalars_is_full():
    c = gset_comodule_algebra(FIX3, QQ)
    rt = relative_tensor(c, scalars(c))
    assert rt.dim == 9 and rt.base_is_invariants is False


def test_relative_tensor_over_a_collapses():
    c = gset_comodule_algebra(GSet(Z2, ((0, 0), (1, 1)), "triv2"), QQ)
    rt = relative_tensor(c)
    assert rt.base_is_invariants and rt.dim == 2


def test_relative_tensor_gauss():
    c, base = galois_coaction(EXT["gauss-qi"])
    assert relative_tensor(c, base).dim == 4


def test_relative_tensor_rejects_non_subalgebra():
    c = gset_comodule_algebra(FIX3, QQ)
    with pytest.raises(StructureError):
        relative_tensor(c, Subspace.span(QQ, 3, [[1, 0, 0]]))
    with pytest.raises(StructureError):
        relative_tensor(c, Subspace.span(QQ, 3, [[1, 1, 1], [1, 2, 0]]))


# canonical map -------------------------------------------------------------


def test_can_free_z2():
    rep = canonical_map(gset_comodule_algebra(FREE2, QQ))
    assert (rep.domain_dim, rep.codomain_dim, rep.rank) == (4, 4, 4)
    assert rep.bijective


def test_can_point():
    rep = canonical_map(gset_comodule_algebra(POINT, QQ))
    assert (rep.domain_dim, rep.codomain_dim, rep.rank) == (1, 2, 1)
    assert rep.injective and not rep.surjective


def test_can_gauss_and_cbrt2():
    c, base = galois_coaction(EXT["gauss-qi"])
    rep = canonical_map(c, base)
    assert rep.rank == 4 and rep.bijective
    c, base = galois_coaction(EXT["cbrt2"])
    rep = canonical_map(c, base)
    assert (rep.domain_dim, rep.codomain_dim, rep.rank) == (9, 3, 3)
    assert rep.surjective and not rep.injective
    assert "kernel" in rep.witnesses


@pytest.mark.parametrize("s", SMALL, ids=sid)
def test_can_rank_matches_pointwise_oracle(s):
    rep = canonical_map(gset_comodule_algebra(s, QQ))
    assert rep.lift_rank == dense_rank(can_matrix_gset(s.action, s.group.table))
    assert rep.rank == rep.lift_rank
    assert rep.bijective == is_free_brute(s.action, s.group.order)


def test_can_lift_entries_match_oracle():
    s = FIX3
    lift = can_lift(gset_comodule_algebra(s, QQ))
    assert lift.to_dense() == can_matrix_gset(s.action, s.group.table)


def test_ill_defined_descent_witness():
    c = gset_comodule_algebra(FREE2, QQ)
    rep = canonical_map(c, Subspace.full(QQ, 2))
    assert not rep.well_defined and not rep.bijective
    w = rep.witnesses["descent"]
    assert can_lift(c).apply(dict(enumerate(w)))


@pytest.mark.parametrize("g", small_groups(6), ids=lambda g: g.name)
def test_can_of_hopf_over_itself_bijective(g):
    for h in (function_hopf(g, QQ), group_algebra(g, QQ), function_hopf(g, FieldSpec(2))):
        assert canonical_map(hopf_self_coaction(h)).bijective


# beta ----------------------------------------------------------------------


def test_beta_trivial_is_multiplication():
    c = gset_comodule_algebra(FIX3, QQ)
    t = trivial_comodule(c.hopf)
    rep = beta_map(c, t, t)
    b = invariants(c).dim
    assert (rep.domain_dim, rep.codomain_dim) == (b, b) and rep.bijective


def test_beta_free_regular():
    c = gset_comodule_algebra(FREE2, QQ)
    r = regular_comodule(c.hopf)
    assert beta_map(c, r, r).bijective


def test_beta_fixpoint_regular_fails():
    c = gset_comodule_algebra(FIX3, QQ)
    r = regular_comodule(c.hopf)
    rep = beta_map(c, r, r)
    assert rep.well_defined and not rep.bijective


def test_beta_hopf_mismatch():
    c = gset_comodule_algebra(FREE2, QQ)
    other = function_hopf(Z2, QQ)
    with pytest.raises(StructureError):
        beta_map(c, trivial_comodule(other), trivial_comodule(other))


@pytest.mark.parametrize("s", SMALL, ids=sid)
def test_beta_defaults_agree_with_can(s):
    c = gset_comodule_algebra(s, QQ)
    mono = strong_monoidality(c)
    assert mono.defaults_used
    can = canonical_map(c)
    assert mono.all_bijective == can.bijective == can.span_full


# strong connections --------------------------------------------------------


@pytest.mark.parametrize("g", [Z2, Z3, S3], ids=lambda g: g.name)
def test_translation_connection(g):
    h = function_hopf(g, QQ)
    c = hopf_self_coaction(h)
    assert all(chk.passed for chk in connection_axioms(c, translation_connection(h)))
    assert strong_connection_solve(c) is not None


def test_connection_free_and_point():
    c = gset_comodule_algebra(FREE2, QQ)
    sc = strong_connection_solve(c)
    assert sc is not None
    assert all(chk.passed for chk in connection_axioms(c, sc.ell))
    # m o ell = 1_A eps
    a = c.algebra
    assert a.mult @ sc.ell == a.unit_map @ c.hopf.counit
    assert strong_connection_solve(gset_comodule_algebra(POINT, QQ)) is None


def test_broken_connection_fails_axioms():
    h = function_hopf(Z2, QQ)
    c = hopf_self_coaction(h)
    checks = connection_axioms(c, LinMap.zero(QQ, 4, 2))
    assert [chk.name for chk in checks if not chk.passed] == ["unital", "splits can"]


# projectivity and principality ---------------------------------------------


def test_equivariant_projectivity_examples():
    assert equivariant_projectivity_check(gset_comodule_algebra(GSet(Z2, ((0, 0), (1, 1))), QQ)) is not None
    assert equivariant_projectivity_check(gset_comodule_algebra(FREE2, QQ)) is not None
    assert equivariant_projectivity_check(hopf_self_coaction(function_hopf(S3, QQ))) is not None


def test_principality_examples():
    rep = principality_check(gset_comodule_algebra(FREE2, QQ))
    assert rep.principal and rep.has_connection and rep.agree
    rep = principality_check(gset_comodule_algebra(FIX3, QQ))
    assert not rep.principal and not rep.has_connection and rep.agree
    assert principality_check(hopf_self_coaction(function_hopf(Z3, QQ))).principal


@pytest.mark.parametrize("s", SMALL, ids=sid)
def test_principality_agrees_with_connection(s):
    rep = principality_check(gset_comodule_algebra(s, QQ))
    assert rep.agree
    assert rep.principal == is_free_brute(s.action, s.group.order)


# exactness -----------------------------------------------------------------


def inclusion_and_projection(n, m):
    inc = LinMap.from_function(QQ, n + m, n, lambda j: {j: 1})
    proj = LinMap.from_function(QQ, m, n + m, lambda j: {j - n: 1} if j >= n else {})
    return inc, proj


def test_exactness_trivial_sequence():
    c = gset_comodule_algebra(FIX3, QQ)
    h = c.hopf
    u, v, w = trivial_comodule(h), trivial_comodule(h, 2), trivial_comodule(h)
    f, g = inclusion_and_projection(1, 1)
    assert cotensor_exactness_check(c, u, v, w, f, g)


@pytest.mark.parametrize("s", SMALL[:10], ids=sid)
def test_exactness_split_sequences(s):
    c = gset_comodule_algebra(s, QQ)
    h = c.hopf
    u, w = regular_comodule(h), trivial_comodule(h)
    v = direct_sum_comodule(u, w)
    f, g = inclusion_and_projection(u.dim, w.dim)
    assert cotensor_exactness_check(c, u, v, w, f, g)


def test_exactness_unit_then_sign():
    # 0 -> trivial -> H -> sign -> 0 for Z/2, via the unit and f -> f(e) - f(a)
    c = gset_comodule_algebra(FREE2, QQ)
    h = c.hopf
    sign = rep_to_comodule(sign_rep(Z2, QQ), h)
    g = LinMap.from_dense(QQ, [[1, -1]])
    assert cotensor_exactness_check(c, trivial_comodule(h), regular_comodule(h), sign, h.unit_map, g)


def test_exactness_rejects_bad_input():
    c = gset_comodule_algebra(FIX3, QQ)
    h = c.hopf
    u, v, w = trivial_comodule(h), trivial_comodule(h, 2), trivial_comodule(h)
    f, _ = inclusion_and_projection(1, 1)
    with pytest.raises(ExactnessInputError):
        cotensor_exactness_check(c, u, v, w, f, LinMap.zero(QQ, 1, 2))
    r = regular_comodule(h)
    with pytest.raises(ExactnessInputError):
        cotensor_exactness_check(c, u, r, trivial_comodule(h), LinMap.column(QQ, [1, 0]),
                                 LinMap.from_dense(QQ, [[0, 1]]))


# surjectivity => injectivity -----------------------------------------------


def test_crosscheck_statuses():
    assert surjectivity_implies_bijectivity_crosscheck(gset_comodule_algebra(FREE2, QQ)).status == "pass"
    point = surjectivity_implies_bijectivity_crosscheck(gset_comodule_algebra(POINT, QQ))
    assert point.status == "pass" and "vacuous" in point.reason
    c, base = galois_coaction(EXT["cbrt2"])
    cc = surjectivity_implies_bijectivity_crosscheck(c, canonical_map(c, base))
    assert cc.status == "skip" and "invariants" in cc.reason
    f2 = surjectivity_implies_bijectivity_crosscheck(gset_comodule_algebra(FREE2, FieldSpec(2)))
    assert f2.status == "skip"


def test_crosscheck_detects_violation():
    c = gset_comodule_algebra(FREE2, QQ)
    rep = canonical_map(c)
    rep.injective = False
    assert surjectivity_implies_bijectivity_crosscheck(c, rep, True).status == "violation"


def test_can_lift_is_tensor_formula():
    c = gset_comodule_algebra(FREE2, QQ)
    expected = tensor(c.algebra.mult, LinMap.identity(QQ, 2)) @ tensor(LinMap.identity(QQ, 2), c.delta)
    assert can_lift(c) == expected
