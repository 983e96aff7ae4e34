from fractions import Fraction

import pytest

from hopfgalois.classical import function_hopf, group_algebra
from hopfgalois.groups import cyclic_group, klein_four, small_groups, symmetric_group
from hopfgalois.hopf import (
    AlgebraData,
    HopfData,
    StructureError,
    dual_hopf,
    haar_integral,
    is_cosemisimple,
    require_hopf,
    same_structure,
    trivial_hopf,
    verify_hopf,
)
from hopfgalois.linalg import QQ, FieldSpec, LinMap, flip, tensor

GROUPS = small_groups(6)
FIELDS = [QQ, FieldSpec(2), FieldSpec(3), FieldSpec(5)]


def test_function_hopf_z1_is_one_dimensional():
    h = function_hopf(cyclic_group(1), QQ)
    assert h.dim == 1
    assert h.mult == h.comult == h.antipode == LinMap.identity(QQ, 1)
    assert verify_hopf(h).ok


def test_function_hopf_z2_comult_of_delta_e():
    h = function_hopf(cyclic_group(2), QQ)
    # delta_e -> d_e (x) d_e + d_a (x) d_a
    assert h.comult.column_vector(0) == {0 * 2 + 0: 1, 1 * 2 + 1: 1}
    assert h.comult.column_vector(1) == {0 * 2 + 1: 1, 1 * 2 + 0: 1}


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
@pytest.mark.parametrize("f", FIELDS, ids=str)
def test_generators_verify(g, f):
    for h in (function_hopf(g, f), group_algebra(g, f)):
        rep = verify_hopf(h)
        assert rep.ok, rep.failed()


def test_group_algebra_z3_verifies():
    assert verify_hopf(group_algebra(cyclic_group(3), QQ)).ok


def test_zero_antipode_witness():
    h = function_hopf(cyclic_group(2), QQ)
    bad = HopfData(h.algebra, h.coalgebra, LinMap.zero(QQ, 2, 2), "zero-S", h.basis_names)
    rep = verify_hopf(bad)
    assert not rep.ok
    chk = rep["antipode (left)"]
    assert chk.status == "fail"
    # m (S (x) id) Delta vanishes identically while u eps is nonzero only on delta_e
    assert chk.witness == [1, 0]
    assert "d0" in chk.reason
    assert rep["antipode bijective"].status == "fail"
    with pytest.raises(StructureError):
        require_hopf(bad)


def test_dimension_mismatch_rejected():
    h = function_hopf(cyclic_group(2), QQ)
    with pytest.raises(StructureError):
        HopfData(h.algebra, h.coalgebra, LinMap.identity(QQ, 3))
    with pytest.raises(StructureError):
        AlgebraData(QQ, 2, LinMap.identity(QQ, 2), (1, 1))


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_haar_closed_forms(g):
    n = g.order
    phi = haar_integral(function_hopf(g, QQ))
    assert phi is not None and phi.unique
    assert phi.values() == [Fraction(1, n)] * n
    psi = haar_integral(group_algebra(g, QQ))
    assert psi.values() == [1 if x == g.identity else 0 for x in g.elements()]


@pytest.mark.parametrize("g,p", [(cyclic_group(2), 2), (cyclic_group(3), 3), (symmetric_group(3), 2),
                                 (symmetric_group(3), 3), (klein_four(), 2)])
def test_haar_absent_when_p_divides_order(g, p):
    assert haar_integral(function_hopf(g, FieldSpec(p))) is None
    assert not is_cosemisimple(function_hopf(g, FieldSpec(p)))


def test_haar_present_when_p_coprime():
    phi = haar_integral(function_hopf(cyclic_group(3), FieldSpec(2)))
    # 1/3 = 1 in F_2
    assert phi.values() == [1, 1, 1]


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_classical_antipode_identities(g):
    for h in (function_hopf(g, QQ), group_algebra(g, QQ)):
        s, n = h.antipode, h.dim
        assert s @ s == LinMap.identity(QQ, n)
        assert h.counit @ s == h.counit
        assert s @ h.mult == h.mult @ flip(QQ, n, n) @ tensor(s, s)
        phi = haar_integral(h)
        assert phi.phi @ s == phi.phi


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_dual_of_function_algebra_is_group_algebra(g):
    h = function_hopf(g, QQ)
    d = dual_hopf(h)
    assert verify_hopf(d).ok
    assert d.dim == h.dim
    assert same_structure(d, group_algebra(g, QQ))
    assert same_structure(dual_hopf(d), h)


def test_trivial_hopf():
    assert verify_hopf(trivial_hopf(QQ)).ok
