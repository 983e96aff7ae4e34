from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfgalois.linalg import (
    QQ,
    FieldError,
    FieldSpec,
    LinMap,
    Subspace,
    is_bijective,
    kernel_basis,
    leg_permutation,
    quotient_by,
    rank,
    solve,
    tensor,
)
from oracles import dense_rank

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def test_field_spec_requires_prime():
    with pytest.raises(FieldError):
        FieldSpec(4)


@pytest.mark.parametrize("tok,val", [("5", 5), ("-3/7", Fraction(-3, 7)), (" 4/2 ", 2)])
def test_parse_rational(tok, val):
    assert QQ.parse(tok) == val


@pytest.mark.parametrize("tok", ["1/0", "x", "1/2/3", ""])
def test_parse_rejects_malformed(tok):
    with pytest.raises(FieldError, match="malformed"):
        QQ.parse(tok)


def test_parse_residue():
    assert F5.parse("7") == 2
    assert F5.parse("1/2") == 3
    with pytest.raises(FieldError):
        F5.parse("1/5")


def test_rank_examples():
    assert rank(LinMap.zero(QQ, 3, 3)) == 0
    assert rank(LinMap.identity(QQ, 4)) == 4
    assert rank(LinMap.from_dense(QQ, [[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(LinMap.identity(QQ, 3)).dim == 0
    assert kernel_basis(LinMap.zero(QQ, 2, 2)).dim == 2
    k = kernel_basis(LinMap.from_dense(F2, [[1, 1]]))
    assert k.basis == [[1, 1]]


def test_solve_examples():
    v = {0: 1, 2: 5}
    assert solve(LinMap.identity(QQ, 3), v) == v
    assert solve(LinMap.zero(QQ, 2, 2), {0: 1}) is None
    assert solve(LinMap.from_dense(QQ, [[2]]), [1]) == {0: Fraction(1, 2)}


def test_is_bijective_examples():
    assert is_bijective(LinMap.identity(QQ, 3))
    assert not is_bijective(LinMap.zero(QQ, 4, 6))
    assert not is_bijective(LinMap.from_dense(QQ, [[1, 1], [1, 1]]))


def test_tensor_examples():
    assert tensor(LinMap.identity(QQ, 2), LinMap.identity(QQ, 3)) == LinMap.identity(QQ, 6)
    m = LinMap.from_dense(QQ, [[1, 2], [3, 4]])
    assert tensor(m, LinMap.zero(QQ, 2, 2)).is_zero()
    assert tensor(LinMap.from_dense(QQ, [[2]]), LinMap.from_dense(QQ, [[3]])).to_dense() == [[6]]


def test_tensor_index_convention():
    # e_i (x) e_j sits at i * dim2 + j
    a = LinMap.column(QQ, [0, 1])
    b = LinMap.column(QQ, [0, 0, 1])
    assert tensor(a, b).column_vector(0) == {1 * 3 + 2: 1}


def test_tensor_field_mismatch():
    with pytest.raises(ValueError):
        tensor(LinMap.identity(QQ, 1), LinMap.identity(F2, 1))


def test_quotient_examples():
    q = quotient_by(Subspace.zero(QQ, 3))
    assert q.projection == LinMap.identity(QQ, 3)
    assert quotient_by(Subspace.full(QQ, 3)).dim == 0
    killed = Subspace.span(QQ, 2, [[1, -1]])
    q = quotient_by(killed)
    assert q.dim == 1
    assert q.projection @ q.section == LinMap.identity(QQ, 1)
    assert (q.projection @ killed.inclusion).is_zero()
    # the projection agrees with (x, y) -> x + y up to a nonzero scalar
    x, y = q.projection.apply({0: 1}), q.projection.apply({1: 1})
    assert x == y != {}


def test_subspace_membership_and_coords():
    s = Subspace.span(QQ, 3, [[1, 1, 0], [0, 1, 1]])
    assert s.contains([1, 2, 1])
    assert not s.contains([1, 0, 0])
    assert s.inclusion.apply(dict(enumerate(s.coordinates([2, 3, 1])))) == {0: 2, 1: 3, 2: 1}


def test_intersection():
    a = Subspace.span(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.span(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert a.intersection(b) == Subspace.span(QQ, 3, [[0, 1, 0]])


def test_from_entries_rejects_duplicates_and_bounds():
    with pytest.raises(ValueError):
        LinMap.from_entries(QQ, 2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(IndexError):
        LinMap.from_entries(QQ, 2, 2, [(2, 0, 1)])


# properties ----------------------------------------------------------------

fields = st.sampled_from([QQ, F2, F3])


@st.composite
def matrices(draw, max_dim=6):
    f = draw(fields)
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    vals = st.integers(-3, 3) if f.p == 0 else st.integers(0, f.p - 1)
    dense = [[draw(st.one_of(st.just(0), vals)) for _ in range(c)] for _ in range(r)]
    return f, LinMap.from_dense(f, dense, c), dense


@given(matrices())
def test_rank_matches_oracle(data):
    f, m, dense = data
    assert m.rank() == dense_rank(dense, f.p)


@given(matrices())
def test_rank_transpose(data):
    _, m, _ = data
    assert m.rank() == m.T.rank()


@given(matrices())
def test_rank_nullity(data):
    _, m, _ = data
    k = kernel_basis(m)
    assert k.dim + m.rank() == m.cols
    assert all(not m.apply(v) for v in k.basis_vectors())


@given(matrices(4), matrices(3), matrices(3))
def test_tensor_associative(a, b, c):
    f = a[0]
    ma, mb, mc = (LinMap.from_dense(f, x[2], x[1].cols) for x in (a, b, c))
    assert tensor(tensor(ma, mb), mc) == tensor(ma, tensor(mb, mc))


@given(matrices())
def test_quotient_identities(data):
    f, m, _ = data
    killed = kernel_basis(m)
    q = quotient_by(killed)
    assert q.dim == m.cols - killed.dim
    assert q.projection @ q.section == LinMap.identity(f, q.dim)
    assert (q.projection @ killed.inclusion).is_zero()


@given(matrices())
def test_solve_consistent(data):
    f, m, _ = data
    if m.cols == 0:
        return
    x = {0: 1}
    target = m.apply(x)
    sol = solve(m, target)
    assert sol is not None and m.apply(sol) == target


def test_leg_permutation_swaps():
    p = leg_permutation(QQ, (2, 3), (1, 0))
    assert p.apply({1 * 3 + 2: 1}) == {2 * 2 + 1: 1}
