import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from divgrad.matrices import (MatrixExact, SingularMatrix, Subspace, algebra_dim, kron, real_kernel, real_rank,
                              same_span, span_contains)
from divgrad.scalars import OMEGA, QI, QJ, SQRT2, Cyclo8, QuaternionQ2, RealQuad

small = st.integers(-3, 3)


def mats(kind, n):
    if kind == "R":
        cell = st.builds(RealQuad, small, small)
    elif kind == "C":
        cell = st.builds(Cyclo8, small, small, small, small)
    else:
        cell = st.builds(QuaternionQ2, small, small, small, small)
    return st.lists(st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: MatrixExact.from_rows(kind, rows))


@pytest.mark.parametrize("kind", ["R", "C", "H"])
@given(data=st.data())
def test_inverse_is_two_sided(kind, data):
    a = data.draw(mats(kind, 2))
    assume(a.is_invertible())
    inv = a.inverse()
    one = MatrixExact.identity(kind, 2)
    assert a.matmul(inv) == one and inv.matmul(a) == one


@given(mats("H", 2), mats("H", 2), mats("H", 2))
def test_quaternion_matrix_product_associative(a, b, c):
    assert a.matmul(b).matmul(c) == a.matmul(b.matmul(c))
    assert a.matmul(b + c) == a.matmul(b) + a.matmul(c)


def test_singular_matrix():
    a = MatrixExact.from_rows("R", [[1, 2], [2, 4]])
    with pytest.raises(SingularMatrix):
        a.inverse()
    b = MatrixExact.from_rows("H", [[QI, QJ], [1, QI.inverse() * QJ]])
    assert not b.is_invertible()


def test_scalar_queries():
    m = MatrixExact.scalar("C", 2, OMEGA ** 2)
    assert m.scalar_value() == (OMEGA ** 2).coeffs
    assert m.real_scalar_value() is None
    r = MatrixExact.scalar("H", 2, QuaternionQ2(SQRT2))
    assert r.real_scalar_value() == (0, 1)
    assert r.real_trace() == (0, 2)


def test_ratio_to_left_multiple():
    x = MatrixExact.from_rows("H", [[QJ, 0], [0, 1]])
    y = MatrixExact.scalar("H", 2, QI).matmul(x)
    lam = y.ratio_to(x)
    assert lam == QI.coeffs
    assert x.ratio_to(MatrixExact.identity("H", 2)) is None


def test_kron_dimensions_and_mixed_product():
    a = MatrixExact.from_rows("R", [[0, 1], [1, 0]])
    b = MatrixExact.from_rows("C", [[OMEGA, 0], [0, 1]])
    k = kron(a, b)
    assert k.n == 4 and k.kind == "C"
    assert k.matmul(k) == kron(a.matmul(a), b.matmul(b))


def test_real_vectors_round_trip():
    m = MatrixExact.from_rows("H", [[QI, QuaternionQ2(RealQuad(1, 1))], [0, QJ]])
    v = m.real_vector()
    assert MatrixExact.from_real_vector("H", 2, v) == m
    assert m.real_dim == algebra_dim("H", 2) == 16


def test_subspace_relations_and_membership():
    e = MatrixExact.identity("R", 2)
    x = MatrixExact.from_rows("R", [[0, 1], [1, 0]])
    s = Subspace()
    assert s.add(e.real_vector()) and s.add(x.real_vector())
    assert not s.add((e + x).real_vector())
    assert s.dim == 2 and len(s.relations) == 1
    assert span_contains([e, x], e.scale_real((0, 1)) - x)
    assert not span_contains([e, x], MatrixExact.from_rows("R", [[1, 0], [0, 0]]))
    assert real_rank([e, x, e + x]) == 2
    assert same_span([e, x], [e + x, e - x])


def test_real_kernel():
    e = MatrixExact.identity("C", 1)
    i = MatrixExact.scalar("C", 1, OMEGA ** 2)
    ker = real_kernel([e.real_vector(), i.real_vector(), (e + i).real_vector()])
    assert len(ker) == 1
    (rel,) = ker
    assert set(rel) == {0, 1, 2}
