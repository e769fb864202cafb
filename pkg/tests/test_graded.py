import pytest

from divgrad.graded import (BLOCK_NAMES, EXTRA_BLOCKS, GradedMatrixAlgebra, GradingError, build_block, centralizer,
                            check_division_grading, check_grading, coarsen_along_hom, conjugate_grading,
                            degree_changed, hh_realize, quaternion_to_complex, relabel_degrees, tensor_product,
                            trivial_grading)
from divgrad.groups import FinAbelianGroup, GroupHom
from divgrad.matrices import MatrixExact
from divgrad.scalars import QI, QJ, QK, QuaternionQ2

PRODUCT_CHECKS = {"H1": 16, "M2R1": 16, "C1": 4, "M2C1": 64, "H2": 16, "M2R2": 16, "M2C2": 64}
NEUTRAL = {"H1": "R", "M2R1": "R", "C1": "R", "M2C1": "R", "H2": "C", "M2R2": "C", "M2C2": "C"}


@pytest.mark.parametrize("name", BLOCK_NAMES)
def test_blocks_are_division_gradings(name):
    a = build_block(name)
    g = check_grading(a)
    assert g.ok, g.violations
    assert g.products_checked == PRODUCT_CHECKS[name]
    d = check_division_grading(a, grading_checked=True)
    assert d.ok, d.violations
    assert d.neutral.tag == NEUTRAL[name]


@pytest.mark.parametrize("name", EXTRA_BLOCKS)
def test_trivially_graded_division_algebras(name):
    a = build_block(name)
    assert check_division_grading(a).ok
    assert a.support == ((),)


def test_quaternion_block_components():
    a = build_block("H1")
    assert [a.representative(t) for t in a.support] == [MatrixExact.from_rows("H", [[x]]) for x in
                                                         (QuaternionQ2(1), QJ, QI, QK)]


def test_unknown_block():
    with pytest.raises(GradingError):
        build_block("M3R1")


def test_hh_realization_is_an_algebra_map():
    p = [MatrixExact.from_rows("H", [[x]]) for x in (QI, QJ, QK)]
    for a in p:
        for b in p:
            for c in p:
                assert hh_realize(a.matmul(c), b.matmul(b)) == hh_realize(a, b).matmul(hh_realize(c, b))


def test_quaternion_to_complex_is_multiplicative():
    xs = [MatrixExact.from_rows("H", [[x]]) for x in (QI, QJ, QK, QuaternionQ2(1, 2, 3, 4))]
    for x in xs:
        for y in xs:
            assert quaternion_to_complex(x.matmul(y)) == quaternion_to_complex(x).matmul(quaternion_to_complex(y))


@pytest.mark.parametrize("names,kind,n,order", [
    (["H1", "H1"], "R", 4, 16),
    (["M2R1", "M2R1"], "R", 4, 16),
    (["H1", "M2C1"], "C", 4, 32),
    (["M2C2", "H1"], "C", 4, 16),
    (["M2R1", "H2"], "H", 2, 8),
    ([], "R", 1, 1),
])
def test_tensor_products(names, kind, n, order):
    a = tensor_product([build_block(x) for x in names])
    assert (a.kind, a.n, a.group.order) == (kind, n, order)
    assert check_division_grading(a).ok


def test_complex_complex_rejected():
    with pytest.raises(GradingError, match=r"\(C,C\)"):
        tensor_product([build_block("C1"), build_block("M2C1")])


def test_two_z4_factors_rejected():
    with pytest.raises(GradingError):
        tensor_product([build_block("M2C1"), build_block("M2C2")])


def test_not_division():
    e = {(0,): [MatrixExact.from_rows("R", [[1, 0], [0, 0]]), MatrixExact.from_rows("R", [[0, 0], [0, 1]])],
         (1,): [MatrixExact.from_rows("R", [[0, 1], [0, 0]]), MatrixExact.from_rows("R", [[0, 0], [1, 0]])]}
    a = GradedMatrixAlgebra("R", 2, FinAbelianGroup(1), e)
    assert check_grading(a).ok
    rep = check_division_grading(a)
    assert not rep.ok and "zero divisors" in rep.violations[0]


def test_grading_violation_names_pair():
    a = build_block("M2R1")
    b = degree_changed(a, {(1, 1): (0, 1)})  # Y and Z share a degree, so Y*Z = -X lands in (0,0)
    rep = check_grading(b)
    assert not rep.ok
    assert rep.first() == "product of component (0,1)[0] and (0,1)[1] leaves component (0,0)"


def test_coarsening_keeps_division_when_kernel_meets_support_trivially():
    a = build_block("M2C1")
    c = coarsen_along_hom(a, GroupHom(a.group, FinAbelianGroup(0, 1), [(2,), (1,)]))
    assert c.component_dim == 2
    assert check_division_grading(c).ok


def test_conjugation_preserves_validity():
    a = build_block("M2R1")
    p = MatrixExact.from_rows("R", [[2, 1], [1, 1]])
    b = conjugate_grading(a, p)
    assert check_division_grading(b).ok
    assert b.representative((1, 0)) != a.representative((1, 0))


def test_centralizer_of_neutral_component():
    a = tensor_product([build_block("H0"), build_block("M2R1")])
    c = centralizer(a, a.component(a.group.identity))
    assert not c.full
    assert c.component_dim == 1 and c.support == a.support


def test_trivial_grading():
    a = trivial_grading("H", 2)
    assert a.component_dim == 16
    assert check_grading(a).ok
    assert not check_division_grading(a).ok


def test_degree_of():
    a = build_block("H1")
    assert a.degree_of(MatrixExact.from_rows("H", [[QK.__mul__(3)]])) == (1, 1)
    assert a.degree_of(MatrixExact.from_rows("H", [[QI + QJ]])) is None
