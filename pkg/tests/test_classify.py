import pytest

from divgrad.classify import (AmbientMismatch, ClassificationError, DeferredCase, NotDivisionGrading, classify,
                              extract_beta, extract_mu, is_equivalent, is_isomorphic, neutral_and_center)
from divgrad.forms import arf
from divgrad.graded import GradedMatrixAlgebra, build_block, conjugate_grading, relabel_degrees, tensor_product
from divgrad.groups import FinAbelianGroup, GroupHom
from divgrad.matrices import MatrixExact
from divgrad.oracle import complex_linear_example
from divgrad.realize import canonical_representative

# frozen from the pipeline and hand-checked against the matrices (e.g. Z^2 = -I in M2R1)
SUMMARIES = {
    ("1a", 1): "case 1a, T = Z2^2, Arf = +1, mu = +,+,-",
    ("1b", 0): "case 1b, T = Z2^2, Arf = -1, mu = -,-,-",
    ("1c", 0): "case 1c, T = Z2^1, f = (1), mu = -",
    ("1d", 1): "case 1d, T = Z2^1 x Z4, f = (0,2), mu = -,+,-",
    ("2a", 1): "case 2a, T = Z2^1, K = Z2^0, nu = +",
    ("2b", 0): "case 2b, T = Z2^1, K = Z2^0, nu = -",
    ("2c", 1): "case 2c, T = Z2^2, K = Z2^1, nu = +,-",
    ("2d", 2): "case 2d, T = Z2^2 x Z4, K = Z2^1 x Z4, nu = +,-,+,-",
    ("2e", 1): "case 2e, T = Z4, [nu] = +,-",
    ("3a", 2): "case 3a, T = Z2^2, centralizer: case 1b, T = Z2^2, Arf = -1, mu = -,-,-",
    ("3b", 0): "case 3b, T = Z2^0, centralizer: case 1a, T = Z2^0, Arf = +1",
    ("3c", 1): "case 3c, T = Z2^1, centralizer: case 1c, T = Z2^1, f = (1), mu = -",
    ("3d", 2): "case 3d, T = Z2^1 x Z4, centralizer: case 1d, T = Z2^1 x Z4, f = (0,2), mu = -,+,-",
}


@pytest.mark.parametrize("key", sorted(SUMMARIES))
def test_frozen_summaries(key):
    assert classify(canonical_representative(*key), validate=True).summary() == SUMMARIES[key]


def test_blocks_classify():
    assert classify(build_block("M2C2")).summary() == "case 2e, T = Z4, [nu] = +,-"
    r = classify(build_block("H1"))
    assert (r.case, r.m, r.shape) == ("1b", 0, "Z2^2")


def test_full_checks_agree():
    for key in (("1d", 2), ("2d", 2), ("3c", 2)):
        a = canonical_representative(*key)
        assert classify(a, full_checks=True) == classify(a)


def test_mu_and_beta_from_matrices():
    a = build_block("M2R1")
    mu = extract_mu(a)
    assert arf(mu) == 1
    beta = extract_beta(a)
    assert beta((1, 0), (0, 1)) == -1 and beta((1, 1), (1, 1)) == 1


def test_center_detection():
    assert neutral_and_center(complex_linear_example()).de_is_center
    assert not neutral_and_center(canonical_representative("2c", 1)).de_is_center


def test_complex_linear_case_is_deferred():
    r = classify(complex_linear_example())
    assert r.case == "2f" and r.deferred
    assert r.beta_c == (((0, 1), (1, 0), 2), ((0, 1), (1, 1), 2), ((1, 0), (1, 1), 2))
    with pytest.raises(DeferredCase):
        is_equivalent(r, r)
    assert not is_equivalent(r, canonical_representative("2c", 1))


def test_conjugation_invariance():
    a = canonical_representative("2c", 2)
    p = MatrixExact.identity("C", 4) + MatrixExact.from_rows("C", [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, "w"],
                                                                    [0, 0, 0, 0]])
    assert classify(conjugate_grading(a, p)) == classify(a)


def test_isomorphism_and_equivalence():
    hh = tensor_product([build_block("H1"), build_block("H1")])
    rr = tensor_product([build_block("M2R1"), build_block("M2R1")])
    assert not is_isomorphic(hh, rr)  # same case, different mu on the product basis
    assert is_equivalent(hh, rr)
    assert not is_equivalent(build_block("H2"), build_block("M2R2"))
    assert not is_equivalent(canonical_representative("2d", 2), canonical_representative("2e", 2))


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        is_isomorphic(build_block("H1"), build_block("H2"))


def test_relabeling_changes_record_not_class():
    a = canonical_representative("1c", 1)
    phi = GroupHom(a.group, a.group, [(1, 0, 0), (1, 1, 0), (0, 0, 1)])
    b = relabel_degrees(a, phi)
    assert classify(b) != classify(a)
    assert is_equivalent(a, b)


def test_not_division_rejected():
    rows = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]
    comps = {(0,): [MatrixExact.from_rows("R", m) for m in rows[0]],
             (1,): [MatrixExact.from_rows("R", m) for m in rows[1]]}
    a = GradedMatrixAlgebra("R", 2, FinAbelianGroup(1), comps)
    with pytest.raises(NotDivisionGrading):
        classify(a, validate=True)


def test_error_codes():
    assert NotDivisionGrading.code == "not-division"
    assert DeferredCase.code == "deferred"
    assert issubclass(AmbientMismatch, ClassificationError)
