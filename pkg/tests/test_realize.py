import pytest

from divgrad.classify import classify, record_with
from divgrad.graded import check_division_grading
from divgrad.groups import FinAbelianGroup
from divgrad.realize import (CASE_MIN_M, RealizationError, all_payloads, canonical_recipe, canonical_representative,
                             enumerate_payloads, realize_from_invariants, support_shapes)


@pytest.mark.parametrize("case", sorted(CASE_MIN_M))
def test_canonical_representatives_at_minimal_m(case):
    m = CASE_MIN_M[case]
    a = canonical_representative(case, m)
    assert a.n == 2 ** m
    assert check_division_grading(a).ok
    assert classify(a).case == case


def test_recipes_use_blocks():
    assert canonical_recipe("1a", 2) == ["M2R1", "M2R1"]
    assert canonical_recipe("3a", 2)[0] == "H0"


def test_support_shapes():
    assert support_shapes("1a", 16) == [(0, 0), (2, 0), (4, 0)]
    assert support_shapes("1d", 16) == [(1, 1)]
    assert support_shapes("2e", 16) == [(0, 1), (2, 1)]


@pytest.mark.parametrize("case,shape,count", [
    ("1a", (2, 0), 3), ("1b", (2, 0), 1), ("1c", (3, 0), 28), ("1d", (1, 1), 2),
    ("2a", (3, 0), 28), ("2c", (2, 0), 6), ("2d", (2, 1), 24), ("2e", (2, 1), 4),
])
def test_payload_counts(case, shape, count):
    assert len(list(enumerate_payloads(case, FinAbelianGroup(*shape)))) == count


def test_round_trip_small_groups():
    n = 0
    for r in all_payloads(max_order=8):
        assert classify(realize_from_invariants(r)) == r
        n += 1
    assert n > 50


def test_invalid_payloads():
    r = classify(canonical_representative("1a", 1))
    bad = record_with(r, mu=tuple((t, -v if t == (1, 1) else v) for t, v in r.mu))
    with pytest.raises(RealizationError):
        realize_from_invariants(bad)
    with pytest.raises(RealizationError):
        realize_from_invariants(record_with(r, case="1b"))
