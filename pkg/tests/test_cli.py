import os

import pytest

from divgrad import gda
from divgrad.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_build_matches_fixture(capsys):
    status, out, _ = run(capsys, "build", "H1")
    assert status == 0
    with open(fx("block_H1.gda"), encoding="utf-8") as fh:
        assert out == fh.read()


def test_build_bad_product(capsys):
    status, _, err = run(capsys, "build", "C1", "C1")
    assert status == 1
    assert err.startswith("error: bad-build: ")


def test_build_relabel_then_iso(capsys, tmp_path):
    hh, rr = tmp_path / "hh.gda", tmp_path / "rr.gda"
    relabel = "(1,0,1,0) (1,1,1,0) (0,1,0,1) (0,1,1,1)"
    assert run(capsys, "build", "H1", "H1", "--relabel", relabel, "--out", str(hh))[0] == 0
    assert run(capsys, "build", "M2R1", "M2R1", "--out", str(rr))[0] == 0
    status, out, _ = run(capsys, "iso", str(hh), str(rr))
    assert status == 0 and out.startswith("yes: ")


def test_build_bad_relabel(capsys):
    status, _, err = run(capsys, "build", "H1", "--relabel", "(1,0) (1,0)")
    assert status == 1 and err.startswith("error: bad-relabeling: ")


def test_classify_and_record(capsys, tmp_path):
    out_path = tmp_path / "r.gdr"
    status, out, _ = run(capsys, "classify", fx("block_M2C2.gda"), "--out", str(out_path))
    assert status == 0
    assert out == "case 2e, T = Z4, [nu] = +,-\n"
    assert gda.load_record(str(out_path)).case == "2e"


def test_classify_deferred(capsys):
    status, out, _ = run(capsys, "classify", fx("complex_linear_2f.gda"))
    assert status == 3
    assert out.startswith("case 2f")


def test_classify_not_division(capsys):
    status, _, err = run(capsys, "classify", fx("not_division_M2R.gda"))
    assert status == 4 and err.startswith("error: not-division: ")


def test_classify_parse_error(capsys):
    status, _, err = run(capsys, "classify", fx("bad_scalar.gda"))
    assert status == 2
    assert err.startswith("error: parse: ") and "line 10, column 15" in err
    assert err.count("\n") == 1


def test_classify_invalid_grading(capsys):
    status, _, err = run(capsys, "classify", fx("corrupted_M2R1.gda"))
    assert status == 2 and err.startswith("error: invalid-grading: ")


def test_missing_file(capsys):
    status, _, err = run(capsys, "classify", fx("no_such_file.gda"))
    assert status == 1 and err.startswith("error: io: ")


def test_equiv_separates_z4_cases(capsys):
    status, out, _ = run(capsys, "equiv", fx("list_2d_m2.gda"), fx("list_2e_m2.gda"))
    assert status == 0 and out.startswith("no: ")


def test_iso_ambient_mismatch(capsys):
    status, _, err = run(capsys, "iso", fx("block_H1.gda"), fx("block_H2.gda"))
    assert status == 1 and err.startswith("error: ambient-mismatch: ")


def test_canonical(capsys):
    status, out, _ = run(capsys, "canonical", "2d", "2")
    assert status == 0
    with open(fx("list_2d_m2.gda"), encoding="utf-8") as fh:
        assert out == fh.read()
    assert run(capsys, "canonical", "2f", "1")[0] == 3
    status, _, err = run(capsys, "canonical", "1d", "0")
    assert status == 1 and err.startswith("error: bad-tag: ")


def test_realize_record(capsys):
    status, out, _ = run(capsys, "realize", fx("list_1c_m1.gdr"))
    assert status == 0
    assert gda.parse_document(out).n == 2


def test_realize_deferred(capsys):
    assert run(capsys, "realize", fx("complex_linear_2f.gdr"))[0] == 3


def test_refine(capsys):
    status, out, _ = run(capsys, "refine", fx("list_3b_m0.gda"))
    assert status == 0
    assert gda.parse_document(out).group.order == 2
    status, _, err = run(capsys, "refine", fx("block_H1.gda"))
    assert status == 1 and err.startswith("error: refine-precondition: ")


def test_verify_with_positional_seed(capsys):
    status, out, _ = run(capsys, "verify", "hh", "42")
    assert status == 0
    assert out.endswith("1/1 suites passed\n")


def test_verify_list_to_file(capsys, tmp_path):
    path = tmp_path / "v.txt"
    assert run(capsys, "verify", "list", "--seed", "5", "--max-m", "1", "--out", str(path))[0] == 0
    assert "list: pass" in path.read_text()


def test_unknown_verb_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
