import glob
import os

import pytest

from divgrad import gda
from divgrad.classify import classify
from divgrad.graded import build_block
from divgrad.realize import canonical_representative

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
DOCS = sorted(p for p in glob.glob(os.path.join(FIXTURES, "*.gda"))
              if not os.path.basename(p).startswith(("handwritten", "bad_")))
RECORDS = sorted(glob.glob(os.path.join(FIXTURES, "*.gdr")))


def _text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


@pytest.mark.parametrize("path", DOCS, ids=os.path.basename)
def test_document_round_trip(path):
    text = _text(path)
    assert gda.format_document(gda.parse_document(text)) == text
    assert gda.is_canonical(text)
    assert gda.detect(text) == "gda"


@pytest.mark.parametrize("path", RECORDS, ids=os.path.basename)
def test_record_round_trip(path):
    text = _text(path)
    r = gda.parse_record(text)
    assert gda.format_record(r) == text
    assert gda.detect(text) == "gdr"


@pytest.mark.parametrize("path", RECORDS, ids=os.path.basename)
def test_record_matches_document(path):
    a = gda.load_algebra(path[:-4] + ".gda")
    assert classify(a) == gda.load_record(path)


def test_handwritten_canonicalizes():
    a = gda.load_algebra(os.path.join(FIXTURES, "handwritten_H1.gda"))
    text = gda.format_document(a)
    assert text == _text(os.path.join(FIXTURES, "block_H1.gda"))
    assert not gda.is_canonical(_text(os.path.join(FIXTURES, "handwritten_H1.gda")))


def test_block_text():
    assert gda.format_document(build_block("H1")) == (
        "gda 1\nkind H\nn 1\ngroup Z2^2\ncomponent (0,0):\n[ 1 ]\ncomponent (0,1):\n[ j ]\n"
        "component (1,0):\n[ i ]\ncomponent (1,1):\n[ k ]\n")


def test_nested_record_round_trip():
    r = classify(canonical_representative("3d", 2))
    assert gda.parse_record(gda.format_record(r)) == r
    assert "begin centralizer" in gda.format_record(r)


def test_bad_scalar_position():
    with pytest.raises(gda.DocumentError) as exc:
        gda.parse_document(_text(os.path.join(FIXTURES, "bad_scalar.gda")))
    assert exc.value.line == 10 and exc.value.col == 15
    assert str(exc.value).startswith("line 10, column 15: ")


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("gda 2\n", 1),
    ("gda 1\nkind X\nn 1\ngroup Z2\n", 2),
    ("gda 1\nkind R\nn 0\ngroup Z2\n", 3),
    ("gda 1\nkind R\nn 1\ngroup Z3\n", 4),
    ("gda 1\nkind R\nn 1\ngroup Z2\n[ 1 ]\n", 5),
    ("gda 1\nkind R\nn 1\ngroup Z2\ncomponent (0):\n[ 1, 0 ]\n", 6),
    ("gda 1\nkind R\nn 1\ngroup Z2\ncomponent (2):\n[ 1 ]\n", 5),
    ("gda 1\nkind R\nn 1\ngroup Z2\ncomponent (0):\n[ 1 ]\ncomponent (0):\n", 7),
    ("gda 1\nkind R\nn 1\ngroup Z2\n\n# note\ncomponent (0):\n[ ]\n", 8),
])
def test_document_errors(text, line):
    with pytest.raises(gda.DocumentError) as exc:
        gda.parse_document(text)
    assert exc.value.line == line


@pytest.mark.parametrize("text", [
    "gda 1\n",
    "gdr 1\ncase 1a\n",
    "gdr 1\ncase 1a\nkind R\nn 1\ndim 1\nT (0)\n",
    "gdr 1\ncase 1a\nkind R\nn 1\ndim 1\ngroup Z2\nT (0)\nmu (0)\n",
    "gdr 1\ncase 1a\nkind R\nn 1\ndim 1\ngroup Z2\nT (0)\ncolour red\n",
])
def test_record_errors(text):
    with pytest.raises(gda.DocumentError):
        gda.parse_record(text)
