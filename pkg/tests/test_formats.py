import json
from pathlib import Path

import pytest

from eostrata import dieudonne, formats, strata
from eostrata.fields import gf
from eostrata.formats import FormatError, read_module, write_module

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def test_emit_table_sorting():
    records = strata.all_strata(1)
    csv_text = formats.emit_table(list(reversed(records)), "csv").decode().splitlines()
    assert csv_text[0] == "g,phi,dim,a,f,w,word,kraft"
    assert len(csv_text) == 3
    assert csv_text[1].startswith("1,0,0,")


def test_emit_table_g2_golden():
    data = formats.emit_table(strata.all_strata(2), "csv")
    assert data == (GOLDEN / "enumerate_g2.csv").read_bytes()
    rows = formats.parse_table(data, "csv")
    assert [r.dim for r in rows] == [0, 1, 2, 3]


def test_emit_table_errors():
    with pytest.raises(FormatError):
        formats.emit_table([], "csv")
    with pytest.raises(FormatError):
        formats.emit_table(strata.all_strata(1), "xml")


@pytest.mark.parametrize("fmt", ["csv", "structured"])
def test_table_round_trip(fmt):
    records = strata.all_strata(3)
    rows = formats.parse_table(formats.emit_table(records, fmt), fmt)
    assert rows == [formats.StratumTableRow.from_record(r) for r in records]


def test_aligned_table():
    text = formats.emit_table(strata.all_strata(2), "table").decode().splitlines()
    assert text[0].split() == ["g", "phi", "dim", "a", "f", "w", "word", "kraft"]
    assert len(text) == 2 + 4


def test_emitters_deterministic():
    a = strata.all_strata(3)
    b = list(reversed(strata.all_strata(3)))
    for fmt in formats.TABLE_FORMATS:
        assert formats.emit_table(a, fmt) == formats.emit_table(b, fmt)
    assert formats.emit_dot(strata.eo_poset(3)) == formats.emit_dot(strata.eo_poset(3))


def test_row_fields():
    row = formats.StratumTableRow.from_record(strata.stratum((1, 2)))
    assert (row.phi, row.w, row.word, row.kraft) == ("1,2", "-2,-1", "0-1-0", "F^2;V^2")


def test_emit_dot_small():
    dot = formats.emit_dot(strata.eo_poset(1)).decode()
    assert dot.count("[label=") == 2 and dot.count("->") == 1
    dot = formats.emit_dot(strata.eo_poset(2)).decode()
    assert dot.count("[label=") == 4 and dot.count("->") == 3
    assert 'label="0,1 | 1"' in dot


def test_emit_dot_g3_golden():
    assert formats.emit_dot(strata.eo_poset(3)) == (GOLDEN / "poset_g3_pointwise.dot").read_bytes()


def test_emit_census():
    text = formats.emit_census(dieudonne.brute_force_census(2, 1)).decode()
    assert "candidates 16" in text and "phi=0 count=" in text and "phi=1 count=" in text


# ---------------------------------------------------------------- module documents


def test_read_ordinary_fixture():
    m = read_module((FIXTURES / "ordinary_g1.json").read_bytes())
    assert dieudonne.validate(m) == []
    assert dieudonne.final_type(m).phi == strata.ElementarySequence((1,))


@pytest.mark.parametrize("name", ["ordinary_g1.json", "corrupted_g1.json", "unpolarized_n3.json", "ffvv_g2_f4.json"])
def test_canonical_round_trip(name):
    doc = (FIXTURES / name).read_bytes()
    m = read_module(doc)
    out = write_module(m)
    assert read_module(out) == m
    assert write_module(read_module(out)) == out


def test_canonical_fixture_is_fixed_point():
    doc = (FIXTURES / "ordinary_g1.json").read_bytes()
    assert write_module(read_module(doc)) == doc


def test_derived_V_is_written():
    m = read_module((FIXTURES / "superspecial_g1_p3.json").read_bytes())
    doc = json.loads(write_module(m))
    assert doc["V"] == [[0, 2], [0, 0]]


def test_shape_error():
    with pytest.raises(FormatError, match="2x2 matrix, got 3x2"):
        read_module((FIXTURES / "bad_shape.json").read_bytes())


def test_out_of_range_residue():
    doc = {"p": 3, "n": 1, "F": [[0]], "V": [[5]]}
    with pytest.raises(FormatError, match="'V', row 0, column 0"):
        read_module(json.dumps(doc))


def test_parse_error_has_line():
    with pytest.raises(FormatError, match="line 2"):
        read_module('{"p": 2,\n "n": }')


def test_field_errors():
    with pytest.raises(FormatError, match="modulus"):
        read_module(json.dumps({"p": 2, "a": 2, "n": 1, "F": [[0]], "V": [[1]]}))
    with pytest.raises(FormatError, match="reducible"):
        read_module(json.dumps({"p": 2, "a": 2, "modulus": [1, 0, 1], "n": 1, "F": [[0]], "V": [[1]]}))
    with pytest.raises(FormatError, match="missing"):
        read_module(json.dumps({"p": 2, "F": [[0]]}))
    with pytest.raises(FormatError, match="unknown"):
        read_module(json.dumps({"p": 2, "n": 1, "F": [[0]], "V": [[1]], "G": 1}))


def test_extension_field_document():
    K = gf(2, 2)
    m = dieudonne.standard_module((0, 1), K)
    doc = write_module(m)
    assert b'"modulus": [1, 1, 1]' in doc
    assert read_module(doc) == m
