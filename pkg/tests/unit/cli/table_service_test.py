import pytest

from app.services.table_service import TABLE_ROWS, TableEntry, TableService


@pytest.fixture(scope="module")
def results():
    return TableService().run()


def test_every_row_passes(results):
    assert [r.label for r in results] == ["[4,2,1]", "[3,2,2]", "[3,1,2]", "[2,1,2]", "[2,1,1]"]
    assert all(r.passed for r in results)
    assert all(r.primitive and r.normal and r.verified for r in results)


def test_421_row_under_listed_modulus_fails():
    """The [4,2,1] row as listed (X^11+X^2+1) certifies alpha but fails the MSR test."""
    listed = TableEntry(4, 2, 1, 2, 11, "x^11+x^2+1", (1, 1), 2048, (0, 1))
    [result] = TableService((listed,)).run()
    assert result.primitive and result.normal
    assert not result.verified
    assert not result.passed
    assert result.note == ""


def test_determinant_count_of_first_row(results):
    assert results[0].determinants == 1451


def test_row_notes(results):
    notes = {r.label: r.note for r in results}
    assert notes["[2,1,1]"] == "listed bound 2^64 differs from formula 2^32"
    assert notes["[4,2,1]"] == "listed modulus X^11+X^2+1 is not MSR (singular at profile (1,3))"
    assert all(note == "" for label, note in notes.items() if label not in ("[2,1,1]", "[4,2,1]"))


def test_rows_serialize(results):
    row = results[-1].to_row()
    assert row[:4] == ["[2,1,1]", "F_2^5 mod X^5+X^2+1", "X+1", True]
    first = results[0].to_json()
    assert first["field"] == "F_2^11 mod X^11+X^9+1"
    assert first["note"].startswith("listed modulus")


def test_display_table(results, capsys):
    TableService().display_table(results)
    out = capsys.readouterr().out
    assert out.count("pass") == len(TABLE_ROWS)
    assert "FAIL" not in out
