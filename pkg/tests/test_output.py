import csv
import io
import json
from fractions import Fraction

from qeuler.cyclotomic import CycloRational
from qeuler.errors import PoleError
from qeuler.output import RECORD_FIELDS, ResultRecord, error_record, render_checks, render_error, render_records
from qeuler.padic import CycloPadic
from qeuler.qcore import RootOfUnity


def _records():
    return [
        ResultRecord.of("euler", {"n": 1, "q": "1/2", "w": RootOfUnity(4, 1)}, 0.25 - 1.5j, 1e-15, "closed"),
        ResultRecord.of("euler", {"n": 0, "q": "1/2", "chi": None}, CycloRational(1, [Fraction(1)]), 0.0, "closed"),
    ]


def test_json_round_trip():
    records = _records()
    parsed = json.loads(render_records(records, "json"))
    assert [row["object"] for row in parsed] == ["euler", "euler"]
    assert complex(parsed[0]["value_re"], parsed[0]["value_im"]) == records[0].complex()
    assert parsed[0]["params"] == {"n": "1", "q": "1/2", "w": "4:1"}
    assert "chi" not in parsed[1]["params"]
    assert parsed[1]["exact"] == "1"
    assert set(RECORD_FIELDS) <= set(parsed[0])


def test_rendering_is_deterministic():
    assert render_records(_records(), "json") == render_records(_records(), "json")


def test_csv_rows_and_empty_table():
    rows = list(csv.DictReader(io.StringIO(render_records(_records(), "csv"))))
    assert len(rows) == 2
    assert float(rows[0]["value_im"]) == -1.5
    assert rows[0]["params"] == "n=1 q=1/2 w=4:1"
    empty = render_records([], "csv")
    assert empty.strip() == ",".join(RECORD_FIELDS)
    assert json.loads(render_records([], "json")) == []
    assert render_records([], "plain") == ""


def test_plain_lines():
    text = render_records(_records(), "plain")
    first, second = text.splitlines()
    assert first.startswith("euler [closed] n=1 q=1/2 w=4:1: 0.25-1.5j")
    assert "error <= 1e-15" in first
    assert second == "euler [closed] n=0 q=1/2: 1.0 exact=1"


def test_padic_records_carry_the_ring_element():
    value = CycloPadic(3, 12, 3, [1, 2])
    record = ResultRecord.of("moment", {"n": 2}, value, level=5)
    data = record.to_dict()
    assert data["value_re"] is None
    assert data["padic"] == "3^12; 3^1; 1,2"
    assert data["level"] == 5
    assert record.complex() is None


def test_error_records():
    exc = PoleError("1 + w q^h vanishes")
    assert error_record(exc) == {"error": {"type": "PoleError", "message": "1 + w q^h vanishes"}}
    assert json.loads(render_error(exc, "json"))["error"]["type"] == "PoleError"
    assert render_error(exc, "plain") == "error: PoleError: 1 + w q^h vanishes\n"
    assert render_error(exc, "csv").splitlines()[0] == "type,message"


def test_check_rows():
    rows = [
        {"suite": "qcore", "check": "roots", "passed": True, "max_error": 0.0, "cases": 3, "detail": ""},
        {"suite": "euler", "check": "poles", "passed": False, "max_error": 0.5, "cases": 2, "detail": "q=1/2"},
    ]
    lines = render_checks(rows, "plain").splitlines()
    assert lines[0].startswith("PASS qcore: roots")
    assert lines[1].startswith("FAIL euler: poles") and lines[1].endswith("-- q=1/2")
    assert json.loads(render_checks(rows, "json"))[1]["passed"] is False
