import csv
import io
import json

import pytest

from qeuler.cli import main, parse_number, parse_range, parse_s
from qeuler.configuration import CONFIG_ENV_VAR
from qeuler.errors import EXIT_DOMAIN, EXIT_OK, DomainError


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_argument_parsers():
    assert parse_number("1/2").denominator == 2
    assert parse_number("0.999999").denominator == 10**6
    assert parse_number("0.5+0.2j") == 0.5 + 0.2j
    assert parse_s("-3,0") == -3 + 0j
    assert parse_s("2") == 2 + 0j
    assert parse_range("0..3") == [0, 1, 2, 3]
    assert parse_range("4") == [4]
    assert parse_range("3..2") == []
    for bad in (lambda: parse_number("abc"), lambda: parse_s("1,2,3"), lambda: parse_range("a..b")):
        with pytest.raises(DomainError):
            bad()


def test_euler_degree_zero(capsys):
    code, out = run(capsys, "euler", "--n", "0", "--h", "1", "--q", "1/2", "--w", "1:0", "--x", "0")
    assert code == EXIT_OK
    assert out.startswith("euler [closed]")
    assert ": 1.0" in out


def test_euler_both_paths(capsys):
    code, records = run_json(
        capsys, "euler", "--n", "2", "--h", "1", "--q", "1/2", "--w", "4:1", "--x", "0", "--mode", "both", "--tol", "1e-13"
    )
    assert code == EXIT_OK
    assert [record["path"] for record in records] == ["closed", "series", "closed-series"]
    closed, series, difference = records
    assert abs(complex(closed["value_re"], closed["value_im"]) - complex(series["value_re"], series["value_im"])) < 1e-11
    assert difference["value_re"] < 1e-11


def test_euler_classical_limit(capsys):
    code, records = run_json(capsys, "euler", "--n", "1", "--h", "1", "--q", "0.999999", "--w", "1:0", "--x", "0")
    assert code == EXIT_OK
    assert abs(records[0]["value_re"] + 0.5) < 1e-4


def test_euler_pole_exits_with_domain_code(capsys):
    code, record = run_json(capsys, "euler", "--n", "1", "--h", "0", "--q", "1/2", "--w", "2:1")
    assert code == EXIT_DOMAIN
    assert record["error"]["type"] == "PoleError"


def test_bad_root_of_unity(capsys):
    code, out = run(capsys, "euler", "--n", "1", "--q", "1/2", "--w", "four")
    assert code == EXIT_DOMAIN
    assert out.startswith("error: DomainError")


def test_zeta_at_zero(capsys):
    code, records = run_json(capsys, "zeta", "--s", "0,0", "--h", "1", "--q", "1/2", "--w", "1:0")
    assert code == EXIT_OK
    assert abs(records[0]["value_re"] + 0.5) < 1e-12
    assert records[0]["object"] == "zeta"


def test_l_function_matches_generalized_euler(capsys):
    code, l_records = run_json(capsys, "l", "--s", "-3,0", "--chi", "3;1", "--h", "1", "--q", "1/2", "--w", "2:1")
    assert code == EXIT_OK
    code, e_records = run_json(capsys, "euler", "--n", "3", "--chi", "3;1", "--h", "1", "--q", "1/2", "--w", "2:1")
    assert code == EXIT_OK
    assert e_records[0]["object"] == "generalized-euler"
    l_value = complex(l_records[0]["value_re"], l_records[0]["value_im"])
    e_value = complex(e_records[0]["value_re"], e_records[0]["value_im"])
    assert abs(l_value - e_value) < 1e-9 * max(1.0, abs(e_value))


def test_l_function_both_paths(capsys):
    code, records = run_json(capsys, "l", "--s", "2,1", "--chi", "5;1", "--q", "1/2", "--path", "both", "--tol", "1e-12")
    assert code == EXIT_OK
    assert [record["path"] for record in records] == ["direct", "decomposed", "direct-decomposed"]
    assert records[2]["value_re"] < 1e-9


def test_euler_table(capsys):
    code, out = run(capsys, "table", "--object", "euler", "--n", "0..5", "--q", "1/2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["params"].split()[1] for row in rows] == [f"n={n}" for n in range(6)]
    assert float(rows[0]["value_re"]) == 1.0


def test_table_near_q_one_approaches_classical_numbers(capsys):
    code, records = run_json(capsys, "table", "--object", "euler", "--n", "0..5", "--q", "0.999999", "--workers", "2")
    assert code == EXIT_OK
    classical = [1, -0.5, 0, 0.25, 0, -0.5]
    for record, expected in zip(records, classical):
        assert abs(record["value_re"] - expected) < 1e-3


def test_empty_table_is_header_only(capsys):
    code, out = run(capsys, "table", "--object", "euler", "--n", "3..2", "--q", "1/2", "--format", "csv")
    assert code == EXIT_OK
    assert out.strip() == "object,params,value_re,value_im,error_bound,path"


def test_zeta_and_l_tables(capsys):
    code, records = run_json(capsys, "table", "--object", "zeta", "--n", "0..3", "--q", "1/2")
    assert code == EXIT_OK
    assert len(records) == 4
    assert records[1]["params"]["s"] == "-1.0"
    code, _ = run(capsys, "table", "--object", "l", "--n", "0..2", "--q", "1/2")
    assert code == EXIT_DOMAIN


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "qcore", "--grid", "small")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS qcore") for line in lines)


def test_moment_oracle(capsys):
    code, records = run_json(capsys, "moment", "--n", "2", "--q", "4", "--prime", "3", "--precision", "12")
    assert code == EXIT_OK
    record = records[0]
    assert record["valuation"] >= 8
    assert record["value_re"] is None
    assert record["padic"].startswith("3^12;")
    assert record["level"] >= 2


def test_output_is_deterministic(capsys):
    argv = ("table", "--object", "zeta", "--n", "0..2", "--q", "1/2", "--w", "4:1", "--format", "json")
    assert run(capsys, *argv) == run(capsys, *argv)


def test_environment_config(tmp_path, monkeypatch, capsys):
    path = tmp_path / "qeuler.conf"
    path.write_text("output=json\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    code, out = run(capsys, "euler", "--n", "0", "--q", "1/2")
    assert code == EXIT_OK
    assert json.loads(out)[0]["value_re"] == 1.0


def test_invalid_config_file(tmp_path, capsys):
    path = tmp_path / "bad.yaml"
    path.write_text("tol: -1\n", encoding="utf-8")
    code, out = run(capsys, "euler", "--n", "0", "--q", "1/2", "--config", str(path))
    assert code == EXIT_DOMAIN
    assert out.startswith("error: ValueError")
