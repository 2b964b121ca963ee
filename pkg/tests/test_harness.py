import json

import pytest

from gammasums.cli import main
from gammasums.errors import ConfigInvalid
from gammasums.harness import (
    SUITE_NAMES,
    SUITE_STATEMENTS,
    emit,
    run_suite,
    validate_config,
)


BASE_CFG = {
    "p": 3,
    "f": 1,
    "shape": [2],
    "rep": "std",
    "suites": ["arith"],
    "caps": {"tower": 2},
}


def test_validate_config_defaults():
    cfg = validate_config({"p": 3, "f": 1})
    assert cfg["shape"] == [2]
    assert cfg["caps"]["tower"] == 2
    assert cfg["seed"] == 1789


def test_validate_config_rejections():
    with pytest.raises(ConfigInvalid):
        validate_config({"suites": ["nonsense"]})
    with pytest.raises(ConfigInvalid):
        validate_config({"shape": [0]})
    with pytest.raises(ConfigInvalid):
        validate_config({"shape": [3], "suites": ["gl2-main"]})
    with pytest.raises(ConfigInvalid):
        validate_config({"p": 2, "f": 1, "rep": "sym2"})
    with pytest.raises(ConfigInvalid):
        validate_config({"bogus": 1})
    with pytest.raises(ConfigInvalid):
        run_suite(BASE_CFG, suites=["nope"])


def test_run_suite_reports_pass():
    reports = run_suite(BASE_CFG)
    assert len(reports) == 1
    assert reports[0].suite == "arith"
    assert reports[0].passed
    names = [c.name for c in reports[0].checks]
    assert "gauss-product-identity" in names
    assert "hasse-davenport" in names


def test_reports_byte_identical():
    out1 = emit(run_suite(BASE_CFG))
    out2 = emit(run_suite(BASE_CFG))
    assert out1 == out2
    payload = json.loads(out1)
    assert payload[0]["passed"] is True


def test_emit_csv():
    reports = run_suite(BASE_CFG)
    csv = emit(reports, fmt="csv")
    lines = csv.strip().splitlines()
    assert lines[0] == "suite,check,passed,detail"
    assert all(line.startswith("arith,") for line in lines[1:])


def test_suite_statements_cover_all():
    assert set(SUITE_STATEMENTS) == set(SUITE_NAMES)


def test_cli_run(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(BASE_CFG))
    out_path = tmp_path / "report.json"
    code = main(["run", "--config", str(cfg_path), "--out", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload[0]["suite"] == "arith"
    # identical second run, byte for byte
    out2 = tmp_path / "report2.json"
    assert main(["run", "--config", str(cfg_path), "--out", str(out2)]) == 0
    assert out_path.read_text() == out2.read_text()


def test_cli_csv_and_listing(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(BASE_CFG))
    out_path = tmp_path / "report.csv"
    assert main(["run", "--config", str(cfg_path), "--out", str(out_path)]) == 0
    assert out_path.read_text().startswith("suite,check,passed")
    assert main(["list-suites"]) == 0
    captured = capsys.readouterr()
    assert "gl2-main" in captured.out
    assert main(["explain", "gl3-top"]) == 0
    captured = capsys.readouterr()
    assert "determinant" in captured.out


def test_cli_config_errors(tmp_path):
    missing = tmp_path / "missing.json"
    assert main(["run", "--config", str(missing)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", "--config", str(bad)]) == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"suites": ["nonsense"]}))
    assert main(["run", "--config", str(wrong)]) == 2


def test_cli_seed_override(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(BASE_CFG))
    out_path = tmp_path / "report.json"
    assert (
        main(
            ["run", "--config", str(cfg_path), "--out", str(out_path), "--seed", "7"]
        )
        == 0
    )
    payload = json.loads(out_path.read_text())
    assert payload[0]["seed"] == 7
