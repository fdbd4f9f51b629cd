from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

from hamspec import cli
from hamspec.errors import ParameterError
from hamspec.families import build_F
from hamspec.graph import empty_graph, graph6_decode, graph6_encode

SCHEMA = json.loads((Path(cli.__file__).parent / "data/audit_report.schema.json").read_text())


def run(argv, stdin=""):
    out = io.StringIO()
    code = cli.main(argv, stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_spectra_triangle_and_k33():
    code, text = run(["spectra"], "Bw\nEFz_\n")
    assert code == 0
    k3, k33 = records(text)
    assert k3["rho"] == pytest.approx(2) and k3["mu"] == pytest.approx(4)
    assert k3["rho2"] == pytest.approx(-1)
    assert k33["rho"] == pytest.approx(3) and k33["mu"] == pytest.approx(6) and k33["rho2"] == 0.0
    assert k33["bounds"]["mu_upper"] == pytest.approx(6)
    assert k33["bounds"]["degree_bound_equality"] is True


def test_spectra_csv():
    code, text = run(["--output", "CSV", "spectra", "--alpha", "0,1"], "Bw\n")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["theta"] == "2.0;4.0" and rows[0]["bounds.mu_lower"] == "4.0"


def test_decode_error_reports_line_and_offset(capsys):
    code, _ = run(["spectra"], "Bw\n\nB!\n")
    assert code == 1
    err = capsys.readouterr().err
    assert "line 3" in err and "byte offset" in err


def test_closure_graph6_output():
    code, text = run(["--output", "GRAPH6", "closure", "--k", "4"], "Dhc\n")
    assert code == 0
    assert graph6_decode(text.strip()).m == 10


def test_bipartite_closure_extremal():
    f = graph6_encode(build_F(8, 1, 1).as_simple())
    code, text = run(["closure", "--k", "9", "--parts", "8,8"], f + "\n")
    assert code == 0 and records(text)[0]["complete"] is False


def test_family_gen_and_check_roundtrip():
    code, text = run(["--output", "GRAPH6", "family", "gen", "W_FAM", "--params", "n=6,s=1,r=1"])
    assert code == 0
    code, text = run(["family", "check", "W_FAM", "--params", "n=6,s=1,r=1"], text)
    assert records(text)[0]["member"] is True
    f = graph6_encode(build_F(7, 1, 0).as_simple())
    empty = graph6_encode(empty_graph(14))
    code, text = run(["family", "check", "F", "--params", "n=7,k=1,s=0"], f"{f}\n{empty}\n")
    a, b = records(text)
    assert a["member"] is True and b["member"] is False


def test_oracle_petersen():
    code, text = run(["oracle", "--property", "Q_TRACEABLE", "--q", "1"], "IheA@GUAo\n")
    assert code == 0 and records(text)[0]["answer"] is True
    code, text = run(["oracle", "--property", "HAM_CYCLE"], "IheA@GUAo\n")
    assert records(text)[0]["answer"] is False


def test_oracle_cap_is_input_error():
    code, _ = run(["--cap", "40", "oracle", "--property", "HAM_CYCLE"], "Bw\n")
    assert code == 1


def test_check_theorem_exit_codes(tmp_path):
    code, text = run(["check-theorem", "--id", "PETERSEN_FACTS", "--mode", "EXTREMAL",
                      "--report-file", str(tmp_path / "r.json")])
    assert code == 0
    jsonschema.validate(records(text)[0], SCHEMA)
    assert json.loads((tmp_path / "r.json").read_text())["status"] == "pass"
    code, text = run(["check-theorem", "--id", "STAB_W01P", "--params", "n=5,property=edge-ham,q=1",
                      "--mode", "EXHAUSTIVE"])
    assert code == 2 and records(text)[0]["failure_count"] == 30
    code, _ = run(["check-theorem", "--id", "LEM_71L", "--params", "n=4,q=0", "--mode", "EXHAUSTIVE",
                   "--budget", "50"])
    assert code == 3
    code, _ = run(["check-theorem", "--id", "NOPE", "--mode", "EXHAUSTIVE"])
    assert code == 1


def test_campaign_empty(tmp_path):
    cfg = tmp_path / "empty.toml"
    cfg.write_text("# nothing to run\n")
    code, text = run(["campaign", str(cfg), "--out", str(tmp_path / "out")])
    assert code == 0 and text == ""
    rows = list(csv.DictReader(open(tmp_path / "out" / "summary.csv")))
    assert rows == []


def test_campaign_isolates_entries(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text("""
[[audit]]
name = "ok"
id = "PETERSEN_FACTS"
mode = "EXTREMAL"

[[audit]]
name = "too_big"
id = "T_W11T_I"
mode = "EXHAUSTIVE"
n = 9
k = 2
s = 1

[[audit]]
name = "bad_param"
id = "PETERSEN_FACTS"
mode = "EXTREMAL"
bogus = 3

[[audit]]
name = "after"
id = "COR_31C"
mode = "GRID"
k = 1
s = 0
n = "8..10"
""")
    out = tmp_path / "out"
    code, text = run(["campaign", str(cfg), "--out", str(out)])
    rows = {r["name"]: r for r in records(text)}
    assert rows["ok"]["exit_code"] == 0 and rows["after"]["exit_code"] == 0
    assert rows["too_big"]["status"] == "capacity" and rows["too_big"]["exit_code"] == 3
    assert rows["bad_param"]["status"] == "error" and rows["bad_param"]["exit_code"] == 1
    assert code == 3
    for name in ("ok", "too_big", "after"):
        jsonschema.validate(json.loads((out / f"{name}.json").read_text()), SCHEMA)
    assert not (out / "bad_param.json").exists()
    summary = list(csv.DictReader(open(out / "summary.csv")))
    assert [r["name"] for r in summary] == ["ok", "too_big", "bad_param", "after"]


def test_campaign_rejects_malformed(tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("[[audit]]\nid = 'PETERSEN_FACTS'\n")
    assert run(["campaign", str(cfg), "--out", str(tmp_path)])[0] == 1
    cfg.write_text("oops = [\n")
    assert run(["campaign", str(cfg), "--out", str(tmp_path)])[0] == 1


def test_bundled_campaign_parses():
    entries = cli.load_campaign(Path(cli.__file__).parent / "data/desk-scale.toml")
    assert len(entries) == 26 and all("id" in e and "mode" in e for e in entries)


def test_config_validation():
    with pytest.raises(ParameterError):
        cli.Config(jobs=0)
    with pytest.raises(ParameterError):
        cli.Config(tol=1e-20)
