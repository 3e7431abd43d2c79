"""CLI wiring: subcommands, formats, exit codes, env precedence."""

import json

import pytest

from fcensus import cli
from fcensus.verify import VerifyOutcome


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_census_json(capsys):
    code, out = run_cli(capsys, ["census", "--p", "2", "--e", "2", "--n", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["counts"]["X"] == "88"
    assert doc["q"] == 4


def test_census_csv_matches_json(capsys):
    code, js = run_cli(capsys, ["census", "--p", "2", "--e", "1", "--n", "2"])
    assert code == 0
    code, cs = run_cli(
        capsys, ["census", "--p", "2", "--e", "1", "--n", "2", "--out", "csv"]
    )
    assert code == 0
    doc = json.loads(js)
    csv_counts = {}
    for line in cs.strip().splitlines()[1:]:
        kind, key, count, _ = line.split(",")
        if kind == "class":
            csv_counts[key] = count
    assert csv_counts == doc["counts"]
    assert doc["counts"]["X"] == "16"


def test_census_strata_cap_exit_code(capsys):
    code = cli.main(["census", "--p", "2", "--e", "3", "--n", "3", "--strata"])
    assert code == 3


def test_census_env_work_cap(capsys, monkeypatch):
    monkeypatch.setenv("FCENSUS_WORK_CAP", "10")
    code = cli.main(["census", "--p", "2", "--e", "2", "--n", "2"])
    assert code == 3
    # explicit flag wins over the environment
    capsys.readouterr()
    code, out = run_cli(
        capsys,
        ["census", "--p", "2", "--e", "2", "--n", "2", "--work-cap", "1000000"],
    )
    assert code == 0
    assert json.loads(out)["counts"]["X"] == "88"


def test_predict_examples(capsys):
    code, out = run_cli(
        capsys, ["predict", "--class", "X_n2_exact", "--p", "2", "--q", "4"]
    )
    assert code == 0 and json.loads(out)["value"] == "88"
    code, out = run_cli(
        capsys, ["predict", "--class", "X_inf_diag", "--p", "3", "--n", "2"]
    )
    doc = json.loads(out)
    assert (doc["coefficient"], doc["exponent"]) == ("9", 2)
    code, out = run_cli(capsys, ["predict", "--class", "X_inf", "--p", "2", "--n", "3"])
    doc = json.loads(out)
    assert (doc["coefficient"], doc["exponent"]) == ("183", 3)


def test_predict_usage_error(capsys):
    code = cli.main(["predict", "--class", "X_n2_exact", "--p", "2"])
    assert code == 2


def test_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["census", "--p", "2"])
    assert exc.value.code == 2


def test_quivers_and_shapes(capsys):
    code, out = run_cli(capsys, ["quivers", "--n", "4", "--maximizers"])
    doc = json.loads(out)
    assert code == 0 and doc["max_dim"] == 6 and len(doc["quivers"]) == 2
    code, out = run_cli(capsys, ["shapes", "--n", "7", "--maximizers"])
    doc = json.loads(out)
    assert code == 0 and doc["max_dim"] == 13 and len(doc["shapes"]) == 2
    code, out = run_cli(capsys, ["shapes", "--n", "2"])
    assert json.loads(out)["count"] == 3


def test_subalgebras_command(capsys):
    code, out = run_cli(capsys, ["subalgebras", "--p", "2", "--n", "2", "--dim", "2"])
    assert code == 0 and json.loads(out)["count"] == "7"
    code, out = run_cli(capsys, ["subalgebras", "--p", "2", "--n", "2", "--diagonalizable"])
    assert code == 0 and json.loads(out)["count"] == "4"


def test_verify_wiring(capsys, monkeypatch):
    outcomes = [
        VerifyOutcome("crit-xx", "pass", 1, 1, "exact", 1.0),
        VerifyOutcome("diag-yy", "expected-band-miss", 2, 3, "diagnostic", 1.0),
    ]
    monkeypatch.setattr("fcensus.verify.run_suite", lambda suite: outcomes)
    code, out = run_cli(capsys, ["verify", "--suite", "fast"])
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert [l["check_id"] for l in lines] == ["crit-xx", "diag-yy"]

    outcomes.append(VerifyOutcome("crit-zz", "fail", 0, 1, "exact", 1.0))
    code, out = run_cli(capsys, ["verify", "--suite", "fast"])
    assert code == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = cli.main(
        ["census", "--p", "2", "--e", "1", "--n", "2", "--out-file", str(target)]
    )
    assert code == 0
    assert json.loads(target.read_text())["counts"]["X"] == "16"
