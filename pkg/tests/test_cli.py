import json

from click.testing import CliRunner

from gapstat.base import ConvergentOverflow, ThreeGapMismatch
from gapstat.cli import cli, run_command

# --- Group 1: data commands ---


def test_generate_vdc():
    result = CliRunner().invoke(cli, ["generate", "--seq", "vdc:b=2", "--n", "4"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("n,x\n1,0.5\n2,0.25\n3,0.75\n4,0.125\n")


def test_generate_uses_largest_n_and_writes_file(tmp_path):
    path = tmp_path / "points.csv"
    result = CliRunner().invoke(
        cli, ["generate", "--seq", "vdc:b=2", "--n", "2,3", "--zero", "-o", str(path)]
    )
    assert result.exit_code == 0, result.output
    assert path.read_text() == "n,x\n1,0\n2,0.5\n3,0.25\n"
    assert "3 points of vdc:b=2" in result.output


def test_config_file_supplies_defaults(tmp_path):
    config = tmp_path / "experiment.json"
    config.write_text(json.dumps({"seq": "vdc:b=3", "n": "2"}))
    result = CliRunner().invoke(cli, ["--config", str(config), "generate"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("n,x\n1,0.33333333333333331\n2,0.66666666666666663\n")


def test_paircorr_rows(tmp_path):
    path = tmp_path / "paircorr.csv"
    result = CliRunner().invoke(
        cli,
        [
            "paircorr",
            "--seq", "kronecker:phi",
            "--n", "100,200,400,800,1600",
            "--alpha", "1",
            "--s", "1",
            "-o", str(path),
        ],
    )
    assert result.exit_code == 0, result.output
    lines = path.read_text().splitlines()
    assert lines[0] == "N,s,alpha,raw_count,value,saturated"
    assert len(lines) == 6
    assert lines[1].startswith("100,1,1,")


def test_paircorr_deviation(tmp_path):
    path = tmp_path / "deviation.csv"
    result = CliRunner().invoke(
        cli,
        ["paircorr", "--seq", "random:seed=1", "--n", "100,1000", "--deviation", "3",
         "-o", str(path)],
    )
    assert result.exit_code == 0, result.output
    assert path.read_text().splitlines()[0] == "N,K,alpha,F"


def test_gaps_table_and_classification(tmp_path):
    runner = CliRunner()
    table = tmp_path / "gaps.csv"
    result = runner.invoke(cli, ["gaps", "--n", "2,3,4", "-o", str(table)])
    assert result.exit_code == 0, result.output
    lines = table.read_text().splitlines()
    assert lines[0] == "N,k,L_k,N_k,N^alpha*L_k"
    assert lines[1].startswith("2,1,")
    assert sum(int(line.split(",")[3]) for line in lines[1:]) == 2 + 3 + 4

    classified = tmp_path / "families.csv"
    result = runner.invoke(
        cli, ["gaps", "--n", "144,233,377,610,987", "--classify", "-o", str(classified)]
    )
    assert result.exit_code == 0, result.output
    assert "obstructions indicated" in result.output
    text = classified.read_text()
    assert text.splitlines()[0] == "N,k,L_k,N_k,N^alpha*L_k,label"
    assert "alpha_intermediate" in text


def test_discrepancy_variants(tmp_path):
    runner = CliRunner()
    plain = tmp_path / "star.csv"
    result = runner.invoke(cli, ["discrepancy", "--seq", "vdc:b=2", "--n", "1,2", "-o", str(plain)])
    assert result.exit_code == 0, result.output
    assert plain.read_text().splitlines() == [
        "N,star,extreme,witness",
        "1,0.5,1,\"[0, (0.5))\"",
        "2,0.5,0.75,\"[0, (0.5)]\"",
    ]

    bound = tmp_path / "pc.csv"
    result = runner.invoke(
        cli, ["discrepancy", "--n", "2000", "--pc-bound", "alpha=0.8", "-o", str(bound)]
    )
    assert result.exit_code == 0, result.output
    header, row = bound.read_text().splitlines()
    assert header.startswith("N,alpha,K,F,bound")
    assert row.split(",")[6] == "true"


# --- Group 2: verification ---


def test_verify_writes_json_report(tmp_path):
    path = tmp_path / "report.json"
    result = CliRunner().invoke(
        cli, ["verify", "three_gap", "--trials", "2", "--max-n", "200", "-o", str(path)]
    )
    assert result.exit_code == 0, result.output
    document = json.loads(path.read_text())
    assert document["failures"] == 0
    assert [suite["suite_id"] for suite in document["suites"]] == ["three_gap"]
    assert "three_gap: pass" in result.output


def test_verify_list():
    result = CliRunner().invoke(cli, ["verify", "--list"])
    assert result.exit_code == 0
    assert "ostrowski:" in result.output
    assert "pc_bound:" in result.output


def test_verify_archives_and_reports_merge(tmp_path):
    runner = CliRunner()
    db = tmp_path / "runs.db"
    first, second = tmp_path / "a.json", tmp_path / "b.csv"
    result = runner.invoke(
        cli,
        ["verify", "ostrowski", "--trials", "1", "--max-n", "300", "-o", str(first),
         "--db", str(db)],
    )
    assert result.exit_code == 0, result.output
    assert db.exists()
    result = runner.invoke(
        cli,
        ["verify", "three_gap", "--trials", "1", "--max-n", "100", "--format", "csv",
         "-o", str(second)],
    )
    assert result.exit_code == 0, result.output

    merged = tmp_path / "merged.json"
    result = runner.invoke(cli, ["report", str(first), str(second), "-o", str(merged)])
    assert result.exit_code == 0, result.output
    suites = [suite["suite_id"] for suite in json.loads(merged.read_text())["suites"]]
    assert suites == ["ostrowski", "three_gap"]


# --- Group 3: errors and exit codes ---


def test_bad_sequence_is_a_usage_error():
    result = CliRunner().invoke(cli, ["generate", "--seq", "halton:b=2"])
    assert result.exit_code == 2
    assert "Unknown sequence kind 'halton'" in result.output


def test_budget_refusal_is_a_usage_error():
    result = CliRunner().invoke(cli, ["generate", "--n", "100000000000"])
    assert result.exit_code == 2
    assert "extended precision" in result.output


def test_unknown_suite_is_a_usage_error():
    result = CliRunner().invoke(cli, ["verify", "no_such_suite"])
    assert result.exit_code == 2
    assert "Unknown suites" in result.output


def test_run_command_exit_codes(tmp_path):
    assert run_command(["verify", "--list"]) == 0
    assert run_command(["paircorr", "--alpha", "2"]) == 2
    assert run_command(["verify", "three_gap", "--trials", "1", "--max-n", "50",
                        "-o", str(tmp_path / "r.json")]) == 0


def test_run_command_maps_numerical_errors(monkeypatch, capsys):
    def mismatch(*args, **kwargs):
        raise ThreeGapMismatch("lengths disagree", predicted=None, literal=None, empirical=None)

    monkeypatch.setattr("gapstat.cli.gap_spectrum", mismatch)
    assert run_command(["gaps", "--n", "5"]) == 1
    assert "ThreeGapMismatch: lengths disagree" in capsys.readouterr().err

    def overflow(*args, **kwargs):
        raise ConvergentOverflow(40, 39)

    monkeypatch.setattr("gapstat.cli.gap_spectrum", overflow)
    assert run_command(["gaps", "--n", "5"]) == 2
    assert "last safe index is 39" in capsys.readouterr().err
