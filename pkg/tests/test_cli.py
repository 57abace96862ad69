"""CLI dispatch: subcommands, exit codes, golden output lines."""

import io
import json
import math

from tricotree.cli import main
from tricotree import (
    derived_stats,
    enumerate_min_covers,
    max_matching,
    nullity_exact,
    tree_from_outdegrees,
    tricolour,
)


def run_cli(argv, capsys, stdin_text=None, monkeypatch=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_limits_geometric_golden(capsys):
    code, out, _ = run_cli(["limits", "--family", "geometric:0.5"], capsys)
    assert code == 0
    data = json.loads(out)
    assert abs(data["q"] - (math.sqrt(5.0) - 1.0) / 2.0) < 1e-9
    assert data["regime"] == 1
    assert abs(data["p_green"] + data["p_orange"] + data["p_red"] - 1.0) < 1e-9
    # 12 significant digits in the payload
    assert data["q"] == float(f"{data['q']:.12g}")


def test_limits_regime3(capsys):
    code, out, _ = run_cli(["limits", "--family", "factorial:1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["regime"] == 3
    assert (data["p_green"], data["p_orange"], data["p_red"]) == (0.0, 0.0, 1.0)
    assert (data["lim_I"], data["lim_M"], data["lim_N"]) == (1.0, 0.0, 1.0)


def test_tricolor_golden_line(capsys, monkeypatch):
    # regenerate the expected line from the brute-force oracle, then also
    # pin the literal bytes
    t = tree_from_outdegrees([1, 1, 0])
    report = enumerate_min_covers(t)
    colours = "".join(c.letter for c in report.colours())
    tc = tricolour(t)
    ind, mat, nul = derived_stats(tc)
    assert (ind, mat, nul) == (t.n - report.cover_size, max_matching(t), nullity_exact(t))
    expected = f"{colours}\t{tc.n_g} {tc.n_o} {tc.n_r} {ind} {mat} {nul}"
    assert expected == "RGR\t1 0 2 2 1 1"

    code, out, _ = run_cli(["tricolor"], capsys, stdin_text="1 1 0\n", monkeypatch=monkeypatch)
    assert code == 0
    assert out == expected + "\n"


def test_tricolor_reads_multiple_lines_and_comments(capsys, monkeypatch):
    text = "# header\n0\n\n2 0 0\n"
    code, out, _ = run_cli(["tricolor"], capsys, stdin_text=text, monkeypatch=monkeypatch)
    assert code == 0
    assert out.splitlines() == ["R\t0 0 1 1 0 1", "GRR\t1 0 2 2 1 1"]


def test_sample_single_vertex(capsys):
    code, out, _ = run_cli(
        ["sample", "--family", "poisson:1", "--n", "1", "--count", "1", "--seed", "7"],
        capsys,
    )
    assert code == 0
    assert out == "0\n"


def test_sample_deterministic_and_valid(capsys):
    argv = ["sample", "--family", "geometric:0.5", "--n", "9", "--count", "5", "--seed", "3"]
    code, out1, _ = run_cli(argv, capsys)
    assert code == 0
    code, out2, _ = run_cli(argv, capsys)
    assert out1 == out2
    lines = out1.splitlines()
    assert len(lines) == 5
    for line in lines:
        t = tree_from_outdegrees([int(tok) for tok in line.split()])
        assert t.n == 9


def test_sample_infeasible_is_runtime_error(capsys):
    code, _, err = run_cli(["sample", "--family", "binary:1,1", "--n", "4"], capsys)
    assert code == 2
    assert "error" in err


def test_usage_errors_exit_one(capsys):
    assert run_cli(["sample", "--n", "3"], capsys)[0] == 1  # missing --family
    assert run_cli(["bogus-command"], capsys)[0] == 1
    assert run_cli([], capsys)[0] == 1


def test_bad_family_string_is_usage_error(capsys):
    code, _, err = run_cli(["limits", "--family", "zeta:1"], capsys)
    assert code == 1
    assert "explicit:" in err  # grammar is printed


def test_help_exits_zero(capsys):
    assert run_cli(["--help"], capsys)[0] == 0


def test_experiment_csv_stdout(capsys, monkeypatch):
    monkeypatch.setenv("TRICOLOR_THREADS", "1")
    code, out, _ = run_cli(
        [
            "experiment", "--family", "geometric:0.5", "--sizes", "1,10",
            "--replicates", "4", "--seed", "11", "--format", "csv",
        ],
        capsys,
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("family,n,replicates,seed,mean_ng")
    assert len(lines) == 3
    assert lines[1].startswith("geometric:0.5,1,4,11,")


def test_experiment_json_to_file(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TRICOLOR_THREADS", "1")
    out_path = tmp_path / "records.json"
    code, out, _ = run_cli(
        [
            "experiment", "--family", "poisson:1", "--sizes", "12",
            "--replicates", "3", "--seed", "2", "--format", "json",
            "--out", str(out_path),
        ],
        capsys,
    )
    assert code == 0
    assert out == ""
    payload = json.loads(out_path.read_text())
    assert payload[0]["n"] == 12 and payload[0]["replicates"] == 3


def test_oracle_check_passes(capsys):
    code, out, _ = run_cli(["oracle-check", "--max-n", "5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "n=5 trees=14 pass"
    assert all("pass" in line for line in lines)
