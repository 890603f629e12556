import json

import pytest

from hellrank import load_builtin
from hellrank.cli import PER_NODE_METRICS, run
from hellrank.datasets import builtin_names


@pytest.fixture
def fig1_file(tmp_path):
    path = tmp_path / "fig1.tsv"
    path.write_text(
        "A\t1\nB\t1\nB\t2\nB\t3\nC\t2\nC\t3\nD\t3\nD\t4\nD\t5\nD\t6\nD\t7\n"
    )
    return str(path)


def run_ok(capsys, argv):
    assert run(argv) == 0
    return capsys.readouterr().out


class TestScores:
    def test_davis_default(self, capsys):
        out = run_ok(capsys, ["scores", "--dataset", "davis"])
        lines = out.splitlines()
        assert lines[0] == "label,score"
        assert len(lines) == 19
        assert lines[1].startswith("Theresa,")

    def test_json_format(self, capsys):
        out = run_ok(capsys, ["scores", "--dataset", "davis", "--format", "json"])
        data = json.loads(out)
        assert len(data) == 18 and "Nora" in data

    def test_normalize_max(self, capsys):
        out = run_ok(capsys, ["scores", "--dataset", "davis", "--normalize", "max"])
        scores = dict(line.split(",") for line in out.splitlines()[1:])
        assert max(float(v) for v in scores.values()) == pytest.approx(1.0)

    def test_all_metrics_wide_csv(self, capsys, fig1_file):
        out = run_ok(capsys, ["scores", "--input", fig1_file, "--metric", "all"])
        lines = out.splitlines()
        assert lines[0] == "label," + ",".join(PER_NODE_METRICS)
        assert [line.split(",")[0] for line in lines[1:]] == ["A", "B", "C", "D"]

    def test_opsahl_scalar(self, capsys, fig1_file):
        out = run_ok(capsys, ["scores", "--input", fig1_file, "--metric", "opsahl"])
        assert out == "metric,value\nopsahl,0.000000\n"

    def test_right_side(self, capsys):
        out = run_ok(
            capsys, ["scores", "--dataset", "davis", "--side", "right", "--metric", "degree2"]
        )
        assert len(out.splitlines()) == 15

    def test_output_file(self, tmp_path, fig1_file):
        dest = tmp_path / "scores.csv"
        assert run(["scores", "--input", fig1_file, "--output", str(dest)]) == 0
        assert dest.read_text().startswith("label,score\n")

    def test_weighted_and_node_list(self, capsys, tmp_path):
        edges = tmp_path / "edges.tsv"
        edges.write_text("a 1 2.0\na 2 1.0\nb 2 1.0\n")
        nodes = tmp_path / "nodes.txt"
        nodes.write_text("left z\n")
        out = run_ok(
            capsys,
            [
                "scores",
                "--input",
                str(edges),
                "--weighted",
                "--node-list",
                str(nodes),
                "--metric",
                "degree2",
            ],
        )
        assert "z,0.000000" in out


class TestDistances:
    def test_fig1_matrix(self, capsys, fig1_file):
        out = run_ok(capsys, ["distances", "--input", fig1_file])
        lines = out.splitlines()
        assert lines[0] == ",A,B,C,D"
        row_a = lines[1].split(",")
        assert float(row_a[2]) == pytest.approx(0.428373, abs=1e-6)
        assert float(row_a[4]) == pytest.approx(1.0)

    def test_raw_mode(self, capsys, fig1_file):
        out = run_ok(capsys, ["distances", "--input", fig1_file, "--mode", "raw"])
        assert float(out.splitlines()[1].split(",")[2]) == pytest.approx(1.082392, abs=1e-6)


class TestCorrelate:
    def test_davis_vs_degree(self, capsys):
        out = run_ok(capsys, ["correlate", "--dataset", "davis", "--metric-b", "degree2"])
        data = json.loads(out)
        assert data["kendall_tau"] == pytest.approx(0.647059, abs=1e-5)
        assert data["spearman_top_k"] == pytest.approx(0.723077, abs=1e-5)
        assert data["k"] == 5


class TestSweepK:
    def test_series_shape(self, capsys):
        out = run_ok(
            capsys, ["sweep-k", "--dataset", "davis", "--metric-b", "degree2", "--kmax", "10"]
        )
        lines = out.splitlines()
        assert lines[0] == "k,rho"
        assert len(lines) == 11
        assert lines[1].startswith("1,")


class TestThresholdGraph:
    def test_dot_isolates_flora_and_olivia(self, capsys):
        out = run_ok(capsys, ["threshold-graph", "--dataset", "davis", "--threshold", "0.5"])
        assert out.startswith("graph G {")
        # Flora and Olivia form their own two-node component: they connect to
        # each other and to nobody else
        edges = [line for line in out.splitlines() if " -- " in line]
        touching = [e for e in edges if "Flora" in e or "Olivia" in e]
        assert touching == ['  "Flora" -- "Olivia";']

    def test_csv_format(self, capsys, fig1_file):
        out = run_ok(
            capsys,
            ["threshold-graph", "--input", fig1_file, "--threshold", "0.43", "--format", "csv"],
        )
        assert out == "source,target\nA,B\nB,C\n"


class TestNullModel:
    def test_closed_form_payload(self, capsys):
        out = run_ok(
            capsys,
            ["null-model", "--n1", "50", "--n2", "2000", "--p", "0.005", "--k", "10"],
        )
        data = json.loads(out)
        assert set(data) == {"mean", "second_moment", "variance", "threshold", "sigmas"}
        assert data["threshold"] == pytest.approx(data["mean"] - data["variance"] ** 0.5)

    def test_with_monte_carlo(self, capsys):
        argv = [
            "null-model", "--n1", "50", "--n2", "2000", "--p", "0.005", "--k", "10",
            "--samples", "2000", "--method", "model", "--seed", "3",
        ]
        data = json.loads(run_ok(capsys, argv))
        assert data["monte_carlo"]["mean"] == pytest.approx(data["mean"], abs=0.05)
        assert json.loads(run_ok(capsys, argv)) == data  # deterministic

    def test_invalid_params_exit_1(self, capsys):
        assert run(["null-model", "--n1", "5", "--n2", "10", "--p", "0.5", "--k", "11"]) == 1
        assert "hellrank:" in capsys.readouterr().err


class TestProject:
    def test_csv(self, capsys, fig1_file):
        out = run_ok(capsys, ["project", "--input", fig1_file])
        assert out == "source,target\nA,B\nB,C\nB,D\nC,D\n"

    def test_dot(self, capsys, fig1_file):
        out = run_ok(capsys, ["project", "--input", fig1_file, "--format", "dot"])
        assert '"B" -- "D";' in out


class TestErrorsAndDeterminism:
    def test_missing_file_exit_1(self, capsys):
        assert run(["scores", "--input", "/nonexistent/file.tsv"]) == 1
        assert "hellrank:" in capsys.readouterr().err

    def test_unknown_metric_usage_error(self, fig1_file):
        with pytest.raises(SystemExit) as err:
            run(["scores", "--input", fig1_file, "--metric", "nope"])
        assert err.value.code == 2

    def test_unknown_subcommand_usage_error(self):
        with pytest.raises(SystemExit) as err:
            run(["frobnicate"])
        assert err.value.code == 2

    def test_threads_do_not_change_bytes(self, capsys):
        argv = ["scores", "--dataset", "davis"]
        single = run_ok(capsys, argv + ["--threads", "1"])
        multi = run_ok(capsys, argv + ["--threads", "4"])
        assert single == multi

    def test_builtin_registry(self):
        assert builtin_names() == ["davis"]
        assert load_builtin("davis") == load_builtin("davis")
        with pytest.raises(ValueError, match="unknown dataset"):
            load_builtin("imaginary")
