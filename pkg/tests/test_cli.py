"""Command-line surface: dispatch, formats, exit codes, determinism."""

import json

import pytest

from diobasis.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_basic_solve(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--algo", "lex", "--no-timing", "1 = 2")
        assert code == 0
        assert out == "2 1\nbasis size: 1\n"

    def test_every_algorithm_agrees(self, capsys):
        outputs = set()
        for algo in ("lex", "completion", "graph", "slopes"):
            code, out, _ = run_cli(capsys, "solve", "--algo", algo, "--no-timing", "2 1 = 1")
            assert code == 0
            outputs.add(out)
        assert outputs == {"0 1 1\n1 0 2\nbasis size: 2\n"}

    def test_timing_line_present_by_default(self, capsys):
        _, out, _ = run_cli(capsys, "solve", "1 = 2")
        assert "time:" in out.splitlines()[-1]

    def test_byte_identical_without_timing(self, capsys):
        _, first, _ = run_cli(capsys, "solve", "--no-timing", "3 = 5 7")
        _, second, _ = run_cli(capsys, "solve", "--no-timing", "3 = 5 7")
        assert first == second

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--format", "json", "--no-timing", "1 = 2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "diobasis.solve/1"
        assert payload["basis"] == [[2, 1]]
        assert payload["size"] == 1
        assert "time_s" not in payload

    def test_json_timing_field(self, capsys):
        _, out, _ = run_cli(capsys, "solve", "--format", "json", "1 = 2")
        assert "time_s" in json.loads(out)

    def test_stdin_input(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("1 = 2\n"))
        code, out, _ = run_cli(capsys, "solve", "--no-timing", "-")
        assert code == 0 and out.startswith("2 1\n")

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "eq.txt"
        path.write_text("2 = 2\n")
        code, out, _ = run_cli(capsys, "solve", "--no-timing", "--file", str(path))
        assert code == 0 and out.startswith("1 1\n")

    def test_dump_slopes3(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--dump-slopes3", "5", "3", "2")
        assert code == 0
        assert out == "1 1 1\n2 0 5\n3 5 0\n"

    def test_emit_graph(self, capsys, tmp_path):
        path = tmp_path / "graph.txt"
        code, _, _ = run_cli(
            capsys, "solve", "--no-timing", "--emit-graph", str(path), "1 = 2"
        )
        assert code == 0
        assert path.read_text().splitlines()[0] == "-2: (1->-1)"

    def test_malformed_equation_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "solve", "1 x = 2")
        assert code == 2
        assert "token 2" in err


class TestVerify:
    def test_agree_line(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "2 1 = 1")
        assert code == 0
        assert out == "AGREE (4 algorithms, oracle), basis size 2\n"

    def test_oracle_skipped_over_cap(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--oracle-cap", "10", "2 1 = 1")
        assert code == 0
        assert out == "AGREE (4 algorithms), basis size 2\n"
        assert "oracle skipped" in err

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--format", "json", "1 = 2")
        payload = json.loads(out)
        assert payload["agree"] is True
        assert payload["sizes"]["oracle"] == 1
        assert code == 0


class TestGen:
    def test_emits_ten_lines_per_class(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "--class", "2,3,13", "--seed", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 10
        assert all("=" in line for line in lines)

    def test_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "gen", "--class", "1,2,5", "--seed", "3")
        _, second, _ = run_cli(capsys, "gen", "--class", "1,2,5", "--seed", "3")
        assert first == second


class TestUnify:
    def test_trivial_problem(self, capsys):
        code, out, _ = run_cli(capsys, "unify", "1 = 1")
        assert code == 0
        assert out == "u1 = z1\nv1 = z1\n"

    def test_doubling_problem(self, capsys):
        code, out, _ = run_cli(capsys, "unify", "2 = 1 1")
        assert code == 0
        assert out.splitlines() == [
            "u1 = z1 + z2 + z3",
            "v1 = z2 + 2*z3",
            "v2 = 2*z1 + z2",
        ]

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "unify", "--format", "json", "1 = 1")
        payload = json.loads(out)
        assert payload["verified"] is True
        assert payload["fresh_variables"] == 1


class TestBenchCommand:
    def test_tiny_benchmark_run(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys,
            "bench",
            "--classes", "1,2,2;1,2,3",
            "--seed", "1",
            "--runs", "1",
            "--out", str(tmp_path),
            "--quiet",
        )
        assert code == 0
        assert "classes: 2" in out
        assert (tmp_path / "wins.txt").exists()
        assert (tmp_path / "metadata.json").exists()
        meta = json.loads((tmp_path / "metadata.json").read_text())
        assert meta["policy"]["runs"] == 1

    def test_exec_mode(self, capsys, tmp_path):
        import stat

        solver = tmp_path / "external"
        solver.write_text("#!/bin/sh\ncat > /dev/null\necho '1 1'\n")
        solver.chmod(solver.stat().st_mode | stat.S_IEXEC)
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(
            capsys,
            "bench",
            "--classes", "1,2,2",
            "--runs", "1",
            "--exec", str(solver),
            "--out", str(out_dir),
            "--quiet",
        )
        assert code == 0
        meta = json.loads((out_dir / "metadata.json").read_text())
        assert meta["timing_mode"] == "internal-vs-subprocess"
