"""CLI surface: subcommands, JSON/CSV schemas, exit codes, determinism."""
from __future__ import annotations

import json
import subprocess
import sys

from click.testing import CliRunner

from solfree.cli import main


def invoke(*args: str):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def run_process(*args: str):
    return subprocess.run(
        [sys.executable, "-m", "solfree.cli", *args],
        capture_output=True,
        text=True,
        timeout=300,
    )


class TestSolve:
    def test_json_schema(self):
        out = invoke("solve", "--eq", "2x+2y=5z", "--n", "10")
        assert out.exit_code == 0
        row = json.loads(out.output)
        assert set(row) == {"equation", "n", "size", "set", "optimal", "nodes", "millis"}
        assert row["size"] == 6
        assert row["optimal"] is True
        assert row["millis"] == 0  # deterministic mode
        members = [int(x) for x in row["set"].split(",")]
        assert len(members) == 6

    def test_all_sets(self):
        out = invoke("solve", "--eq", "2x+2y=5z", "--n", "3", "--all-sets", "--cap", "10")
        row = json.loads(out.output)
        assert row["all_sets"] == ["1,2", "1,3"]
        assert row["truncated"] is False

    def test_invariant_equation_exit_2(self):
        proc = run_process("solve", "--eq", "x+y=2z", "--n", "5")
        assert proc.returncode == 2
        err = json.loads(proc.stderr)
        assert err["error"] == "InvariantViolation"

    def test_budget_exit_3(self):
        proc = run_process("solve", "--eq", "3x+3y=2z", "--n", "30", "--node-budget", "1")
        assert proc.returncode == 3
        row = json.loads(proc.stdout)  # best-found row still emitted
        assert row["optimal"] is False

    def test_malformed_exit_2(self):
        proc = run_process("solve", "--eq", "nonsense", "--n", "5")
        assert proc.returncode == 2

    def test_text_format(self):
        out = invoke("solve", "--eq", "2x+2y=5z", "--n", "10", "--fmt", "text")
        assert out.output.startswith("r(2x+2y=5z, 10) = 6")

    def test_two_variable_equation(self):
        row = json.loads(invoke("solve", "--eq", "2x=z", "--n", "10").output)
        assert row["size"] == 6  # chains {1,2,4,8}, {3,6}, {5,10}, {7}, {9}

    def test_csv_format(self):
        out = invoke("solve", "--eq", "2x+2y=5z", "--n", "10", "--fmt", "csv")
        header, row = out.output.strip().splitlines()
        assert header == "equation,n,method,size,ratio_num,ratio_den,optimal,nodes,millis"
        assert row.startswith("2x+2y=5z,10,exact,6,3,5,true,")


class TestConstruct:
    def test_residue(self):
        row = json.loads(invoke("construct", "residue", "--eq", "x+2y=13z", "--q", "3", "--n", "10").output)
        assert row["set"] == "1,4,7,10"

    def test_top(self):
        row = json.loads(invoke("construct", "top", "--eq", "2x+2y=5z", "--n", "10").output)
        assert row["set"] == "9,10"

    def test_multi(self):
        row = json.loads(invoke("construct", "multi", "--eq", "x+y=4z", "--n", "100", "--k", "3").output)
        assert row["size"] == 58
        assert row["intervals"][0] == {"lo": 2, "hi": 2, "closed_lo": True}

    def test_best_multi(self):
        row = json.loads(invoke("construct", "best-multi", "--eq", "2x+2y=5z", "--n", "100", "--k-max", "6").output)
        assert row["size"] < 60

    def test_two_var(self):
        row = json.loads(invoke("construct", "two-var", "--a", "2", "--b", "1", "--n", "10").output)
        assert row["size"] == 6 and row["set"] == "1,3,4,5,7,9"

    def test_ab(self):
        row = json.loads(invoke("construct", "ab", "--b", "2", "--n", "20").output)
        assert row["density"] == "4/7"
        assert row["set"].startswith("1,3,5,7,8")

    def test_q_divides_s_exit_2(self):
        proc = run_process("construct", "residue", "--eq", "x+y=4z", "--q", "2", "--n", "10")
        assert proc.returncode == 2


class TestFamilyCommands:
    def test_family1_quantities(self):
        row = json.loads(invoke("family1", "quantities", "--n", "1000", "--b", "2", "--c", "13").output)
        assert (row["S"], row["s_prime"]) == (4, 5)
        assert row["density"] == "1660/2119"

    def test_family1_candidates(self):
        out = invoke("family1", "candidates", "--n", "60", "--b", "2", "--c", "13")
        rows = [json.loads(line) for line in out.output.splitlines()]
        assert rows and all(r["avoids"] is True for r in rows)
        assert max(r["size"] for r in rows) == 48

    def test_family1_def1(self):
        out = invoke("family1", "def1", "--eq", "x+2y=13z", "--n", "20",
                     "--set", "16,17,18,19,20")
        row = json.loads(out.output)
        assert row["sizes"] == sorted(row["sizes"])

    def test_family1_lemma26(self):
        out = invoke("family1", "lemma26", "--eq", "x+2y=13z", "--n", "60",
                     "--set", "10", "--z", "10", "--d", "0")
        assert json.loads(out.output)["missing"] >= 1

    def test_family2(self):
        row = json.loads(invoke("family2", "--b", "2", "--c", "5", "--n", "10").output)
        assert row["case"] == "i" and row["set"] == "1,3,5,7,9,10"


class TestRhoAndConjecture:
    def test_rho_single(self):
        row = json.loads(invoke("rho", "--eq", "2x+2y=5z", "--m", "2").output)
        assert row["rho"] == "1/2" and row["witness"] == "1"

    def test_rho_best(self):
        row = json.loads(invoke("rho", "--eq", "x+2y=4z", "--m-max", "8").output)
        num, den = row["rho"].split("/")
        assert int(num) / int(den) >= 0.5

    def test_gap(self):
        row = json.loads(invoke("conjecture", "gap", "--b", "2").output)
        assert row["dAb"] == "4/7" and row["D"] == "13/40"

    def test_verify27(self):
        row = json.loads(invoke("conjecture", "verify27", "--b", "2", "--n", "14").output)
        assert row == {"b": 2, "n": 14, "ab_size": 8, "exact_size": 8, "equal": True}

    def test_inject(self):
        row = json.loads(invoke("conjecture", "inject", "--b", "2", "--n", "8", "--set", "2").output)
        assert row["mapping"] == [[2, 1]] and row["valid"] is True


class TestReport:
    def test_csv_schema(self):
        out = invoke("report", "--eq", "2x+2y=5z", "--n-from", "5", "--n-to", "10")
        lines = out.output.strip().splitlines()
        assert lines[0] == "equation,n,method,size,ratio_num,ratio_den,optimal,nodes,millis"
        assert lines[1].startswith("2x+2y=5z,5,exact,3,3,5,true,")
        assert len(lines) == 7

    def test_json_rows(self):
        out = invoke("report", "--eq", "2x+2y=5z", "--n-from", "5", "--n-to", "7", "--fmt", "json")
        rows = [json.loads(line) for line in out.output.splitlines()]
        assert [r["n"] for r in rows] == [5, 6, 7]
        assert [r["size"] for r in rows] == [3, 4, 5]

    def test_output_file(self, tmp_path):
        target = tmp_path / "rows.csv"
        invoke("report", "--eq", "2x+2y=5z", "--n-from", "5", "--n-to", "6",
               "--output", str(target))
        lines = target.read_text().strip().splitlines()
        assert len(lines) == 3

    def test_byte_identical_runs(self):
        a = run_process("report", "--eq", "x+2y=4z", "--n-from", "1", "--n-to", "20")
        b = run_process("report", "--eq", "x+2y=4z", "--n-from", "1", "--n-to", "20")
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout

    def test_parallel_jobs_match_sequential(self):
        seq = run_process("report", "--eq", "2x+2y=5z", "--n-from", "1", "--n-to", "16")
        par = run_process("report", "--eq", "2x+2y=5z", "--n-from", "1", "--n-to", "16", "--jobs", "2")
        seq_rows = [line.rsplit(",", 2)[0] for line in seq.stdout.splitlines()]
        par_rows = [line.rsplit(",", 2)[0] for line in par.stdout.splitlines()]
        assert seq_rows == par_rows  # nodes/millis may differ, the data must not
