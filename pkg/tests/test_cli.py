import json
import subprocess
import sys
from pathlib import Path

import pytest

from trapred.cli import main, run
from trapred.codecs import parse_alist
from trapred.gf2core import rank
from trapred.trapscan import TrapProfile, scan

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def cli(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "trapred", *args], input=stdin,
                          capture_output=True, check=False)


class TestGoldens:
    def test_table1_human(self):
        code, out = run(["table1"])
        assert code == 0
        assert out == (GOLDEN / "table1.txt").read_text()

    def test_table1_csv(self):
        code, out = run(["table1", "--format", "csv"])
        assert out == (GOLDEN / "table1.csv").read_text()

    def test_table1_json_rows(self):
        code, out = run(["table1", "--format", "json"])
        rows = json.loads(out)["result"]["rows"]
        assert [(r["a"], r["theorem1"], r["lll"]) for r in rows] == [
            (6, 1320, 1394), (8, 1320, 1413), (12, 1320, 1448), (14, 1320, 1464)]

    def test_bound_json(self):
        code, out = run(["bound", "--family", "theorem1", "-n", "3", "-k", "1", "-a", "2",
                         "-b", "1", "-d", "3", "--format", "json"])
        assert code == 0
        assert json.loads(out) == json.loads((GOLDEN / "bound_theorem1_rep3.json").read_text())


class TestBound:
    def test_theorem1_margulis(self):
        code, out = run(["bound", "--family", "theorem1", "-n", "2640", "-k", "1320",
                         "-a", "6", "-b", "5"])
        assert code == 0
        assert "value=1320" in out

    def test_lll(self):
        code, out = run(["bound", "--family", "lll", "-n", "2640", "-k", "1320",
                         "-a", "12", "-b", "5", "--format", "csv"])
        assert out.splitlines()[1].split(",")[5] == "1448"

    def test_gv(self):
        code, out = run(["bound", "--family", "gv", "-n", "7", "-k", "4", "-d", "3",
                         "--format", "json"])
        assert json.loads(out)["result"]["holds"] is False

    def test_corollary2(self):
        code, out = run(["bound", "--family", "corollary2", "-n", "2640", "-k", "1320",
                         "-a", "14", "-b", "5", "--format", "json"])
        res = json.loads(out)["result"]
        assert res["holds"] and res["lhs"] < 1

    @pytest.mark.parametrize("argv", [
        ["bound", "--family", "theorem1", "-n", "7", "-k", "4", "-a", "3", "-b", "1", "-d", "3"],
        ["bound", "--family", "theorem1", "-n", "7", "-k", "4", "-a", "1"],
        ["bound", "--family", "gv", "-n", "7", "-k", "4"],
        ["bound", "--family", "lll", "-n", "7", "-k", "4", "-a", "1", "-b", "0"],
        ["bound", "--family", "nope"],
        ["oracle", "--code", "no-such-code", "-a", "1", "-b", "1"],
        ["scan", "--in", "/nonexistent/file", "-a", "1", "-b", "1"],
        ["scan", "--in", str(DATA / "malformed" / "truncated.alist"), "-a", "1", "-b", "1"],
        ["construct", "--code", "hamming-7-4", "-a", "3", "-b", "1", "--seed", "1"],
        [],
    ])
    def test_usage_and_domain_errors_exit_two(self, argv):
        assert main(argv) == 2


class TestScan:
    def test_identity_violations(self):
        code, out = run(["scan", "--in", str(DATA / "identity3.dense"), "-a", "1", "-b", "2"])
        assert code == 1
        assert "3 violation(s)" in out

    def test_hamming_weight_three(self):
        code, out = run(["scan", "--in", str(DATA / "hamming.alist"), "-a", "3", "-b", "1",
                         "--format", "json"])
        res = json.loads(out)["result"]
        assert code == 1
        assert res["violation_count"] == 7
        assert all(len(v["columns"]) == 3 and v["odd_count"] == 0 for v in res["violations"])

    @pytest.mark.parametrize("name", ["hamming.alist", "hamming_padded.alist", "identity3.dense"])
    def test_b_zero_is_clean(self, name):
        assert main(["scan", "--in", str(DATA / name), "-a", "1", "-b", "0"]) == 0

    def test_cap(self):
        code, out = run(["scan", "--in", str(DATA / "hamming.alist"), "-a", "3", "-b", "1",
                         "--cap", "2", "--format", "json"])
        res = json.loads(out)["result"]
        assert res["truncated"] and res["violation_count"] == 2

    def test_stdin(self):
        proc = cli("scan", "--in", "-", "-a", "1", "-b", "2",
                   stdin=(DATA / "identity3.dense").read_bytes())
        assert proc.returncode == 1
        assert b"3 violation(s)" in proc.stdout


class TestConstruct:
    def test_pipes_into_clean_scan(self):
        made = cli("construct", "--code", "hamming-7-4", "-a", "1", "-b", "1", "--seed", "7")
        assert made.returncode == 0
        assert b"seed=7" in made.stderr
        checked = cli("scan", "--in", "-", "-a", "1", "-b", "1", stdin=made.stdout)
        assert checked.returncode == 0

    def test_seed_replay(self):
        argv = ["construct", "--code", "ext-golay-24-12", "-a", "3", "-b", "2", "--seed", "99"]
        assert run(argv)[1] == run(argv)[1]

    def test_las_vegas_json(self):
        code, out = run(["construct", "--code", "repetition-7", "-a", "1", "-b", "1",
                         "--seed", "3", "--las-vegas", "--format", "json"])
        res = json.loads(out)["result"]
        H = parse_alist(res["alist"])
        assert H.rows == 6 and rank(H) == 6
        assert scan(H, TrapProfile(1, 1)).clean

    def test_from_matrix_file(self):
        code, out = run(["construct", "--code", str(DATA / "hamming.alist"), "-a", "2", "-b", "2",
                         "--seed", "5"])
        H = parse_alist(out)
        assert rank(H) == 3 and scan(H, TrapProfile(2, 2)).clean


class TestOracle:
    def test_repetition(self):
        code, out = run(["oracle", "--code", "repetition-3", "-a", "2", "-b", "1", "--collective"])
        assert code == 0
        assert out.splitlines()[0] == "2"

    def test_multiset_json(self):
        code, out = run(["oracle", "--code", "repetition-2", "-a", "1", "-b", "2",
                         "--multiset", "--format", "json"])
        res = json.loads(out)["result"]
        assert res["value"] == 2 and res["witness"] == ["11", "11"]

    def test_not_found_exits_two(self):
        assert main(["oracle", "--code", "repetition-2", "-a", "1", "-b", "2"]) == 2


def test_help_lists_environment():
    proc = cli("--help")
    assert proc.returncode == 0
    assert b"TRAPRED_ORACLE_NODES" in proc.stdout
