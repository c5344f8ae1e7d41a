import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from energysched.cli import CSV_COLUMNS, main
from energysched.generators import RandomFamily, random_instance
from energysched.model import parse_instance, serialize_instance

COMMON = {
    "horizon": 4,
    "harvest": [2, 1, 3, 1],
    "jobs": [
        {"id": 0, "release": 1, "due": 4, "energy": 2, "weight": 3},
        {"id": 1, "release": 1, "due": 4, "energy": 3, "weight": 5},
    ],
}
MIXED = {
    "horizon": 3,
    "harvest": [2, 2, 2],
    "jobs": [
        {"id": 0, "release": 1, "due": 3, "energy": 1},
        {"id": 1, "release": 2, "due": 3, "energy": 1},
    ],
}


def write(path, obj):
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    @pytest.mark.parametrize("algo", ["dp", "fast", "greedy", "oracle"])
    def test_common_window(self, tmp_path, capsys, algo):
        code, out, _ = run(capsys, "solve", "--algo", algo, "--input", write(tmp_path / "i.json", COMMON))
        assert code == 0
        result = json.loads(out)
        assert result["objective"] == 2 and result["algo"] == algo
        assert set(result) == {"objective", "schedule", "algo", "runtime_ms"}

    def test_precondition_exit(self, tmp_path, capsys):
        code, _, err = run(capsys, "solve", "--algo", "dp", "--input", write(tmp_path / "m.json", MIXED))
        assert code == 2 and "not-common-window" in err

    @pytest.mark.parametrize("text", ["{", '{"horizon": 1, "harvest": [], "jobs": []}'])
    def test_parse_error_exit(self, tmp_path, capsys, text):
        assert run(capsys, "solve", "--algo", "dp", "--input", write(tmp_path / "bad.json", text))[0] == 1

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "solve", "--algo", "dp", "--input", str(tmp_path / "none.json"))[0] == 1

    def test_unknown_algo(self, tmp_path, capsys):
        assert run(capsys, "solve", "--algo", "magic", "--input", write(tmp_path / "i.json", COMMON))[0] == 1

    def test_fptas_within_quarter_of_exact(self, tmp_path, capsys):
        path = write(tmp_path / "i.json", COMMON)
        exact = json.loads(run(capsys, "solve", "--algo", "exact-w", "--input", path)[1])["objective"]
        code, out, _ = run(capsys, "solve", "--algo", "fptas", "--epsilon", "1/4", "--input", path)
        assert code == 0
        assert json.loads(out)["objective"] >= Fraction(3, 4) * exact

    def test_fptas_needs_epsilon(self, tmp_path, capsys):
        code, _, err = run(capsys, "solve", "--algo", "fptas", "--input", write(tmp_path / "i.json", COMMON))
        assert code == 2 and "bad-epsilon" in err

    def test_weighted_oracle(self, tmp_path, capsys):
        out = run(capsys, "solve", "--algo", "oracle", "--weighted", "--input", write(tmp_path / "i.json", COMMON))[1]
        assert json.loads(out)["objective"] == 8


class TestValidate:
    def test_feasible(self, tmp_path, capsys):
        inst = write(tmp_path / "i.json", COMMON)
        sched = write(tmp_path / "s.json", {"assignments": {"0": 2, "1": 4}})
        code, out, _ = run(capsys, "validate", "--input", inst, "--schedule", sched)
        report = json.loads(out)
        assert code == 0 and report["feasible"] and report["leftover"] == 0

    def test_infeasible_energy(self, tmp_path, capsys):
        inst = write(tmp_path / "i.json", COMMON)
        sched = write(tmp_path / "s.json", {"assignments": {"1": 2}})
        code, out, _ = run(capsys, "validate", "--input", inst, "--schedule", sched)
        report = json.loads(out)
        assert code == 3 and not report["feasible"]
        assert report["violations"][0]["reason"] == "energy"

    def test_missing_schedule(self, tmp_path, capsys):
        inst = write(tmp_path / "i.json", COMMON)
        assert run(capsys, "validate", "--input", inst, "--schedule", str(tmp_path / "no.json"))[0] == 1

    @pytest.mark.parametrize("algo", ["dp", "fast", "greedy", "exact-w", "oracle"])
    def test_emitted_schedules_revalidate(self, tmp_path, capsys, algo):
        inst = write(tmp_path / "i.json", COMMON)
        result = json.loads(run(capsys, "solve", "--algo", algo, "--input", inst)[1])
        sched = write(tmp_path / "s.json", result["schedule"])
        assert run(capsys, "validate", "--input", inst, "--schedule", sched)[0] == 0

    def test_pipe_through_module_entry_point(self, tmp_path):
        inst = write(tmp_path / "i.json", COMMON)
        solved = subprocess.run(
            [sys.executable, "-m", "energysched", "solve", "--algo", "greedy", "--input", inst],
            capture_output=True, text=True, check=True,
        )
        sched = write(tmp_path / "s.json", json.dumps(json.loads(solved.stdout)["schedule"]))
        checked = subprocess.run(
            [sys.executable, "-m", "energysched", "validate", "--input", inst, "--schedule", sched],
            capture_output=True, text=True,
        )
        assert checked.returncode == 0


class TestGenerate:
    def test_seeded_output_is_byte_identical(self, capsys):
        first = run(capsys, "generate", "--random", "5", "8", "6", "6", "42")[1]
        second = run(capsys, "generate", "--random", "5", "8", "6", "6", "42")[1]
        assert first == second
        assert first == serialize_instance(random_instance(RandomFamily(5, 8, 6, 6), 42))

    def test_zero_jobs_rejected(self, capsys):
        code, _, err = run(capsys, "generate", "--random", "0", "8", "6", "6", "1")
        assert code == 1 and "bad-parameter" in err

    def test_ksum_example_with_sidecar(self, tmp_path, capsys):
        src = write(tmp_path / "ks.json", {"values": [3, 2, 1], "beta": 3, "k": 2})
        out = tmp_path / "gen.json"
        assert run(capsys, "generate", "--from", "ksum", "--json", src, "--out", str(out))[0] == 0
        inst = parse_instance(out.read_text())
        assert inst.harvest == (702, 3, 4, 5, 375, 0)
        meta = json.loads((tmp_path / "gen.meta.json").read_text())
        assert meta["reduction"] == "ksum-arb-release" and meta["threshold"] == 3

    def test_arb_due_and_knapsack(self, tmp_path, capsys):
        src = write(tmp_path / "ks.json", {"values": [3, 2, 1], "beta": 3, "k": 2})
        out = run(capsys, "generate", "--from", "ksum", "--reduction", "arb-due", "--json", src)
        assert parse_instance(out[1]).horizon == 9
        assert json.loads(out[2])["threshold"] == 4
        kn = write(tmp_path / "kn.json", {"items": [[2, 3], [3, 4]], "capacity": 3, "threshold": 4})
        out = run(capsys, "generate", "--from", "knapsack", "--json", kn)
        assert parse_instance(out[1]).harvest == (3, 0, 0)

    def test_width_limit(self, tmp_path, capsys):
        src = write(tmp_path / "ks.json", {"values": [1000, 999, 1], "beta": 3, "k": 1})
        code, _, err = run(capsys, "generate", "--from", "ksum", "--reduction", "arb-due", "--json", src, "--max-int-bits", "32")
        assert code == 2 and "int-width" in err

    @pytest.mark.parametrize("body", [{"values": [3, 2, 1]}, {"values": [1, 1], "beta": 1, "k": 1}, [1, 2]])
    def test_bad_source(self, tmp_path, capsys, body):
        src = write(tmp_path / "ks.json", body)
        assert run(capsys, "generate", "--from", "ksum", "--json", src)[0] == 1

    def test_from_needs_json(self, capsys):
        assert run(capsys, "generate", "--from", "ksum")[0] == 1


class TestCompare:
    @pytest.fixture
    def corpus(self, tmp_path):
        folder = tmp_path / "corpus"
        folder.mkdir()
        for seed in range(12):
            inst = random_instance(RandomFamily(5, 7, 5, 5, common_window=seed % 2 == 0, wmax=4), seed)
            (folder / f"inst{seed:02d}.json").write_text(serialize_instance(inst))
        (folder / "broken.json").write_text("{")
        return folder

    def read_rows(self, text):
        reader = csv.DictReader(io.StringIO(text))
        assert tuple(reader.fieldnames) == CSV_COLUMNS
        return list(reader)

    def test_csv_summary(self, corpus, capsys):
        code, out, _ = run(capsys, "compare", "--input-dir", str(corpus), "--algos", "dp,fast", "greedy")
        assert code == 0
        rows = self.read_rows(out)
        assert len(rows) == 13 * 3
        by_key = {(r["instance"], r["algo"]): r for r in rows}
        for r in rows:
            if r["instance"] == "broken.json":
                assert r["error"]
                continue
            if r["algo"] == "greedy":
                assert Fraction(r["ratio"]) >= Fraction(1, 2)
            if r["algo"] == "dp" and not r["error"]:
                assert r["objective"] == by_key[r["instance"], "fast"]["objective"]
                assert r["ratio"] == "1/1"
        # odd seeds have mixed windows, which dp reports per row
        assert any("not-common-window" in r["error"] for r in rows if r["algo"] == "dp")

    def test_weighted_columns_and_json_out(self, corpus, tmp_path, capsys):
        out = tmp_path / "res.json"
        code = run(capsys, "compare", "--input-dir", str(corpus), "--algos", "exact-w", "fptas", "--epsilon", "1/4", "--out", str(out))[0]
        assert code == 0
        rows = [r for r in json.loads(out.read_text()) if "objective" in r]
        assert rows
        for r in rows:
            assert Fraction(r["ratio"]) >= (Fraction(3, 4) if r["algo"] == "fptas" else 1)

    def test_csv_file_output(self, corpus, tmp_path, capsys):
        out = tmp_path / "res.csv"
        assert run(capsys, "compare", "--input-dir", str(corpus), "--algos", "greedy", "--out", str(out), "--workers", "1")[0] == 0
        assert len(self.read_rows(out.read_text())) == 13

    def test_empty_dir(self, tmp_path, capsys):
        code, out, _ = run(capsys, "compare", "--input-dir", str(tmp_path))
        assert code == 0 and self.read_rows(out) == []

    def test_bad_inputs(self, tmp_path, capsys):
        assert run(capsys, "compare", "--input-dir", str(tmp_path / "nope"))[0] == 1
        assert run(capsys, "compare", "--input-dir", str(tmp_path), "--algos", "magic")[0] == 1
