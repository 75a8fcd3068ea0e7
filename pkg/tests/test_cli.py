import csv
import json
import subprocess
import sys

import pytest

from hyperspec.cli import COMMANDS, ExperimentSpec, main, parse_seeds
from hyperspec.errors import InvalidParameters
from hyperspec.hypergraph import Hypergraph

SMALL = ["--n", "12", "--d", "4", "--k", "3"]
EXTRA = {"walk-mix": ["--lmax", "15"], "expansion": ["--trials", "50"]}


def run(tmp_path, name, *args):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def snapshot(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


class TestSeeds:
    def test_count_and_list(self):
        assert parse_seeds("3") == (0, 1, 2)
        assert parse_seeds("4,9, 2") == (4, 9, 2)

    @pytest.mark.parametrize("bad", ["0", "-1", "a", "1,1", "2,-3"])
    def test_bad(self, bad):
        with pytest.raises(InvalidParameters):
            parse_seeds(bad)


class TestSpec:
    def test_validation(self, tmp_path):
        with pytest.raises(InvalidParameters):
            ExperimentSpec("gap", 40, 5, 3, (0,), tmp_path)
        with pytest.raises(InvalidParameters):
            ExperimentSpec("gap", 12, 3, 4, (0,), tmp_path)
        with pytest.raises(InvalidParameters):
            ExperimentSpec("walk-mix", 12, 4, 3, (0,), tmp_path, lmax=5)
        with pytest.raises(InvalidParameters):
            ExperimentSpec("plot", 12, 4, 3, (0,), tmp_path)


class TestCommands:
    @pytest.mark.parametrize("command", COMMANDS)
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_every_command(self, tmp_path, command, fmt):
        code, out = run(tmp_path, "o", command, *SMALL, "--seeds", "2", "--format", fmt, *EXTRA.get(command, []))
        assert code == 0
        names = sorted(p.name for p in out.iterdir())
        assert names == sorted([f"{command}_seed0.{fmt}", f"{command}_seed1.{fmt}", "summary.json"])
        summary = json.loads((out / "summary.json").read_text())
        assert summary["command"] == command and summary["completed"] == 2 and summary["errors"] == []
        assert [r["seed"] for r in summary["per_seed"]] == [0, 1]
        body = (out / f"{command}_seed0.{fmt}").read_text()
        if fmt == "json":
            json.loads(body)
        else:
            assert len(list(csv.reader(body.splitlines()))) >= 2

    def test_sample_schema(self, tmp_path):
        code, out = run(tmp_path, "o", "sample", "--n", "6", "--d", "3", "--k", "3", "--seeds", "1")
        assert code == 0
        text = (out / "sample_seed0.json").read_text()
        data = json.loads(text)
        assert list(data) == ["d", "edges", "k", "n"] and (data["n"], data["d"], data["k"]) == (6, 3, 3)
        h = Hypergraph.from_json(text)
        assert h.m == 6 and text == h.to_json() + "\n"

    def test_csv_headers(self, tmp_path):
        _, out = run(tmp_path, "w", "walk-mix", *SMALL, "--format", "csv", "--lmax", "12")
        assert (out / "walk-mix_seed0.csv").read_text().splitlines()[0] == "l,sup,exact_rate^l"
        _, out = run(tmp_path, "e", "esd", *SMALL, "--format", "csv")
        assert (out / "esd_seed0.csv").read_text().splitlines()[0] == "bin_left,bin_right,mass"

    def test_gap_summary(self, tmp_path):
        _, out = run(tmp_path, "g", "gap", *SMALL, "--seeds", "3", "--slack", "0.25")
        s = json.loads((out / "summary.json").read_text())
        assert s["params"]["slack"] == 0.25
        assert s["fraction_within_bound_plus_slack"] == sum(r["ok"] for r in s["per_seed"]) / 3

    def test_alpha_law(self, tmp_path):
        code, out = run(tmp_path, "a", "esd", "--n", "40", "--d", "6", "--k", "3", "--law", "alpha")
        assert code == 0
        assert "alpha" in json.loads((out / "summary.json").read_text())["law"]


class TestExitCodes:
    def test_invalid(self, tmp_path):
        assert run(tmp_path, "x", "gap", "--n", "40", "--d", "5", "--k", "3")[0] == 2
        assert run(tmp_path, "x", "gap", *SMALL, "--seeds", "zero")[0] == 2
        assert run(tmp_path, "x", "nope", *SMALL)[0] == 2
        assert main(["gap"]) == 2

    def test_unwritable(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        assert main(["gap", *SMALL, "--out", str(blocker / "sub")]) == 3

    def test_per_seed_failure_keeps_summary(self, tmp_path):
        # nd = 630 is above the dense non-symmetric eigensolver cap
        code, out = run(tmp_path, "big", "nb-spectrum", "--n", "126", "--d", "5", "--k", "3", "--seeds", "1")
        assert code == 2
        s = json.loads((out / "summary.json").read_text())
        assert s["completed"] == 0 and "DimensionTooLarge" in s["errors"][0]["error"]

    def test_module_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "hyperspec", "gap", *SMALL, "--out", str(tmp_path / "m")], capture_output=True)
        assert proc.returncode == 0 and (tmp_path / "m" / "summary.json").exists()


class TestDeterminism:
    @pytest.mark.parametrize("command", COMMANDS)
    def test_byte_identical(self, tmp_path, command):
        args = [command, *SMALL, "--seeds", "2", *EXTRA.get(command, [])]
        _, a = run(tmp_path, "a", *args)
        _, b = run(tmp_path, "b", *args)
        assert snapshot(a) == snapshot(b)

    def test_pool_size_irrelevant(self, tmp_path, monkeypatch):
        args = ["gap", *SMALL, "--seeds", "3"]
        monkeypatch.setenv("HYPERSPEC_THREADS", "1")
        _, a = run(tmp_path, "a", *args)
        monkeypatch.setenv("HYPERSPEC_THREADS", "2")
        _, b = run(tmp_path, "b", *args)
        assert snapshot(a) == snapshot(b)
