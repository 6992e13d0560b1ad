from __future__ import annotations

import json

import pytest

from prefpareto.cli import main


def read(path):
    return path.read_text()


class TestTauCurveCommand:
    def test_writes_both_formats_with_provenance(self, tmp_path):
        out = tmp_path / "report"
        code = main(
            [
                "tau-curve",
                "--indicators", "HV",
                "--n-pairs", "6",
                "--profiles", "1000",
                "--seeds", "1",
                "--n-fronts", "20",
                "--out", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(read(out / "tau_curve.json"))
        assert doc["meta"]["command"] == "tau-curve"
        assert doc["meta"]["seeds"] == [0]
        assert doc["meta"]["profiles"] == [1000]
        assert len(doc["runs"]) == 1
        assert -1.0 <= doc["runs"][0]["tau_mean"] <= 1.0
        csv = read(out / "tau_curve.csv")
        assert csv.startswith("#")
        assert "indicator" in csv

    def test_byte_identical_reruns(self, tmp_path):
        argv = [
            "tau-curve",
            "--indicators", "MS",
            "--n-pairs", "6,10",
            "--profiles", "1001",
            "--seeds", "1",
            "--seed", "3",
            "--n-fronts", "20",
        ]
        main(argv + ["--out", str(tmp_path / "a")])
        main(argv + ["--out", str(tmp_path / "b")])
        assert read(tmp_path / "a" / "tau_curve.json") == read(tmp_path / "b" / "tau_curve.json")
        assert read(tmp_path / "a" / "tau_curve.csv") == read(tmp_path / "b" / "tau_curve.csv")

    def test_rejects_unknown_indicator(self, tmp_path, capsys):
        with pytest.raises(SystemExit):
            main(["tau-curve", "--indicators", "IGD", "--out", str(tmp_path)])


class TestMatrixCommand:
    def test_sixteen_cells_and_summary(self, tmp_path):
        out = tmp_path / "m"
        code = main(
            [
                "matrix",
                "--profiles", "0",
                "--seeds", "1",
                "--budget", "8",
                "--n-pairs", "10",
                "--n-fronts", "12",
                "--out", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(read(out / "matrix.json"))
        assert len(doc["cells"]) == 16
        rows = [c["pb_indicator"] for c in doc["cells"]]
        assert rows == [k for k in ("HV", "SP", "MS", "R2") for _ in range(4)]
        assert set(doc["summary"]) == {"pb_better_or_equal", "cells_total", "diagonal_relative_gap"}

    def test_deterministic_reruns(self, tmp_path):
        argv = [
            "matrix",
            "--profiles", "1",
            "--seeds", "1",
            "--budget", "6",
            "--n-pairs", "8",
            "--n-fronts", "10",
        ]
        main(argv + ["--out", str(tmp_path / "a")])
        main(argv + ["--out", str(tmp_path / "b")])
        assert read(tmp_path / "a" / "matrix.csv") == read(tmp_path / "b" / "matrix.csv")
        assert read(tmp_path / "a" / "matrix.json") == read(tmp_path / "b" / "matrix.json")


class TestTuneRankerCommand:
    def test_selects_one_reg_per_indicator(self, tmp_path):
        out = tmp_path / "t"
        code = main(
            [
                "tune-ranker",
                "--reg-grid", "0.1,1.0",
                "--profiles", "1000",
                "--seeds", "1",
                "--n-pairs", "6",
                "--out", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(read(out / "tune_ranker.json"))
        assert set(doc["best_reg"]) == {"HV", "SP", "MS", "R2"}
        assert all(reg in (0.1, 1.0) for reg in doc["best_reg"].values())
        assert len(doc["grid"]) == 8

    def test_selection_is_argmax_of_grid(self, tmp_path):
        out = tmp_path / "t"
        main(
            [
                "tune-ranker",
                "--reg-grid", "0.1,1.0",
                "--profiles", "1000",
                "--seeds", "1",
                "--n-pairs", "6",
                "--out", str(out),
            ]
        )
        doc = json.loads(read(out / "tune_ranker.json"))
        for kind, best in doc["best_reg"].items():
            rows = [r for r in doc["grid"] if r["indicator"] == kind]
            top = max(r["tau_mean"] for r in rows)
            assert best == min(r["reg"] for r in rows if r["tau_mean"] == top)

    def test_tuning_profiles_disjoint_from_evaluation(self):
        from prefpareto.experiments import EVALUATION_PROFILES, TUNING_PROFILES

        assert not set(TUNING_PROFILES) & set(EVALUATION_PROFILES)


class TestErrorHandling:
    def test_failure_prints_json_and_nonzero_exit(self, tmp_path, capsys):
        code = main(
            [
                "tau-curve",
                "--n-pairs", "0",
                "--profiles", "1000",
                "--seeds", "1",
                "--n-fronts", "20",
                "--out", str(tmp_path),
            ]
        )
        assert code == 1
        doc = json.loads(capsys.readouterr().out.strip())
        assert "error" in doc and doc["error"]["code"]
