# tests/unit/test_cli.py

import json

import pytest

from indoor_training.analysis.report import SuiteReport
from indoor_training.cli import EXIT_INVALID, EXIT_OK, EXIT_RUNTIME, main
from indoor_training.harness.persistence import CURVE_CSV, MANIFEST_JSON

from .fixtures import make_experiment_payload, make_suite_payload, write_corridor, write_json


def last_json_line(out: str) -> dict:
    return json.loads(out.strip().splitlines()[-1])


class TestUsage:

    def test_missing_config_is_invalid(self, tmp_path, capsys):
        missing = tmp_path / "nope.json"
        assert main(["run", "--config", str(missing)]) == EXIT_INVALID
        assert str(missing) in capsys.readouterr().err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["train"])
        assert exc.value.code == EXIT_INVALID

    def test_workers_must_be_positive(self, tmp_path, capsys):
        config = write_json(tmp_path / "run.json", make_experiment_payload(write_corridor(tmp_path)))
        assert main(["run", "--config", config, "--workers", "0"]) == EXIT_INVALID
        assert "--workers" in capsys.readouterr().err

    def test_custom_layout_needs_game(self, tmp_path, capsys):
        assert main(["build-mdp", "--layout", write_corridor(tmp_path)]) == EXIT_INVALID
        assert "--game" in capsys.readouterr().err


class TestBuildAndNoise:

    def test_build_mdp_writes_export(self, tmp_path, capsys):
        code = main([
            "build-mdp", "--layout", write_corridor(tmp_path), "--game", "pacman",
            "--out-dir", str(tmp_path / "out"),
        ])
        assert code == EXIT_OK
        record = last_json_line(capsys.readouterr().out)
        assert record["status"] == "ok"
        assert record["n_states"] == 3
        assert (tmp_path / "out" / "mdp.json").exists()
        assert (tmp_path / "out" / "validation.txt").read_text().startswith("MDP valid")

    def test_zero_noise_keeps_rows(self, tmp_path, capsys):
        out = tmp_path / "out"
        main(["build-mdp", "--layout", write_corridor(tmp_path), "--game", "pacman",
              "--out-dir", str(out)])
        capsys.readouterr()
        code = main(["inject-noise", "--mdp", str(out / "mdp.json"), "--std", "0",
                     "--out-dir", str(out)])
        assert code == EXIT_OK
        record = last_json_line(capsys.readouterr().out)
        assert record["mean_tv_distance"] == 0.0
        assert record["legal_shape_distance"] == pytest.approx(0.0, abs=1e-12)
        clean = json.loads((out / "mdp.json").read_text())
        noisy = json.loads((out / "mdp_noisy.json").read_text())
        assert noisy["rows"] == clean["rows"]

    def test_missing_mdp_is_invalid(self, tmp_path, capsys):
        code = main(["inject-noise", "--mdp", str(tmp_path / "none.json"), "--std", "0.1"])
        assert code == EXIT_INVALID


class TestRunSuiteAnalyze:

    def test_run(self, tmp_path, capsys):
        config = write_json(tmp_path / "run.json", make_experiment_payload(write_corridor(tmp_path)))
        out = tmp_path / "results"
        assert main(["run", "--config", config, "--out-dir", str(out)]) == EXIT_OK
        record = last_json_line(capsys.readouterr().out)
        assert record["status"] == "ok"
        assert record["checkpoints"] == 2
        assert any(out.rglob(CURVE_CSV))

    def test_suite_then_analyze(self, tmp_path, capsys):
        config = write_json(tmp_path / "suite.json", make_suite_payload(write_corridor(tmp_path)))
        out = tmp_path / "suite"
        assert main(["suite", "--config", config, "--out-dir", str(out)]) == EXIT_OK
        assert last_json_line(capsys.readouterr().out)["pairs"] == 2
        assert (out / MANIFEST_JSON).exists()

        report_dir = tmp_path / "report"
        code = main(["analyze", "--results-dir", str(out), "--out-dir", str(report_dir)])
        assert code == EXIT_OK
        record = last_json_line(capsys.readouterr().out)
        assert record["pairs"] == 2
        assert (report_dir / "report.csv").exists()


    @pytest.mark.parametrize("targets,code,status", [
        ((), EXIT_RUNTIME, "no_effect"),
        (("pacman-corridor@std=0.1",), EXIT_OK, "ok"),
    ])
    def test_suite_acceptance_gate(self, tmp_path, capsys, mocker, targets, code, status):
        payload = make_suite_payload(write_corridor(tmp_path), acceptance={"alpha": 0.05})
        config = write_json(tmp_path / "suite.json", payload)
        report = mocker.patch(
            "indoor_training.cli.suite_report",
            return_value=SuiteReport(alpha=0.05, effect_targets=targets),
        )
        out = tmp_path / "suite"
        assert main(["suite", "--config", config, "--out-dir", str(out)]) == code
        record = last_json_line(capsys.readouterr().out)
        assert record["status"] == status
        assert report.call_args.kwargs["alpha"] == 0.05
        assert (out / "summary.txt").exists()

    def test_suite_without_gate_ignores_effect(self, tmp_path, capsys, mocker):
        config = write_json(tmp_path / "suite.json", make_suite_payload(write_corridor(tmp_path)))
        report = mocker.patch("indoor_training.cli.suite_report", return_value=SuiteReport())
        assert main(["suite", "--config", config, "--out-dir", str(tmp_path / "s")]) == EXIT_OK
        assert report.call_args.kwargs["alpha"] is None
        assert "effect_pairs" not in last_json_line(capsys.readouterr().out)

class TestDeterminism:

    def test_curve_does_not_depend_on_workers(self, tmp_path, capsys):
        payload = make_experiment_payload(
            write_corridor(tmp_path),
            test_env={"noise_std": 0.5},
            train_env={"noise_std": 0.5},
        )
        payload["protocol"]["n_agents"] = 4
        config = write_json(tmp_path / "run.json", payload)
        curves = []
        for workers in ("1", "4"):
            out = tmp_path / f"workers_{workers}"
            code = main(["run", "--config", config, "--seed", "7", "--workers", workers,
                         "--out-dir", str(out)])
            assert code == EXIT_OK
            curves.append(next(out.rglob(CURVE_CSV)).read_bytes())
        assert curves[0] == curves[1]
