# =============================================================================
# tests/test_cli.py - gen / verify / bench / demo Exit Codes and Reports
# =============================================================================

import json

import numpy as np
import pytest

from rope_algebra.cli import CliConfig, build_parser
from rope_algebra.config import settings
from rope_algebra.generators import from_matrices, save_generator_set
from rope_algebra.ortho import build_orthogonal, random_ortho_param, save_ortho_param


@pytest.fixture
def toral_file(run_cli, tmp_path):
    path = tmp_path / "toral.json"
    assert run_cli("gen", "--axes", 2, "--blocks", 1, "--theta", 1.0, "-o", path)[0] == 0
    return path


@pytest.fixture
def mixed_file(run_cli, tmp_path):
    path = tmp_path / "mixed.json"
    assert run_cli("gen", "--construction", "mixed", "-o", path)[0] == 0
    return path


@pytest.fixture
def givens_file(run_cli, tmp_path):
    path = tmp_path / "givens.json"
    assert run_cli("gen", "--axes", 2, "--blocks", 2, "--conjugate", "givens", "--seed", 7, "-o", path)[0] == 0
    return path


class TestParser:
    def test_config_from_namespace(self):
        args = build_parser().parse_args(["gen", "--axes", "3", "--blocks", "2", "--d", "16"])
        config = CliConfig.from_namespace(args)
        assert (config.command, config.n_axes, config.blocks_per_axis, config.d) == ("gen", 3, 2, 16)
        assert config.conjugate is None

    def test_seed_falls_back_to_settings(self, monkeypatch):
        monkeypatch.setattr(settings, "SEED", 11)
        assert CliConfig(command="verify").resolved_seed == 11
        assert CliConfig(command="verify", seed=2).resolved_seed == 2

    def test_unknown_flag_is_usage_error(self, run_cli, toral_file):
        assert run_cli("verify", "-i", toral_file, "--positions", 3)[0] == 2

    def test_missing_input_is_usage_error(self, run_cli):
        assert run_cli("verify")[0] == 2


class TestGen:
    def test_standard_2d_matrices(self, toral_file, read_json, eq_b1_b2):
        data = read_json(toral_file)
        assert data["d"] == 4
        assert data["n_axes"] == 2
        assert data["basis"][0] == eq_b1_b2[0].ravel().tolist()
        assert data["basis"][1] == eq_b1_b2[1].ravel().tolist()
        assert data["seed"] == settings.SEED

    def test_givens_conjugation(self, givens_file, read_json):
        data = read_json(givens_file)
        assert data["d"] == 8
        assert data["seed"] == 7
        assert data["q"] is not None

    def test_rank_bound(self, run_cli):
        code, _, err = run_cli("gen", "--axes", 3, "--blocks", 1, "--d", 4)
        assert code == 1
        assert "floor(d/2)" in err

    def test_odd_dimension(self, run_cli):
        assert run_cli("gen", "--axes", 2, "--d", 5)[0] == 1

    def test_dimension_below_construction(self, run_cli):
        code, _, err = run_cli("gen", "--axes", 2, "--blocks", 2, "--d", 6)
        assert code == 1
        assert "d >= 8" in err

    def test_embedding(self, run_cli, tmp_path, read_json):
        path = tmp_path / "g6.json"
        assert run_cli("gen", "--axes", 2, "--d", 6, "-o", path)[0] == 0
        assert read_json(path)["d"] == 6
        assert run_cli("verify", "-i", path)[0] == 0

    def test_stdout_when_no_output(self, run_cli):
        code, out, _ = run_cli("gen", "--axes", 1)
        assert code == 0
        assert json.loads(out)["d"] == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["--conjugate", "exp", "--ortho-param", "q.json"],
            ["--construction", "mixed", "--blocks", "2"],
            ["--construction", "mixed", "--axes", "3"],
            ["--theta2", "0.5"],
        ],
    )
    def test_conflicting_flags(self, run_cli, argv):
        assert run_cli("gen", *argv)[0] == 2

    def test_ortho_param_file(self, run_cli, tmp_path, read_json):
        p = random_ortho_param("exp", 4, np.random.default_rng(5))
        save_ortho_param(p, tmp_path / "q.json")
        out = tmp_path / "g.json"
        assert run_cli("gen", "--axes", 2, "--ortho-param", tmp_path / "q.json", "-o", out)[0] == 0
        q = np.array(read_json(out)["q"]).reshape(4, 4)
        np.testing.assert_allclose(q, build_orthogonal(p), atol=1e-15)

    def test_ortho_param_dimension_mismatch(self, run_cli, tmp_path):
        save_ortho_param(random_ortho_param("cayley", 6, np.random.default_rng(5)), tmp_path / "q.json")
        assert run_cli("gen", "--axes", 2, "--ortho-param", tmp_path / "q.json")[0] == 1

    def test_deterministic_bytes(self, run_cli, tmp_path):
        for name in ("a.json", "b.json"):
            argv = ["gen", "--axes", 2, "--blocks", 2, "--conjugate", "cayley", "--seed", 3]
            assert run_cli(*argv, "-o", tmp_path / name)[0] == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


class TestVerify:
    def test_toral_passes(self, run_cli, toral_file):
        code, out, _ = run_cli("verify", "-i", toral_file)
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_conjugated_passes(self, run_cli, givens_file):
        assert run_cli("verify", "-i", givens_file)[0] == 0

    def test_mixed_fails(self, run_cli, mixed_file):
        code, out, _ = run_cli("verify", "-i", mixed_file)
        assert code == 1
        report = json.loads(out)
        assert {c["name"] for c in report["checks"] if not c["passed"]} == {"independence", "reversibility"}

    def test_truncated_file(self, run_cli, toral_file, tmp_path):
        text = toral_file.read_text()
        broken = tmp_path / "broken.json"
        broken.write_text(text[: len(text) // 3])
        assert run_cli("verify", "-i", broken)[0] == 2

    def test_overrides_and_output_file(self, run_cli, toral_file, tmp_path, read_json):
        out = tmp_path / "report.json"
        argv = ["verify", "-i", toral_file, "--samples", 10, "--grid", 4, "--tol-relativity", 1e-9]
        code, stdout, _ = run_cli(*argv, "--seed", 4, "-o", out)
        assert code == 0
        assert stdout == ""
        report = read_json(out)
        assert report["seed"] == 4
        checks = {c["name"]: c for c in report["checks"]}
        assert "grid 4^2" in checks["reversibility"]["detail"]
        assert "10 pairs" in checks["relativity"]["detail"]

    @pytest.mark.parametrize("grid", [0, 1])
    def test_grid_below_two_is_usage_error(self, run_cli, toral_file, grid):
        assert run_cli("verify", "-i", toral_file, "--grid", grid)[0] == 2

    def test_grid_above_limit_is_usage_error(self, run_cli, toral_file):
        code, out, err = run_cli("verify", "-i", toral_file, "--grid", 200)
        assert code == 2
        assert out == ""
        assert "200^2" in err

    def test_grid_at_limit_is_honoured(self, run_cli, toral_file, monkeypatch):
        monkeypatch.setattr(settings, "MAX_GRID_POINTS", 100)
        assert run_cli("verify", "-i", toral_file, "--grid", 11, "--samples", 5)[0] == 2
        code, out, _ = run_cli("verify", "-i", toral_file, "--grid", 10, "--samples", 5)
        assert code == 0
        checks = {c["name"]: c for c in json.loads(out)["checks"]}
        assert "grid 10^2" in checks["reversibility"]["detail"]

    def test_seed_from_environment_setting(self, run_cli, toral_file, monkeypatch):
        monkeypatch.setattr(settings, "SEED", 11)
        assert json.loads(run_cli("verify", "-i", toral_file)[1])["seed"] == 11


class TestBench:
    def test_agreement(self, run_cli, givens_file):
        code, out, _ = run_cli("bench", "-i", givens_file, "--positions", 200)
        assert code == 0
        report = json.loads(out)
        assert report["positions"] == 200
        assert report["checks"][0]["residual"] < 1e-10
        assert report["fast"]["p95"] >= report["fast"]["median"]

    def test_fast_path_is_faster_at_d64(self, run_cli, tmp_path):
        path = tmp_path / "d64.json"
        assert run_cli("gen", "--axes", 2, "--blocks", 16, "-o", path)[0] == 0
        code, out, _ = run_cli("bench", "-i", path, "--positions", 200)
        assert code == 0
        assert json.loads(out)["speedup"] > 1.0
        report = json.loads(out)
        checks = {c["name"]: c for c in report["checks"]}
        assert list(checks) == ["fast_dense_agreement", "speedup"]
        assert checks["speedup"]["passed"]
        assert checks["speedup"]["residual"] < 1.0
        assert report["verdict"] is all(c["passed"] for c in report["checks"])

    def test_small_sets_only_check_agreement(self, run_cli, toral_file):
        code, out, _ = run_cli("bench", "-i", toral_file, "--positions", 50)
        assert code == 0
        report = json.loads(out)
        assert [c["name"] for c in report["checks"]] == ["fast_dense_agreement"]
        assert report["speedup"] > 0.0

    def test_zero_positions(self, run_cli, toral_file):
        assert run_cli("bench", "-i", toral_file, "--positions", 0)[0] == 2

    def test_needs_block_plan(self, run_cli, tmp_path):
        raw = np.random.default_rng(0).standard_normal((4, 4))
        path = tmp_path / "dense.json"
        save_generator_set(from_matrices([raw - raw.T]), path)
        assert run_cli("bench", "-i", path, "--positions", 5)[0] == 1


class TestDemo:
    def test_standard_2d(self, run_cli, toral_file):
        code, out, _ = run_cli("demo", "-i", toral_file)
        assert code == 0
        report = json.loads(out)
        assert report["tokens"] == settings.DEMO_TOKENS
        assert [c["name"] for c in report["checks"]] == [
            "displacement_round_trip",
            "score_relativity",
            "shift_equivariance",
        ]
        assert all(c["residual"] < 1e-9 for c in report["checks"])

    def test_conjugated(self, run_cli, givens_file):
        assert run_cli("demo", "-i", givens_file, "--tokens", 4)[0] == 0

    def test_mixed_reports_rank_deficiency(self, run_cli, mixed_file):
        code, out, _ = run_cli("demo", "-i", mixed_file)
        assert code == 1
        checks = {c["name"]: c for c in json.loads(out)["checks"]}
        assert checks["score_relativity"]["passed"]
        assert not checks["displacement_round_trip"]["passed"]
        assert "rank" in checks["displacement_round_trip"]["detail"]

    def test_fixed_seed_is_byte_identical(self, run_cli, toral_file):
        first = run_cli("demo", "-i", toral_file, "--seed", 9)[1]
        second = run_cli("demo", "-i", toral_file, "--seed", 9)[1]
        assert first == second

    def test_zero_tokens(self, run_cli, toral_file):
        assert run_cli("demo", "-i", toral_file, "--tokens", 0)[0] == 2


class TestPipeline:
    @pytest.mark.parametrize("construction,expected", [("toral", 0), ("mixed", 1)])
    def test_gen_verify_demo(self, run_cli, tmp_path, construction, expected):
        path = tmp_path / f"{construction}.json"
        assert run_cli("gen", "--construction", construction, "--seed", 1, "-o", path)[0] == 0
        assert run_cli("verify", "-i", path, "--seed", 1)[0] == expected
        assert run_cli("demo", "-i", path, "--seed", 1)[0] == expected
