import xml.etree.ElementTree as ET

import numpy as np
import pytest

import splitnls as s
from splitnls.errors import BlowupError, ConfigError
from splitnls.runner import (
    CSV_COLUMNS,
    RunResult,
    RunRow,
    _render_csv,
    parse_config,
    run_experiment,
    write_outputs,
)

SMALL_SOLITON = """
grid_points = 48
n_steps = 20, 40, 80
t_end = 0.1
"""

SMALL_STOCHASTIC = """
problem = stochastic_nls
grid_points = 24
scheme = iterative
sweeps = 2
n_steps = 4, 8, 16
t_end = 0.05
ensemble = 3
reference = fine
reference_refinement = 4
substeps = 4
epsilon = 0.5
"""


class TestParseConfig:
    def test_empty_gives_soliton_defaults(self):
        cfg = parse_config("")
        assert cfg.problem is s.ProblemKind.DETERMINISTIC_NLS
        assert cfg.x_right == 50.0 and cfg.grid_points == 500
        assert cfg.scheme is s.Scheme.STRANG
        assert cfg.reference == "exact"

    def test_comments_and_blank_lines(self):
        cfg = parse_config("# a comment\n\n t_end = 0.5 # trailing\n")
        assert cfg.t_end == 0.5

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ConfigError):
            parse_config("epsilon = -1\n")

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError) as err:
            parse_config("t_end = 1\nwhatever = 2\n")
        assert err.value.line == 2
        assert "whatever" in str(err.value)

    def test_malformed_value_reports_line(self):
        with pytest.raises(ConfigError) as err:
            parse_config("grid_points = many\n")
        assert err.value.line == 1

    def test_missing_equals_sign(self):
        with pytest.raises(ConfigError) as err:
            parse_config("t_end 1.0\n")
        assert err.value.line == 1

    def test_step_list_must_increase(self):
        with pytest.raises(ConfigError):
            parse_config("n_steps = 10, 10\n")

    def test_converge_needs_three_levels(self):
        with pytest.raises(ConfigError):
            parse_config("n_steps = 10, 20\n", command="converge")
        cfg = parse_config("n_steps = 10, 20, 40\nt_end = 0.1\ngrid_points = 24\n",
                           command="converge")
        assert len(cfg.n_steps) == 3

    def test_lambda_key(self):
        cfg = parse_config("problem = deterministic_perturbed\nlambda = 12.0\n"
                           "x_right = 1.0\ngrid_points = 16\n")
        assert cfg.lam == 12.0

    def test_exact_reference_needs_soliton_kind(self):
        with pytest.raises(ConfigError):
            parse_config("problem = deterministic_perturbed\nx_right = 1\n"
                         "grid_points = 16\nreference = exact\n")

    def test_exact_reference_needs_zero_noise(self):
        with pytest.raises(ConfigError):
            parse_config("problem = stochastic_nls\nreference = exact\n")

    def test_weighted_scheme_rejects_noise(self):
        with pytest.raises(ConfigError):
            parse_config("problem = stochastic_nls\nscheme = weighted1\n"
                         "reference = fine\n")

    def test_stochastic_levels_must_divide_reference(self):
        with pytest.raises(ConfigError) as err:
            parse_config("problem = stochastic_nls\nreference = fine\n"
                         "n_steps = 3, 7\nreference_refinement = 2\n")
        assert "divide" in str(err.value)

    def test_scheme_aliases(self):
        assert parse_config("scheme = ab\n").scheme is s.Scheme.LIE

    def test_defect_preset(self):
        cfg = parse_config("ensemble = 10\n", command="defect")
        assert cfg.problem is s.ProblemKind.LINEARIZED_STOCHASTIC
        assert cfg.grid_points == 8
        assert cfg.ensemble == 10


class TestErrorStudy:
    def test_soliton_rows_and_summary(self):
        cfg = parse_config(SMALL_SOLITON, command="soliton")
        res = run_experiment(cfg, "soliton")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert len(data_rows) == 3
        assert [r.dt for r in data_rows] == [0.1 / 20, 0.1 / 40, 0.1 / 80]
        assert all(r.l2_error is not None and r.l2_error >= 0 for r in data_rows)
        assert all(r.mass_drift <= 1e-9 for r in data_rows)
        summary_rows = [r for r in res.rows if r.run_id == "summary"]
        assert len(summary_rows) == 1
        assert res.summary["order_fit"] is not None
        assert res.csv_text.splitlines()[0] == ",".join(CSV_COLUMNS)
        assert len(res.csv_text.splitlines()) == 5  # header + 3 + summary

    def test_determinism(self):
        cfg = parse_config(SMALL_SOLITON, command="soliton")
        a = run_experiment(cfg, "soliton")
        b = run_experiment(cfg, "soliton")
        assert a.csv_text == b.csv_text
        assert a.svgs == b.svgs

    def test_stochastic_rows_per_level_and_path(self):
        cfg = parse_config(SMALL_STOCHASTIC, command="converge")
        res = run_experiment(cfg, "converge")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert len(data_rows) == 9  # 3 levels x 3 paths
        assert {r.path_id for r in data_rows} == {0, 1, 2}
        assert res.summary["order_fit"] is not None

    def test_worker_count_does_not_change_results(self):
        base = parse_config(SMALL_STOCHASTIC, command="converge")
        multi = parse_config(SMALL_STOCHASTIC + "workers = 3\n", command="converge")
        a = run_experiment(base, "converge")
        b = run_experiment(multi, "converge")
        assert a.csv_text == b.csv_text

    def test_seed_changes_stochastic_results(self):
        cfg_a = parse_config(SMALL_STOCHASTIC, command="run")
        cfg_b = parse_config(SMALL_STOCHASTIC + "seed = 999\n", command="run")
        a = run_experiment(cfg_a, "run")
        b = run_experiment(cfg_b, "run")
        assert a.csv_text != b.csv_text

    def test_deterministic_ensemble_collapses_with_warning(self):
        cfg = parse_config(SMALL_SOLITON + "ensemble = 4\n", command="soliton")
        res = run_experiment(cfg, "soliton")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert len(data_rows) == 3
        assert any("ensemble" in w for w in res.warnings)

    def test_blowup_becomes_flagged_row(self, monkeypatch):
        import splitnls.runner as runner_mod

        real_integrate = runner_mod.integrate
        calls = {"n": 0}

        def flaky(problem, spec, t_end, n_steps, path=None, snapshot_stride=1):
            calls["n"] += 1
            if n_steps == 40:
                raise BlowupError("non-finite state after step 7", step=7)
            return real_integrate(problem, spec, t_end, n_steps, path=path,
                                  snapshot_stride=snapshot_stride)

        monkeypatch.setattr(runner_mod, "integrate", flaky)
        cfg = parse_config(SMALL_SOLITON, command="run")
        res = run_experiment(cfg, "run")
        flagged = [r for r in res.rows if r.run_id != "summary" and r.l2_error is None]
        assert len(flagged) == 1
        assert flagged[0].dt == pytest.approx(0.1 / 40)
        assert any("step 7" in w for w in res.warnings)
        # the other levels still ran
        ok_rows = [r for r in res.rows if r.l2_error is not None]
        assert len(ok_rows) >= 2

    def test_strang_order_two_against_fine_reference(self):
        cfg = parse_config(
            "grid_points = 48\nn_steps = 20, 40, 80\nt_end = 0.1\n"
            "reference = fine\nreference_scheme = strang\n"
            "reference_refinement = 16\n", command="converge")
        res = run_experiment(cfg, "converge")
        assert res.summary["order_fit"] == pytest.approx(2.0, abs=0.3)

    def test_measure_defect_fills_column(self):
        cfg = parse_config(SMALL_SOLITON + "measure_defect = true\n",
                           command="run")
        res = run_experiment(cfg, "run")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert all(r.defect is not None and r.defect >= 0 for r in data_rows)

    def test_measure_defect_for_stochastic_iterative(self):
        cfg = parse_config(
            "problem = stochastic_nls\ngrid_points = 8\nscheme = iterative\n"
            "sweeps = 1\nn_steps = 4, 8\nt_end = 0.05\nreference = fine\n"
            "reference_refinement = 2\nsubsteps = 4\nepsilon = 0.5\n"
            "measure_defect = true\n", command="run")
        res = run_experiment(cfg, "run")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert all(r.defect is not None and r.defect > 0 for r in data_rows)


class TestDefectStudy:
    def test_rows_medians_and_slope(self):
        cfg = parse_config("ensemble = 20\nn_steps = 16, 32, 64, 128\nsweeps = 1\n",
                           command="defect")
        res = run_experiment(cfg, "defect")
        data_rows = [r for r in res.rows if r.run_id != "summary"]
        assert len(data_rows) == 4 * 20
        assert all(r.defect is not None for r in data_rows)
        assert res.summary["slope_fit"] >= 0.7
        budget = res.summary["budget"]
        assert budget["tau_bound"] == pytest.approx(
            (budget["delta"] / budget["k1"]) ** 2)

    def test_needs_noise(self):
        with pytest.raises(ConfigError):
            parse_config("epsilon = 0\n", command="defect")


class TestOutputs:
    def test_header_only_csv_for_empty_result(self, tmp_path):
        res = RunResult(command="run", rows=[], summary={},
                        csv_text=_render_csv([]))
        paths = write_outputs(res, tmp_path)
        assert paths[0].read_text() == ",".join(CSV_COLUMNS) + "\n"

    def test_rows_render_empty_fields(self):
        row = RunRow(run_id="x", scheme="lie")
        rendered = row.render().split(",")
        assert rendered[0] == "x"
        assert rendered[4] == ""  # dt missing

    def test_files_written_and_svg_parses(self, tmp_path):
        cfg = parse_config(SMALL_SOLITON, command="soliton")
        res = run_experiment(cfg, "soliton")
        paths = write_outputs(res, tmp_path)
        names = {p.name for p in paths}
        assert "soliton_runs.csv" in names
        assert "error_vs_dt.svg" in names
        for p in paths:
            if p.suffix == ".svg":
                root = ET.fromstring(p.read_text())
                assert root.tag.endswith("svg")

    def test_csv_round_trips_floats(self):
        cfg = parse_config(SMALL_SOLITON, command="run")
        res = run_experiment(cfg, "run")
        lines = res.csv_text.strip().splitlines()
        header = lines[0].split(",")
        i_l2 = header.index("l2_error")
        first = lines[1].split(",")
        reparsed = float(first[i_l2])
        assert repr(reparsed) == first[i_l2]
