import json
import os

import pytest

from chipletsched import Dataflow, PackageSpec
from chipletsched.cli import (
    NormalizedReport,
    dump_workload,
    emit_reports,
    load_config,
    main,
    normalized_report_from_dict,
    normalized_report_to_dict,
    report_to_csv,
    resolve_config,
    run_scenario,
)
from chipletsched.errors import ConfigError
from chipletsched.workload import load_graph

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def small_scenario(**overrides):
    """Fast default-package scenario on a shrunken transformer block."""
    data = {
        "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
        "options": ["os", "ws", "os-os", "os-ws"],
    }
    data.update(overrides)
    return resolve_config(data)


class TestLoadConfig:
    def test_empty_file_yields_full_defaults(self, tmp_path):
        cfg = load_config(write_config(tmp_path, {}))
        p = cfg.package
        assert (p.rows, p.cols) == (2, 2)
        assert p.nop.hop_lat_s == 35e-9
        assert p.nop.e_bit_j == 2.04e-12
        assert p.nop.bw_bytes_s == 100e9
        assert p.dram.lat_s == 200e-9
        assert p.dram.e_bit_j == 14.8e-12
        assert p.dram.bw_bytes_s == 64e9
        chip = p.chiplets[0][0]
        assert chip.freq_hz == 500e6
        assert chip.buffer_bytes == 10 * 2**20
        assert [w.name for w in cfg.workloads] == ["gpt2-block", "resnet50"]
        assert cfg.options == ["os", "ws", "os-os", "os-ws"]

    def test_partial_override_keeps_other_defaults(self, tmp_path):
        cfg = load_config(write_config(tmp_path, {"package": {"nop": {"bw_gb_s": 50}}}))
        assert cfg.package.nop.bw_bytes_s == 50e9
        assert cfg.package.nop.hop_lat_s == 35e-9
        assert cfg.package.dram.bw_bytes_s == 64e9

    def test_unknown_option_named_in_error(self, tmp_path):
        with pytest.raises(ConfigError, match="foo"):
            load_config(write_config(tmp_path, {"options": ["os", "foo"]}))

    def test_empty_workloads_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="workload"):
            load_config(write_config(tmp_path, {"workloads": []}))

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="banana"):
            load_config(write_config(tmp_path, {"banana": 1}))

    def test_parse_error_reports_location(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"options": [}')
        with pytest.raises(ConfigError, match="line 1"):
            load_config(str(path))

    def test_package_file_reference(self, tmp_path):
        pkg_path = tmp_path / "pkg.json"
        pkg_path.write_text(json.dumps({"rows": 1, "cols": 2, "dataflow_map": [["os", "os"]]}))
        cfg = load_config(write_config(tmp_path, {"package": "pkg.json"}))
        assert (cfg.package.rows, cfg.package.cols) == (1, 2)
        assert cfg.package.dataflow_at((0, 1)) is Dataflow.OS

    def test_workload_file_reference(self, tmp_path):
        dump_workload("gpt2-block", {"seq": 32}, str(tmp_path / "w.json"))
        cfg = load_config(write_config(tmp_path, {"workloads": [{"path": "w.json"}]}))
        assert cfg.workloads[0].name == "gpt2-block"
        assert len(cfg.workloads[0].graph.layers) == 6

    def test_golden_config_echo(self, tmp_path):
        cfg = load_config(write_config(tmp_path, {}))
        with open(os.path.join(DATA_DIR, "default_config_echo.json")) as fh:
            golden = json.load(fh)
        assert cfg.echo == golden


class TestDumpWorkload:
    def test_gpt2_block_file(self, tmp_path):
        path = tmp_path / "g.json"
        dump_workload("gpt2-block", {}, str(path))
        g = load_graph(str(path))
        assert len(g.layers) == 6

    def test_resnet50_file(self, tmp_path):
        path = tmp_path / "r.json"
        dump_workload("resnet50", {}, str(path))
        assert len(load_graph(str(path)).layers) == 54

    def test_unknown_name(self, tmp_path):
        with pytest.raises(ConfigError, match="vgg"):
            dump_workload("vgg", {}, str(tmp_path / "x.json"))


class TestRunScenario:
    def test_os_row_normalizes_to_exactly_one(self):
        rep = run_scenario(small_scenario())
        os_row = next(r for r in rep.results if r.option == "os")
        assert os_row.throughput_norm == 1.0
        assert os_row.efficiency_norm == 1.0

    def test_normalized_values_positive_finite(self):
        rep = run_scenario(small_scenario())
        for r in rep.results:
            assert r.ok
            assert r.throughput_norm > 0 and r.efficiency_norm > 0
            assert r.throughput_norm != float("inf") and r.efficiency_norm != float("inf")

    def test_missing_dataflow_recorded_and_run_continues(self):
        cfg = small_scenario(package={"dataflow_map": [["os", "os"], ["os", "os"]]})
        rep = run_scenario(cfg)
        ws_row = next(r for r in rep.results if r.option == "ws")
        assert not ws_row.ok and "ws" in ws_row.error
        osos_row = next(r for r in rep.results if r.option == "os-os")
        assert osos_row.ok

    def test_search_option(self):
        cfg = small_scenario(options=["os", "search"])
        rep = run_scenario(cfg)
        row = next(r for r in rep.results if r.option == "search")
        assert row.ok and row.schedule is not None
        assert row.throughput_norm >= 1.0  # search space includes the os baseline

    def test_monolithic_baseline_row(self):
        cfg = small_scenario(baseline="monolithic-4x", options=["os"])
        rep = run_scenario(cfg)
        mono = next(r for r in rep.results if r.option == "monolithic-4x")
        assert mono.throughput_norm == 1.0 and mono.efficiency_norm == 1.0
        os_row = next(r for r in rep.results if r.option == "os")
        assert 0 < os_row.throughput_norm <= 1.0  # 4x PEs can only help the baseline

    def test_efficiency_objective_search_is_self_consistent(self):
        cfg = small_scenario(options=["search"], objective="efficiency")
        rep = run_scenario(cfg)
        assert rep.results[0].ok

    def test_heterogeneous_trend_flagged_when_it_diverges(self):
        # either os-ws matches/beats os-os on efficiency, or the report says why not
        rep = run_scenario(resolve_config({"workloads": ["resnet50"]}))
        osos = next(r for r in rep.results if r.option == "os-os")
        osws = next(r for r in rep.results if r.option == "os-ws")
        diverged = osws.efficiency_norm < osos.efficiency_norm
        assert not diverged or any("os-ws" in note for note in rep.trend_notes)


class TestReportEmission:
    def test_csv_header_and_os_row_tail(self):
        rep = run_scenario(small_scenario())
        csv = report_to_csv(rep)
        lines = csv.splitlines()
        assert lines[0] == (
            "workload,option,latency_s,interval_s,throughput_out_s,"
            "energy_j,edp,efficiency,throughput_norm,efficiency_norm"
        )
        os_line = next(l for l in lines[1:] if l.split(",")[1] == "os")
        assert os_line.endswith(",1.000000000,1.000000000")

    def test_empty_report_is_header_only(self, tmp_path):
        rep = NormalizedReport(config_echo={}, results=[])
        csv_path = tmp_path / "empty.csv"
        emit_reports(rep, None, str(csv_path))
        assert csv_path.read_text() == (
            "workload,option,latency_s,interval_s,throughput_out_s,"
            "energy_j,edp,efficiency,throughput_norm,efficiency_norm\n"
        )

    def test_json_round_trip_equality(self, tmp_path):
        rep = run_scenario(small_scenario())
        json_path = tmp_path / "report.json"
        emit_reports(rep, str(json_path), None)
        with open(json_path) as fh:
            parsed = normalized_report_from_dict(json.load(fh))
        assert parsed.config_echo == rep.config_echo
        assert parsed.trend_notes == rep.trend_notes
        for a, b in zip(parsed.results, rep.results):
            assert (a.workload, a.option, a.error) == (b.workload, b.option, b.error)
            assert a.report == b.report
            assert a.schedule == b.schedule
            assert a.throughput_norm == b.throughput_norm
            assert a.efficiency_norm == b.efficiency_norm

    def test_error_rows_kept_in_json_not_csv(self):
        cfg = small_scenario(package={"dataflow_map": [["os", "os"], ["os", "os"]]})
        rep = run_scenario(cfg)
        data = normalized_report_to_dict(rep)
        errors = [e for e in data["results"] if "error" in e]
        assert errors and all("report" not in e for e in errors)
        csv = report_to_csv(rep)
        assert all(",ws," not in line for line in csv.splitlines())


class TestMainEntry:
    def test_run_writes_reports(self, tmp_path):
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
            "options": ["os", "os-os"],
        })
        out_json = tmp_path / "r.json"
        out_csv = tmp_path / "r.csv"
        code = main(["run", "--config", cfg_path,
                     "--out-json", str(out_json), "--out-csv", str(out_csv)])
        assert code == 0
        assert out_json.exists() and out_csv.exists()
        data = json.loads(out_json.read_text())
        assert data["config"]["package"]["rows"] == 2
        assert len(data["results"]) == 2

    def test_run_is_byte_deterministic(self, tmp_path):
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
        })
        outputs = []
        for tag in ("a", "b"):
            oj, oc = tmp_path / f"{tag}.json", tmp_path / f"{tag}.csv"
            assert main(["run", "--config", cfg_path, "--out-json", str(oj), "--out-csv", str(oc)]) == 0
            outputs.append((oj.read_bytes(), oc.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_config_error_exit_code(self, tmp_path):
        cfg_path = write_config(tmp_path, {"options": ["foo"]})
        assert main(["run", "--config", cfg_path]) == 1

    def test_missing_file_exit_code(self):
        assert main(["run", "--config", "/nonexistent/config.json"]) == 2

    def test_dump_workload_command(self, tmp_path):
        out = tmp_path / "w.json"
        code = main(["dump-workload", "gpt2-block", "--out", str(out), "--param", "seq=128"])
        assert code == 0
        g = load_graph(str(out))
        assert g.layers[0].shape.m == 128

    def test_dump_workload_unknown_name(self, tmp_path):
        assert main(["dump-workload", "vgg", "--out", str(tmp_path / "x.json")]) == 1

    def test_search_command(self, tmp_path):
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
        })
        out = tmp_path / "search.json"
        code = main(["search", "--config", cfg_path, "--objective", "efficiency",
                     "--out-json", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["results"][0]["objective"] == "efficiency"
        assert data["results"][0]["schedule"]["tree"]["type"] in ("leaf", "pipe")

    def test_compare_command(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
            "options": ["os"],
        })
        out = tmp_path / "r.json"
        assert main(["run", "--config", cfg_path, "--out-json", str(out)]) == 0
        assert main(["compare", str(out), str(out)]) == 0
        captured = capsys.readouterr().out
        lines = captured.splitlines()
        assert lines[0] == "workload,option,throughput_ratio,efficiency_ratio"
        assert lines[1].endswith(",1.000000000,1.000000000")

    def test_stdout_csv_when_no_outputs(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
            "options": ["os"],
        })
        assert main(["run", "--config", cfg_path]) == 0
        assert capsys.readouterr().out.startswith("workload,option,")

    def test_log_env_var_accepted(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CHIPLET_SCHED_LOG", "debug")
        cfg_path = write_config(tmp_path, {
            "workloads": [{"builtin": "gpt2-block", "params": {"seq": 64, "d_model": 64, "n_heads": 4}}],
            "options": ["os"],
        })
        assert main(["run", "--config", cfg_path, "--out-csv", str(tmp_path / "o.csv")]) == 0
