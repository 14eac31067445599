"""Command-line front end: scenario runs, schedule search, report emission.

A scenario evaluates each workload under a set of schedule options and
normalizes every option against the standalone single-chiplet ``os`` baseline:

* ``os`` / ``ws``  -- the whole chain on one chiplet of that dataflow.
* ``os-os`` / ``os-ws`` -- a 2-stage pipeline cut where the stage latencies
  balance, stages mapped to chiplets of those dataflows (first stage adjacent
  to a memory channel).
* ``search`` -- the scheduler's best schedule for the configured objective.

Reports are emitted as CSV (one row per workload x option) and JSON (full
per-stage detail plus an echo of every resolved constant). Identical configs
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field, replace

from .chiplet_cost import ChipletSpec, Dataflow
from .errors import ChipletSchedError, ConfigError
from .mcm import Coord, DramParams, NoPParams, PackageSpec
from .scheduler import (
    CostReport,
    Schedule,
    balanced_cut,
    evaluate_schedule,
    leaf,
    pipe,
    report_from_dict,
    report_to_dict,
    schedule_from_dict,
    schedule_to_dict,
    search,
)
from .workload import (
    BUILTIN_WORKLOADS,
    ModelGraph,
    build_workload,
    graph_from_dict,
    load_graph,
    save_graph,
)

log = logging.getLogger("chipletsched")

OPTION_LABELS = ("os", "ws", "os-os", "os-ws", "search")
BASELINES = ("os", "monolithic-4x")
CSV_HEADER = (
    "workload,option,latency_s,interval_s,throughput_out_s,"
    "energy_j,edp,efficiency,throughput_norm,efficiency_norm"
)

WORKLOAD_DEFAULTS: dict[str, dict] = {
    "gpt2-block": {"d_model": 768, "n_heads": 12, "seq": 1024, "ffn_mult": 4,
                   "elem_bytes": 1, "batch": 1},
    "resnet50": {"batch": 1, "elem_bytes": 1},
}


# --- configuration ----------------------------------------------------------


@dataclass
class WorkloadRef:
    name: str
    params: dict
    graph: ModelGraph
    source: str  # "builtin" or the file path


@dataclass
class ScenarioConfig:
    package: PackageSpec
    workloads: list[WorkloadRef]
    options: list[str]
    objective: str = "throughput"
    max_stages: int = 2
    baseline: str = "os"
    out_json: str | None = None
    out_csv: str | None = None
    echo: dict = field(default_factory=dict)


def _require_keys(data: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown field(s) {unknown} in {where}; allowed: {sorted(allowed)}")


def _resolve_section(data: dict, defaults: dict, where: str) -> dict:
    _require_keys(data, set(defaults), where)
    out = dict(defaults)
    out.update(data)
    return out


_NOP_DEFAULTS = {"hop_lat_ns": 35.0, "e_pj_per_bit": 2.04, "bw_gb_s": 100.0}
_DRAM_DEFAULTS = {"lat_ns": 200.0, "e_pj_per_bit": 14.8, "bw_gb_s": 64.0}
_CHIPLET_DEFAULTS = {"pe_count": 256, "freq_mhz": 500.0, "buffer_mb": 10.0,
                     "e_mac_pj": 1.0, "e_buf_pj_per_byte": 1.2}


def resolve_package(data: dict | None) -> PackageSpec:
    """Build a PackageSpec from the package-config JSON object (all fields optional)."""
    data = data or {}
    _require_keys(data, {"rows", "cols", "nop", "dram", "chiplet", "dataflow_map"}, "package config")
    rows = int(data.get("rows", 2))
    cols = int(data.get("cols", 2))
    nop_cfg = _resolve_section(data.get("nop", {}), _NOP_DEFAULTS, "package.nop")
    dram_cfg = _resolve_section(data.get("dram", {}), _DRAM_DEFAULTS, "package.dram")
    chip_cfg = _resolve_section(data.get("chiplet", {}), _CHIPLET_DEFAULTS, "package.chiplet")

    # divide by the exactly-representable power of ten so default configs
    # reproduce the dataclass default constants bit-for-bit
    nop = NoPParams(
        hop_lat_s=nop_cfg["hop_lat_ns"] / 1e9,
        e_bit_j=nop_cfg["e_pj_per_bit"] / 1e12,
        bw_bytes_s=nop_cfg["bw_gb_s"] * 1e9,
    )
    dram = DramParams(
        lat_s=dram_cfg["lat_ns"] / 1e9,
        e_bit_j=dram_cfg["e_pj_per_bit"] / 1e12,
        bw_bytes_s=dram_cfg["bw_gb_s"] * 1e9,
    )
    chip = ChipletSpec(
        pe_count=int(chip_cfg["pe_count"]),
        freq_hz=chip_cfg["freq_mhz"] * 1e6,
        buffer_bytes=int(chip_cfg["buffer_mb"] * 2**20),
        e_mac_j=chip_cfg["e_mac_pj"] / 1e12,
        e_buf_byte_j=chip_cfg["e_buf_pj_per_byte"] / 1e12,
    )
    if "dataflow_map" in data:
        try:
            dataflow_map = tuple(tuple(Dataflow(v) for v in row) for row in data["dataflow_map"])
        except ValueError as exc:
            raise ConfigError(f"package.dataflow_map: {exc}") from exc
    else:
        dataflow_map = ()
    chiplets = tuple(tuple(chip for _ in range(cols)) for _ in range(rows))
    try:
        return PackageSpec(rows=rows, cols=cols, chiplets=chiplets,
                           dataflow_map=dataflow_map, nop=nop, dram=dram)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _resolve_workload_entry(entry, base_dir: str) -> WorkloadRef:
    if isinstance(entry, str):
        entry = {"builtin": entry}
    if not isinstance(entry, dict):
        raise ConfigError(f"workload entry must be a name or object, got {entry!r}")
    if "builtin" in entry:
        _require_keys(entry, {"builtin", "params"}, "workload entry")
        name = entry["builtin"]
        if name not in BUILTIN_WORKLOADS:
            raise ConfigError(f"unknown builtin workload {name!r}; available: {sorted(BUILTIN_WORKLOADS)}")
        params = _resolve_section(entry.get("params", {}), WORKLOAD_DEFAULTS[name], f"workload {name!r} params")
        graph = build_workload(name, params)
        return WorkloadRef(name=name, params=params, graph=graph, source="builtin")
    if "path" in entry:
        _require_keys(entry, {"path"}, "workload entry")
        path = entry["path"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        graph = load_graph(path)
        params = {"batch": graph.batch,
                  "elem_bytes": graph.layers[0].shape.elem_bytes if graph.layers else 1,
                  "n_layers": len(graph.layers)}
        return WorkloadRef(name=graph.name, params=params, graph=graph, source=path)
    raise ConfigError(f"workload entry needs 'builtin' or 'path', got keys {sorted(entry)}")


def _package_echo(p: PackageSpec) -> dict:
    chip = p.chiplet_at(Coord(0, 0))
    return {
        "rows": p.rows,
        "cols": p.cols,
        "nop": {"hop_lat_s": p.nop.hop_lat_s, "e_bit_j": p.nop.e_bit_j,
                "bw_bytes_s": p.nop.bw_bytes_s},
        "dram": {"lat_s": p.dram.lat_s, "e_bit_j": p.dram.e_bit_j,
                 "bw_bytes_s": p.dram.bw_bytes_s},
        "chiplet": {"pe_count": chip.pe_count, "freq_hz": chip.freq_hz,
                    "buffer_bytes": chip.buffer_bytes, "e_mac_j": chip.e_mac_j,
                    "e_buf_byte_j": chip.e_buf_byte_j},
        "dataflow_map": [[df.value for df in row] for row in p.dataflow_map],
    }


def resolve_config(data: dict, base_dir: str = ".") -> ScenarioConfig:
    """Fill defaults and build a fully-resolved scenario configuration."""
    allowed = {"package", "workloads", "options", "objective", "max_stages",
               "baseline", "out_json", "out_csv"}
    _require_keys(data, allowed, "scenario config")

    pkg_field = data.get("package", "default")
    if pkg_field == "default":
        package = resolve_package({})
    elif isinstance(pkg_field, str):
        path = pkg_field if os.path.isabs(pkg_field) else os.path.join(base_dir, pkg_field)
        with open(path, encoding="utf-8") as fh:
            package = resolve_package(json.load(fh))
    elif isinstance(pkg_field, dict):
        package = resolve_package(pkg_field)
    else:
        raise ConfigError(f"'package' must be 'default', a path, or an object, got {pkg_field!r}")

    entries = data.get("workloads", ["gpt2-block", "resnet50"])
    if not entries:
        raise ConfigError("scenario config lists no workloads; at least one is required")
    workloads = [_resolve_workload_entry(e, base_dir) for e in entries]

    options = list(data.get("options", ["os", "ws", "os-os", "os-ws"]))
    for opt in options:
        if opt not in OPTION_LABELS:
            raise ConfigError(f"unknown schedule option {opt!r}; allowed: {list(OPTION_LABELS)}")
    if not options:
        raise ConfigError("scenario config lists no schedule options")

    objective = data.get("objective", "throughput")
    if objective not in ("throughput", "efficiency"):
        raise ConfigError(f"unknown objective {objective!r}")
    max_stages = int(data.get("max_stages", 2))
    if max_stages < 1:
        raise ConfigError(f"max_stages must be >= 1, got {max_stages}")
    baseline = data.get("baseline", "os")
    if baseline not in BASELINES:
        raise ConfigError(f"unknown baseline {baseline!r}; allowed: {list(BASELINES)}")

    cfg = ScenarioConfig(
        package=package,
        workloads=workloads,
        options=options,
        objective=objective,
        max_stages=max_stages,
        baseline=baseline,
        out_json=data.get("out_json"),
        out_csv=data.get("out_csv"),
    )
    cfg.echo = {
        "package": _package_echo(package),
        "workloads": [{"name": w.name, "source": w.source, "params": w.params,
                       "n_layers": len(w.graph.layers), "total_macs": w.graph.total_macs}
                      for w in workloads],
        "options": list(options),
        "objective": objective,
        "max_stages": max_stages,
        "baseline": baseline,
    }
    return cfg


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top-level value must be a JSON object")
    return resolve_config(data, base_dir=os.path.dirname(os.path.abspath(path)))


# --- scenario execution -----------------------------------------------------


@dataclass
class OptionResult:
    workload: str
    option: str
    report: CostReport | None = None
    schedule: Schedule | None = None
    throughput_norm: float | None = None
    efficiency_norm: float | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class NormalizedReport:
    config_echo: dict
    results: list[OptionResult]
    trend_notes: list[str] = field(default_factory=list)


def _standalone_schedule(g: ModelGraph, p: PackageSpec, df: Dataflow) -> Schedule:
    """Whole chain on one chiplet of the given dataflow (stage-1 tie-breaks)."""
    candidates = [c for c in p.coords() if p.dataflow_at(c) is df]
    if not candidates:
        raise ConfigError(f"no chiplet with dataflow {df.value!r} in the package")
    coord = min(candidates, key=lambda c: (p.memory_access_hops(c), c))
    return Schedule(tree=leaf(0, len(g.layers), coord, df), label=df.value)


def _two_stage_schedule(g: ModelGraph, p: PackageSpec, option: str) -> Schedule:
    """Balanced 2-stage pipeline on chiplets of the option's two dataflows."""
    df1, df2 = (Dataflow(part) for part in option.split("-"))
    if len(g.layers) < 2:
        raise ConfigError(f"option {option!r} needs at least 2 layers, graph has {len(g.layers)}")
    entry = [c for c in p.coords() if p.dataflow_at(c) is df1 and p.memory_access_hops(c) == 0]
    if not entry:
        raise ConfigError(f"no memory-adjacent chiplet with dataflow {df1.value!r} for option {option!r}")
    first = min(entry)
    rest = [c for c in p.coords() if c != first and p.dataflow_at(c) is df2]
    if not rest:
        raise ConfigError(f"no second chiplet with dataflow {df2.value!r} for option {option!r}")
    second = min(rest, key=lambda c: (p.memory_access_hops(c), p.hop_count(first, c), c))
    partition = balanced_cut(g, p, 2, stage_coords=(first, second))
    leaves = [leaf(start, end, coord, p.dataflow_at(coord))
              for (start, end), coord in zip(partition, (first, second))]
    return Schedule(tree=pipe(*leaves), label=option)


def _baseline_report(g: ModelGraph, p: PackageSpec, cfg: ScenarioConfig) -> tuple[str, CostReport]:
    if cfg.baseline == "os":
        schedule = _standalone_schedule(g, p, Dataflow.OS)
        return "os", evaluate_schedule(schedule, g, p)
    # monolithic-4x: one chiplet holding the whole package's PEs, os dataflow
    chip = p.chiplet_at(Coord(0, 0))
    mono_chip = replace(chip, pe_count=chip.pe_count * p.rows * p.cols)
    mono_pkg = PackageSpec(rows=1, cols=1, chiplets=((mono_chip,),),
                           dataflow_map=((Dataflow.OS,),), nop=p.nop, dram=p.dram)
    schedule = Schedule(tree=leaf(0, len(g.layers), Coord(0, 0), Dataflow.OS), label="monolithic-4x")
    return "monolithic-4x", evaluate_schedule(schedule, g, mono_pkg)


def run_scenario(cfg: ScenarioConfig) -> NormalizedReport:
    """Evaluate the option matrix and normalize against the configured baseline.

    Per-option failures (e.g. a dataflow absent from the package) are recorded
    in the result list and the run continues.
    """
    results: list[OptionResult] = []
    trend_notes: list[str] = []
    for ref in cfg.workloads:
        g = ref.graph
        per_option: list[OptionResult] = []
        for option in cfg.options:
            res = OptionResult(workload=ref.name, option=option)
            try:
                if option in ("os", "ws"):
                    res.schedule = _standalone_schedule(g, cfg.package, Dataflow(option))
                    res.report = evaluate_schedule(res.schedule, g, cfg.package)
                elif option in ("os-os", "os-ws"):
                    res.schedule = _two_stage_schedule(g, cfg.package, option)
                    res.report = evaluate_schedule(res.schedule, g, cfg.package)
                else:  # search
                    res.schedule, res.report = search(
                        g, cfg.package, cfg.objective, cfg.max_stages
                    )
            except (ChipletSchedError, ValueError) as exc:
                res.error = str(exc)
                log.warning("workload %s option %s failed: %s", ref.name, option, exc)
            per_option.append(res)

        try:
            base_label, base = _baseline_report(g, cfg.package, cfg)
        except (ChipletSchedError, ValueError) as exc:
            base_label, base = None, None
            trend_notes.append(f"{ref.name}: baseline unavailable ({exc}); normalized columns omitted")
        if cfg.baseline == "monolithic-4x" and base is not None:
            mono = OptionResult(workload=ref.name, option=base_label, report=base,
                                throughput_norm=1.0, efficiency_norm=1.0)
            per_option.insert(0, mono)
        for res in per_option:
            if res.ok and base is not None and res.throughput_norm is None:
                res.throughput_norm = res.report.throughput_out_s / base.throughput_out_s
                res.efficiency_norm = res.report.efficiency / base.efficiency

        by_option = {r.option: r for r in per_option if r.ok}
        if "os-os" in by_option and "os-ws" in by_option:
            homo = by_option["os-os"].efficiency_norm
            hetero = by_option["os-ws"].efficiency_norm
            if homo is not None and hetero is not None and hetero < homo:
                trend_notes.append(
                    f"{ref.name}: heterogeneous os-ws efficiency ({hetero:.9f}) below homogeneous "
                    f"os-os ({homo:.9f}); the analytical dataflow model favors os on these layers"
                )
        if "os-ws" in by_option:
            hetero = by_option["os-ws"].efficiency_norm
            if hetero is not None and hetero <= 1.0:
                trend_notes.append(
                    f"{ref.name}: os-ws efficiency did not exceed the standalone os baseline "
                    f"({hetero:.9f} <= 1.0); ws partial-sum spill traffic outweighs pipelining here"
                )
        results.extend(per_option)
    return NormalizedReport(config_echo=cfg.echo, results=results, trend_notes=trend_notes)


# --- report emission --------------------------------------------------------


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.9f}"


def report_to_csv(r: NormalizedReport) -> str:
    lines = [CSV_HEADER]
    for res in r.results:
        if not res.ok:
            continue
        rep = res.report
        lines.append(",".join([
            res.workload,
            res.option,
            _fmt(rep.e2e_latency_s),
            _fmt(rep.interval_s),
            _fmt(rep.throughput_out_s),
            _fmt(rep.energy_j),
            _fmt(rep.edp),
            _fmt(rep.efficiency),
            _fmt(res.throughput_norm),
            _fmt(res.efficiency_norm),
        ]))
    return "\n".join(lines) + "\n"


def normalized_report_to_dict(r: NormalizedReport) -> dict:
    results = []
    for res in r.results:
        entry: dict = {"workload": res.workload, "option": res.option}
        if res.ok:
            entry["throughput_norm"] = res.throughput_norm
            entry["efficiency_norm"] = res.efficiency_norm
            entry["report"] = report_to_dict(res.report)
            if res.schedule is not None:
                entry["schedule"] = schedule_to_dict(res.schedule)
        else:
            entry["error"] = res.error
        results.append(entry)
    return {"config": r.config_echo, "results": results, "trend_notes": list(r.trend_notes)}


def normalized_report_from_dict(data: dict) -> NormalizedReport:
    results = []
    for entry in data["results"]:
        res = OptionResult(workload=entry["workload"], option=entry["option"])
        if "error" in entry:
            res.error = entry["error"]
        else:
            res.throughput_norm = entry["throughput_norm"]
            res.efficiency_norm = entry["efficiency_norm"]
            res.report = report_from_dict(entry["report"])
            if "schedule" in entry:
                res.schedule = schedule_from_dict(entry["schedule"])
        results.append(res)
    return NormalizedReport(config_echo=data["config"], results=results,
                            trend_notes=list(data["trend_notes"]))


def emit_reports(r: NormalizedReport, json_path: str | None, csv_path: str | None) -> None:
    if json_path:
        try:
            with open(json_path, "w", encoding="utf-8") as fh:
                json.dump(normalized_report_to_dict(r), fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise ChipletSchedError(f"cannot write JSON report {json_path}: {exc}") from exc
    if csv_path:
        try:
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(report_to_csv(r))
        except OSError as exc:
            raise ChipletSchedError(f"cannot write CSV report {csv_path}: {exc}") from exc


def dump_workload(name: str, params: dict | None, path: str) -> None:
    if name not in BUILTIN_WORKLOADS:
        raise ConfigError(f"unknown workload {name!r}; available: {sorted(BUILTIN_WORKLOADS)}")
    resolved = _resolve_section(params or {}, WORKLOAD_DEFAULTS[name], f"workload {name!r} params")
    save_graph(build_workload(name, resolved), path)


# --- CLI plumbing -----------------------------------------------------------


def _setup_logging() -> None:
    level_name = os.environ.get("CHIPLET_SCHED_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _parse_params(pairs: list[str]) -> dict:
    params: dict = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--param expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = int(value)
        except ValueError as exc:
            raise ConfigError(f"--param {key}: expected an integer, got {value!r}") from exc
    return params


def _config_from_args(args) -> ScenarioConfig:
    if args.config:
        cfg = load_config(args.config)
    else:
        cfg = resolve_config({}, base_dir=os.getcwd())
    overrides = {}
    if getattr(args, "objective", None):
        overrides["objective"] = args.objective
    if getattr(args, "max_stages", None):
        overrides["max_stages"] = args.max_stages
    if getattr(args, "baseline", None):
        overrides["baseline"] = args.baseline
    if overrides:
        data = {"objective": cfg.objective, "max_stages": cfg.max_stages,
                "baseline": cfg.baseline}
        data.update(overrides)
        cfg.objective = data["objective"]
        cfg.max_stages = int(data["max_stages"])
        cfg.baseline = data["baseline"]
        if cfg.objective not in ("throughput", "efficiency"):
            raise ConfigError(f"unknown objective {cfg.objective!r}")
        if cfg.baseline not in BASELINES:
            raise ConfigError(f"unknown baseline {cfg.baseline!r}")
        cfg.echo["objective"] = cfg.objective
        cfg.echo["max_stages"] = cfg.max_stages
        cfg.echo["baseline"] = cfg.baseline
    if getattr(args, "out_json", None):
        cfg.out_json = args.out_json
    if getattr(args, "out_csv", None):
        cfg.out_csv = args.out_csv
    return cfg


def _cmd_run(args) -> int:
    cfg = _config_from_args(args)
    report = run_scenario(cfg)
    emit_reports(report, cfg.out_json, cfg.out_csv)
    if not cfg.out_json and not cfg.out_csv:
        sys.stdout.write(report_to_csv(report))
    for note in report.trend_notes:
        log.info("trend: %s", note)
    failures = [r for r in report.results if not r.ok]
    for r in failures:
        log.warning("option %s on %s skipped: %s", r.option, r.workload, r.error)
    return 0


def _cmd_search(args) -> int:
    cfg = _config_from_args(args)
    out = {"config": cfg.echo, "results": []}
    for ref in cfg.workloads:
        schedule, report = search(ref.graph, cfg.package, cfg.objective, cfg.max_stages)
        out["results"].append({
            "workload": ref.name,
            "objective": cfg.objective,
            "schedule": schedule_to_dict(schedule),
            "report": report_to_dict(report),
        })
    text = json.dumps(out, indent=2) + "\n"
    if cfg.out_json:
        with open(cfg.out_json, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_dump_workload(args) -> int:
    dump_workload(args.name, _parse_params(args.param or []), args.out)
    return 0


def _cmd_compare(args) -> int:
    reports = []
    for path in (args.report_a, args.report_b):
        with open(path, encoding="utf-8") as fh:
            reports.append(normalized_report_from_dict(json.load(fh)))
    a_rows = {(r.workload, r.option): r for r in reports[0].results if r.ok}
    b_rows = {(r.workload, r.option): r for r in reports[1].results if r.ok}
    lines = ["workload,option,throughput_ratio,efficiency_ratio"]
    for key in a_rows:
        if key not in b_rows:
            continue
        ra, rb = a_rows[key], b_rows[key]
        lines.append(",".join([
            key[0], key[1],
            _fmt(ra.report.throughput_out_s / rb.report.throughput_out_s),
            _fmt(ra.report.efficiency / rb.report.efficiency),
        ]))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chipletsched",
        description="Analytical scheduler and cost model for heterogeneous chiplet MCM accelerators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="scenario config JSON path (defaults apply when omitted)")
        sp.add_argument("--out-json", dest="out_json", help="write the JSON report here")
        sp.add_argument("--out-csv", dest="out_csv", help="write the CSV report here")
        sp.add_argument("--objective", choices=("throughput", "efficiency"))
        sp.add_argument("--max-stages", dest="max_stages", type=int)
        sp.add_argument("--seed", type=int, help="reserved; all algorithms are deterministic")

    run_p = sub.add_parser("run", help="evaluate the schedule option matrix and emit reports")
    add_common(run_p)
    run_p.add_argument("--baseline", choices=BASELINES)
    run_p.set_defaults(func=_cmd_run)

    search_p = sub.add_parser("search", help="search the schedule space for the best candidate")
    add_common(search_p)
    search_p.set_defaults(func=_cmd_search)

    dump_p = sub.add_parser("dump-workload", help="write a builtin workload description file")
    dump_p.add_argument("name", help="builtin workload name (gpt2-block, resnet50)")
    dump_p.add_argument("--out", required=True, help="output JSON path")
    dump_p.add_argument("--param", action="append", help="override, e.g. --param seq=512")
    dump_p.set_defaults(func=_cmd_dump_workload)

    cmp_p = sub.add_parser("compare", help="ratio table between two JSON reports (A / B)")
    cmp_p.add_argument("report_a")
    cmp_p.add_argument("report_b")
    cmp_p.add_argument("--out", help="write the comparison CSV here")
    cmp_p.set_defaults(func=_cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (ChipletSchedError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
