"""Two-stage schedule construction and evaluation over an MCM package.

Stage 1 picks a chiplet per layer by favored dataflow. Stage 2 explores
inter-layer pipelining: the chain is split into contiguous stages, each stage
is bound to one chiplet, and consecutive stages stream activations over the
NoP so successive inferences overlap.

Schedules are composition trees: a leaf binds a contiguous layer range to one
(chiplet, dataflow); composites run their children sequentially or pipelined.
Across the whole tree the leaves partition the layer chain in order, and the
children of a pipelined composite must occupy disjoint chiplets.

Evaluation semantics (all double-buffered / overlapped):

* leaf: latency and energy are sums of per-layer roofline costs on the bound
  chiplet, with that chiplet's DRAM access distance.
* pipelined composite: each boundary between consecutive children carries the
  crossing activation tensor over the NoP. Steady-state initiation interval =
  max over children of max(child interval, inbound transfer latency); single
  inference latency = sum of child latencies plus transfer latencies.
* sequential composite: interval = latency = sum of child latencies.

Throughput is batch / interval; EDP is energy per inference times single
inference latency; efficiency is 1 / EDP.

``search`` enumerates candidate schedules under placement heuristics (first
stage adjacent to a memory channel, adjacent stages at most 2 hops apart) and
returns the objective argmax. ``brute_force_oracle`` drops the adjacency
pruning and exhaustively scans the same space, as a ground-truth check.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .chiplet_cost import Dataflow, LayerCost, favored_dataflow, layer_cost
from .errors import ConfigError, ScheduleError, SearchSpaceError
from .mcm import Coord, PackageSpec, nop_transfer
from .workload import ModelGraph, activation_bytes_at_cut, validate_graph

OBJECTIVES = ("throughput", "efficiency")


class CompositionOp(enum.Enum):
    SEQUENTIAL = "seq"
    PIPELINED = "pipe"


@dataclass(frozen=True)
class StageLeaf:
    """A contiguous layer range [start, end) bound to one chiplet."""

    start: int
    end: int
    chiplet: Coord
    dataflow: Dataflow


@dataclass(frozen=True)
class Composite:
    op: CompositionOp
    children: tuple["ScheduleTree", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


ScheduleTree = StageLeaf | Composite


def leaf(start: int, end: int, chiplet: Coord, dataflow: Dataflow) -> StageLeaf:
    return StageLeaf(start, end, Coord(*chiplet), dataflow)


def seq(*children: ScheduleTree) -> Composite:
    return Composite(CompositionOp.SEQUENTIAL, tuple(children))


def pipe(*children: ScheduleTree) -> Composite:
    return Composite(CompositionOp.PIPELINED, tuple(children))


@dataclass(frozen=True)
class Schedule:
    tree: ScheduleTree
    label: str

    def __post_init__(self):
        if not self.label:
            raise ScheduleError("schedule label must be nonempty")


@dataclass(frozen=True)
class StageCost:
    """Aggregate cost of one leaf (one pipeline stage)."""

    start: int
    end: int
    chiplet: Coord
    dataflow: Dataflow
    latency_s: float
    energy_j: float
    cycles: int
    dram_bytes: int
    nop_bytes: int
    e_mac_j: float
    e_buf_j: float
    e_dram_j: float
    e_nop_j: float


@dataclass(frozen=True)
class TransferCost:
    """One inter-stage activation transfer across a pipeline boundary."""

    boundary: int  # layer index the cut precedes
    src: Coord
    dst: Coord
    n_bytes: int
    latency_s: float
    energy_j: float


@dataclass(frozen=True)
class CostReport:
    e2e_latency_s: float
    interval_s: float
    throughput_out_s: float
    energy_j: float
    edp: float
    efficiency: float
    stages: tuple[StageCost, ...]
    transfers: tuple[TransferCost, ...]


def iter_leaves(tree: ScheduleTree) -> list[StageLeaf]:
    if isinstance(tree, StageLeaf):
        return [tree]
    out: list[StageLeaf] = []
    for child in tree.children:
        out.extend(iter_leaves(child))
    return out


def validate_schedule(s: Schedule, g: ModelGraph, p: PackageSpec) -> None:
    """Check every tree invariant; raise ScheduleError naming the first violation."""
    leaves = iter_leaves(s.tree)
    if not leaves:
        raise ScheduleError("empty schedule: tree has no leaves")
    expected_start = 0
    for lf in leaves:
        if lf.start >= lf.end:
            raise ScheduleError(f"empty layer range [{lf.start}, {lf.end}) in leaf")
        if lf.start != expected_start:
            raise ScheduleError(
                f"leaves must partition layers in order: expected range starting at "
                f"{expected_start}, got [{lf.start}, {lf.end})"
            )
        expected_start = lf.end
        try:
            p.check_coord(lf.chiplet)
        except IndexError as exc:
            raise ScheduleError(str(exc)) from exc
        mapped = p.dataflow_at(lf.chiplet)
        if lf.dataflow is not mapped:
            raise ScheduleError(
                f"leaf on chiplet {tuple(lf.chiplet)} uses dataflow {lf.dataflow} "
                f"but the package maps that chiplet to {mapped}"
            )
    if expected_start != len(g.layers):
        raise ScheduleError(
            f"leaves cover layers [0, {expected_start}) but the graph has {len(g.layers)} layers"
        )

    def check_disjoint(tree: ScheduleTree) -> set[Coord]:
        if isinstance(tree, StageLeaf):
            return {tree.chiplet}
        child_sets = [check_disjoint(c) for c in tree.children]
        if tree.op is CompositionOp.PIPELINED:
            for (i, a), (j, b) in itertools.combinations(enumerate(child_sets), 2):
                shared = a & b
                if shared:
                    raise ScheduleError(
                        f"pipelined children {i} and {j} share chiplet(s) "
                        f"{sorted(tuple(c) for c in shared)}; pipelined stages need disjoint chiplets"
                    )
        return set().union(*child_sets)

    check_disjoint(s.tree)


@dataclass(frozen=True)
class _NodeEval:
    e2e: float
    interval: float
    stages: tuple[StageCost, ...]
    transfers: tuple[TransferCost, ...]


def _eval_leaf(lf: StageLeaf, g: ModelGraph, p: PackageSpec) -> _NodeEval:
    chip = p.chiplet_at(lf.chiplet)
    hops = p.memory_access_hops(lf.chiplet)
    costs = [
        layer_cost(g.layers[i], chip, lf.dataflow, p.dram, p.nop, hops)
        for i in range(lf.start, lf.end)
    ]
    latency = sum(c.latency_s for c in costs)
    stage = StageCost(
        start=lf.start,
        end=lf.end,
        chiplet=lf.chiplet,
        dataflow=lf.dataflow,
        latency_s=latency,
        energy_j=sum(c.e_total_j for c in costs),
        cycles=sum(c.cycles for c in costs),
        dram_bytes=sum(c.dram_bytes for c in costs),
        nop_bytes=sum(c.nop_bytes for c in costs),
        e_mac_j=sum(c.e_mac_j for c in costs),
        e_buf_j=sum(c.e_buf_j for c in costs),
        e_dram_j=sum(c.e_dram_j for c in costs),
        e_nop_j=sum(c.e_nop_j for c in costs),
    )
    return _NodeEval(e2e=latency, interval=latency, stages=(stage,), transfers=())


def _eval_node(tree: ScheduleTree, g: ModelGraph, p: PackageSpec) -> _NodeEval:
    if isinstance(tree, StageLeaf):
        return _eval_leaf(tree, g, p)

    evals = [_eval_node(child, g, p) for child in tree.children]
    if tree.op is CompositionOp.SEQUENTIAL:
        e2e = sum(ev.e2e for ev in evals)
        return _NodeEval(
            e2e=e2e,
            interval=e2e,
            stages=tuple(itertools.chain.from_iterable(ev.stages for ev in evals)),
            transfers=tuple(itertools.chain.from_iterable(ev.transfers for ev in evals)),
        )

    # Pipelined: activations cross each child boundary over the NoP.
    stages: list[StageCost] = []
    transfers: list[TransferCost] = []
    interval = 0.0
    for i, ev in enumerate(evals):
        stages.extend(ev.stages)
        transfers.extend(ev.transfers)
        rate_limit = ev.interval
        if i > 0:
            src = iter_leaves(tree.children[i - 1])[-1]
            dst = iter_leaves(tree.children[i])[0]
            boundary = dst.start
            n_bytes = activation_bytes_at_cut(g, boundary)
            hops = p.hop_count(src.chiplet, dst.chiplet)
            lat, energy = nop_transfer(n_bytes, hops, p.nop)
            transfers.append(
                TransferCost(boundary=boundary, src=src.chiplet, dst=dst.chiplet,
                             n_bytes=n_bytes, latency_s=lat, energy_j=energy)
            )
            rate_limit = max(rate_limit, lat)
        interval = max(interval, rate_limit)
    boundary_lat = sum(t.latency_s for t in transfers) - sum(
        t.latency_s for ev in evals for t in ev.transfers
    )
    e2e = sum(ev.e2e for ev in evals) + boundary_lat
    return _NodeEval(e2e=e2e, interval=interval, stages=tuple(stages), transfers=tuple(transfers))


def evaluate_schedule(s: Schedule, g: ModelGraph, p: PackageSpec) -> CostReport:
    """Cost a schedule against a graph and package; validates first."""
    validate_graph(g)
    validate_schedule(s, g, p)
    ev = _eval_node(s.tree, g, p)
    energy = sum(st.energy_j for st in ev.stages) + sum(t.energy_j for t in ev.transfers)
    edp = energy * ev.e2e
    return CostReport(
        e2e_latency_s=ev.e2e,
        interval_s=ev.interval,
        throughput_out_s=g.batch / ev.interval,
        energy_j=energy,
        edp=edp,
        efficiency=1.0 / edp,
        stages=ev.stages,
        transfers=ev.transfers,
    )


@dataclass(frozen=True)
class LayerAssignment:
    layer_id: int
    chiplet: Coord
    dataflow: Dataflow
    cost: LayerCost
    fallback: bool = False  # favored dataflow had no matching chiplet


def stage1_assign(g: ModelGraph, p: PackageSpec) -> list[LayerAssignment]:
    """Per-layer chiplet assignment by favored dataflow.

    The dataflow preference is evaluated on the row-major-first chiplet at
    zero memory distance (dataflow choice, not placement); the winning layer
    is then placed on the matching chiplet with minimal memory access hops,
    row-major order breaking ties. If no chiplet offers the favored dataflow
    the best available one is used and the assignment is flagged.
    """
    validate_graph(g)
    coords = p.coords()
    ref_chip = p.chiplet_at(coords[0])
    available = {p.dataflow_at(c) for c in coords}
    out: list[LayerAssignment] = []
    for layer in g.layers:
        fav, _ = favored_dataflow(layer, ref_chip, p.dram, p.nop, access_hops=0)
        fallback = fav not in available
        if fallback:
            fav = min(
                available,
                key=lambda df: (layer_cost(layer, ref_chip, df, p.dram, p.nop, 0).edp, df.value),
            )
        chosen = min(
            (c for c in coords if p.dataflow_at(c) is fav),
            key=lambda c: (p.memory_access_hops(c), c),
        )
        cost = layer_cost(
            layer, p.chiplet_at(chosen), fav, p.dram, p.nop, p.memory_access_hops(chosen)
        )
        out.append(LayerAssignment(layer.id, chosen, fav, cost, fallback))
    return out


def enumerate_cuts(n_layers: int, max_stages: int) -> list[list[tuple[int, int]]]:
    """All splits of [0, n_layers) into 1..max_stages contiguous nonempty ranges."""
    if n_layers < 1 or max_stages < 1:
        raise ValueError("n_layers and max_stages must both be >= 1")
    partitions: list[list[tuple[int, int]]] = []
    for n_stages in range(1, min(max_stages, n_layers) + 1):
        for cuts in itertools.combinations(range(1, n_layers), n_stages - 1):
            bounds = (0, *cuts, n_layers)
            partitions.append([(bounds[i], bounds[i + 1]) for i in range(n_stages)])
    return partitions


def balanced_cut(
    g: ModelGraph,
    p: PackageSpec,
    k: int,
    stage_coords: tuple[Coord, ...] | None = None,
) -> list[tuple[int, int]]:
    """The k-stage partition minimizing the maximum stage latency.

    Ties are broken by the smallest spread (max - min) of per-stage EDP, then
    by earliest cut indices. When ``stage_coords`` is given, stage i's layers
    are costed on that chiplet (its mapped dataflow and memory distance);
    otherwise each layer is costed at its stage-1 favored assignment.
    """
    validate_graph(g)
    n = len(g.layers)
    if k > n:
        raise ValueError(f"cannot split {n} layers into {k} stages")
    if stage_coords is not None and len(stage_coords) != k:
        raise ValueError(f"stage_coords must have {k} entries, got {len(stage_coords)}")

    if stage_coords is None:
        per_layer = [(a.cost.latency_s, a.cost.e_total_j) for a in stage1_assign(g, p)]

        def layer_metrics(stage_idx: int, layer_idx: int) -> tuple[float, float]:
            return per_layer[layer_idx]

    else:
        cache: dict[tuple[Coord, int], tuple[float, float]] = {}

        def layer_metrics(stage_idx: int, layer_idx: int) -> tuple[float, float]:
            coord = Coord(*stage_coords[stage_idx])
            key = (coord, layer_idx)
            if key not in cache:
                cost = layer_cost(
                    g.layers[layer_idx],
                    p.chiplet_at(coord),
                    p.dataflow_at(coord),
                    p.dram,
                    p.nop,
                    p.memory_access_hops(coord),
                )
                cache[key] = (cost.latency_s, cost.e_total_j)
            return cache[key]

    best: list[tuple[int, int]] | None = None
    best_key: tuple[float, float, tuple[int, ...]] | None = None
    for partition in enumerate_cuts(n, k):
        if len(partition) != k:
            continue
        latencies = []
        edps = []
        for stage_idx, (start, end) in enumerate(partition):
            metrics = [layer_metrics(stage_idx, i) for i in range(start, end)]
            lat = sum(m[0] for m in metrics)
            energy = sum(m[1] for m in metrics)
            latencies.append(lat)
            edps.append(energy * lat)
        key = (max(latencies), max(edps) - min(edps), tuple(r[0] for r in partition))
        if best_key is None or key < best_key:
            best, best_key = partition, key
    assert best is not None
    return best


def _schedule_from_stages(partition: list[tuple[int, int]], coords: tuple[Coord, ...],
                          p: PackageSpec) -> Schedule:
    label = "-".join(p.dataflow_at(c).value for c in coords)
    leaves = [leaf(start, end, c, p.dataflow_at(c)) for (start, end), c in zip(partition, coords)]
    tree: ScheduleTree = leaves[0] if len(leaves) == 1 else pipe(*leaves)
    return Schedule(tree=tree, label=label)


def _objective_value(report: CostReport, objective: str) -> float:
    if objective == "throughput":
        return report.throughput_out_s
    if objective == "efficiency":
        return report.efficiency
    raise ConfigError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")


class _CandidateScanner:
    """Fast objective evaluation over the flat-pipeline candidate space.

    Reproduces evaluate_schedule's arithmetic bit for bit (same per-layer
    costs, same summation order, same max/quotient structure) while skipping
    schedule-object construction and validation, so the argmax over candidates
    is exactly the argmax under full evaluation.
    """

    def __init__(self, g: ModelGraph, p: PackageSpec, allowed_coords: list[Coord] | None):
        self.g = g
        self.p = p
        self.coords = list(allowed_coords) if allowed_coords is not None else p.coords()
        self.entry = {c for c in self.coords if p.memory_access_hops(c) == 0}
        n = len(g.layers)
        self._lat: dict[Coord, list[float]] = {}
        self._en: dict[Coord, list[float]] = {}
        for c in self.coords:
            chip = p.chiplet_at(c)
            df = p.dataflow_at(c)
            hops = p.memory_access_hops(c)
            costs = [layer_cost(g.layers[i], chip, df, p.dram, p.nop, hops) for i in range(n)]
            self._lat[c] = [x.latency_s for x in costs]
            self._en[c] = [x.e_total_j for x in costs]
        self._stage_sums: dict[tuple[Coord, int, int], tuple[float, float]] = {}
        self._xfer: dict[tuple[int, Coord, Coord], tuple[float, float]] = {}

    def stage(self, coord: Coord, start: int, end: int) -> tuple[float, float]:
        key = (coord, start, end)
        if key not in self._stage_sums:
            self._stage_sums[key] = (
                sum(self._lat[coord][i] for i in range(start, end)),
                sum(self._en[coord][i] for i in range(start, end)),
            )
        return self._stage_sums[key]

    def transfer(self, boundary: int, src: Coord, dst: Coord) -> tuple[float, float]:
        key = (boundary, src, dst)
        if key not in self._xfer:
            self._xfer[key] = nop_transfer(
                activation_bytes_at_cut(self.g, boundary), self.p.hop_count(src, dst), self.p.nop
            )
        return self._xfer[key]

    def objective_value(self, partition, assignment, objective: str) -> float:
        stage_lats = []
        stage_ens = []
        xfer_lats = []
        xfer_ens = []
        interval = 0.0
        for idx, ((start, end), coord) in enumerate(zip(partition, assignment)):
            lat, en = self.stage(coord, start, end)
            stage_lats.append(lat)
            stage_ens.append(en)
            rate_limit = lat
            if idx > 0:
                t_lat, t_en = self.transfer(start, assignment[idx - 1], coord)
                xfer_lats.append(t_lat)
                xfer_ens.append(t_en)
                rate_limit = max(rate_limit, t_lat)
            interval = max(interval, rate_limit)
        if objective == "throughput":
            return self.g.batch / interval
        e2e = sum(stage_lats) + sum(xfer_lats)
        energy = sum(stage_ens) + sum(xfer_ens)
        return 1.0 / (energy * e2e)


def _scan_candidates(
    g: ModelGraph,
    p: PackageSpec,
    objective: str,
    max_stages: int,
    hop_limit: int | None,
    allowed_coords: list[Coord] | None,
):
    """Yield (partition, assignment, value, tiebreak_key) over the candidate space."""
    scanner = _CandidateScanner(g, p, allowed_coords)
    n = len(g.layers)
    for partition in enumerate_cuts(n, max_stages):
        n_stages = len(partition)
        if n_stages > len(scanner.coords):
            continue
        for assignment in itertools.permutations(scanner.coords, n_stages):
            if assignment[0] not in scanner.entry:
                continue
            if hop_limit is not None and any(
                p.hop_count(a, b) > hop_limit for a, b in zip(assignment, assignment[1:])
            ):
                continue
            value = scanner.objective_value(partition, assignment, objective)
            label = "-".join(p.dataflow_at(c).value for c in assignment)
            key = (label, tuple(tuple(c) for c in assignment),
                   tuple(r[0] for r in partition))
            yield partition, assignment, value, key


def _pick_best(g: ModelGraph, p: PackageSpec, candidates) -> tuple[Schedule, CostReport]:
    best = None
    for partition, assignment, value, key in candidates:
        if best is None or value > best[2] or (value == best[2] and key < best[3]):
            best = (partition, assignment, value, key)
    if best is None:
        raise SearchSpaceError(
            "internal error: empty schedule candidate set (no chiplet adjacent to a memory channel?)"
        )
    schedule = _schedule_from_stages(best[0], best[1], p)
    return schedule, evaluate_schedule(schedule, g, p)


def search(
    g: ModelGraph,
    p: PackageSpec,
    objective: str = "throughput",
    max_stages: int = 2,
    allowed_coords: list[Coord] | None = None,
) -> tuple[Schedule, CostReport]:
    """Best schedule under the placement heuristics, by the given objective.

    Deterministic: exact ties resolve by label, then lexicographic chiplet
    order, then earliest cut indices.
    """
    validate_graph(g)
    if objective not in OBJECTIVES:
        raise ConfigError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    return _pick_best(g, p, _scan_candidates(g, p, objective, max_stages, 2, allowed_coords))


def brute_force_oracle(
    g: ModelGraph,
    p: PackageSpec,
    objective: str = "throughput",
    max_stages: int = 2,
    allowed_coords: list[Coord] | None = None,
) -> tuple[Schedule, CostReport]:
    """Exhaustive scan without the stage-adjacency pruning (test oracle)."""
    if len(g.layers) > 12 or p.rows * p.cols > 4:
        raise SearchSpaceError(
            f"oracle guard: needs <= 12 layers and <= 4 chiplets, "
            f"got {len(g.layers)} layers on {p.rows}x{p.cols}"
        )
    if objective not in OBJECTIVES:
        raise ConfigError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    validate_graph(g)
    return _pick_best(g, p, _scan_candidates(g, p, objective, max_stages, None, allowed_coords))


@dataclass(frozen=True)
class CoScheduleResult:
    model_name: str
    chiplets: tuple[Coord, ...]
    schedule: Schedule
    report: CostReport


def co_schedule(
    models: list[ModelGraph],
    p: PackageSpec,
    objective: str = "throughput",
    max_stages: int = 2,
) -> list[CoScheduleResult]:
    """Schedule several models side by side on disjoint column blocks.

    Every split of the mesh columns into contiguous per-model blocks is tried;
    each model is scheduled independently inside its block and the split with
    the best worst-model objective (max-min fairness) wins. Ties go to the
    earliest split.
    """
    if not models:
        raise ConfigError("co_schedule needs at least one model")
    if len(models) > p.rows * p.cols:
        raise ConfigError(f"{len(models)} models exceed the {p.rows * p.cols} available chiplets")
    if len(models) > p.cols:
        raise ConfigError(
            f"{len(models)} models exceed the {p.cols} mesh columns available for disjoint blocks"
        )

    best: tuple[float, tuple[int, ...], list[CoScheduleResult]] | None = None
    for split in enumerate_cuts(p.cols, len(models)):
        if len(split) != len(models):
            continue
        results: list[CoScheduleResult] = []
        try:
            for g, (col_start, col_end) in zip(models, split):
                block = [c for c in p.coords() if col_start <= c.col < col_end]
                schedule, report = search(g, p, objective, max_stages, allowed_coords=block)
                results.append(CoScheduleResult(g.name, tuple(block), schedule, report))
        except SearchSpaceError:
            continue
        worst = min(_objective_value(r.report, objective) for r in results)
        split_key = tuple(r[0] for r in split)
        if best is None or worst > best[0] or (worst == best[0] and split_key < best[1]):
            best = (worst, split_key, results)
    if best is None:
        raise SearchSpaceError("no feasible column split: some block has no memory-adjacent chiplet")
    return best[2]


# --- serialization ---------------------------------------------------------


def _tree_to_dict(tree: ScheduleTree) -> dict:
    if isinstance(tree, StageLeaf):
        return {
            "type": "leaf",
            "layers": [tree.start, tree.end],
            "chiplet": [tree.chiplet.row, tree.chiplet.col],
            "dataflow": tree.dataflow.value,
        }
    return {"type": tree.op.value, "children": [_tree_to_dict(c) for c in tree.children]}


def _tree_from_dict(data: dict) -> ScheduleTree:
    kind = data.get("type")
    if kind == "leaf":
        start, end = data["layers"]
        row, col = data["chiplet"]
        return StageLeaf(int(start), int(end), Coord(int(row), int(col)), Dataflow(data["dataflow"]))
    if kind in ("seq", "pipe"):
        children = tuple(_tree_from_dict(c) for c in data["children"])
        return Composite(CompositionOp(kind), children)
    raise ConfigError(f"unknown schedule node type {kind!r}")


def schedule_to_dict(s: Schedule) -> dict:
    return {"label": s.label, "tree": _tree_to_dict(s.tree)}


def schedule_from_dict(data: dict) -> Schedule:
    try:
        return Schedule(tree=_tree_from_dict(data["tree"]), label=str(data["label"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed schedule: {exc}") from exc


def stage_cost_to_dict(st: StageCost) -> dict:
    return {
        "layers": [st.start, st.end],
        "chiplet": [st.chiplet.row, st.chiplet.col],
        "dataflow": st.dataflow.value,
        "latency_s": st.latency_s,
        "energy_j": st.energy_j,
        "cycles": st.cycles,
        "dram_bytes": st.dram_bytes,
        "nop_bytes": st.nop_bytes,
        "e_mac_j": st.e_mac_j,
        "e_buf_j": st.e_buf_j,
        "e_dram_j": st.e_dram_j,
        "e_nop_j": st.e_nop_j,
    }


def transfer_cost_to_dict(t: TransferCost) -> dict:
    return {
        "boundary": t.boundary,
        "src": [t.src.row, t.src.col],
        "dst": [t.dst.row, t.dst.col],
        "bytes": t.n_bytes,
        "latency_s": t.latency_s,
        "energy_j": t.energy_j,
    }


def report_to_dict(r: CostReport) -> dict:
    return {
        "e2e_latency_s": r.e2e_latency_s,
        "interval_s": r.interval_s,
        "throughput_out_s": r.throughput_out_s,
        "energy_j": r.energy_j,
        "edp": r.edp,
        "efficiency": r.efficiency,
        "stages": [stage_cost_to_dict(s) for s in r.stages],
        "transfers": [transfer_cost_to_dict(t) for t in r.transfers],
    }


def report_from_dict(data: dict) -> CostReport:
    stages = tuple(
        StageCost(
            start=int(s["layers"][0]),
            end=int(s["layers"][1]),
            chiplet=Coord(*s["chiplet"]),
            dataflow=Dataflow(s["dataflow"]),
            latency_s=float(s["latency_s"]),
            energy_j=float(s["energy_j"]),
            cycles=int(s["cycles"]),
            dram_bytes=int(s["dram_bytes"]),
            nop_bytes=int(s["nop_bytes"]),
            e_mac_j=float(s["e_mac_j"]),
            e_buf_j=float(s["e_buf_j"]),
            e_dram_j=float(s["e_dram_j"]),
            e_nop_j=float(s["e_nop_j"]),
        )
        for s in data["stages"]
    )
    transfers = tuple(
        TransferCost(
            boundary=int(t["boundary"]),
            src=Coord(*t["src"]),
            dst=Coord(*t["dst"]),
            n_bytes=int(t["bytes"]),
            latency_s=float(t["latency_s"]),
            energy_j=float(t["energy_j"]),
        )
        for t in data["transfers"]
    )
    return CostReport(
        e2e_latency_s=float(data["e2e_latency_s"]),
        interval_s=float(data["interval_s"]),
        throughput_out_s=float(data["throughput_out_s"]),
        energy_j=float(data["energy_j"]),
        edp=float(data["edp"]),
        efficiency=float(data["efficiency"]),
        stages=stages,
        transfers=transfers,
    )
