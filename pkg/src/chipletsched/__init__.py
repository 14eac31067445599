"""Analytical simulator and scheduler for heterogeneous chiplet MCM AI accelerators.

Builds GEMM-chain workloads, costs them on a mesh of dataflow-specialized
accelerator chiplets (output- or weight-stationary), and explores inter-layer
pipeline schedules, reporting throughput and 1/EDP efficiency.
"""

from .chiplet_cost import (
    ChipletSpec,
    Dataflow,
    LayerCost,
    favored_dataflow,
    gemm_cycles,
    gemm_dram_traffic,
    layer_cost,
)
from .errors import (
    ChipletSchedError,
    ConfigError,
    GraphError,
    ScheduleError,
    SearchSpaceError,
    ShapeError,
)
from .mcm import Coord, DramParams, NoPParams, PackageSpec, dram_transfer, nop_transfer
from .scheduler import (
    Composite,
    CompositionOp,
    CoScheduleResult,
    CostReport,
    LayerAssignment,
    Schedule,
    StageCost,
    StageLeaf,
    TransferCost,
    balanced_cut,
    brute_force_oracle,
    co_schedule,
    enumerate_cuts,
    evaluate_schedule,
    leaf,
    pipe,
    schedule_from_dict,
    schedule_to_dict,
    search,
    seq,
    stage1_assign,
    validate_schedule,
)
from .workload import (
    ConvShape,
    GemmShape,
    Layer,
    ModelGraph,
    activation_bytes_at_cut,
    build_gpt2_block,
    build_resnet50,
    build_workload,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    lower_conv_to_gemm,
    save_graph,
    validate_graph,
)

__version__ = "0.1.0"
