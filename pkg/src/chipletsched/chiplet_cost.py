"""Closed-form intra-chiplet cost model for GEMM layers.

Models one accelerator chiplet as a pool of ``pe_count`` MAC units fed from a
single global buffer, under one of two dataflows:

* output-stationary (os): a tile of m*n output elements is pinned to the PE
  array and accumulates over the full k reduction; cycles =
  ceil(m*n / pe_count) * k. Outputs are written to DRAM once.
* weight-stationary (ws): a tile of k*n weights is pinned and the m activation
  rows stream through; cycles = ceil(k*n / pe_count) * m. The array holds only
  Tk of the k reduction at a time (square-ish tile Tn = min(n, floor(sqrt(P))),
  Tk = P // Tn), so partial sums spill: outputs are written ceil(k/Tk) times
  and read back ceil(k/Tk) - 1 times.

DRAM traffic uses a blocked re-read model shared by both dataflows: when the
whole (A, W, O) footprint fits in the global buffer each operand moves once;
otherwise A is re-read once per column block and W once per row block, with
square blocking Bm = Bn = max(1, floor(sqrt(buffer_bytes / (2*k*elem_bytes)))).

Per-layer latency is a roofline: max(compute time, memory time), assuming
double-buffered overlap of compute with DRAM traffic.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .workload import GemmShape, Layer

if TYPE_CHECKING:  # runtime import would be circular; mcm imports this module
    from .mcm import DramParams, NoPParams


class Dataflow(enum.Enum):
    OS = "os"
    WS = "ws"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ChipletSpec:
    """Compute/buffer/energy description of one accelerator chiplet."""

    pe_count: int = 256
    freq_hz: float = 500e6
    buffer_bytes: int = 10 * 2**20
    e_mac_j: float = 1.0e-12
    e_buf_byte_j: float = 1.2e-12

    def __post_init__(self):
        if self.pe_count < 1:
            raise ValueError(f"pe_count must be >= 1, got {self.pe_count}")
        if self.freq_hz <= 0:
            raise ValueError(f"freq_hz must be > 0, got {self.freq_hz}")
        if self.buffer_bytes <= 0:
            raise ValueError(f"buffer_bytes must be > 0, got {self.buffer_bytes}")
        if self.e_mac_j < 0 or self.e_buf_byte_j < 0:
            raise ValueError("per-MAC and per-byte energies must be >= 0")


@dataclass(frozen=True)
class LayerCost:
    """Per-layer cost decomposition on one chiplet."""

    cycles: int
    compute_s: float
    dram_bytes: int
    nop_bytes: int
    latency_s: float
    e_mac_j: float
    e_buf_j: float
    e_dram_j: float
    e_nop_j: float

    @property
    def e_total_j(self) -> float:
        return self.e_mac_j + self.e_buf_j + self.e_dram_j + self.e_nop_j

    @property
    def edp(self) -> float:
        return self.e_total_j * self.latency_s


def gemm_cycles(s: GemmShape, pe_count: int, df: Dataflow) -> int:
    if df is Dataflow.OS:
        return math.ceil(s.m * s.n / pe_count) * s.k
    return math.ceil(s.k * s.n / pe_count) * s.m


def _array_tile_kn(n: int, pe_count: int) -> tuple[int, int]:
    """(Tk, Tn) array tile for the ws dataflow."""
    tn = min(n, max(1, math.isqrt(pe_count)))
    tk = max(1, pe_count // tn)
    return tk, tn


def gemm_dram_traffic(
    s: GemmShape, pe_count: int, buffer_bytes: int, df: Dataflow
) -> tuple[int, int, int, int]:
    """Off-chip traffic in bytes as (activations, weights, outputs, total)."""
    footprint = (s.m * s.k + s.k * s.n + s.m * s.n) * s.elem_bytes
    if footprint <= buffer_bytes:
        reread_a = reread_w = 1
    else:
        block = max(1, math.isqrt(buffer_bytes // (2 * s.k * s.elem_bytes)))
        reread_a = math.ceil(s.n / block)
        reread_w = math.ceil(s.m / block)

    a_bytes = s.m * s.k * reread_a * s.elem_bytes
    w_bytes = s.k * s.n * reread_w * s.elem_bytes
    if df is Dataflow.OS:
        o_bytes = s.m * s.n * s.elem_bytes
    else:
        tk, _ = _array_tile_kn(s.n, pe_count)
        reread_o = math.ceil(s.k / tk)
        o_bytes = (s.m * s.n * reread_o + s.m * s.n * (reread_o - 1)) * s.elem_bytes
    return a_bytes, w_bytes, o_bytes, a_bytes + w_bytes + o_bytes


@functools.lru_cache(maxsize=1 << 16)
def layer_cost(
    layer: Layer,
    chip: ChipletSpec,
    df: Dataflow,
    dram: "DramParams",
    nop: "NoPParams",
    access_hops: int = 0,
) -> LayerCost:
    """Roofline cost of one layer on one chiplet.

    ``access_hops`` is the mesh distance to the nearest memory interface
    channel; it adds per-hop latency to every DRAM access and, when nonzero,
    routes the layer's DRAM traffic over the package network once (charged at
    the flat per-bit link energy regardless of distance).

    Pure function of immutable inputs; memoized because schedule search
    re-costs the same layer on the same chiplet across many candidates.
    """
    shape = layer.shape
    cycles = gemm_cycles(shape, chip.pe_count, df)
    compute_s = cycles / chip.freq_hz
    _, _, _, dram_bytes = gemm_dram_traffic(shape, chip.pe_count, chip.buffer_bytes, df)
    nop_bytes = dram_bytes * min(access_hops, 1)
    dram_time = dram.lat_s + dram_bytes / dram.bw_bytes_s + access_hops * nop.hop_lat_s
    return LayerCost(
        cycles=cycles,
        compute_s=compute_s,
        dram_bytes=dram_bytes,
        nop_bytes=nop_bytes,
        latency_s=max(compute_s, dram_time),
        e_mac_j=shape.macs * chip.e_mac_j,
        e_buf_j=(dram_bytes + nop_bytes) * chip.e_buf_byte_j,
        e_dram_j=dram_bytes * 8 * dram.e_bit_j,
        e_nop_j=nop_bytes * 8 * nop.e_bit_j,
    )


def favored_dataflow(
    layer: Layer,
    chip: ChipletSpec,
    dram: "DramParams",
    nop: "NoPParams",
    access_hops: int = 0,
) -> tuple[Dataflow, LayerCost]:
    """The EDP-minimizing dataflow for a layer on a given chiplet (tie -> os)."""
    os_cost = layer_cost(layer, chip, Dataflow.OS, dram, nop, access_hops)
    ws_cost = layer_cost(layer, chip, Dataflow.WS, dram, nop, access_hops)
    if ws_cost.edp < os_cost.edp:
        return Dataflow.WS, ws_cost
    return Dataflow.OS, os_cost
