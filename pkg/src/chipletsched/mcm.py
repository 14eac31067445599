"""Multi-chip-module package model: chiplet mesh, NoP links, DRAM channels.

Chiplets sit on a rows x cols mesh with XY routing, so inter-chiplet distance
is the Manhattan hop count. DRAM attaches through memory interface channels on
the left and right package edges: a chiplet's DRAM access distance is its hop
count to the nearest edge column (zero for edge-column chiplets, which is every
chiplet on the default 2x2 layout).

Default link/memory constants (28 nm class):

==================  =============
NoP latency         35 ns/hop
NoP energy          2.04 pJ/bit
NoP bandwidth       100 GB/s/link
DRAM latency        200 ns
DRAM energy         14.8 pJ/bit
DRAM bandwidth      64 GB/s/side
==================  =============

The two side channels are independent (no cross-side contention is modeled)
and NoP energy is charged per bit once per transfer, not per hop; per-hop cost
appears in latency only. Bandwidth units are decimal (1 GB/s = 1e9 bytes/s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .chiplet_cost import ChipletSpec, Dataflow


class Coord(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class NoPParams:
    hop_lat_s: float = 35e-9
    e_bit_j: float = 2.04e-12
    bw_bytes_s: float = 100e9

    def __post_init__(self):
        if self.hop_lat_s <= 0 or self.e_bit_j <= 0 or self.bw_bytes_s <= 0:
            raise ValueError("NoP latency, energy and bandwidth must all be > 0")


@dataclass(frozen=True)
class DramParams:
    lat_s: float = 200e-9
    e_bit_j: float = 14.8e-12
    bw_bytes_s: float = 64e9

    def __post_init__(self):
        if self.lat_s <= 0 or self.e_bit_j <= 0 or self.bw_bytes_s <= 0:
            raise ValueError("DRAM latency, energy and bandwidth must all be > 0")


def _default_dataflow_map(rows: int, cols: int) -> tuple[tuple[Dataflow, ...], ...]:
    """Column-striped heterogeneity: even columns os, odd columns ws."""
    return tuple(
        tuple(Dataflow.OS if c % 2 == 0 else Dataflow.WS for c in range(cols))
        for _ in range(rows)
    )


@dataclass(frozen=True)
class PackageSpec:
    """Immutable description of the whole MCM package."""

    rows: int = 2
    cols: int = 2
    chiplets: tuple[tuple[ChipletSpec, ...], ...] = ()
    dataflow_map: tuple[tuple[Dataflow, ...], ...] = ()
    nop: NoPParams = field(default_factory=NoPParams)
    dram: DramParams = field(default_factory=DramParams)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"mesh must be at least 1x1, got {self.rows}x{self.cols}")
        if not self.chiplets:
            uniform = ChipletSpec()
            object.__setattr__(
                self, "chiplets", tuple(tuple(uniform for _ in range(self.cols)) for _ in range(self.rows))
            )
        if not self.dataflow_map:
            object.__setattr__(self, "dataflow_map", _default_dataflow_map(self.rows, self.cols))
        if len(self.chiplets) != self.rows or any(len(r) != self.cols for r in self.chiplets):
            raise ValueError("chiplet grid does not match the mesh dimensions")
        if len(self.dataflow_map) != self.rows or any(len(r) != self.cols for r in self.dataflow_map):
            raise ValueError("dataflow_map does not cover every mesh coordinate")

    def check_coord(self, c: Coord | tuple[int, int]) -> Coord:
        c = Coord(*c)
        if not (0 <= c.row < self.rows and 0 <= c.col < self.cols):
            raise IndexError(f"coordinate {tuple(c)} outside {self.rows}x{self.cols} mesh")
        return c

    def coords(self) -> list[Coord]:
        """All coordinates in row-major order."""
        return [Coord(r, c) for r in range(self.rows) for c in range(self.cols)]

    def chiplet_at(self, c: Coord | tuple[int, int]) -> ChipletSpec:
        c = self.check_coord(c)
        return self.chiplets[c.row][c.col]

    def dataflow_at(self, c: Coord | tuple[int, int]) -> Dataflow:
        c = self.check_coord(c)
        return self.dataflow_map[c.row][c.col]

    def hop_count(self, a: Coord | tuple[int, int], b: Coord | tuple[int, int]) -> int:
        """XY-routed mesh distance (Manhattan)."""
        a = self.check_coord(a)
        b = self.check_coord(b)
        return abs(a.row - b.row) + abs(a.col - b.col)

    def memory_access_hops(self, c: Coord | tuple[int, int]) -> int:
        """Hops to the nearest memory interface channel (left/right edge)."""
        c = self.check_coord(c)
        return min(c.col, self.cols - 1 - c.col)


def nop_transfer(n_bytes: int, hops: int, nop: NoPParams) -> tuple[float, float]:
    """Latency (s) and energy (J) of moving n_bytes over a NoP route.

    A multi-hop transfer is limited by one link's bandwidth; energy is flat
    per bit regardless of hop count.
    """
    if n_bytes < 0 or hops < 0:
        raise ValueError("byte count and hop count must be >= 0")
    latency = hops * nop.hop_lat_s + n_bytes / nop.bw_bytes_s
    energy = n_bytes * 8 * nop.e_bit_j
    return latency, energy


def dram_transfer(n_bytes: int, access_hops: int, p: PackageSpec) -> tuple[float, float]:
    """Latency (s) and energy (J) of a DRAM access from a chiplet.

    ``access_hops`` mesh hops separate the chiplet from its memory interface
    channel; they add per-hop latency, and when nonzero the payload also pays
    the flat NoP per-bit energy once.
    """
    if n_bytes < 0 or access_hops < 0:
        raise ValueError("byte count and hop count must be >= 0")
    latency = p.dram.lat_s + n_bytes / p.dram.bw_bytes_s + access_hops * p.nop.hop_lat_s
    energy = n_bytes * 8 * p.dram.e_bit_j
    if access_hops > 0:
        energy += n_bytes * 8 * p.nop.e_bit_j
    return latency, energy
