import itertools
from collections import deque

import pytest

from chipletsched import (
    ChipletSpec,
    Coord,
    Dataflow,
    DramParams,
    NoPParams,
    PackageSpec,
    dram_transfer,
    nop_transfer,
)


def bfs_hops(rows, cols, src, dst):
    """Shortest-path hop count on the mesh graph."""
    seen = {src: 0}
    frontier = deque([src])
    while frontier:
        node = frontier.popleft()
        if node == dst:
            return seen[node]
        r, c = node
        for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= nr < rows and 0 <= nc < cols and (nr, nc) not in seen:
                seen[(nr, nc)] = seen[node] + 1
                frontier.append((nr, nc))
    raise AssertionError("unreachable node")


class TestHopCount:
    def test_identity(self, default_package):
        assert default_package.hop_count(Coord(0, 0), Coord(0, 0)) == 0

    def test_diagonal(self, default_package):
        assert default_package.hop_count(Coord(0, 0), Coord(1, 1)) == 2

    def test_matches_bfs_on_4x4(self):
        p = PackageSpec(rows=4, cols=4)
        for a, b in itertools.product(p.coords(), repeat=2):
            assert p.hop_count(a, b) == bfs_hops(4, 4, tuple(a), tuple(b))

    def test_metric_properties(self):
        p = PackageSpec(rows=4, cols=4)
        coords = p.coords()
        for a, b in itertools.product(coords, repeat=2):
            d = p.hop_count(a, b)
            assert d == p.hop_count(b, a)
            assert (d == 0) == (a == b)
        for a, b, c in itertools.product(coords[:8], repeat=3):
            assert p.hop_count(a, c) <= p.hop_count(a, b) + p.hop_count(b, c)

    def test_out_of_bounds_rejected(self, default_package):
        with pytest.raises(IndexError):
            default_package.hop_count(Coord(0, 0), Coord(2, 0))


class TestMemoryAccessHops:
    def test_2x2_all_zero(self, default_package):
        assert all(default_package.memory_access_hops(c) == 0 for c in default_package.coords())

    def test_middle_column(self):
        p = PackageSpec(rows=1, cols=3)
        assert p.memory_access_hops(Coord(0, 1)) == 1

    def test_left_edge_always_zero(self):
        for cols in (1, 2, 5):
            p = PackageSpec(rows=3, cols=cols)
            for r in range(3):
                assert p.memory_access_hops(Coord(r, 0)) == 0

    def test_out_of_bounds_rejected(self, default_package):
        with pytest.raises(IndexError):
            default_package.memory_access_hops(Coord(0, 5))


class TestNopTransfer:
    def setup_method(self):
        self.nop = NoPParams()

    def test_zero_payload(self):
        latency, energy = nop_transfer(0, 3, self.nop)
        assert latency == pytest.approx(105e-9, rel=1e-12)
        assert energy == 0.0

    def test_one_byte_one_hop(self):
        latency, energy = nop_transfer(1, 1, self.nop)
        assert latency == pytest.approx(35.01e-9, rel=1e-12)
        assert energy == pytest.approx(16.32e-12, rel=1e-12)

    def test_one_megabyte_two_hops(self):
        latency, energy = nop_transfer(10**6, 2, self.nop)
        assert latency == pytest.approx(10.07e-6, rel=1e-12)
        assert energy == pytest.approx(16.32e-6, rel=1e-12)

    def test_monotonicity(self):
        sizes = [0, 1, 100, 10**6]
        for hops in (0, 1, 4):
            lats = [nop_transfer(n, hops, self.nop) for n in sizes]
            assert all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(lats, lats[1:]))
        for n_bytes in (0, 64, 10**6):
            lats = [nop_transfer(n_bytes, h, self.nop)[0] for h in range(5)]
            assert all(a <= b for a, b in zip(lats, lats[1:]))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            nop_transfer(-1, 0, self.nop)


class TestDramTransfer:
    def test_64_bytes_direct(self, default_package):
        latency, energy = dram_transfer(64, 0, default_package)
        assert latency == pytest.approx(201e-9, rel=1e-12)
        assert energy == pytest.approx(7577.6e-12, rel=1e-12)

    def test_zero_bytes_latency_floor(self, default_package):
        latency, energy = dram_transfer(0, 0, default_package)
        assert latency == default_package.dram.lat_s
        assert energy == 0.0

    def test_one_hop_adds_nop_time_and_energy(self, default_package):
        latency, energy = dram_transfer(64, 1, default_package)
        assert latency == pytest.approx(236e-9, rel=1e-12)
        assert energy == pytest.approx(7577.6e-12 + 64 * 8 * 2.04e-12, rel=1e-12)


class TestPackageSpec:
    def test_default_layout(self, default_package):
        p = default_package
        assert (p.rows, p.cols) == (2, 2)
        assert p.dataflow_at(Coord(0, 0)) is Dataflow.OS
        assert p.dataflow_at(Coord(1, 0)) is Dataflow.OS
        assert p.dataflow_at(Coord(0, 1)) is Dataflow.WS
        assert p.dataflow_at(Coord(1, 1)) is Dataflow.WS
        chip = p.chiplet_at(Coord(0, 0))
        assert chip.pe_count == 256
        assert chip.freq_hz == 500e6
        assert chip.buffer_bytes == 10 * 2**20

    def test_dataflow_map_must_cover_mesh(self):
        with pytest.raises(ValueError, match="dataflow_map"):
            PackageSpec(rows=2, cols=2, dataflow_map=((Dataflow.OS,),))

    def test_param_validation(self):
        with pytest.raises(ValueError):
            NoPParams(hop_lat_s=0)
        with pytest.raises(ValueError):
            DramParams(bw_bytes_s=-1)
        with pytest.raises(ValueError):
            ChipletSpec(pe_count=0)
        with pytest.raises(ValueError):
            PackageSpec(rows=0, cols=2)
