import pytest

from chipletsched import Dataflow, GemmShape, Layer, ModelGraph, PackageSpec


@pytest.fixture
def default_package() -> PackageSpec:
    """2x2 mesh, column 0 os / column 1 ws, stock link/memory constants."""
    return PackageSpec()


def make_chain(shapes, name="toy", batch=1, elem_bytes=1) -> ModelGraph:
    """Build a synthetic GEMM chain from (m, k, n) triples."""
    layers = tuple(
        Layer(i, f"layer{i}", GemmShape(m, k, n, elem_bytes), "gemm")
        for i, (m, k, n) in enumerate(shapes)
    )
    return ModelGraph(name=name, layers=layers, batch=batch)
