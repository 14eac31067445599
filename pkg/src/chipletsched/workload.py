"""Layer-graph workload representation and built-in model generators.

Every workload is a linear chain of GEMM-lowered layers. A layer is a single
(m, k, n) matrix multiply: convolutions are lowered implicit-GEMM style
(im2col), attention matmuls are folded across heads, and the batch dimension
folds into m. Nonlinearities (softmax, layernorm, ReLU, batchnorm, residual
adds, pooling) carry zero cost: the model is MAC- and traffic-dominated.

Two generators are provided:

* ``build_gpt2_block`` -- one transformer block (QKV projection, attention
  score and context matmuls, output projection, two FFN projections) with
  GPT-2-small defaults.
* ``build_resnet50`` -- ResNet-50 lowered to 54 GEMMs: the 7x7 stem, the 48
  bottleneck convolutions, the 4 projection-shortcut (downsample) 1x1
  convolutions, and the final FC layer.

Graphs are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError, GraphError, ShapeError

LAYER_KINDS = ("gemm", "conv-lowered", "attention-matmul")


@dataclass(frozen=True)
class GemmShape:
    """One GEMM: an (m x k) activation times a (k x n) weight."""

    m: int
    k: int
    n: int
    elem_bytes: int = 1

    def __post_init__(self):
        for name in ("m", "k", "n", "elem_bytes"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ShapeError(f"GemmShape.{name} must be an integer >= 1, got {value!r}")

    @property
    def macs(self) -> int:
        return self.m * self.k * self.n

    @property
    def output_bytes(self) -> int:
        return self.m * self.n * self.elem_bytes


@dataclass(frozen=True)
class Layer:
    id: int
    name: str
    shape: GemmShape
    kind: str = "gemm"

    def __post_init__(self):
        if self.kind not in LAYER_KINDS:
            raise ShapeError(f"layer {self.id}: unknown kind {self.kind!r}")


@dataclass(frozen=True)
class ModelGraph:
    """An ordered chain of layers; layer i feeds layer i+1."""

    name: str
    layers: tuple[Layer, ...]
    batch: int = 1

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.batch < 1:
            raise GraphError([f"graph {self.name!r}: batch must be >= 1, got {self.batch}"])

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def total_macs(self) -> int:
        return sum(layer.shape.macs for layer in self.layers)


@dataclass(frozen=True)
class ConvShape:
    """2D convolution parameters, square kernel/stride/pad per axis."""

    h_in: int
    w_in: int
    c_in: int
    c_out: int
    r: int
    s: int
    stride: int = 1
    pad: int = 0

    def __post_init__(self):
        for name in ("h_in", "w_in", "c_in", "c_out", "r", "s", "stride"):
            if getattr(self, name) < 1:
                raise ShapeError(f"ConvShape.{name} must be >= 1, got {getattr(self, name)}")
        if self.pad < 0:
            raise ShapeError(f"ConvShape.pad must be >= 0, got {self.pad}")

    @property
    def h_out(self) -> int:
        return (self.h_in + 2 * self.pad - self.r) // self.stride + 1

    @property
    def w_out(self) -> int:
        return (self.w_in + 2 * self.pad - self.s) // self.stride + 1


def lower_conv_to_gemm(conv: ConvShape, batch: int = 1, elem_bytes: int = 1) -> GemmShape:
    """Lower a convolution to its implicit-GEMM shape.

    m = batch * h_out * w_out, k = r * s * c_in, n = c_out, with the output
    spatial size following the usual floor((in + 2*pad - kernel)/stride) + 1
    convention. Raises ShapeError when the padded input is smaller than the
    kernel (non-positive output size), naming the offending axis.
    """
    if batch < 1:
        raise ShapeError(f"batch must be >= 1, got {batch}")
    if conv.h_in + 2 * conv.pad < conv.r:
        raise ShapeError(
            f"invalid output spatial size: h_in={conv.h_in} with pad={conv.pad} "
            f"is smaller than kernel r={conv.r}"
        )
    if conv.w_in + 2 * conv.pad < conv.s:
        raise ShapeError(
            f"invalid output spatial size: w_in={conv.w_in} with pad={conv.pad} "
            f"is smaller than kernel s={conv.s}"
        )
    return GemmShape(
        m=batch * conv.h_out * conv.w_out,
        k=conv.r * conv.s * conv.c_in,
        n=conv.c_out,
        elem_bytes=elem_bytes,
    )


def build_gpt2_block(
    d_model: int = 768,
    n_heads: int = 12,
    seq: int = 1024,
    ffn_mult: int = 4,
    elem_bytes: int = 1,
    batch: int = 1,
) -> ModelGraph:
    """One transformer block as a 6-layer GEMM chain.

    The per-head attention matmuls are folded into single layers (n scaled by
    n_heads for the score matmul); heads are independent so their cost is
    additive. Defaults are the GPT-2-small configuration.
    """
    for name, value in (("d_model", d_model), ("n_heads", n_heads), ("seq", seq), ("ffn_mult", ffn_mult)):
        if value < 1:
            raise ConfigError(f"gpt2-block: {name} must be >= 1, got {value}")
    if d_model % n_heads != 0:
        raise ConfigError(f"gpt2-block: d_model={d_model} not divisible by n_heads={n_heads}")
    d_head = d_model // n_heads
    shapes = [
        ("qkv_proj", "gemm", seq, d_model, 3 * d_model),
        ("attn_scores", "attention-matmul", seq, d_head, seq * n_heads),
        ("attn_context", "attention-matmul", seq, seq, d_model),
        ("out_proj", "gemm", seq, d_model, d_model),
        ("ffn_up", "gemm", seq, d_model, ffn_mult * d_model),
        ("ffn_down", "gemm", seq, ffn_mult * d_model, d_model),
    ]
    layers = tuple(
        Layer(i, name, GemmShape(batch * m, k, n, elem_bytes), kind)
        for i, (name, kind, m, k, n) in enumerate(shapes)
    )
    return ModelGraph(name="gpt2-block", layers=layers, batch=batch)


# ResNet-50 bottleneck stages: (block count, mid channels, out channels, first-block stride).
# Strides sit on the 3x3 convolutions (the v1.5 convention the published MAC
# counts correspond to); each downsampling block carries a 1x1 projection
# shortcut that is chained after the block's three main convolutions.
_RESNET50_STAGES = (
    (3, 64, 256, 1),
    (4, 128, 512, 2),
    (6, 256, 1024, 2),
    (3, 512, 2048, 2),
)


def build_resnet50(batch: int = 1, elem_bytes: int = 1) -> ModelGraph:
    """ResNet-50 as a 54-layer GEMM chain (convs via implicit GEMM, plus FC).

    Max/average pooling and residual adds are free; the stem output feeds the
    first stage at the post-maxpool 56x56 resolution.
    """
    if batch < 1:
        raise ShapeError(f"batch must be >= 1, got {batch}")

    convs: list[tuple[str, ConvShape]] = [
        ("stem_conv", ConvShape(224, 224, 3, 64, 7, 7, stride=2, pad=3)),
    ]
    h = 56  # resolution entering stage 1, after the 3x3/2 maxpool
    c_in = 64
    for stage_idx, (n_blocks, c_mid, c_out, stage_stride) in enumerate(_RESNET50_STAGES, start=2):
        for block_idx in range(1, n_blocks + 1):
            stride = stage_stride if block_idx == 1 else 1
            prefix = f"conv{stage_idx}_block{block_idx}"
            convs.append((f"{prefix}_1x1a", ConvShape(h, h, c_in, c_mid, 1, 1)))
            convs.append((f"{prefix}_3x3", ConvShape(h, h, c_mid, c_mid, 3, 3, stride=stride, pad=1)))
            h_next = (h + 2 - 3) // stride + 1
            convs.append((f"{prefix}_1x1b", ConvShape(h_next, h_next, c_mid, c_out, 1, 1)))
            if block_idx == 1:
                convs.append((f"{prefix}_downsample", ConvShape(h, h, c_in, c_out, 1, 1, stride=stride)))
            h = h_next
            c_in = c_out

    layers = [
        Layer(i, name, lower_conv_to_gemm(conv, batch, elem_bytes), "conv-lowered")
        for i, (name, conv) in enumerate(convs)
    ]
    layers.append(Layer(len(layers), "fc", GemmShape(batch, 2048, 1000, elem_bytes), "gemm"))
    return ModelGraph(name="resnet50", layers=tuple(layers), batch=batch)


def activation_bytes_at_cut(g: ModelGraph, cut: int) -> int:
    """Size of the tensor crossing a pipeline cut placed before layer ``cut``.

    That tensor is the output of layer cut-1: m * n * elem_bytes.
    """
    if not 1 <= cut <= len(g.layers) - 1:
        raise IndexError(f"cut must be in [1, {len(g.layers) - 1}], got {cut}")
    return g.layers[cut - 1].shape.output_bytes


def validate_graph(g: ModelGraph) -> None:
    """Check chain invariants; raise GraphError listing every violation.

    Consecutive-layer dimension compatibility is deliberately not checked:
    lowered shapes drop reshape/im2col semantics, so k of layer i+1 need not
    equal m*n of layer i.
    """
    problems: list[str] = []
    if not g.name:
        problems.append("graph name is empty")
    if g.batch < 1:
        problems.append(f"batch must be >= 1, got {g.batch}")
    for position, layer in enumerate(g.layers):
        if layer.id != position:
            problems.append(f"layer at position {position} has id {layer.id} (ids must be dense 0..n-1 in order)")
        if not layer.name:
            problems.append(f"layer {layer.id}: name is empty")
        shape = layer.shape
        for dim in ("m", "k", "n", "elem_bytes"):
            if getattr(shape, dim) < 1:
                problems.append(f"layer {layer.id}: {dim} must be >= 1, got {getattr(shape, dim)}")
    if problems:
        raise GraphError(problems)


def graph_to_dict(g: ModelGraph) -> dict:
    """Serialize to the workload-description JSON structure."""
    elem_sizes = {layer.shape.elem_bytes for layer in g.layers}
    if len(elem_sizes) > 1:
        raise ShapeError(f"graph {g.name!r} mixes element sizes {sorted(elem_sizes)}; cannot serialize")
    elem_bytes = elem_sizes.pop() if elem_sizes else 1
    return {
        "name": g.name,
        "batch": g.batch,
        "elem_bytes": elem_bytes,
        "layers": [
            {"id": layer.id, "name": layer.name, "kind": layer.kind,
             "m": layer.shape.m, "k": layer.shape.k, "n": layer.shape.n}
            for layer in g.layers
        ],
    }


def graph_from_dict(data: dict) -> ModelGraph:
    try:
        elem_bytes = int(data.get("elem_bytes", 1))
        layers = tuple(
            Layer(
                id=int(entry["id"]),
                name=str(entry["name"]),
                shape=GemmShape(int(entry["m"]), int(entry["k"]), int(entry["n"]), elem_bytes),
                kind=str(entry.get("kind", "gemm")),
            )
            for entry in data["layers"]
        )
        graph = ModelGraph(name=str(data["name"]), layers=layers, batch=int(data.get("batch", 1)))
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed workload description: {exc}") from exc
    validate_graph(graph)
    return graph


def save_graph(g: ModelGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_dict(g), fh, indent=2)
        fh.write("\n")


def load_graph(path: str) -> ModelGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


BUILTIN_WORKLOADS = {
    "gpt2-block": build_gpt2_block,
    "resnet50": build_resnet50,
}


def build_workload(name: str, params: dict | None = None) -> ModelGraph:
    """Instantiate a built-in workload by name with keyword overrides."""
    if name not in BUILTIN_WORKLOADS:
        raise ConfigError(f"unknown workload {name!r}; available: {sorted(BUILTIN_WORKLOADS)}")
    try:
        return BUILTIN_WORKLOADS[name](**(params or {}))
    except TypeError as exc:
        raise ConfigError(f"bad parameters for workload {name!r}: {exc}") from exc
