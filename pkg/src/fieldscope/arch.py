"""Architecture model: linear chains of convolution and pooling layers.

The input image is the implicit layer 0 and is never represented as a
LayerSpec; explicit layers are numbered 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

AXIS_NAMES = ("height", "width")


class LayerKind(Enum):
    CONV = "conv"
    POOL = "pool"


class Direction(Enum):
    CONV = "conv"
    DECONV = "deconv"


@dataclass(frozen=True)
class LayerSpec:
    """One layer of the chain.

    filter and stride are (height, width) pairs in pixels. channels_out is
    reporting-only metadata (depth multiplier); it never enters any field
    computation.
    """

    index: int
    kind: LayerKind
    filter: tuple[int, int]
    stride: tuple[int, int]
    channels_out: int | None = None


@dataclass(frozen=True)
class NetworkSpec:
    """Ordered layer chain plus metadata."""

    name: str
    direction: Direction
    layers: tuple[LayerSpec, ...]

    def __len__(self) -> int:
        return len(self.layers)

    def layer(self, k: int) -> LayerSpec:
        """Return layer k (1-based)."""
        if not 1 <= k <= len(self.layers):
            raise LayerRangeError(f"layer index {k} out of range 1..{len(self.layers)}")
        return self.layers[k - 1]


@dataclass(frozen=True)
class ValidationReport:
    """Findings from validate(): (layer index, message) pairs."""

    errors: tuple[tuple[int, str], ...]
    warnings: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.errors


class LayerRangeError(IndexError):
    """A layer index fell outside the chain."""


class InvalidNetworkError(ValueError):
    """A calculator was handed a network that fails validation."""

    def __init__(self, report: ValidationReport):
        self.report = report
        detail = "; ".join(f"layer {idx}: {msg}" for idx, msg in report.errors)
        super().__init__(f"invalid network: {detail}")


def validate(network: NetworkSpec) -> ValidationReport:
    """Check every structural invariant; all findings land in the report.

    Coverage gaps (stride exceeding filter on an axis) are warnings, not
    errors: extent arithmetic stays well defined, the influenced pixel set
    merely has holes.
    """
    errors: list[tuple[int, str]] = []
    warnings: list[tuple[int, str]] = []
    if not network.layers:
        errors.append((0, "network has no layers"))
    for position, layer in enumerate(network.layers, start=1):
        if layer.index != position:
            errors.append(
                (layer.index, f"layer indices must run 1..n without gaps (expected {position})")
            )
        for axis, axis_name in enumerate(AXIS_NAMES):
            if layer.filter[axis] < 1:
                errors.append(
                    (layer.index, f"{axis_name} filter must be >= 1 (got {layer.filter[axis]})")
                )
            if layer.stride[axis] < 1:
                errors.append(
                    (layer.index, f"{axis_name} stride must be >= 1 (got {layer.stride[axis]})")
                )
        if layer.channels_out is not None and layer.channels_out < 1:
            errors.append(
                (layer.index, f"channels_out must be >= 1 (got {layer.channels_out})")
            )
        for axis, axis_name in enumerate(AXIS_NAMES):
            if layer.filter[axis] >= 1 and layer.stride[axis] > layer.filter[axis]:
                warnings.append(
                    (layer.index, f"stride exceeds filter on {axis_name} axis: coverage gaps")
                )
    return ValidationReport(tuple(errors), tuple(warnings))


def require_valid(network: NetworkSpec) -> None:
    """Raise InvalidNetworkError unless validate() reports no errors."""
    report = validate(network)
    if not report.ok:
        raise InvalidNetworkError(report)
