"""Closed-form field arithmetic for layer chains.

Three quantities, all separable per axis and all in integer pixels:

* effective receptive field (ERF): how much of the input image can reach a
  neuron; grows layer by layer as each filter adds (f - 1) placements, each
  worth the product of all lower strides in input pixels.
* receptive field projection: the window a single layer-k neuron casts onto
  each lower layer, unrolled one layer at a time down to the input.
* projective field (PF): how many next-layer neurons one output feeds; a
  floor/ceil set of the next layer's filter-to-stride ratio.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .arch import Direction, NetworkSpec, LayerRangeError, require_valid

Pair = tuple[int, int]

# Values and cumulative strides are capped so runaway chains fail loudly
# instead of producing reports nobody can mean.
MAX_FIELD_VALUE = 2**63 - 1


class FieldOverflowError(OverflowError):
    """A field value or cumulative stride exceeded MAX_FIELD_VALUE."""


@dataclass(frozen=True)
class ErfTrace:
    """Per-layer ERF results from one forward sweep.

    values has n+1 entries (input layer 0 first), increments and
    cumulative_strides have one entry per explicit layer 1..n.
    """

    values: tuple[Pair, ...]
    increments: tuple[Pair, ...]
    cumulative_strides: tuple[Pair, ...]

    @property
    def final(self) -> Pair:
        return self.values[-1]


@dataclass(frozen=True)
class RfProjection:
    """Windows a layer-k neuron casts onto layers k, k-1, .., 0, in that order."""

    target_layer: int
    values: tuple[Pair, ...]

    def at_layer(self, j: int) -> Pair:
        if not 0 <= j <= self.target_layer:
            raise LayerRangeError(f"layer index {j} out of range 0..{self.target_layer}")
        return self.values[self.target_layer - j]


@dataclass(frozen=True)
class PfSizeSet:
    """Distinct (height, width) projective field sizes across one boundary."""

    boundary_layer: int
    sizes: frozenset[Pair]
    uniform: bool


def _cumulative_stride(network: NetworkSpec, k: int, axis: int) -> int:
    """Product of the strides of layers below k; 1 for k = 1."""
    product = 1
    for layer in network.layers[: k - 1]:
        product *= layer.stride[axis]
        if product > MAX_FIELD_VALUE:
            raise FieldOverflowError(
                f"cumulative stride below layer {k} exceeds {MAX_FIELD_VALUE}"
            )
    return product


def _check_layer_index(network: NetworkSpec, k: int, lowest: int = 0) -> None:
    if not lowest <= k <= len(network.layers):
        raise LayerRangeError(
            f"layer index {k} out of range {lowest}..{len(network.layers)}"
        )


def layer_increment(network: NetworkSpec, k: int) -> Pair:
    """Pixels layer k adds to the ERF: (f_k - 1) scaled by the lower strides."""
    require_valid(network)
    _check_layer_index(network, k, lowest=1)
    layer = network.layers[k - 1]
    added = tuple(
        (layer.filter[axis] - 1) * _cumulative_stride(network, k, axis) for axis in (0, 1)
    )
    if max(added) > MAX_FIELD_VALUE:
        raise FieldOverflowError(f"increment exceeds {MAX_FIELD_VALUE} at layer {k}")
    return (added[0], added[1])


def _erf_axis(network: NetworkSpec, axis: int) -> tuple[list[int], list[int], list[int]]:
    values = [1]
    increments = []
    cumulative = []
    jump = 1
    for layer in network.layers:
        cumulative.append(jump)
        grown = values[-1] + (layer.filter[axis] - 1) * jump
        if grown > MAX_FIELD_VALUE:
            raise FieldOverflowError(
                f"ERF exceeds {MAX_FIELD_VALUE} at layer {layer.index}"
            )
        increments.append(grown - values[-1])
        values.append(grown)
        jump *= layer.stride[axis]
        if jump > MAX_FIELD_VALUE and layer.index < len(network.layers):
            raise FieldOverflowError(
                f"cumulative stride exceeds {MAX_FIELD_VALUE} above layer {layer.index}"
            )
    return values, increments, cumulative


def erf_bottom_up(network: NetworkSpec) -> ErfTrace:
    """Compute the ERF of every layer in a single forward sweep."""
    require_valid(network)
    h_values, h_inc, h_cum = _erf_axis(network, 0)
    w_values, w_inc, w_cum = _erf_axis(network, 1)
    return ErfTrace(
        values=tuple(zip(h_values, w_values)),
        increments=tuple(zip(h_inc, w_inc)),
        cumulative_strides=tuple(zip(h_cum, w_cum)),
    )


def rf_top_down(network: NetworkSpec, k: int) -> RfProjection:
    """Project one layer-k neuron back to the input, one layer per step.

    Each step widens the current window r to (r - 1) * stride + filter of
    the layer being crossed. The value at layer 0 is the ERF of layer k;
    intermediate values are receptive fields onto intermediate layers.
    """
    require_valid(network)
    _check_layer_index(network, k)
    per_axis: list[list[int]] = []
    for axis in (0, 1):
        values = [1]
        for j in range(k - 1, -1, -1):
            crossing = network.layers[j]
            widened = (values[-1] - 1) * crossing.stride[axis] + crossing.filter[axis]
            if widened > MAX_FIELD_VALUE:
                raise FieldOverflowError(
                    f"projection exceeds {MAX_FIELD_VALUE} at layer {crossing.index}"
                )
            values.append(widened)
        per_axis.append(values)
    return RfProjection(target_layer=k, values=tuple(zip(per_axis[0], per_axis[1])))


def pf_size_set(network: NetworkSpec, k: int) -> PfSizeSet:
    """Distinct PF sizes of layer-k outputs feeding layer k+1.

    Interior positions only (borders are clipped in reality but the chain is
    treated as zero padded). Per axis the count is floor(f/s) or ceil(f/s)
    of the next layer, depending on where the neuron sits in the stride
    phase; uniform exactly when the stride divides the filter on both axes.
    """
    require_valid(network)
    if k == len(network.layers):
        raise LayerRangeError(f"layer {k} has no successor layer")
    if not 0 <= k < len(network.layers):
        raise LayerRangeError(
            f"layer index {k} out of range 0..{len(network.layers) - 1}"
        )
    nxt = network.layers[k]
    heights = {nxt.filter[0] // nxt.stride[0], -(-nxt.filter[0] // nxt.stride[0])}
    widths = {nxt.filter[1] // nxt.stride[1], -(-nxt.filter[1] // nxt.stride[1])}
    sizes = frozenset((h, w) for h in heights for w in widths)
    uniform = nxt.filter[0] % nxt.stride[0] == 0 and nxt.filter[1] % nxt.stride[1] == 0
    return PfSizeSet(boundary_layer=k, sizes=sizes, uniform=uniform)


def deconv_view(network: NetworkSpec) -> NetworkSpec:
    """Toggle the network's direction; numbers are unchanged, labels swap.

    A deconvolutional chain is the mirrored reading of a convolutional one:
    what the forward sweep measures as ERF extent is its projective field
    extent, and the per-boundary PF sizes are its ERF sizes.
    """
    require_valid(network)
    flipped = Direction.DECONV if network.direction is Direction.CONV else Direction.CONV
    return replace(network, direction=flipped)
