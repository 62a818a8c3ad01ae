"""Brute-force connectivity oracle.

Everything here materializes actual neuron-to-neuron wiring on discrete 1D
grids (2D results are axis products) and measures the resulting sets. No
field formula from fields.py enters any computation, which is what makes
these results an independent check of the closed forms.

Coordinates are window-start aligned: output position p of a layer with
filter f and stride s reads input positions p*s .. p*s + f - 1. Any
consistent origin convention yields the same spans; this one keeps all
positions non-negative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

from . import fields
from .arch import Direction, LayerKind, LayerRangeError, LayerSpec, NetworkSpec, require_valid
from .fields import Pair


class Axis(IntEnum):
    H = 0
    W = 1


@dataclass(frozen=True)
class InfluenceSet:
    """Input-grid positions wired (directly or transitively) to one neuron."""

    layer: int
    positions: tuple[int, ...]

    @property
    def span(self) -> int:
        return self.positions[-1] - self.positions[0] + 1

    @property
    def cardinality(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class PfCountField:
    """Window-coverage counts over one stride period of interior positions.

    counts_h[x] is the number of next-layer windows covering interior offset
    x (0 <= x < stride) along the height axis; counts_w likewise. A 2D
    position inherits the pair of its axis counts.
    """

    filter: Pair
    stride: Pair
    counts_h: tuple[int, ...]
    counts_w: tuple[int, ...]
    boundary_layer: int | None = None

    @property
    def size_pairs(self) -> frozenset[Pair]:
        """Distinct (height, width) PF sizes observed while sliding."""
        return frozenset((h, w) for h in set(self.counts_h) for w in set(self.counts_w))


class ErfMeasurement(NamedTuple):
    span: Pair
    cardinality: Pair


def backward_influence(network: NetworkSpec, k: int, axis: Axis) -> InfluenceSet:
    """Expand one layer-k neuron window-by-window down to the input grid.

    Starting from position 0 at layer k, each layer-j position p becomes the
    layer j-1 positions p*s_j .. p*s_j + f_j - 1; unions of those windows are
    taken all the way down. Pure connectivity, no arithmetic shortcuts.
    """
    require_valid(network)
    if not 0 <= k <= len(network.layers):
        raise LayerRangeError(f"layer index {k} out of range 0..{len(network.layers)}")
    positions = {0}
    for j in range(k, 0, -1):
        layer = network.layers[j - 1]
        f, s = layer.filter[axis], layer.stride[axis]
        positions = {p * s + t for p in positions for t in range(f)}
    return InfluenceSet(layer=0, positions=tuple(sorted(positions)))


def erf_oracle(network: NetworkSpec, k: int) -> ErfMeasurement:
    """Measure the layer-k influence set per axis: extent and element count.

    Span always matches the closed-form ERF. Cardinality can be smaller when
    some stride exceeds its filter, because the windows then leave gaps.
    """
    by_axis = [backward_influence(network, k, axis) for axis in (Axis.H, Axis.W)]
    return ErfMeasurement(
        span=(by_axis[0].span, by_axis[1].span),
        cardinality=(by_axis[0].cardinality, by_axis[1].cardinality),
    )


def _influence_sweep(network: NetworkSpec, axis: Axis) -> list[tuple[int, int]]:
    """(span, cardinality) of the layer-k influence set for every k, one pass.

    Influence sets are translation covariant: position p at layer j maps to
    p * jump_j + (set for position 0), where jump_j is the product of the
    strides up to layer j. So one bottom-up sweep of window unions yields
    the position-0 set for every layer without re-expanding from scratch.
    Agreement with backward_influence is property-tested.
    """
    measures = [(1, 1)]
    base = {0}
    jump = 1
    for layer in network.layers:
        f, s = layer.filter[axis], layer.stride[axis]
        base = {t * jump + q for t in range(f) for q in base}
        measures.append((max(base) - min(base) + 1, len(base)))
        jump *= s
    return measures


def pf_counts_oracle(
    filter: Pair, stride: Pair, boundary_layer: int | None = None
) -> PfCountField:
    """Slide next-layer windows along each axis and count coverage.

    Positions are scanned over one stride period deep inside the grid, far
    enough from the origin that every window which could cover a scanned
    position exists. Counts repeat with period s, so one period tells all.
    """
    per_axis = []
    for axis in (0, 1):
        f, s = filter[axis], stride[axis]
        if f < 1 or s < 1:
            raise ValueError(f"filter and stride must be >= 1, got f={f} s={s}")
        start = f  # offsets start..start+s-1 are interior
        counts = [0] * s
        last = start + s - 1
        for p in range(last // s + 1):
            for t in range(f):
                x = p * s + t
                if start <= x <= last:
                    counts[x - start] += 1
        per_axis.append(tuple(counts))
    return PfCountField(
        filter=filter,
        stride=stride,
        counts_h=per_axis[0],
        counts_w=per_axis[1],
        boundary_layer=boundary_layer,
    )


@dataclass(frozen=True)
class ErfAgreementRow:
    """Three routes to the same per-layer answer, side by side."""

    layer: int
    bottom_up: Pair
    top_down: Pair
    oracle_span: Pair
    oracle_cardinality: Pair

    @property
    def matches(self) -> bool:
        return self.bottom_up == self.top_down == self.oracle_span

    @property
    def has_coverage_gaps(self) -> bool:
        return self.oracle_cardinality != self.oracle_span


@dataclass(frozen=True)
class PfAgreementRow:
    boundary: int
    closed_form: frozenset[Pair]
    oracle: frozenset[Pair]

    @property
    def matches(self) -> bool:
        return self.closed_form == self.oracle


@dataclass(frozen=True)
class EquivalenceReport:
    """Formula-vs-oracle comparison for one network."""

    network_name: str
    erf_rows: tuple[ErfAgreementRow, ...]
    pf_rows: tuple[PfAgreementRow, ...]
    pf_skipped: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return all(r.matches for r in self.erf_rows) and all(
            r.matches for r in self.pf_rows
        )

    def first_mismatch(self) -> ErfAgreementRow | PfAgreementRow | None:
        for row in self.erf_rows:
            if not row.matches:
                return row
        for row in self.pf_rows:
            if not row.matches:
                return row
        return None


def check_equivalence(network: NetworkSpec) -> EquivalenceReport:
    """Compare bottom-up, top-down, and oracle answers for every layer.

    PF sets are compared per boundary only where the next layer has stride
    <= filter on both axes; gapped boundaries are listed as skipped.
    """
    require_valid(network)
    trace = fields.erf_bottom_up(network)
    sweep_h = _influence_sweep(network, Axis.H)
    sweep_w = _influence_sweep(network, Axis.W)
    erf_rows = []
    for k in range(len(network.layers) + 1):
        projection = fields.rf_top_down(network, k)
        erf_rows.append(
            ErfAgreementRow(
                layer=k,
                bottom_up=trace.values[k],
                top_down=projection.values[-1],
                oracle_span=(sweep_h[k][0], sweep_w[k][0]),
                oracle_cardinality=(sweep_h[k][1], sweep_w[k][1]),
            )
        )
    pf_rows = []
    skipped = []
    for k in range(len(network.layers)):
        nxt = network.layers[k]
        if nxt.stride[0] <= nxt.filter[0] and nxt.stride[1] <= nxt.filter[1]:
            counted = pf_counts_oracle(nxt.filter, nxt.stride, boundary_layer=k)
            pf_rows.append(
                PfAgreementRow(
                    boundary=k,
                    closed_form=fields.pf_size_set(network, k).sizes,
                    oracle=counted.size_pairs,
                )
            )
        else:
            skipped.append(k)
    return EquivalenceReport(
        network_name=network.name,
        erf_rows=tuple(erf_rows),
        pf_rows=tuple(pf_rows),
        pf_skipped=tuple(skipped),
    )


def random_network(
    rng: random.Random,
    *,
    max_layers: int = 8,
    max_filter: int = 11,
    max_stride: int = 4,
    covered_only: bool = False,
    name: str = "",
) -> NetworkSpec:
    """Sample a chain within the randomized-suite bounds.

    covered_only caps each stride at its filter so the windows tile without
    gaps; use it when cardinality must equal span.
    """
    n = rng.randint(1, max_layers)
    layers = []
    for k in range(1, n + 1):
        kind = rng.choice((LayerKind.CONV, LayerKind.POOL))
        f = (rng.randint(1, max_filter), rng.randint(1, max_filter))
        if covered_only:
            s = (rng.randint(1, min(max_stride, f[0])), rng.randint(1, min(max_stride, f[1])))
        else:
            s = (rng.randint(1, max_stride), rng.randint(1, max_stride))
        channels = rng.randint(1, 128) if rng.random() < 0.2 else None
        layers.append(LayerSpec(index=k, kind=kind, filter=f, stride=s, channels_out=channels))
    return NetworkSpec(name=name, direction=Direction.CONV, layers=tuple(layers))
