"""Report assembly and rendering: aligned tables, stable JSON, footprints."""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import fields, oracle
from .arch import Direction, NetworkSpec
from .fields import ErfTrace, Pair, RfProjection


@dataclass(frozen=True)
class PfBoundaryRow:
    boundary: int
    sizes: tuple[Pair, ...]  # ascending (h, w)
    uniform: bool
    depth: int | None  # channels_out of the layer being fed


@dataclass(frozen=True)
class AnalysisReport:
    network: NetworkSpec
    trace: ErfTrace
    pf: tuple[PfBoundaryRow, ...]


def build_analysis(network: NetworkSpec) -> AnalysisReport:
    trace = fields.erf_bottom_up(network)
    pf_rows = []
    for k in range(len(network.layers)):
        size_set = fields.pf_size_set(network, k)
        pf_rows.append(
            PfBoundaryRow(
                boundary=k,
                sizes=tuple(sorted(size_set.sizes)),
                uniform=size_set.uniform,
                depth=network.layers[k].channels_out,
            )
        )
    return AnalysisReport(network=network, trace=trace, pf=tuple(pf_rows))


def _cell(pair: Pair) -> str:
    return f"{pair[0]}x{pair[1]}"


def _pf_sizes_cell(row: PfBoundaryRow) -> str:
    if row.depth is not None:
        return ", ".join(f"{h}x{w}x{row.depth}" for h, w in row.sizes)
    return ", ".join(_cell(size) for size in row.sizes)


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return lines


def render_analysis_table(report: AnalysisReport) -> str:
    network = report.network
    deconv = network.direction is Direction.DECONV
    # Mirrored reading: a deconv chain's forward extent is a projective field
    # and its per-boundary sizes are receptive fields.
    extent_label = "pf extent" if deconv else "erf"
    pf_title = "effective receptive field sizes" if deconv else "projective field sizes"

    lines = [f"network {network.name or '(unnamed)'} ({network.direction.value})", ""]
    rows = []
    for layer in network.layers:
        i = layer.index
        rows.append(
            [
                str(i),
                layer.kind.value,
                _cell(layer.filter),
                _cell(layer.stride),
                _cell(report.trace.cumulative_strides[i - 1]),
                _cell(report.trace.increments[i - 1]),
                _cell(report.trace.values[i]),
            ]
        )
    lines += _table(
        ["layer", "kind", "filter", "stride", "cum-stride", "increment", extent_label],
        rows,
    )
    lines += ["", f"{pf_title} (boundary k feeds layer k+1)"]
    pf_rows = [
        [str(row.boundary), _pf_sizes_cell(row), "yes" if row.uniform else "no"]
        for row in report.pf
    ]
    lines += _table(["boundary", "sizes", "uniform"], pf_rows)
    return "\n".join(lines) + "\n"


def render_analysis_json(report: AnalysisReport) -> str:
    network = report.network
    payload = {
        "name": network.name,
        "direction": network.direction.value,
        "layers": [
            {
                "index": layer.index,
                "kind": layer.kind.value,
                "filter": list(layer.filter),
                "stride": list(layer.stride),
                "cum_stride": list(report.trace.cumulative_strides[layer.index - 1]),
                "increment": list(report.trace.increments[layer.index - 1]),
                "erf": list(report.trace.values[layer.index]),
            }
            for layer in network.layers
        ],
        "pf": [
            {
                "boundary": row.boundary,
                "sizes": [list(size) for size in row.sizes],
                "uniform": row.uniform,
            }
            for row in report.pf
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render_topdown_table(network: NetworkSpec, projection: RfProjection) -> str:
    k = projection.target_layer
    lines = [f"top-down projection of layer {k} (network {network.name or '(unnamed)'})"]
    rows = [
        [str(k - i), _cell(pair)]
        for i, pair in enumerate(projection.values)
    ]
    lines += _table(["layer", "rf"], rows)
    return "\n".join(lines) + "\n"


def render_topdown_json(network: NetworkSpec, projection: RfProjection) -> str:
    payload = {
        "name": network.name,
        "target_layer": projection.target_layer,
        "values": [
            {"layer": projection.target_layer - i, "rf": list(pair)}
            for i, pair in enumerate(projection.values)
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render_equivalence(report: oracle.EquivalenceReport) -> str:
    lines = [f"equivalence check: {report.network_name or '(unnamed)'}"]
    rows = [
        [
            str(row.layer),
            _cell(row.bottom_up),
            _cell(row.top_down),
            _cell(row.oracle_span),
            _cell(row.oracle_cardinality),
            "ok" if row.matches else "MISMATCH",
        ]
        for row in report.erf_rows
    ]
    lines += _table(
        ["layer", "bottom-up", "top-down", "oracle-span", "oracle-card", "match"], rows
    )
    gapped = [row for row in report.erf_rows if row.has_coverage_gaps]
    for row in gapped:
        lines.append(
            f"note: layer {row.layer} influence has coverage gaps "
            f"(cardinality {_cell(row.oracle_cardinality)} < span {_cell(row.oracle_span)})"
        )
    if report.pf_rows:
        lines.append("")
        pf_rows = [
            [
                str(row.boundary),
                ", ".join(_cell(s) for s in sorted(row.closed_form)),
                ", ".join(_cell(s) for s in sorted(row.oracle)),
                "ok" if row.matches else "MISMATCH",
            ]
            for row in report.pf_rows
        ]
        lines += _table(["pf-boundary", "closed-form", "oracle", "match"], pf_rows)
    for k in report.pf_skipped:
        lines.append(f"note: pf comparison skipped at boundary {k} (stride exceeds filter)")
    lines.append("")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_footprint(
    network: NetworkSpec, projection: RfProjection, max_width: int = 120
) -> str:
    """One centered bar per layer, widest at the input; numeric fallback when
    the input-level extent exceeds max_width columns."""
    k = projection.target_layer
    heights = [pair[0] for pair in projection.values]
    widths = [pair[1] for pair in projection.values]
    lines = [f"footprint of layer {k}, height axis (network {network.name or '(unnamed)'})"]
    if heights != widths:
        lines.append("note: width axis differs from height axis; drawing heights only")
    full = heights[-1]
    if full > max_width:
        lines.append(f"extent {full} exceeds max width {max_width}; printing values only")
        for i, extent in enumerate(heights):
            lines.append(f"layer {k - i}: {extent}")
        return "\n".join(lines) + "\n"
    label_width = len(str(k))
    extent_width = len(str(full))
    for i, extent in enumerate(heights):
        left = (full - extent) // 2
        bar = " " * left + "#" * extent + " " * (full - extent - left)
        lines.append(
            f"layer {k - i:>{label_width}}  extent {extent:>{extent_width}}  |{bar}|"
        )
    return "\n".join(lines) + "\n"
