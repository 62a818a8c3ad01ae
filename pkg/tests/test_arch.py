from __future__ import annotations

import pytest
from hypothesis import given

from conftest import make_network
from strategies import networks

from fieldscope import (
    Direction,
    InvalidNetworkError,
    LayerKind,
    LayerSpec,
    NetworkSpec,
    erf_bottom_up,
    validate,
)
from fieldscope.arch import require_valid


def test_single_conv_layer_is_clean():
    report = validate(make_network(("conv", 9, 1)))
    assert report.ok
    assert report.errors == ()
    assert report.warnings == ()


def test_zero_filter_is_an_error():
    report = validate(make_network(("conv", (0, 3), 1)))
    assert not report.ok
    assert any("filter must be >= 1" in msg for _, msg in report.errors)
    assert report.errors[0][0] == 1


def test_stride_exceeding_filter_warns_per_axis():
    report = validate(make_network(("conv", 2, 3)))
    assert report.ok
    messages = [msg for _, msg in report.warnings]
    assert len(messages) == 2  # one per axis
    assert all("stride exceeds filter" in msg and "coverage gaps" in msg for msg in messages)


def test_stride_exceeding_filter_on_one_axis_warns_once():
    report = validate(make_network(("pool", (2, 4), (3, 2))))
    assert len(report.warnings) == 1
    assert "height" in report.warnings[0][1]


def test_zero_stride_is_an_error():
    report = validate(make_network(("pool", 2, (0, 2))))
    assert any("stride must be >= 1" in msg for _, msg in report.errors)


def test_bad_channels_out_is_an_error():
    layer = LayerSpec(index=1, kind=LayerKind.CONV, filter=(3, 3), stride=(1, 1), channels_out=0)
    report = validate(NetworkSpec(name="", direction=Direction.CONV, layers=(layer,)))
    assert any("channels_out" in msg for _, msg in report.errors)


def test_empty_network_is_an_error():
    report = validate(NetworkSpec(name="", direction=Direction.CONV, layers=()))
    assert any("no layers" in msg for _, msg in report.errors)


def test_index_gap_is_an_error():
    bad = NetworkSpec(
        name="",
        direction=Direction.CONV,
        layers=(
            LayerSpec(index=1, kind=LayerKind.CONV, filter=(3, 3), stride=(1, 1)),
            LayerSpec(index=3, kind=LayerKind.CONV, filter=(3, 3), stride=(1, 1)),
        ),
    )
    report = validate(bad)
    assert any("1..n" in msg for _, msg in report.errors)


def test_require_valid_raises_with_findings():
    with pytest.raises(InvalidNetworkError, match="filter must be >= 1"):
        require_valid(make_network(("conv", 0, 1)))


def test_calculators_reject_invalid_networks():
    with pytest.raises(InvalidNetworkError):
        erf_bottom_up(make_network(("conv", 0, 1)))


def test_layer_accessor_is_one_based():
    network = make_network(("conv", 3, 1), ("pool", 2, 2))
    assert network.layer(2).kind is LayerKind.POOL
    with pytest.raises(IndexError):
        network.layer(0)
    with pytest.raises(IndexError):
        network.layer(3)


@given(networks(named=True))
def test_validate_is_deterministic_and_clean_on_generated_networks(network):
    first = validate(network)
    second = validate(network)
    assert first == second
    assert first.ok
