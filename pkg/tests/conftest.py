from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from fieldscope import Direction, LayerKind, LayerSpec, NetworkSpec, parse_dsl

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

DATA = Path(__file__).parent / "data"

CHAIN11_ERF = [1, 9, 10, 26, 28, 60, 64, 96, 160, 240, 320, 400]
CHAIN11_TOPDOWN = [1, 11, 21, 31, 39, 43, 86, 94, 188, 196, 392, 400]


def make_network(*layers, name="", direction=Direction.CONV):
    """Build a NetworkSpec from (kind, filter, stride) triples.

    Scalars fill both axes; pass (h, w) tuples for anisotropic layers.
    """
    specs = []
    for index, (kind, size, stride) in enumerate(layers, start=1):
        size = size if isinstance(size, tuple) else (size, size)
        stride = stride if isinstance(stride, tuple) else (stride, stride)
        specs.append(
            LayerSpec(index=index, kind=LayerKind(kind), filter=size, stride=stride)
        )
    return NetworkSpec(name=name, direction=direction, layers=tuple(specs))


def insert_layer(network, position, kind, size, stride):
    """Insert a layer so it becomes layer `position`, reindexing the rest."""
    size = size if isinstance(size, tuple) else (size, size)
    stride = stride if isinstance(stride, tuple) else (stride, stride)
    inserted = LayerSpec(index=position, kind=LayerKind(kind), filter=size, stride=stride)
    layers = list(network.layers)
    layers.insert(position - 1, inserted)
    reindexed = tuple(
        LayerSpec(
            index=i,
            kind=layer.kind,
            filter=layer.filter,
            stride=layer.stride,
            channels_out=layer.channels_out,
        )
        for i, layer in enumerate(layers, start=1)
    )
    return NetworkSpec(name=network.name, direction=network.direction, layers=reindexed)


@pytest.fixture(scope="session")
def chain11() -> NetworkSpec:
    return parse_dsl((DATA / "chain11.net").read_text(encoding="utf-8"))
