import json

import pytest

from totalrainbow.coloring import (
    ColoringError,
    Mode,
    PartialEdgeColoring,
    TotalColoring,
)
from totalrainbow.graphs import build_graph


def test_mode_values():
    assert Mode("edge") is Mode.EDGE
    assert Mode("vertex") is Mode.VERTEX
    assert Mode("total") is Mode.TOTAL


def test_total_coloring_validation():
    with pytest.raises(ColoringError):
        TotalColoring(0, {}, {})
    with pytest.raises(ColoringError):
        TotalColoring(2, {"a": 2}, {})  # color out of range
    with pytest.raises(ColoringError):
        TotalColoring(2, {"a": -1}, {})
    with pytest.raises(ColoringError):
        TotalColoring(2, {"a": 0}, {("b", "a"): 1})  # keys must be sorted
    c = TotalColoring(2, {"a": 1, "b": 0}, {("a", "b"): 1})
    assert c.edge_color("a", "b") == 1
    assert c.edge_color("b", "a") == 1


def test_check_covers():
    g = build_graph(["a", "b"], [("a", "b")])
    full = TotalColoring(1, {"a": 0, "b": 0}, {("a", "b"): 0})
    full.check_covers(g)
    missing = TotalColoring(1, {"a": 0}, {("a", "b"): 0})
    with pytest.raises(ColoringError):
        missing.check_covers(g)


def test_permuted():
    c = TotalColoring(3, {"a": 0, "b": 1}, {("a", "b"): 2})
    p = c.permuted({0: 2, 1: 0, 2: 1})
    assert p.vertex_colors == {"a": 2, "b": 0}
    assert p.edge_colors == {("a", "b"): 1}
    with pytest.raises(ColoringError):
        c.permuted({0: 0, 1: 0, 2: 1})  # not a bijection


def test_coloring_json_roundtrip():
    c = TotalColoring(3, {"a": 0, "b": 1, "c": 2},
                      {("a", "b"): 2, ("b", "c"): 0})
    text = json.dumps(c.to_json(), sort_keys=True)
    back = TotalColoring.from_json(json.loads(text))
    assert back == c
    assert json.dumps(back.to_json(), sort_keys=True) == text


def test_partial_coloring_validation():
    with pytest.raises(ColoringError):
        PartialEdgeColoring((("a", "b"),), (("b", "a"),))  # classes overlap
    with pytest.raises(ColoringError):
        PartialEdgeColoring((("a", "b"), ("b", "a")), ())
    with pytest.raises(ColoringError):
        PartialEdgeColoring((("a", "b"),), (), {("a", "b"): ("a", "c")})
    p = PartialEdgeColoring((("b", "a"),), (), {("a", "b"): ("b", "a")})
    assert p.e1 == (("a", "b"),)
    assert p.labeled_ends(("a", "b")) == ("b", "a")


def test_partial_coloring_json_roundtrip():
    p = PartialEdgeColoring(
        (("a", "b"),), (("c", "d"),),
        {("a", "b"): ("b", "a"), ("c", "d"): ("c", "d")})
    back = PartialEdgeColoring.from_json(p.to_json())
    assert back.e1 == p.e1 and back.e2 == p.e2
    assert back.endpoint_order == p.endpoint_order
