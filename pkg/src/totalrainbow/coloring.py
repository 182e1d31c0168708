"""Total colorings, coloring modes, and partial 2-edge-colorings.

JSON conventions: edge keys are "u|v" with endpoints sorted, which is why
vertex labels themselves may not contain "|".
"""

from dataclasses import dataclass, field
from enum import Enum

from .graphs import GraphError, edge_key


class ColoringError(ValueError):
    """A coloring is malformed or does not cover its host graph."""


class Mode(Enum):
    """Which element colors a rainbow-path check reads.

    EDGE ignores vertex colors (rc), VERTEX ignores edge colors (rvc),
    TOTAL reads both (trc).
    """

    EDGE = "edge"
    VERTEX = "vertex"
    TOTAL = "total"


def _edge_json_key(e):
    return f"{e[0]}|{e[1]}"


def _parse_edge_json_key(key):
    parts = key.split("|")
    if len(parts) != 2:
        raise ColoringError(f"malformed edge key {key!r}")
    return edge_key(*parts)


@dataclass
class TotalColoring:
    """A color for every vertex and every edge of a host graph.

    ``palette`` is the number of available colors t; every used color must
    be in range(t). Vertex keys are labels, edge keys endpoint-sorted tuples.
    """

    palette: int
    vertex_colors: dict
    edge_colors: dict

    def __post_init__(self):
        if self.palette < 1:
            raise ColoringError("palette size must be >= 1")
        for v, c in self.vertex_colors.items():
            self._check_color(c, f"vertex {v!r}")
        for e, c in self.edge_colors.items():
            if not (isinstance(e, tuple) and len(e) == 2 and e[0] < e[1]):
                raise ColoringError(f"edge key {e!r} is not endpoint-sorted")
            self._check_color(c, f"edge {e!r}")

    def _check_color(self, c, what):
        if not isinstance(c, int) or not 0 <= c < self.palette:
            raise ColoringError(f"color {c!r} of {what} outside palette 0..{self.palette - 1}")

    def vertex_color(self, v):
        try:
            return self.vertex_colors[v]
        except KeyError:
            raise ColoringError(f"vertex {v!r} is uncolored") from None

    def edge_color(self, u, v):
        try:
            return self.edge_colors[edge_key(u, v)]
        except KeyError:
            raise ColoringError(f"edge ({u!r},{v!r}) is uncolored") from None

    def element_color(self, elem):
        kind, ref = elem
        if kind == "v":
            return self.vertex_color(ref)
        if kind == "e":
            return self.edge_colors[ref]
        raise ColoringError(f"unknown element {elem!r}")

    def check_covers(self, g):
        """Raise unless every vertex and edge of g is colored."""
        for v in g.vertices:
            if v not in self.vertex_colors:
                raise ColoringError(f"vertex {v!r} is uncolored")
        for e in g.edges:
            if e not in self.edge_colors:
                raise ColoringError(f"edge {e!r} is uncolored")

    def permuted(self, sigma):
        """Apply a palette permutation (dict or sequence color -> color)."""
        image = {sigma[c] for c in range(self.palette)}
        if image != set(range(self.palette)):
            raise ColoringError("sigma is not a permutation of the palette")
        return TotalColoring(
            self.palette,
            {v: sigma[c] for v, c in self.vertex_colors.items()},
            {e: sigma[c] for e, c in self.edge_colors.items()},
        )

    def to_json(self):
        return {
            "palette": self.palette,
            "vertex_colors": dict(sorted(self.vertex_colors.items())),
            "edge_colors": {_edge_json_key(e): c for e, c in sorted(self.edge_colors.items())},
        }

    @staticmethod
    def from_json(data):
        try:
            palette = data["palette"]
            vcols = dict(data["vertex_colors"])
            ecols = {_parse_edge_json_key(k): c for k, c in data["edge_colors"].items()}
        except (KeyError, TypeError, GraphError) as exc:
            raise ColoringError(f"malformed coloring JSON: {exc}") from exc
        return TotalColoring(palette, vcols, ecols)


@dataclass
class PartialEdgeColoring:
    """Ordered partition (E1, E2) of a pre-colored edge subset, with the
    per-edge endpoint labeling e -> (e1, e2) the reductions rely on."""

    e1: tuple
    e2: tuple
    endpoint_order: dict = field(default_factory=dict)

    def __post_init__(self):
        self.e1 = tuple(edge_key(*e) for e in self.e1)
        self.e2 = tuple(edge_key(*e) for e in self.e2)
        if set(self.e1) & set(self.e2):
            raise ColoringError("E1 and E2 overlap")
        if len(set(self.e1)) != len(self.e1) or len(set(self.e2)) != len(self.e2):
            raise ColoringError("duplicate edge in partial coloring")
        norm = {}
        for e, ends in self.endpoint_order.items():
            e = edge_key(*e)
            first, second = ends
            if {first, second} != set(e):
                raise ColoringError(f"endpoint labeling {ends!r} does not match edge {e!r}")
            norm[e] = (first, second)
        self.endpoint_order = norm

    @property
    def edges(self):
        return self.e1 + self.e2

    def labeled_ends(self, e):
        """(e^1, e^2) for edge e; raises if the edge carries no labeling."""
        e = edge_key(*e)
        try:
            return self.endpoint_order[e]
        except KeyError:
            raise ColoringError(f"edge {e!r} has no endpoint labeling") from None

    def check_within(self, g):
        for e in self.edges:
            if e not in g.edges:
                raise GraphError(f"pre-colored edge {e!r} is not in the graph")

    def to_json(self):
        return {
            "E1": [list(e) for e in self.e1],
            "E2": [list(e) for e in self.e2],
            "endpoint_order": {
                _edge_json_key(e): list(ends) for e, ends in sorted(self.endpoint_order.items())
            },
        }

    @staticmethod
    def from_json(data):
        try:
            e1 = [tuple(e) for e in data["E1"]]
            e2 = [tuple(e) for e in data["E2"]]
            order = {
                _parse_edge_json_key(k): tuple(v)
                for k, v in data.get("endpoint_order", {}).items()
            }
        except (KeyError, TypeError, GraphError) as exc:
            raise ColoringError(f"malformed partial coloring JSON: {exc}") from exc
        return PartialEdgeColoring(e1, e2, order)
