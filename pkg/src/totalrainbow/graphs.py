"""Simple undirected labeled graphs and the basic metrics everything else builds on.

Vertices are strings; their declaration order is preserved and drives every
deterministic iteration in the package. Edges are stored endpoint-sorted.
Graphs are immutable after construction and safe to share between threads.
"""

from collections import deque
from itertools import combinations


class GraphError(ValueError):
    """An input violates a graph invariant (self-loop, unknown vertex, ...)."""


def edge_key(u, v):
    """Canonical (endpoint-sorted) representation of the undirected edge uv."""
    if u == v:
        raise GraphError(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


def pair_key(u, v):
    """Canonical unordered pair of distinct vertices. Diagonal pairs are invalid."""
    if u == v:
        raise GraphError(f"degenerate pair ({u!r},{u!r})")
    return (u, v) if u < v else (v, u)


def vertex_elem(v):
    """Element handle for a vertex (domain of a total coloring)."""
    return ("v", v)


def edge_elem(u, v):
    """Element handle for an edge, endpoint-sorted."""
    return ("e", edge_key(u, v))


class Graph:
    """Immutable simple graph with string vertex labels.

    ``vertices`` is the declaration-order tuple, ``edges`` a frozenset of
    endpoint-sorted tuples. ``adjacency`` maps each vertex to the set of its
    neighbors; ``neighbors(v)`` returns them sorted by declaration order.
    """

    __slots__ = ("vertices", "edges", "adjacency", "_index", "_nbr_cache")

    def __init__(self, vertices, edges):
        vs = tuple(vertices)
        index = {}
        for v in vs:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex label must be a nonempty string: {v!r}")
            if "|" in v:
                raise GraphError(f"vertex label may not contain '|': {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex label {v!r}")
            index[v] = len(index)
        adjacency = {v: set() for v in vs}
        eset = set()
        for u, v in edges:
            if u not in index or v not in index:
                raise GraphError(f"edge ({u!r},{v!r}) has an undeclared endpoint")
            e = edge_key(u, v)
            if e in eset:
                raise GraphError(f"duplicate edge {e!r}")
            eset.add(e)
            adjacency[u].add(v)
            adjacency[v].add(u)
        self.vertices = vs
        self.edges = frozenset(eset)
        self.adjacency = adjacency
        self._index = index
        self._nbr_cache = {}

    @property
    def n(self):
        return len(self.vertices)

    @property
    def m(self):
        return len(self.edges)

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v):
        return v in self._index

    def has_edge(self, u, v):
        return v in self.adjacency.get(u, ())

    def neighbors(self, v):
        """Neighbors of v sorted by declaration order (cached)."""
        nbrs = self._nbr_cache.get(v)
        if nbrs is None:
            if v not in self._index:
                raise GraphError(f"unknown vertex {v!r}")
            idx = self._index
            nbrs = tuple(sorted(self.adjacency[v], key=idx.__getitem__))
            self._nbr_cache[v] = nbrs
        return nbrs

    def sorted_edges(self):
        return sorted(self.edges)

    def all_pairs(self):
        """All unordered pairs of distinct vertices, in declaration order."""
        return list(combinations(self.vertices, 2))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(vertices, edges):
    """Construct a Graph, rejecting any invariant violation."""
    return Graph(vertices, edges)


def is_connected(g):
    if g.n == 0:
        return True
    seen = {g.vertices[0]}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def bfs_distances(g, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def diameter(g):
    """Max shortest-path length over vertex pairs; None if g is disconnected.

    A single vertex has diameter 0.
    """
    if g.n == 0:
        raise GraphError("empty graph has no diameter")
    best = 0
    for v in g.vertices:
        dist = bfs_distances(g, v)
        if len(dist) != g.n:
            return None
        best = max(best, max(dist.values()))
    return best


def is_complete(g):
    return g.m == g.n * (g.n - 1) // 2


def max_disjoint_paths(g, u, v):
    """Number of internally vertex-disjoint u-v paths (Menger, via unit-vertex flow).

    For adjacent u,v the direct edge counts as one path.
    """
    if u == v:
        raise GraphError("endpoints must differ")
    g.index(u), g.index(v)
    # Vertex-split digraph: x_in -> x_out with capacity 1 for internal vertices,
    # undirected edge ab becomes a_out -> b_in and b_out -> a_in.
    # Endpoints have unbounded vertex capacity.
    flow_edges = {}  # (node, node) -> residual capacity

    def add(a, b, cap):
        flow_edges[(a, b)] = flow_edges.get((a, b), 0) + cap
        flow_edges.setdefault((b, a), 0)

    big = g.n + 1
    for w in g.vertices:
        add((w, "in"), (w, "out"), big if w in (u, v) else 1)
    for a, b in g.edges:
        add((a, "out"), (b, "in"), 1)
        add((b, "out"), (a, "in"), 1)
    succ = {}
    for (a, b) in flow_edges:
        succ.setdefault(a, []).append(b)
    source, sink = (u, "out"), (v, "in")
    flow = 0
    while True:
        # BFS augmenting path on the residual network.
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in succ[a]:
                if b not in parent and flow_edges[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        node = sink
        while parent[node] is not None:
            prev = parent[node]
            flow_edges[(prev, node)] -= 1
            flow_edges[(node, prev)] += 1
            node = prev
        flow += 1


def vertex_connectivity(g):
    """Exact connectivity: minimum vertex cut size, n-1 for complete graphs."""
    if g.n < 2:
        raise GraphError("connectivity needs at least 2 vertices")
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    if is_complete(g):
        return g.n - 1
    best = g.n - 1
    for u, v in g.all_pairs():
        if not g.has_edge(u, v):
            best = min(best, max_disjoint_paths(g, u, v))
    return best


def graph_to_json(g):
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(data):
    try:
        vertices = data["vertices"]
        edges = [tuple(e) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"malformed edge entry {e!r}")
    return build_graph(vertices, edges)
