"""Rainbow / vertex-rainbow / total-rainbow path and connectivity verifiers.

All checks are pure functions over immutable inputs. Endpoint vertex colors
never participate in any mode: a path is judged on its edges (EDGE), its
internal vertices (VERTEX), or both together in one multiset (TOTAL).
"""

from itertools import combinations

from .coloring import Mode
from .graphs import GraphError, pair_key


def max_rainbow_path_length(t, mode):
    """Longest possible rainbow path (in edges) under a palette of size t.

    TOTAL: a path of L edges colors 2L-1 elements, so L <= (t+1)//2.
    EDGE: L <= t. VERTEX: at most t internal vertices, so L <= t+1.
    """
    if t < 1:
        raise ValueError("palette size must be >= 1")
    if mode is Mode.TOTAL:
        return (t + 1) // 2
    if mode is Mode.EDGE:
        return t
    return t + 1


def _check_path(g, path):
    if len(path) < 2:
        raise GraphError(f"path {path!r} has fewer than 2 vertices")
    if len(set(path)) != len(path):
        raise GraphError(f"path {path!r} repeats a vertex")
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise GraphError(f"path step ({u!r},{v!r}) is not an edge")


def _path_colors(c, path, mode):
    """Color multiset the mode reads: edges and/or internal vertices."""
    colors = []
    if mode is not Mode.VERTEX:
        colors.extend(c.edge_color(u, v) for u, v in zip(path, path[1:]))
    if mode is not Mode.EDGE:
        colors.extend(c.vertex_color(v) for v in path[1:-1])
    return colors


def is_rainbow_path(g, c, path, mode):
    """True iff the mode-relevant colors of the path are pairwise distinct."""
    path = tuple(path)
    _check_path(g, path)
    colors = _path_colors(c, path, mode)
    return len(colors) == len(set(colors))


def _iter_rainbow_paths(g, c, u, v, mode, max_len):
    """Yield rainbow u-v paths of <= max_len edges, lexicographic by vertex order.

    The DFS prunes on partial color clashes, which is sound because every
    prefix of a rainbow path is rainbow.
    """
    read_edges = mode is not Mode.VERTEX
    read_vertices = mode is not Mode.EDGE
    used = set()
    path = [u]
    on_path = {u}

    def extend(w, depth):
        internal_color = None
        if read_vertices and w != u:
            internal_color = c.vertex_color(w)
            if internal_color in used:
                return
            used.add(internal_color)
        for z in g.neighbors(w):
            if z in on_path:
                continue
            edge_color = None
            if read_edges:
                edge_color = c.edge_color(w, z)
                if edge_color in used:
                    continue
                used.add(edge_color)
            path.append(z)
            if z == v:
                yield tuple(path)
            elif depth + 1 < max_len:
                # z may become internal only if the path keeps going.
                on_path.add(z)
                yield from extend(z, depth + 1)
                on_path.discard(z)
            path.pop()
            if edge_color is not None:
                used.discard(edge_color)
        if internal_color is not None:
            used.discard(internal_color)

    yield from extend(u, 0)


def _iter_rainbow_paths_shortest_first(g, c, u, v, mode, max_len):
    """Rainbow u-v paths in increasing length (iterative deepening)."""
    read_edges = mode is not Mode.VERTEX
    read_vertices = mode is not Mode.EDGE
    adj_v = g.adjacency[v]

    for target_len in range(1, max_len + 1):
        used = set()
        path = [u]
        on_path = {u}

        def extend(w, depth):
            internal_color = None
            if read_vertices and w != u:
                internal_color = c.vertex_color(w)
                if internal_color in used:
                    return
                used.add(internal_color)
            last = depth + 1 == target_len
            for z in g.neighbors(w):
                if z in on_path or (last and z != v) or (not last and z == v):
                    continue
                edge_color = None
                if read_edges:
                    edge_color = c.edge_color(w, z)
                    if edge_color in used:
                        continue
                    used.add(edge_color)
                path.append(z)
                if z == v:
                    yield tuple(path)
                else:
                    on_path.add(z)
                    yield from extend(z, depth + 1)
                    on_path.discard(z)
                path.pop()
                if edge_color is not None:
                    used.discard(edge_color)
            if internal_color is not None:
                used.discard(internal_color)

        if target_len == 1:
            if v in g.adjacency[u]:
                yield (u, v)
        elif target_len == 2:
            # Common-neighbor scan; the bulk of the work at desk scale.
            for w in g.neighbors(u):
                if w == v or w not in adj_v:
                    continue
                colors = []
                if read_edges:
                    colors.append(c.edge_color(u, w))
                    colors.append(c.edge_color(w, v))
                if read_vertices:
                    colors.append(c.vertex_color(w))
                if len(colors) == len(set(colors)):
                    yield (u, w, v)
        else:
            yield from extend(u, 0)


def enumerate_rainbow_paths(g, c, u, v, mode, max_len):
    """All rainbow u-v paths of <= max_len edges, lexicographic by vertex order."""
    g.index(u), g.index(v)
    if u == v:
        raise GraphError("endpoints must differ")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    return list(_iter_rainbow_paths(g, c, u, v, mode, max_len))


def _pack_disjoint(candidates, k):
    """Exact search for k candidates with pairwise disjoint internal-vertex sets.

    Returns the chosen paths or None. ``candidates`` is a list of
    (path, internal_set) in preference order.
    """
    chosen = []

    def search(start, occupied):
        if len(chosen) == k:
            return True
        if len(candidates) - start < k - len(chosen):
            return False
        for i in range(start, len(candidates)):
            path, internal = candidates[i]
            if occupied & internal:
                continue
            chosen.append(path)
            if search(i + 1, occupied | internal):
                return True
            chosen.pop()
        return False

    if search(0, frozenset()):
        return list(chosen)
    return None


def has_k_disjoint_rainbow_paths(g, c, u, v, k, mode, max_len=None):
    """Decide whether u and v are joined by k internally disjoint rainbow paths.

    Returns (ok, witness_paths). Candidates are enumerated shortest-first;
    the packing over them is exact. ``max_len`` defaults to the palette bound
    and exists as an override for larger-palette experiments.
    """
    g.index(u), g.index(v)
    if u == v:
        raise GraphError("endpoints must differ")
    if k < 1:
        raise ValueError("k must be >= 1")
    if max_len is None:
        max_len = max_rainbow_path_length(c.palette, mode)
    max_len = min(max_len, g.n - 1)
    if max_len < 1:
        return False, []
    paths = _iter_rainbow_paths_shortest_first(g, c, u, v, mode, max_len)
    if k == 1:
        for path in paths:
            return True, [path]
        return False, []
    candidates = [(p, frozenset(p[1:-1])) for p in paths]
    witness = _pack_disjoint(candidates, k)
    if witness is None:
        return False, []
    return True, witness


def resolve_pairs(g, pairs, require_nonadjacent=False):
    """Normalize a pair collection; None means all unordered distinct pairs."""
    if pairs is None:
        return g.all_pairs()
    out = []
    for u, v in pairs:
        g.index(u), g.index(v)
        p = pair_key(u, v)
        if require_nonadjacent and g.has_edge(*p):
            raise GraphError(f"pair {p!r} is adjacent")
        out.append(p)
    idx = g.index
    out.sort(key=lambda p: (idx(p[0]), idx(p[1])))
    return out


def is_rainbow_k_connected(g, c, k, mode, pairs=None, max_len=None):
    """Check k disjoint rainbow paths for every pair (all pairs when pairs=None).

    Returns (ok, first_failing_pair). Pair order is deterministic: declaration
    order for the full universe, index-sorted for an explicit pair set.
    """
    pair_list = resolve_pairs(g, pairs)
    adjacency = g.adjacency
    if k == 1:
        for u, v in pair_list:
            if v in adjacency[u]:
                continue  # single edge: no relevant repeated color possible
            ok, _ = has_k_disjoint_rainbow_paths(g, c, u, v, 1, mode, max_len)
            if not ok:
                return False, (u, v)
        return True, None
    for u, v in pair_list:
        ok, _ = has_k_disjoint_rainbow_paths(g, c, u, v, k, mode, max_len)
        if not ok:
            return False, (u, v)
    return True, None


def satisfies_problem3(g, q_pairs, partial, chi, k):
    """Check the three clauses of the partial-extension decision problem.

    (i) the pre-colored partition is respected: each class monochromatic,
        the two classes differently colored (color identity does not matter);
    (ii) every pre-colored edge avoids both endpoint colors;
    (iii) every pair in Q is total-rainbow-k-connected under chi.
    """
    partial.check_within(g)
    qs = resolve_pairs(g, q_pairs, require_nonadjacent=True)
    chi.check_covers(g)
    class1 = {chi.edge_colors[e] for e in partial.e1}
    class2 = {chi.edge_colors[e] for e in partial.e2}
    if len(class1) > 1 or len(class2) > 1:
        return False
    if class1 and class2 and class1 == class2:
        return False
    for e in partial.edges:
        u, v = e
        if chi.edge_colors[e] in (chi.vertex_color(u), chi.vertex_color(v)):
            return False
    ok, _ = is_rainbow_k_connected(g, chi, k, Mode.TOTAL, qs)
    return ok
