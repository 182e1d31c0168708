import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from totalrainbow.coloring import ColoringError, Mode, TotalColoring
from totalrainbow.graphs import GraphError, build_graph
from totalrainbow.verify import (
    enumerate_rainbow_paths,
    has_k_disjoint_rainbow_paths,
    is_rainbow_k_connected,
    is_rainbow_path,
    max_rainbow_path_length,
    resolve_pairs,
)

from corpus import connected_graphs_upto_iso


def path_graph(n):
    labels = [f"p{i}" for i in range(n)]
    return build_graph(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def random_coloring(g, t, rng):
    return TotalColoring(
        t,
        {v: rng.randrange(t) for v in g.vertices},
        {e: rng.randrange(t) for e in g.edges},
    )


def test_max_rainbow_path_length_table():
    # a total rainbow path of L edges uses 2L-1 distinct colors
    assert max_rainbow_path_length(1, Mode.TOTAL) == 1
    assert max_rainbow_path_length(3, Mode.TOTAL) == 2
    assert max_rainbow_path_length(5, Mode.TOTAL) == 3
    assert max_rainbow_path_length(4, Mode.EDGE) == 4
    assert max_rainbow_path_length(2, Mode.VERTEX) == 3


def test_single_edge_is_always_total_rainbow():
    g = path_graph(2)
    c = TotalColoring(1, {"p0": 0, "p1": 0}, {("p0", "p1"): 0})
    assert is_rainbow_path(g, c, ["p0", "p1"], Mode.TOTAL)


def test_internal_elements_must_differ():
    g = path_graph(3)
    same = TotalColoring(2, {v: 0 for v in g.vertices}, {e: 1 for e in g.edges})
    # both edges color 1 -> not rainbow in any mode that sees edges
    assert not is_rainbow_path(g, same, ["p0", "p1", "p2"], Mode.TOTAL)
    assert not is_rainbow_path(g, same, ["p0", "p1", "p2"], Mode.EDGE)
    # vertex mode only looks at the internal vertex
    assert is_rainbow_path(g, same, ["p0", "p1", "p2"], Mode.VERTEX)
    # internal vertex p1 clashes with the second edge
    clash = TotalColoring(3, {"p0": 2, "p1": 1, "p2": 2},
                          {("p0", "p1"): 0, ("p1", "p2"): 1})
    assert not is_rainbow_path(g, clash, ["p0", "p1", "p2"], Mode.TOTAL)
    assert is_rainbow_path(g, clash, ["p0", "p1", "p2"], Mode.EDGE)
    ok = TotalColoring(3, {"p0": 0, "p1": 2, "p2": 0},
                       {("p0", "p1"): 0, ("p1", "p2"): 1})
    assert is_rainbow_path(g, ok, ["p0", "p1", "p2"], Mode.TOTAL)


def test_endpoint_colors_do_not_matter():
    g = path_graph(3)
    c = TotalColoring(3, {"p0": 1, "p1": 2, "p2": 1},
                      {("p0", "p1"): 1, ("p1", "p2"): 0})
    # p0 and the first edge share color 1, but p0 is an endpoint
    assert is_rainbow_path(g, c, ["p0", "p1", "p2"], Mode.TOTAL)


def test_rejects_non_paths():
    g = path_graph(3)
    c = TotalColoring(3, {v: 0 for v in g.vertices}, {e: 1 for e in g.edges})
    with pytest.raises(GraphError):
        is_rainbow_path(g, c, ["p0", "p2"], Mode.TOTAL)
    with pytest.raises(GraphError):
        is_rainbow_path(g, c, ["p0", "p1", "p0"], Mode.TOTAL)
    with pytest.raises(GraphError):
        is_rainbow_path(g, c, ["p0"], Mode.TOTAL)


def test_resolve_pairs():
    g = path_graph(3)
    assert resolve_pairs(g, None) == [("p0", "p1"), ("p0", "p2"), ("p1", "p2")]
    assert resolve_pairs(g, [("p2", "p0")]) == [("p0", "p2")]
    with pytest.raises(GraphError):
        resolve_pairs(g, [("p0", "p1")], require_nonadjacent=True)


def _graphs():
    return [g for g in connected_graphs_upto_iso(5) if g.n >= 2]


def test_total_rainbow_implies_edge_and_vertex_rainbow():
    rng = random.Random(7)
    for g in _graphs():
        c = random_coloring(g, 3, rng)
        for u, v in g.all_pairs():
            for path in enumerate_rainbow_paths(g, c, u, v, Mode.TOTAL, g.n - 1):
                assert is_rainbow_path(g, c, path, Mode.EDGE)
                assert is_rainbow_path(g, c, path, Mode.VERTEX)


def test_palette3_total_witnesses_have_length_at_most_2():
    rng = random.Random(11)
    for g in _graphs():
        c = random_coloring(g, 3, rng)
        for u, v in g.all_pairs():
            ok, paths = has_k_disjoint_rainbow_paths(g, c, u, v, 1, Mode.TOTAL)
            if ok:
                assert all(len(p) - 1 <= 2 for p in paths)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 30), st.integers(2, 5), st.integers(1, 4))
def test_color_permutation_invariance(seed, n, t):
    rng = random.Random(seed)
    slots = list(combinations(range(n), 2))
    labels = [chr(ord("a") + i) for i in range(n)]
    edges = {(labels[i], labels[j]) for i, j in slots if rng.random() < 0.7}
    edges |= {(labels[i], labels[i + 1]) for i in range(n - 1)}  # keep connected
    g = build_graph(labels, sorted(edges))
    c = random_coloring(g, t, rng)
    perm = list(range(t))
    rng.shuffle(perm)
    c2 = c.permuted({i: perm[i] for i in range(t)})
    for k in (1, 2):
        for mode in Mode:
            assert is_rainbow_k_connected(g, c, k, mode) == \
                is_rainbow_k_connected(g, c2, k, mode)


def _oracle_has_k_disjoint(g, c, u, v, k, mode):
    # brute force: all simple rainbow paths, then exact set packing
    max_len = max_rainbow_path_length(c.palette, mode)
    cands = []

    def extend(w, visited, path):
        if len(path) - 1 > max_len:
            return
        if w == v:
            if is_rainbow_path(g, c, path, mode):
                cands.append(frozenset(path[1:-1]))
            return
        for z in g.neighbors(w):
            if z == v or z not in visited:
                extend(z, visited | {z}, path + [z])

    extend(u, {u}, [u])

    def pack(start, occupied, need):
        if need == 0:
            return True
        return any(not (cands[i] & occupied)
                   and pack(i + 1, occupied | cands[i], need - 1)
                   for i in range(start, len(cands)))

    return pack(0, frozenset(), k)


def test_disjoint_rainbow_paths_match_bruteforce():
    rng = random.Random(3)
    for g in _graphs():
        for t in (2, 3):
            c = random_coloring(g, t, rng)
            for u, v in g.all_pairs():
                for k in (1, 2):
                    got, paths = has_k_disjoint_rainbow_paths(g, c, u, v, k, Mode.TOTAL)
                    assert got == _oracle_has_k_disjoint(g, c, u, v, k, Mode.TOTAL)
                    if got:
                        # returned witnesses really are internally disjoint
                        seen = set()
                        for p in paths:
                            assert is_rainbow_path(g, c, p, Mode.TOTAL)
                            inner = set(p[1:-1])
                            assert not (inner & seen)
                            seen |= inner


def test_is_rainbow_k_connected_reports_failing_pair():
    g = path_graph(4)
    c = TotalColoring(2, {v: 0 for v in g.vertices}, {e: 0 for e in g.edges})
    ok, failing = is_rainbow_k_connected(g, c, 1, Mode.TOTAL)
    assert not ok and failing is not None
    u, v = failing
    assert not has_k_disjoint_rainbow_paths(g, c, u, v, 1, Mode.TOTAL)[0]
