"""Shared test corpus: connected graphs on <= 5 vertices, one per
isomorphism class. All quantities under test are isomorphism-invariant."""

from itertools import combinations, permutations

from totalrainbow.graphs import build_graph, is_connected, vertex_connectivity

LABELS = "abcde"


def _canonical(n, edges):
    # min over all relabelings of the sorted edge tuple
    best = None
    for perm in permutations(range(n)):
        relabeled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or relabeled < best:
            best = relabeled
    return best


def connected_graphs_upto_iso(max_n=5):
    """Yields one Graph per isomorphism class, smallest order first."""
    for n in range(1, max_n + 1):
        seen = set()
        slots = list(combinations(range(n), 2))
        for mask in range(1 << len(slots)):
            edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
            labels = [LABELS[i] for i in range(n)]
            g = build_graph(labels, [(LABELS[u], LABELS[v]) for u, v in edges])
            if not is_connected(g):
                continue
            canon = _canonical(n, edges)
            if canon in seen:
                continue
            seen.add(canon)
            yield g


def corpus(max_n=5, min_connectivity=1):
    # K1 has no vertex pairs, so it never appears here.
    return [g for g in connected_graphs_upto_iso(max_n)
            if g.n >= 2 and vertex_connectivity(g) >= min_connectivity]
