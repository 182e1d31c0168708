"""Acceptance suite: one test per criterion, so `pytest -v` prints one
pass/fail line for each. Runtime limits are asserted, not just observed."""

import itertools
import json
import random
import time

from totalrainbow.cli import run_roundtrip
from totalrainbow.cnf import CnfFormula, to_dimacs, parse_dimacs
from totalrainbow.coloring import Mode, TotalColoring
from totalrainbow.graphs import build_graph, diameter, graph_from_json, graph_to_json, is_complete
from totalrainbow.reductions import (
    ROLE_ORIGINAL,
    ReducedInstance,
    assignment_to_coloring,
    coloring_to_assignment,
    rainbow_clique_two_coloring,
    lift_coloring_p2_to_p1,
    lift_coloring_p3_to_p2,
    reduce_p2_to_p1,
    reduce_p3_to_p2,
    reduce_sat_to_p3,
    sat_to_trc3_chain,
)
from totalrainbow.solve import FOUND, decide_colorable, decide_extension, rc_k, rvc_k, trc_k
from totalrainbow.verify import is_rainbow_k_connected

from corpus import corpus


def rand_formula(rng, max_vars=3, max_clauses=2):
    n = rng.randint(1, max_vars)
    m = rng.randint(1, max_clauses)
    clauses = []
    for _ in range(m):
        signs = {}
        lits = []
        for _ in range(3):
            i = rng.randint(1, n)
            s = signs.setdefault(i, rng.choice((1, -1)))
            lits.append(s * i)
        clauses.append(tuple(lits))
    return CnfFormula(n, tuple(clauses))


def test_criterion_1_rainbow_clique_two_coloring():
    start = time.monotonic()
    for k in (1, 2, 3):
        g, c = rainbow_clique_two_coloring(k)
        assert g.n == (k + 1) ** 2
        for v in g.vertices:
            incident = [c.edge_color(v, w) for w in g.neighbors(v)]
            assert incident.count(0) == 2 * k
            assert incident.count(1) == k * k
        ok, failing = is_rainbow_k_connected(g, c, k, Mode.EDGE)
        assert ok, failing
    assert time.monotonic() - start < 10


def test_criterion_2_first_principles_facts_on_corpus():
    start = time.monotonic()
    for k, graphs in ((1, corpus(5, 1)), (2, corpus(5, 2))):
        for g in graphs:
            trc = trc_k(g, k)
            rc = rc_k(g, k)
            rvc = rvc_k(g, k)
            assert trc.status == rc.status == rvc.status == FOUND
            d = diameter(g)
            assert trc.value >= 2 * d - 1, sorted(g.edges)
            assert trc.value >= max(rc.value, rvc.value), sorted(g.edges)
            if rc.value == 2:
                assert trc.value == 3, sorted(g.edges)
            if rvc.value >= 2:
                assert trc.value >= 5, sorted(g.edges)
            if k == 1:
                assert (trc.value == 1) == is_complete(g), sorted(g.edges)
    assert time.monotonic() - start < 600


def _naive_trc1(g, max_palette=5):
    elems = list(g.vertices) + sorted(g.edges)
    for t in range(1, max_palette + 1):
        for combo in itertools.product(range(t), repeat=len(elems)):
            c = TotalColoring(t, dict(zip(g.vertices, combo)),
                              dict(zip(sorted(g.edges), combo[g.n:])))
            if is_rainbow_k_connected(g, c, 1, Mode.TOTAL)[0]:
                return t
    return None


def test_criterion_3_solver_matches_naive_enumeration():
    for g in corpus(4, 1):
        assert trc_k(g, 1).value == _naive_trc1(g), sorted(g.edges)


def test_criterion_4_derived_values():
    p3 = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    c4 = build_graph(["a", "b", "c", "d"],
                     [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    assert trc_k(p3, 1).value == 3
    assert trc_k(c4, 1).value == 3
    # both disjoint a-c paths have 5 elements; 4 colors cannot keep one rainbow
    assert decide_colorable(c4, 2, 4, Mode.TOTAL).status == "impossible"


def test_criterion_5_sat_roundtrip_agreement():
    start = time.monotonic()
    rng = random.Random(2026)
    checked = 0
    for _ in range(200):
        phi = rand_formula(rng)
        sat = phi.is_satisfiable()
        for k in (1, 2):
            p3 = reduce_sat_to_p3(phi, k)
            out = decide_extension(p3.graph, list(p3.pairs), p3.partial, k)
            assert out.status in ("found", "impossible")
            assert (out.status == FOUND) == sat, to_dimacs(phi)
            if out.status == FOUND:
                extracted = coloring_to_assignment(p3, out.coloring)
                assert phi.evaluate(extracted.values), to_dimacs(phi)
            checked += 1
    assert checked >= 200
    assert time.monotonic() - start < 300


def test_criterion_6_forward_witness_verification_at_scale():
    # family mix keeps the composed instances within verification reach
    families = [(1, 1)] * 6 + [(1, 2)] * 5 + [(2, 1)] * 5 + [(3, 1)] * 3 + [(2, 2)]
    rng = random.Random(77)
    done = 0
    for n, m in families:
        while True:
            phi = rand_formula(rng, max_vars=n, max_clauses=m)
            if phi.num_vars == n and phi.num_clauses == m and phi.is_satisfiable():
                break
        values = phi.satisfying_assignment()
        p3 = reduce_sat_to_p3(phi, 1)
        chi = assignment_to_coloring(p3, values)
        p2 = reduce_p3_to_p2(p3.graph, list(p3.pairs), p3.partial, 1)
        lifted2 = lift_coloring_p3_to_p2(p2, chi)  # verifies P pairs, raises on failure
        ok, failing = is_rainbow_k_connected(p2.graph, lifted2, 1, Mode.TOTAL,
                                             list(p2.pairs))
        assert ok, ("reduction falsifier at p2", to_dimacs(phi), failing)
        p1 = reduce_p2_to_p1(p2.graph, list(p2.pairs), 1)
        lifted1 = lift_coloring_p2_to_p1(p1, lifted2, verify_output=False)
        ok, failing = is_rainbow_k_connected(p1.graph, lifted1, 1, Mode.TOTAL)
        assert ok, ("reduction falsifier at p1", to_dimacs(phi), failing)
        done += 1
    assert done == 20


def test_criterion_7_structural_gadget_invariants():
    rng = random.Random(4242)
    # closed-form counts of the clause-gadget stage on 100 random formulas
    for _ in range(100):
        phi = rand_formula(rng)
        k = rng.randint(1, 2)
        p3 = reduce_sat_to_p3(phi, k)
        p2 = reduce_p3_to_p2(p3.graph, list(p3.pairs), p3.partial, k)
        n_pre = len(p3.partial.edges)
        assert len(p2.pairs) == len(p3.pairs) + 1 + 10 * n_pre
        assert p2.graph.n == p3.graph.n + 3 + 6 * n_pre + \
            (k - 1) * (1 + 10 * n_pre)
    # counts and shortcut-freeness of the pair-completion stage on 100
    # random subset instances (composing both stages at k=2 would produce
    # graphs with ~10^9 edges; the invariants are per-stage properties)
    for _ in range(100):
        n = rng.randint(3, 7)
        labels = [f"v{i}" for i in range(n)]
        edges = {(labels[i], labels[i + 1]) for i in range(n - 1)}
        edges |= {(labels[i], labels[j])
                  for i in range(n) for j in range(i + 2, n)
                  if rng.random() < 0.3}
        g = build_graph(labels, sorted(edges))
        pool = [p for p in g.all_pairs() if not g.has_edge(*p)]
        if not pool:
            continue
        pairs = rng.sample(pool, rng.randint(1, len(pool)))
        k = rng.randint(1, 2)
        p1 = reduce_p2_to_p1(g, pairs, k)
        non_pairs = g.n * (g.n - 1) // 2 - len(set(pairs))
        assert p1.graph.n == g.n + (k + 1) ** 2 * (g.n + non_pairs)
        # shortcut-freeness: designated pairs gain no new common neighbors
        originals = {v for v, r in p1.roles.items() if r == ROLE_ORIGINAL}
        for u, v in p1.source_pairs:
            common = set(p1.graph.neighbors(u)) & set(p1.graph.neighbors(v))
            assert common <= originals, (u, v)


def test_criterion_8_serialization_roundtrips():
    g = build_graph(list("abcd"),
                    [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
    gt = json.dumps(graph_to_json(g), sort_keys=True)
    assert json.dumps(graph_to_json(graph_from_json(json.loads(gt))),
                      sort_keys=True) == gt

    out = decide_colorable(g, 1, 3, Mode.TOTAL)
    ct = json.dumps(out.coloring.to_json(), sort_keys=True)
    assert json.dumps(TotalColoring.from_json(json.loads(ct)).to_json(),
                      sort_keys=True) == ct

    phi = parse_dimacs("p cnf 2 2\n1 2 2 0\n-1 -1 2 0\n")
    assert parse_dimacs(to_dimacs(phi)) == phi
    for inst in sat_to_trc3_chain(phi, 1):
        bt = json.dumps(inst.to_json(), sort_keys=True)
        assert json.dumps(ReducedInstance.from_json(json.loads(bt)).to_json(),
                          sort_keys=True) == bt
