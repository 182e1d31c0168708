"""Exact decision and optimization for rainbow connection parameters.

One backtracking engine (`decide_colorable`) serves Problems 1-3: it colors
the mode-relevant elements, breaks color symmetry, and prunes a branch as
soon as some required pair can no longer be given k internally disjoint
rainbow candidate paths. Budgets turn into an explicit "exhausted" outcome,
never a wrong answer.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .coloring import Mode, TotalColoring
from .graphs import GraphError, diameter, is_complete, vertex_connectivity
from .verify import (
    is_rainbow_k_connected,
    max_rainbow_path_length,
    resolve_pairs,
    satisfies_problem3,
)

FOUND = "found"
IMPOSSIBLE = "impossible"
EXHAUSTED = "exhausted"


@dataclass
class Budget:
    """Search limits. Exceeding either yields an EXHAUSTED outcome."""

    max_ms: float | None = None
    max_nodes: int | None = None


@dataclass
class SolveOutcome:
    status: str
    coloring: TotalColoring | None
    nodes: int
    elapsed_ms: float

    @property
    def found(self):
        return self.status == FOUND

    def to_json(self, bounds=None):
        data = {
            "status": self.status,
            "coloring": self.coloring.to_json() if self.coloring else None,
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if bounds is not None:
            data["bounds"] = bounds.to_json()
        return data


@dataclass
class ParamOutcome:
    """Result of a connection-number computation.

    When the budget runs out, ``lower`` is the first palette size that was
    not decided, bracketing the true value in [lower, inf).
    """

    status: str
    value: int | None
    witness: TotalColoring | None
    nodes: int
    elapsed_ms: float
    lower: int

    def to_json(self):
        return {
            "status": self.status,
            "value": self.value,
            "witness": self.witness.to_json() if self.witness else None,
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "lower": self.lower,
        }


@dataclass
class BoundsReport:
    """Lower bounds on trc_k from diameter, completeness, and rc_k/rvc_k."""

    k: int
    diameter: int
    is_complete: bool
    lb_diam: int
    lb_noncomplete: int | None
    rc_k: int | None = None
    rvc_k: int | None = None
    pinned_trc: int | None = None
    lower_bound: int = 1

    def to_json(self):
        return {
            "k": self.k,
            "diameter": self.diameter,
            "is_complete": self.is_complete,
            "lb_diam": self.lb_diam,
            "lb_noncomplete": self.lb_noncomplete,
            "rc_k": self.rc_k,
            "rvc_k": self.rvc_k,
            "pinned_trc": self.pinned_trc,
            "lower_bound": self.lower_bound,
        }


class _BudgetStop(Exception):
    pass


def _simple_paths_upto(g, u, v, max_len):
    """All simple u-v paths of <= max_len edges, lexicographic order."""
    out = []
    path = [u]
    on_path = {u}

    def extend(w, depth):
        for z in g.neighbors(w):
            if z in on_path:
                continue
            path.append(z)
            if z == v:
                out.append(tuple(path))
            elif depth + 1 < max_len:
                on_path.add(z)
                extend(z, depth + 1)
                on_path.discard(z)
            path.pop()

    extend(u, 0)
    return out


def _can_pack(internals, k):
    """True iff k of the internal-vertex sets are pairwise disjoint."""

    def search(start, occupied, need):
        if need == 0:
            return True
        if len(internals) - start < need:
            return False
        for i in range(start, len(internals)):
            s = internals[i]
            if occupied & s:
                continue
            if search(i + 1, occupied | s, need - 1):
                return True
        return False

    return search(0, frozenset(), k)


class _Search:
    def __init__(self, g, k, t, mode, pair_list, frozen, budget, symmetry_breaking,
                 max_len, avoid_endpoint_edges):
        self.g = g
        self.k = k
        self.t = t
        self.mode = mode
        self.pair_list = pair_list
        self.budget = budget or Budget()
        self.symmetry_breaking = symmetry_breaking
        self.nodes = 0
        self.start = time.monotonic()

        # Mode-relevant elements, indexed.
        elems = []
        if mode is not Mode.VERTEX:
            elems.extend(("e", e) for e in g.sorted_edges())
        if mode is not Mode.EDGE:
            elems.extend(("v", v) for v in g.vertices)
        self.elems = elems
        self.elem_id = {e: i for i, e in enumerate(elems)}
        self.colors = [-1] * len(elems)

        # Candidate simple paths per pair, with mode-relevant element ids.
        self.pair_cands = []
        self.affected = [[] for _ in elems]
        for pi, (u, v) in enumerate(pair_list):
            cands = []
            for path in _simple_paths_upto(g, u, v, max_len):
                relevant = []
                if mode is not Mode.VERTEX:
                    for a, b in zip(path, path[1:]):
                        relevant.append(self.elem_id[("e", (a, b) if a < b else (b, a))])
                if mode is not Mode.EDGE:
                    for w in path[1:-1]:
                        relevant.append(self.elem_id[("v", w)])
                cands.append((tuple(relevant), frozenset(path[1:-1])))
            self.pair_cands.append(cands)
            for relevant, _ in cands:
                for eid in relevant:
                    for_pi = self.affected[eid]
                    if not for_pi or for_pi[-1] != pi:
                        for_pi.append(pi)

        # Endpoint-avoidance constraints (Problem 3 clause (ii)), TOTAL only.
        self.avoid = []
        if avoid_endpoint_edges and mode is Mode.TOTAL:
            for e in avoid_endpoint_edges:
                triple = (self.elem_id[("e", e)], self.elem_id[("v", e[0])],
                          self.elem_id[("v", e[1])])
                self.avoid.append(triple)
        self.avoid_by_elem = [[] for _ in elems]
        for triple in self.avoid:
            for eid in triple:
                self.avoid_by_elem[eid].append(triple)

        # Frozen assignments go first; the rest by constraint participation.
        self.frozen_ids = set()
        for elem, color in (frozen or {}).items():
            if elem not in self.elem_id:
                raise GraphError(f"frozen element {elem!r} is not in the graph")
            if not 0 <= color < t:
                raise GraphError(f"frozen color {color} outside palette 0..{t - 1}")
            eid = self.elem_id[elem]
            if eid in self.frozen_ids and self.colors[eid] != color:
                raise GraphError(f"conflicting frozen colors for {elem!r}")
            self.colors[eid] = color
            self.frozen_ids.add(eid)
        free = [i for i in range(len(elems)) if i not in self.frozen_ids]
        free.sort(key=lambda i: (-len(self.affected[i]), i))
        self.order = free

        frozen_colors = sorted({self.colors[i] for i in self.frozen_ids})
        self.frozen_colors = frozen_colors
        self.nonfrozen_colors = [c for c in range(t) if c not in frozen_colors]

    def _tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetStop
        if b.max_ms is not None and self.nodes % 256 == 0:
            if (time.monotonic() - self.start) * 1000.0 > b.max_ms:
                raise _BudgetStop

    def _pair_feasible(self, pi):
        colors = self.colors
        survivors = []
        for relevant, internal in self.pair_cands[pi]:
            seen = set()
            ok = True
            for eid in relevant:
                c = colors[eid]
                if c >= 0:
                    if c in seen:
                        ok = False
                        break
                    seen.add(c)
            if ok:
                survivors.append(internal)
        if len(survivors) < self.k:
            return False
        return _can_pack(survivors, self.k)

    def _consistent_after(self, eid):
        for triple in self.avoid_by_elem[eid]:
            e_id, u_id, v_id = triple
            ec = self.colors[e_id]
            if ec >= 0 and (ec == self.colors[u_id] or ec == self.colors[v_id]):
                return False
        for pi in self.affected[eid]:
            if not self._pair_feasible(pi):
                return False
        return True

    def run(self):
        # Root check: frozen colors and graph structure alone may already
        # rule the instance out.
        for eid in self.frozen_ids:
            if not self._consistent_after(eid):
                return IMPOSSIBLE, None
        for pi in range(len(self.pair_list)):
            if not self._pair_feasible(pi):
                return IMPOSSIBLE, None
        if self._backtrack(0, 0):
            return FOUND, list(self.colors)
        return IMPOSSIBLE, None

    def _allowed_colors(self, used_nonfrozen):
        if not self.symmetry_breaking:
            return range(self.t)
        limit = min(used_nonfrozen + 1, len(self.nonfrozen_colors))
        return sorted(self.frozen_colors + self.nonfrozen_colors[:limit])

    def _backtrack(self, pos, used_nonfrozen):
        if pos == len(self.order):
            return True
        eid = self.order[pos]
        nf_next = (self.nonfrozen_colors[used_nonfrozen]
                   if used_nonfrozen < len(self.nonfrozen_colors) else None)
        for color in self._allowed_colors(used_nonfrozen):
            self._tick()
            self.colors[eid] = color
            if self._consistent_after(eid):
                bump = 1 if color == nf_next else 0
                if self._backtrack(pos + 1, used_nonfrozen + bump):
                    return True
        self.colors[eid] = -1
        return False


def decide_colorable(g, k, t, mode, pairs=None, frozen=None, budget=None,
                     workers=1, symmetry_breaking=True, max_len_override=None,
                     avoid_endpoint_edges=None):
    """Search for a t-coloring making every required pair rainbow-k-connected.

    Returns a SolveOutcome; FOUND colorings are re-checked with the verifier
    before they are returned. ``frozen`` maps elements (("v", label) or
    ("e", (u, v))) to fixed colors; ``avoid_endpoint_edges`` additionally
    forbids those edges from sharing a color with either endpoint (Problem 3).
    """
    start = time.monotonic()
    if g.n < 2:
        raise GraphError("graph must have at least 2 vertices")
    if k < 1 or t < 1:
        raise ValueError("k and t must be >= 1")
    pair_list = resolve_pairs(g, pairs)
    max_len = max_len_override or max_rainbow_path_length(t, mode)
    max_len = min(max_len, g.n - 1)
    avoid = tuple(avoid_endpoint_edges or ())

    if workers > 1:
        return _decide_parallel(g, k, t, mode, pairs, frozen, budget, workers,
                                symmetry_breaking, max_len_override, avoid, start)

    search = _Search(g, k, t, mode, pair_list, frozen, budget, symmetry_breaking,
                     max_len, avoid)
    try:
        status, colors = search.run()
    except _BudgetStop:
        elapsed = (time.monotonic() - start) * 1000.0
        return SolveOutcome(EXHAUSTED, None, search.nodes, elapsed)
    elapsed = (time.monotonic() - start) * 1000.0
    if status != FOUND:
        return SolveOutcome(IMPOSSIBLE, None, search.nodes, elapsed)
    coloring = _colors_to_coloring(g, t, mode, search, colors)
    ok, failing = is_rainbow_k_connected(g, coloring, k, mode, pairs,
                                         max_len_override)
    if not ok:
        raise RuntimeError(f"solver soundness breach: found coloring fails pair {failing}")
    return SolveOutcome(FOUND, coloring, search.nodes, elapsed)


def _colors_to_coloring(g, t, mode, search, colors):
    vcols = {v: 0 for v in g.vertices}
    ecols = {e: 0 for e in g.edges}
    for elem, eid in search.elem_id.items():
        kind, ref = elem
        if kind == "v":
            vcols[ref] = colors[eid]
        else:
            ecols[ref] = colors[eid]
    return TotalColoring(t, vcols, ecols)


def _branch_worker(args):
    (g, k, t, mode, pairs, frozen, budget, symmetry_breaking,
     max_len_override, avoid) = args
    return decide_colorable(g, k, t, mode, pairs, frozen, budget, 1,
                            symmetry_breaking, max_len_override, avoid)


def _decide_parallel(g, k, t, mode, pairs, frozen, budget, workers,
                     symmetry_breaking, max_len_override, avoid, start):
    """Split the top-level branch set (first free element's colors) across
    processes. The decision is deterministic; the witness may differ from
    single-worker mode."""
    pair_list = resolve_pairs(g, pairs)
    max_len = max_len_override or max_rainbow_path_length(t, mode)
    probe = _Search(g, k, t, mode, pair_list, frozen, budget, symmetry_breaking,
                    min(max_len, g.n - 1), tuple(avoid))
    if not probe.order:
        return decide_colorable(g, k, t, mode, pairs, frozen, budget, 1,
                                symmetry_breaking, max_len_override, avoid)
    first = probe.elems[probe.order[0]]
    branch_colors = list(probe._allowed_colors(0))
    tasks = []
    for color in branch_colors:
        branch_frozen = dict(frozen or {})
        branch_frozen[first] = color
        tasks.append((g, k, t, mode, pairs, branch_frozen, budget,
                      symmetry_breaking, max_len_override, avoid))
    nodes = 0
    exhausted = False
    witness = None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for outcome in pool.map(_branch_worker, tasks):
            nodes += outcome.nodes
            if outcome.status == FOUND and witness is None:
                witness = outcome.coloring
            elif outcome.status == EXHAUSTED:
                exhausted = True
    elapsed = (time.monotonic() - start) * 1000.0
    if witness is not None:
        return SolveOutcome(FOUND, witness, nodes, elapsed)
    if exhausted:
        return SolveOutcome(EXHAUSTED, None, nodes, elapsed)
    return SolveOutcome(IMPOSSIBLE, None, nodes, elapsed)


def decide_subset_trc3(g, pairs, k, budget=None, workers=1):
    """Problem 2: is there a 3-total-coloring connecting every pair in P?"""
    pair_list = resolve_pairs(g, pairs, require_nonadjacent=True)
    return decide_colorable(g, k, 3, Mode.TOTAL, pair_list, budget=budget,
                            workers=workers)


def decide_extension(g, q_pairs, partial, k, budget=None, workers=1):
    """Problem 3: can the partial 2-edge-coloring extend to a 3-total-coloring?

    The two pre-color classes are frozen to 0 and 1 (lossless by palette
    permutation); pre-colored edges must avoid both endpoint colors.
    """
    partial.check_within(g)
    q_list = resolve_pairs(g, q_pairs, require_nonadjacent=True)
    frozen = {("e", e): 0 for e in partial.e1}
    frozen.update({("e", e): 1 for e in partial.e2})
    outcome = decide_colorable(g, k, 3, Mode.TOTAL, q_list, frozen=frozen,
                               budget=budget, workers=workers,
                               avoid_endpoint_edges=partial.edges)
    if outcome.found and not satisfies_problem3(g, q_list, partial, outcome.coloring, k):
        raise RuntimeError("solver soundness breach: extension fails Problem 3 checks")
    return outcome


def bounds_report(g, k, compute_rc_rvc=False, budget=None, workers=1):
    """Collect the known lower bounds on trc_k (and rc_k=2 / rvc_k>=2 pins)."""
    d = diameter(g)
    if d is None:
        raise GraphError("graph is disconnected")
    complete = is_complete(g)
    report = BoundsReport(
        k=k,
        diameter=d,
        is_complete=complete,
        lb_diam=max(1, 2 * d - 1),
        lb_noncomplete=None if complete else 3,
    )
    lb = max(1, report.lb_diam)
    if report.lb_noncomplete:
        lb = max(lb, report.lb_noncomplete)
    if complete and k == 1 and g.n >= 2:
        report.pinned_trc = 1
    if compute_rc_rvc:
        rc = connection_number(g, k, Mode.EDGE, budget=budget, workers=workers)
        rvc = connection_number(g, k, Mode.VERTEX, budget=budget, workers=workers)
        report.rc_k = rc.value
        report.rvc_k = rvc.value
        if rc.value is not None:
            lb = max(lb, rc.value)
            if rc.value == 2:
                report.pinned_trc = 3
                lb = max(lb, 3)
        if rvc.value is not None:
            lb = max(lb, rvc.value)
            if rvc.value >= 2:
                lb = max(lb, 5)
    report.lower_bound = lb
    return report


def connection_number(g, k, mode, budget=None, workers=1):
    """Smallest palette size whose decision problem is FOUND, scanning upward.

    TOTAL mode starts from the diameter/completeness lower bound; EDGE and
    VERTEX modes start at 1. Exact unless the budget runs out.
    """
    start = time.monotonic()
    if vertex_connectivity(g) < k:
        raise GraphError(f"k={k} exceeds the graph's connectivity")
    t0 = bounds_report(g, k).lower_bound if mode is Mode.TOTAL else 1
    cap = 0
    if mode is not Mode.VERTEX:
        cap += g.m
    if mode is not Mode.EDGE:
        cap += g.n
    nodes = 0
    for t in range(t0, cap + 1):
        rem = _remaining_budget(budget, start, nodes)
        if rem is EXHAUSTED:
            break
        outcome = decide_colorable(g, k, t, mode, budget=rem, workers=workers)
        nodes += outcome.nodes
        if outcome.status == FOUND:
            elapsed = (time.monotonic() - start) * 1000.0
            return ParamOutcome(FOUND, t, outcome.coloring, nodes, elapsed, t)
        if outcome.status == EXHAUSTED:
            break
    else:
        raise RuntimeError("no coloring found up to the all-distinct palette")
    elapsed = (time.monotonic() - start) * 1000.0
    return ParamOutcome(EXHAUSTED, None, None, nodes, elapsed, t)


def _remaining_budget(budget, start, used_nodes):
    if budget is None:
        return None
    rem_ms = rem_nodes = None
    if budget.max_ms is not None:
        rem_ms = budget.max_ms - (time.monotonic() - start) * 1000.0
        if rem_ms <= 0:
            return EXHAUSTED
    if budget.max_nodes is not None:
        rem_nodes = budget.max_nodes - used_nodes
        if rem_nodes <= 0:
            return EXHAUSTED
    return Budget(rem_ms, rem_nodes)


def trc_k(g, k, budget=None, workers=1):
    """Total rainbow k-connection number (exact at desk scale)."""
    return connection_number(g, k, Mode.TOTAL, budget, workers)


def rc_k(g, k, budget=None, workers=1):
    """Rainbow k-connection number (edge colors only)."""
    return connection_number(g, k, Mode.EDGE, budget, workers)


def rvc_k(g, k, budget=None, workers=1):
    """Rainbow vertex k-connection number (internal-vertex colors only)."""
    return connection_number(g, k, Mode.VERTEX, budget, workers)
