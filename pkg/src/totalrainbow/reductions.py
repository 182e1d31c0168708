"""Gadget constructions: the 2-colored clique, and the reduction chain
3-SAT -> partial-extension (P3) -> subset (P2) -> full (P1), with forward
witness colorings and backward witness extraction.

Every lift/restrict verifies its output mechanically. A verification failure
in a construction is raised as ReductionFalsified - loudly,
because it would contradict the construction's correctness argument.
"""

from itertools import combinations

from .cnf import Assignment, CnfFormula
from .coloring import Mode, PartialEdgeColoring, TotalColoring
from .graphs import Graph, build_graph, edge_key, graph_from_json, graph_to_json, pair_key
from .verify import is_rainbow_k_connected, resolve_pairs, satisfies_problem3


class ReductionError(ValueError):
    """Invalid input to a reduction or a failed precondition."""


class ReductionFalsified(RuntimeError):
    """A construction's verified postcondition failed: a reduction falsifier."""


ROLE_ORIGINAL = "original"
ROLE_S = "s"
ROLE_CLAUSE = "clause"
ROLE_CLAUSE_HELPER = "clause-helper"
ROLE_VARIABLE = "variable"
ROLE_HUB = "hub"
ROLE_B1 = "b1"
ROLE_B2 = "b2"
ROLE_C_GADGET = "c-gadget"
ROLE_D_GADGET = "d-gadget"
ROLE_F_GADGET = "f-gadget"
ROLE_PAIR_HELPER = "pair-helper"
ROLE_VERTEX_GADGET = "vertex-gadget"
ROLE_PAIR_GADGET = "pair-gadget"


class ReducedInstance:
    """A reduction output: graph, pair set, roles, and provenance.

    ``pairs`` is None for Problem 1 instances (the pair universe is all
    pairs). ``source_pairs``/``source_partial`` retain the input-side data a
    lift needs; ``cnf`` is kept on SAT-derived instances so extracted
    assignments can be checked against the formula.
    """

    def __init__(self, graph, pairs, partial, roles, provenance, k, stage,
                 cnf=None, source_pairs=None, source_partial=None):
        self.graph = graph
        self.pairs = tuple(pairs) if pairs is not None else None
        self.partial = partial
        self.roles = dict(roles)
        self.provenance = dict(provenance)
        self.k = k
        self.stage = stage
        self.cnf = cnf
        self.source_pairs = tuple(source_pairs) if source_pairs is not None else None
        self.source_partial = source_partial
        for v in graph.vertices:
            if v not in self.roles:
                raise ReductionError(f"vertex {v!r} has no role")

    def source_graph(self):
        """The input graph, as the role-original induced subgraph."""
        vs = [v for v in self.graph.vertices if self.roles[v] == ROLE_ORIGINAL]
        keep = set(vs)
        es = [e for e in self.graph.sorted_edges() if e[0] in keep and e[1] in keep]
        return build_graph(vs, es)

    def to_json(self):
        return {
            "graph": graph_to_json(self.graph),
            "pairs": [list(p) for p in self.pairs] if self.pairs is not None else None,
            "partial": self.partial.to_json() if self.partial else None,
            "roles": dict(sorted(self.roles.items())),
            "provenance": dict(sorted(self.provenance.items())),
            "k": self.k,
            "stage": self.stage,
            "cnf": {"num_vars": self.cnf.num_vars,
                    "clauses": [list(c) for c in self.cnf.clauses]} if self.cnf else None,
            "source_pairs": ([list(p) for p in self.source_pairs]
                             if self.source_pairs is not None else None),
            "source_partial": (self.source_partial.to_json()
                               if self.source_partial else None),
        }

    @staticmethod
    def from_json(data):
        cnf = None
        if data.get("cnf"):
            cnf = CnfFormula(data["cnf"]["num_vars"],
                             tuple(tuple(c) for c in data["cnf"]["clauses"]))
        return ReducedInstance(
            graph=graph_from_json(data["graph"]),
            pairs=[tuple(p) for p in data["pairs"]] if data.get("pairs") is not None else None,
            partial=PartialEdgeColoring.from_json(data["partial"]) if data.get("partial") else None,
            roles=data["roles"],
            provenance=data.get("provenance", {}),
            k=data["k"],
            stage=data["stage"],
            cnf=cnf,
            source_pairs=([tuple(p) for p in data["source_pairs"]]
                          if data.get("source_pairs") is not None else None),
            source_partial=(PartialEdgeColoring.from_json(data["source_partial"])
                            if data.get("source_partial") else None),
        )


# ---------------------------------------------------------------------------
# The 2-colored clique K_{(k+1)^2}

def _clique_pattern_colors(labels, k):
    """Two-color edge pattern for a clique on (k+1)^2 ordered labels.

    Position p maps to (group, slot) = divmod(p, k+1); an edge gets color 0
    when its ends share a group or a slot, color 1 otherwise.
    """
    side = k + 1
    pos = {lab: divmod(p, side) for p, lab in enumerate(labels)}
    colors = {}
    for a, b in combinations(labels, 2):
        (gi, si), (gj, sj) = pos[a], pos[b]
        colors[edge_key(a, b)] = 0 if (gi == gj or si == sj) else 1
    return colors


def rainbow_clique_two_coloring(k):
    """Complete graph on (k+1)^2 vertices with the rainbow-k-connecting
    2-edge-coloring: every vertex sees 2k color-0 and k^2 color-1 edges."""
    if k < 1:
        raise ReductionError("k must be >= 1")
    side = k + 1
    labels = [f"v({i},{l})" for i in range(1, side + 1) for l in range(1, side + 1)]
    g = build_graph(labels, combinations(labels, 2))
    ecols = _clique_pattern_colors(labels, k)
    coloring = TotalColoring(2, {v: 0 for v in labels}, ecols)
    return g, coloring


# ---------------------------------------------------------------------------
# Problem 2 -> Problem 1

def _p1_parts(g, p_list, k):
    """Gadget vertex groups for the subset-to-full construction."""
    size = (k + 1) ** 2
    p_set = set(p_list)
    non_pairs = [pair_key(u, v) for u, v in g.all_pairs() if pair_key(u, v) not in p_set]
    vertex_gadgets = {v: [f"x({v},{i})" for i in range(1, size + 1)] for v in g.vertices}
    pair_gadgets = {p: [f"x({p[0]},{p[1]},{i})" for i in range(1, size + 1)]
                    for p in non_pairs}
    return non_pairs, vertex_gadgets, pair_gadgets


def reduce_p2_to_p1(g, pairs, k):
    """Build the Problem 1 instance whose full rainbow-k-connectivity is
    equivalent to connecting the pairs of P in g."""
    if k < 1:
        raise ReductionError("k must be >= 1")
    if g.n < 2:
        raise ReductionError("P must be nonempty pairs over a graph with >= 2 vertices")
    p_list = resolve_pairs(g, pairs, require_nonadjacent=True)
    if not p_list:
        raise ReductionError("P must be nonempty")
    non_pairs, vertex_gadgets, pair_gadgets = _p1_parts(g, p_list, k)

    vertices = list(g.vertices)
    roles = {v: ROLE_ORIGINAL for v in g.vertices}
    provenance = {v: "source" for v in g.vertices}
    new_vertices = []
    for v in g.vertices:
        for x in vertex_gadgets[v]:
            roles[x] = ROLE_VERTEX_GADGET
        new_vertices.extend(vertex_gadgets[v])
    for p in non_pairs:
        for x in pair_gadgets[p]:
            roles[x] = ROLE_PAIR_GADGET
        new_vertices.extend(pair_gadgets[p])
    for x in new_vertices:
        provenance[x] = "p1"
    vertices.extend(new_vertices)

    edges = list(g.sorted_edges())
    for v in g.vertices:
        edges.extend(edge_key(v, x) for x in vertex_gadgets[v])
    for (u, v), gadget in pair_gadgets.items():
        for x in gadget:
            edges.append(edge_key(u, x))
            edges.append(edge_key(v, x))
    edges.extend(combinations(new_vertices, 2))

    graph = build_graph(vertices, edges)
    return ReducedInstance(graph, None, None, roles, provenance, k, "p1",
                           source_pairs=p_list)


def lift_coloring_p2_to_p1(inst, chi_g, verify_output=True):
    """Extend a P-connecting 3-total-coloring of g to the full instance."""
    if inst.stage != "p1":
        raise ReductionError(f"expected a p1-stage instance, got {inst.stage!r}")
    g = inst.source_graph()
    k = inst.k
    p_list = list(inst.source_pairs)
    chi = _as_palette3(chi_g, g)
    ok, failing = is_rainbow_k_connected(g, chi, k, Mode.TOTAL, p_list)
    if not ok:
        raise ReductionError(f"input coloring fails to connect pair {failing}")

    non_pairs, vertex_gadgets, pair_gadgets = _p1_parts(g, p_list, k)
    vcols = dict(chi.vertex_colors)
    ecols = dict(chi.edge_colors)
    all_gadgets = list(vertex_gadgets.values()) + list(pair_gadgets.values())
    for gadget in all_gadgets:
        for x in gadget:
            vcols[x] = 2
        ecols.update(_clique_pattern_colors(gadget, k))
    for v, gadget in vertex_gadgets.items():
        for x in gadget:
            ecols[edge_key(v, x)] = 1
    for (u, v), gadget in pair_gadgets.items():
        for x in gadget:  # canonical orientation: u < v
            ecols[edge_key(u, x)] = 0
            ecols[edge_key(v, x)] = 1
    for e in inst.graph.edges:  # inter-gadget clique edges
        if e not in ecols:
            ecols[e] = 0
    lifted = TotalColoring(3, vcols, ecols)
    lifted.check_covers(inst.graph)
    if verify_output:
        ok, failing = is_rainbow_k_connected(inst.graph, lifted, k, Mode.TOTAL)
        if not ok:
            raise ReductionFalsified(
                f"lifted coloring fails pair {failing}: subset-to-full reduction falsified")
    return lifted


def restrict_coloring_p1_to_p2(inst, chi_p, check_input=True):
    """Restrict a full-instance coloring back to g; verifies that the P
    pairs stay connected (anything else falsifies the reduction)."""
    if inst.stage != "p1":
        raise ReductionError(f"expected a p1-stage instance, got {inst.stage!r}")
    chi_p.check_covers(inst.graph)
    if check_input:
        ok, failing = is_rainbow_k_connected(inst.graph, chi_p, inst.k, Mode.TOTAL)
        if not ok:
            raise ReductionError(f"input coloring fails pair {failing} on the full instance")
    g = inst.source_graph()
    restricted = TotalColoring(
        chi_p.palette,
        {v: chi_p.vertex_colors[v] for v in g.vertices},
        {e: chi_p.edge_colors[e] for e in g.edges},
    )
    ok, failing = is_rainbow_k_connected(g, restricted, inst.k, Mode.TOTAL,
                                         list(inst.source_pairs))
    if not ok:
        raise ReductionFalsified(
            f"restricted coloring fails pair {failing}: subset-to-full reduction falsified")
    return restricted


# ---------------------------------------------------------------------------
# Problem 3 -> Problem 2

def _p2_names(e):
    u, v = e
    return {(j, "c"): f"c^{j}({u},{v})" for j in (1, 2)} | \
           {(j, "d"): f"d^{j}({u},{v})" for j in (1, 2)} | \
           {(j, "f"): f"f^{j}({u},{v})" for j in (1, 2)}


def reduce_p3_to_p2(g, q_pairs, partial, k):
    """Build the Problem 2 instance that forces any P-connecting coloring to
    respect the pre-colored partition of the Problem 3 input."""
    if k < 1:
        raise ReductionError("k must be >= 1")
    partial.check_within(g)
    q_list = resolve_pairs(g, q_pairs, require_nonadjacent=True)
    for e in partial.edges:
        partial.labeled_ends(e)  # raises when the labeling is missing

    vertices = list(g.vertices)
    roles = {v: ROLE_ORIGINAL for v in g.vertices}
    provenance = {v: "source" for v in g.vertices}
    new = []

    def add_vertex(label, role):
        new.append(label)
        roles[label] = role
        provenance[label] = "p2"

    add_vertex("c", ROLE_HUB)
    add_vertex("b1", ROLE_B1)
    add_vertex("b2", ROLE_B2)
    edges = list(g.sorted_edges())
    edges.append(edge_key("b1", "c"))
    edges.append(edge_key("b2", "c"))

    pair_set = list(q_list)
    pair_set.append(pair_key("b1", "b2"))
    for class_idx, class_edges in ((1, partial.e1), (2, partial.e2)):
        b_label = f"b{class_idx}"
        for e in class_edges:
            names = _p2_names(e)
            ends = partial.labeled_ends(e)
            for j in (1, 2):
                c_j, d_j, f_j = names[(j, "c")], names[(j, "d")], names[(j, "f")]
                add_vertex(c_j, ROLE_C_GADGET)
                add_vertex(d_j, ROLE_D_GADGET)
                add_vertex(f_j, ROLE_F_GADGET)
                e_j, e_other = ends[j - 1], ends[2 - j]
                edges.append(edge_key("c", c_j))
                edges.append(edge_key(c_j, f_j))
                edges.append(edge_key(c_j, e_j))
                edges.append(edge_key(d_j, e_j))
                pair_set.append(pair_key(b_label, c_j))
                pair_set.append(pair_key(f_j, "c"))
                pair_set.append(pair_key(f_j, e_j))
                pair_set.append(pair_key(d_j, c_j))
                pair_set.append(pair_key(d_j, e_other))

    if k >= 2:
        q_set = set(q_list)
        for (u, v) in [p for p in pair_set if p not in q_set]:
            for t in range(2, k + 1):
                lab = f"g({u},{v},{t})"
                add_vertex(lab, ROLE_PAIR_HELPER)
                edges.append(edge_key(u, lab))
                edges.append(edge_key(v, lab))

    vertices.extend(new)
    graph = build_graph(vertices, edges)
    for u, v in pair_set:
        if graph.has_edge(u, v):
            raise ReductionError(f"constructed pair {(u, v)!r} is adjacent")
    return ReducedInstance(graph, pair_set, None, roles, provenance, k, "p2",
                           source_pairs=q_list, source_partial=partial)


def lift_coloring_p3_to_p2(inst, chi, verify_output=True):
    """Extend a Problem-3 witness (with E1 colored 0, E2 colored 1) to a
    coloring connecting every constructed pair."""
    if inst.stage != "p2":
        raise ReductionError(f"expected a p2-stage instance, got {inst.stage!r}")
    g = inst.source_graph()
    partial = inst.source_partial
    k = inst.k
    chi = _as_palette3(chi, g)
    if not satisfies_problem3(g, list(inst.source_pairs), partial, chi, k):
        raise ReductionError("input coloring does not satisfy the Problem 3 conditions")
    if any(chi.edge_colors[e] != 0 for e in partial.e1) or \
       any(chi.edge_colors[e] != 1 for e in partial.e2):
        raise ReductionError("input coloring must color E1 with 0 and E2 with 1")

    vcols = dict(chi.vertex_colors)
    ecols = dict(chi.edge_colors)
    for v in inst.graph.vertices:
        if v not in vcols:
            vcols[v] = 2
    ecols[edge_key("b1", "c")] = 1
    ecols[edge_key("b2", "c")] = 0
    for base, class_edges, d_choices in ((0, partial.e1, (1, 2)), (1, partial.e2, (0, 2))):
        for e in class_edges:
            names = _p2_names(e)
            ends = partial.labeled_ends(e)
            for j in (1, 2):
                c_j, d_j, f_j = names[(j, "c")], names[(j, "d")], names[(j, "f")]
                e_j = ends[j - 1]
                ecols[edge_key("c", c_j)] = base
                ecols[edge_key(c_j, e_j)] = base
                ecols[edge_key(c_j, f_j)] = 1 - base
                # Smallest color that keeps both d-paths rainbow: it has to
                # avoid the endpoint's vertex color and the pre-color base.
                ecols[edge_key(d_j, e_j)] = min(
                    c for c in d_choices if c != chi.vertex_colors[e_j])
    for u, v in inst.pairs:
        for t in range(2, k + 1):
            lab = f"g({u},{v},{t})"
            if inst.graph.has_vertex(lab):
                ecols[edge_key(u, lab)] = 0
                ecols[edge_key(lab, v)] = 1
    lifted = TotalColoring(3, vcols, ecols)
    lifted.check_covers(inst.graph)
    if verify_output:
        ok, failing = is_rainbow_k_connected(inst.graph, lifted, k, Mode.TOTAL,
                                             list(inst.pairs))
        if not ok:
            raise ReductionFalsified(
                f"lifted coloring fails pair {failing}: extension-to-subset reduction falsified")
    return lifted


def restrict_coloring_p2_to_p3(inst, chi_p, check_input=True):
    """Restrict a P-connecting coloring to g and recover which colors play
    the two pre-color roles (E1 := color of b2-c, E2 := color of b1-c)."""
    if inst.stage != "p2":
        raise ReductionError(f"expected a p2-stage instance, got {inst.stage!r}")
    chi_p.check_covers(inst.graph)
    if check_input:
        ok, failing = is_rainbow_k_connected(inst.graph, chi_p, inst.k, Mode.TOTAL,
                                             list(inst.pairs))
        if not ok:
            raise ReductionError(f"input coloring fails pair {failing}")
    e1_color = chi_p.edge_colors[edge_key("b2", "c")]
    e2_color = chi_p.edge_colors[edge_key("b1", "c")]
    if e1_color == e2_color:
        raise ReductionFalsified(
            "b1-c and b2-c share a color despite the pair {b1,b2}: reduction falsified")
    g = inst.source_graph()
    restricted = TotalColoring(
        chi_p.palette,
        {v: chi_p.vertex_colors[v] for v in g.vertices},
        {e: chi_p.edge_colors[e] for e in g.edges},
    )
    role_map = {"E1": e1_color, "E2": e2_color}
    sigma = _role_permutation(e1_color, e2_color, chi_p.palette)
    renamed = restricted.permuted(sigma)
    if not satisfies_problem3(g, list(inst.source_pairs), inst.source_partial,
                              renamed, inst.k):
        raise ReductionFalsified(
            "restricted coloring violates the Problem 3 conditions: reduction falsified")
    return restricted, role_map


def _role_permutation(e1_color, e2_color, palette):
    sigma = {e1_color: 0, e2_color: 1}
    rest = [c for c in range(palette) if c not in sigma]
    for c, target in zip(rest, (2, *range(3, palette))):
        sigma[c] = target
    return sigma


# ---------------------------------------------------------------------------
# 3-SAT -> Problem 3

def _clause_label(t):
    return f"c{t}"


def _var_label(i):
    return f"x{i}"


def reduce_sat_to_p3(phi, k):
    """Build the Problem 3 instance of a 3-CNF: clause/variable stars around
    s, clause edges pre-colored 0 (positive literal) or 1 (negative)."""
    if k < 1:
        raise ReductionError("k must be >= 1")
    n, m = phi.num_vars, phi.num_clauses
    clause_edges = {}  # edge -> sign (+1 positive, -1 negative)
    for t, clause in enumerate(phi.clauses, start=1):
        for lit in clause:
            e = edge_key(_clause_label(t), _var_label(abs(lit)))
            sign = 1 if lit > 0 else -1
            if clause_edges.get(e, sign) != sign:
                raise ReductionError(
                    f"clause {t} contains variable x{abs(lit)} with both signs: "
                    "conflicting pre-colors on one edge")
            clause_edges[e] = sign

    vertices = [_clause_label(t) for t in range(1, m + 1)]
    vertices += [f"c^{j}_{t}" for t in range(1, m + 1) for j in range(2, k + 1)]
    vertices += [_var_label(i) for i in range(1, n + 1)]
    vertices += ["s"]
    roles = {}
    for t in range(1, m + 1):
        roles[_clause_label(t)] = ROLE_CLAUSE
        for j in range(2, k + 1):
            roles[f"c^{j}_{t}"] = ROLE_CLAUSE_HELPER
    for i in range(1, n + 1):
        roles[_var_label(i)] = ROLE_VARIABLE
    roles["s"] = ROLE_S
    provenance = {v: "p3" for v in vertices}

    edges = sorted(clause_edges)
    edges += [edge_key("s", _var_label(i)) for i in range(1, n + 1)]
    for t in range(1, m + 1):
        for j in range(2, k + 1):
            edges.append(edge_key("s", f"c^{j}_{t}"))
            edges.append(edge_key(f"c^{j}_{t}", _clause_label(t)))
    graph = build_graph(vertices, edges)

    e1 = tuple(e for e in sorted(clause_edges) if clause_edges[e] > 0)
    e2 = tuple(e for e in sorted(clause_edges) if clause_edges[e] < 0)
    endpoint_order = {}
    for e in clause_edges:
        x_end = e[0] if e[0].startswith("x") else e[1]
        c_end = e[1] if x_end == e[0] else e[0]
        endpoint_order[e] = (x_end, c_end)
    partial = PartialEdgeColoring(e1, e2, endpoint_order)
    q = [pair_key("s", _clause_label(t)) for t in range(1, m + 1)]
    return ReducedInstance(graph, q, partial, roles, provenance, k, "p3", cnf=phi)


def assignment_to_coloring(inst, assignment, verify_output=True):
    """Forward witness: turn a satisfying assignment into an extension
    coloring of the SAT gadget (true literal paths become rainbow)."""
    if inst.stage != "p3" or inst.cnf is None:
        raise ReductionError("expected a SAT-derived p3-stage instance")
    values = assignment.values if isinstance(assignment, Assignment) else dict(assignment)
    phi = inst.cnf
    if set(values) != set(range(1, phi.num_vars + 1)):
        raise ReductionError("assignment must cover exactly the formula's variables")
    if not phi.evaluate(values):
        raise ReductionError("assignment does not satisfy the formula")
    g = inst.graph
    vcols = {v: 2 for v in g.vertices}
    ecols = {}
    for e in inst.partial.e1:
        ecols[e] = 0
    for e in inst.partial.e2:
        ecols[e] = 1
    for i in range(1, phi.num_vars + 1):
        ecols[edge_key("s", _var_label(i))] = 1 if values[i] else 0
    for t in range(1, phi.num_clauses + 1):
        for j in range(2, inst.k + 1):
            ecols[edge_key("s", f"c^{j}_{t}")] = 0
            ecols[edge_key(f"c^{j}_{t}", _clause_label(t))] = 1
    chi = TotalColoring(3, vcols, ecols)
    chi.check_covers(g)
    if verify_output and not satisfies_problem3(g, list(inst.pairs), inst.partial,
                                                chi, inst.k):
        raise ReductionFalsified(
            "witness coloring of a satisfying assignment fails Problem 3: "
            "SAT reduction falsified")
    return chi


def coloring_to_assignment(inst, chi):
    """Backward witness: read a satisfying assignment off an extension
    coloring. Variables on no rainbow clause path default to False and are
    flagged unconstrained."""
    if inst.stage != "p3" or inst.cnf is None:
        raise ReductionError("expected a SAT-derived p3-stage instance")
    phi = inst.cnf
    g = inst.graph
    if not satisfies_problem3(g, list(inst.pairs), inst.partial, chi, inst.k):
        raise ReductionError("coloring does not satisfy the Problem 3 conditions")
    sigma = _extraction_permutation(inst.partial, chi)
    values = {}
    unconstrained = set()
    for i in range(1, phi.num_vars + 1):
        x = _var_label(i)
        pinned = {sigma[chi.edge_color("s", x)], sigma[chi.vertex_color(x)]} & {0, 1}
        if len(pinned) == 1:
            values[i] = pinned.pop() == 1
        else:
            values[i] = False
            unconstrained.add(i)
    if not phi.evaluate(values):
        raise ReductionFalsified(
            "extracted assignment does not satisfy the formula: SAT reduction falsified")
    return Assignment(values, frozenset(unconstrained))


def _extraction_permutation(partial, chi):
    """Palette permutation sending E1's color to 0 and E2's to 1; empty
    classes take the remaining colors in ascending order."""
    e1_color = chi.edge_colors[partial.e1[0]] if partial.e1 else None
    e2_color = chi.edge_colors[partial.e2[0]] if partial.e2 else None
    taken = {c for c in (e1_color, e2_color) if c is not None}
    rest = [c for c in range(chi.palette) if c not in taken]
    if e1_color is None:
        e1_color = rest.pop(0)
    if e2_color is None:
        e2_color = rest.pop(0)
    sigma = {e1_color: 0, e2_color: 1}
    for c, target in zip(rest, range(2, chi.palette)):
        sigma[c] = target
    return sigma


# ---------------------------------------------------------------------------
# Composition: 3-SAT -> Problem 1

def sat_to_trc3_chain(phi, k):
    """The three reduction stages, uncomposed (the raw instances lifts need)."""
    p3 = reduce_sat_to_p3(phi, k)
    p2 = reduce_p3_to_p2(p3.graph, list(p3.pairs), p3.partial, k)
    p1 = reduce_p2_to_p1(p2.graph, list(p2.pairs), k)
    return p3, p2, p1


def reduce_sat_to_trc3(phi, k):
    """Composed instance whose trc_k(G') = 3 question encodes phi's
    satisfiability; roles and provenance trace through all three stages."""
    p3, p2, p1 = sat_to_trc3_chain(phi, k)
    roles = {}
    provenance = {}
    for v in p1.graph.vertices:
        role = p1.roles[v]
        if role == ROLE_ORIGINAL:
            role = p2.roles[v]
            if role == ROLE_ORIGINAL:
                role = p3.roles[v]
                provenance[v] = "p3"
            else:
                provenance[v] = "p2"
        else:
            provenance[v] = "p1"
        roles[v] = role
    return ReducedInstance(p1.graph, None, None, roles, provenance, k, "p1",
                           cnf=phi, source_pairs=p1.source_pairs)


def _as_palette3(chi, g):
    """Validate a 3-color total coloring of g (palette normalized to 3)."""
    chi.check_covers(g)
    used = set(chi.vertex_colors[v] for v in g.vertices)
    used.update(chi.edge_colors[e] for e in g.edges)
    if any(c > 2 for c in used):
        raise ReductionError("coloring uses more than 3 colors")
    if chi.palette == 3:
        return chi
    return TotalColoring(3, dict(chi.vertex_colors), dict(chi.edge_colors))
