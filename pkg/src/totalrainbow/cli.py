"""Batch command-line front-end.

Exit codes: 0 pass/found, 1 fail/impossible/falsified, 2 usage or input
error, 3 budget exhausted. All outputs are JSON with sorted keys, so a fixed
input produces byte-identical output in single-worker mode.
"""

import argparse
import json
import sys

from .cnf import Assignment, CnfError, parse_dimacs
from .coloring import ColoringError, Mode, TotalColoring
from .graphs import GraphError, graph_from_json
from .reductions import (
    ReducedInstance,
    ReductionError,
    ReductionFalsified,
    assignment_to_coloring,
    coloring_to_assignment,
    lift_coloring_p2_to_p1,
    lift_coloring_p3_to_p2,
    reduce_p2_to_p1,
    reduce_p3_to_p2,
    reduce_sat_to_p3,
    restrict_coloring_p1_to_p2,
    restrict_coloring_p2_to_p3,
)
from .solve import (
    EXHAUSTED,
    FOUND,
    Budget,
    bounds_report,
    connection_number,
    decide_colorable,
    decide_extension,
)
from .verify import is_rainbow_k_connected

MODES = {"edge": Mode.EDGE, "vertex": Mode.VERTEX, "total": Mode.TOTAL}
PARAM_MODES = {"trc": Mode.TOTAL, "rc": Mode.EDGE, "rvc": Mode.VERTEX}

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _load_graph(path):
    return graph_from_json(_load_json(path))


def _load_coloring(path):
    return TotalColoring.from_json(_load_json(path))


def _load_pairs(path):
    data = _load_json(path)
    if not isinstance(data, list):
        raise InputError(f"{path}: pairs file must be a JSON list of pairs")
    return [tuple(p) for p in data]


def _emit(data, out):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args):
    if args.budget_ms is None and getattr(args, "budget_nodes", None) is None:
        return None
    return Budget(args.budget_ms, getattr(args, "budget_nodes", None))


def cmd_verify(args):
    g = _load_graph(args.graph)
    c = _load_coloring(args.coloring)
    c.check_covers(g)
    pairs = _load_pairs(args.pairs) if args.pairs else None
    ok, failing = is_rainbow_k_connected(g, c, args.k, MODES[args.mode], pairs)
    _emit({"ok": ok, "failing_pair": list(failing) if failing else None}, args.out)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_solve(args):
    g = _load_graph(args.graph)
    mode = PARAM_MODES[args.param]
    budget = _budget(args)
    bounds = bounds_report(g, args.k) if mode is Mode.TOTAL else None
    if args.t is not None:
        outcome = decide_colorable(g, args.k, args.t, mode, budget=budget,
                                   workers=args.workers)
        _emit(outcome.to_json(bounds), args.out)
        if outcome.status == FOUND:
            return EXIT_PASS
        return EXIT_BUDGET if outcome.status == EXHAUSTED else EXIT_FAIL
    result = connection_number(g, args.k, mode, budget=budget, workers=args.workers)
    data = result.to_json()
    if bounds is not None:
        data["bounds"] = bounds.to_json()
    _emit(data, args.out)
    return EXIT_PASS if result.status == FOUND else EXIT_BUDGET


def cmd_bounds(args):
    g = _load_graph(args.graph)
    report = bounds_report(g, args.k, compute_rc_rvc=args.rc_rvc,
                           budget=_budget(args))
    _emit(report.to_json(), args.out)
    return EXIT_PASS


_STAGE_ORDER = ["sat", "p3", "p2", "p1"]


def cmd_reduce(args):
    src, dst = args.source, args.target
    if _STAGE_ORDER.index(src) >= _STAGE_ORDER.index(dst):
        raise InputError(f"cannot reduce from {src} to {dst}")
    if src == "sat":
        try:
            with open(args.input) as fh:
                phi = parse_dimacs(fh.read())
        except OSError as exc:
            raise InputError(str(exc)) from exc
        if args.k is None:
            raise InputError("--k is required when reducing from sat")
        inst = reduce_sat_to_p3(phi, args.k)
        stage = "p3"
    else:
        inst = ReducedInstance.from_json(_load_json(args.input))
        if inst.stage != src:
            raise InputError(f"bundle is a {inst.stage}-stage instance, expected {src}")
        if args.k is not None and args.k != inst.k:
            raise InputError(f"--k {args.k} conflicts with bundle k={inst.k}")
        stage = src
    while stage != dst:
        if stage == "p3":
            inst = reduce_p3_to_p2(inst.graph, list(inst.pairs), inst.partial, inst.k)
            stage = "p2"
        else:
            inst = reduce_p2_to_p1(inst.graph, list(inst.pairs), inst.k)
            stage = "p1"
    _emit(inst.to_json(), args.out)
    return EXIT_PASS


def cmd_witness(args):
    inst = ReducedInstance.from_json(_load_json(args.bundle))
    if args.direction == "lift":
        if inst.stage == "p3":
            a = Assignment.from_json(_load_json(args.input))
            result = assignment_to_coloring(inst, a).to_json()
        elif inst.stage == "p2":
            result = lift_coloring_p3_to_p2(inst, _load_coloring(args.input)).to_json()
        else:
            result = lift_coloring_p2_to_p1(inst, _load_coloring(args.input)).to_json()
    elif args.direction == "restrict":
        chi = _load_coloring(args.input)
        if inst.stage == "p1":
            result = restrict_coloring_p1_to_p2(inst, chi).to_json()
        elif inst.stage == "p2":
            restricted, role_map = restrict_coloring_p2_to_p3(inst, chi)
            result = {"coloring": restricted.to_json(), "role_map": role_map}
        else:
            raise InputError("restrict needs a p1- or p2-stage bundle")
    else:  # extract
        if inst.stage != "p3":
            raise InputError("extract needs a SAT-derived p3-stage bundle")
        result = coloring_to_assignment(inst, _load_coloring(args.input)).to_json()
    _emit(result, args.out)
    return EXIT_PASS


def run_roundtrip(phi, k, budget=None, workers=1, max_lift_vertices=4000):
    """Empirical validation of the reduction chain on one formula.

    Compares truth-table satisfiability with the Problem 3 decision, extracts
    and checks the assignment on a yes-instance, and verifies the lifted
    witness colorings at the subset (P2) and composed full (P1) stages. The
    P1 stage is skipped (reported as such) when the composed instance would
    exceed ``max_lift_vertices`` vertices.
    """
    p3 = reduce_sat_to_p3(phi, k)
    sat_values = phi.satisfying_assignment()
    report = {
        "num_vars": phi.num_vars,
        "num_clauses": phi.num_clauses,
        "k": k,
        "satisfiable": sat_values is not None,
        "extension": None,
        "agreement": None,
        "assignment": None,
        "assignment_satisfies": None,
        "p2_verified": None,
        "p1_verified": None,
        "p1_skipped_reason": None,
        "falsifier": None,
    }
    outcome = decide_extension(p3.graph, list(p3.pairs), p3.partial, k,
                               budget=budget, workers=workers)
    report["extension"] = outcome.status
    if outcome.status == EXHAUSTED:
        return report
    report["agreement"] = (sat_values is not None) == (outcome.status == FOUND)
    try:
        if outcome.status == FOUND:
            extracted = coloring_to_assignment(p3, outcome.coloring)
            report["assignment"] = extracted.to_json()
            report["assignment_satisfies"] = phi.evaluate(extracted.values)
        if sat_values is not None:
            chi = assignment_to_coloring(p3, sat_values)
            p2 = reduce_p3_to_p2(p3.graph, list(p3.pairs), p3.partial, k)
            lifted2 = lift_coloring_p3_to_p2(p2, chi)
            report["p2_verified"] = True
            n2 = p2.graph.n
            est = n2 + (k + 1) ** 2 * (n2 + n2 * (n2 - 1) // 2 - len(p2.pairs))
            if est > max_lift_vertices:
                report["p1_skipped_reason"] = (
                    f"composed instance would have {est} vertices "
                    f"(> {max_lift_vertices})")
            else:
                p1 = reduce_p2_to_p1(p2.graph, list(p2.pairs), k)
                lift_coloring_p2_to_p1(p1, lifted2)
                report["p1_verified"] = True
    except ReductionFalsified as exc:
        report["falsifier"] = str(exc)
        report["agreement"] = False
    return report


def cmd_roundtrip(args):
    try:
        with open(args.input) as fh:
            phi = parse_dimacs(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from exc
    report = run_roundtrip(phi, args.k, budget=_budget(args), workers=args.workers,
                           max_lift_vertices=args.max_lift_vertices)
    _emit(report, args.out)
    if report["falsifier"] or report["agreement"] is False:
        return EXIT_FAIL
    if report["agreement"] is None:
        return EXIT_BUDGET
    return EXIT_PASS


def build_parser():
    parser = argparse.ArgumentParser(
        prog="totalrainbow",
        description="Verify, solve, and reduce total rainbow k-connection instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True, workers=False):
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--out", help="write the JSON result to this file")
        if budget:
            p.add_argument("--budget-ms", type=float, default=None)
            p.add_argument("--budget-nodes", type=int, default=None)
        if workers:
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="check a coloring against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--mode", choices=sorted(MODES), default="total")
    p.add_argument("--pairs", help="JSON file with an explicit pair set")
    common(p, budget=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="compute trc/rc/rvc, or decide at a fixed t")
    p.add_argument("graph")
    p.add_argument("--param", choices=sorted(PARAM_MODES), default="trc")
    p.add_argument("--t", type=int, default=None,
                   help="decide colorability at this palette size instead of optimizing")
    common(p, workers=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bounds", help="report the known trc_k lower bounds")
    p.add_argument("graph")
    p.add_argument("--rc-rvc", action="store_true",
                   help="also compute rc_k and rvc_k exactly")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reduce", help="run one or more reduction stages")
    p.add_argument("input", help="DIMACS file (from sat) or instance bundle JSON")
    p.add_argument("--from", dest="source", choices=["sat", "p3", "p2"], required=True)
    p.add_argument("--to", dest="target", choices=["p3", "p2", "p1"], required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("witness", help="lift, restrict, or extract a witness")
    p.add_argument("--direction", choices=["lift", "restrict", "extract"], required=True)
    p.add_argument("--bundle", required=True)
    p.add_argument("--input", required=True,
                   help="coloring JSON (or assignment JSON for a p3 lift)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("roundtrip", help="validate the SAT reduction chain end to end")
    p.add_argument("input", help="DIMACS file")
    p.add_argument("--max-lift-vertices", type=int, default=4000)
    common(p, workers=True)
    p.set_defaults(func=cmd_roundtrip)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ReductionFalsified as exc:
        print(f"reduction falsified: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, GraphError, ColoringError, CnfError, ReductionError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
