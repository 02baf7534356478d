"""Command-line front end.

Exit codes: 0 for an affirmative decision or plain success, 1 for a negative
decision, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .core import Universe
from .dag import MAX_DAG_ENUM_NODES, enumerate_dags
from .logic import (
    ENTAILMENT_FAMILY_GATES,
    FormulaSyntaxError,
    ValuationBudgetError,
    entails,
    model_satisfies,
    parse_formula,
)
from .represent import check_semigraphoid, is_causal, is_graph_isomorph
from .repro import verify_counterexample


class CliInputError(ValueError):
    """Input problems detected by the CLI layer itself."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cimodels",
        description="Separation and d-separation models, representability, and formula checks.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    graph = top.add_parser("graph", help="undirected graph queries")
    graph_sub = graph.add_subparsers(dest="subcommand", required=True)
    graph_sep = graph_sub.add_parser("sep", help="decide a separation query")
    graph_sep.add_argument("--graph", required=True, help="graph file")
    _add_set_args(graph_sep)
    graph_model = graph_sub.add_parser("model", help="dump the induced model")
    graph_model.add_argument("--graph", required=True, help="graph file")
    graph_model.add_argument("--out", help="write to this file instead of stdout")

    dag = top.add_parser("dag", help="DAG queries")
    dag_sub = dag.add_subparsers(dest="subcommand", required=True)
    dag_dsep = dag_sub.add_parser("dsep", help="decide a d-separation query")
    dag_dsep.add_argument("--dag", required=True, help="DAG file")
    _add_set_args(dag_dsep)
    dag_model = dag_sub.add_parser("model", help="dump the induced model")
    dag_model.add_argument("--dag", required=True, help="DAG file")
    dag_model.add_argument("--out", help="write to this file instead of stdout")

    model = top.add_parser("model", help="operations on model files")
    model_sub = model.add_subparsers(dest="subcommand", required=True)
    restrict = model_sub.add_parser("restrict", help="keep triples inside a variable set")
    restrict.add_argument("--model", required=True, help="model file")
    restrict.add_argument("--vars", required=True, help="labels to keep, comma-separated")
    restrict.add_argument("--out", help="write to this file instead of stdout")
    check = model_sub.add_parser("check", help="class membership checks")
    check.add_argument("--model", required=True, help="model file")
    check.add_argument(
        "--class",
        dest="model_class",
        required=True,
        choices=["causal", "graph-isomorph", "semigraphoid"],
    )

    formula = top.add_parser("formula", help="formula evaluation and entailment")
    formula_sub = formula.add_subparsers(dest="subcommand", required=True)
    feval = formula_sub.add_parser("eval", help="does the model satisfy the formula?")
    feval.add_argument("--model", required=True, help="model file")
    feval.add_argument(
        "--formula",
        required=True,
        help="formula text, or the path of a file holding it",
    )
    fentails = formula_sub.add_parser(
        "entails", help="does every family member with the given triples have the query?"
    )
    fentails.add_argument(
        "--family", required=True, choices=["causal", "graph-isomorph", "all-models"]
    )
    fentails.add_argument("--given", required=True, help="model file with the given triples")
    fentails.add_argument("--query", required=True, help="triple as '<set> | <set> | <set>'")

    enum = top.add_parser("enum", help="exhaustive structure enumeration")
    enum_sub = enum.add_subparsers(dest="subcommand", required=True)
    enum_dags = enum_sub.add_parser("dags", help="enumerate labeled DAGs")
    enum_dags.add_argument("--n", type=int, required=True, help="number of nodes")
    enum_dags.add_argument("--count", action="store_true", help="print only the count")

    repro = top.add_parser("repro", help="rerun bundled derivations")
    repro_sub = repro.add_subparsers(dest="subcommand", required=True)
    counterexample = repro_sub.add_parser(
        "counterexample", help="verify the non-representable restricted model"
    )
    counterexample.add_argument("--json", action="store_true", help="machine-readable report")

    return parser


def _add_set_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--A", required=True, help="first set ('' or '-' for empty)")
    sub.add_argument("--C", required=True, help="conditioning set ('' or '-' for empty)")
    sub.add_argument("--B", required=True, help="second set ('' or '-' for empty)")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _decide(label_true: str, label_false: str, outcome: bool) -> int:
    print(label_true if outcome else label_false)
    return 0 if outcome else 1


def _run_graph(args: argparse.Namespace) -> int:
    graph = formats.load_graph(args.graph)
    if args.subcommand == "sep":
        a, c, b = (formats.parse_set(graph.universe, s) for s in (args.A, args.C, args.B))
        return _decide("SEPARATED", "NOT SEPARATED", graph.separates(a, c, b))
    _emit(formats.format_model(graph.separation_model()), args.out)
    return 0


def _run_dag(args: argparse.Namespace) -> int:
    dag = formats.load_dag(args.dag)
    if args.subcommand == "dsep":
        a, c, b = (formats.parse_set(dag.universe, s) for s in (args.A, args.C, args.B))
        return _decide("SEPARATED", "NOT SEPARATED", dag.d_separates(a, c, b))
    _emit(formats.format_model(dag.dsep_model()), args.out)
    return 0


def _run_model(args: argparse.Namespace) -> int:
    model = formats.load_model(args.model)
    if args.subcommand == "restrict":
        v_mask = formats.parse_set(model.universe, args.vars)
        if v_mask == 0:
            raise CliInputError("--vars must name at least one label")
        _emit(formats.format_model(model.restrict(v_mask)), args.out)
        return 0
    if args.model_class == "causal":
        if model.universe.n > MAX_DAG_ENUM_NODES:
            raise CliInputError(
                f"causal check is gated at {MAX_DAG_ENUM_NODES} variables"
            )
        return _decide("CAUSAL", "NOT CAUSAL", is_causal(model).representable)
    if args.model_class == "graph-isomorph":
        return _decide(
            "GRAPH-ISOMORPH", "NOT GRAPH-ISOMORPH", is_graph_isomorph(model).representable
        )
    violations = check_semigraphoid(model)
    for v in violations:
        premises = ", ".join(formats.format_triple(model.universe, p) for p in v.premises)
        conclusion = formats.format_triple(model.universe, v.conclusion)
        print(f"violation: {v.axiom}: [{premises}] without [{conclusion}]")
    return _decide("SEMIGRAPHOID", "NOT SEMIGRAPHOID", not violations)


def _run_formula(args: argparse.Namespace) -> int:
    if args.subcommand == "eval":
        model = formats.load_model(args.model)
        text = args.formula
        candidate = Path(text)
        if candidate.is_file():
            text = candidate.read_text()
        formula = parse_formula(text)
        return _decide("SATISFIED", "NOT SATISFIED", model_satisfies(model, formula))
    given_model = formats.load_model(args.given)
    universe = given_model.universe
    gate = ENTAILMENT_FAMILY_GATES.get(args.family)
    if gate is not None and universe.n > gate:
        raise CliInputError(f"family {args.family!r} is gated at {gate} variables")
    query = formats.parse_triple(universe, args.query)
    outcome = entails(args.family, tuple(given_model.triples), query, universe)
    return _decide("ENTAILED", "NOT ENTAILED", outcome)


def _run_enum(args: argparse.Namespace) -> int:
    if args.n < 1 or args.n > MAX_DAG_ENUM_NODES:
        raise CliInputError(f"--n must be between 1 and {MAX_DAG_ENUM_NODES}")
    universe = Universe(tuple(str(i) for i in range(args.n)))
    if args.count:
        print(sum(1 for _ in enumerate_dags(universe)))
        return 0
    for dag in enumerate_dags(universe):
        arcs = " ".join(f"{u}->{v}" for u, v in sorted(dag.arcs))
        print(arcs if arcs else "-")
    return 0


def _run_repro(args: argparse.Namespace) -> int:
    report = verify_counterexample()
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for name, holds in report.statements_checked:
            print(f"{name}: {'holds' if holds else 'FAILS'}")
        print(f"dags scanned: {report.dag_count_scanned}")
        print(f"causal witness: {'found' if report.causal_witness_found else 'none'}")
        print(f"semigraphoid violations: {'none' if report.semigraphoid_ok else 'present'}")
        print("REPRODUCTION OK" if report.succeeded else "REPRODUCTION FAILED")
    return 0 if report.succeeded else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "graph": _run_graph,
        "dag": _run_dag,
        "model": _run_model,
        "formula": _run_formula,
        "enum": _run_enum,
        "repro": _run_repro,
    }
    try:
        return handlers[args.command](args)
    except (formats.FormatError, FormulaSyntaxError, CliInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValuationBudgetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
