"""Conditional-independence models over small finite variable universes.

Compute separation models of undirected graphs and d-separation models of
DAGs, restrict models to sub-universes, decide whether a model is induced by
some graph or some DAG, check semi-graphoid closure, and evaluate formulas of
a small independency logic against enumerated model families.
"""

from .core import (
    MAX_UNIVERSE_SIZE,
    IndependencyModel,
    Triple,
    Universe,
    bits_of,
    enumerate_disjoint_triples,
    model_equals,
)
from .dag import MAX_DAG_ENUM_NODES, Dag, enumerate_dags
from .formats import (
    FormatError,
    format_dag,
    format_graph,
    format_model,
    load_dag,
    load_graph,
    load_model,
    parse_dag,
    parse_graph,
    parse_model,
)
from .logic import (
    DEFAULT_VALUATION_BUDGET,
    EMPTY,
    And,
    Atom,
    Clause,
    Complement,
    Empty,
    Formula,
    FormulaSyntaxError,
    Intersection,
    Not,
    Or,
    Term,
    Union_,
    Valuation,
    ValuationBudgetError,
    Var,
    atoms_of,
    check_clause,
    clause_of_formula,
    entails,
    eval_term,
    format_formula,
    format_term,
    formula_of_clause,
    formula_variables,
    implies,
    is_horn,
    is_valid_valuation,
    model_satisfies,
    parse_clause,
    parse_formula,
    satisfies,
)
from .represent import (
    SEMIGRAPHOID_AXIOM_FORMULAS,
    AxiomViolation,
    RepresentabilityResult,
    check_semigraphoid,
    dependent_always,
    is_causal,
    is_graph_isomorph,
    scan_causal_witness,
)
from .repro import ReproReport, build_counterexample_dag, verify_counterexample
from .ugraph import MAX_GRAPH_ENUM_NODES, UndirectedGraph, enumerate_undirected_graphs

__all__ = [
    "MAX_UNIVERSE_SIZE",
    "MAX_DAG_ENUM_NODES",
    "MAX_GRAPH_ENUM_NODES",
    "DEFAULT_VALUATION_BUDGET",
    "Universe",
    "Triple",
    "IndependencyModel",
    "UndirectedGraph",
    "Dag",
    "RepresentabilityResult",
    "AxiomViolation",
    "ReproReport",
    "Atom",
    "Clause",
    "Formula",
    "Term",
    "Var",
    "Empty",
    "EMPTY",
    "Complement",
    "Union_",
    "Intersection",
    "Not",
    "And",
    "Or",
    "implies",
    "atoms_of",
    "formula_variables",
    "Valuation",
    "FormatError",
    "FormulaSyntaxError",
    "ValuationBudgetError",
    "SEMIGRAPHOID_AXIOM_FORMULAS",
    "bits_of",
    "enumerate_disjoint_triples",
    "model_equals",
    "enumerate_dags",
    "enumerate_undirected_graphs",
    "dependent_always",
    "is_graph_isomorph",
    "is_causal",
    "scan_causal_witness",
    "check_semigraphoid",
    "parse_formula",
    "parse_clause",
    "format_formula",
    "format_term",
    "eval_term",
    "is_valid_valuation",
    "satisfies",
    "model_satisfies",
    "check_clause",
    "is_horn",
    "entails",
    "clause_of_formula",
    "formula_of_clause",
    "parse_model",
    "parse_graph",
    "parse_dag",
    "format_model",
    "format_graph",
    "format_dag",
    "load_model",
    "load_graph",
    "load_dag",
    "build_counterexample_dag",
    "verify_counterexample",
]
