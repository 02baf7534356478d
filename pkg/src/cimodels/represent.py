"""Deciding whether a model is induced by an undirected graph or by a DAG,
plus the semi-graphoid closure check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import IndependencyModel, Triple, enumerate_disjoint_triples
from .dag import MAX_DAG_ENUM_NODES, Dag, all_dags, enumerate_dags
from .ugraph import UndirectedGraph, reachable_mask

# The four closure schemata checked by check_semigraphoid, as formula text
# for the independency logic. Literature-standard forms; check_semigraphoid
# hard-codes the same instantiations, and the test suite cross-validates the
# two implementations against each other.
SEMIGRAPHOID_AXIOM_FORMULAS: dict[str, str] = {
    "symmetry": "I(X1, X2, X3) -> I(X3, X2, X1)",
    "decomposition": "I(X1, X2, X3 + X4) -> I(X1, X2, X3)",
    "weak_union": "I(X1, X2, X3 + X4) -> I(X1, X2 + X4, X3)",
    "contraction": "I(X1, X2 + X3, X4) & I(X1, X2, X3) -> I(X1, X2, X3 + X4)",
}


@dataclass(frozen=True)
class RepresentabilityResult:
    """Outcome of a representability decision.

    ``witness`` is present iff ``representable``. ``first_discrepancy`` is
    only reported by the constructive graph check: the first enumerated
    triple on which the candidate graph and the model disagree.
    """

    representable: bool
    witness: UndirectedGraph | Dag | None
    first_discrepancy: Triple | None


@dataclass(frozen=True)
class AxiomViolation:
    """One failed schema instance: premises held but the conclusion did not."""

    axiom: str
    premises: tuple[Triple, ...]
    conclusion: Triple


def dependent_always(model: IndependencyModel, alpha: int, beta: int) -> bool:
    """True iff no conditioning set renders the two singletons independent.

    Both orientations are consulted, since stored models need not be
    symmetric.
    """
    if alpha == beta:
        raise ValueError("the two nodes must be distinct")
    model.universe.check_mask((1 << alpha) | (1 << beta))
    am, bm = 1 << alpha, 1 << beta
    for t in model.triples:
        if (t.a == am and t.b == bm) or (t.a == bm and t.b == am):
            return False
    return True


def is_graph_isomorph(model: IndependencyModel) -> RepresentabilityResult:
    """Decide whether some undirected graph's separation model equals ``model``.

    Constructive: the only possible witness joins exactly the pairs that are
    dependent under every conditioning set, so build that graph and compare
    its separation model with the input triple by triple.
    """
    u = model.universe
    edges = frozenset(
        (i, j)
        for i in range(u.n)
        for j in range(i + 1, u.n)
        if dependent_always(model, i, j)
    )
    candidate = UndirectedGraph(u, edges)
    nbrs = candidate.neighbor_masks
    reach_cache: dict[tuple[int, int], int] = {}
    for t in enumerate_disjoint_triples(u):
        if t.a == 0 or t.b == 0:
            separated = True
        else:
            key = (t.a, t.c)
            reach = reach_cache.get(key)
            if reach is None:
                reach = reachable_mask(nbrs, t.a, t.c)
                reach_cache[key] = reach
            separated = not reach & t.b
        if separated != (t in model.triples):
            return RepresentabilityResult(False, None, t)
    return RepresentabilityResult(True, candidate, None)


def _dsep_model_matches(dag: Dag, model: IndependencyModel) -> bool:
    """Early-exit comparison of ``dag``'s induced model with ``model``."""
    reach_cache: dict[tuple[int, int], int] = {}
    triples = model.triples
    for t in enumerate_disjoint_triples(model.universe):
        if t.a == 0 or t.b == 0:
            separated = True
        else:
            key = (t.a, t.c)
            reach = reach_cache.get(key)
            if reach is None:
                reach = dag._active_reach(t.a, t.c)
                reach_cache[key] = reach
            separated = not reach & t.b
        if separated != (t in triples):
            return False
    return True


def _dags_to_scan(model: IndependencyModel) -> Iterator[Dag]:
    if model.universe.n <= 4:
        return iter(all_dags(model.universe))
    return enumerate_dags(model.universe)


def scan_causal_witness(model: IndependencyModel) -> tuple[Dag | None, int]:
    """Scan all DAGs in enumeration order for one inducing ``model``.

    Returns the first witness (or ``None``) together with the number of DAGs
    examined; with no witness that count covers the whole enumeration.
    """
    if model.universe.n > MAX_DAG_ENUM_NODES:
        raise ValueError(
            f"causal check needs DAG enumeration, gated at {MAX_DAG_ENUM_NODES} nodes"
        )
    scanned = 0
    for dag in _dags_to_scan(model):
        scanned += 1
        if _dsep_model_matches(dag, model):
            return dag, scanned
    return None, scanned


def is_causal(model: IndependencyModel) -> RepresentabilityResult:
    """Decide whether some DAG's d-separation model equals ``model``.

    Exhaustive scan in enumeration order; ties broken by that order, so the
    witness is deterministic but only unique up to equivalence of induced
    models.
    """
    witness, _ = scan_causal_witness(model)
    return RepresentabilityResult(witness is not None, witness, None)


def check_semigraphoid(model: IndependencyModel) -> list[AxiomViolation]:
    """All violated instances of the four closure schemata.

    Instances are generated from the model's own triples (an instance whose
    premises are absent can never be violated), in a deterministic order.
    """
    triples = model.triples
    full = model.universe.full_mask
    ordered = sorted(triples, key=lambda t: (t.a, t.c, t.b))
    violations: list[AxiomViolation] = []

    for t in ordered:
        if t.reverse() not in triples:
            violations.append(AxiomViolation("symmetry", (t,), t.reverse()))

    for t in ordered:
        # Split the second set into a kept part and a dropped part.
        sub = t.b
        while True:
            kept = Triple(t.a, t.c, sub)
            if kept not in triples:
                violations.append(AxiomViolation("decomposition", (t,), kept))
            moved = Triple(t.a, t.c | (t.b & ~sub), sub)
            if moved not in triples:
                violations.append(AxiomViolation("weak_union", (t,), moved))
            if sub == 0:
                break
            sub = (sub - 1) & t.b

    by_first_two: dict[tuple[int, int], list[Triple]] = {}
    for t in ordered:
        by_first_two.setdefault((t.a, t.c), []).append(t)
    for t in ordered:
        # t supplies the second premise (a, c, b); look for (a, c|b, d).
        for other in by_first_two.get((t.a, t.c | t.b), ()):
            merged = Triple(t.a, t.c, t.b | other.b)
            if merged not in triples:
                violations.append(AxiomViolation("contraction", (other, t), merged))
    return violations
