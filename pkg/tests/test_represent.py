"""Representability decisions and the semi-graphoid closure check."""

import random
from itertools import combinations

import pytest

from cimodels.core import IndependencyModel, Triple, Universe, model_equals
from cimodels.dag import Dag, enumerate_dags
from cimodels.logic import model_satisfies, parse_formula
from cimodels.represent import (
    SEMIGRAPHOID_AXIOM_FORMULAS,
    check_semigraphoid,
    dependent_always,
    is_causal,
    is_graph_isomorph,
    scan_causal_witness,
)
from cimodels.repro import build_counterexample_dag
from cimodels.ugraph import UndirectedGraph, enumerate_undirected_graphs

from oracles import (
    random_model,
    semigraphoid_violations_by_placements,
    universe_of_size,
)


def restricted_counterexample():
    dag = build_counterexample_dag()
    return dag.dsep_model().restrict(dag.universe.mask_of(("1", "2", "3", "4")))


class TestDependentAlways:
    def test_counterexample_pairs(self):
        m = restricted_counterexample()
        u = m.universe
        for x, y in (("1", "2"), ("2", "3"), ("3", "4")):
            assert dependent_always(m, u.index(x), u.index(y))
        assert not dependent_always(m, u.index("1"), u.index("3"))

    def test_empty_model(self):
        m = IndependencyModel(universe_of_size(3), frozenset())
        for i, j in combinations(range(3), 2):
            assert dependent_always(m, i, j)

    def test_checks_both_orientations(self):
        u = Universe(("a", "b"))
        m = IndependencyModel(u, frozenset({Triple(0b10, 0, 0b01)}))
        assert not dependent_always(m, 0, 1)

    def test_same_node_rejected(self):
        with pytest.raises(ValueError):
            dependent_always(restricted_counterexample(), 1, 1)


class TestIsGraphIsomorph:
    def test_path_roundtrip(self):
        u = Universe(("a", "b", "c"))
        g = UndirectedGraph(u, frozenset({(0, 1), (1, 2)}))
        result = is_graph_isomorph(g.separation_model())
        assert result.representable
        assert result.witness.edges == g.edges
        assert result.first_discrepancy is None

    def test_collider_model_not_graph_isomorph(self):
        d = Dag(Universe(("1", "2", "3")), frozenset({(0, 1), (2, 1)}))
        m = d.dsep_model()
        assert Triple(0b001, 0, 0b100) in m
        assert Triple(0b001, 0b010, 0b100) not in m
        result = is_graph_isomorph(m)
        assert not result.representable
        assert result.witness is None
        assert result.first_discrepancy is not None

    def test_discrepancy_is_a_real_disagreement(self):
        d = Dag(Universe(("1", "2", "3")), frozenset({(0, 1), (2, 1)}))
        m = d.dsep_model()
        result = is_graph_isomorph(m)
        t = result.first_discrepancy
        # rebuild the candidate the decision used
        edges = frozenset(
            (i, j)
            for i, j in combinations(range(3), 2)
            if dependent_always(m, i, j)
        )
        candidate = UndirectedGraph(m.universe, edges)
        assert candidate.separates(t.a, t.c, t.b) != (t in m.triples)

    def test_asymmetric_model_rejected(self):
        u = Universe(("a", "b"))
        m = IndependencyModel(u, frozenset({Triple(0b01, 0, 0b10)}))
        result = is_graph_isomorph(m)
        assert not result.representable

    def test_roundtrip_all_graphs_small(self):
        for n in (1, 2, 3):
            u = universe_of_size(n)
            for g in enumerate_undirected_graphs(u):
                m = g.separation_model()
                result = is_graph_isomorph(m)
                assert result.representable
                assert model_equals(result.witness.separation_model(), m)

    def test_closure_under_restriction_small(self):
        for n in (2, 3):
            u = universe_of_size(n)
            for g in enumerate_undirected_graphs(u):
                m = g.separation_model()
                for v_mask in range(1, 1 << n):
                    assert is_graph_isomorph(m.restrict(v_mask)).representable


class TestIsCausal:
    def test_chain_model_representable(self):
        u = Universe(("1", "2", "3"))
        chain = Dag(u, frozenset({(0, 1), (1, 2)}))
        m = chain.dsep_model()
        result = is_causal(m)
        assert result.representable
        assert model_equals(result.witness.dsep_model(), m)

    def test_full_model_witnessed_by_edgeless_dag(self):
        u = universe_of_size(3)
        full = Dag(u, frozenset()).dsep_model()
        result = is_causal(full)
        assert result.representable
        assert result.witness.arcs == frozenset()

    def test_counterexample_restriction_not_causal(self):
        m = restricted_counterexample()
        witness, scanned = scan_causal_witness(m)
        assert witness is None
        assert scanned == 543
        assert not is_causal(m).representable

    def test_roundtrip_all_dags_small(self):
        for n in (1, 2, 3):
            u = universe_of_size(n)
            for d in enumerate_dags(u):
                m = d.dsep_model()
                result = is_causal(m)
                assert result.representable
                assert model_equals(result.witness.dsep_model(), m)

    def test_gate(self):
        m = IndependencyModel(universe_of_size(6), frozenset())
        with pytest.raises(ValueError):
            is_causal(m)


class TestCheckSemigraphoid:
    def test_induced_models_clean_small(self):
        for n in (2, 3):
            u = universe_of_size(n)
            for d in enumerate_dags(u):
                assert check_semigraphoid(d.dsep_model()) == []
            for g in enumerate_undirected_graphs(u):
                assert check_semigraphoid(g.separation_model()) == []

    def test_symmetry_violation_reported(self):
        u = Universe(("a", "b"))
        m = IndependencyModel(u, frozenset({Triple(0b01, 0, 0b10)}))
        violations = check_semigraphoid(m)
        assert any(v.axiom == "symmetry" for v in violations)

    def test_contraction_violation(self):
        # holds (a,{b},c) and (a,-,b) but not (a,-,{b,c})
        u = Universe(("a", "b", "c"))
        m = IndependencyModel(
            u,
            frozenset(
                {
                    Triple(0b001, 0b010, 0b100),
                    Triple(0b100, 0b010, 0b001),
                    Triple(0b001, 0, 0b010),
                    Triple(0b010, 0, 0b001),
                }
            ),
        )
        violations = check_semigraphoid(m)
        assert any(
            v.axiom == "contraction" and v.conclusion == Triple(0b001, 0, 0b110)
            for v in violations
        )

    def test_violation_lists_are_deterministic(self):
        rng = random.Random(2)
        for _ in range(5):
            m = random_model(rng, universe_of_size(3), p=0.4)
            assert check_semigraphoid(m) == check_semigraphoid(m)

    def test_matches_full_placement_oracle(self):
        # The model-driven instantiation finds the same violated instances
        # as looping every placement of four disjoint sets.
        rng = random.Random(97)
        for n in (2, 3):
            u = universe_of_size(n)
            for _ in range(15):
                m = random_model(rng, u, p=rng.uniform(0.2, 0.6))
                got = {(v.axiom, v.conclusion) for v in check_semigraphoid(m)}
                assert got == semigraphoid_violations_by_placements(m)

    def test_heredity_of_cleanliness(self):
        u = universe_of_size(3)
        for d in enumerate_dags(u):
            m = d.dsep_model()
            assert check_semigraphoid(m) == []
            for v_mask in range(1, 1 << 3):
                assert check_semigraphoid(m.restrict(v_mask)) == []

    def test_cross_validation_against_formulas(self):
        formulas = {
            name: parse_formula(text)
            for name, text in SEMIGRAPHOID_AXIOM_FORMULAS.items()
        }
        rng = random.Random(17)
        u = universe_of_size(2)
        models = [random_model(rng, u, p=0.35) for _ in range(40)]
        models += [random_model(rng, u, p=0.35, symmetric=True) for _ in range(10)]
        models.append(IndependencyModel(u, frozenset()))
        for m in models:
            clean = not check_semigraphoid(m)
            by_formulas = all(model_satisfies(m, f) for f in formulas.values())
            assert clean == by_formulas


class TestResultInvariant:
    def test_witness_iff_representable(self):
        rng = random.Random(23)
        u = universe_of_size(3)
        for _ in range(15):
            m = random_model(rng, u, p=0.3, symmetric=True)
            for result in (is_graph_isomorph(m), is_causal(m)):
                assert result.representable == (result.witness is not None)
