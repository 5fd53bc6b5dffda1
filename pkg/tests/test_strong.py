import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from circrank.graph import VoteGraph, from_pairwise, is_acyclic, is_eulerian
from circrank.instances import eight_node_conflict_example, four_node_example, three_node_counterexample
from circrank.mcnf import max_circulation
from circrank.oracle import oracle_max_circulations
from circrank.strong import (
    InfeasibleCirculation,
    algorithm1,
    certificate_to_json,
    check_strong_cs,
    perturbation,
    strong_circulation_from_witnesses,
)

from conftest import vote_graphs

FOUR_STRONG = {(1, 2), (2, 3), (1, 4), (4, 3)}


def _lab(g, arcs):
    return set(g.labelled(arcs))


def _cycle_flow(g, *cycles):
    x = {a: Fraction(0) for a in g.arcs}
    for cyc in cycles:
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            x[(g.index(u), g.index(v))] += 1
    return x


class TestAlgorithm1:
    def test_four_node(self):
        g = four_node_example()
        res = algorithm1(g)
        assert _lab(g, res.strong_arcs) == FOUR_STRONG
        assert res.max_value == 3
        flow = {(g.label(i), g.label(j)): f for (i, j), f in res.circulation.items()}
        assert flow == {(1, 2): Fraction(1, 2), (2, 3): Fraction(1, 2), (1, 4): Fraction(1, 2),
                        (4, 3): Fraction(1, 2), (3, 1): 1}
        assert res.duals is None

    def test_three_node(self):
        g = three_node_counterexample()
        assert _lab(g, algorithm1(g).strong_arcs) == {(1, 2), (1, 3), (2, 3)}

    def test_eulerian_two_cycle(self):
        g = from_pairwise([(1, 2, 2), (2, 1, 2)])
        res = algorithm1(g)
        assert res.strong_arcs == frozenset()
        assert res.circulation == g.caps

    def test_rational(self):
        g = from_pairwise([(1, 2, "1/2"), (2, 1, "1/3"), (2, 3, "2/3"), (3, 1, "1/6")])
        assert algorithm1(g).strong_arcs == perturbation(g).strong_arcs


class TestPerturbation:
    def test_four_node(self):
        g = four_node_example()
        res = perturbation(g)
        assert _lab(g, res.strong_arcs) == FOUR_STRONG
        assert res.max_value == 3
        assert check_strong_cs(g, res.circulation, res.duals).verdict

    def test_eulerian(self):
        g = from_pairwise([(1, 2, 1), (2, 3, 1), (3, 1, 1), (1, 3, 2), (3, 1, 2)])
        assert is_eulerian(g)
        res = perturbation(g)
        assert res.strong_arcs == frozenset()
        assert res.circulation == g.caps

    def test_empty(self):
        res = perturbation(VoteGraph())
        assert res.strong_arcs == frozenset() and res.max_value == 0

    @settings(max_examples=120, deadline=None)
    @given(vote_graphs(max_n=6, max_cap=3))
    def test_same_strong_arcs_as_algorithm1(self, g):
        p, a = perturbation(g), algorithm1(g)
        assert p.strong_arcs == a.strong_arcs
        assert p.max_value == a.max_value == max_circulation(g).value
        assert check_strong_cs(g, p.circulation, p.duals).verdict
        assert is_acyclic(list(p.strong_arcs))
        assert (p.strong_arcs == frozenset()) == is_eulerian(g)

    @settings(max_examples=60, deadline=None)
    @given(vote_graphs(max_n=5, max_cap=3, rational=True))
    def test_rational_agreement(self, g):
        p = perturbation(g)
        assert p.strong_arcs == algorithm1(g).strong_arcs
        assert check_strong_cs(g, p.circulation, p.duals).verdict

    @settings(max_examples=60, deadline=None)
    @given(vote_graphs(max_n=4, max_cap=2))
    def test_every_optimum_remainder_inside_strong_set(self, g):
        if g.m > 8:
            return
        strong = perturbation(g).strong_arcs
        for x in oracle_max_circulations(g, limit=200):
            rem = {a for a in g.arcs if x[a] < g.cap(*a)}
            assert rem <= strong


class TestCertificate:
    def test_zero_flow_fails(self):
        g = four_node_example()
        cert = check_strong_cs(g, {a: 0 for a in g.arcs}, [0] * 4)
        assert not cert.verdict
        assert all(not ok for _, _, ok in cert.cases.values())
        assert cert.violation == ((g.index(1), g.index(2)), 1)

    def test_non_strong_maximum_fails(self):
        g = four_node_example()
        x = _cycle_flow(g, [1, 2, 3])
        assert sum(x.values()) == 3
        cert = check_strong_cs(g, x, perturbation(g).duals)
        assert not cert.verdict

    def test_infeasible_reported_separately(self):
        g = four_node_example()
        with pytest.raises(InfeasibleCirculation):
            check_strong_cs(g, {(g.index(1), g.index(2)): 1}, [0] * 4)
        with pytest.raises(InfeasibleCirculation):
            check_strong_cs(g, {a: 2 for a in g.arcs}, [0] * 4)

    def test_json(self):
        g = four_node_example()
        res = perturbation(g)
        doc = json.loads(certificate_to_json(check_strong_cs(g, res.circulation, res.duals)))
        assert doc["verdict"] == "pass"
        assert doc["circulation"]["3->1"] == "1/1"
        assert set(doc["duals"]) == {"1", "2", "3", "4"}
        assert doc["strong_arcs"] == [[1, 2], [1, 4], [2, 3], [4, 3]]
        assert "violation" not in doc

    def test_json_failure(self):
        g = four_node_example()
        doc = json.loads(certificate_to_json(check_strong_cs(g, {a: 0 for a in g.arcs}, [0] * 4)))
        assert doc["verdict"] == "fail"
        assert doc["violation"] == {"arc": [1, 2], "condition": 1}


class TestWitnesses:
    def test_four_node_average(self):
        g = four_node_example()
        x1, x2 = _cycle_flow(g, [1, 2, 3]), _cycle_flow(g, [1, 4, 3])
        x = strong_circulation_from_witnesses([x1, x2], [Fraction(1, 2)] * 2)
        assert x == algorithm1(g).circulation

    def test_single_witness(self):
        g = four_node_example()
        x1 = _cycle_flow(g, [1, 2, 3])
        assert strong_circulation_from_witnesses([x1], [1]) == x1

    def test_eight_node_combination(self):
        g = eight_node_conflict_example()
        x1 = _cycle_flow(g, [1, 2, 5, 6], [3, 4, 7, 8])
        x2 = _cycle_flow(g, [1, 2, 3, 4], [5, 6], [7, 8])
        x = strong_circulation_from_witnesses([x1, x2], [Fraction(1, 2)] * 2)
        rem = {a for a in g.arcs if x[a] < g.cap(*a)}
        assert _lab(g, rem) == {(2, 3), (2, 5), (4, 1), (4, 7), (6, 1), (6, 5), (8, 3), (8, 7)}
        assert rem == perturbation(g).strong_arcs

    @pytest.mark.parametrize("weights", [[Fraction(1, 3)] * 2, [1, 0], [Fraction(3, 2), Fraction(-1, 2)], [1]])
    def test_bad_weights(self, weights):
        g = four_node_example()
        with pytest.raises(ValueError):
            strong_circulation_from_witnesses([_cycle_flow(g, [1, 2, 3])] * 2, weights)
