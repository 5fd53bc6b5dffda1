"""The oracle against naive enumeration of every integral flow vector."""

import itertools

import pytest
from hypothesis import given, settings

from circrank.graph import SizeLimitExceeded, VoteGraph, from_pairwise
from circrank.instances import eight_node_conflict_example, four_node_example, three_node_counterexample
from circrank.oracle import (
    EnumerationBudget,
    oracle_fas_min,
    oracle_max_circulation_value,
    oracle_max_circulations,
    oracle_strong_arcs,
)

from conftest import vote_graphs


def _naive(g):
    """All integral maximum circulations by trying every vector 0 <= x <= q."""
    best, sols = None, []
    for xs in itertools.product(*[range(int(g.cap(*a)) + 1) for a in g.arcs]):
        bal = [0] * g.n
        for (i, j), x in zip(g.arcs, xs):
            bal[i] += x
            bal[j] -= x
        if any(bal):
            continue
        v = sum(xs)
        if best is None or v > best:
            best, sols = v, [xs]
        elif v == best:
            sols.append(xs)
    return best, [dict(zip(g.arcs, s)) for s in sols]


def _lab(g, arcs):
    return set(g.labelled(arcs))


def test_four_node():
    g = four_node_example()
    assert oracle_max_circulation_value(g) == 3
    assert _lab(g, oracle_strong_arcs(g)) == {(1, 2), (2, 3), (1, 4), (4, 3)}


def test_three_node():
    g = three_node_counterexample()
    assert _lab(g, oracle_strong_arcs(g)) == {(1, 2), (1, 3), (2, 3)}


def test_acyclic():
    assert oracle_max_circulation_value(from_pairwise([(1, 2, 1), (2, 3, 3)])) == 0


def test_eulerian():
    g = from_pairwise([(1, 2, 2), (2, 3, 2), (3, 1, 2)])
    assert oracle_strong_arcs(g) == set()


def test_eight_node_value():
    g = eight_node_conflict_example()
    assert oracle_max_circulation_value(g) == 8 == _naive(g)[0]


def test_empty():
    assert oracle_max_circulation_value(VoteGraph()) == 0


@settings(max_examples=120, deadline=None)
@given(vote_graphs(max_n=4, max_cap=2))
def test_matches_naive_enumeration(g):
    if g.m > 8:
        return
    best, sols = _naive(g)
    assert oracle_max_circulation_value(g) == best
    strong = {a for x in sols for a in g.arcs if x[a] < g.cap(*a)}
    assert oracle_strong_arcs(g) == strong
    listed = oracle_max_circulations(g)
    assert sorted(tuple(x[a] for a in g.arcs) for x in listed) == sorted(tuple(x[a] for a in g.arcs) for x in sols)


@settings(max_examples=40, deadline=None)
@given(vote_graphs(max_n=4, max_cap=2, rational=True))
def test_rational_capacities_match_naive(g):
    # scaled to integers, the oracle is exact over LCD units
    scale = g.lcd()
    if g.m > 5 or any(q * scale > 4 for q in g.caps.values()):
        return
    h = VoteGraph(g.labels, {a: q * scale for a, q in g.caps.items()})
    assert oracle_max_circulation_value(g) * scale == _naive(h)[0]


def test_budget():
    with pytest.raises(SizeLimitExceeded):
        oracle_strong_arcs(eight_node_conflict_example(), EnumerationBudget(5))


def test_limit_on_listing():
    g = from_pairwise([(1, 2, 2), (2, 1, 1), (2, 3, 1), (3, 1, 1)])
    assert len(oracle_max_circulations(g, limit=1)) == 1


class TestFas:
    def test_two_cycle(self):
        assert oracle_fas_min([(1, 2), (2, 1)]) == 1

    def test_acyclic(self):
        assert oracle_fas_min([(1, 2), (2, 3), (1, 3)]) == 0

    def test_three_cycle_with_chord(self):
        assert oracle_fas_min([(1, 2), (2, 3), (3, 1), (1, 3)]) == 1

    def test_parallel_arcs_count(self):
        assert oracle_fas_min([(1, 2), (2, 1), (2, 1)]) == 1
        assert oracle_fas_min([(1, 2), (1, 2), (2, 1), (2, 1)]) == 2

    def test_limits(self):
        with pytest.raises(SizeLimitExceeded):
            oracle_fas_min([(i, i + 1) for i in range(10)] + [(10, 0)])
        with pytest.raises(ValueError):
            oracle_fas_min([(1, 1)])
