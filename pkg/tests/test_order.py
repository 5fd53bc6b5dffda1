import json

import pytest
from hypothesis import given, settings

from circrank.graph import from_pairwise
from circrank.instances import eight_node_conflict_example, four_node_example
from circrank.oracle import oracle_max_circulations
from circrank.order import (
    CyclicInput,
    conflicts,
    order_to_dot,
    order_to_json,
    strong_partial_order,
    transitive_closure,
)

from conftest import vote_graphs

FOUR_SP = {(1, 2), (2, 3), (1, 4), (4, 3), (1, 3)}
EIGHT_SP = {(2, 3), (2, 5), (4, 1), (4, 7), (6, 1), (6, 5), (8, 3), (8, 7)}


def test_closure_of_strong_arcs():
    assert transitive_closure([(1, 2), (2, 3), (1, 4), (4, 3)]).pairs() == FOUR_SP


def test_closure_empty():
    assert len(transitive_closure([])) == 0


def test_closure_chain():
    rel = transitive_closure([(1, 2), (2, 3), (3, 4)]).pairs()
    assert rel == {(i, j) for i in range(1, 5) for j in range(i + 1, 5)}


def test_closure_rejects_cycles():
    with pytest.raises(CyclicInput):
        transitive_closure([(1, 2), (2, 1)])


def test_closure_idempotent():
    p = transitive_closure([(1, 2), (2, 3), (5, 3)])
    assert transitive_closure(p.relation).pairs() == p.pairs()


def test_order_is_partial_order():
    p = transitive_closure([(1, 2), (2, 3), (1, 4), (4, 3)])
    for i, j in p:
        assert i != j and (j, i) not in p
        for k, l in p:
            if k == j:
                assert (i, l) in p


def test_conflicts():
    p = transitive_closure([(1, 2), (2, 3)])
    r = transitive_closure([(3, 1)], ground=[1, 2, 3])
    assert conflicts(p, r) == [(1, 3)]
    assert conflicts(p, p) == []
    assert conflicts(transitive_closure([]), p) == []


def test_ground_mismatch():
    p = transitive_closure([(1, 2)], ground=[1, 2])
    r = transitive_closure([(1, 3)], ground=[1, 3])
    with pytest.raises(ValueError):
        conflicts(p, r)


def test_strong_partial_orders():
    assert strong_partial_order(four_node_example()).pairs() == FOUR_SP
    assert strong_partial_order(eight_node_conflict_example()).pairs() == EIGHT_SP
    assert strong_partial_order(four_node_example(), method="algorithm1").pairs() == FOUR_SP


def test_eulerian_gives_empty_order():
    g = from_pairwise([(1, 2, 1), (2, 3, 1), (3, 1, 1)])
    p = strong_partial_order(g)
    assert len(p) == 0 and p.ground == {1, 2, 3}


@settings(max_examples=60, deadline=None)
@given(vote_graphs(max_n=4, max_cap=2))
def test_every_optimum_order_inside_strong_order(g):
    if g.m > 8:
        return
    sp = strong_partial_order(g)
    for x in oracle_max_circulations(g, limit=200):
        rem = g.labelled(a for a in g.arcs if x[a] < g.cap(*a))
        tc = transitive_closure(rem, ground=g.labels)
        assert tc.pairs() <= sp.pairs()
        assert conflicts(tc, sp) == []


def test_json_export():
    doc = json.loads(order_to_json(strong_partial_order(four_node_example())))
    assert doc == {"order": [[1, 2], [1, 3], [1, 4], [2, 3], [4, 3]]}


def test_dot_export():
    dot = order_to_dot(strong_partial_order(four_node_example()))
    assert '"1" -> "3" [style=dashed];' in dot
    assert '"1" -> "2";' in dot
    assert dot.index('"1";') < dot.index('"4";')
