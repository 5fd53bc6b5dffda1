"""Named example vote graphs and a seeded random instance generator."""

from __future__ import annotations

import random

from circrank.graph import VoteGraph, from_pairwise

__all__ = [
    "four_node_example",
    "three_node_counterexample",
    "eight_node_conflict_example",
    "random_vote_graph",
    "random_suite",
]

CONFLICT_ARCS = (
    (1, 2), (2, 3), (2, 5), (3, 4), (4, 1), (4, 7),
    (5, 6), (6, 1), (6, 5), (7, 8), (8, 3), (8, 7),
)


def four_node_example() -> VoteGraph:
    """Two 3-cycles sharing the arc (3, 1); unit votes."""
    return from_pairwise([(1, 2, 1), (2, 3, 1), (4, 3, 1), (1, 4, 1), (3, 1, 1)])


def three_node_counterexample() -> VoteGraph:
    return from_pairwise([(1, 2, 2), (2, 3, 2), (1, 3, 2), (3, 1, 1)])


def eight_node_conflict_example() -> VoteGraph:
    """Unit-vote graph with two conflicting minimum maximal circulations."""
    return from_pairwise([(a, b, 1) for a, b in CONFLICT_ARCS])


def random_vote_graph(rng: random.Random, n_min: int = 2, n_max: int = 8, p: float = 0.5, caps=(1, 2, 3)) -> VoteGraph:
    """Nodes ``0..n-1`` with ``n`` uniform in ``[n_min, n_max]``; each ordered
    pair independently gets an arc with probability ``p`` and a capacity
    drawn uniformly from ``caps``. All nodes are kept, isolated or not."""
    n = rng.randint(n_min, n_max)
    capmap = {}
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                capmap[(i, j)] = rng.choice(caps)
    return VoteGraph(range(n), capmap)


def random_suite(count: int, seed: int = 0, **kw) -> list[VoteGraph]:
    rng = random.Random(seed)
    return [random_vote_graph(rng, **kw) for _ in range(count)]
