"""Partial orders induced by acyclic arc sets."""

from __future__ import annotations

import json
from dataclasses import dataclass

from circrank.graph import VoteGraph, is_acyclic, label_key

__all__ = [
    "PartialOrder",
    "CyclicInput",
    "transitive_closure",
    "conflicts",
    "strong_partial_order",
    "order_to_json",
    "order_to_dot",
]


class CyclicInput(ValueError):
    """The arc set has a directed cycle, so its closure is not antisymmetric."""


def _pair_key(p):
    return (label_key(p[0]), label_key(p[1]))


@dataclass(frozen=True)
class PartialOrder:
    """A strict partial order: irreflexive, antisymmetric, transitively closed.

    ``relation`` is a naturally sorted tuple of ``(better, worse)`` pairs.
    ``base`` keeps the arcs the closure was generated from.
    """

    ground: frozenset
    relation: tuple
    base: tuple = ()

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.relation)

    def __len__(self) -> int:
        return len(self.relation)

    def __iter__(self):
        return iter(self.relation)

    def pairs(self) -> set:
        return set(self.relation)


def transitive_closure(arcs, ground=None) -> PartialOrder:
    """All ``(i, j)`` joined by a directed path; DFS from every node."""
    arcs = {tuple(a) for a in arcs}
    if not is_acyclic(arcs):
        raise CyclicInput("cannot close a cyclic arc set into a partial order")
    nodes = set(ground or ())
    succ: dict = {}
    for a, b in arcs:
        nodes.update((a, b))
        succ.setdefault(a, []).append(b)
    rel = []
    for s in nodes:
        seen = set()
        stack = list(succ.get(s, ()))
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(succ.get(v, ()))
        rel.extend((s, t) for t in seen)
    rel.sort(key=_pair_key)
    return PartialOrder(frozenset(nodes), tuple(rel), tuple(sorted(arcs, key=_pair_key)))


def conflicts(p: PartialOrder, r: PartialOrder) -> list[tuple]:
    """Pairs ``(i, j)`` with ``i`` above ``j`` in ``p`` and below it in ``r``."""
    if p.ground and r.ground and p.ground != r.ground:
        raise ValueError("partial orders are defined on different ground sets")
    other = r._set
    return [(i, j) for i, j in p.relation if (j, i) in other]


def strong_partial_order(g: VoteGraph, method: str = "perturbation") -> PartialOrder:
    """Transitive closure of the strong subgraph, over alternative labels."""
    from circrank import strong

    solver = {"perturbation": strong.perturbation, "algorithm1": strong.algorithm1}[method]
    res = solver(g)
    return transitive_closure(g.labelled(res.strong_arcs), ground=g.labels)


def order_to_json(order: PartialOrder) -> str:
    return json.dumps({"order": [[i, j] for i, j in order.relation]})


def _dot_id(label) -> str:
    s = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def order_to_dot(order: PartialOrder, name: str = "strong_partial_order") -> str:
    """DOT digraph: generating arcs solid, closure-only arcs dashed."""
    base = set(order.base)
    lines = [f"digraph {name} {{"]
    for v in sorted(order.ground, key=label_key):
        lines.append(f"  {_dot_id(v)};")
    for i, j in order.relation:
        style = "" if (i, j) in base else " [style=dashed]"
        lines.append(f"  {_dot_id(i)} -> {_dot_id(j)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
