"""Exact minimum-cost network flow, dual extraction and maximum circulations.

The solver works on integer data only. Rational vote graphs are scaled by
the least common denominator of their capacities before solving, and the
resulting flows are scaled back to exact Fractions.

Dual convention: ``potentials[v]`` is the shortest-path distance to ``v``
in the residual graph from a virtual source joined to every node by a
zero-length arc. With utilities ``c`` solved as costs ``-c``, every arc
below capacity then has ``c - y_tail + y_head <= 0`` and every arc with
positive flow has ``c - y_tail + y_head >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from circrank import kernels
from circrank.graph import VoteGraph
from circrank.kernels import Infeasible, NegativeCycle

__all__ = [
    "FlowNetwork",
    "FlowSolution",
    "DualSolution",
    "Circulation",
    "Infeasible",
    "NegativeCycle",
    "solve_min_cost",
    "extract_duals",
    "max_circulation",
    "max_circulation_with_cap",
    "dump_network",
    "check_conservation",
]


@dataclass(frozen=True)
class FlowNetwork:
    """Integer network; parallel arcs are allowed.

    ``arcs`` holds ``(tail, head, capacity, cost)`` tuples and ``supplies[v]``
    is the required net outflow of node ``v``.
    """

    n: int
    arcs: tuple[tuple[int, int, int, int], ...]
    supplies: tuple[int, ...] = ()

    def __post_init__(self):
        arcs = tuple(tuple(int(v) for v in a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        sup = tuple(int(b) for b in self.supplies) or (0,) * self.n
        object.__setattr__(self, "supplies", sup)
        if len(sup) != self.n:
            raise ValueError("supplies must have one entry per node")
        if sum(sup) != 0:
            raise Infeasible("supplies must sum to zero")
        for t, h, q, _ in arcs:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise ValueError(f"arc ({t}, {h}) out of range")
            if q < 0:
                raise ValueError("capacities must be nonnegative")

    @property
    def columns(self):
        tails = [a[0] for a in self.arcs]
        heads = [a[1] for a in self.arcs]
        caps = [a[2] for a in self.arcs]
        costs = [a[3] for a in self.arcs]
        return tails, heads, caps, costs


@dataclass(frozen=True)
class FlowSolution:
    flows: tuple[int, ...]
    objective: int


@dataclass(frozen=True)
class DualSolution:
    potentials: tuple


@dataclass(frozen=True)
class Circulation:
    """A circulation on a vote graph: exact flow per arc (index pairs)."""

    flow: dict
    value: Fraction
    potentials: tuple | None = field(default=None, compare=False)

    def saturated(self, g: VoteGraph) -> set:
        return {a for a in g.arcs if self.flow.get(a, 0) == g.cap(*a)}

    def remainder(self, g: VoteGraph) -> set:
        """Arcs with ``x < q``: what is left after removing the circulation."""
        return {a for a in g.arcs if self.flow.get(a, 0) < g.cap(*a)}


def check_conservation(n: int, arcs, flows, supplies=None) -> bool:
    """Exact check that ``out - in == supply`` at every node."""
    net = [0] * n
    for (t, h, *_), f in zip(arcs, flows):
        net[t] += f
        net[h] -= f
    sup = supplies or [0] * n
    return all(a == b for a, b in zip(net, sup))


def solve_min_cost(net: FlowNetwork, verify: bool = True) -> FlowSolution:
    """Integral minimum-cost flow meeting the supplies.

    Negative costs are accepted as given. With ``verify`` the result is
    checked for conservation and for the absence of negative residual
    cycles before it is returned.
    """
    tails, heads, caps, costs = net.columns
    flows, obj = kernels.min_cost_flow(net.n, tails, heads, caps, costs, net.supplies)
    sol = FlowSolution(tuple(flows), obj)
    if verify:
        if not check_conservation(net.n, net.arcs, flows, net.supplies):
            raise AssertionError("solver returned a flow violating conservation")
        if any(not 0 <= f <= q for f, q in zip(flows, caps)):
            raise AssertionError("solver returned a flow outside its bounds")
        kernels.residual_potentials(net.n, tails, heads, caps, costs, flows)
    return sol


def extract_duals(net: FlowNetwork, sol: FlowSolution) -> DualSolution:
    """Optimal node potentials as residual shortest-path distances.

    Raises NegativeCycle when ``sol`` is not optimal.
    """
    tails, heads, caps, costs = net.columns
    pot = kernels.residual_potentials(net.n, tails, heads, caps, costs, list(sol.flows))
    return DualSolution(tuple(pot))


def dump_network(net: FlowNetwork) -> str:
    """Plain-text arc list for bug reports.

    Format: a ``n <count>`` line, one ``a <tail> <head> <cap> <cost>`` line
    per arc, then one ``b <node> <supply>`` line per nonzero supply.
    """
    lines = [f"n {net.n}"]
    lines += [f"a {t} {h} {q} {c}" for t, h, q, c in net.arcs]
    lines += [f"b {v} {b}" for v, b in enumerate(net.supplies) if b]
    return "\n".join(lines) + "\n"


def _circulation_network(g: VoteGraph, scale: int, caps_override=None) -> FlowNetwork:
    arcs = []
    for a in g.arcs:
        q = Fraction(g.cap(*a) * scale)
        if caps_override and a in caps_override:
            q = Fraction(caps_override[a])
        if q.denominator != 1:
            raise ValueError("scaled capacity is not integral")
        arcs.append((a[0], a[1], int(q), -1))
    return FlowNetwork(g.n, tuple(arcs))


def _solve_scaled(g: VoteGraph, scale: int, caps_override=None, with_duals=False) -> Circulation:
    net = _circulation_network(g, scale, caps_override)
    sol = solve_min_cost(net)
    flow = {a: Fraction(f, scale) for a, f in zip(g.arcs, sol.flows)}
    pot = extract_duals(net, sol).potentials if with_duals else None
    return Circulation(flow, Fraction(-sol.objective, scale), pot)


def max_circulation(g: VoteGraph, with_duals: bool = False) -> Circulation:
    """A maximum circulation of ``g`` (integral whenever ``q`` is).

    With ``with_duals`` the optimal potentials of the dual LP are attached
    (unit utility per vote, integer valued).
    """
    return _solve_scaled(g, g.lcd(), with_duals=with_duals)


def max_circulation_with_cap(g: VoteGraph, arc: tuple[int, int], cap) -> Circulation:
    """Maximum circulation with the extra bound ``x_arc <= cap``."""
    if arc not in g.caps:
        raise KeyError(f"arc {arc} is not in the graph")
    cap = Fraction(cap)
    if not 0 <= cap <= g.cap(*arc):
        raise ValueError("cap must lie in [0, q_arc]")
    scale = lcm(g.lcd(), cap.denominator)
    return _solve_scaled(g, scale, {arc: int(cap * scale)})
