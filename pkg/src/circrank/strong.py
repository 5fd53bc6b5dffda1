"""Strong maximum circulations, the strong subgraph and their certificates.

Two independent routes compute the strong subgraph (the arcs left below
capacity by at least one maximum circulation):

* :func:`algorithm1` solves one maximum circulation per arc with that
  arc's capacity tightened, and averages the witnesses.
* :func:`perturbation` solves a single min-cost flow on a doubled network
  where each arc keeps a small, slightly less profitable reserve copy.
  Its optimal potentials certify the result through
  :func:`check_strong_cs`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction

from circrank.graph import VoteGraph, format_rational, is_acyclic, label_key
from circrank.mcnf import (
    Circulation,
    FlowNetwork,
    _solve_scaled,
    extract_duals,
    solve_min_cost,
)

log = logging.getLogger(__name__)

__all__ = [
    "StrongResult",
    "Certificate",
    "InfeasibleCirculation",
    "algorithm1",
    "perturbation",
    "check_strong_cs",
    "strong_circulation_from_witnesses",
    "certificate_to_json",
]


class InfeasibleCirculation(ValueError):
    """The flow handed to the certificate checker is not a circulation of the graph."""


@dataclass(frozen=True)
class StrongResult:
    graph: VoteGraph
    strong_arcs: frozenset
    circulation: dict
    max_value: Fraction
    duals: tuple | None = None

    def labelled_strong_arcs(self) -> list[tuple]:
        return self.graph.labelled(self.strong_arcs)


def _assert_strong_invariants(g: VoteGraph, flow: dict, strong: frozenset, value: Fraction):
    remainder = {a for a in g.arcs if flow[a] < g.cap(*a)}
    if remainder != set(strong):
        raise AssertionError("strong arcs differ from the arcs below capacity")
    if not is_acyclic(remainder):
        raise AssertionError("removing the circulation left a cycle")
    if sum(flow.values(), Fraction(0)) != value:
        raise AssertionError("circulation value mismatch")


def strong_circulation_from_witnesses(witnesses, weights) -> dict:
    """Convex combination of maximum circulations.

    ``weights`` must be strictly positive and sum to exactly 1.
    """
    witnesses = list(witnesses)
    weights = [Fraction(w) for w in weights]
    if len(weights) != len(witnesses) or not witnesses:
        raise ValueError("need one weight per witness and at least one witness")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be strictly positive")
    if sum(weights) != 1:
        raise ValueError("weights must sum to 1")
    keys = set()
    for x in witnesses:
        keys.update(x)
    return {k: sum((w * Fraction(x.get(k, 0)) for x, w in zip(witnesses, weights)), Fraction(0)) for k in sorted(keys)}


def algorithm1(g: VoteGraph) -> StrongResult:
    """Strong subgraph by one tightened maximum circulation per arc.

    The capacity of the arc under test is lowered by one scaled unit: 1
    for integral votes, ``1 / ((m+1) * lcd)`` otherwise. Arcs already
    below capacity in the first optimum are admitted without a solve, with
    that optimum as their witness. The returned circulation is the uniform
    average of the witnesses.
    """
    m = g.m
    lcd = g.lcd()
    scale = lcd if g.is_integral() else (m + 1) * lcd
    first = _solve_scaled(g, scale)
    z_star = first.value
    witnesses = {}
    for a in g.arcs:
        q = g.cap(*a)
        if first.flow[a] < q:
            witnesses[a] = first.flow
            continue
        tight = _solve_scaled(g, scale, {a: q * scale - 1})
        if tight.value == z_star:
            witnesses[a] = tight.flow
    strong = frozenset(witnesses)
    if strong:
        ws = [witnesses[a] for a in sorted(strong)]
        flow = strong_circulation_from_witnesses(ws, [Fraction(1, len(ws))] * len(ws))
    else:
        flow = dict(first.flow)
    _assert_strong_invariants(g, flow, strong, z_star)
    return StrongResult(g, strong, flow, z_star)


def perturbation(g: VoteGraph) -> StrongResult:
    """Strong maximum circulation and certifying potentials from one solve.

    Every vote arc becomes two parallel arcs: a main copy with capacity
    ``q - eps`` and utility 1, and a reserve copy with capacity ``eps`` and
    utility ``1 - 1/(m+1)``, where ``eps = 1/((m+1) * lcd)``. Everything is
    scaled to integers: capacities by ``(m+1) * lcd`` and utilities by
    ``m+1``. Arcs whose reserve copy stays empty are exactly the strong arcs.
    """
    m = g.m
    scale = (m + 1) * g.lcd()
    arcs = []
    for a in g.arcs:
        q = g.cap(*a) * scale
        arcs.append((a[0], a[1], int(q) - 1, -(m + 1)))
        arcs.append((a[0], a[1], 1, -m))
    net = FlowNetwork(g.n, tuple(arcs))
    sol = solve_min_cost(net)
    pot = extract_duals(net, sol).potentials
    flow = {}
    strong = set()
    for k, a in enumerate(g.arcs):
        w, v = sol.flows[2 * k], sol.flows[2 * k + 1]
        flow[a] = Fraction(w + v, scale)
        if v == 0:
            strong.add(a)
    duals = tuple(Fraction(p, m + 1) for p in pot)
    value = sum(flow.values(), Fraction(0))
    strong = frozenset(strong)
    _assert_strong_invariants(g, flow, strong, value)
    return StrongResult(g, strong, flow, value, duals)


# ----------------------------------------------------------------- certificates

ZERO, INTERIOR, SATURATED = "zero", "interior", "saturated"


@dataclass(frozen=True)
class Certificate:
    graph: VoteGraph
    circulation: dict
    duals: tuple
    # arc -> (case, reduced cost, condition holds)
    cases: dict
    verdict: bool
    violation: tuple | None = None  # (arc, condition number)

    @property
    def strong_arcs(self) -> list:
        return sorted(a for a, (case, _, _) in self.cases.items() if case != SATURATED)


def check_strong_cs(g: VoteGraph, x, y) -> Certificate:
    """Check the strong complementary slackness conditions exactly.

    With reduced cost ``r = 1 - y_i + y_j`` on arc ``(i, j)``:

    1. ``x = 0``      requires ``r <= 0``
    2. ``0 < x < q``  requires ``r == 0``
    3. ``x = q``      requires ``r > 0``

    A pass proves ``x`` is a strong maximum circulation. ``y`` is indexed
    by node index (sequence or mapping). Raises InfeasibleCirculation if
    ``x`` violates a bound or conservation.
    """
    x = {a: Fraction(x.get(a, 0)) for a in g.arcs} if isinstance(x, dict) else dict(zip(g.arcs, map(Fraction, x)))
    y = [Fraction(y[v]) for v in range(g.n)]
    net = [Fraction(0)] * g.n
    for a, f in x.items():
        if not 0 <= f <= g.cap(*a):
            raise InfeasibleCirculation(f"flow {f} on arc {a} outside [0, {g.cap(*a)}]")
        net[a[0]] += f
        net[a[1]] -= f
    if any(net):
        bad = next(v for v in range(g.n) if net[v])
        raise InfeasibleCirculation(f"conservation violated at node {g.label(bad)!r}")

    cases = {}
    violation = None
    order = sorted(g.arcs, key=lambda a: (label_key(g.label(a[0])), label_key(g.label(a[1]))))
    for a in order:
        i, j = a
        f, q = x[a], g.cap(*a)
        r = 1 - y[i] + y[j]
        if f == 0:
            case, ok, cond = ZERO, r <= 0, 1
        elif f < q:
            case, ok, cond = INTERIOR, r == 0, 2
        else:
            case, ok, cond = SATURATED, r > 0, 3
        cases[a] = (case, r, ok)
        if not ok and violation is None:
            violation = (a, cond)
    return Certificate(g, x, tuple(y), cases, violation is None, violation)


def _arc_key(g: VoteGraph, a) -> str:
    return f"{g.label(a[0])}->{g.label(a[1])}"


def certificate_to_json(cert: Certificate, indent: int | None = 2) -> str:
    """JSON with ``circulation``, ``duals``, ``strong_arcs`` and ``verdict``.

    Arc keys are ``"from->to"``; every number is a ``"p/q"`` string.
    """
    g = cert.graph
    order = sorted(g.arcs, key=lambda a: (label_key(g.label(a[0])), label_key(g.label(a[1]))))
    nodes = sorted(range(g.n), key=lambda v: label_key(g.label(v)))
    doc = {
        "circulation": {_arc_key(g, a): format_rational(cert.circulation[a]) for a in order},
        "duals": {str(g.label(v)): format_rational(cert.duals[v]) for v in nodes},
        "strong_arcs": [[i, j] for i, j in g.labelled(cert.strong_arcs)],
        "verdict": "pass" if cert.verdict else "fail",
    }
    if cert.violation is not None:
        a, cond = cert.violation
        doc["violation"] = {"arc": [g.label(a[0]), g.label(a[1])], "condition": cond}
    return json.dumps(doc, indent=indent, default=str)
