"""Minimum maximal circulations by exhaustive search, and the FAS reduction.

A maximal circulation leaves an acyclic remainder; a minimum maximal one
removes the fewest votes among those. Finding one is NP-hard, so the
search here is exhaustive and meant for small integral instances only.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from circrank import kernels
from circrank.graph import InputError, SizeLimitExceeded, VoteGraph, _is_path, label_key
from circrank.kernels import BudgetExceeded
from circrank.order import conflicts, transitive_closure

__all__ = [
    "MinMaxResult",
    "FasInstance",
    "ReducedInstance",
    "minmax_exact",
    "demonstrate_conflict",
    "reduce_fas",
    "read_fas",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
]

# search nodes visited, not candidate vectors
DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class MinMaxResult:
    graph: VoteGraph
    weight: int
    # each circulation maps index arcs to integer flow
    circulations: tuple
    visited: int = 0

    def order(self, k: int):
        """Partial order left after removing circulation ``k``."""
        x = self.circulations[k]
        g = self.graph
        return transitive_closure(g.labelled(a for a in g.arcs if x[a] < g.cap(*a)), ground=g.labels)

    def conflict_report(self) -> list[tuple[int, int, list]]:
        """``(k, l, pairs)`` for every pair of optima whose orders conflict."""
        orders = [self.order(k) for k in range(len(self.circulations))]
        out = []
        for k, l in combinations(range(len(orders)), 2):
            c = conflicts(orders[k], orders[l])
            if c:
                out.append((k, l, c))
        return out


def _closing_order(n: int, arcs) -> list[int]:
    """Node order that closes nodes early: greedily take the node with most arcs into the prefix."""
    deg = [0] * n
    nbrs = [set() for _ in range(n)]
    for t, h in arcs:
        deg[t] += 1
        deg[h] += 1
        nbrs[t].add(h)
        nbrs[h].add(t)
    order, placed = [], [False] * n
    link = [0] * n
    for _ in range(n):
        v = max((u for u in range(n) if not placed[u]), key=lambda u: (link[u], deg[u], -u))
        placed[v] = True
        order.append(v)
        for t, h in arcs:
            if t == v and not placed[h]:
                link[h] += 1
            elif h == v and not placed[t]:
                link[t] += 1
    return order


def minmax_exact(g: VoteGraph, budget: int = DEFAULT_BUDGET) -> MinMaxResult:
    """All minimum maximal integral circulations of ``g``.

    Raises InputError for non-integral votes and SizeLimitExceeded when
    the search visits more than ``budget`` nodes.
    """
    if not g.is_integral():
        raise InputError("minimum maximal circulation search needs integral vote counts")
    arcs = list(g.arcs)
    pos = {v: k for k, v in enumerate(_closing_order(g.n, arcs))}
    perm = sorted(range(len(arcs)), key=lambda k: (max(pos[arcs[k][0]], pos[arcs[k][1]]), min(pos[arcs[k][0]], pos[arcs[k][1]]), k))
    tails = [arcs[k][0] for k in perm]
    heads = [arcs[k][1] for k in perm]
    caps = [int(g.cap(*arcs[k])) for k in perm]
    try:
        best, sols, visited = kernels.min_maximal_circulations(g.n, tails, heads, caps, budget)
    except BudgetExceeded as exc:
        raise SizeLimitExceeded(f"minmax: {exc}") from None
    circs = []
    for s in sols:
        x = {arcs[k]: s[p] for p, k in enumerate(perm)}
        circs.append(x)
    circs.sort(key=lambda x: [x[a] for a in arcs])
    return MinMaxResult(g, best, tuple(circs), visited)


def demonstrate_conflict(g: VoteGraph, budget: int = DEFAULT_BUDGET):
    """Two minimum maximal circulations inducing conflicting orders, or None.

    Returns ``(x1, x2, (i, j))`` with ``i`` above ``j`` after removing
    ``x1`` and below it after removing ``x2``. Witness pairs not joined by
    a direct vote in either direction are preferred, since those conflicts
    arise purely from which cycles were removed; ties go to the naturally
    smallest pair, then to the earliest circulations.
    """
    res = minmax_exact(g, budget)
    voted = {(g.label(i), g.label(j)) for i, j in g.arcs}
    best = None
    for k, l, pairs in res.conflict_report():
        for i, j in pairs:
            direct = (i, j) in voted or (j, i) in voted
            key = (direct, label_key(i), label_key(j), k, l)
            if best is None or key < best[0]:
                best = (key, k, l, (i, j))
    if best is None:
        return None
    _, k, l, pair = best
    return res.circulations[k], res.circulations[l], pair


# ------------------------------------------------------------------ reduction


@dataclass(frozen=True)
class FasInstance:
    arcs: tuple
    k: int
    nodes: tuple = ()

    def __post_init__(self):
        arcs = tuple(tuple(a) for a in self.arcs)
        if any(a == b for a, b in arcs):
            raise InputError("feedback arc set instance has a self-loop")
        if self.k < 0:
            raise InputError("K must be nonnegative")
        nodes = list(self.nodes)
        for a, b in arcs:
            for v in (a, b):
                if v not in nodes:
                    nodes.append(v)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "nodes", tuple(nodes))


@dataclass(frozen=True)
class ReducedInstance:
    """Minmax-circulation instance built from a FAS instance.

    The ``k`` parallel ``(t, s)`` arcs are carried as one arc of capacity
    ``k``, which admits exactly the same circulations.
    """

    graph: VoteGraph
    k_prime: int
    source: FasInstance

    @property
    def arc_count(self) -> int:
        """Arcs counted with multiplicity."""
        return sum(int(q) for q in self.graph.caps.values())


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def reduce_fas(instance: FasInstance) -> ReducedInstance:
    """Each arc ``(i, j)`` becomes the path ``i -> ij1 -> ij2 -> j`` plus
    arcs ``s -> ij1`` and ``ij2 -> t``; ``K`` copies of ``(t, s)`` close the
    four-arc cycles. The budget becomes ``4K``.

    Parallel arcs in the FAS instance get their own path nodes.
    """
    taken = {str(v) for v in instance.nodes}
    if len(taken) != len(instance.nodes):
        raise InputError("node labels must be distinct as strings")
    s = _fresh("s", taken)
    t = _fresh("t", taken)
    labels = [str(v) for v in instance.nodes] + [s, t]
    index = {lab: k for k, lab in enumerate(labels)}
    caps: dict = {}
    for i, j in instance.arcs:
        i, j = str(i), str(j)
        m1 = _fresh(f"{i}{j}1", taken)
        m2 = _fresh(f"{i}{j}2", taken)
        for lab in (m1, m2):
            index[lab] = len(labels)
            labels.append(lab)
        for a, b in ((i, m1), (m1, m2), (m2, j), (s, m1), (m2, t)):
            caps[(index[a], index[b])] = Fraction(1)
    if instance.k > 0:
        caps[(index[t], index[s])] = Fraction(instance.k)
    return ReducedInstance(VoteGraph(labels, caps), 4 * instance.k, instance)


def read_fas(source) -> FasInstance:
    """FAS instance file: one ``from to`` (or ``from,to``) arc per line and a
    ``K <int>`` line; ``#`` starts a comment."""
    if _is_path(source):
        with open(source) as fh:
            return read_fas(fh)
    if isinstance(source, str):
        source = io.StringIO(source)
    arcs, k = [], None
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if parts[0] in ("K", "k") and len(parts) == 2:
            try:
                k = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: K must be an integer") from None
        elif len(parts) == 2:
            arcs.append((parts[0], parts[1]))
        else:
            raise InputError(f"line {lineno}: expected 'from to' or 'K <int>'")
    if k is None:
        raise InputError("missing 'K' line")
    return FasInstance(tuple(arcs), k)
