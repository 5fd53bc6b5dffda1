"""Exhaustive-search oracles for cross-checking the solvers.

Nothing here touches the flow solver or the compiled kernels. Maximum
circulations are searched through their slack ``s = q - x``: a circulation
is maximum exactly when its slack is a minimum-total vector with
``0 <= s <= q`` whose net outflow at every node equals the node's vote
imbalance ``sum_out q - sum_in q``.

The optimum is found twice by unrelated exhaustive routes: a DP over
chains of node subsets (the integer score side) and a depth-first
enumeration of slack vectors. They must agree. Pruning in the enumeration
only discards partial vectors that provably cannot complete to an optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from circrank.graph import SizeLimitExceeded, VoteGraph, is_acyclic

__all__ = [
    "EnumerationBudget",
    "oracle_max_circulation_value",
    "oracle_strong_arcs",
    "oracle_max_circulations",
    "oracle_fas_min",
]


@dataclass(frozen=True)
class EnumerationBudget:
    """Cap on visited search nodes; the search aborts cleanly beyond it."""

    max_nodes: int = 1 << 24


def _level_dp(n: int, arcs, caps, budget: EnumerationBudget):
    """Exact minimum of ``sum q_ij * max(y_j - y_i + 1, 0)`` over integer ``y``.

    Scores are read as a chain of level sets ``V = S_0 > S_1 > ... > {}``
    with ``S_L = {v : y_v >= L}``; an arc ``(i, j)`` pays ``q_ij`` at every
    level ``L`` with ``j`` in ``S_L`` and ``i`` outside ``S_{L+1}``. A DP
    over all strictly decreasing chains of subsets covers every score
    vector with minimum 0 (repeated levels never help).

    Returns ``(minimum, y)``.
    """
    full = (1 << n) - 1
    if (3 ** n) > budget.max_nodes:
        raise SizeLimitExceeded(f"level DP needs 3^{n} steps, over budget")
    # into[S]: capacity of arcs entering S; out_to[i][S]: capacity from i into S
    into = [0] * (full + 1)
    out_to = [[0] * (full + 1) for _ in range(n)]
    for S in range(1, full + 1):
        low = (S & -S).bit_length() - 1
        rest = S & (S - 1)
        into[S] = into[rest]
        for i in range(n):
            out_to[i][S] = out_to[i][rest]
        for (i, j), q in zip(arcs, caps):
            if j == low:
                into[S] += q
                out_to[i][S] += q
    dp = [0] * (full + 1)
    nxt = [0] * (full + 1)
    for S in range(1, full + 1):
        best, arg = None, 0
        inner = {0: 0}
        T = (S - 1) & S
        # walk proper submasks upward: W(T -> S) built from T minus its lowest bit
        subs = []
        while True:
            subs.append(T)
            if T == 0:
                break
            T = (T - 1) & S
        for T in reversed(subs):
            if T:
                low = (T & -T).bit_length() - 1
                inner[T] = inner[T & (T - 1)] + out_to[low][S]
            c = into[S] - inner[T] + dp[T]
            if best is None or c < best:
                best, arg = c, T
        dp[S], nxt[S] = best, arg
    y = [0] * n
    S = nxt[full]
    while S:
        for v in range(n):
            if S >> v & 1:
                y[v] += 1
        S = nxt[S]
    return dp[full], y


@dataclass
class _SlackSearch:
    best: int | None
    support: set
    solutions: list
    visited: int


def _search(g: VoteGraph, budget: EnumerationBudget, collect: int = 0) -> tuple[int, _SlackSearch]:
    """Enumerate every minimum-total integral slack vector.

    The optimum total comes from the score DP (the two problems are LP
    duals with integral optima). The primal search then runs at exactly
    that target, pruned by the Lagrangian bound that the optimal scores
    give on the cost of completing a partial slack. It also drops partial slacks whose support holds a cycle,
    since cancelling the cycle would lower the total.
    """
    scale = g.lcd()
    n = g.n
    arcs = sorted(g.arcs, key=lambda a: (max(a), min(a), a))
    caps = [int(g.cap(*a) * scale) for a in arcs]
    m = len(arcs)
    dual_min, y = _level_dp(n, arcs, caps, budget)
    target = sum(caps) - dual_min
    need = [0] * n  # net slack outflow still required at each node
    for (i, j), q in zip(arcs, caps):
        need[i] += q
        need[j] -= q
    # Lagrangian bound: sum_v need_v*y_v - sum_{a>=k} q_a*max(y_i - y_j - 1, 0)
    penalty = [0] * (m + 1)
    for k in range(m - 1, -1, -1):
        i, j = arcs[k]
        penalty[k] = penalty[k + 1] + caps[k] * max(y[i] - y[j] - 1, 0)
    weighted = [sum(need[v] * y[v] for v in range(n))]
    # remaining slack capacity out of / into each node over arcs k..m-1
    rem_out = [[0] * n for _ in range(m + 1)]
    rem_in = [[0] * n for _ in range(m + 1)]
    for k in range(m - 1, -1, -1):
        rem_out[k] = rem_out[k + 1][:]
        rem_in[k] = rem_in[k + 1][:]
        i, j = arcs[k]
        rem_out[k][i] += caps[k]
        rem_in[k][j] += caps[k]
    s = [0] * m
    reach = [1 << v for v in range(n)]  # nodes reachable through positive slack
    st = _SlackSearch(None, set(), [], 0)

    def rec(k: int, total: int):
        st.visited += 1
        if st.visited > budget.max_nodes:
            raise SizeLimitExceeded(f"oracle search exceeded {budget.max_nodes} nodes")
        if total + weighted[0] - penalty[k] > target:
            return
        if k == m:
            st.best = total
            st.support.update(arcs[a] for a in range(m) if s[a])
            if len(st.solutions) < collect:
                st.solutions.append(tuple(s))
            return
        i, j = arcs[k]
        ro, ri = rem_out[k + 1], rem_in[k + 1]
        # v must leave both endpoints satisfiable by the arcs still to come
        lo = max(0, need[i] - ro[i], -need[j] - ri[j])
        hi = min(caps[k], target - total, need[i] + ri[i], ro[j] - need[j])
        if lo > hi:
            return
        if lo == 0:
            rec(k + 1, total)
            lo = 1
        if hi < lo or reach[j] >> i & 1:
            return
        saved = reach[:]
        bit_i, add = 1 << i, reach[j]
        for u in range(n):
            if reach[u] & bit_i:
                reach[u] |= add
        for v in range(lo, hi + 1):
            need[i] -= v
            need[j] += v
            weighted[0] += v * (y[j] - y[i])
            s[k] = v
            rec(k + 1, total + v)
            need[i] += v
            need[j] -= v
            weighted[0] -= v * (y[j] - y[i])
        s[k] = 0
        reach[:] = saved

    rec(0, 0)
    if st.best != target:
        raise AssertionError(f"primal search optimum {st.best} disagrees with score DP {target}")
    return scale, st


def oracle_max_circulation_value(g: VoteGraph, budget: EnumerationBudget = EnumerationBudget()) -> Fraction:
    """Largest total of an integral (in LCD units) circulation, by enumeration."""
    scale, st = _search(g, budget)
    return g.total_weight() - Fraction(st.best, scale)


def oracle_strong_arcs(g: VoteGraph, budget: EnumerationBudget = EnumerationBudget()) -> set:
    """Arcs below capacity in at least one integral maximum circulation.

    Integral optima suffice: every maximum circulation is a convex
    combination of integral ones, so an arc saturated by all integral
    optima is saturated by all optima.
    """
    _, st = _search(g, budget)
    return set(st.support)


def oracle_max_circulations(g: VoteGraph, limit: int = 10_000, budget: EnumerationBudget = EnumerationBudget()) -> list[dict]:
    """Up to ``limit`` integral maximum circulations as ``{arc: Fraction}``."""
    scale, st = _search(g, budget, collect=limit)
    out = []
    order = sorted(g.arcs, key=lambda a: (max(a), min(a), a))
    for s in st.solutions:
        x = {a: g.cap(*a) - Fraction(v, scale) for a, v in zip(order, s)}
        out.append({a: x[a] for a in g.arcs})
    return out


def oracle_fas_min(arcs, nodes=None, max_n: int = 9) -> int:
    """Minimum feedback arc set size: fewest backward arcs over all node orders.

    Parallel arcs count separately.
    """
    arcs = [tuple(a) for a in arcs]
    if any(a == b for a, b in arcs):
        raise ValueError("self-loops cannot be removed by any order")
    ns = list(nodes or ())
    for a, b in arcs:
        for v in (a, b):
            if v not in ns:
                ns.append(v)
    if len(ns) > max_n:
        raise SizeLimitExceeded(f"oracle_fas_min: {len(ns)} nodes exceeds {max_n}")
    if is_acyclic(arcs):
        return 0
    best = len(arcs)
    for perm in permutations(ns):
        pos = {v: k for k, v in enumerate(perm)}
        back = sum(1 for a, b in arcs if pos[a] > pos[b])
        best = min(best, back)
    return best
