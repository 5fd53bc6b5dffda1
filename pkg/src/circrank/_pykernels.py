"""Pure-Python kernels. Reference semantics for the compiled ``_ckernels``.

All functions take plain lists of Python ints and never overflow. The
compiled module mirrors these signatures exactly; ``circrank.kernels``
selects one at import time.
"""

import heapq
from itertools import repeat

BACKEND = "python"


class Infeasible(ValueError):
    """Supplies cannot be routed within the capacities."""


class NegativeCycle(RuntimeError):
    """The residual graph of a supposedly optimal flow has a negative cycle."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search visited more nodes than its budget allows."""


def min_cost_flow(n, tails, heads, caps, costs, supplies):
    """Exact min-cost flow with signed integer costs.

    Negative-cost arcs are saturated up front so the residual graph starts
    with nonnegative costs; the remaining imbalance is routed by successive
    shortest paths with Dijkstra on reduced costs.

    Returns ``(flows, objective)``. Raises Infeasible.
    """
    m = len(tails)
    flows = [0] * m
    excess = list(supplies)  # required net outflow still to route
    for a in range(m):
        if costs[a] < 0:
            flows[a] = caps[a]
            excess[tails[a]] -= caps[a]
            excess[heads[a]] += caps[a]

    src, snk = n, n + 1
    N = n + 2
    # residual edges: 2k forward, 2k+1 backward
    to, rcap, rcost = [], [], []
    adj = [[] for _ in range(N)]

    def add(u, v, c, w):
        adj[u].append(len(to))
        to.append(v)
        rcap.append(c)
        rcost.append(w)
        adj[v].append(len(to))
        to.append(u)
        rcap.append(0)
        rcost.append(-w)

    for a in range(m):
        add(tails[a], heads[a], caps[a], costs[a])
        rcap[2 * a] = caps[a] - flows[a]
        rcap[2 * a + 1] = flows[a]
    need = 0
    for v in range(n):
        if excess[v] > 0:
            add(src, v, excess[v], 0)
            need += excess[v]
        elif excess[v] < 0:
            add(v, snk, -excess[v], 0)
    if sum(excess) != 0:
        raise Infeasible("supplies do not sum to zero")

    pot = [0] * N
    INF = None
    while need > 0:
        dist = [INF] * N
        prev = [-1] * N
        dist[src] = 0
        heap = [(0, src)]
        done = [False] * N
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u == snk:
                break
            pu = pot[u]
            for e in adj[u]:
                if rcap[e] > 0:
                    v = to[e]
                    if done[v]:
                        continue
                    nd = d + rcost[e] + pu - pot[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        prev[v] = e
                        heapq.heappush(heap, (nd, v))
        if not done[snk]:
            raise Infeasible("supplies cannot be routed within capacities")
        D = dist[snk]
        for v in range(N):
            if done[v]:
                pot[v] += dist[v]
            else:
                pot[v] += D
        push = need
        v = snk
        while v != src:
            e = prev[v]
            if rcap[e] < push:
                push = rcap[e]
            v = to[e ^ 1]
        v = snk
        while v != src:
            e = prev[v]
            rcap[e] -= push
            rcap[e ^ 1] += push
            v = to[e ^ 1]
        need -= push

    flows = [rcap[2 * a + 1] for a in range(m)]
    objective = sum(c * f for c, f in zip(costs, flows))
    return flows, objective


def residual_potentials(n, tails, heads, caps, costs, flows):
    """Shortest-path distances in the residual graph from a virtual source.

    The virtual source reaches every node at length 0, so every distance is
    finite and at most 0. Raises NegativeCycle if the flow is not optimal.
    """
    edges = []
    for a in range(len(tails)):
        u, v, c = tails[a], heads[a], costs[a]
        if flows[a] < caps[a]:
            edges.append((u, v, c))
        if flows[a] > 0:
            edges.append((v, u, -c))
    dist = list(repeat(0, n))
    for _ in range(n + 1):
        changed = False
        for u, v, c in edges:
            nd = dist[u] + c
            if nd < dist[v]:
                dist[v] = nd
                changed = True
        if not changed:
            return dist
    raise NegativeCycle("residual graph contains a negative-cost cycle")


def kemeny_orders(n, weights):
    """Minimum backward weight over all linear orders, with every argmin.

    ``weights[i][j]`` is the vote weight for ``i`` over ``j``. An order is a
    tuple listing the most preferred alternative first; its cost counts
    ``weights[j][i]`` for every ``i`` placed before ``j``. Branch-and-bound
    over prefixes, in lexicographic order, keeping ties.
    """
    if n == 0:
        return 0, [()]
    best = [None]
    found = []
    prefix = []
    used = [False] * n

    def rec(cost):
        if len(prefix) == n:
            if best[0] is None or cost < best[0]:
                best[0] = cost
                found.clear()
            found.append(tuple(prefix))
            return
        for v in range(n):
            if used[v]:
                continue
            row = weights[v]
            add = 0
            for u in prefix:
                add += row[u]
            c = cost + add
            if best[0] is not None and c > best[0]:
                continue
            used[v] = True
            prefix.append(v)
            rec(c)
            prefix.pop()
            used[v] = False

    rec(0)
    return best[0], found


def _remainder_acyclic(n, tails, heads, caps, x):
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for a in range(len(tails)):
        if x[a] < caps[a]:
            succ[tails[a]].append(heads[a])
            indeg[heads[a]] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def min_maximal_circulations(n, tails, heads, caps, budget):
    """All integral circulations of minimum total whose removal leaves a DAG.

    Depth-first over arcs in the given order. A node's last incident arc has
    its flow forced by conservation; open nodes are pruned when the
    undecided incident capacity cannot repair their imbalance. Solutions
    are reported in search order.

    Returns ``(best, solutions, visited)``; raises BudgetExceeded.
    """
    m = len(tails)
    last = [-1] * n
    for a in range(m):
        last[tails[a]] = a
        last[heads[a]] = a
    # rem_out[a][v]: capacity of arcs a.. leaving v (likewise rem_in)
    rem_out = [[0] * n for _ in range(m + 1)]
    rem_in = [[0] * n for _ in range(m + 1)]
    for a in range(m - 1, -1, -1):
        rem_out[a] = rem_out[a + 1][:]
        rem_in[a] = rem_in[a + 1][:]
        rem_out[a][tails[a]] += caps[a]
        rem_in[a][heads[a]] += caps[a]

    net = [0] * n  # out minus in over decided arcs
    x = [0] * m
    state = {"best": None, "visited": 0}
    sols = []

    def ok(v, a):
        # imbalance at v must be fixable by arcs a.. (a is the next undecided)
        p = net[v]
        if p > 0:
            return rem_in[a][v] >= p
        if p < 0:
            return rem_out[a][v] >= -p
        return True

    def rec(a, weight):
        state["visited"] += 1
        if state["visited"] > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        if a == m:
            if not _remainder_acyclic(n, tails, heads, caps, x):
                return
            if state["best"] is None or weight < state["best"]:
                state["best"] = weight
                sols.clear()
            sols.append(tuple(x))
            return
        u, v, q = tails[a], heads[a], caps[a]
        if last[u] == a or last[v] == a:
            if last[u] == a:
                val = -net[u]
                if last[v] == a and val != net[v]:
                    return
            else:
                val = net[v]
            lo, hi = val, val
        else:
            lo, hi = 0, q
        if lo < 0 or hi > q:
            return
        best = state["best"]
        for val in range(lo, hi + 1):
            if best is not None and weight + val > best:
                break
            x[a] = val
            net[u] += val
            net[v] -= val
            if ok(u, a + 1) and ok(v, a + 1):
                rec(a + 1, weight + val)
                best = state["best"]
            net[u] -= val
            net[v] += val
        x[a] = 0

    rec(0, 0)
    return state["best"], sols, state["visited"]
