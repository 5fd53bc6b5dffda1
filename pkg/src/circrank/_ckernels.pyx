# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and semantics as ``_pykernels``.

Values are carried as C ``long long``. The dispatcher in ``kernels`` only
routes inputs here after checking they are small enough that no
intermediate sum can overflow.
"""

from libc.stdlib cimport malloc, free, calloc

from circrank._pykernels import Infeasible, NegativeCycle, BudgetExceeded

BACKEND = "cython"

ctypedef long long i64


cdef i64* _arr(seq, Py_ssize_t k) except NULL:
    cdef i64* p = <i64*> malloc((k if k > 0 else 1) * sizeof(i64))
    if p == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        p[i] = seq[i]
    return p


def min_cost_flow(int n, tails, heads, caps, costs, supplies):
    cdef Py_ssize_t m = len(tails)
    cdef int N = n + 2
    cdef int src = n, snk = n + 1
    cdef Py_ssize_t E = 2 * (m + n)
    cdef int* eto = <int*> malloc(E * sizeof(int) + 8)
    cdef int* enext = <int*> malloc(E * sizeof(int) + 8)
    cdef i64* rcap = <i64*> malloc(E * sizeof(i64) + 8)
    cdef i64* rcost = <i64*> malloc(E * sizeof(i64) + 8)
    cdef int* head = <int*> malloc(N * sizeof(int))
    cdef i64* excess = <i64*> malloc(N * sizeof(i64))
    cdef i64* pot = <i64*> calloc(N, sizeof(i64))
    cdef i64* dist = <i64*> malloc(N * sizeof(i64))
    cdef int* prev = <int*> malloc(N * sizeof(int))
    cdef char* done = <char*> malloc(N)
    cdef char* reached = <char*> malloc(N)
    cdef Py_ssize_t ne = 0, a, e
    cdef int u, v, t, h, best_v
    cdef i64 need = 0, c, w, q, nd, push, D, bestd, tot
    if (eto == NULL or enext == NULL or rcap == NULL or rcost == NULL or head == NULL
            or excess == NULL or pot == NULL or dist == NULL or prev == NULL
            or done == NULL or reached == NULL):
        raise MemoryError()
    try:
        for v in range(N):
            head[v] = -1
        for v in range(n):
            excess[v] = supplies[v]
        for a in range(m):
            t = tails[a]
            h = heads[a]
            q = caps[a]
            c = costs[a]
            # forward edge 2a, backward edge 2a+1
            eto[ne] = h
            rcost[ne] = c
            enext[ne] = head[t]
            head[t] = <int> ne
            eto[ne + 1] = t
            rcost[ne + 1] = -c
            enext[ne + 1] = head[h]
            head[h] = <int> (ne + 1)
            if c < 0:
                rcap[ne] = 0
                rcap[ne + 1] = q
                excess[t] -= q
                excess[h] += q
            else:
                rcap[ne] = q
                rcap[ne + 1] = 0
            ne += 2
        tot = 0
        for v in range(n):
            tot += excess[v]
            if excess[v] != 0:
                if excess[v] > 0:
                    u = src
                    w = v
                    q = excess[v]
                    need += q
                else:
                    u = v
                    w = snk
                    q = -excess[v]
                eto[ne] = <int> w
                rcost[ne] = 0
                rcap[ne] = q
                enext[ne] = head[u]
                head[u] = <int> ne
                eto[ne + 1] = u
                rcost[ne + 1] = 0
                rcap[ne + 1] = 0
                enext[ne + 1] = head[w]
                head[w] = <int> (ne + 1)
                ne += 2
        if tot != 0:
            raise Infeasible("supplies do not sum to zero")

        while need > 0:
            for v in range(N):
                done[v] = 0
                reached[v] = 0
                prev[v] = -1
            dist[src] = 0
            reached[src] = 1
            while True:
                best_v = -1
                bestd = 0
                for v in range(N):
                    if reached[v] and not done[v] and (best_v < 0 or dist[v] < bestd):
                        best_v = v
                        bestd = dist[v]
                if best_v < 0:
                    break
                u = best_v
                done[u] = 1
                if u == snk:
                    break
                e = head[u]
                while e >= 0:
                    if rcap[e] > 0:
                        v = eto[e]
                        if not done[v]:
                            nd = bestd + rcost[e] + pot[u] - pot[v]
                            if not reached[v] or nd < dist[v]:
                                dist[v] = nd
                                reached[v] = 1
                                prev[v] = <int> e
                    e = enext[e]
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
                v = eto[e ^ 1]
            v = snk
            while v != src:
                e = prev[v]
                rcap[e] -= push
                rcap[e ^ 1] += push
                v = eto[e ^ 1]
            need -= push

        flows = [rcap[2 * a + 1] for a in range(m)]
        objective = sum([costs[a] * flows[a] for a in range(m)])
        return flows, objective
    finally:
        free(eto); free(enext); free(rcap); free(rcost); free(head)
        free(excess); free(pot); free(dist); free(prev); free(done); free(reached)


def residual_potentials(int n, tails, heads, caps, costs, flows):
    cdef Py_ssize_t m = len(tails)
    cdef int* eu = <int*> malloc((2 * m + 1) * sizeof(int))
    cdef int* ev = <int*> malloc((2 * m + 1) * sizeof(int))
    cdef i64* ec = <i64*> malloc((2 * m + 1) * sizeof(i64))
    cdef i64* dist = <i64*> calloc(n + 1, sizeof(i64))
    cdef Py_ssize_t k = 0, a, it
    cdef i64 nd
    cdef bint changed
    if eu == NULL or ev == NULL or ec == NULL or dist == NULL:
        raise MemoryError()
    try:
        for a in range(m):
            if flows[a] < caps[a]:
                eu[k] = tails[a]; ev[k] = heads[a]; ec[k] = costs[a]; k += 1
            if flows[a] > 0:
                eu[k] = heads[a]; ev[k] = tails[a]; ec[k] = -costs[a]; k += 1
        for it in range(n + 1):
            changed = False
            for a in range(k):
                nd = dist[eu[a]] + ec[a]
                if nd < dist[ev[a]]:
                    dist[ev[a]] = nd
                    changed = True
            if not changed:
                return [dist[a] for a in range(n)]
        raise NegativeCycle("residual graph contains a negative-cost cycle")
    finally:
        free(eu); free(ev); free(ec); free(dist)


cdef struct KemState:
    int n
    i64* W
    int* prefix
    char* used
    i64 best
    bint have_best


cdef void _kem_rec(KemState* st, int depth, i64 cost, list found) except *:
    cdef int n = st.n, v, k
    cdef i64 add, c
    if depth == n:
        if not st.have_best or cost < st.best:
            st.best = cost
            st.have_best = True
            del found[:]
        found.append(tuple([st.prefix[k] for k in range(n)]))
        return
    for v in range(n):
        if st.used[v]:
            continue
        add = 0
        for k in range(depth):
            add += st.W[v * n + st.prefix[k]]
        c = cost + add
        if st.have_best and c > st.best:
            continue
        st.used[v] = 1
        st.prefix[depth] = v
        _kem_rec(st, depth + 1, c, found)
        st.used[v] = 0


def kemeny_orders(int n, weights):
    if n == 0:
        return 0, [()]
    cdef KemState st
    cdef int i, j
    st.n = n
    st.W = <i64*> malloc(n * n * sizeof(i64))
    st.prefix = <int*> malloc(n * sizeof(int))
    st.used = <char*> calloc(n, 1)
    st.have_best = False
    st.best = 0
    if st.W == NULL or st.prefix == NULL or st.used == NULL:
        raise MemoryError()
    found = []
    try:
        for i in range(n):
            row = weights[i]
            for j in range(n):
                st.W[i * n + j] = row[j]
        _kem_rec(&st, 0, 0, found)
        return st.best, found
    finally:
        free(st.W); free(st.prefix); free(st.used)


cdef struct MMState:
    int n
    Py_ssize_t m
    int* tails
    int* heads
    i64* caps
    Py_ssize_t* last
    i64* rem_out   # (m+1) x n
    i64* rem_in
    i64* net
    i64* x
    i64 best
    bint have_best
    i64 visited
    i64 budget
    int* indeg
    int* stack
    int* adjstart
    int* adj


cdef bint _mm_acyclic(MMState* st):
    cdef int n = st.n, v, w, top = 0, seen = 0
    cdef Py_ssize_t a, m = st.m
    for v in range(n + 1):
        st.adjstart[v] = 0
        if v < n:
            st.indeg[v] = 0
    for a in range(m):
        if st.x[a] < st.caps[a]:
            st.adjstart[st.tails[a] + 1] += 1
            st.indeg[st.heads[a]] += 1
    for v in range(n):
        st.adjstart[v + 1] += st.adjstart[v]
    # fill using stack array as cursor
    for v in range(n):
        st.stack[v] = st.adjstart[v]
    for a in range(m):
        if st.x[a] < st.caps[a]:
            st.adj[st.stack[st.tails[a]]] = st.heads[a]
            st.stack[st.tails[a]] += 1
    top = 0
    for v in range(n):
        if st.indeg[v] == 0:
            st.stack[top] = v
            top += 1
    while top > 0:
        top -= 1
        v = st.stack[top]
        seen += 1
        for a in range(st.adjstart[v], st.adjstart[v + 1]):
            w = st.adj[a]
            st.indeg[w] -= 1
            if st.indeg[w] == 0:
                st.stack[top] = w
                top += 1
    return seen == n


cdef inline bint _mm_ok(MMState* st, int v, Py_ssize_t a):
    cdef i64 p = st.net[v]
    if p > 0:
        return st.rem_in[a * st.n + v] >= p
    if p < 0:
        return st.rem_out[a * st.n + v] >= -p
    return True


cdef void _mm_rec(MMState* st, Py_ssize_t a, i64 weight, list sols) except *:
    cdef int u, v
    cdef i64 lo, hi, val, q
    cdef Py_ssize_t k
    st.visited += 1
    if st.visited > st.budget:
        raise BudgetExceeded(f"search exceeded {st.budget} nodes")
    if a == st.m:
        if not _mm_acyclic(st):
            return
        if not st.have_best or weight < st.best:
            st.best = weight
            st.have_best = True
            del sols[:]
        sols.append(tuple([st.x[k] for k in range(st.m)]))
        return
    u = st.tails[a]
    v = st.heads[a]
    q = st.caps[a]
    if st.last[u] == a or st.last[v] == a:
        if st.last[u] == a:
            val = -st.net[u]
            if st.last[v] == a and val != st.net[v]:
                return
        else:
            val = st.net[v]
        lo = val
        hi = val
    else:
        lo = 0
        hi = q
    if lo < 0 or hi > q:
        return
    val = lo
    while val <= hi:
        if st.have_best and weight + val > st.best:
            break
        st.x[a] = val
        st.net[u] += val
        st.net[v] -= val
        if _mm_ok(st, u, a + 1) and _mm_ok(st, v, a + 1):
            _mm_rec(st, a + 1, weight + val, sols)
        st.net[u] -= val
        st.net[v] += val
        val += 1
    st.x[a] = 0


def min_maximal_circulations(int n, tails, heads, caps, budget):
    cdef MMState st
    cdef Py_ssize_t m = len(tails), a
    cdef int v
    st.n = n
    st.m = m
    st.tails = <int*> malloc((m + 1) * sizeof(int))
    st.heads = <int*> malloc((m + 1) * sizeof(int))
    st.caps = <i64*> malloc((m + 1) * sizeof(i64))
    st.last = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    st.rem_out = <i64*> calloc((m + 1) * n + 1, sizeof(i64))
    st.rem_in = <i64*> calloc((m + 1) * n + 1, sizeof(i64))
    st.net = <i64*> calloc(n + 1, sizeof(i64))
    st.x = <i64*> calloc(m + 1, sizeof(i64))
    st.indeg = <int*> malloc((n + 1) * sizeof(int))
    st.stack = <int*> malloc((n + 1) * sizeof(int))
    st.adjstart = <int*> malloc((n + 2) * sizeof(int))
    st.adj = <int*> malloc((m + 1) * sizeof(int))
    st.have_best = False
    st.best = 0
    st.visited = 0
    st.budget = budget
    if (st.tails == NULL or st.heads == NULL or st.caps == NULL or st.last == NULL
            or st.rem_out == NULL or st.rem_in == NULL or st.net == NULL or st.x == NULL
            or st.indeg == NULL or st.stack == NULL or st.adjstart == NULL or st.adj == NULL):
        raise MemoryError()
    sols = []
    try:
        for v in range(n):
            st.last[v] = -1
        for a in range(m):
            st.tails[a] = tails[a]
            st.heads[a] = heads[a]
            st.caps[a] = caps[a]
            st.last[st.tails[a]] = a
            st.last[st.heads[a]] = a
        for a in range(m - 1, -1, -1):
            for v in range(n):
                st.rem_out[a * n + v] = st.rem_out[(a + 1) * n + v]
                st.rem_in[a * n + v] = st.rem_in[(a + 1) * n + v]
            st.rem_out[a * n + st.tails[a]] += st.caps[a]
            st.rem_in[a * n + st.heads[a]] += st.caps[a]
        _mm_rec(&st, 0, 0, sols)
        return (st.best if st.have_best else None), sols, st.visited
    finally:
        free(st.tails); free(st.heads); free(st.caps); free(st.last)
        free(st.rem_out); free(st.rem_in); free(st.net); free(st.x)
        free(st.indeg); free(st.stack); free(st.adjstart); free(st.adj)
