"""Compiled hot paths: subset DP for Hamiltonian paths and the colex scanner.

Adjacency is passed as an ``int64`` array of neighbour bitsets.  Everything
here is an internal mirror of the pure-Python reference code in
:mod:`hamexp.oracle` and :mod:`hamexp.filters`; the two routes are
cross-checked in the test suite.
"""

import numpy as np
from numba import njit

# classification codes shared with hamexp.filters / hamexp.certification
NONE = 0
PENDANT = 1
DEG2_OPEN = 2
DEG2_DEG3_DISTINCT = 3
DEG2_DEG3_SHARED = 4
SHARED_NEIGHBOR = 5
DISCONNECTED = 6
ORACLE_REJECTED = 7
SURVIVOR = 8
N_CODES = 9


@njit(cache=True)
def popcount(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (x * 0x0101010101010101) >> 56 & 0xFF


@njit(cache=True)
def lowbit_index(x):
    return popcount((x & -x) - 1)


@njit(cache=True)
def fill_reach(adj, n, s, t, reach):
    """Subset DP from ``s``; returns True iff a Hamiltonian s-t path exists.

    Vertices ``s`` and ``n-1`` are swapped so that masks range over the low
    ``n-1`` bits.  ``reach[mask]`` is the set of endpoints ``x`` such that a
    path from ``s`` visits exactly ``mask`` (plus ``s``) and ends at ``x``.
    ``t`` is only ever entered as the final vertex.
    """
    k = n - 1
    full = (1 << k) - 1
    src = n - 1
    tt = t
    if tt == src:
        tt = s
    nadj = np.empty(n, dtype=np.int64)
    for v in range(n):
        w = v
        if v == s:
            w = src
        elif v == src:
            w = s
        row = adj[v]
        out = row & ~((1 << s) | (1 << src))
        if row >> s & 1:
            out |= 1 << src
        if row >> src & 1:
            out |= 1 << s
        nadj[w] = out
    for mask in range(full + 1):
        reach[mask] = 0
    tbit = 1 << tt
    first = nadj[src] & full
    while first:
        low = first & -first
        first ^= low
        if low != tbit or low == full:
            reach[low] |= low
    for mask in range(1, full):
        ends = reach[mask]
        while ends:
            low = ends & -ends
            ends ^= low
            last = lowbit_index(low)
            ext = nadj[last] & ~mask & full
            while ext:
                nb = ext & -ext
                ext ^= nb
                nxt = mask | nb
                if nb == tbit and nxt != full:
                    continue
                reach[nxt] |= nb
    return (reach[full] >> tt) & 1 == 1, nadj, tt


@njit(cache=True)
def ham_path_dp(adj, n, s, t):
    """Hamiltonian path ``s -> t`` as an int64 array, or an empty array."""
    if n == 2:
        if adj[s] >> t & 1:
            out = np.empty(2, dtype=np.int64)
            out[0] = s
            out[1] = t
            return out
        return np.empty(0, dtype=np.int64)
    k = n - 1
    reach = np.empty(1 << k, dtype=np.int64)
    ok, nadj, tt = fill_reach(adj, n, s, t, reach)
    if not ok:
        return np.empty(0, dtype=np.int64)
    full = (1 << k) - 1
    src = n - 1
    path = np.empty(n, dtype=np.int64)
    cur = tt
    mask = full
    pos = n - 1
    while True:
        path[pos] = cur
        pos -= 1
        prev_mask = mask ^ (1 << cur)
        if prev_mask == 0:
            path[pos] = src
            break
        cand = reach[prev_mask] & nadj[cur]
        cur = lowbit_index(cand)
        mask = prev_mask
    # undo the s <-> n-1 swap
    for i in range(n):
        if path[i] == src:
            path[i] = s
        elif path[i] == s:
            path[i] = src
    return path


@njit(cache=True)
def _path_exists(adj, n, s, t, reach):
    if n == 2:
        return adj[s] >> t & 1 == 1
    ok, _, _ = fill_reach(adj, n, s, t, reach)
    return ok


@njit(cache=True)
def first_unextendable(adj, n, reach):
    """Index pair of the first non-edge with no Hamiltonian path, else (-1, -1)."""
    for u in range(n):
        for v in range(u + 1, n):
            if adj[u] >> v & 1:
                continue
            if not _path_exists(adj, n, u, v, reach):
                return u, v
    return -1, -1


@njit(cache=True)
def is_expandable(adj, n):
    reach = np.empty(1 << max(n - 1, 1), dtype=np.int64)
    u, _ = first_unextendable(adj, n, reach)
    return u < 0


@njit(cache=True)
def check_cycle(mat, order, x, y):
    """``order`` is a permutation of ``0..n-1`` whose cyclic neighbour pairs are
    all edges of ``mat`` except the single pair ``{x, y}``."""
    n = mat.shape[0]
    if order.shape[0] != n:
        return False
    seen = np.zeros(n, np.uint8)
    for k in range(n):
        u = order[k]
        if u < 0 or u >= n or seen[u]:
            return False
        seen[u] = 1
    through = 0
    for k in range(n):
        u = order[k]
        w = order[(k + 1) % n]
        if mat[u, w]:
            continue
        if (u == x and w == y) or (u == y and w == x):
            through += 1
        else:
            return False
    return through == 1


@njit(cache=True)
def connected(adj, n):
    full = (1 << n) - 1
    comp = 1
    frontier = 1
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = adj[lowbit_index(low)] & ~comp
        comp |= fresh
        frontier |= fresh
    return comp == full


@njit(cache=True)
def filter_code(adj, n, m, shared_ok):
    """First rejecting filter code (pendant, deg2-open, deg2-deg3, shared)."""
    if n < 4:
        return NONE
    deg = np.empty(n, dtype=np.int64)
    for v in range(n):
        deg[v] = popcount(adj[v])
    n_nonedges = n * (n - 1) // 2 - m
    for v in range(n):
        if deg[v] <= 1 and n_nonedges > n - 1 - deg[v]:
            return PENDANT
    for v in range(n):
        if deg[v] == 2:
            nb = adj[v]
            u1 = lowbit_index(nb)
            u2 = lowbit_index(nb ^ (1 << u1))
            if not (adj[u1] >> u2 & 1):
                return DEG2_OPEN
    if n < 7:
        return NONE
    for v in range(n):
        if deg[v] == 2:
            nb = adj[v]
            u1 = lowbit_index(nb)
            u2 = lowbit_index(nb ^ (1 << u1))
            if deg[u1] == 3 and deg[u2] == 3:
                v1 = lowbit_index(adj[u1] & ~((1 << v) | (1 << u2)))
                v2 = lowbit_index(adj[u2] & ~((1 << v) | (1 << u1)))
                if v1 != v2:
                    return DEG2_DEG3_DISTINCT
                return DEG2_DEG3_SHARED
    if shared_ok:
        for v in range(n):
            if deg[v] != 2:
                continue
            for w in range(v + 1, n):
                if deg[w] == 2 and adj[v] & adj[w]:
                    return SHARED_NEIGHBOR
    return NONE


@njit(cache=True)
def binomial_table(size):
    c = np.zeros((size + 1, size + 1), dtype=np.int64)
    for i in range(size + 1):
        c[i, 0] = 1
        for j in range(1, i + 1):
            c[i, j] = c[i - 1, j - 1] + c[i - 1, j]
    return c


@njit(cache=True)
def unrank_colex(rank, m, binom, out):
    """Write the colex-``rank``-th m-subset (ascending) into ``out``."""
    r = rank
    for i in range(m, 0, -1):
        c = i - 1
        while binom[c + 1, i] <= r:
            c += 1
        out[i - 1] = c
        r -= binom[c, i]


@njit(cache=True)
def next_colex(comb, m):
    """Advance ``comb`` to its colex successor in place."""
    i = 0
    while i < m - 1 and comb[i] + 1 == comb[i + 1]:
        i += 1
    comb[i] += 1
    for j in range(i):
        comb[j] = j


@njit(cache=True)
def _mix(rank, seed):
    x = (rank ^ seed) & 0x7FFFFFFFFFFFFFFF
    x = (x * 6364136223846793005 + 1442695040888963407) & 0x7FFFFFFFFFFFFFFF
    x ^= x >> 29
    return x


@njit(cache=True)
def classify(adj, n, m, use_filters, shared_ok, reach):
    if use_filters:
        code = filter_code(adj, n, m, shared_ok)
        if code != NONE:
            return code
        if not connected(adj, n):
            return DISCONNECTED
    u, _ = first_unextendable(adj, n, reach)
    if u >= 0:
        return ORACLE_REJECTED
    return SURVIVOR


@njit(cache=True)
def _build_adj(comb, m, eu, ev, adj):
    adj[:] = 0
    for i in range(m):
        a = eu[comb[i]]
        b = ev[comb[i]]
        adj[a] |= 1 << b
        adj[b] |= 1 << a


@njit(cache=True)
def scan_range(n, m, start, stop, use_filters, shared_ok, spot_mod, seed):
    """Classify colex ranks ``[start, stop)``.

    Returns ``(counts, spot, first_survivor_rank)`` where ``counts[code]`` is
    the number of graphs per classification code and ``spot`` holds
    ``[checked, disagreements]`` for the sampled re-check of filter-rejected
    graphs (every rank whose hash is 0 mod ``spot_mod``).
    """
    counts = np.zeros(N_CODES, dtype=np.int64)
    spot = np.zeros(2, dtype=np.int64)
    first_survivor = -1
    if start >= stop:
        return counts, spot, first_survivor
    big = n * (n - 1) // 2
    eu = np.empty(big, dtype=np.int64)
    ev = np.empty(big, dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(a + 1, n):
            eu[k] = a
            ev[k] = b
            k += 1
    binom = binomial_table(big)
    comb = np.empty(max(m, 1), dtype=np.int64)
    if m > 0:
        unrank_colex(start, m, binom, comb)
    adj = np.zeros(n, dtype=np.int64)
    reach = np.empty(1 << max(n - 1, 1), dtype=np.int64)
    for rank in range(start, stop):
        _build_adj(comb, m, eu, ev, adj)
        code = classify(adj, n, m, use_filters, shared_ok, reach)
        counts[code] += 1
        if code == SURVIVOR and first_survivor < 0:
            first_survivor = rank
        if spot_mod > 0 and code != ORACLE_REJECTED and code != SURVIVOR:
            if _mix(rank, seed) % spot_mod == 0:
                spot[0] += 1
                u, _ = first_unextendable(adj, n, reach)
                if u < 0:
                    spot[1] += 1
        if m > 0 and rank + 1 < stop:
            next_colex(comb, m)
    return counts, spot, first_survivor


@njit(cache=True)
def classify_range(n, m, start, stop, use_filters, shared_ok):
    """Per-rank classification codes for ``[start, stop)`` (for cross-checks)."""
    out = np.empty(max(stop - start, 0), dtype=np.int8)
    big = n * (n - 1) // 2
    eu = np.empty(big, dtype=np.int64)
    ev = np.empty(big, dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(a + 1, n):
            eu[k] = a
            ev[k] = b
            k += 1
    binom = binomial_table(big)
    comb = np.empty(max(m, 1), dtype=np.int64)
    if m > 0 and start < stop:
        unrank_colex(start, m, binom, comb)
    adj = np.zeros(n, dtype=np.int64)
    reach = np.empty(1 << max(n - 1, 1), dtype=np.int64)
    for rank in range(start, stop):
        _build_adj(comb, m, eu, ev, adj)
        out[rank - start] = classify(adj, n, m, use_filters, shared_ok, reach)
        if m > 0 and rank + 1 < stop:
            next_colex(comb, m)
    return out
