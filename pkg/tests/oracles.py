"""Brute-force reference implementations the test suite checks against.

Everything here favors obviousness over speed and shares no code with
the package: plain python subset loops, DFS path enumeration, and a
from-scratch flow routine. Sizes are capped by the callers.
"""

import itertools
import math

import numpy as np


def brute_max_matching_size(edges, n):
    """Branch on the lowest uncovered vertex: skip it or match it."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    def go(v, covered):
        while v < n and (covered >> v) & 1:
            v += 1
        if v >= n:
            return 0
        best = go(v + 1, covered)  # v stays unmatched
        for w in adj[v]:
            if not (covered >> w) & 1:
                best = max(best, 1 + go(v + 1, covered | (1 << v) | (1 << w)))
        return best

    return go(0, 0)


def brute_card_solvable(edges, n, b):
    """All 2^m edge subsets at once; per-vertex counts by matrix product."""
    m = len(edges)
    if m == 0:
        return all(x == 0 for x in b)
    inc = np.zeros((m, n), dtype=np.int64)
    for i, (u, v) in enumerate(edges):
        inc[i, u] += 1
        inc[i, v] += 1
    masks = np.arange(1 << m, dtype=np.uint64)
    bits = (masks[:, None] >> np.arange(m, dtype=np.uint64)) & 1
    counts = bits.astype(np.int64) @ inc
    return bool(np.any(np.all(counts == np.asarray(b), axis=1)))


def brute_independence_number(edges, n):
    masks = np.arange(1 << n, dtype=np.uint64)
    ok = np.ones(1 << n, dtype=bool)
    for u, v in edges:
        ok &= ~(((masks >> np.uint64(u)) & np.uint64(1)).astype(bool)
                & ((masks >> np.uint64(v)) & np.uint64(1)).astype(bool))
    sizes = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        sizes += ((masks >> np.uint64(i)) & np.uint64(1)).astype(np.int64)
    return int(sizes[ok].max())


def brute_vertex_expansion(edges, n):
    """min |N(U)\\U|/|U| over 1 <= |U| <= n/2, plain python."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = math.inf
    for mask in range(1, 1 << n):
        u_set = [v for v in range(n) if (mask >> v) & 1]
        if len(u_set) > n // 2:
            continue
        boundary = set()
        for v in u_set:
            boundary |= adj[v]
        boundary -= set(u_set)
        best = min(best, len(boundary) / len(u_set))
    return best


def brute_diameter(edges, n):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    worst = 0
    for s in range(n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        if len(dist) < n:
            return math.inf
        worst = max(worst, max(dist.values()))
    return worst


def brute_parity_distances(edges, n, src, forbidden=()):
    """Shortest simple-path length per (vertex, parity) by DFS over all
    simple paths. Forbidden vertices may end a path, never continue one.
    even[src] = 0; odd[src] = shortest odd cycle through src."""
    bad = set(forbidden)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    even = [math.inf] * n
    odd = [math.inf] * n
    even[src] = 0

    def dfs(v, visited, length):
        table = odd if length % 2 else even
        if length and length < table[v]:
            table[v] = length
        if v in bad:
            return
        for w in adj[v]:
            if w == src and length % 2 == 0 and length >= 2:
                # closing edge makes an odd cycle through src
                odd[src] = min(odd[src], length + 1)
            if w not in visited and w != src:
                visited.add(w)
                dfs(w, visited, length + 1)
                visited.discard(w)

    dfs(src, {src}, 0)
    return even, odd


def brute_shortest_odd_cycle(edges, n):
    """Length of the shortest odd cycle, or inf. DFS over simple paths
    from each anchor, counting only cycles through the anchor whose
    vertices are all >= anchor (each cycle found at its min vertex)."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = math.inf

    def dfs(anchor, v, visited, length):
        nonlocal best
        if length + 1 >= best:
            return
        for w in adj[v]:
            if w == anchor and length >= 2 and length % 2 == 0:
                best = length + 1
            elif w > anchor and w not in visited:
                visited.add(w)
                dfs(anchor, w, visited, length + 1)
                visited.discard(w)

    for a in range(n):
        dfs(a, a, {a}, 0)
    return best


def brute_menger(edges, n, a_set, b_set, cap=None):
    """Max internally vertex-disjoint A-B paths (endpoints exclusive),
    by DFS augmenting on a dict-based split network built from scratch."""
    a_set, b_set = set(a_set), set(b_set)
    interior = set(range(n)) - a_set - b_set
    big = n + 1

    res = {}

    def arc(x, y, c):
        res.setdefault(x, {})[y] = res.get(x, {}).get(y, 0) + c
        res.setdefault(y, {}).setdefault(x, 0)

    for v in interior:
        arc(("in", v), ("out", v), 1)
    for v in a_set:
        arc("S", ("out", v), big)
    for v in b_set:
        arc(("in", v), "T", big)
    for u, v in edges:
        for p, q in ((u, v), (v, u)):
            if p in b_set or q in a_set:
                continue  # paths never leave B or re-enter A
            arc(("out", p), ("in", q), 1)

    def augment(x, seen):
        if x == "T":
            return True
        seen.add(x)
        for y, c in res.get(x, {}).items():
            if c > 0 and y not in seen and augment(y, seen):
                res[x][y] -= 1
                res[y][x] += 1
                return True
        return False

    flow = 0
    limit = cap if cap is not None else big
    while flow < limit and augment("S", set()):
        flow += 1
    return flow


def enumerate_assignments(n_vars, support=None):
    """All 0/1 dicts over the support (default all variables)."""
    sup = sorted(support) if support is not None else list(range(n_vars))
    for bits in itertools.product((0, 1), repeat=len(sup)):
        yield dict(zip(sup, bits))


def eval_linear(terms, rhs, modulus, assignment):
    """Independent reading of a linear constraint: terms are (var,
    positive) pairs, count literal values, compare to rhs (mod m)."""
    total = 0
    for var, positive in terms:
        x = assignment[var]
        total += x if positive else 1 - x
    if modulus is None:
        return total == rhs
    return total % modulus == rhs % modulus


def formula_sat_set(formula, support=None):
    """Frozenset of satisfying assignments (as sorted item tuples) by
    exhaustive enumeration using eval_linear only."""
    sup = set()
    for c in formula.constraints:
        sup |= {t.var for t in c.terms}
    if support is not None:
        sup |= set(support)
    out = set()
    for a in enumerate_assignments(0, sup):
        good = True
        for c in formula.constraints:
            if not eval_linear([(t.var, t.positive) for t in c.terms], c.rhs, c.modulus, a):
                good = False
                break
        if good:
            out.add(tuple(sorted(a.items())))
    return frozenset(out)


def cnf_sat_set(cnf, support):
    """Satisfying assignments of a CNF over an explicit support."""
    out = set()
    for a in enumerate_assignments(0, support):
        good = True
        for clause in cnf.clauses:
            if not any(
                (a[abs(lit) - 1] == 1) == (lit > 0) for lit in clause
            ):
                good = False
                break
        if good:
            out.add(tuple(sorted(a.items())))
    return frozenset(out)


def triangle_count(edges, n):
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    return round(float(np.trace(a @ a @ a)) / 6)


def bfs_set_distance(edges, n, t_set, u_set, removed=()):
    """Distance between vertex sets in the graph minus ``removed``."""
    gone = set(removed)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if u not in gone and v not in gone:
            adj[u].append(v)
            adj[v].append(u)
    frontier = [v for v in t_set if v not in gone]
    dist = {v: 0 for v in frontier}
    targets = {v for v in u_set if v not in gone}
    while frontier:
        if targets & dist.keys():
            break
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    hits = [dist[v] for v in targets if v in dist]
    return min(hits) if hits else math.inf
