"""Maximum matching (Edmonds blossom) and degree-constrained assignments.

``solve_card`` reduces "pick a 0/1 value per edge so each vertex v has
exactly b_v incident ones" to perfect matching in a gadget graph: vertex
v becomes deg(v) edge stubs plus deg(v) - b_v dummies joined completely
to the stubs, and each original edge joins its two stubs.  A perfect
matching of the gadget leaves exactly b_v stub-stub edges matched at v.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Optional, Sequence, Tuple

from .graphs import Graph, GraphError

__all__ = [
    "max_matching",
    "matching_size",
    "is_matching",
    "solve_card",
    "verify_assignment",
]


def _neighbor_lists(n: int, edges) -> list:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _blossom_match(n: int, adj: list) -> list:
    """Partner array for a maximum matching (-1 for exposed vertices).

    Classic O(V^3) blossom contraction: alternating BFS from each exposed
    vertex, contracting odd cycles by rebasing them on their stem LCA.
    Deterministic for a fixed vertex numbering.
    """
    match = [-1] * n
    # greedy warm start cuts the number of augmentation phases
    for u in range(n):
        if match[u] < 0:
            for v in adj[u]:
                if match[v] < 0:
                    match[u] = v
                    match[v] = u
                    break

    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        x = a
        while True:
            x = base[x]
            seen[x] = True
            if match[x] < 0:
                break
            x = parent[match[x]]
        x = b
        while True:
            x = base[x]
            if seen[x]:
                return x
            x = parent[match[x]]

    def mark_path(v: int, stem: int, child: int, blossom: list) -> None:
        while base[v] != stem:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def augment_from(root: int) -> bool:
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    # odd cycle: contract the blossom at the stem LCA
                    stem = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, stem, to, blossom)
                    mark_path(to, stem, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = stem
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        # augmenting path reached an exposed vertex
                        cur = to
                        while cur >= 0:
                            prev = parent[cur]
                            nxt = match[prev]
                            match[cur] = prev
                            match[prev] = cur
                            cur = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for u in range(n):
        if match[u] < 0:
            augment_from(u)
    return match


def max_matching(g: Graph) -> Tuple[Tuple[int, int], ...]:
    """Maximum-cardinality matching as a sorted tuple of edges (u < v)."""
    adj = [list(g.neighbors(v)) for v in range(g.n)]
    match = _blossom_match(g.n, adj)
    out = []
    for u in range(g.n):
        v = match[u]
        if v > u:
            out.append((u, v))
    return tuple(out)


def matching_size(g: Graph) -> int:
    return len(max_matching(g))


def is_matching(g: Graph, edges) -> bool:
    """True when ``edges`` are edges of g and pairwise vertex-disjoint."""
    seen = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            return False
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def solve_card(g: Graph, b: Sequence[int]) -> Optional[Dict[int, int]]:
    """0/1 edge assignment with exactly b_v ones at each vertex, or None.

    Returns a dict keyed by edge id (position in ``g.edges``).  Odd total
    demand, any b_v outside [0, deg(v)], or a failed gadget matching all
    yield None; a malformed b (wrong length, negative entries) raises.
    """
    if len(b) != g.n:
        raise GraphError(f"b has length {len(b)}, expected {g.n}")
    b = [int(x) for x in b]
    if any(x < 0 for x in b):
        raise GraphError("negative demand")
    if any(b[v] > g.degree(v) for v in range(g.n)):
        return None
    if sum(b) % 2 != 0:
        return None
    if g.m == 0:
        return {} if all(x == 0 for x in b) else None

    # gadget vertex ids: stubs first (one per edge endpoint), then dummies
    stub_of = {}  # (vertex, edge_id) -> gadget id
    gadget_edges = []
    next_id = 0
    incident = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        incident[u].append(eid)
        incident[v].append(eid)
    for v in range(g.n):
        for eid in incident[v]:
            stub_of[(v, eid)] = next_id
            next_id += 1
    for v in range(g.n):
        spare = g.degree(v) - b[v]
        dummies = range(next_id, next_id + spare)
        next_id += spare
        for d in dummies:
            for eid in incident[v]:
                gadget_edges.append((stub_of[(v, eid)], d))
    for eid, (u, v) in enumerate(g.edges):
        gadget_edges.append((stub_of[(u, eid)], stub_of[(v, eid)]))

    total = next_id
    if total % 2 != 0:
        return None
    match = _blossom_match(total, _neighbor_lists(total, gadget_edges))
    if any(p < 0 for p in match):
        return None
    assignment = {}
    for eid, (u, v) in enumerate(g.edges):
        assignment[eid] = (
            1 if match[stub_of[(u, eid)]] == stub_of[(v, eid)] else 0
        )
    return assignment


def verify_assignment(g: Graph, b: Sequence[int], x) -> bool:
    """Check that edge values x (dict by edge id, or sequence in edge
    order) are 0/1 and sum to b_v at every vertex."""
    if len(b) != g.n:
        raise GraphError(f"b has length {len(b)}, expected {g.n}")
    if hasattr(x, "keys"):
        values = [x.get(i, 0) for i in range(g.m)]
    else:
        values = list(x)
    if len(values) != g.m:
        raise GraphError(f"assignment has length {len(values)}, expected {g.m}")
    if any(v not in (0, 1) for v in values):
        return False
    load = [0] * g.n
    for eid, (u, v) in enumerate(g.edges):
        load[u] += values[eid]
        load[v] += values[eid]
    return all(load[v] == int(b[v]) for v in range(g.n))
