"""Topological-minor embedding into expanders: crosses, disjoint-path
routing, parity-controlled connections, and the full embed/unembed loop.

The construction embeds each guest vertex as a "cross" (a center plus r
equal-size connected branches touching the center's neighborhood) and
connects adjacent guests by paths that run branch-to-branch through the
free set C.  Discarded vertices split into A (poorly expanding into C)
and A' (possibly well expanding, but provably few).  The state keeps
A, A', the embedded sets, and C as an exact partition of V(G) at all
times.

Two parameter modes exist.  Faithful mode uses the theory constants
(branch count (1+4/beta)d - 1, branch size ~ (18*c/beta) log n, branch
pool (1+1/gamma)r); these need n in the millions before they fit, so
they are only exercised on formula-level tests.  Engineering mode scales
everything down (r = ceil(rho*d), s = ceil(sigma*log2 n), pool =
ceil(eta*r)) and keeps every structural postcondition checkable; the
quantitative ledger bounds that engineering constants deliberately give
up are recorded per run instead of asserted.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Dict, List, NamedTuple, Optional, Tuple

from .expansion import c_alpha, fix_expansion
from .graphs import (
    Graph,
    GraphError,
    MultiGraph,
    PARITY_EXACT_LIMIT,
    Path,
)
from .rng import Rng

__all__ = [
    "CrossError",
    "NoCenterError",
    "NoBranchError",
    "CrossBudgetError",
    "EmbedParams",
    "embed_parameters",
    "Cross",
    "CrossResult",
    "find_cross",
    "vertex_disjoint_paths",
    "parity_path_between_sets",
    "EmbedState",
    "unembed_vertex",
    "TopologicalEmbedding",
    "EmbedResult",
    "embed_graph",
    "verify_embedding",
]


class CrossError(GraphError):
    """Cross construction failed; subclasses say at which step."""


class NoCenterError(CrossError):
    pass


class NoBranchError(CrossError):
    pass


class CrossBudgetError(CrossError):
    pass


# ---------------------------------------------------------------------------
# parameters


class EmbedParams(NamedTuple):
    alpha: float
    beta: float
    gamma: float
    k: int
    s: int
    mode: str  # "faithful" or "engineering"
    rho: float  # engineering branch-count scale
    eta: float  # engineering branch-pool scale
    path_slack: int  # extra length allowed beyond 3s+2

    def r(self, d: int) -> int:
        if self.mode == "faithful":
            return math.ceil(d * (1 + 4 / self.beta)) - 1
        return max(d, math.ceil(self.rho * d))

    def r_pool(self, r: int) -> int:
        if self.mode == "faithful":
            return math.ceil((1 + 1 / self.gamma) * r)
        return max(r + 1, math.ceil(self.eta * r))

    def path_budget(self) -> int:
        return 3 * self.s + 2 + self.path_slack


def embed_parameters(
    alpha: float,
    n: int,
    mode: str = "engineering",
    k: int = 6,
    sigma: float = 2.0,
    rho: float = 3.0,
    eta: float = 1.5,
    s: Optional[int] = None,
    path_slack: int = 2,
) -> EmbedParams:
    """Derive the embedding constants for an alpha-expander on n vertices.

    beta = alpha/(3(1+alpha)) is the separator constant, gamma repeats
    the construction one level down.  Faithful mode computes the branch
    size s from the theory (with its 1/gamma floor); engineering mode
    uses ceil(sigma*log2 n) and drops the floor.  An explicit ``s``
    overrides either.
    """
    if alpha <= 0:
        raise GraphError("alpha must be positive")
    if n < 2:
        raise GraphError("n must be at least 2")
    if mode not in ("faithful", "engineering"):
        raise GraphError(f"unknown mode {mode!r}")
    if k < 3:
        raise GraphError("k must be at least 3")
    beta = alpha / (3 * (1 + alpha))
    gamma = beta / (3 * (1 + beta))
    if s is None:
        if mode == "faithful":
            # the 1/gamma floor is dominated by this value for every
            # alpha (18*c/beta > 3(1+beta)/beta), so it is not applied
            s = math.ceil((18 * c_alpha(beta / 2) / beta) * math.log2(n))
        else:
            s = max(1, math.ceil(sigma * math.log2(n)))
    return EmbedParams(alpha, beta, gamma, k, int(s), mode, rho, eta, path_slack)


# ---------------------------------------------------------------------------
# crosses


class Cross(NamedTuple):
    center: int
    branches: tuple  # of frozensets, pairwise disjoint, equal size

    def vertices(self) -> frozenset:
        out = {self.center}
        for b in self.branches:
            out |= b
        return frozenset(out)

    def validate(self, g: Graph) -> bool:
        seen = {self.center}
        sizes = {len(b) for b in self.branches}
        if len(self.branches) and len(sizes) != 1:
            return False
        nbrs = set(g.neighbors(self.center))
        for b in self.branches:
            if self.center in b or (seen - {self.center}) & b:
                return False
            if not b & nbrs:
                return False
            if not _is_connected_within(g, b):
                return False
            seen |= b
        return True


def _is_connected_within(g: Graph, vertices) -> bool:
    vs = set(vertices)
    if not vs:
        return False
    start = min(vs)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w in vs and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == vs


def _components_within(g: Graph, vertices) -> List[List[int]]:
    vs = set(vertices)
    comps = []
    while vs:
        start = min(vs)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w in vs and w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(seen))
        vs -= seen
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def _grow_connected(g: Graph, pool: set, size: int) -> Optional[frozenset]:
    """Deterministic connected subset of ``size`` vertices in G[pool]:
    BFS order from the lowest vertex of the largest component."""
    comps = _components_within(g, pool)
    if not comps or len(comps[0]) < size:
        return None
    comp = set(comps[0])
    start = comps[0][0]
    out = [start]
    seen = {start}
    queue = deque([start])
    while queue and len(out) < size:
        v = queue.popleft()
        for w in sorted(g.neighbors(v)):
            if w in comp and w not in seen:
                seen.add(w)
                out.append(w)
                queue.append(w)
                if len(out) == size:
                    break
    return frozenset(out[:size])


def _neighborhood_in(g: Graph, vertices, pool: set) -> set:
    out = set()
    for v in vertices:
        for w in g.neighbors(v):
            if w in pool:
                out.add(w)
    return out - set(vertices)


class CrossResult(NamedTuple):
    cross: Cross
    new_c: frozenset
    a_additions: frozenset


def _carve_branch(
    g: Graph, c_loc: set, s: int, hard_shield: bool
) -> Optional[frozenset]:
    """One connected s-set out of C, shielding the current highest-degree
    vertex of G[C] (the prospective center) from being swallowed.  With a
    soft shield the carve falls back to the full C when the shielded
    pool cannot supply one; a hard shield gives up instead."""
    hub = None
    best_deg = -1
    for v in sorted(c_loc):
        dv = sum(1 for w in g.neighbors(v) if w in c_loc)
        if dv > best_deg:
            best_deg = dv
            hub = v
    if hub is not None:
        u = _grow_connected(g, c_loc - {hub}, s)
        if u is not None:
            return u
    if hard_shield:
        return None
    return _grow_connected(g, c_loc, s)


def find_cross(
    g: Graph,
    c,
    r: int,
    s: int,
    beta: float,
    k: int = 6,
    rng: Optional[Rng] = None,
    r_pool: Optional[int] = None,
    budget: Optional[int] = None,
    exact_limit: Optional[int] = None,
) -> CrossResult:
    """Build an (r, s)-cross inside G[C].

    Carves connected s-sets out of C into a pool (restoring
    gamma-expansion of G[C] after each carve, and discarding any pool
    family whose union of neighborhoods in C is below gamma*s per
    member) until ``r_pool`` branches survive.  Then picks the
    lowest-indexed center of degree >= r_pool, fixes one distinct
    contact per branch (a transversal of the branch neighborhoods), and
    routes r vertex-disjoint paths from the center's neighborhood to the
    contacts; each path fused with its branch, trimmed back to s
    vertices, becomes a final branch.

    When the contact/path scaffolding has no room (small C), a combined
    flow does the same job in one step: unit vertex capacities on C,
    unit capacity per pool branch, paths allowed to enter a branch
    directly.  The center degree test likewise falls back from degree
    within C to degree within C plus the pool.

    Unused pool branches and trimmed leftovers return to C.  Every
    "any" choice is deterministic; ``rng`` is accepted for interface
    stability and unused.  Raises NoBranchError / NoCenterError /
    CrossBudgetError when the corresponding step is exhausted.
    """
    del rng
    c0 = set(int(v) for v in c)
    if r < 1 or s < 1:
        raise GraphError("r and s must be positive")
    gamma = beta / (3 * (1 + beta))
    if r_pool is None:
        r_pool = max(r + 1, math.ceil(1.5 * r))
    if budget is None:
        budget = max(1, math.ceil(len(c0) / k))
    return _build_cross(
        g,
        c0,
        r,
        s,
        gamma,
        r_pool,
        budget,
        exact_limit,
        per_carve_fix=True,
        use_family=True,
        hard_shield=False,
        center_need=r_pool,
    )


def _rescue_cross(
    g, c, r: int, s: int, beta: float, r_pool: int, budget: int, exact_limit=None
) -> CrossResult:
    """Desk-scale cross construction for hosts far below the size the
    expansion filters are calibrated for.  Same carve/assemble machinery
    as find_cross, but skips the per-carve expansion repair and the
    poorly-expanding-family discard (both shred tiny C sets), refuses to
    carve the prospective center, and demands only the r branch
    attachments actually needed."""
    c0 = set(int(v) for v in c)
    gamma = beta / (3 * (1 + beta))
    return _build_cross(
        g,
        c0,
        r,
        s,
        gamma,
        r_pool,
        budget,
        exact_limit,
        per_carve_fix=False,
        use_family=False,
        hard_shield=True,
        center_need=r,
    )


def _build_cross(
    g,
    c0,
    r,
    s,
    gamma,
    r_pool,
    budget,
    exact_limit,
    per_carve_fix,
    use_family,
    hard_shield,
    center_need,
) -> CrossResult:
    c_loc = set(c0)
    a_loc: set = set()

    # entry check of the expander precondition, constructively: fold any
    # heuristically-found sparse cut into A before carving
    fixed = fix_expansion(g, c_loc, a_loc, gamma, exact_limit)
    c_loc = set(fixed.c)
    a_loc = set(fixed.a)

    pool: List[frozenset] = []
    while len(pool) < r_pool:
        if len(a_loc) > budget:
            raise CrossBudgetError(
                f"discarded {len(a_loc)} > budget {budget} while collecting branches"
            )
        u = _carve_branch(g, c_loc, s, hard_shield)
        if u is None:
            if len(pool) >= r:
                break  # assemble from the short pool
            raise NoBranchError(
                f"no connected {s}-subset left in C (|C|={len(c_loc)})"
            )
        pool.append(u)
        c_loc -= u
        if per_carve_fix:
            fixed = fix_expansion(g, c_loc, a_loc, gamma, exact_limit)
            c_loc = set(fixed.c)
            a_loc = set(fixed.a)

        if not use_family:
            continue
        # greedily peel off a poorly-expanding family: grow while the
        # union of neighborhoods stays below gamma*s per member
        remaining = list(pool)
        family: List[frozenset] = []
        union: set = set()
        while remaining:
            best = min(
                remaining,
                key=lambda f: (len(_neighborhood_in(g, f, c_loc) - union), sorted(f)),
            )
            new_union = union | _neighborhood_in(g, best, c_loc)
            if len(new_union) < gamma * s * (len(family) + 1):
                family.append(best)
                union = new_union
                remaining.remove(best)
            else:
                break
        if family:
            fam_set = set(family)
            pool = [b for b in pool if b not in fam_set]
            for f in family:
                a_loc |= f

    pool_vertices: set = set().union(*pool) if pool else set()
    need = center_need
    center = None
    for v in sorted(c_loc):
        if sum(1 for w in g.neighbors(v) if w in c_loc) >= need:
            center = v
            break
    if center is None:
        # small-C fallback: count pool vertices too (the paths may enter
        # branches directly, so those neighbors are usable)
        for v in sorted(c_loc):
            deg = sum(
                1 for w in g.neighbors(v) if w in c_loc or w in pool_vertices
            )
            if deg >= need:
                center = v
                break
    if center is None:
        raise NoCenterError(
            f"no vertex of degree >= {need} in G[C] (|C|={len(c_loc)})"
        )

    assembled = _assemble_via_contacts(g, c_loc, pool, center, r, s)
    if assembled is None:
        assembled = _assemble_via_flow(g, c_loc, pool, center, r, s)
    if assembled is None:
        raise CrossError(
            f"cannot route {r} disjoint center-to-branch paths (|C|={len(c_loc)})"
        )
    branches, used_from_c = assembled

    cross = Cross(center, tuple(branches))
    new_c = (c_loc | pool_vertices) - {center} - used_from_c
    return CrossResult(cross, frozenset(new_c), frozenset(a_loc))


def _assemble_via_contacts(g, c_loc, pool, center, r, s):
    """Transversal of the branch neighborhoods in C, then vertex-disjoint
    paths from the center's neighborhood to the contacts."""
    candidates = [
        sorted(_neighborhood_in(g, b, c_loc) - {center}) for b in pool
    ]
    rep_of = _transversal(candidates)
    if rep_of is None:
        return None
    sub_pool = c_loc - {center}
    sources = sorted(w for w in g.neighbors(center) if w in sub_pool)
    targets = sorted(set(rep_of))
    paths = _disjoint_paths_within(g, sub_pool, sources, targets, r)
    if len(paths) < r:
        return None
    target_branch = {rep_of[i]: i for i in range(len(pool))}
    branches = []
    consumed: set = set()
    for p in paths[:r]:
        b = pool[target_branch[p[-1]]]
        fused = set(p) | set(b)
        trimmed = _bfs_prefix(g, fused, p[0], s)
        branches.append(trimmed)
        consumed |= trimmed
    return branches, consumed


def _assemble_via_flow(g, c_loc, pool, center, r, s):
    """One flow: C-vertices carry unit capacity, each pool branch is a
    unit-capacity super-sink that paths may enter directly (even straight
    from the center's neighborhood).  Finds r disjoint branch
    attachments where the contact scaffolding has no room."""
    branch_of = {}
    for i, b in enumerate(pool):
        for v in b:
            branch_of[v] = i
    sub_pool = c_loc - {center}

    cap: Dict[Tuple[int, int], int] = {}
    adj: Dict[int, List[int]] = {}

    def add(x, y, c0):
        if (x, y) not in cap:
            cap[(x, y)] = 0
            adj.setdefault(x, []).append(y)
        if (y, x) not in cap:
            cap[(y, x)] = 0
            adj.setdefault(y, []).append(x)
        cap[(x, y)] = c0

    SRC, SNK = -1, -2
    BR = lambda i: -10 - i  # noqa: E731  branch super-node ids
    for v in sub_pool:
        add(2 * v, 2 * v + 1, 1)
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            if a in sub_pool:
                if b in sub_pool:
                    add(2 * a + 1, 2 * b, 1)
                elif b in branch_of:
                    add(2 * a + 1, BR(branch_of[b]), 1)
    for w in sorted(g.neighbors(center)):
        if w in sub_pool:
            add(SRC, 2 * w, 1)
        elif w in branch_of:
            add(SRC, BR(branch_of[w]), 1)
    for i in range(len(pool)):
        add(BR(i), SNK, 1)

    flow = 0
    parent_of: Dict[int, int] = {}
    while flow < r:
        parent_of = {SRC: SRC}
        queue = deque([SRC])
        while queue and SNK not in parent_of:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in parent_of and cap.get((x, y), 0) > 0:
                    parent_of[y] = x
                    if y == SNK:
                        break
                    queue.append(y)
        if SNK not in parent_of:
            break
        y = SNK
        while y != SRC:
            x = parent_of[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    if flow < r:
        return None

    # walk the used edges from SRC; each unit ends in a branch super-node
    used_next: Dict[int, int] = {}
    branch_entry: Dict[int, int] = {}  # out-node -> branch index
    for (x, y), c0 in cap.items():
        if c0 == 0 and cap.get((y, x), 0) > 0:
            if x >= 0 and y >= 0:
                used_next[x] = y
            elif x >= 0 and y <= -10:
                branch_entry[x] = -10 - y
    branches = []
    consumed: set = set()
    used_srcs = [y for (x, y), c0 in cap.items() if x == SRC and c0 == 0]
    count = 0
    for start in sorted(used_srcs):
        if count == r:
            break
        if start <= -10:
            # direct center-to-branch attachment
            b = pool[-10 - start]
            contact = min(set(g.neighbors(center)) & set(b))
            trimmed = _bfs_prefix(g, set(b), contact, s)
            branches.append(trimmed)
            consumed |= trimmed
            count += 1
            continue
        seq = []
        node = start  # a 2v in-node
        reached = None
        while True:
            seq.append(node // 2)
            out = node + 1
            if out in branch_entry:
                reached = branch_entry[out]
                break
            nxt = used_next.get(out)
            if nxt is None:
                break
            node = nxt
        if reached is None:
            continue
        b = pool[reached]
        fused = set(seq) | set(b)
        trimmed = _bfs_prefix(g, fused, seq[0], s)
        branches.append(trimmed)
        consumed |= trimmed
        count += 1
    if count < r:
        return None
    return branches[:r], consumed


def _bfs_prefix(g: Graph, vertices: set, start: int, size: int) -> frozenset:
    """First ``size`` vertices of a BFS of G[vertices] from start."""
    out = [start]
    seen = {start}
    queue = deque([start])
    while queue and len(out) < size:
        v = queue.popleft()
        for w in sorted(g.neighbors(v)):
            if w in vertices and w not in seen:
                seen.add(w)
                out.append(w)
                queue.append(w)
                if len(out) == size:
                    break
    return frozenset(out[:size])


def _transversal(candidates: List[List[int]]) -> Optional[List[int]]:
    """Distinct representative per candidate list (Hopcroft-style
    augmenting search), or None if Hall's condition fails."""
    match_of: Dict[int, int] = {}  # vertex -> list index

    def augment(i: int, seen: set) -> bool:
        for v in candidates[i]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_of or augment(match_of[v], seen):
                match_of[v] = i
                return True
        return False

    for i in range(len(candidates)):
        if not augment(i, set()):
            return None
    rep = [0] * len(candidates)
    for v, i in match_of.items():
        rep[i] = v
    return rep


# ---------------------------------------------------------------------------
# disjoint paths (unit vertex capacities via vertex splitting)


def vertex_disjoint_paths(g: Graph, a, b, want: int) -> List[Path]:
    """Up to ``want`` internally vertex-disjoint paths from A to B.

    Max flow with unit capacities on the vertices outside A and B;
    endpoints are exclusive as endpoints (several paths may start or end
    at the same A- or B-vertex, but no path passes through one).  The
    returned count equals min(want, the corresponding Menger number).
    Vertices in both A and B yield zero-length paths.
    """
    a_set = set(int(v) for v in a)
    b_set = set(int(v) for v in b)
    if not a_set or not b_set:
        raise GraphError("A and B must be nonempty")
    both = a_set & b_set
    interior_ok = set(range(g.n)) - a_set - b_set

    SRC, SNK = -1, -2
    BIG = max(want, g.n) + 1
    cap: Dict[Tuple[int, int], int] = {}
    adj: Dict[int, List[int]] = {}

    def add(x, y, c0):
        if (x, y) not in cap:
            cap[(x, y)] = 0
            adj.setdefault(x, []).append(y)
        if (y, x) not in cap:
            cap[(y, x)] = 0
            adj.setdefault(y, []).append(x)
        cap[(x, y)] = c0

    for v in interior_ok:
        add(2 * v, 2 * v + 1, 1)
    for v in a_set:
        add(SRC, 2 * v, 1 if v in both else BIG)
    for v in b_set:
        add(2 * v, SNK, 1 if v in both else BIG)
    for u, v in g.edges:
        for p, q in ((u, v), (v, u)):
            if p in both or q in both:
                continue  # A-and-B vertices carry zero-length paths only
            if p in a_set and q in interior_ok:
                add(2 * p, 2 * q, 1)
            elif p in a_set and q in b_set:
                add(2 * p, 2 * q, 1)
            elif p in interior_ok and q in interior_ok:
                add(2 * p + 1, 2 * q, 1)
            elif p in interior_ok and q in b_set:
                add(2 * p + 1, 2 * q, 1)

    flow = 0
    while flow < want:
        parent: Dict[int, int] = {SRC: SRC}
        queue = deque([SRC])
        while queue and SNK not in parent:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in parent and cap.get((x, y), 0) > 0:
                    parent[y] = x
                    if y == SNK:
                        break
                    queue.append(y)
        if SNK not in parent:
            break
        y = SNK
        while y != SRC:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1

    used_next: Dict[int, int] = {}
    a_starts: List[Tuple[int, int]] = []  # (a-vertex, first node)
    for (x, y), c0 in cap.items():
        if x == SRC or y == SNK or x < 0 or y < 0:
            continue
        if c0 == 0 and cap.get((y, x), 0) > 0:
            if x % 2 == 0 and x // 2 in a_set:
                a_starts.append((x // 2, y))
            else:
                used_next[x] = y
    # zero-length paths for saturated A-and-B vertices
    paths = []
    for v in sorted(both):
        if cap.get((SRC, 2 * v), 1) == 0:
            paths.append(Path((v,)))
    for av, node in sorted(a_starts):
        seq = [av]
        while True:
            seq.append(node // 2)
            if node // 2 in b_set:
                break
            nxt = used_next.get(node + 1)
            if nxt is None:
                break
            node = nxt
        if seq[-1] in b_set:
            paths.append(Path(tuple(seq)))
    return paths[:want]


def _disjoint_paths_within(
    g: Graph, pool: set, sources: List[int], sinks: List[int], want: int
) -> List[Tuple[int, ...]]:
    """Vertex-disjoint source->sink paths inside G[pool], as tuples."""
    sources = [v for v in sources if v in pool]
    sink_set = set(v for v in sinks if v in pool)
    if not sources or not sink_set or want <= 0:
        return []
    # node ids: 2v = v_in, 2v+1 = v_out; edges via residual adjacency
    # capacities: v_in->v_out 1; u_out->v_in 1 per graph edge; source/
    # sink coupling handled by starting BFS at source v_in and stopping
    # at sink v_out
    cap: Dict[Tuple[int, int], int] = {}
    adj: Dict[int, List[int]] = {}

    def add_edge(x: int, y: int):
        if (x, y) not in cap:
            cap[(x, y)] = 0
            adj.setdefault(x, []).append(y)
        if (y, x) not in cap:
            cap[(y, x)] = 0
            adj.setdefault(y, []).append(x)

    for v in pool:
        add_edge(2 * v, 2 * v + 1)
        cap[(2 * v, 2 * v + 1)] = 1
    for u, v in g.edges:
        if u in pool and v in pool:
            add_edge(2 * u + 1, 2 * v)
            cap[(2 * u + 1, 2 * v)] = 1
            add_edge(2 * v + 1, 2 * u)
            cap[(2 * v + 1, 2 * u)] = 1

    SRC, SNK = -1, -2
    for v in sources:
        add_edge(SRC, 2 * v)
        cap[(SRC, 2 * v)] = 1
    for v in sink_set:
        add_edge(2 * v + 1, SNK)
        cap[(2 * v + 1, SNK)] = 1

    flow = 0
    while flow < want:
        parent: Dict[int, int] = {SRC: SRC}
        queue = deque([SRC])
        while queue and SNK not in parent:
            x = queue.popleft()
            for y in adj.get(x, ()):
                if y not in parent and cap.get((x, y), 0) > 0:
                    parent[y] = x
                    if y == SNK:
                        break
                    queue.append(y)
        if SNK not in parent:
            break
        y = SNK
        while y != SRC:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1

    # decompose: follow used v_in->v_out edges from each saturated source
    used_next: Dict[int, int] = {}
    for (x, y), c0 in cap.items():
        if x >= 0 and y >= 0 and c0 == 0 and cap.get((y, x), 0) > 0:
            # forward edge fully used
            used_next.setdefault(x, y)
    paths = []
    for v in sources:
        if cap.get((SRC, 2 * v), 1) != 0:
            continue
        seq = []
        node = 2 * v
        while True:
            seq.append(node // 2)
            out = node + 1
            if cap.get((out, SNK), 0) == 0 and (out, SNK) in cap:
                break
            nxt = used_next.get(out)
            if nxt is None:
                break
            node = nxt
        if seq and seq[-1] in sink_set:
            paths.append(tuple(seq))
        if len(paths) == want:
            break
    return paths


# ---------------------------------------------------------------------------
# parity-controlled paths

_INF = math.inf


def parity_path_between_sets(
    g: Graph,
    c,
    from_set,
    to_set,
    parity: int,
    max_len: Optional[int] = None,
) -> Optional[Path]:
    """A simple path of the requested parity inside G[C] from some vertex
    of ``from_set`` to some vertex of ``to_set``, or None.

    Exact (exhaustive over simple paths) when the working set is small;
    above that, shortest parity walks with simplicity repair, so None is
    then "not found", not a nonexistence certificate.
    """
    pool = set(int(v) for v in c)
    src = sorted(set(int(v) for v in from_set))
    dst = set(int(v) for v in to_set)
    parity = int(parity) % 2
    if not src or not dst:
        raise GraphError("endpoint sets must be nonempty")
    if set(src) & dst:
        raise GraphError("endpoint sets must be disjoint")
    if not (set(src) <= pool and dst <= pool):
        raise GraphError("endpoint sets must lie inside C")
    if max_len is None:
        max_len = len(pool)

    if len(pool) <= PARITY_EXACT_LIMIT:
        best = _exact_set_path(g, pool, src, dst, parity, max_len)
        return Path(best) if best is not None else None

    forbid_extra: set = set()
    for _ in range(len(pool)):
        walk = _parity_walk(g, pool - forbid_extra, src, dst, parity)
        if walk is None:
            return None
        if len(walk) > max_len + 1:
            return None
        rep = _first_repeat(walk)
        if rep is None:
            return Path(walk)
        forbid_extra.add(rep)
    return None


def _exact_set_path(g, pool, src, dst, parity, max_len):
    best: Optional[tuple] = None

    def dfs(v, visited, path):
        nonlocal best
        if v in dst and (len(path) - 1) % 2 == parity and len(path) >= 2:
            if best is None or len(path) < len(best):
                best = tuple(path)
        if best is not None and len(path) >= len(best):
            return
        if len(path) - 1 >= max_len:
            return
        for w in sorted(g.neighbors(v)):
            if w in pool and w not in visited:
                visited.add(w)
                path.append(w)
                dfs(w, visited, path)
                path.pop()
                visited.discard(w)

    for s0 in src:
        dfs(s0, {s0}, [s0])
    return best


def _parity_walk(g, pool, src, dst, parity):
    """Shortest walk of given parity from src to dst within pool (may
    repeat vertices)."""
    dist: Dict[Tuple[int, int], int] = {}
    parent: Dict[Tuple[int, int], Optional[Tuple[int, int]]] = {}
    queue = deque()
    for v in src:
        if v in pool:
            st = (v, 0)
            if st not in dist:
                dist[st] = 0
                parent[st] = None
                queue.append(st)
    goal = None
    while queue:
        v, p = queue.popleft()
        if v in dst and p == parity and dist[(v, p)] > 0:
            goal = (v, p)
            break
        for w in g.neighbors(v):
            if w not in pool:
                continue
            st = (w, 1 - p)
            if st not in dist:
                dist[st] = dist[(v, p)] + 1
                parent[st] = (v, p)
                queue.append(st)
    if goal is None:
        return None
    seq = []
    st: Optional[Tuple[int, int]] = goal
    while st is not None:
        seq.append(st[0])
        st = parent[st]
    return tuple(reversed(seq))


def _first_repeat(seq) -> Optional[int]:
    seen = set()
    for v in seq:
        if v in seen:
            return v
        seen.add(v)
    return None


# ---------------------------------------------------------------------------
# embedding state


class EmbedState:
    """Mutable embedding state: the partition A | A' | embedded | C plus
    the per-guest crosses and per-edge paths, with a running ledger.

    Ledger bounds (|A'| < beta|A|/2, |C| >= n(1-2/k), N(A,C) < beta|A|)
    abort in faithful mode and are recorded as events in engineering
    mode, where the scaled-down constants give them up by design.  The
    partition identity and C-monotonicity are hard assertions always.
    """

    def __init__(self, g: Graph, h, params: EmbedParams):
        self.g = g
        self.h = h
        self.params = params
        self.a: set = set()
        self.a_prime: set = set()
        self.c: set = set(range(g.n))
        self.i: set = set()
        self.crosses: Dict[int, Cross] = {}
        self.edge_segments: Dict[int, tuple] = {}
        self.full_paths: Dict[int, tuple] = {}
        self.branch_used: Dict[int, Dict[int, int]] = {}  # hv -> {branch i -> heid}
        self.ledger: List[dict] = []
        self.unembed_count = 0
        self._last_c_size = g.n

    def embedded_vertices(self) -> set:
        out = set()
        for cross in self.crosses.values():
            out |= cross.vertices()
        for seg in self.edge_segments.values():
            out |= set(seg)
        return out

    def check(self, where: str) -> None:
        n = self.g.n
        emb = self.embedded_vertices()
        parts = [self.a, self.a_prime, emb, self.c]
        total = sum(len(p) for p in parts)
        union = set().union(*parts)
        if total != n or len(union) != n:
            raise GraphError(
                f"partition broken at {where}: sizes {[len(p) for p in parts]}, "
                f"union {len(union)}, n {n}"
            )
        if len(self.c) > self._last_c_size:
            raise GraphError(f"C grew at {where}")
        self._last_c_size = len(self.c)
        beta = self.params.beta
        events = []
        if self.a and not (len(self.a_prime) < beta * len(self.a) / 2):
            events.append(
                {"kind": "aprime_bound", "a": len(self.a), "aprime": len(self.a_prime)}
            )
        if len(self.c) < n * (1 - 2 / self.params.k):
            events.append({"kind": "c_lower_bound", "c": len(self.c)})
        if self.a:
            na_c = len(_neighborhood_in(self.g, self.a, self.c))
            if not (na_c < beta * len(self.a)):
                events.append({"kind": "a_expansion", "na_c": na_c, "a": len(self.a)})
        for e in events:
            e["where"] = where
            self.ledger.append(e)
        if events and self.params.mode == "faithful":
            raise GraphError(f"ledger invariant violated at {where}: {events}")

    def free_branches(self, hv: int) -> List[int]:
        used = self.branch_used.get(hv, {})
        return [
            i
            for i in range(len(self.crosses[hv].branches))
            if i not in used
        ]


def unembed_vertex(state: EmbedState, x: int) -> "EmbedState":
    """Remove guest vertex x's cross and every edge path attached to it.

    Used branches and their edge segments (plus the center) go to A',
    unused branches go to A first; partners' branches become free again.
    Returns the mutated state.
    """
    if x not in state.i:
        raise GraphError(f"guest vertex {x} is not embedded")
    cross = state.crosses[x]
    used = dict(state.branch_used.get(x, {}))
    w: set = set()
    for heid, (u, v) in enumerate(state.h.edges):
        if x not in (u, v) or heid not in state.edge_segments:
            continue
        seg = state.edge_segments.pop(heid)
        state.full_paths.pop(heid)
        w |= set(seg)
        # free both endpoints' branches (direct edges used none)
        other = v if u == x else u
        if other in state.branch_used:
            state.branch_used[other] = {
                bi: e for bi, e in state.branch_used[other].items() if e != heid
            }
    for branch_idx in sorted(used):
        w |= set(cross.branches[branch_idx])
    unused = [
        set(b)
        for i, b in enumerate(cross.branches)
        if i not in used
    ]
    state.crosses.pop(x)
    state.branch_used.pop(x, None)
    state.i.discard(x)
    for b in unused:
        state.a |= b
    state.a_prime |= w | {cross.center}
    state.unembed_count += 1
    state.check(f"unembed({x})")
    return state


# ---------------------------------------------------------------------------
# full embedding loop


class TopologicalEmbedding(NamedTuple):
    sigma: dict  # guest vertex -> host vertex
    paths: dict  # guest edge id -> tuple of host vertices
    parities: dict  # guest edge id -> 0/1 requested
    mode: str
    seed: Optional[dict]

    def achieved_parities(self) -> dict:
        return {eid: (len(p) - 1) % 2 for eid, p in self.paths.items()}

    def to_json_obj(self) -> dict:
        return {
            "sigma": {str(k): v for k, v in sorted(self.sigma.items())},
            "paths": {str(k): list(v) for k, v in sorted(self.paths.items())},
            "parities": {str(k): v for k, v in sorted(self.parities.items())},
            "seed": self.seed,
            "mode": self.mode,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TopologicalEmbedding":
        return cls(
            {int(k): int(v) for k, v in obj["sigma"].items()},
            {int(k): tuple(v) for k, v in obj["paths"].items()},
            {int(k): int(v) for k, v in obj["parities"].items()},
            obj.get("mode", "engineering"),
            obj.get("seed"),
        )


class EmbedResult(NamedTuple):
    embedding: Optional[TopologicalEmbedding]
    failure: Optional[str]
    diagnostics: dict
    state: EmbedState


def _route_edge(
    state: EmbedState, x: int, y: int, bx: int, by: int, parity: int
) -> Optional[tuple]:
    """Center-to-center simple path of the requested total parity.

    Phased search: start at x's center, optionally traverse branch bx,
    cross the free set C, optionally traverse branch by, finish at y's
    center.  Phases only move forward, which keeps the interior inside
    the two chosen branches plus C (phases may be skipped entirely, so
    short direct connections are found too).  Returns the full vertex
    tuple, or None within the length budget.
    """
    g = state.g
    cx = state.crosses[x].center
    cy = state.crosses[y].center
    ux = set(state.crosses[x].branches[bx])
    uy = set(state.crosses[y].branches[by])
    pool_c = state.c
    budget = state.params.path_budget()

    def phase_of(v: int, prev_phase: int) -> Optional[int]:
        # 0 = x-branch, 1 = C, 2 = y-branch; monotone nondecreasing
        if v in ux:
            return 0 if prev_phase <= 0 else None
        if v in pool_c:
            return 1 if prev_phase <= 1 else None
        if v in uy:
            return 2
        return None

    forbid: set = set()
    for _ in range(max(16, g.n)):
        # BFS over (vertex, parity, phase); start states are cx's
        # neighbors inside the allowed regions
        parent: Dict[Tuple[int, int, int], Optional[Tuple[int, int, int]]] = {}
        queue = deque()
        for w in sorted(g.neighbors(cx)):
            if w in forbid or w == cy:
                continue
            if w in ux:
                ph = 0
            elif w in pool_c:
                ph = 1
            elif w in uy:
                ph = 2
            else:
                continue
            st = (w, 1, ph)
            if st not in parent:
                parent[st] = None
                queue.append(st)
        goal = None
        while queue:
            v, p, ph = queue.popleft()
            if g.has_edge(v, cy) and (p + 1) % 2 == parity:
                goal = (v, p, ph)
                break
            for w in g.neighbors(v):
                if w in forbid or w == cx or w == cy:
                    continue
                nph = phase_of(w, ph)
                if nph is None:
                    continue
                st = (w, 1 - p, nph)
                if st not in parent:
                    parent[st] = (v, p, ph)
                    queue.append(st)
        if goal is None:
            return None
        seq = [cy]
        st2: Optional[Tuple[int, int, int]] = goal
        while st2 is not None:
            seq.append(st2[0])
            st2 = parent[st2]
        seq.append(cx)
        seq.reverse()
        if len(seq) - 1 > budget:
            return None
        rep = _first_repeat(seq)
        if rep is None:
            return tuple(seq)
        forbid.add(rep)
    return None


def _connect_edge(state: EmbedState, x: int, y: int, heid: int, parity: int):
    """Try to realize guest edge {x, y} as a host path.

    Returns None on success (state updated) or the guest vertex whose
    embedding should be dissolved.  Branch choice is two-tier: first the
    lowest-index free branches that expand into C by the beta test, then
    every free pair in index order (tiny hosts often route branch to
    branch with no C in between).  A direct center-to-center edge is
    used when the parity asks for it and no other guest edge already
    occupies it.
    """
    g = state.g
    cx = state.crosses[x].center
    cy = state.crosses[y].center
    if parity == 1 and g.has_edge(cx, cy):
        taken = any(
            set(p) == {cx, cy} and len(p) == 2
            for p in state.full_paths.values()
        )
        if not taken:
            state.edge_segments[heid] = ()
            state.full_paths[heid] = (cx, cy)
            state.check(f"connect({heid})")
            return None

    free_x = state.free_branches(x)
    free_y = state.free_branches(y)
    if not free_x and not free_y:
        return y
    if not free_x:
        return x
    if not free_y:
        return y

    beta = state.params.beta

    def qualifies(hv: int, i: int) -> bool:
        b = state.crosses[hv].branches[i]
        return len(_neighborhood_in(g, b, state.c)) >= beta * len(b)

    qx = [i for i in free_x if qualifies(x, i)]
    qy = [i for i in free_y if qualifies(y, i)]
    tier1 = [(bx, by) for bx in qx[:1] for by in qy[:1]]
    tier2 = [
        (bx, by)
        for bx in free_x
        for by in free_y
        if (bx, by) not in tier1
    ]
    for bx, by in tier1 + tier2:
        full = _route_edge(state, x, y, bx, by, parity)
        if full is None:
            continue
        segment = tuple(w for w in full[1:-1] if w in state.c)
        state.c -= set(segment)
        state.edge_segments[heid] = segment
        state.full_paths[heid] = full
        state.branch_used[x][bx] = heid
        state.branch_used[y][by] = heid
        state.check(f"connect({heid})")
        return None
    # routing exhausted: dissolve per the branch-search rule
    if not qx and not qy:
        return y
    if not qx:
        return x
    return y


def embed_graph(
    h,
    g: Graph,
    params: EmbedParams,
    parities=None,
    rng: Optional[Rng] = None,
    exact_limit: Optional[int] = None,
) -> EmbedResult:
    """Embed guest graph H into host expander G as a topological minor
    with per-edge path-parity control.

    Guests are embedded as crosses in ascending vertex order; each new
    guest is connected to its already-embedded neighbors through free
    branches and the free set C.  When a connection cannot be made, the
    offending guest's embedding is dissolved (its cost recorded in the
    A/A' ledger) and retried later.  The run aborts with diagnostics
    when the discard budget |A| >= n/k is hit, when no cross can be
    built, or when dissolve/re-embed stops making progress.

    On a budget abort the post-mortem checks whether N(A) really is a
    balanced separator below the expander separator bound; if so, the
    run flags the expansion hypothesis itself as inconsistent.
    """
    if isinstance(h, Graph):
        h = MultiGraph(h.n, h.edges)
    if not isinstance(h, MultiGraph):
        raise GraphError("guest must be a Graph or MultiGraph")
    seed = rng.descriptor() if rng is not None else None
    parities = _normalize_parities(parities, h.m)

    for u, v in h.edges:
        if u == v:
            raise GraphError("guest self-loops are not supported")

    state = EmbedState(g, h, params)
    beta = params.beta
    n = g.n
    budget = n / params.k
    diagnostics: dict = {
        "n": n,
        "guest_vertices": h.n,
        "guest_edges": h.m,
        "mode": params.mode,
        "s": params.s,
        "robustness_hypothesis": "unchecked",
    }
    size_budget = n / (params.k * max(math.log2(max(n, 2)), 1.0))
    if h.n + h.m > size_budget:
        if params.mode == "faithful":
            raise GraphError(
                f"guest size {h.n + h.m} exceeds the n/(k log n) budget "
                f"{size_budget:.1f}"
            )
        diagnostics["size_warning"] = (
            f"guest size {h.n + h.m} exceeds n/(k log n) = {size_budget:.1f}"
        )
    h_order = sorted(range(h.n))
    max_unembeds = 20 * max(h.n, 1)

    while state.i != set(h_order):
        if len(state.a) >= budget:
            diagnostics["failure_step"] = "discard_budget"
            diagnostics["a_size"] = len(state.a)
            diagnostics["post_mortem"] = _separator_post_mortem(g, state.a, params)
            return EmbedResult(None, "discard budget exhausted", diagnostics, state)
        if state.unembed_count > max_unembeds:
            diagnostics["failure_step"] = "thrashing"
            return EmbedResult(
                None, "dissolve/re-embed made no progress", diagnostics, state
            )
        x = min(v for v in h_order if v not in state.i)
        d_h = h.degree(x)
        r = params.r(d_h) if d_h > 0 else 1
        cross_budget = max(1, math.ceil(budget) - len(state.a))
        try:
            res = find_cross(
                g,
                state.c,
                r,
                params.s,
                beta,
                params.k,
                r_pool=params.r_pool(r),
                budget=cross_budget,
                exact_limit=exact_limit,
            )
        except CrossError as e:
            res = None
            if params.mode == "engineering":
                # the expansion filters inside find_cross are calibrated
                # for hosts far larger than desk scale; retry once with
                # the filters off before giving up
                try:
                    res = _rescue_cross(
                        g,
                        state.c,
                        r,
                        params.s,
                        beta,
                        params.r_pool(r),
                        cross_budget,
                        exact_limit,
                    )
                except CrossError:
                    res = None
            if res is None:
                diagnostics["failure_step"] = type(e).__name__
                diagnostics["detail"] = str(e)
                return EmbedResult(
                    None, f"cross construction failed: {e}", diagnostics, state
                )
        state.crosses[x] = res.cross
        state.branch_used[x] = {}
        state.a |= res.a_additions
        state.c = set(res.new_c)
        state.i.add(x)
        state.check(f"embed({x})")
        fixed = fix_expansion(g, state.c, state.a, beta, exact_limit)
        state.c = set(fixed.c)
        state.a = set(fixed.a)
        state.check(f"fix_after_embed({x})")

        for heid, (u, v) in enumerate(h.edges):
            if x not in (u, v):
                continue
            yv = v if u == x else u
            if yv not in state.i or heid in state.edge_segments:
                continue
            z = _connect_edge(state, x, yv, heid, parities[heid])
            if z is not None:
                unembed_vertex(state, z)
                if z == x:
                    break
                continue
            fixed = fix_expansion(g, state.c, state.a, beta, exact_limit)
            state.c = set(fixed.c)
            state.a = set(fixed.a)
            state.check(f"fix_after_connect({heid})")

    sigma = {hv: state.crosses[hv].center for hv in h_order}
    emb = TopologicalEmbedding(
        sigma, dict(state.full_paths), dict(parities), params.mode, seed
    )
    diagnostics["a_size"] = len(state.a)
    diagnostics["aprime_size"] = len(state.a_prime)
    diagnostics["c_size"] = len(state.c)
    diagnostics["ledger_events"] = len(state.ledger)
    diagnostics["unembeds"] = state.unembed_count
    return EmbedResult(emb, None, diagnostics, state)


def _normalize_parities(parities, m: int) -> Dict[int, int]:
    """Per-edge parity requests as {edge id: 0 or 1}; default all odd."""
    if parities is None:
        return {eid: 1 for eid in range(m)}
    if isinstance(parities, (list, tuple)):
        parities = dict(enumerate(parities))
    out = {int(k): int(v) % 2 for k, v in dict(parities).items() if v is not None}
    for eid in range(m):
        out.setdefault(eid, 1)
    return out


def _separator_post_mortem(g: Graph, a: set, params: EmbedParams) -> dict:
    """On budget abort: is N(A) a balanced separator smaller than the
    expander bound alpha*n/(3(1+alpha))?  If yes, the expansion
    hypothesis itself is inconsistent (worth flagging loudly)."""
    from .expansion import separator_lower_bound

    na = _neighborhood_in(g, a, set(range(g.n)) - set(a))
    rest = set(range(g.n)) - set(a) - na
    bound = separator_lower_bound(params.alpha, g.n)
    balanced = len(a) <= 2 * g.n / 3 and len(rest) <= 2 * g.n / 3
    return {
        "na_size": len(na),
        "bound": bound,
        "balanced": balanced,
        "alarm": balanced and len(na) < bound,
    }


# ---------------------------------------------------------------------------
# independent verifier (shares no code with the builder)


def verify_embedding(h, g: Graph, emb: TopologicalEmbedding, parities=None):
    """Check every topological-minor invariant from scratch.

    Returns (ok, violations).  Checks: sigma injective and in range;
    one path per guest edge, running between the right images; paths
    simple, edges present in the host; interiors disjoint from each
    other and from every image; parities match the requests.
    """
    if isinstance(h, Graph):
        h = MultiGraph(h.n, h.edges)
    violations = []
    sigma = emb.sigma
    if sorted(sigma.keys()) != list(range(h.n)):
        violations.append("sigma does not cover the guest vertices")
        return False, violations
    images = list(sigma.values())
    if len(set(images)) != len(images):
        violations.append("sigma is not injective")
    for hv, gv in sigma.items():
        if not 0 <= gv < g.n:
            violations.append(f"sigma({hv}) = {gv} out of range")
    if sorted(emb.paths.keys()) != list(range(h.m)):
        violations.append("paths do not cover the guest edges")
        return False, violations
    if parities is None:
        parities = emb.parities
    elif isinstance(parities, (list, tuple)):
        parities = dict(enumerate(parities))
    image_set = set(images)
    interiors = {}
    edge_owner: dict = {}
    for heid, (u, v) in enumerate(h.edges):
        p = tuple(emb.paths[heid])
        if len(p) < 2:
            violations.append(f"edge {heid}: path too short")
            continue
        ends = {p[0], p[-1]}
        if ends != {sigma[u], sigma[v]}:
            violations.append(f"edge {heid}: endpoints {ends} != images")
        if len(set(p)) != len(p):
            violations.append(f"edge {heid}: path revisits a vertex")
        for i in range(len(p) - 1):
            if not g.has_edge(p[i], p[i + 1]):
                violations.append(f"edge {heid}: {p[i]}-{p[i+1]} not a host edge")
                break
            step = (min(p[i], p[i + 1]), max(p[i], p[i + 1]))
            if step in edge_owner and edge_owner[step] != heid:
                # catches parallel guest edges riding the same host edge,
                # which interior disjointness alone cannot see
                violations.append(
                    f"edges {edge_owner[step]} and {heid} share host edge {step}"
                )
            edge_owner[step] = heid
        interior = set(p[1:-1])
        if interior & image_set:
            violations.append(f"edge {heid}: interior touches a vertex image")
        interiors[heid] = interior
        want = parities.get(heid) if hasattr(parities, "get") else parities[heid]
        if want is not None and (len(p) - 1) % 2 != int(want) % 2:
            violations.append(f"edge {heid}: parity {(len(p) - 1) % 2} != {want}")
    keys = sorted(interiors)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            shared = interiors[keys[i]] & interiors[keys[j]]
            if shared:
                violations.append(
                    f"edges {keys[i]} and {keys[j]} share interior {sorted(shared)[:4]}"
                )
    return not violations, violations
