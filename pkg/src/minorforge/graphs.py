"""Core graph types, regular-graph samplers, and parity-aware search.

Vertices of a graph on ``n`` vertices are always ``0 .. n-1``.  Edges are
stored as lexicographically sorted ``(u, v)`` pairs with ``u < v``; the index
of a pair in that sorted tuple is the edge's id, which is what formula
variables and layer sets refer to.  Ids are therefore stable under a
serialization round trip.
"""

from __future__ import annotations

import json
import math
from collections import deque

__all__ = [
    "GraphError",
    "SampleTimeout",
    "Graph",
    "MultiGraph",
    "Path",
    "canonical_json",
    "generate_random_regular",
    "random_regular_union",
    "induced_subgraph",
    "ball",
    "diameter",
    "parity_bfs",
    "parity_witness",
    "PARITY_EXACT_LIMIT",
]

# Largest working size (non-forbidden vertex count) for which parity_bfs
# computes exact shortest simple-path lengths by state-space search.  Above
# it, lengths come from walk search plus witness repair and are verified
# upper bounds rather than guaranteed minima.
PARITY_EXACT_LIMIT = 14


class GraphError(Exception):
    """Structural error: malformed graph, path, or query."""


class SampleTimeout(GraphError):
    """A rejection sampler exhausted its attempt budget."""

    def __init__(self, message: str, attempts: int):
        super().__init__(f"{message} (after {attempts} attempts)")
        self.attempts = attempts


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "edges", "_adj", "_edge_index")

    def __init__(self, n: int, edges):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        seen = set()
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        adj = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edge_index = {e: i for i, e in enumerate(norm)}

    # -- basic queries ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_index

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self._edge_index[(u, v)]
        except KeyError:
            raise GraphError(f"no edge ({u},{v})") from None

    def degree_sequence(self) -> tuple:
        return tuple(len(a) for a in self._adj)

    def is_regular(self) -> bool:
        return len(set(self.degree_sequence())) <= 1

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n), dtype=float)
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a

    def laplacian_matrix(self):
        import numpy as np

        a = self.adjacency_matrix()
        return np.diag(a.sum(axis=1)) - a

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Graph":
        return cls(int(obj["n"]), obj["edges"])

    def dumps(self) -> str:
        return canonical_json(self.to_json_obj())

    @classmethod
    def loads(cls, text: str) -> "Graph":
        return cls.from_json_obj(json.loads(text))

    def to_text(self) -> str:
        lines = [f"p graph {self.n} {self.m}"]
        lines.extend(f"e {u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        m = None
        edges = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if len(parts) != 4 or parts[1] != "graph":
                    raise GraphError(f"bad header line: {raw!r}")
                n, m = int(parts[2]), int(parts[3])
            elif parts[0] == "e":
                if len(parts) != 3:
                    raise GraphError(f"bad edge line: {raw!r}")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"unrecognized line: {raw!r}")
        if n is None:
            raise GraphError("missing 'p graph n m' header")
        if m != len(edges):
            raise GraphError(f"header claims {m} edges, found {len(edges)}")
        return cls(n, edges)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class MultiGraph:
    """Undirected multigraph: parallel edges allowed, loops are not."""

    __slots__ = ("n", "edges", "_deg")

    def __init__(self, n: int, edges):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            norm.append((u, v))
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        deg = [0] * n
        for u, v in norm:
            deg[u] += 1
            deg[v] += 1
        self._deg = tuple(deg)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self._deg[v]

    def neighbors(self, v: int) -> tuple:
        out = []
        for u, w in self.edges:
            if u == v:
                out.append(w)
            elif w == v:
                out.append(u)
        return tuple(out)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "MultiGraph":
        return cls(int(obj["n"]), obj["edges"])

    def as_simple_graph(self) -> Graph:
        """Underlying simple graph (collapses parallel edges)."""
        return Graph(self.n, sorted(set(self.edges)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


class Path:
    """Simple path given by its vertex sequence; length counts edges.

    Also used to carry a simple cycle (first vertex repeated implicitly);
    in that case the closing edge is implied and ``length`` still counts
    the listed consecutive steps only.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise GraphError("path needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise GraphError("path repeats a vertex")
        self.vertices = vs

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def parity(self) -> int:
        return self.length % 2

    @property
    def ends(self) -> tuple:
        return (self.vertices[0], self.vertices[-1])

    @property
    def interior(self) -> tuple:
        return self.vertices[1:-1]

    def validate(self, g: Graph) -> None:
        for v in self.vertices:
            if not 0 <= v < g.n:
                raise GraphError(f"path vertex {v} out of range")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise GraphError(f"path step ({a},{b}) is not an edge")

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Path) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Path({list(self.vertices)})"


def canonical_json(obj) -> str:
    """Deterministic JSON encoding used for every artifact."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

# With d <= this cutoff, whole random pairings are resampled until one is
# simple, which draws exactly uniformly from the d-regular graphs.  Beyond
# it, the acceptance probability of a full pairing decays like
# exp(-(d-1)/2 - (d-1)^2/4) and whole-pairing retries are hopeless, so the
# sampler places one suitable stub pair at a time and restarts when stuck.
_FULL_REJECTION_MAX_DEGREE = 5


def generate_random_regular(n: int, d: int, rng, max_attempts: int = 10**6) -> Graph:
    """Sample a uniformly random simple d-regular graph on n vertices.

    The sampler pairs up vertex stubs (d per vertex) and rejects loops and
    parallel edges.  For small d the rejection is applied to whole pairings,
    which is exactly uniform; for larger d pairs are drawn one at a time
    from the remaining stubs, rejecting unsuitable pairs in place, with a
    full restart when the partial pairing gets stuck.

    Raises
    ------
    GraphError
        If ``n * d`` is odd or ``d >= n`` (no simple d-regular graph exists).
    SampleTimeout
        If no simple graph was produced within ``max_attempts`` restarts.
    """
    if d < 0:
        raise GraphError("degree must be nonnegative")
    if (n * d) % 2 != 0:
        raise GraphError(f"n*d = {n}*{d} is odd; no regular graph exists")
    if d >= n and d > 0:
        raise GraphError(f"d = {d} >= n = {n}; no simple regular graph exists")
    if d == 0:
        return Graph(n, [])

    if d <= _FULL_REJECTION_MAX_DEGREE:
        sampler = _pairing_attempt_full
    else:
        sampler = _pairing_attempt_incremental
    for _attempt in range(1, max_attempts + 1):
        edges = sampler(n, d, rng)
        if edges is not None:
            return Graph(n, edges)
    raise SampleTimeout(
        f"could not sample simple {d}-regular graph on {n} vertices", max_attempts
    )


def _pairing_attempt_full(n: int, d: int, rng):
    """One uniform pairing of all stubs; None when not simple."""
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    seen = set()
    for i in range(0, len(stubs), 2):
        u, v = stubs[i], stubs[i + 1]
        if u == v:
            return None
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return None
        seen.add(key)
    return sorted(seen)


def _pairing_attempt_incremental(n: int, d: int, rng):
    """Pair stubs one draw at a time; None (restart) when stuck."""
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    seen = set()
    edges = []
    misses = 0
    miss_cap = 50 + 10 * n
    while stubs:
        i = rng.integers(0, len(stubs))
        j = rng.integers(0, len(stubs))
        if i == j:
            continue
        u, v = stubs[i], stubs[j]
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen:
            misses += 1
            if misses > miss_cap:
                return None
            continue
        misses = 0
        seen.add(key)
        edges.append(key)
        for k in sorted((i, j), reverse=True):
            stubs[k] = stubs[-1]
            stubs.pop()
    return sorted(edges)


def random_regular_union(n: int, degrees, rng, max_attempts: int = 10_000):
    """Sample a union of independent regular graphs conditioned on the
    union being simple.

    One joint attempt samples a fresh d_i-regular graph for every entry of
    ``degrees`` and accepts when no edge appears in two layers.  Returns
    ``(graph, layers)`` where ``layers[i]`` is the frozenset of edge ids (in
    the union graph) contributed by layer i, so each layer induces a
    d_i-regular subgraph.

    Raises
    ------
    SampleTimeout
        After ``max_attempts`` joint resamples without a simple union, or
        immediately (attempts=0) when the union provably cannot be simple
        because the layer degrees sum to n or more.
    """
    degrees = [int(d) for d in degrees]
    if not degrees:
        raise GraphError("need at least one layer degree")
    for d in degrees:
        if (n * d) % 2 != 0:
            raise GraphError(f"layer degree {d}: n*d odd")
        if d >= n and d > 0:
            raise GraphError(f"layer degree {d} >= n = {n}")
        if d < 0:
            raise GraphError("layer degree must be nonnegative")
    if sum(degrees) >= n:
        raise SampleTimeout(
            f"union of layers with degree sum {sum(degrees)} on {n} vertices "
            "cannot be simple",
            0,
        )

    for _attempt in range(max_attempts):
        layer_edges = []
        used = set()
        ok = True
        for d in degrees:
            g = generate_random_regular(n, d, rng)
            es = set(g.edges)
            if es & used:
                ok = False
                break
            used |= es
            layer_edges.append(es)
        if ok:
            union = Graph(n, sorted(used))
            layers = [
                frozenset(union.edge_id(u, v) for u, v in es) for es in layer_edges
            ]
            return union, layers
    raise SampleTimeout(
        f"union of regular layers {degrees} on {n} vertices never simple",
        max_attempts,
    )


# ---------------------------------------------------------------------------
# subgraphs, balls, distances
# ---------------------------------------------------------------------------


def induced_subgraph(g: Graph, vertices):
    """Induced subgraph with dense relabeling.

    Returns ``(h, relabel)`` where ``relabel`` maps original vertex ids to
    ids in ``h``.  Relabeling preserves vertex order, so the inverse is the
    sorted original vertex list.
    """
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    relabel = {v: i for i, v in enumerate(vs)}
    keep = set(vs)
    edges = [(relabel[u], relabel[v]) for u, v in g.edges if u in keep and v in keep]
    return Graph(len(vs), edges), relabel


def ball(g: Graph, sources, radius: int, forbidden=()) -> frozenset:
    """Vertices reachable from ``sources`` within ``radius`` steps after
    deleting ``forbidden`` vertices."""
    src = set(int(v) for v in sources)
    bad = set(int(v) for v in forbidden)
    if src & bad:
        raise GraphError("sources intersect forbidden set")
    for v in src | bad:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    if radius < 0:
        raise GraphError("radius must be nonnegative")
    reached = set(src)
    frontier = set(src)
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            for w in g.neighbors(v):
                if w not in reached and w not in bad:
                    nxt.add(w)
        if not nxt:
            break
        reached |= nxt
        frontier = nxt
    return frozenset(reached)


def diameter(g: Graph):
    """Largest shortest-path distance; ``math.inf`` when disconnected."""
    if g.n == 0:
        raise GraphError("diameter of empty graph undefined")
    best = 0
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        seen = 1
        while q:
            v = q.popleft()
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    seen += 1
                    q.append(w)
        if seen < g.n:
            return math.inf
        best = max(best, max(dist))
    return best


# ---------------------------------------------------------------------------
# parity-layered search
# ---------------------------------------------------------------------------


def _walk_parity_bfs(g: Graph, sources, transit_allowed):
    """BFS on states (vertex, parity): shortest walk lengths.

    ``sources`` is an iterable of ``(vertex, parity, offset)`` triples,
    processed in nondecreasing offset order so mixed offsets stay optimal.
    States on vertices outside ``transit_allowed`` are recorded but never
    expanded, so such vertices can end a walk but not carry it.  Returns
    ``(dist, parent)`` dicts keyed by state.
    """
    dist = {}
    parent = {}
    q = deque()
    for v, p, off in sorted(sources, key=lambda t: t[2]):
        st = (v, p)
        if st not in dist:
            dist[st] = off
            parent[st] = None
            q.append(st)
    while q:
        v, p = q.popleft()
        if v not in transit_allowed:
            continue
        base = dist[(v, p)]
        for w in g.neighbors(v):
            st = (w, p ^ 1)
            if st not in dist:
                dist[st] = base + 1
                parent[st] = (v, p)
                q.append(st)
    return dist, parent


def _walk_witness(parent, state):
    """Vertex sequence of the BFS walk ending at ``state`` (may repeat)."""
    seq = []
    cur = state
    while cur is not None:
        seq.append(cur[0])
        cur = parent[cur]
    seq.reverse()
    return seq


def _first_repeat(seq):
    seen = set()
    for x in seq:
        if x in seen:
            return x
        seen.add(x)
    return None


def _extract_odd_cycle(closed_walk):
    """Pull one odd simple cycle out of a closed odd walk.

    Returns the cycle's vertex list (closing edge implied), or None if the
    walk has even length.  Peels simple cycles off with a stack; peeled
    even cycles are discarded, and since cycle lengths add up to the odd
    walk length, an odd cycle always surfaces.
    """
    k = len(closed_walk) - 1
    if k % 2 == 0 or k == 0:
        return None
    stack = [closed_walk[0]]
    pos = {closed_walk[0]: 0}
    for v in closed_walk[1:]:
        if v in pos:
            i = pos[v]
            cyc_len = len(stack) - i
            if cyc_len % 2 == 1 and cyc_len >= 3:
                return stack[i:]
            for w in stack[i + 1 :]:
                del pos[w]
            del stack[i + 1 :]
        else:
            pos[v] = len(stack)
            stack.append(v)
    return None


def _exact_parity_search(g: Graph, u: int, transit, want_parents=False):
    """Shortest simple-path length per (vertex, parity) by search over
    (vertex, visited-set) states, explored in BFS order.

    For the source the odd entry is the shortest odd cycle through it
    (length >= 3).  Vertices outside ``transit`` may end a path but are
    never expanded.  Exponential in the working size; call sites guard with
    PARITY_EXACT_LIMIT.  Returns (even, odd, parents) where parents is
    None unless requested; parents maps (vertex, mask) to its predecessor
    state, and the special key ("cycle", u) holds the closing state of the
    first odd cycle through u.
    """
    even = {v: math.inf for v in range(g.n)}
    odd = {v: math.inf for v in range(g.n)}
    even[u] = 0
    start = (u, 1 << u)
    parents = {start: None} if want_parents else None
    q = deque([(u, 1 << u, 0)])
    seen = {start}
    cycle_key = ("cycle", u)
    while q:
        v, mask, ln = q.popleft()
        if v != u and v not in transit:
            continue
        for w in g.neighbors(v):
            if w == u:
                nl = ln + 1
                if nl >= 3 and nl % 2 == 1 and odd[u] == math.inf:
                    odd[u] = nl
                    if want_parents and cycle_key not in parents:
                        parents[cycle_key] = (v, mask)
                continue
            bit = 1 << w
            if mask & bit:
                continue
            st = (w, mask | bit)
            if st in seen:
                continue
            seen.add(st)
            nl = ln + 1
            if want_parents:
                parents[st] = (v, mask)
            side = even if nl % 2 == 0 else odd
            if side[w] == math.inf:
                side[w] = nl
            q.append((w, mask | bit, nl))
    return even, odd, parents


def parity_bfs(g: Graph, u: int, forbidden=()):
    """Shortest even-length and odd-length simple path to every vertex.

    Forbidden vertices may end a path but never appear in its interior.
    For the source itself the even entry is 0 and the odd entry is the
    length of a shortest odd cycle through it.  Returns ``(even, odd)``
    lists indexed by vertex, with ``math.inf`` for a parity that is not
    realized.

    When the working size (n minus forbidden) is at most
    PARITY_EXACT_LIMIT the lengths are exact.  Beyond that, each finite
    length is backed by an explicitly verified simple witness found by walk
    search with bounded repair: finite entries are valid path lengths but
    may overestimate in rare non-expanding corners, and entries are
    ``math.inf`` when no witness could be verified.
    """
    bad = set(int(v) for v in forbidden)
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} out of range")
    if u in bad:
        raise GraphError("source is forbidden")
    transit = set(range(g.n)) - bad

    if len(transit) <= PARITY_EXACT_LIMIT:
        even, odd, _ = _exact_parity_search(g, u, transit)
        return [even[v] for v in range(g.n)], [odd[v] for v in range(g.n)]

    even = [math.inf] * g.n
    odd = [math.inf] * g.n
    even[u] = 0
    dist, parent = _walk_parity_bfs(g, [(u, 0, 0)], transit)
    for v in range(g.n):
        for p, table in ((0, even), (1, odd)):
            if v == u and p == 0:
                continue
            st = (v, p)
            if st not in dist:
                continue
            seq = _walk_witness(parent, st)
            if v == u:
                cyc = _extract_odd_cycle(seq)
                if cyc is not None and u in cyc:
                    table[v] = len(cyc)
                else:
                    w = parity_witness(g, u, v, p, forbidden=bad)
                    if w is not None:
                        table[v] = len(w.vertices) if v == u else w.length
                continue
            if _first_repeat(seq) is None:
                table[v] = len(seq) - 1
            else:
                w = parity_witness(g, u, v, p, forbidden=bad)
                if w is not None:
                    table[v] = w.length
    return even, odd


def parity_witness(g: Graph, u: int, v: int, parity: int, forbidden=(), repair_budget=None):
    """A verified simple witness of the requested parity, or None.

    For ``u != v`` the witness is a simple path from u to v.  For ``u == v``
    with odd parity it is an odd cycle through u, returned as the Path of
    the cycle's vertex sequence starting at u (closing edge implied); with
    even parity it is the trivial ``Path([u])``.

    Outside the exact regime the search takes shortest parity walks and
    repairs non-simple witnesses by temporarily forbidding the first
    repeated vertex, up to ``repair_budget`` retries (default: working
    size), so None does not certify nonexistence there.
    """
    bad = set(int(x) for x in forbidden)
    if u in bad:
        raise GraphError("source is forbidden")
    parity = int(parity) % 2
    transit = set(range(g.n)) - bad

    if u == v and parity == 0:
        return Path([u])

    if len(transit) <= PARITY_EXACT_LIMIT:
        return _exact_witness(g, u, v, parity, transit)

    if repair_budget is None:
        repair_budget = len(transit)

    if u == v:
        dist, parent = _walk_parity_bfs(g, [(u, 0, 0)], transit)
        if (u, 1) not in dist:
            return None
        cyc = _extract_odd_cycle(_walk_witness(parent, (u, 1)))
        if cyc is not None and u in cyc:
            i = cyc.index(u)
            return Path(cyc[i:] + cyc[:i])
        return None

    extra = set()
    for _ in range(repair_budget + 1):
        dist, parent = _walk_parity_bfs(g, [(u, 0, 0)], transit - extra)
        st = (v, parity)
        if st not in dist:
            return None
        seq = _walk_witness(parent, st)
        rep = _first_repeat(seq)
        if rep is None:
            return Path(seq)
        if rep == u or rep == v:
            return None
        extra.add(rep)
    return None


def _exact_witness(g: Graph, u: int, v: int, parity: int, transit):
    """Exact witness extraction from the state search."""
    even, odd, parents = _exact_parity_search(g, u, transit, want_parents=True)
    if u == v:
        # odd cycle through u
        if odd[u] == math.inf:
            return None
        seq = []
        cur = parents[("cycle", u)]
        while cur is not None:
            seq.append(cur[0])
            cur = parents[cur]
        seq.reverse()
        return Path(seq)
    table = even if parity == 0 else odd
    if table[v] == math.inf:
        return None
    target_len = table[v]
    # find the state on v whose path length matches and walk it back
    for st, par in parents.items():
        if not (isinstance(st[0], int) and st[0] == v):
            continue
        seq = []
        cur = st
        while cur is not None:
            seq.append(cur[0])
            cur = parents[cur]
        if len(seq) - 1 == target_len:
            seq.reverse()
            return Path(seq)
    return None
