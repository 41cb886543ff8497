"""Vertex expansion: exact computation, spectral lower bounds, sparse-cut
search, and the repair loop that trims a vertex set until what is left
expands.

The exact engine enumerates all 2^n subsets with a vectorized dynamic
program over numpy tables, so it is limited to small n (default 24,
overridable via the MINORFORGE_EXACT_LIMIT environment variable or the
``exact_limit`` argument).  Above the limit the cut search falls back to
a Fiedler-vector sweep and flags its output as uncertified.
"""

from __future__ import annotations

import math
import os
from typing import NamedTuple, Optional

import numpy as np

from .graphs import Graph, GraphError, induced_subgraph
from .spectral import spectrum

__all__ = [
    "DEFAULT_EXACT_LIMIT",
    "exact_limit_default",
    "ExpansionReport",
    "vertex_expansion_exact",
    "expansion_report",
    "spectral_expansion_lower",
    "SparseCutResult",
    "find_sparse_cut",
    "FixExpansionResult",
    "fix_expansion",
    "separator_lower_bound",
    "diameter_upper_bound",
    "c_alpha",
]

DEFAULT_EXACT_LIMIT = 24

# Guard for float ceil: keeps exact-integer arguments from spilling over.
_CEIL_EPS = 1e-9


def exact_limit_default() -> int:
    """Effective subset-enumeration cap (env MINORFORGE_EXACT_LIMIT wins)."""
    raw = os.environ.get("MINORFORGE_EXACT_LIMIT")
    if raw is None:
        return DEFAULT_EXACT_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise GraphError(f"MINORFORGE_EXACT_LIMIT={raw!r} is not an integer")
    if not 1 <= value <= 28:
        raise GraphError("MINORFORGE_EXACT_LIMIT must be between 1 and 28")
    return value


_REV8 = np.array(
    [int(format(i, "08b")[::-1], 2) for i in range(256)], dtype=np.uint64
)


def _bit_reverse(masks: np.ndarray, width: int) -> np.ndarray:
    """Reverse the low ``width`` bits of each mask (width <= 32)."""
    m = masks.astype(np.uint64)
    rev = (
        (_REV8[m & 0xFF] << np.uint64(24))
        | (_REV8[(m >> np.uint64(8)) & 0xFF] << np.uint64(16))
        | (_REV8[(m >> np.uint64(16)) & 0xFF] << np.uint64(8))
        | _REV8[(m >> np.uint64(24)) & 0xFF]
    )
    return rev >> np.uint64(32 - width)


def _subset_tables(g: Graph):
    """Per-subset sizes and outside-neighborhood sizes for all 2^n subsets.

    Returns (masks, sizes, boundary) where boundary[S] = |N(S) \\ S|.  The
    neighborhood table is filled by peeling the lowest set bit:
    N[S] = N[S - lowbit] | adj[lowbit], processed one bit level at a time.
    """
    n = g.n
    total = 1 << n
    adj_mask = np.zeros(n, dtype=np.uint32)
    for v in range(n):
        acc = 0
        for w in g.neighbors(v):
            acc |= 1 << w
        adj_mask[v] = acc
    hood = np.zeros(total, dtype=np.uint32)
    for b in range(n - 1, -1, -1):
        idx = np.arange(1 << b, total, 1 << (b + 1), dtype=np.uint32)
        # subsets whose lowest set bit is b; the reduced index has a
        # strictly higher lowest bit (or is 0), so it is already filled
        hood[idx] = hood[idx - np.uint32(1 << b)] | adj_mask[b]
    masks = np.arange(total, dtype=np.uint32)
    sizes = np.bitwise_count(masks)
    boundary = np.bitwise_count(hood & ~masks)
    return masks, sizes, boundary


def _subset_order_key(masks: np.ndarray, sizes: np.ndarray, hits: np.ndarray, width: int) -> np.ndarray:
    """Sort key realizing (set size, lexicographic vertex list) order.

    For equal sizes, the lexicographically smaller vertex list owns the
    smallest vertex in the symmetric difference; reversing the bits puts
    vertex 0 at the MSB, so lex-smaller means bit-reversed-LARGER, hence
    the complement in the low word.
    """
    full = np.uint64((1 << width) - 1)
    key = sizes[hits].astype(np.uint64) << np.uint64(32)
    key |= full - _bit_reverse(masks[hits], width)
    return key


def _mask_to_vertices(mask: int) -> frozenset:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


class ExpansionReport(NamedTuple):
    alpha_exact: Optional[float]
    alpha_spectral_lower: float
    witness_cut: Optional[frozenset]


def vertex_expansion_exact(g: Graph, exact_limit: Optional[int] = None) -> ExpansionReport:
    """Exact vertex expansion min_{1<=|U|<=n/2} |N(U)\\U| / |U|.

    The witness is the minimizing set, ties broken by smaller size and
    then lexicographically smallest vertex list.  Raises when n exceeds
    the enumeration limit.
    """
    limit = exact_limit if exact_limit is not None else exact_limit_default()
    if g.n > limit:
        raise GraphError(
            f"n={g.n} exceeds exact enumeration limit {limit}; "
            "raise exact_limit or use the spectral bound"
        )
    spectral = spectral_expansion_lower(g)
    if g.n <= 1:
        return ExpansionReport(math.inf, spectral, None)
    masks, sizes, boundary = _subset_tables(g)
    valid = (sizes >= 1) & (sizes <= g.n // 2)
    ratio = np.where(valid, boundary / np.maximum(sizes, 1), np.inf)
    alpha = float(ratio.min())
    hits = np.flatnonzero(ratio == alpha)
    best = int(masks[hits[int(_subset_order_key(masks, sizes, hits, g.n).argmin())]])
    return ExpansionReport(alpha, spectral, _mask_to_vertices(best))


def expansion_report(g: Graph, exact_limit: Optional[int] = None) -> ExpansionReport:
    """Expansion report with the exact value filled in only when the
    graph is small enough to enumerate."""
    limit = exact_limit if exact_limit is not None else exact_limit_default()
    if g.n <= limit:
        return vertex_expansion_exact(g, limit)
    return ExpansionReport(None, spectral_expansion_lower(g), None)


def spectral_expansion_lower(g: Graph) -> float:
    """Lower bound lam_2(L) / (2 * max_degree) on vertex expansion."""
    if g.n <= 1:
        return 0.0
    dmax = g.max_degree()
    if dmax == 0:
        return 0.0
    lam2 = spectrum(g, "laplacian").second_smallest()
    return max(0.0, lam2 / (2 * dmax))


class SparseCutResult(NamedTuple):
    cut: Optional[frozenset]
    certified: bool
    ratio: Optional[float]


def find_sparse_cut(
    g: Graph,
    c,
    beta: float,
    exact_limit: Optional[int] = None,
) -> SparseCutResult:
    """Find U inside C with 1 <= |U| <= |C|/2 and |N(U) cap (C\\U)| < beta|U|.

    Small working sets are enumerated exactly (returning the minimum-size,
    lexicographically first violating set, and certifying absence when no
    set violates).  Larger sets use a Fiedler sweep on G[C]: the sweep
    prefix of minimum neighborhood ratio is returned if it violates the
    bound, otherwise None with ``certified=False``.
    """
    limit = exact_limit if exact_limit is not None else exact_limit_default()
    c = sorted(set(int(v) for v in c))
    for v in c:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    if beta < 0:
        raise GraphError("beta must be nonnegative")
    k = len(c)
    if k == 0:
        return SparseCutResult(None, True, None)
    sub, _ = induced_subgraph(g, c)

    if k <= limit:
        masks, sizes, boundary = _subset_tables(sub)
        valid = (sizes >= 1) & (sizes <= k // 2)
        viol = valid & (boundary < beta * sizes)
        hits = np.flatnonzero(viol)
        if hits.size == 0:
            return SparseCutResult(None, True, None)
        mask = int(masks[hits[int(_subset_order_key(masks, sizes, hits, k).argmin())]])
        local = _mask_to_vertices(mask)
        ratio = boundary[mask] / sizes[mask]
        return SparseCutResult(
            frozenset(c[i] for i in local), True, float(ratio)
        )

    order = _fiedler_order(sub)
    best_ratio = math.inf
    best_k = 0
    in_prefix = [False] * k
    touched = [0] * k  # neighbor count inside the prefix
    boundary_size = 0
    for idx in range(k // 2):
        v = order[idx]
        in_prefix[v] = True
        if touched[v] > 0:
            boundary_size -= 1
        for w in sub.neighbors(v):
            if not in_prefix[w]:
                if touched[w] == 0:
                    boundary_size += 1
            touched[w] += 1
        ratio = boundary_size / (idx + 1)
        if ratio < best_ratio:
            best_ratio = ratio
            best_k = idx + 1
    if best_k and best_ratio < beta * 1.0:
        chosen = sorted(order[:best_k])
        return SparseCutResult(
            frozenset(c[i] for i in chosen), False, best_ratio
        )
    return SparseCutResult(None, False, None)


def _fiedler_order(g: Graph) -> list:
    """Vertices sorted by Fiedler-vector coordinate (ties by id)."""
    lap = g.laplacian_matrix().astype(np.float64)
    _, vecs = np.linalg.eigh(lap)
    fiedler = vecs[:, 1] if g.n >= 2 else vecs[:, 0]
    return sorted(range(g.n), key=lambda v: (fiedler[v], v))


class FixExpansionResult(NamedTuple):
    c: frozenset
    a: frozenset
    certified: bool
    moves: tuple


def fix_expansion(
    g: Graph,
    c,
    a,
    beta: float,
    exact_limit: Optional[int] = None,
) -> FixExpansionResult:
    """Repeatedly move sparse cuts of C into A until none is found.

    Each round removes a nonempty violating set, so the loop runs at most
    |C| times.  ``certified`` reports whether the terminal "no sparse cut"
    claim came from exact enumeration.
    """
    c_cur = set(int(v) for v in c)
    a_cur = set(int(v) for v in a)
    if c_cur & a_cur:
        raise GraphError("C and A must be disjoint")
    moves = []
    certified = True
    while c_cur:
        res = find_sparse_cut(g, c_cur, beta, exact_limit)
        if res.cut is None:
            certified = res.certified
            break
        moves.append(res.cut)
        c_cur -= res.cut
        a_cur |= res.cut
    return FixExpansionResult(
        frozenset(c_cur), frozenset(a_cur), certified, tuple(moves)
    )


def separator_lower_bound(alpha: float, n: int) -> float:
    """Every balanced separator of an alpha-expander on n vertices has at
    least alpha*n / (3*(1+alpha)) vertices."""
    if alpha < 0 or n < 0:
        raise GraphError("alpha and n must be nonnegative")
    return alpha * n / (3 * (1 + alpha))


def diameter_upper_bound(alpha: float, n: int) -> int:
    """Diameter bound ceil(2*(log2 n - 1) / log2(1+alpha)) + 1 for a
    connected alpha-expander with alpha > 0."""
    if alpha <= 0:
        raise GraphError("alpha must be positive")
    if n < 2:
        return 0
    x = 2 * (math.log2(n) - 1) / math.log2(1 + alpha)
    return max(1, math.ceil(x - _CEIL_EPS) + 1)


def c_alpha(alpha: float) -> float:
    """Path-length constant 2/log2(1+alpha) + 3 used by the embedding
    budget; c_1 = 5."""
    if alpha <= 0:
        raise GraphError("alpha must be positive")
    return 2 / math.log2(1 + alpha) + 3
