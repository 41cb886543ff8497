"""Eigenvalue computations and the spectral certificates built on them.

All certificates work off dense symmetric eigensolves (numpy ``eigvalsh``),
which is exact enough at desk scale; comparisons carry an explicit 1e-8
slack so that certificates never flip on eigensolver noise.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .graphs import Graph, GraphError

__all__ = [
    "SLACK",
    "Spectrum",
    "spectrum",
    "hoffman_bound",
    "non_bipartite_size_bound",
    "mixing_discrepancy",
    "MixingReport",
    "pm_spectral_certificate",
    "interlacing_rows",
    "interlacing_check",
]

SLACK = 1e-8


class Spectrum(NamedTuple):
    """Eigenvalues in ascending order with the matrix they belong to."""

    values: tuple
    which: str  # "adjacency" or "laplacian"
    n: int

    def smallest(self) -> float:
        return self.values[0]

    def largest(self) -> float:
        return self.values[-1]

    def second_smallest(self) -> float:
        return self.values[1]


def spectrum(g: Graph, which: str = "adjacency") -> Spectrum:
    """Eigenvalues of the adjacency or Laplacian matrix, ascending."""
    if g.n == 0:
        raise GraphError("spectrum of empty graph undefined")
    if which == "adjacency":
        mat = g.adjacency_matrix()
    elif which == "laplacian":
        mat = g.laplacian_matrix()
    else:
        raise GraphError(f"unknown matrix kind {which!r}")
    vals = np.linalg.eigvalsh(mat)
    return Spectrum(tuple(float(x) for x in vals), which, g.n)


def _require_regular(g: Graph, who: str) -> int:
    if g.n == 0 or not g.is_regular():
        raise GraphError(f"{who} requires a regular graph")
    return g.degree(0)


def hoffman_bound(g: Graph) -> float:
    """Upper bound -n*lam_min / (d - lam_min) on the independence number
    of a d-regular graph (ratio bound)."""
    d = _require_regular(g, "hoffman_bound")
    lam = spectrum(g, "adjacency").smallest()
    if d - lam <= SLACK:
        # only for edgeless graphs, where the bound is vacuous
        return float(g.n)
    return -g.n * lam / (d - lam)


def non_bipartite_size_bound(g: Graph) -> float:
    """Upper bound -2n*lam_min / (d - lam_min) on the order of any induced
    bipartite subgraph of a d-regular graph.

    An induced bipartite subgraph on 2k vertices contains an independent
    set of half its order in a suitable sense, which doubles the ratio
    bound.  Values of n or more are vacuous (and occur exactly when the
    graph is bipartite, where lam_min = -d).
    """
    d = _require_regular(g, "non_bipartite_size_bound")
    lam = spectrum(g, "adjacency").smallest()
    if d - lam <= SLACK:
        return float(2 * g.n)
    return -2 * g.n * lam / (d - lam)


class MixingReport(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    edge_count: int
    expected: float
    lam: float


def mixing_discrepancy(g: Graph, s, t) -> MixingReport:
    """Expander-mixing discrepancy for vertex sets S and T.

    ``edge_count`` counts ordered pairs (u, v) with u in S, v in T and
    {u, v} an edge, so a crossing pair with u in both sets contributes per
    orientation; this keeps the bound valid for overlapping sets.  lhs is
    ``|edge_count - d|S||T|/n|``, rhs is ``lam * sqrt(|S||T|)`` with lam
    the largest absolute nontrivial adjacency eigenvalue.
    """
    d = _require_regular(g, "mixing_discrepancy")
    s = frozenset(int(v) for v in s)
    t = frozenset(int(v) for v in t)
    for v in s | t:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    vals = spectrum(g, "adjacency").values
    lam = max(abs(vals[0]), abs(vals[-2])) if g.n >= 2 else 0.0
    count = 0
    for u in s:
        for w in g.neighbors(u):
            if w in t:
                count += 1
    expected = d * len(s) * len(t) / g.n
    lhs = abs(count - expected)
    rhs = lam * math.sqrt(len(s) * len(t))
    return MixingReport(lhs, rhs, lhs <= rhs + SLACK, count, expected, lam)


def pm_spectral_certificate(g: Graph) -> bool:
    """Sufficient spectral condition for a perfect matching: n even and
    the largest Laplacian eigenvalue at most twice the second smallest."""
    if g.n == 0:
        raise GraphError("empty graph")
    if g.n % 2 != 0 or g.m == 0:
        # edgeless graphs satisfy the eigenvalue condition vacuously
        return False
    vals = spectrum(g, "laplacian").values
    return vals[-1] <= 2 * vals[1] + SLACK


def interlacing_rows(g: Graph, vertices) -> tuple:
    """Interlacing brackets (k, lower, value, upper) for H = G[U].

    For each k in 1..|U| the k-th smallest Laplacian eigenvalue of H is
    bracketed by min/max degree of H shifted by adjacency eigenvalues of G:

        delta(H) - lam_{n-k+1}(A_G)  <=  lam_k(L_H)  <=  Delta(H) - lam_{m-k+1}(A_G)

    with A_G eigenvalues ascending (lam_1 smallest).
    """
    from .graphs import induced_subgraph

    u = sorted(set(int(v) for v in vertices))
    if not u:
        raise GraphError("empty vertex set")
    h, _ = induced_subgraph(g, u)
    m = h.n
    ag = spectrum(g, "adjacency").values  # ascending, 1-based: ag[k-1]
    lh = spectrum(h, "laplacian").values
    dmin = h.min_degree()
    dmax = h.max_degree()
    rows = []
    for k in range(1, m + 1):
        lower = dmin - ag[g.n - k]  # lam_{n-k+1}(A_G)
        upper = dmax - ag[m - k]  # lam_{m-k+1}(A_G)
        rows.append((k, lower, lh[k - 1], upper))
    return tuple(rows)


def interlacing_check(g: Graph, vertices) -> bool:
    """True iff every interlacing bracket holds within the 1e-8 slack."""
    return all(
        lower - SLACK <= val <= upper + SLACK
        for _, lower, val, upper in interlacing_rows(g, vertices)
    )
