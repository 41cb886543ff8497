"""Degree-balanced cuts, windowed odd-cycle search, robustness probes,
and the partition pipeline that ties them together.

A (c, eps)-degree-balanced cut splits V into (S, T) so that |S| is
within eps*n of c*n and every vertex has between (c-eps) and (c+eps) of
its neighbors in S.  Such cuts exist for large enough degree by a local
lemma argument; the constructive version here is Moser-Tardos
resampling: draw every inclusion bit independently with probability c,
then repeatedly pick the lowest violating vertex and redraw the bits of
its neighborhood.  The global size window is enforced by restarting the
converged per-vertex state when it misses.

The pipeline's "robustness" targets are universally quantified over
exponentially many subsets, so they cannot be certified at scale; probes
sample subsets and can only falsify.  Result statuses say which kind of
evidence was gathered.  That asymmetry is deliberate and surfaced, not
hidden.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

from .expansion import (
    c_alpha,
    exact_limit_default,
    expansion_report,
    spectral_expansion_lower,
    vertex_expansion_exact,
)
from .graphs import Graph, GraphError, induced_subgraph, parity_bfs, parity_witness
from .matching import max_matching
from .rng import Rng

__all__ = [
    "Cut",
    "CutBudgetError",
    "degree_balanced_cut",
    "verify_cut",
    "OddCycle",
    "shortest_odd_cycle",
    "ProbeReport",
    "robustness_probe",
    "robustness_analytic_bound",
    "PartitionResult",
    "partition_pipeline",
]

RESAMPLE_BUDGET_PER_VERTEX = 10**5
SIZE_RETRY_CAP = 50


class Cut(NamedTuple):
    s: frozenset
    t: frozenset
    c: float
    eps: float


class CutBudgetError(GraphError):
    """Resampling budget exhausted before the cut stabilized.

    ``histogram`` maps each vertex to the number of times it was picked
    as the violating vertex, which is the useful forensic signal (a hot
    vertex usually means its degree admits no integer in the window).
    """

    def __init__(self, message: str, histogram: dict):
        super().__init__(message)
        self.histogram = dict(histogram)


def _window(c: float, eps: float, d: int):
    return (c - eps) * d, (c + eps) * d


def verify_cut(g: Graph, cut: Cut) -> bool:
    """Recheck every Cut invariant from scratch (sampler-independent)."""
    s, t = cut.s, cut.t
    if s & t or (s | t) != frozenset(range(g.n)):
        return False
    if abs(len(s) - cut.c * g.n) > cut.eps * g.n + 1e-12:
        return False
    for u in range(g.n):
        d = g.degree(u)
        if d == 0:
            continue
        k = sum(1 for w in g.neighbors(u) if w in s)
        lo, hi = _window(cut.c, cut.eps, d)
        if not (lo - 1e-12 <= k <= hi + 1e-12):
            return False
    return True


def degree_balanced_cut(
    g: Graph,
    c: float,
    eps: float,
    rng: Rng,
    max_resamples: Optional[int] = None,
) -> Cut:
    """Sample a (c, eps)-degree-balanced cut, deterministic in the seed.

    Raises CutBudgetError (with the violating-vertex histogram) when the
    resampling budget runs out, which in practice means no integer
    neighbor count lies in some vertex's window at this (c, eps).
    """
    if not 0 <= c <= 1:
        raise GraphError("c must lie in [0, 1]")
    if eps < 0:
        raise GraphError("eps must be nonnegative")
    n = g.n
    budget = max_resamples if max_resamples is not None else RESAMPLE_BUDGET_PER_VERTEX * max(n, 1)
    histogram: dict = {}
    spent = 0

    # fail fast when some window provably contains no integer count
    for d in sorted(set(g.degree(v) for v in range(n))):
        if d == 0:
            continue
        lo, hi = _window(c, eps, d)
        if math.ceil(lo - 1e-12) > math.floor(hi + 1e-12):
            raise CutBudgetError(
                f"no integer neighbor count in [{lo:.4f}, {hi:.4f}] "
                f"for degree {d}; (c={c}, eps={eps}) is infeasible",
                {},
            )
    if n and math.ceil((c - eps) * n - 1e-12) > math.floor((c + eps) * n + 1e-12):
        raise CutBudgetError(
            f"no integer size in the global window (c={c}, eps={eps}, n={n})",
            {},
        )

    for _ in range(SIZE_RETRY_CAP):
        in_s = list(rng.bernoulli_mask(n, c))
        # count of neighbors currently in S, maintained incrementally
        count = [0] * n
        for u, v in g.edges:
            if in_s[v]:
                count[u] += 1
            if in_s[u]:
                count[v] += 1

        def violating(u: int) -> bool:
            d = g.degree(u)
            if d == 0:
                return False
            lo, hi = _window(c, eps, d)
            return not (lo - 1e-12 <= count[u] <= hi + 1e-12)

        bad = sorted(u for u in range(n) if violating(u))
        while bad:
            u = bad[0]
            if spent >= budget:
                raise CutBudgetError(
                    f"cut did not stabilize within {budget} resamples "
                    f"(c={c}, eps={eps}); likely no integer neighbor count "
                    "fits some degree window",
                    histogram,
                )
            spent += 1
            histogram[u] = histogram.get(u, 0) + 1
            touched = set()
            for w in g.neighbors(u):
                new_bit = rng.random() < c
                if new_bit != in_s[w]:
                    in_s[w] = new_bit
                    delta = 1 if new_bit else -1
                    for x in g.neighbors(w):
                        count[x] += delta
                        touched.add(x)
                    touched.add(w)
            touched.add(u)
            bad = sorted(
                set(v for v in bad if violating(v))
                | set(v for v in touched if violating(v))
            )
        size = sum(in_s)
        if abs(size - c * n) <= eps * n + 1e-12:
            s = frozenset(u for u in range(n) if in_s[u])
            t = frozenset(u for u in range(n) if not in_s[u])
            cut = Cut(s, t, c, eps)
            assert verify_cut(g, cut)
            return cut
    raise CutBudgetError(
        f"global size window missed {SIZE_RETRY_CAP} times (c={c}, eps={eps})",
        histogram,
    )


class OddCycle(NamedTuple):
    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices)

    def validate(self, g: Graph) -> bool:
        vs = self.vertices
        if len(vs) < 3 or len(vs) % 2 == 0 or len(set(vs)) != len(vs):
            return False
        return all(
            g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))
        )


def shortest_odd_cycle(
    g: Graph,
    min_len: int = 3,
    max_len: Optional[int] = None,
    forbidden=frozenset(),
) -> Optional[OddCycle]:
    """An odd cycle with min_len <= length <= max_len avoiding forbidden.

    For min_len = 3 this is exact (the odd girth, via parity search from
    every vertex).  For min_len > 3 shorter cycles are suppressed by
    forbidding one vertex of each and re-searching; that keeps every
    returned cycle valid but can miss windowed cycles in dense graphs
    (completeness for a length floor would decide Hamiltonicity, so no
    exact algorithm is on the table).  None means "not found".
    """
    if min_len % 2 == 0 or min_len < 3:
        raise GraphError("min_len must be odd and at least 3")
    if max_len is None:
        max_len = g.n
    blocked = set(int(v) for v in forbidden)
    while True:
        best_len = None
        best_vertex = None
        for u in range(g.n):
            if u in blocked:
                continue
            _, odd = parity_bfs(g, u, blocked)
            length = odd[u]
            if length is not None and math.isfinite(length):
                if best_len is None or length < best_len:
                    best_len = int(length)
                    best_vertex = u
        if best_len is None or best_len > max_len:
            return None
        witness = parity_witness(g, best_vertex, best_vertex, 1, blocked)
        if witness is None:
            # exact distance exists, so a witness must too; re-search
            # without this start rather than trusting repair heuristics
            blocked.add(best_vertex)
            continue
        cycle = OddCycle(tuple(witness.vertices))
        if not cycle.validate(g):
            blocked.add(best_vertex)
            continue
        if cycle.length >= min_len:
            if cycle.length <= max_len:
                return cycle
            return None
        # too short: kill this cycle by removing one vertex and retry
        blocked.add(min(cycle.vertices))


class ProbeReport(NamedTuple):
    falsified: bool
    min_max_degree: Optional[int]
    threshold: float
    analytic_bound: Optional[float]
    sample_size: int
    trials: int
    violating_sample: Optional[frozenset]
    vacuous: bool


def robustness_analytic_bound(d: int, kappa: float) -> float:
    """Mixing-lemma lower bound d*(kappa - 2*sqrt((1-kappa)/(kappa*d)))
    on the max degree of any induced subgraph on >= kappa*n vertices of
    a d-regular (near-Ramanujan) graph.  Nonpositive values are vacuous."""
    if not 0 < kappa <= 1:
        raise GraphError("kappa must lie in (0, 1]")
    if d <= 0:
        return 0.0
    return d * (kappa - 2 * math.sqrt((1 - kappa) / (kappa * d)))


def robustness_probe(
    g: Graph,
    kappa: float,
    d_min: float,
    trials: int,
    rng: Rng,
) -> ProbeReport:
    """Sampled falsification probe for "every induced subgraph on at
    least kappa*n vertices has max degree >= d_min".

    Samples ``trials`` uniform subsets of the minimal size ceil(kappa*n)
    and reports the smallest max degree observed.  A violating sample
    falsifies the property; absence of violations certifies nothing.
    """
    if not 0 < kappa <= 1:
        raise GraphError("kappa must lie in (0, 1]")
    size = math.ceil(kappa * g.n)
    analytic = robustness_analytic_bound(g.degree(0), kappa) if g.n and g.is_regular() else None
    if size > g.n or size == 0 or d_min <= 0:
        return ProbeReport(False, None, d_min, analytic, size, 0, None, True)
    vertices = list(range(g.n))
    min_max_deg = None
    for t in range(trials):
        u = rng.split(t).sample(vertices, size)
        sub, _ = induced_subgraph(g, u)
        md = sub.max_degree()
        if min_max_deg is None or md < min_max_deg:
            min_max_deg = md
        if md < d_min:
            return ProbeReport(
                True, min_max_deg, d_min, analytic, size, t + 1, frozenset(u), False
            )
    return ProbeReport(False, min_max_deg, d_min, analytic, size, trials, None, False)


class PartitionResult(NamedTuple):
    t: frozenset
    cut: Cut
    requested_eps: float
    widened: bool
    alpha_target: float
    diagnostics: dict
    seed_descriptor: dict

    def to_json_obj(self) -> dict:
        diag = {}
        for key, entry in self.diagnostics.items():
            diag[key] = {
                k: (sorted(v) if isinstance(v, (set, frozenset)) else v)
                for k, v in entry.items()
            }
        return {
            "t": sorted(self.t),
            "s": sorted(self.cut.s),
            "c": self.cut.c,
            "eps": self.cut.eps,
            "requested_eps": self.requested_eps,
            "widened": self.widened,
            "alpha_target": self.alpha_target,
            "diagnostics": diag,
            "seed": self.seed_descriptor,
        }


def _alpha_target(c: float, eps: float) -> float:
    # nonpositive slack means the induced-expansion guarantee degenerates
    if 1 - c - eps <= 1e-12:
        return 0.0
    return max(0.0, (1 - c - 2 * eps) / (2 * (1 - c - eps)))


def partition_pipeline(
    g: Graph,
    rng: Rng,
    c: float = 0.75,
    eps: float = 1 / 16,
    kappa: float = 1 / 16,
    ell: int = 7,
    pm_trials: int = 50,
    probe_trials: int = 50,
    exact_limit: Optional[int] = None,
    max_resamples: Optional[int] = None,
) -> PartitionResult:
    """Cut G, keep the smaller side T, and run the four diagnostics:
    induced expansion of G[T], windowed odd-cycle search in G[T], the
    max-degree robustness probe on G, and perfect-matching trials after
    removing random parity-correct subsets of T.

    When the requested eps admits no integer neighbor count for some
    degree, the cut sampler cannot converge; the pipeline widens eps in
    steps of the requested value (recording ``widened``) instead of
    failing, since small or degenerate inputs are still worth a report.
    Diagnostics never claim more than their evidence: statuses are
    "pass" / "fail" / "inconclusive" / "vacuous".
    """
    requested_eps = eps
    cut = None
    eff = eps
    # per-attempt cap well below the primitive's default so an eps the
    # resampler cannot serve gets widened in seconds, not hours
    attempt_budget = max_resamples if max_resamples is not None else 200 * max(g.n, 1)
    for step in range(1, 9):
        try:
            cut = degree_balanced_cut(g, c, eff, rng.split(0), attempt_budget)
            break
        except CutBudgetError:
            eff = min(1.0, requested_eps * (step + 1))
    if cut is None:
        cut = degree_balanced_cut(g, c, 1.0, rng.split(0), attempt_budget)
        eff = 1.0
    widened = eff != requested_eps

    t = cut.t
    alpha = _alpha_target(c, eff)
    diagnostics: dict = {}

    limit = exact_limit if exact_limit is not None else exact_limit_default()
    sub, _ = induced_subgraph(g, sorted(t))
    if sub.n == 0:
        diagnostics["expansion"] = {"status": "vacuous", "alpha_target": alpha}
    elif sub.n <= limit:
        rep = vertex_expansion_exact(sub, limit)
        status = "pass" if rep.alpha_exact >= alpha - 1e-12 else "fail"
        diagnostics["expansion"] = {
            "status": status,
            "alpha_target": alpha,
            "alpha_exact": rep.alpha_exact,
            "alpha_spectral_lower": rep.alpha_spectral_lower,
            "witness": rep.witness_cut,
        }
    else:
        lower = spectral_expansion_lower(sub)
        status = "pass" if lower >= alpha - 1e-12 else "inconclusive"
        diagnostics["expansion"] = {
            "status": status,
            "alpha_target": alpha,
            "alpha_exact": None,
            "alpha_spectral_lower": lower,
        }

    upper = 0
    if sub.n >= 3:
        upper = math.ceil(3 * c_alpha(max(alpha, 1e-6) / 2) * math.log2(max(sub.n, 2)))
        upper = min(upper, sub.n if sub.n % 2 else sub.n - 1)
    if upper >= ell:
        local = shortest_odd_cycle(sub, ell, upper)
        back = sorted(t)
        cycle = tuple(back[v] for v in local.vertices) if local is not None else None
        diagnostics["odd_cycle"] = {
            "status": "pass" if cycle else "inconclusive",
            "window": (ell, upper),
            "cycle": cycle,
        }
    else:
        diagnostics["odd_cycle"] = {
            "status": "vacuous",
            "window": (ell, upper),
            "cycle": None,
        }

    d_min = (
        robustness_analytic_bound(g.degree(0), kappa)
        if g.n and g.is_regular()
        else 0.0
    )
    probe = robustness_probe(g, kappa, d_min, probe_trials, rng.split(1))
    diagnostics["robustness"] = {
        "status": (
            "vacuous"
            if probe.vacuous
            else ("fail" if probe.falsified else "inconclusive")
        ),
        "kappa": kappa,
        "threshold": d_min,
        "analytic_bound": probe.analytic_bound,
        "min_max_degree": probe.min_max_degree,
        "trials": probe.trials,
    }

    want_parity = g.n % 2
    failures = 0
    ran = 0
    sorted_t = sorted(t)
    for trial in range(pm_trials):
        trng = rng.split(2).split(trial)
        if not sorted_t:
            break
        size = int(trng.integers(1, len(sorted_t) + 1))
        if size % 2 != want_parity:
            size = size - 1 if size > 1 else size + 1
        if not 1 <= size <= len(sorted_t):
            continue
        u = set(trng.sample(sorted_t, size))
        rest = [v for v in range(g.n) if v not in u]
        if len(rest) % 2:
            continue
        h, _ = induced_subgraph(g, rest)
        ran += 1
        if len(max_matching(h)) != h.n // 2:
            failures += 1
    if ran == 0:
        diagnostics["pm_after_removal"] = {"status": "vacuous", "trials": 0, "failures": 0}
    else:
        diagnostics["pm_after_removal"] = {
            "status": "pass" if failures == 0 else "fail",
            "trials": ran,
            "failures": failures,
        }

    return PartitionResult(
        t, cut, requested_eps, widened, alpha, diagnostics, rng.descriptor()
    )
