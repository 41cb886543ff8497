"""Constraint formulas over graph edges and the reductions between them.

Variables are edge ids of a host graph.  Three families: perfect
matching (every vertex covered exactly once), cardinality (vertex v
covered exactly b_v times), and parity (odd or even incidence per
vertex, Tseitin style).  All three are lists of linear constraints over
{0,1} edge variables, either exact counts or counts mod 2, so one
representation serves the whole module and survives restriction.

The reductions: the clique lift transporting parity hardness to perfect
matching, the restriction built from a topological embedding plus a
complement matching, and the layer restriction collapsing a cardinality
formula onto the perfect matching formula of its residual layer.
"""

import itertools
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .graphs import Graph, GraphError, canonical_json

DEGREE_CAP = 16
SEMANTIC_VAR_CAP = 20


class Lit(NamedTuple):
    """Signed occurrence of an edge variable."""

    var: int
    positive: bool

    def negated(self) -> "Lit":
        return Lit(self.var, not self.positive)

    def value(self, assignment) -> int:
        x = assignment[self.var]
        return x if self.positive else 1 - x

    def token(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"


def _lit_key(t: Lit):
    return (t.var, not t.positive)


class LinearConstraint(NamedTuple):
    """sum of literal values = rhs, exactly or mod 2.

    ``terms`` is a multiset (kept sorted); ``modulus`` is None for an
    exact count and 2 for parity.
    """

    terms: Tuple[Lit, ...]
    rhs: int
    modulus: Optional[int]

    def variables(self) -> frozenset:
        return frozenset(t.var for t in self.terms)

    def evaluate(self, assignment) -> bool:
        total = sum(t.value(assignment) for t in self.terms)
        if self.modulus is None:
            return total == self.rhs
        return total % self.modulus == self.rhs % self.modulus

    def is_constant_true(self) -> bool:
        return not self.terms and (
            self.rhs == 0 if self.modulus is None else self.rhs % self.modulus == 0
        )

    def is_constant_false(self) -> bool:
        if self.terms:
            if self.modulus is None and (self.rhs < 0 or self.rhs > len(self.terms)):
                return True
            return False
        if self.modulus is None:
            return self.rhs != 0
        return self.rhs % self.modulus != 0


def _make_constraint(terms, rhs: int, modulus: Optional[int]) -> LinearConstraint:
    """Normalize: cancel complementary pairs; for parity, flip negative
    literals into the rhs and cancel duplicate pairs."""
    terms = list(terms)
    if modulus is not None:
        rhs = rhs % modulus
        flipped = []
        for t in terms:
            if t.positive:
                flipped.append(t)
            else:
                # ~x contributes 1 - x; mod 2 that is 1 + x
                rhs = (rhs - 1) % modulus
                flipped.append(Lit(t.var, True))
        counts: Dict[int, int] = {}
        for t in flipped:
            counts[t.var] = counts.get(t.var, 0) + 1
        terms = [Lit(v, True) for v, c in counts.items() if c % 2 == 1]
        return LinearConstraint(tuple(sorted(terms, key=_lit_key)), rhs, modulus)

    # exact count: x + ~x is the constant 1
    pos: Dict[int, int] = {}
    neg: Dict[int, int] = {}
    for t in terms:
        bag = pos if t.positive else neg
        bag[t.var] = bag.get(t.var, 0) + 1
    out: List[Lit] = []
    for v in set(pos) | set(neg):
        cancel = min(pos.get(v, 0), neg.get(v, 0))
        rhs -= cancel
        out.extend([Lit(v, True)] * (pos.get(v, 0) - cancel))
        out.extend([Lit(v, False)] * (neg.get(v, 0) - cancel))
    return LinearConstraint(tuple(sorted(out, key=_lit_key)), rhs, None)


class Formula(NamedTuple):
    """A conjunction of linear constraints over edge variables.

    ``kind`` records how the formula was built (pm, card, tseitin); after
    a restriction the kind is kept with a ``restricted:`` prefix since
    the constraints may no longer be graph shaped.
    """

    kind: str
    n_vars: int
    constraints: Tuple[LinearConstraint, ...]

    def variables(self) -> frozenset:
        out: set = set()
        for c in self.constraints:
            out |= c.variables()
        return frozenset(out)

    def trivially_false(self) -> bool:
        return any(c.is_constant_false() for c in self.constraints)

    def evaluate(self, assignment) -> bool:
        return all(c.evaluate(assignment) for c in self.constraints)


class CnfFormula(NamedTuple):
    """Clauses of nonzero 1-indexed signed literals, DIMACS convention."""

    n_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def trivially_false(self) -> bool:
        return any(len(cl) == 0 for cl in self.clauses)

    def evaluate(self, assignment) -> bool:
        # assignment is indexed by 0-based variable
        for cl in self.clauses:
            if not any(
                assignment[abs(lit) - 1] == (1 if lit > 0 else 0) for lit in cl
            ):
                return False
        return True


def _broadcast(params, n: int, who: str) -> List[int]:
    if isinstance(params, int):
        return [params] * n
    vec = [int(x) for x in params]
    if len(vec) != n:
        raise GraphError(f"{who} needs one entry per vertex ({n}), got {len(vec)}")
    return vec


def build_formula(kind: str, g: Graph, params=None) -> Formula:
    """Vertex constraints of the requested family over G's edge variables.

    pm: every vertex incident to exactly one chosen edge (params unused).
    card: vertex v incident to exactly b_v chosen edges, 0 <= b_v <= deg(v).
    tseitin: parity of the chosen edges at v equals charge_v in {0, 1}.
    """
    k = kind.strip().lower()
    if k == "pm":
        b = [1] * g.n
    elif k == "card":
        if params is None:
            raise GraphError("card needs a per-vertex count b")
        b = _broadcast(params, g.n, "card b")
        for v, bv in enumerate(b):
            if not 0 <= bv <= g.degree(v):
                raise GraphError(
                    f"b[{v}] = {bv} outside [0, deg({v}) = {g.degree(v)}]"
                )
    elif k == "tseitin":
        if params is None:
            raise GraphError("tseitin needs a per-vertex charge")
        charge = _broadcast(params, g.n, "tseitin charge")
        for v, cv in enumerate(charge):
            if cv not in (0, 1):
                raise GraphError(f"charge[{v}] = {cv} not in {{0, 1}}")
        cons = []
        for v in range(g.n):
            terms = [Lit(g.edge_id(v, w), True) for w in g.neighbors(v)]
            cons.append(_make_constraint(terms, charge[v], 2))
        return Formula("tseitin", g.m, tuple(cons))
    else:
        raise GraphError(f"unknown formula kind {kind!r}")

    cons = []
    for v in range(g.n):
        terms = [Lit(g.edge_id(v, w), True) for w in g.neighbors(v)]
        cons.append(_make_constraint(terms, b[v], None))
    return Formula(k, g.m, tuple(cons))


# ---------------------------------------------------------------------------
# CNF emission
# ---------------------------------------------------------------------------


def _dimacs_lit(t: Lit) -> int:
    return (t.var + 1) if t.positive else -(t.var + 1)


def _clause_key(cl):
    return tuple((abs(l), l < 0) for l in cl)


def _sorted_clause(lits) -> Tuple[int, ...]:
    return tuple(sorted(set(lits), key=lambda l: (abs(l), l < 0)))


def _cnf_exact_count(c: LinearConstraint) -> List[Tuple[int, ...]]:
    """Subset clauses for an all-positive, duplicate-free exact count:
    any rhs+1 chosen edges give a conflict clause of negations, any
    (deg - rhs + 1) edges must contain a chosen one."""
    vars_ = [t.var for t in c.terms]
    d = len(vars_)
    clauses = []
    for sub in itertools.combinations(vars_, c.rhs + 1):
        clauses.append(_sorted_clause(-(v + 1) for v in sub))
    for sub in itertools.combinations(vars_, d - c.rhs + 1):
        clauses.append(_sorted_clause(v + 1 for v in sub))
    return clauses


def _cnf_parity(c: LinearConstraint) -> List[Tuple[int, ...]]:
    """Block every assignment of the support whose parity is wrong."""
    vars_ = [t.var for t in c.terms]
    clauses = []
    for bits in itertools.product((0, 1), repeat=len(vars_)):
        if sum(bits) % 2 != c.rhs % 2:
            clauses.append(
                _sorted_clause(
                    -(v + 1) if b else (v + 1) for v, b in zip(vars_, bits)
                )
            )
    return clauses


def _cnf_truth_table(c: LinearConstraint) -> List[Tuple[int, ...]]:
    """Fallback for restricted constraints with signs or duplicates:
    block the violating assignments of the distinct support."""
    vars_ = sorted(c.variables())
    clauses = []
    for bits in itertools.product((0, 1), repeat=len(vars_)):
        assignment = dict(zip(vars_, bits))
        if not c.evaluate(assignment):
            clauses.append(
                _sorted_clause(
                    -(v + 1) if assignment[v] else (v + 1) for v in vars_
                )
            )
    return clauses


def to_cnf(f: Formula, degree_cap: int = DEGREE_CAP) -> CnfFormula:
    """Equisatisfiable CNF over the same variables, no auxiliaries.

    Exact counts become the two-sided subset encoding, parities become
    blocking clauses (2^(d-1) per vertex), anything irregular falls back
    to truth-table blocking.  The clause blowup is exponential in the
    constraint support, hence the cap.
    """
    clauses: List[Tuple[int, ...]] = []
    for c in f.constraints:
        support = c.variables()
        if len(support) > degree_cap:
            raise GraphError(
                f"constraint support {len(support)} exceeds degree cap {degree_cap}"
            )
        if c.is_constant_true():
            continue
        if c.is_constant_false():
            # explicit marker: the empty clause
            clauses.append(())
            continue
        plain = all(t.positive for t in c.terms) and len(c.terms) == len(support)
        if c.modulus is None and plain:
            clauses.extend(_cnf_exact_count(c))
        elif c.modulus == 2 and plain:
            clauses.extend(_cnf_parity(c))
        else:
            clauses.extend(_cnf_truth_table(c))
    return CnfFormula(f.n_vars, tuple(clauses))


def dimacs_lines(cnf: CnfFormula, comments: Sequence[str] = ()) -> str:
    """Byte-deterministic DIMACS text: comments, header, one clause per
    line, zero-terminated."""
    lines = [f"c {c}" if c else "c" for c in comments]
    lines.append(f"p cnf {cnf.n_vars} {len(cnf.clauses)}")
    for cl in cnf.clauses:
        lines.append(" ".join(str(l) for l in cl + (0,)))
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    n_vars = None
    n_clauses = None
    clauses = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphError(f"bad DIMACS header: {raw!r}")
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        lits = [int(x) for x in parts]
        if lits[-1] != 0:
            raise GraphError(f"clause not zero-terminated: {raw!r}")
        clauses.append(tuple(lits[:-1]))
    if n_vars is None:
        raise GraphError("missing 'p cnf' header")
    if n_clauses != len(clauses):
        raise GraphError(f"header claims {n_clauses} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, tuple(clauses))


def polynomial_lines(f: Formula, comments: Sequence[str] = ()) -> str:
    """Symbolic axioms for algebraic tooling, never evaluated here.

    Per variable the Boolean axiom and the twin-variable axiom; per
    constraint one linear line, parity lines tagged (mod 2).
    """
    lines = [f"# {c}" if c else "#" for c in comments]
    for v in sorted(f.variables()):
        lines.append(f"x{v}^2 = x{v}")
        lines.append(f"x{v} + ~x{v} = 1")
    for c in f.constraints:
        lhs = " + ".join(t.token() for t in c.terms) if c.terms else "0"
        suffix = " (mod 2)" if c.modulus == 2 else ""
        lines.append(f"{lhs} = {c.rhs}{suffix}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# restrictions
# ---------------------------------------------------------------------------


class Restriction:
    """Affine substitution: each restricted variable goes to 0, 1, or a
    literal of an unrestricted variable (no chains)."""

    def __init__(self, assignments: Dict[int, Union[int, Lit]]):
        amap: Dict[int, Union[int, Lit]] = {}
        for v, val in assignments.items():
            v = int(v)
            if isinstance(val, Lit):
                amap[v] = val
            elif val in (0, 1):
                amap[v] = int(val)
            else:
                raise GraphError(f"restriction value {val!r} for variable {v}")
        for v, val in amap.items():
            if isinstance(val, Lit):
                if val.var == v:
                    raise GraphError(f"variable {v} mapped to its own literal")
                if val.var in amap:
                    raise GraphError(
                        f"chain: {v} -> x{val.var}, but {val.var} is restricted"
                    )
        self.assignments = amap

    def __len__(self) -> int:
        return len(self.assignments)

    def __contains__(self, v) -> bool:
        return v in self.assignments

    def __getitem__(self, v):
        return self.assignments[v]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Restriction)
            and self.assignments == other.assignments
        )

    def items(self):
        return sorted(self.assignments.items())

    def to_json_obj(self) -> dict:
        out = {}
        for v, val in self.assignments.items():
            out[str(v)] = val.token() if isinstance(val, Lit) else str(val)
        return out

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Restriction":
        amap: Dict[int, Union[int, Lit]] = {}
        for k, val in obj.items():
            if val in ("0", "1"):
                amap[int(k)] = int(val)
            elif val.startswith("~x"):
                amap[int(k)] = Lit(int(val[2:]), False)
            elif val.startswith("x"):
                amap[int(k)] = Lit(int(val[1:]), True)
            else:
                raise GraphError(f"bad restriction token {val!r}")
        return cls(amap)

    def __repr__(self) -> str:
        return f"Restriction({len(self.assignments)} variables)"


def _substitute(t: Lit, rho: Restriction):
    """Literal after restriction: an int 0/1 or a Lit."""
    if t.var not in rho:
        return t
    val = rho[t.var]
    if isinstance(val, Lit):
        return val if t.positive else val.negated()
    return val if t.positive else 1 - val


def apply_restriction(f, rho: Restriction):
    """F restricted by rho, same representation in as out.

    Formula: constraints are rewritten term by term; constants fold into
    the rhs; constant-true constraints are dropped, constant-false ones
    stay as explicit markers.  CnfFormula: satisfied clauses are
    dropped, falsified literals are deleted, a falsified clause stays as
    the empty clause.
    """
    if isinstance(f, CnfFormula):
        clauses = []
        for cl in f.clauses:
            out = []
            sat = False
            for lit in cl:
                t = Lit(abs(lit) - 1, lit > 0)
                sub = _substitute(t, rho)
                if isinstance(sub, Lit):
                    out.append(_dimacs_lit(sub))
                elif sub == 1:
                    sat = True
                    break
            if sat:
                continue
            out = _sorted_clause(out)
            if any(-l in out for l in out):
                continue  # tautology after substitution
            clauses.append(out)
        return CnfFormula(f.n_vars, tuple(clauses))

    if not isinstance(f, Formula):
        raise GraphError(f"cannot restrict {type(f).__name__}")
    cons = []
    for c in f.constraints:
        terms = []
        rhs = c.rhs
        for t in c.terms:
            sub = _substitute(t, rho)
            if isinstance(sub, Lit):
                terms.append(sub)
            else:
                rhs -= sub
        nc = _make_constraint(terms, rhs, c.modulus)
        if nc.is_constant_true():
            continue
        cons.append(nc)
    kind = f.kind if f.kind.startswith("restricted:") else f"restricted:{f.kind}"
    return Formula(kind, f.n_vars, tuple(cons))


def rename_variables(f: Formula, mapping: Dict[int, int], n_vars=None) -> Formula:
    """Injective variable renaming; unmapped variables must not occur."""
    used = f.variables()
    missing = used - set(mapping)
    if missing:
        raise GraphError(f"no image for variables {sorted(missing)[:5]}")
    values = [mapping[v] for v in used]
    if len(set(values)) != len(values):
        raise GraphError("renaming is not injective on the occurring variables")
    cons = []
    for c in f.constraints:
        terms = [Lit(mapping[t.var], t.positive) for t in c.terms]
        cons.append(_make_constraint(terms, c.rhs, c.modulus))
    if n_vars is None:
        n_vars = max(values, default=-1) + 1
    return Formula(f.kind, n_vars, tuple(cons))


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def _constraint_shape(c: LinearConstraint, var_order: Dict[int, int]):
    terms = tuple(
        sorted(((var_order[t.var], not t.positive) for t in c.terms))
    )
    return (c.modulus if c.modulus is not None else 0, c.rhs, terms)


def _canonical_order(f: Formula) -> Dict[int, int]:
    """First-appearance order: scan constraints in build order, terms in
    sorted order, numbering variables as they show up."""
    order: Dict[int, int] = {}
    for c in f.constraints:
        for t in c.terms:
            if t.var not in order:
                order[t.var] = len(order)
    return order


def _normalized_multiset(f: Formula, var_order: Dict[int, int]):
    shapes = [
        _constraint_shape(c, var_order)
        for c in f.constraints
        if not c.is_constant_true()
    ]
    return sorted(shapes)


def formulas_equivalent(
    f1: Formula,
    f2: Formula,
    mode: str = "syntactic",
    var_map: Optional[Dict[int, int]] = None,
) -> bool:
    """Compare two formulas, ignoring the kind label.

    syntactic: equal constraint multisets after renaming, with
    constant-true constraints disregarded.  semantic: identical
    satisfying-assignment sets over the union of occurring variables
    (capped at 20).  ``var_map`` renames f2's variables onto f1's;
    without it both sides are put in first-appearance canonical order.
    """
    if var_map is not None:
        f2 = rename_variables(f2, var_map, n_vars=max(f1.n_vars, f2.n_vars))

    if mode == "syntactic":
        if var_map is None:
            o1, o2 = _canonical_order(f1), _canonical_order(f2)
        else:
            o1 = {v: v for v in f1.variables() | f2.variables()}
            o2 = o1
        return _normalized_multiset(f1, o1) == _normalized_multiset(f2, o2)

    if mode != "semantic":
        raise GraphError(f"unknown equivalence mode {mode!r}")

    if var_map is None:
        o1, o2 = _canonical_order(f1), _canonical_order(f2)
        f1 = rename_variables(f1, o1, n_vars=len(o1)) if o1 else f1
        f2 = rename_variables(f2, o2, n_vars=len(o2)) if o2 else f2
    support = sorted(f1.variables() | f2.variables())
    if len(support) > SEMANTIC_VAR_CAP:
        raise GraphError(
            f"{len(support)} variables exceed the semantic cap {SEMANTIC_VAR_CAP}"
        )
    for bits in itertools.product((0, 1), repeat=len(support)):
        assignment = dict(zip(support, bits))
        if f1.evaluate(assignment) != f2.evaluate(assignment):
            return False
    return True


def satisfying_assignments(f: Formula, support=None):
    """All satisfying assignments over the given support (default: the
    occurring variables).  Exponential; capped like semantic mode."""
    if support is None:
        support = sorted(f.variables())
    support = list(support)
    if len(support) > SEMANTIC_VAR_CAP:
        raise GraphError(
            f"{len(support)} variables exceed the semantic cap {SEMANTIC_VAR_CAP}"
        )
    for bits in itertools.product((0, 1), repeat=len(support)):
        assignment = dict(zip(support, bits))
        if f.evaluate(assignment):
            yield assignment


# ---------------------------------------------------------------------------
# the clique lift
# ---------------------------------------------------------------------------


class LiftResult(NamedTuple):
    """Lifted host; provenance maps each lifted-graph edge id to
    ("clique", g_vertex) or ("lifted", g_edge_id)."""

    h: Graph
    lifted_edge: Dict[int, int]
    provenance: Dict[int, tuple]


def lift_tseitin_to_pm(g: Graph) -> LiftResult:
    """Blow each vertex of a d-regular graph into a (d+1)-clique and
    carry each original edge between dedicated clique vertices.

    Vertex v becomes the block v*(d+1) .. v*(d+1)+d; slot 0 is the spare
    vertex, slot i pairs with v's i-th neighbor in sorted order.  The
    edge {u, v}, with v the i-th neighbor of u and u the j-th neighbor
    of v, becomes {block(u)+i, block(v)+j}.  Parity of chosen edges at a
    vertex then transfers to matchability of the clique remainder.
    """
    if g.n == 0:
        raise GraphError("empty graph has no lift")
    if not g.is_regular():
        raise GraphError("lift needs a regular graph")
    d = g.degree(0)
    if d == 0:
        raise GraphError("lift needs positive degree")
    block = d + 1

    def slot(u: int, v: int) -> int:
        # v is u's (rank+1)-th neighbor in sorted order
        return u * block + g.neighbors(u).index(v) + 1

    edges = []
    for v in range(g.n):
        base = v * block
        for i in range(block):
            for j in range(i + 1, block):
                edges.append((base + i, base + j))
    for u, v in g.edges:
        edges.append(tuple(sorted((slot(u, v), slot(v, u)))))

    h = Graph(g.n * block, edges)
    lifted_edge: Dict[int, int] = {}
    provenance: Dict[int, tuple] = {}
    for v in range(g.n):
        base = v * block
        for i in range(block):
            for j in range(i + 1, block):
                provenance[h.edge_id(base + i, base + j)] = ("clique", v)
    for eid, (u, v) in enumerate(g.edges):
        hid = h.edge_id(slot(u, v), slot(v, u))
        lifted_edge[eid] = hid
        provenance[hid] = ("lifted", eid)
    return LiftResult(h, lifted_edge, provenance)


# ---------------------------------------------------------------------------
# restriction from an embedding
# ---------------------------------------------------------------------------


def restriction_from_embedding(g: Graph, emb, matching) -> Restriction:
    """The projection that collapses PM of the host onto PM of the
    embedded pattern.

    Matching edges go to 1, all other edges outside the embedding go to
    0, and each embedded path's variables alternate between the positive
    and negative literal of its first edge, first and last positive
    (odd length makes the two meet).  ``matching`` must be a perfect
    matching of the host minus the embedding's vertices.
    """
    used_vertices: set = set(emb.sigma.values())
    for p in emb.paths.values():
        used_vertices |= set(p)

    m_edges = []
    covered: set = set()
    for e in matching:
        u, v = int(e[0]), int(e[1])
        eid = g.edge_id(u, v)  # raises if absent
        if u in covered or v in covered:
            raise GraphError(f"matching repeats vertex in edge ({u},{v})")
        covered |= {u, v}
        m_edges.append(eid)
    leftovers = set(range(g.n)) - used_vertices
    if covered != leftovers:
        missing = sorted(leftovers - covered)[:5]
        extra = sorted(covered - leftovers)[:5]
        raise GraphError(
            f"matching must cover exactly the unused vertices "
            f"(missing {missing}, extra {extra})"
        )

    assignments: Dict[int, Union[int, Lit]] = {}
    path_edges: set = set()
    reps: set = set()
    for heid in sorted(emb.paths):
        p = emb.paths[heid]
        if len(p) % 2 != 0:
            raise GraphError(
                f"path for pattern edge {heid} has even length {len(p) - 1}"
            )
        rep = g.edge_id(p[0], p[1])
        if rep in reps:
            raise GraphError("two paths share a first edge")
        reps.add(rep)
        for i in range(len(p) - 1):
            eid = g.edge_id(p[i], p[i + 1])
            if eid in path_edges:
                raise GraphError(f"edge {eid} lies on two paths")
            path_edges.add(eid)
            if eid == rep:
                continue  # the representative stays free
            assignments[eid] = Lit(rep, i % 2 == 0)

    for eid in range(g.m):
        if eid in path_edges or eid in assignments:
            continue
        assignments[eid] = 1 if eid in m_edges else 0
    return Restriction(assignments)


# ---------------------------------------------------------------------------
# layered cardinality restriction
# ---------------------------------------------------------------------------


class CardCollapse(NamedTuple):
    """Restriction plus the residual layer; edge_ids[i] is the original
    edge id of the residual graph's edge i.  ``flipped`` marks the 0/1
    exchange used when t > d/2."""

    rho: Restriction
    g0: Graph
    flipped: bool
    edge_ids: Tuple[int, ...]


def card_to_pm_restriction(g_layers: Tuple[Graph, Sequence], t: int) -> CardCollapse:
    """Collapse Card(G, t at every vertex) onto PM of the base layer.

    The host must come layered as one d0-regular base plus 2-regular
    layers.  For odd t <= d/2, fixing floor(t/2) of the 2-factors to 1
    spends 2*floor(t/2) incidences per vertex, leaving exactly one to
    pick in the base layer: PM(G0).  For t > d/2 the roles of 0 and 1
    flip: the same count with t' = d - t, fixing those layers to 0.
    """
    g, layers = g_layers
    layers = [frozenset(int(e) for e in layer) for layer in layers]
    if not layers:
        raise GraphError("need at least one layer")
    if t % 2 != 1:
        raise GraphError(f"t = {t} must be odd")
    if not g.is_regular() or g.n == 0:
        raise GraphError("layered host must be regular")
    d = g.degree(0)
    if not 0 <= t <= d:
        raise GraphError(f"t = {t} outside [0, {d}]")

    if sorted(set().union(*layers)) != list(range(g.m)):
        raise GraphError("layers must partition the edge set")
    if sum(len(l) for l in layers) != g.m:
        raise GraphError("layers overlap")

    flipped = t > d // 2
    t_eff = d - t if flipped else t
    need = t_eff // 2
    if len(layers) != need + 1:
        raise GraphError(
            f"t = {t} needs a base layer plus {need} 2-factors, got {len(layers)}"
        )

    deg_in = [[0] * g.n for _ in layers]
    for i, layer in enumerate(layers):
        for eid in layer:
            u, v = g.edges[eid]
            deg_in[i][u] += 1
            deg_in[i][v] += 1
    d0 = d - 2 * need
    if any(x != d0 for x in deg_in[0]):
        raise GraphError(f"base layer is not {d0}-regular")
    for i in range(1, len(layers)):
        if any(x != 2 for x in deg_in[i]):
            raise GraphError(f"layer {i} is not 2-regular")

    value = 0 if flipped else 1
    assignments: Dict[int, Union[int, Lit]] = {}
    for layer in layers[1:]:
        for eid in layer:
            assignments[eid] = value

    base_ids = tuple(sorted(layers[0]))
    g0 = Graph(g.n, [g.edges[eid] for eid in base_ids])
    return CardCollapse(Restriction(assignments), g0, flipped, base_ids)
