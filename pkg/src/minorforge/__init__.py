"""Expander-graph toolkit: sampling, spectral certificates, balanced
cuts, topological-minor embeddings, and reductions between matching,
cardinality, and parity formulas.

Everything downstream of a seed is deterministic; artifacts carry the
configuration that made them so runs can be replayed byte for byte.
"""

from .rng import Rng
from .graphs import (
    Graph,
    GraphError,
    MultiGraph,
    Path,
    SampleTimeout,
    ball,
    canonical_json,
    diameter,
    generate_random_regular,
    induced_subgraph,
    parity_bfs,
    parity_witness,
    random_regular_union,
)
from .spectral import (
    MixingReport,
    Spectrum,
    hoffman_bound,
    interlacing_check,
    interlacing_rows,
    mixing_discrepancy,
    non_bipartite_size_bound,
    pm_spectral_certificate,
    spectrum,
)
from .expansion import (
    ExpansionReport,
    FixExpansionResult,
    SparseCutResult,
    c_alpha,
    diameter_upper_bound,
    exact_limit_default,
    expansion_report,
    find_sparse_cut,
    fix_expansion,
    separator_lower_bound,
    spectral_expansion_lower,
    vertex_expansion_exact,
)
from .matching import (
    is_matching,
    matching_size,
    max_matching,
    solve_card,
    verify_assignment,
)
from .partition import (
    Cut,
    CutBudgetError,
    OddCycle,
    PartitionResult,
    ProbeReport,
    degree_balanced_cut,
    partition_pipeline,
    robustness_analytic_bound,
    robustness_probe,
    shortest_odd_cycle,
    verify_cut,
)
from .embedding import (
    Cross,
    CrossBudgetError,
    CrossError,
    EmbedParams,
    EmbedResult,
    NoBranchError,
    NoCenterError,
    TopologicalEmbedding,
    embed_graph,
    embed_parameters,
    find_cross,
    parity_path_between_sets,
    unembed_vertex,
    verify_embedding,
    vertex_disjoint_paths,
)
from .formulas import (
    CardCollapse,
    CnfFormula,
    Formula,
    LiftResult,
    LinearConstraint,
    Lit,
    Restriction,
    apply_restriction,
    build_formula,
    card_to_pm_restriction,
    dimacs_lines,
    formulas_equivalent,
    lift_tseitin_to_pm,
    parse_dimacs,
    polynomial_lines,
    rename_variables,
    restriction_from_embedding,
    satisfying_assignments,
    to_cnf,
)

__version__ = "0.1.0"

__all__ = [
    "Rng",
    "Graph",
    "GraphError",
    "MultiGraph",
    "Path",
    "SampleTimeout",
    "ball",
    "canonical_json",
    "diameter",
    "generate_random_regular",
    "induced_subgraph",
    "parity_bfs",
    "parity_witness",
    "random_regular_union",
    "MixingReport",
    "Spectrum",
    "hoffman_bound",
    "interlacing_check",
    "interlacing_rows",
    "mixing_discrepancy",
    "non_bipartite_size_bound",
    "pm_spectral_certificate",
    "spectrum",
    "ExpansionReport",
    "FixExpansionResult",
    "SparseCutResult",
    "c_alpha",
    "diameter_upper_bound",
    "exact_limit_default",
    "expansion_report",
    "find_sparse_cut",
    "fix_expansion",
    "separator_lower_bound",
    "spectral_expansion_lower",
    "vertex_expansion_exact",
    "is_matching",
    "matching_size",
    "max_matching",
    "solve_card",
    "verify_assignment",
    "Cut",
    "CutBudgetError",
    "OddCycle",
    "PartitionResult",
    "ProbeReport",
    "degree_balanced_cut",
    "partition_pipeline",
    "robustness_analytic_bound",
    "robustness_probe",
    "shortest_odd_cycle",
    "verify_cut",
    "Cross",
    "CrossBudgetError",
    "CrossError",
    "EmbedParams",
    "EmbedResult",
    "NoBranchError",
    "NoCenterError",
    "TopologicalEmbedding",
    "embed_graph",
    "embed_parameters",
    "find_cross",
    "parity_path_between_sets",
    "unembed_vertex",
    "verify_embedding",
    "vertex_disjoint_paths",
    "CardCollapse",
    "CnfFormula",
    "Formula",
    "LiftResult",
    "LinearConstraint",
    "Lit",
    "Restriction",
    "apply_restriction",
    "build_formula",
    "card_to_pm_restriction",
    "dimacs_lines",
    "formulas_equivalent",
    "lift_tseitin_to_pm",
    "parse_dimacs",
    "polynomial_lines",
    "rename_variables",
    "restriction_from_embedding",
    "satisfying_assignments",
    "to_cnf",
    "__version__",
]
