"""Exact traces and Estrada indices for uniform hypergraphs.

The engine counts rooted Euler families on the incidence structure of a
uniform hypergraph, turning power-sum traces into exact rational
arithmetic.  On top of that sit cut-vertex composition rules, certified
Estrada index brackets, and audit harnesses for trace comparison laws.
"""

from .composition import (
    AuditRow,
    InequalityAuditReport,
    LocalTraceProfile,
    audit_cored_shift,
    audit_edge_shift,
    audit_path_shift,
    coalescence_local_trace,
    local_trace_profile,
    relocation_difference,
)
from .config import Budget, default_budget
from .errors import (
    DuplicateEdge,
    EmptyGraph,
    HypertraceError,
    InfeasibleQuery,
    LimitExceeded,
    MissingProfileEntry,
    MixedUniformity,
    NonUniformEdge,
    NotAGraph,
    NotEulerian,
    TrivialOperand,
    ValidationError,
    VertexOutOfRange,
)
from .estrada import (
    EstradaEstimate,
    ExtremalReport,
    ScanEntry,
    decimal_str,
    estrada_index,
    estrada_index_m2_oracle,
    extremal_scan,
    spectral_radius_bound,
)
from .euler import (
    DirectedMultigraph,
    EulerCountReport,
    ExactRational,
    RootCountMatrix,
    arborescence_count,
    build_digraph,
    contribution,
    enumerate_rootings,
    euler_circuits_best,
    euler_circuits_exhaustive,
    tuple_multiplicity,
)
from .hypergraph import (
    AttachSpec,
    UniformHypergraph,
    are_isomorphic,
    attach,
    canonical_form,
    coalesce,
    dumps_json,
    enumerate_hypertrees,
    from_json_dict,
    hyperpath,
    hyperstar,
    is_connected,
    is_hypertree,
    load_json,
    loads_json,
    new_hypergraph,
    permute_vertices,
    power,
    save_json,
    to_json_dict,
)
from .traces import (
    LocalTraceQuery,
    TraceTable,
    query,
    trace,
    trace_local,
    trace_m2_oracle,
    trace_table,
)

__version__ = "0.1.0"

__all__ = [
    "AttachSpec",
    "AuditRow",
    "Budget",
    "DirectedMultigraph",
    "DuplicateEdge",
    "EmptyGraph",
    "EstradaEstimate",
    "EulerCountReport",
    "ExactRational",
    "ExtremalReport",
    "HypertraceError",
    "InequalityAuditReport",
    "InfeasibleQuery",
    "LimitExceeded",
    "LocalTraceProfile",
    "LocalTraceQuery",
    "MissingProfileEntry",
    "MixedUniformity",
    "NonUniformEdge",
    "NotAGraph",
    "NotEulerian",
    "RootCountMatrix",
    "ScanEntry",
    "TraceTable",
    "TrivialOperand",
    "UniformHypergraph",
    "ValidationError",
    "VertexOutOfRange",
    "arborescence_count",
    "are_isomorphic",
    "attach",
    "audit_cored_shift",
    "audit_edge_shift",
    "audit_path_shift",
    "build_digraph",
    "canonical_form",
    "coalesce",
    "coalescence_local_trace",
    "contribution",
    "decimal_str",
    "default_budget",
    "dumps_json",
    "enumerate_hypertrees",
    "enumerate_rootings",
    "estrada_index",
    "estrada_index_m2_oracle",
    "euler_circuits_best",
    "euler_circuits_exhaustive",
    "extremal_scan",
    "from_json_dict",
    "hyperpath",
    "hyperstar",
    "is_connected",
    "is_hypertree",
    "load_json",
    "loads_json",
    "local_trace_profile",
    "new_hypergraph",
    "permute_vertices",
    "power",
    "query",
    "relocation_difference",
    "save_json",
    "spectral_radius_bound",
    "to_json_dict",
    "trace",
    "trace_local",
    "trace_m2_oracle",
    "trace_table",
    "tuple_multiplicity",
]
