"""Pairwise comparison geometry of finite qubit state families.

Compare a family of qubit states on three levels (overlap amplitudes,
transition probabilities, unit phases), compute its three-point loop
invariants (Bargmann invariants, triangular defects, geometric phases,
Bloch solid angles), and decide when prescribed comparison data is
realizable by actual states.
"""

from .comparisons import (
    DEFAULT_ZERO_TOL,
    GramMatrix,
    PhaseMatrix,
    ProbabilityMatrix,
    SupportGraph,
    check_matching,
    gram,
    orthogonality_graph,
    phases,
    probabilities,
)
from .files import (
    FileFormatError,
    dump_doc,
    family_doc,
    family_from_json,
    family_to_json,
    load_text,
    matrix_doc,
    matrix_from_json,
    matrix_to_json,
    save_text,
)
from .invariants import (
    TriangleReport,
    all_triangles,
    bargmann,
    bargmann_bloch,
    defect,
    solid_angle,
    triangle_report,
)
from .oracles import (
    OracleReport,
    oracle_bargmann_direct,
    oracle_pauli_traces,
    oracle_trace_product,
)
from .realizability import (
    GramVerdict,
    RealizabilityResult,
    SearchConfig,
    check_gram,
    factor_states,
    is_coherent,
    realize_coherent,
    realize_phases,
)
from .states import (
    BlochVector,
    QubitState,
    StateFamily,
    from_bloch,
    inner,
    projector,
    random_family,
    random_state,
    rays_equal,
    to_bloch,
)

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "DEFAULT_ZERO_TOL",
    "FileFormatError",
    "GramMatrix",
    "GramVerdict",
    "OracleReport",
    "PhaseMatrix",
    "ProbabilityMatrix",
    "QubitState",
    "RealizabilityResult",
    "SearchConfig",
    "StateFamily",
    "SupportGraph",
    "TriangleReport",
    "all_triangles",
    "bargmann",
    "bargmann_bloch",
    "check_gram",
    "check_matching",
    "defect",
    "dump_doc",
    "factor_states",
    "family_doc",
    "family_from_json",
    "family_to_json",
    "from_bloch",
    "gram",
    "inner",
    "is_coherent",
    "load_text",
    "matrix_doc",
    "matrix_from_json",
    "matrix_to_json",
    "oracle_bargmann_direct",
    "oracle_pauli_traces",
    "oracle_trace_product",
    "orthogonality_graph",
    "phases",
    "probabilities",
    "projector",
    "random_family",
    "random_state",
    "rays_equal",
    "realize_coherent",
    "realize_phases",
    "save_text",
    "solid_angle",
    "to_bloch",
    "triangle_report",
]
