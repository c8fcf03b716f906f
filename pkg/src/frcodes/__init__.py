"""Construction, validation, equivalence and repair simulation for fractional repetition codes."""

from .constructions import (
    RegularGraph,
    adjacency_as_incidence,
    adjacency_fill_symmetric,
    adjacency_fill_transpose,
    build_regular_graph_split,
    circulant_graph,
    fill_incidence,
    graph_to_fr,
)
from .core import (
    DSSParams,
    FRCode,
    FRParams,
    IncidenceMatrix,
    ValidationReport,
    code_to_matrix,
    intersection_profile,
    matrix_to_code,
    params_consistent,
    transpose_dual,
    validate,
)
from .dss import mds_check, repair_plan, simulate_failure, supported_file_size
from .enumeration import FilterPolicy, admissible_params, count_table, dedupe_catalog, generate_catalog
from .equivalence import (
    are_equivalent,
    brute_force_equivalent,
    canonical_digest,
    canonical_form,
    invariant_fingerprint,
)

__version__ = "0.1.0"
