"""minorforge: clique-minor construction in expanding graphs.

Builds large clique minors by growing branch sets over a shrinking
reservoir inside an extracted sublinear expander, and emits certificates
that an independent checker can verify. Also ships expansion checkers,
graph generators, and a benchmark harness. The hot search kernels have a
compiled (Cython) lane and a pure-Python lane selected at import; set
MINORFORGE_KERNELS=pure to force the fallback.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .builder import (
    BuilderConfig,
    BuilderState,
    MinorCertificate,
    baseline_random_contraction,
    build_minor,
    carve_nonexpanding,
    derive_parameters,
    grow_branch_set,
    hitting_connector,
)
from .certify import (
    CertReport,
    graph_hash,
    hadwiger_brute,
    read_certificate,
    theoretical_bounds,
    verify_certificate,
    verify_certificate_edgewise,
    write_certificate,
)
from .connect import ConnectionPlan, Path, connect_pairs, shortest_path_between_sets
from .edgelist import (
    format_edgelist,
    load_edgelist,
    parse_edgelist,
    read_edgelist,
    save_edgelist,
    write_edgelist,
)
from .errors import (
    CapabilityError,
    GrowthFailure,
    HittingFailure,
    InputError,
    InvariantViolation,
    MinorForgeError,
    NoPathError,
    ParameterError,
)
from .expansion import (
    RhoParams,
    SearchBudget,
    Verdict,
    check_locally_sparse,
    check_robust_expander,
    check_t_alpha_expanding,
    check_vertex_expansion,
    rho,
    vertex_expansion_constant,
)
from .extraction import ExtractionReport, calibrate_eps1, extract_expander, peel_min_degree
from .generators import (
    gen_complete,
    gen_gnp,
    gen_grid,
    gen_hypercube,
    gen_random_regular,
    generate,
)
from .graph import (
    Graph,
    VertexSet,
    average_degree,
    contract_partition,
    delete_edges,
    delete_vertices,
    induced_subgraph,
    min_degree,
    neighborhood,
)

__version__ = "0.1.0"
