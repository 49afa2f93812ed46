"""Rigidity and global rigidity of bar-joint frameworks with coordinate dilation constraints."""

from .core import (
    ConstructionStep,
    DilationProblem,
    Framework,
    FrameworkFormatError,
    Graph,
    Verdict,
    parse_framework,
    parse_graph,
    project,
    sample_generic,
    serialize,
)
from .exactla import RationalMatrix, left_nullspace, nullspace, rank
from .matrices import (
    check_dk_equivalent,
    dilation_jacobian,
    dr_matrix,
    is_congruent,
    is_generically_dk_rigid,
    is_infinitesimally_dk_rigid,
    rigidity_matrix,
)
from .combinat import (
    exists_edge_two_connected,
    hendrickson_checks,
    is_dk_rigid_combinatorial,
    is_k_connected,
    is_sparse_tight,
    matroid_rank,
    spanning_rigid_subgraph_exists,
    union_independent,
)
from .stress import (
    Certificate,
    Stress,
    global_sufficiency,
    lambda_from_sigma,
    perturb_nowhere_zero,
    stress_matrix,
    stress_space,
)
from .construct import (
    build_global_family,
    glue_check,
    one_extension,
    one_extension_stress_lift,
    zero_extension,
)

__version__ = "0.1.0"
