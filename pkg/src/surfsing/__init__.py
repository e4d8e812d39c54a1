"""Invariants of normal surface singularities from their resolution graphs,
exact lattice optimisation, smoothing bounds and a monomial colength lemma."""
from .bounds import (
    BoundReport,
    BoundRow,
    SmoothingData,
    SmoothingInvariants,
    cone_singularity,
    evaluate_bounds,
    homogeneous_icis,
    smoothing_data_for,
    smoothing_invariants,
    strict_icis_asymptotics,
)
from .graphs import (
    GraphError,
    NotNegativeDefiniteError,
    ResolutionGraph,
    Vertex,
    chain,
    cone,
    dynkin,
    generate_family,
    parse_resolution_graph,
    random_graph,
    read_graph,
    serialize_resolution_graph,
    star,
)
from .lattice import Cycle, LatticeContext, build_context, chi, pairing, square
from .monomial import (
    MonomialIdeal,
    colength,
    make_ideal,
    product,
    radial_containment_check,
    random_m_primary,
    ray_entry,
    strictness_witness,
    verify_colength_lemma,
)
from .search import (
    BudgetExceededError,
    artin_cycle,
    conjecture_check,
    elkies_min_square,
    minimize_chi,
    solve_coset_cvp,
)

__version__ = "0.1.0"
