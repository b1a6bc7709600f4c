"""Spectra, random walks and resistances of q-subdivision graphs.

The q-subdivision S_q(G) replaces every edge ``st`` of G by ``q`` parallel
paths ``s - x - t``. This package builds those graphs and their iterates,
computes walk and resistance metrics directly from the normalized adjacency
spectrum, predicts the same metrics from the base graph through transfer
formulas, and checks both against independent oracles.
"""
from .corpus import CorpusEntry, default_corpus
from .errors import *  # noqa: F401,F403
from .graph import (
    DEFAULT_MAX_NODES,
    Bipartition,
    Graph,
    Parent,
    SubdivisionMap,
    bipartition,
    build_graph,
    incidence_matrix,
    iterate_subdivide,
    iterate_subdivide_with_map,
    predicted_size,
    q_subdivide,
)
from .io import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .lattice import (
    LatticeSpec,
    LatticeValues,
    build_lattice,
    iterate_by_transfer,
    iterated_add_dk,
    iterated_counts,
    iterated_kemeny,
    iterated_kirchhoff,
    iterated_mult_dk,
    iterated_values,
    lattice_closed_forms,
)
from .oracles import (
    WalkEnsembleResult,
    gaussian_solve,
    hitting_matrix_oracle,
    hitting_oracle,
    mc_hitting,
    resistance_pinv_oracle,
)
from .resistance import (
    KirchhoffIndices,
    ResistanceMetrics,
    additive_dk_transfer,
    foster_sum,
    indices_from_resistance,
    kirchhoff_transfer,
    multiplicative_dk_transfer,
    resistance_matrix_spectral,
    resistance_matrix_transfer,
    resistance_metrics,
    resistance_spectral,
    resistance_transfer,
    vprime_v_sum,
    vprime_vprime_sum,
)
from .spectral import (
    KernelBasis,
    Spectrum,
    direct_subdivision_spectrum,
    eigendecompose,
    graph_spectrum,
    jacobi_eigh,
    kernel_basis,
    normalized_adjacency,
    spectrum_residuals,
    transfer_spectrum,
    zero_multiplicity,
)
from .verify import VerificationReport, run_suite, suite_passed
from .walks import (
    WalkMetrics,
    hitting_matrix_spectral,
    hitting_matrix_transfer,
    hitting_time_spectral,
    hitting_time_transfer,
    kemeny_spectral,
    kemeny_transfer,
    stationary_distribution,
    walk_metrics,
)

__version__ = "0.1.0"
