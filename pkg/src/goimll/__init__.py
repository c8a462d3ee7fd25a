"""Geometry of interaction for multiplicative linear logic on weighted graphs.

Weighted multigraphs interact by plugging; alternating circuits are
measured by -log(1 - w), reduction composes graphs like cut elimination,
and an exact linear-algebra route (log-determinants, the feedback
equation) cross-validates every graph-level quantity.  On top of the
graphs sit projects (wager + graph), their orthogonality, a monoidal
category of carriers, a truth predicate, and an interpreter for localized
MLL+MIX sequent proofs.
"""

from .errors import (
    CarrierError,
    ConvergenceError,
    CutUndefinedError,
    DelocationError,
    FormatError,
    GoimllError,
    LocativityError,
    NonTotalError,
    ProofError,
)
from .graphs import (
    Circuit,
    ColoredGraph,
    Edge,
    Path,
    SimpleGraph,
    WeightedGraph,
    alternating_paths,
    as_multigraph,
    graph_equal,
    graph_power,
    graph_trace,
    is_symmetric,
    is_total,
    one_circuits,
    plug,
    reduce_truncated,
    simple_equal,
    simplify,
    union,
)
from .matrix import (
    LocalizedMatrix,
    adjacency_matrix,
    check_matrix_adjunction,
    feedback_solve,
    is_operator_graph,
    log_det_one_minus,
    reduce_exact,
    spectral_radius,
    trace_series_partial,
)
from .measure import (
    Measurement,
    check_adjunction,
    check_simplify_invariance,
    measure_exact,
    measure_truncated,
)
from .projects import (
    Delocation,
    Project,
    cut,
    cut_exact,
    delocate,
    fax,
    interaction,
    orthogonal,
    project_equal,
    tensor,
)
from .truth import (
    SuccessVerdict,
    TensorSplit,
    is_successful,
    is_transposition_union,
    split_successful_tensor,
)
from .category import (
    Morphism,
    check_coherence_samples,
    compose,
    fax_morphism,
    identity_morphism,
    standard_bijections,
    tensor_morphisms,
)
from .logic import (
    Basis,
    Sequent,
    VarName,
    check_proof,
    delta,
    delta_inv,
    eliminate_cuts,
    formula_location,
    interpret,
    localize,
    parse_proof,
    serialize_proof,
    switching_tests,
)

__version__ = "0.1.0"
