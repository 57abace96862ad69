"""Random simply generated trees and their canonical green/orange/red colouring.

The package samples plane trees with n vertices whose law is proportional
to a product of per-vertex outdegree weights (covering size-conditioned
branching trees in all three weight regimes), colours every vertex by its
membership across all minimum vertex covers, derives the independence
number, matching number and adjacency nullity, and verifies the limiting
colour fractions by Monte Carlo against exact fixed-point solvers.
"""

from .colouring import Colour, Tricolouring, colour_subtrees, derived_stats, tricolour
from .errors import (
    BadSum,
    BracketFailure,
    Infeasible,
    NotAnExcursion,
    NumericalFailure,
    NumericalUnderflow,
    OutOfRadius,
    ParityViolation,
    RejectionBudgetExceeded,
    TooLarge,
    TricotreeError,
)
from .experiment import ExperimentConfig, ExperimentRecord, run_experiment
from .limits import LimitConstants, colour_limits, limit_constants, solve_q, stat_limits
from .oracle import (
    CoverReport,
    Membership,
    enumerate_min_covers,
    enumerate_plane_trees,
    max_matching,
    nullity_exact,
)
from .sampler import (
    SamplerConfig,
    cycle_shift_to_excursion,
    mix64,
    replicate_seed,
    sample_conditioned,
    sample_degree_sequence_dp,
)
from .tree import (
    LukasiewiczWalk,
    PlaneTree,
    format_outdeg_line,
    is_excursion,
    neighbors,
    outdegrees_from_tree,
    parse_outdeg_lines,
    tree_from_outdegrees,
    tree_from_walk,
    walk_from_tree,
)
from .weights import (
    Explicit,
    Factorial,
    FullBinary,
    Geometric,
    OffspringLaw,
    PowerLaw,
    Poisson,
    RegimeInfo,
    WeightFamily,
    classify,
    family_label,
    feasible,
    parse_family,
    span,
    tilt,
)

__version__ = "0.1.0"
