"""Grundy, partial Grundy and b-chromatic numbers, graph families and products,
chordal coloring, and a self-stabilizing channel assignment simulator."""

from .coloring import (
    BoundsReport,
    Coloring,
    ColoringKind,
    LimitExceeded,
    MalformedColoringError,
    WitnessReport,
    binomial_tree,
    first_fit,
    mex,
    parameter_bounds,
    verify,
)
from .exact import exact_parameter, exhaustive_assignment_oracle, grundy_permutation_oracle
from .graph import (
    FamilySpec,
    Graph,
    GraphError,
    bfs_distances,
    build_family,
    cartesian_product,
    conormal_sum,
    family,
    parse_graph,
    power_graph,
    random_graph,
    serialize_graph,
)

__version__ = "0.1.0"
