"""Transitive reduction and causal-set dimension estimates for citation DAGs."""

from ._citenet import (
    CitationGraph,
    DataError,
    Error,
    EstimateError,
    ResourceError,
    UnknownNodeError,
    UsageError,
    ancestors,
    box_counting_dimension,
    box_space_dimension,
    build_graph,
    citation_count,
    degree_distribution,
    descendants,
    estimate_field_dimension,
    find_midpoint,
    interval,
    load_graph,
    mm_dimension,
    mm_dimension_from_fraction,
    mm_ordering_fraction,
    post_tr_ranking,
    sprinkle,
    tr_report,
    transitive_closure,
    transitive_reduction,
)

__version__ = "0.1.0"
