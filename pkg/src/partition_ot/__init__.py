"""Optimal transport between integer partitions.

Partitions and their Young diagrams become discrete measures; exact Monge and
Kantorovich solvers measure how far apart two partitions are, and the Euler
odd/distinct identity is recast as a transport statement.
"""
__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    FormatError,
    NoTransportMapError,
    NotMetricLikeError,
    SearchLimitError,
    UnsupportedDimensionError,
)
from .partitions import (  # noqa: E402
    GeneralizedPartition,
    MPartition,
    Partition,
    classify,
    conjugate,
    count_by_generating_function,
    enumerate_m_partitions,
    enumerate_partitions,
    parse_mpartition_json,
    parse_partition,
    render_ferrer,
)
from .measures import DiscreteMeasure, delta_center  # noqa: E402
from .transport import CostFunction, partition_distance, solve_kantorovich, solve_monge  # noqa: E402

__all__ = [
    "__version__", "DomainError", "FormatError", "NoTransportMapError", "NotMetricLikeError", "SearchLimitError",
    "UnsupportedDimensionError", "GeneralizedPartition", "MPartition", "Partition", "classify", "conjugate",
    "count_by_generating_function", "enumerate_m_partitions", "enumerate_partitions", "parse_mpartition_json",
    "parse_partition", "render_ferrer", "DiscreteMeasure", "delta_center", "CostFunction", "partition_distance",
    "solve_kantorovich", "solve_monge",
]
