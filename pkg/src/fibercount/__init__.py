"""Estimate how many labeled simple graphs share a value of a network
property (edge count, degree sequence or distribution, covariate mixing,
degree mixing) by multiplying fiber-size ratios along an edge path."""

from .errors import EstimationError, FiberError, InputError, NotGraphicalError, OracleSizeError
from .fibers import (
    FiberEstimate,
    closed_form_edges,
    closed_form_mixing,
    count_degdist_fiber,
    count_degmix_fiber,
    count_degseq_fiber,
    count_edges_fiber,
    count_mixing_fiber,
    estimate_distinct_dmm,
    liebenau_regular_reference,
)
from .graph import (
    CovariateAssignment,
    DegreeDistribution,
    Graph,
    degree_distribution,
    degree_mixing_matrix,
    degree_sequence,
    mixing_matrix,
    phi_edges,
)
from .logspace import LogCount, log_binomial, log_factorial, log_mul

__version__ = "0.1.0"
