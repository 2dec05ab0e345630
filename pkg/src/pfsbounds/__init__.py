"""Makespan bounds for the permutation flowshop problem."""

from .bounds import (
    BoundResult,
    RangeBounds,
    compute_bound,
    compute_bounds,
    count_makespans_heller,
    count_makespans_new,
    estimate_comparison,
    lb_job,
    lb_job_plus,
    lb_machine,
    lb_machine_plus,
    lb_machine_plus_plus,
    range_bounds,
    ub_heller,
)
from .errors import GuardError, InstanceError, ParseError, PFSError
from .exact import ExactResult, min_path_sum_over_perms, solve_exact
from .instance import GenSpec, Instance, generate, parse_instance, read_instance, serialize, validate
from .makespan import completion_matrix, critical_path, makespan, path_sum
from .prefix_suffix import enumerate_family, lb_best, lb_prefix_suffix, path_family_size

__version__ = "0.1.0"
