"""Connectivity and quality parameters of 1-D ad hoc networks.

Exact rational formulas on the circle, their large-n limits, bounds for the
plain interval, a varying-node-number model, a seeded Monte Carlo oracle and
solvers for minimum node counts.
"""
from .errors import DomainError, InfeasibleTargetError, InvalidParameterError, RegimeError
from .params import PhysicalParams, SystemParams, gauss_bracket_inv, normalize, parse_rational
from .exact import (
    MetricKind,
    exact_metric,
    p_conn_db_n2,
    p_conn_pb,
    p_disc_pb,
    parse_metric,
    q_coverage_ddim,
    q_coverage_exact,
    q_coveredness_exact,
    q_reachability_exact,
    q_segmentation_exact,
    q_vulnerability_exact,
)
from .asymptotics import Eta, Nu, asym_metric, asym_p_disc, eta_from_params, nu_from_params
from .bounds import ProbBounds, bounds_width, p_disc_db_bounds
from .varying import asym_metric_vn, exact_metric_vn, mix_binomial, q_segmentation_vn
from .montecarlo import Boundary, Estimate, TrialConfig, eval_trial, make_config, run
from .solvers import QualityTarget, SolveResult, min_nodes, solve_eta_for_n

__version__ = "0.1.0"
