import math

import pytest

from manetq.errors import DomainError, InfeasibleTargetError, InvalidParameterError
from manetq.exact import MetricKind as M
from manetq.params import PhysicalParams
from manetq.solvers import (
    Direction,
    QualityTarget,
    asym_at,
    min_nodes,
    solve_eta_for_n,
    solve_reachability_x,
    solve_vulnerability_nu,
    vulnerability_peak,
)
from manetq.asymptotics import reachability_limit, vulnerability_limit

# (metric, threshold, r) -> published minimum node count at l = 1000
TABLE = [
    (M.CONNECTEDNESS, 0.9, 30, 261), (M.CONNECTEDNESS, 0.9, 10, 906),
    (M.COVERAGE, 0.9, 30, 39), (M.COVERAGE, 0.9, 10, 116),
    (M.SEGMENTATION, 0.1, 30, 77), (M.SEGMENTATION, 0.1, 10, 231),
    (M.VULNERABILITY, 0.1, 30, 102), (M.VULNERABILITY, 0.1, 10, 304),
    (M.REACHABILITY, 0.9, 30, 173), (M.REACHABILITY, 0.9, 10, 650),
    (M.CONNECTEDNESS, 0.99, 30, 349), (M.CONNECTEDNESS, 0.99, 10, 1167),
    (M.COVERAGE, 0.99, 30, 77), (M.COVERAGE, 0.99, 10, 231),
    (M.SEGMENTATION, 0.01, 30, 154), (M.SEGMENTATION, 0.01, 10, 461),
    (M.VULNERABILITY, 0.01, 30, 209), (M.VULNERABILITY, 0.01, 10, 627),
    (M.REACHABILITY, 0.99, 30, 226), (M.REACHABILITY, 0.99, 10, 804),
]


@pytest.mark.parametrize("kind, t, r, expected", TABLE)
def test_table_entries(kind, t, r, expected):
    target = QualityTarget(kind, t)
    res = min_nodes(target, PhysicalParams(r, 1000))
    assert res.n_min == expected
    rho = r / 1000
    assert target.met_by(asym_at(kind, res.n_min, rho))
    assert not target.met_by(asym_at(kind, res.n_min - 1, rho))
    assert target.met_by(res.achieved)


@pytest.mark.parametrize("kind, t", [(M.CONNECTEDNESS, 0.95), (M.COVERAGE, 0.95), (M.SEGMENTATION, 0.05),
                                     (M.VULNERABILITY, 0.05), (M.REACHABILITY, 0.95)])
def test_monotone_in_range(kind, t):
    ns = [min_nodes(QualityTarget(kind, t), PhysicalParams(r, 1000)).n_min for r in (5, 10, 20, 30, 50, 80)]
    assert all(a >= b for a, b in zip(ns, ns[1:]))


def test_directions():
    assert QualityTarget(M.SEGMENTATION, 0.1).direction is Direction.AT_MOST
    assert QualityTarget(M.COVERAGE, 0.1).direction is Direction.AT_LEAST
    with pytest.raises(InvalidParameterError):
        QualityTarget(M.SEGMENTATION, 0.1, Direction.AT_LEAST)
    with pytest.raises(InvalidParameterError):
        QualityTarget(M.COVERAGE, 1.0)
    with pytest.raises(DomainError):
        QualityTarget(M.COVEREDNESS, 0.5)


def test_eta_root_examples():
    n = solve_eta_for_n(2.2504, 0.03)
    assert 260 < n < 261
    assert abs(n * 0.03 - math.log(n) - 2.2504) <= 1e-9
    rho = 0.2
    n = solve_eta_for_n(rho, rho)
    assert n >= 1 / rho and abs(n * rho - math.log(n) - rho) <= 1e-9
    assert solve_eta_for_n(1 + math.log(0.05), 0.05) == pytest.approx(20)
    with pytest.raises(InfeasibleTargetError):
        solve_eta_for_n(1 + math.log(0.05) - 0.01, 0.05)


@pytest.mark.parametrize("rho", [0.001, 0.01, 0.3, 0.9])
@pytest.mark.parametrize("eta", [-1.0, 0.0, 3.0, 10.0])
def test_eta_root_branch(rho, eta):
    try:
        n = solve_eta_for_n(eta, rho)
    except InfeasibleTargetError:
        assert eta < 1 + math.log(rho)
        return
    assert n >= 1 / rho
    assert abs(n * rho - math.log(n) - eta) <= 1e-9


def test_vulnerability_roots():
    nu, peak = vulnerability_peak()
    assert nu == pytest.approx(1.59362, abs=1e-5)
    assert peak == pytest.approx(0.16190256, abs=1e-8)
    for t in (0.1, 0.01, 0.15):
        v = solve_vulnerability_nu(t)
        assert v >= nu and abs(vulnerability_limit(v) - t) <= 1e-9
    with pytest.raises(InfeasibleTargetError) as info:
        min_nodes(QualityTarget(M.VULNERABILITY, 0.9), PhysicalParams(30, 1000))
    assert info.value.max_value == pytest.approx(peak)


def test_reachability_roots():
    for t, x in ((0.9, 1.02326), (0.99, 3.82762)):
        root = solve_reachability_x(t)
        assert root == pytest.approx(x, abs=1e-5)
        assert abs(reachability_limit(math.log(root)) - t) <= 1e-9


def test_range_must_be_short():
    with pytest.raises(DomainError):
        min_nodes(QualityTarget(M.COVERAGE, 0.5), PhysicalParams(10, 10))
