"""Minimum node counts for a quality target, from the large-n formulas.

Every target is turned into a regime value first (``eta`` for connectedness
and reachability, ``nu`` for the intensive metrics), then into a real node
count, and finally into the smallest integer ``n`` whose asymptotic metric
meets the target.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .asymptotics import connectedness_limit, intensive_limit, reachability_limit, vulnerability_limit
from .errors import DomainError, InfeasibleTargetError, InvalidParameterError
from .exact import MetricKind
from .params import PhysicalParams

__all__ = [
    "Direction",
    "QualityTarget",
    "SolveResult",
    "solve_eta_for_n",
    "vulnerability_peak",
    "solve_reachability_x",
    "solve_vulnerability_nu",
    "asym_at",
    "min_nodes",
]

_XTOL = 1e-13


class Direction(str, enum.Enum):
    AT_LEAST = "at_least"
    AT_MOST = "at_most"


_DIRECTIONS = {
    MetricKind.CONNECTEDNESS: Direction.AT_LEAST,
    MetricKind.COVERAGE: Direction.AT_LEAST,
    MetricKind.REACHABILITY: Direction.AT_LEAST,
    MetricKind.SEGMENTATION: Direction.AT_MOST,
    MetricKind.VULNERABILITY: Direction.AT_MOST,
}


@dataclass(frozen=True)
class QualityTarget:
    kind: MetricKind
    threshold: float
    direction: Direction | None = None

    def __post_init__(self):
        if self.kind not in _DIRECTIONS:
            raise DomainError(f"no inversion for {self.kind.value}")
        if not 0 < self.threshold < 1:
            raise InvalidParameterError(f"threshold must lie in (0, 1), got {self.threshold}")
        expected = _DIRECTIONS[self.kind]
        if self.direction is None:
            object.__setattr__(self, "direction", expected)
        elif Direction(self.direction) is not expected:
            raise InvalidParameterError(f"{self.kind.value} targets are {expected.value}")

    def met_by(self, value: float) -> bool:
        if self.direction is Direction.AT_LEAST:
            return value >= self.threshold
        return value <= self.threshold


@dataclass(frozen=True)
class SolveResult:
    n_min: int
    auxiliary: float
    achieved: float


def solve_eta_for_n(eta: float, rho: float) -> float:
    """Larger real root of ``n*rho - ln n = eta`` (the branch ``n >= 1/rho``)."""
    rho = float(rho)
    if rho <= 0:
        raise InvalidParameterError("rho must be positive")
    n0 = 1.0 / rho
    g_min = 1.0 + math.log(rho)
    if eta < g_min:
        raise InfeasibleTargetError(
            f"eta={eta} is below the minimum {g_min} of n*rho - ln n", max_value=g_min
        )
    if eta == g_min:
        return n0
    hi = 2.0 * n0
    while hi * rho - math.log(hi) < eta:
        hi *= 2.0
    return brentq(lambda n: n * rho - math.log(n) - eta, n0, hi, xtol=1e-12, rtol=1e-15)


def vulnerability_peak() -> tuple[float, float]:
    """``(nu, value)`` at the maximum of the vulnerability limit."""
    # derivative sign change: e^{-nu}(2 - nu) - 2 e^{-2nu}
    nu = brentq(lambda v: math.exp(-v) * (2 - v) - 2 * math.exp(-2 * v), 0.5, 2.0, xtol=_XTOL)
    return nu, vulnerability_limit(nu)


def solve_vulnerability_nu(threshold: float) -> float:
    """Greater root of ``(nu-1)e^{-nu} + e^{-2nu} = threshold``."""
    nu_peak, peak = vulnerability_peak()
    if threshold > peak:
        raise InfeasibleTargetError(
            f"vulnerability never reaches {threshold}; its maximum is {peak:.6g}", max_value=peak
        )
    if threshold == peak:
        return nu_peak
    return brentq(lambda v: vulnerability_limit(v) - threshold, nu_peak, nu_peak + 50.0, xtol=_XTOL)


def solve_reachability_x(threshold: float) -> float:
    """Root ``x = e^eta`` of ``2x - (1+2x) e^{-1/x} = threshold``."""
    f = lambda x: 2 * x - (1 + 2 * x) * math.exp(-1 / x) - threshold  # noqa: E731
    lo, hi = 1e-6, 1.0
    while f(lo) > 0:
        lo /= 10
        if lo < 1e-300:
            raise InfeasibleTargetError(f"reachability target {threshold} too small", max_value=0.0)
    while f(hi) < 0:
        hi *= 2
        if hi > 1e12:
            raise InfeasibleTargetError(f"reachability target {threshold} too close to 1", max_value=1.0)
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15)


def asym_at(kind: MetricKind, n: int, rho: float) -> float:
    """Asymptotic metric value at integer node count ``n``."""
    if kind is MetricKind.CONNECTEDNESS:
        return connectedness_limit(n * rho - math.log(n))
    if kind is MetricKind.REACHABILITY:
        return reachability_limit(n * rho - math.log(n))
    return intensive_limit(kind, n * rho)


def _smallest_n(target: QualityTarget, rho: float, n_real: float, floor_n: int = 1) -> int:
    n = max(floor_n, math.ceil(n_real))
    while n > floor_n and target.met_by(asym_at(target.kind, n - 1, rho)):
        n -= 1
    while not target.met_by(asym_at(target.kind, n, rho)):
        n += 1
    return n


def min_nodes(target: QualityTarget, phys: PhysicalParams) -> SolveResult:
    """Smallest ``n`` meeting ``target`` at range ``phys.r`` over length ``phys.l``."""
    if phys.r >= phys.l:
        raise DomainError("minimum node counts need r < l")
    rho = float(phys.rho)
    t = target.threshold
    kind = target.kind
    floor_n = 1
    if kind in (MetricKind.CONNECTEDNESS, MetricKind.REACHABILITY):
        if kind is MetricKind.CONNECTEDNESS:
            eta = -math.log(-math.log(t))
            aux = eta
        else:
            aux = solve_reachability_x(t)
            eta = math.log(aux)
        n_real = solve_eta_for_n(eta, rho)
        # stay on the increasing branch of n*rho - ln n
        floor_n = max(1, math.ceil(1.0 / rho))
    elif kind is MetricKind.COVERAGE:
        aux = -math.log(1 - t) / 2
        n_real = aux / rho
    elif kind is MetricKind.SEGMENTATION:
        aux = -math.log(t)
        n_real = aux / rho
    else:
        aux = solve_vulnerability_nu(t)
        n_real = aux / rho
        # the smaller root region also satisfies "at most"; keep to the greater root
        floor_n = max(1, math.ceil(vulnerability_peak()[0] / rho))
    n = _smallest_n(target, rho, n_real, floor_n)
    return SolveResult(n, aux, asym_at(kind, n, rho))
