"""Networks whose nodes are each switched on independently with probability ``p``.

An expectation over the thinned network is the binomial mixture of the
fixed-``n'`` expectations over the number ``n'`` of active nodes.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .asymptotics import intensive_limit
from .errors import DomainError, InvalidParameterError
from .exact import MetricKind, _params, exact_metric
from .params import SystemParams, parse_rational

__all__ = [
    "on_probability",
    "mix_binomial",
    "q_segmentation_vn",
    "asym_metric_vn",
    "metric_sequence",
    "exact_metric_vn",
]


def on_probability(p) -> Fraction:
    q = parse_rational(p)
    if not 0 <= q <= 1:
        raise InvalidParameterError(f"on-probability must lie in [0, 1], got {q}")
    return q


def mix_binomial(values, p) -> Fraction:
    """``sum_{n'} C(n,n') p^n' (1-p)^(n-n') values[n']`` with ``n = len(values) - 1``."""
    values = [parse_rational(v) for v in values]
    if not values:
        raise InvalidParameterError("need at least one value (the n'=0 entry)")
    q = on_probability(p)
    n = len(values) - 1
    off = 1 - q
    return sum(
        (comb(n, k) * q**k * off ** (n - k) * v for k, v in enumerate(values)),
        Fraction(0),
    )


def q_segmentation_vn(params, p) -> Fraction:
    """Closed form ``(1 - p rho)^n / (1 - rho)``.

    The closed form continues ``(1-rho)^(n'-1)`` down to ``n' = 0``, where it
    is ``1/(1-rho)``; the result can exceed 1 for small ``p``.
    """
    s = _params(params)
    q = on_probability(p)
    if s.rho >= 1:
        raise DomainError("varying-node segmentation needs rho < 1")
    return (1 - q * s.rho) ** s.n / (1 - s.rho)


def asym_metric_vn(kind: MetricKind, nu: float, p: float) -> float:
    """Limit of an intensive metric with on-probability ``p``: the fixed-n limit at ``p*nu``."""
    if not 0 <= p <= 1:
        raise InvalidParameterError(f"on-probability must lie in [0, 1], got {p}")
    return intensive_limit(kind, p * nu)


def _small(kind: MetricKind, n: int, rho: Fraction, k: int):
    """Simulation convention for ``n' <= 1``."""
    if n == 0:
        return Fraction(0)
    if kind is MetricKind.SEGMENTATION:
        return Fraction(1)
    if kind is MetricKind.COVERAGE:
        return min(Fraction(1), 2 * rho)
    if kind is MetricKind.DISCONNECTION:
        return Fraction(int(k == 1))
    return Fraction(0)


def metric_sequence(kind: MetricKind, n: int, rho, convention: str = "simulation", k: int = 0):
    """Per-``n'`` exact expectations for ``n' = 0..n``.

    ``"simulation"`` uses the Monte Carlo conventions for ``n' <= 1``: with no
    active node every metric is 0; a lone node counts as one segment that is
    not connected, covers ``min(2 rho, 1)`` and has reachability and
    vulnerability 0.  ``"formula"`` continues the closed formulas instead and
    is only offered for segmentation and coverage.
    """
    rho = parse_rational(rho)
    if convention == "simulation":
        out = []
        for m in range(n + 1):
            if m <= 1:
                out.append(_small(kind, m, rho, k))
            else:
                out.append(exact_metric(kind, SystemParams(m, rho), k))
        return out
    if convention == "formula":
        if kind is MetricKind.SEGMENTATION:
            if rho >= 1:
                raise DomainError("formula convention needs rho < 1")
            return [(1 - rho) ** (m - 1) for m in range(n + 1)]
        if kind is MetricKind.COVERAGE:
            if 2 * rho >= 1:
                return [Fraction(0)] + [Fraction(1)] * n
            return [1 - (1 - 2 * rho) ** m for m in range(n + 1)]
        raise DomainError(f"no formula convention for {kind.value}")
    raise InvalidParameterError(f"unknown convention {convention!r}")


def exact_metric_vn(kind: MetricKind, params, p, convention: str = "simulation", k: int = 0) -> Fraction:
    """Binomial mixture of :func:`metric_sequence` for the thinned network."""
    s = _params(params)
    return mix_binomial(metric_sequence(kind, s.n, s.rho, convention, k), p)
