"""Large-n limits of the quality parameters.

Two regimes are used.  Connectedness, reachability and the k-disconnection
probabilities have a limit when ``n*rho - ln n -> eta``; coverage,
segmentation and vulnerability are intensive and converge when
``n*rho -> nu``.  All evaluation is plain double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError, RegimeError
from .exact import MetricKind, _params

__all__ = [
    "Eta",
    "Nu",
    "asym_p_disc",
    "asym_metric",
    "intensive_limit",
    "eta_from_params",
    "nu_from_params",
    "connectedness_limit",
    "reachability_limit",
    "vulnerability_limit",
]

# exp(x) overflows a double just above this
_EXP_MAX = 709.0


@dataclass(frozen=True)
class Eta:
    """Regime ``n*rho - ln n -> eta``."""

    eta: float


@dataclass(frozen=True)
class Nu:
    """Intensive regime ``n*rho -> nu`` with ``nu > 0``."""

    nu: float

    def __post_init__(self):
        if not self.nu > 0:
            raise InvalidParameterError(f"nu must be positive, got {self.nu}")


def _exp_neg(eta):
    # e^{-eta}, saturating to inf instead of raising
    return math.inf if -eta > _EXP_MAX else math.exp(-eta)


def asym_p_disc(k: int, eta: float) -> float:
    """Poisson limit ``e^{-eta k}/k! * exp(-e^{-eta})`` of the k-disconnection probability."""
    if k < 0:
        raise InvalidParameterError("k must be non-negative")
    lam = _exp_neg(eta)
    if math.isinf(lam):
        return 0.0
    if lam == 0.0:
        return 1.0 if k == 0 else 0.0
    if k <= 170 and lam < 1e100:
        return lam**k / math.factorial(k) * math.exp(-lam)
    # log-space keeps lam**k and k! from overflowing
    return math.exp(k * math.log(lam) - math.lgamma(k + 1) - lam)


def connectedness_limit(eta: float) -> float:
    return asym_p_disc(0, eta)


def reachability_limit(eta: float) -> float:
    """``2x - (1 + 2x) exp(-1/x)`` with ``x = e^eta``."""
    if eta > _EXP_MAX:
        return 1.0
    x = math.exp(eta)
    if x == 0.0:
        return 0.0
    u = 1 / x
    # 2x(1 - e^{-u}) - e^{-u}, with expm1 to avoid cancellation for large x
    return -2 * math.expm1(-u) / u - math.exp(-u)


def vulnerability_limit(nu: float) -> float:
    return (nu - 1) * math.exp(-nu) + math.exp(-2 * nu)


def intensive_limit(kind: MetricKind, nu: float) -> float:
    """Limit function of an intensive metric at ``nu >= 0``."""
    if nu < 0:
        raise InvalidParameterError(f"nu must be non-negative, got {nu}")
    if kind is MetricKind.COVERAGE:
        return 1 - math.exp(-2 * nu)
    if kind is MetricKind.SEGMENTATION:
        return math.exp(-nu)
    if kind is MetricKind.VULNERABILITY:
        return vulnerability_limit(nu)
    raise RegimeError(f"{kind.value} is not intensive; it needs the eta regime")


def asym_metric(kind: MetricKind, regime, k: int = 0) -> float:
    """Evaluate the limit formula of ``kind`` in ``regime`` (an :class:`Eta` or :class:`Nu`)."""
    if kind is MetricKind.COVEREDNESS:
        raise RegimeError(
            "coveredness has no limit in terms of eta alone; evaluate connectedness "
            "at eta_from_params with the range doubled"
        )
    if kind.intensive:
        if not isinstance(regime, Nu):
            raise RegimeError(f"{kind.value} is intensive and needs a Nu regime")
        return intensive_limit(kind, regime.nu)
    if not isinstance(regime, Eta):
        raise RegimeError(f"{kind.value} is not intensive and needs an Eta regime")
    if kind is MetricKind.REACHABILITY:
        return reachability_limit(regime.eta)
    if kind is MetricKind.CONNECTEDNESS:
        k = 0
    return asym_p_disc(k, regime.eta)


def eta_from_params(params) -> float:
    """``n*rho - ln n`` in floating point."""
    p = _params(params)
    return float(p.n * p.rho) - math.log(p.n)


def nu_from_params(params) -> float:
    """``n*rho`` in floating point."""
    p = _params(params)
    return float(p.n * p.rho)
