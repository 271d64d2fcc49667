"""Exact rational evaluation of connectivity and quality parameters.

Everything here works on the circle (periodic boundary conditions) unless a
name says otherwise.  With ``rho = N/D`` each term ``(1 - j*rho)**(n-1)`` is
``(D - j*N)**(n-1) / D**(n-1)``, so the alternating sums are accumulated as
plain integers over the common denominator ``D**(n-1)`` and reduced once.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from math import comb

from .errors import DomainError, InvalidParameterError
from .params import SystemParams, parse_rational

__all__ = [
    "MetricKind",
    "parse_metric",
    "metric_name",
    "p_disc_pb",
    "p_conn_pb",
    "q_coverage_exact",
    "q_coveredness_exact",
    "q_segmentation_exact",
    "q_vulnerability_exact",
    "q_reachability_exact",
    "p_conn_db_n2",
    "q_coverage_ddim",
    "exact_metric",
    "REACHABILITY_MAX_N",
]

# reachability refuses larger n unless the caller raises the cap
REACHABILITY_MAX_N = 5000


class MetricKind(str, enum.Enum):
    CONNECTEDNESS = "connectedness"
    COVEREDNESS = "coveredness"
    COVERAGE = "coverage"
    SEGMENTATION = "segmentation"
    VULNERABILITY = "vulnerability"
    REACHABILITY = "reachability"
    DISCONNECTION = "disc"

    @property
    def intensive(self) -> bool:
        return self in (MetricKind.COVERAGE, MetricKind.SEGMENTATION, MetricKind.VULNERABILITY)


_ALIASES = {
    "conn": MetricKind.CONNECTEDNESS,
    "connected": MetricKind.CONNECTEDNESS,
    "covered": MetricKind.COVEREDNESS,
    "cov": MetricKind.COVERAGE,
    "seg": MetricKind.SEGMENTATION,
    "vuln": MetricKind.VULNERABILITY,
    "reach": MetricKind.REACHABILITY,
}


def parse_metric(text: str) -> tuple[MetricKind, int]:
    """Parse ``"conn"``, ``"coverage"``, ``"disc:2"`` ... into ``(kind, k)``."""
    name = text.strip().lower()
    if name.startswith(("disc:", "disconnection:")):
        _, _, k_text = name.partition(":")
        try:
            k = int(k_text)
        except ValueError:
            raise InvalidParameterError(f"bad disconnection count in {text!r}") from None
        if k < 0:
            raise InvalidParameterError("disconnection count must be >= 0")
        return MetricKind.DISCONNECTION, k
    if name in _ALIASES:
        return _ALIASES[name], 0
    try:
        kind = MetricKind(name)
    except ValueError:
        raise InvalidParameterError(f"unknown metric {text!r}") from None
    return kind, 0


def metric_name(kind: MetricKind, k: int = 0) -> str:
    if kind is MetricKind.DISCONNECTION:
        return f"disc:{k}"
    return kind.value


def _prob(value: Fraction) -> Fraction:
    if not 0 <= value <= 1:
        raise ArithmeticError(f"probability out of range: {value}")
    return value


def _params(params) -> SystemParams:
    if isinstance(params, SystemParams):
        return params
    n, rho = params
    return SystemParams(n, parse_rational(rho))


def _alternating_sum(n: int, num: int, den: int, k: int, shift: int = 0, weights=None) -> int:
    """Integer numerator of sum_j (-1)^(j-k) w_j (1 - (j+shift)*rho)^(n-1) over den^(n-1).

    ``j`` runs from ``k`` while ``(j+shift)*rho <= 1``; ``weights(j)`` returns
    the integer coefficient and may return 0 to signal the end of the support.
    """
    e = n - 1
    total = 0
    j = k
    while (j + shift) * num <= den:
        w = weights(j)
        if w == 0 and j > k:
            break
        if w:
            term = w * (den - (j + shift) * num) ** e
            total += -term if (j - k) & 1 else term
        j += 1
    return total


def p_disc_pb(params, k: int = 0) -> Fraction:
    """Probability that exactly ``k`` circular next-neighbour gaps are ``>= rho``."""
    p = _params(params)
    if k < 0:
        raise InvalidParameterError("k must be non-negative")
    n, num, den = p.n, p.rho.numerator, p.rho.denominator
    if k > n:
        return Fraction(0)
    s = _alternating_sum(n, num, den, k, weights=lambda j: comb(j, k) * comb(n, j))
    return _prob(Fraction(s, den ** (n - 1)))


def p_conn_pb(params) -> Fraction:
    """Probability that the network on the circle is connected."""
    return p_disc_pb(params, 0)


def q_coverage_exact(params) -> Fraction:
    """Expected covered fraction: ``1 - (1 - 2 rho)^n``, or 1 once ``rho >= 1/2``."""
    p = _params(params)
    if 2 * p.rho >= 1:
        return Fraction(1)
    return _prob(1 - (1 - 2 * p.rho) ** p.n)


def q_coveredness_exact(params) -> Fraction:
    """Probability that the whole circle is covered: connectedness at range ``2 rho``."""
    p = _params(params)
    return p_conn_pb(SystemParams(p.n, 2 * p.rho))


def q_segmentation_exact(params) -> Fraction:
    """Expected number of segments per node, ``(1 - rho)^(n-1)``."""
    p = _params(params)
    if p.n == 1:
        return Fraction(1)
    if p.rho >= 1:
        return Fraction(0)
    return _prob((1 - p.rho) ** (p.n - 1))


def _require_vr_domain(p: SystemParams, what: str):
    if p.n < 2 or 2 * p.rho >= 1:
        raise DomainError(f"{what} is only derived for n >= 2 and rho < 1/2 (got n={p.n}, rho={p.rho})")


def q_vulnerability_exact(params) -> Fraction:
    """Expected fraction of nodes whose removal splits their segment."""
    p = _params(params)
    _require_vr_domain(p, "vulnerability")
    n, rho = p.n, p.rho
    return _prob((n * rho - 1) * (1 - rho) ** (n - 2) + (1 - 2 * rho) ** (n - 1))


def q_reachability_exact(params, max_n: int | None = None) -> Fraction:
    """Expected fraction of nodes reachable (multi-hop) from a node.

    Connected, single-break and multi-segment configurations are summed
    separately.  In the segment term the products
    ``(1-2rho)^(n-1) (1 - j rho')^(n-1)`` collapse to ``(1-(j+2)rho)^(n-1)``
    and the sum over segment sizes ``b`` has the closed form
    ``sum_b b(b-1) C(b-1, j) = (j+1)(j+2) C(n, j+3) + j(j+1) C(n, j+2)``.
    """
    p = _params(params)
    _require_vr_domain(p, "reachability")
    cap = REACHABILITY_MAX_N if max_n is None else max_n
    if p.n > cap:
        raise DomainError(
            f"exact reachability capped at n <= {cap}; use the asymptotic formula for n={p.n}"
        )
    n, num, den = p.n, p.rho.numerator, p.rho.denominator
    conn = p_disc_pb(p, 0)
    disc1 = p_disc_pb(p, 1)

    def weight(j):
        return (j + 1) * (j + 2) * comb(n, j + 3) + j * (j + 1) * comb(n, j + 2)

    seg = Fraction(_alternating_sum(n, num, den, 0, shift=2, weights=weight), n * den ** (n - 1))
    return _prob(conn + Fraction(n - 1, n) * disc1 + seg)


def p_conn_db_n2(rho) -> Fraction:
    """Two nodes on the plain interval: probability they are within ``rho``."""
    q = parse_rational(rho)
    if not 0 < q <= 1:
        raise DomainError(f"p_conn_db_n2 needs 0 < rho <= 1, got {q}")
    return _prob(2 * q - q * q)


_UNIT_BALL = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


def q_coverage_ddim(n: int, rho: float, d: int) -> float:
    """Coverage of the periodic cube ``[0,1]^d`` by ``n`` balls of radius ``rho``."""
    if d not in _UNIT_BALL:
        raise InvalidParameterError(f"dimension must be 1, 2 or 3, got {d}")
    if n < 1:
        raise InvalidParameterError("n must be positive")
    vol = _UNIT_BALL[d] * float(rho) ** d
    if vol > 1:
        raise DomainError(f"ball volume {vol} exceeds the system volume")
    return 1.0 - (1.0 - vol) ** n


def exact_metric(kind: MetricKind, params, k: int = 0) -> Fraction:
    """Dispatch to the exact formula for ``kind``."""
    if kind is MetricKind.DISCONNECTION:
        return p_disc_pb(params, k)
    return {
        MetricKind.CONNECTEDNESS: p_conn_pb,
        MetricKind.COVEREDNESS: q_coveredness_exact,
        MetricKind.COVERAGE: q_coverage_exact,
        MetricKind.SEGMENTATION: q_segmentation_exact,
        MetricKind.VULNERABILITY: q_vulnerability_exact,
        MetricKind.REACHABILITY: q_reachability_exact,
    }[kind](params)
