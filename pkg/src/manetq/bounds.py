"""Bounds for the plain-interval (disconnected boundary) model.

On the interval the wrap-around link is missing.  Let ``S`` be the event
that the boundary gap is ``>= rho``; ``P(S) = (1-rho)^n + n rho (1-rho)^(n-1)``.
A configuration with ``k`` interior breaks is a periodic ``k``-break one
outside ``S`` or a periodic ``k+1``-break one inside ``S``, so

    P_pb(k) - P(S) <= P_db(k) <= P_pb(k) + P(S).

For ``k = 0`` no periodic-connected configuration lies in ``S`` and the lower
bound tightens to ``P_pb(0)``.  For ``k >= 1`` the periodic value itself is
not a lower bound: two nodes at ``rho = 1/20`` have ``P_pb(2) = 9/10`` while
``P_db(2) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameterError
from .exact import _params, p_disc_pb

__all__ = ["ProbBounds", "p_disc_db_bounds", "bounds_width"]


@dataclass(frozen=True)
class ProbBounds:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper <= 1:
            raise InvalidParameterError(f"malformed bounds [{self.lower}, {self.upper}]")

    def __contains__(self, value) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


def bounds_width(params) -> Fraction:
    """``P(S) = (1-rho)^n + n rho (1-rho)^(n-1)``, zero once ``rho > 1``.

    This is the unclamped width of the ``k = 0`` bounds; for ``k >= 1`` the
    interval extends ``P(S)`` on both sides of ``P_pb(k)``.
    """
    p = _params(params)
    if p.rho > 1:
        return Fraction(0)
    q = 1 - p.rho
    return q**p.n + p.n * p.rho * q ** (p.n - 1)


def p_disc_db_bounds(params, k: int = 0) -> ProbBounds:
    """Bounds on the probability of exactly ``k`` interior breaks on the interval."""
    p = _params(params)
    pb = p_disc_pb(p, k)
    s = bounds_width(p)
    lower = pb if k == 0 else max(Fraction(0), pb - s)
    return ProbBounds(lower, min(Fraction(1), pb + s))
