"""System parameters and exact rational input handling.

After scaling, every quantity of the 1-D model depends on the node count
``n`` and the normalized radio range ``rho = r / l`` only.  ``rho`` is kept
as a :class:`fractions.Fraction` so that downstream sums stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import InvalidParameterError

__all__ = [
    "parse_rational",
    "SystemParams",
    "PhysicalParams",
    "normalize",
    "gauss_bracket_inv",
]


def parse_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be ``"<int>/<int>"`` or decimal (``"0.03"``); both are read
    exactly, never through binary floating point.  Floats are converted via
    their shortest repr, so ``0.03`` becomes ``3/100``.
    """
    if isinstance(value, bool):
        raise InvalidParameterError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidParameterError(f"non-finite value: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameterError(f"cannot parse {value!r} as a rational") from exc
    raise InvalidParameterError(f"unsupported type for rational input: {type(value).__name__}")


def _positive(name, value) -> Fraction:
    q = parse_rational(value)
    if q <= 0:
        raise InvalidParameterError(f"{name} must be positive, got {q}")
    return q


@dataclass(frozen=True)
class SystemParams:
    """Node count ``n`` and normalized range ``rho`` (exact)."""

    n: int
    rho: Fraction

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidParameterError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "rho", _positive("rho", self.rho))


@dataclass(frozen=True)
class PhysicalParams:
    """Radio range ``r`` and system length ``l`` in a common length unit."""

    r: Fraction
    l: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", _positive("r", self.r))
        object.__setattr__(self, "l", _positive("l", self.l))

    @property
    def rho(self) -> Fraction:
        return self.r / self.l


def normalize(p: PhysicalParams, n: int) -> SystemParams:
    """Reduce ``(n, r, l)`` to ``(n, rho = r/l)``."""
    return SystemParams(n, p.rho)


def gauss_bracket_inv(rho) -> int:
    """Return ``floor(1/rho)`` by exact integer division."""
    q = _positive("rho", rho)
    return q.denominator // q.numerator
