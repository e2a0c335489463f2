"""Triangular fuzzy numbers, alpha-cut intervals, and signed-distance ranking.

A triangular fuzzy number collects three ordered parameters: left support
end, peak, right support end.  Its alpha-cuts are closed intervals that
shrink linearly from the full support at level 0 to the peak at level 1,
and all fuzzy arithmetic here is carried out on those intervals.

Ranking uses the signed distance to the zero fuzzy point: the mean of the
cut midpoints over all membership levels.  For triangular shapes it
collapses to ``(left + 2 * peak + right) / 4``; the numerical route that
integrates the cut endpoints directly is kept alongside as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError
from .quadrature import DEFAULT_MAX_DEPTH, DEFAULT_TOL, adaptive_simpson


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite (got {value!r})")


@dataclass(frozen=True)
class AlphaLevel:
    """A membership threshold in [0, 1]."""

    alpha: float

    def __post_init__(self) -> None:
        _require_finite("alpha", self.alpha)
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"0 <= alpha <= 1 violated (got {self.alpha!r})")


@dataclass(frozen=True)
class Interval:
    """A closed real interval [lo, hi]; the alpha-cut carrier.

    Products and quotients follow the positive-operand rules used by the
    inventory model: both operands must have strictly positive lower
    bounds.  That keeps endpoint monotonicity trivial and is all the model
    needs; no extended sign-case arithmetic is attempted.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        _require_finite("lo", self.lo)
        _require_finite("hi", self.hi)
        if not self.lo <= self.hi:
            raise DomainError(f"lo <= hi violated (got [{self.lo!r}, {self.hi!r}])")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def scale(self, k: float) -> "Interval":
        """[k lo, k hi] for k > 0, [k hi, k lo] for k < 0, [0, 0] for k == 0."""
        _require_finite("k", k)
        if k > 0.0:
            return Interval(k * self.lo, k * self.hi)
        if k < 0.0:
            return Interval(k * self.hi, k * self.lo)
        return Interval(0.0, 0.0)

    def __mul__(self, other: Union["Interval", float]) -> "Interval":
        if isinstance(other, Interval):
            if not (self.lo > 0.0 and other.lo > 0.0):
                raise DomainError(
                    "interval multiplication requires lo > 0 on both operands "
                    f"(got lo={self.lo!r} and lo={other.lo!r})"
                )
            return Interval(self.lo * other.lo, self.hi * other.hi)
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: float) -> "Interval":
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other: "Interval") -> "Interval":
        if not isinstance(other, Interval):
            return NotImplemented
        if not (self.lo > 0.0 and other.lo > 0.0):
            raise DomainError(
                "interval division requires lo > 0 on both operands "
                f"(got lo={self.lo!r} and lo={other.lo!r})"
            )
        return Interval(self.lo / other.hi, self.hi / other.lo)


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Fuzzy quantity (beta1, beta2, beta3): support ends around a peak.

    The parameters are ordinarily strictly increasing.  The fully
    collapsed case ``beta1 == beta2 == beta3`` is also accepted and models
    a crisp value as a fuzzy point (see ``is_degenerate``); mixed
    equalities are rejected because neither reading applies to them.
    """

    beta1: float
    beta2: float
    beta3: float

    def __post_init__(self) -> None:
        _require_finite("beta1", self.beta1)
        _require_finite("beta2", self.beta2)
        _require_finite("beta3", self.beta3)
        strict = self.beta1 < self.beta2 < self.beta3
        point = self.beta1 == self.beta2 == self.beta3
        if not (strict or point):
            raise DomainError(
                "beta1 < beta2 < beta3 violated and not a fuzzy point "
                f"(got ({self.beta1!r}, {self.beta2!r}, {self.beta3!r}))"
            )

    @classmethod
    def point(cls, value: float) -> "TriangularFuzzyNumber":
        """The fuzzy point representing a crisp value."""
        return cls(value, value, value)

    @property
    def is_degenerate(self) -> bool:
        return self.beta1 == self.beta3

    def membership(self, y: float) -> float:
        """Membership grade of ``y``: 0 outside the support, 1 at the
        peak, linear on each flank."""
        if self.is_degenerate:
            return 1.0 if y == self.beta2 else 0.0
        if y < self.beta1 or y > self.beta3:
            return 0.0
        if y <= self.beta2:
            return (y - self.beta1) / (self.beta2 - self.beta1)
        return (self.beta3 - y) / (self.beta3 - self.beta2)

    def alpha_cut(self, level: Union[float, AlphaLevel]) -> Interval:
        """Closed interval of values whose membership is at least ``level``."""
        alpha = level if isinstance(level, AlphaLevel) else AlphaLevel(level)
        a = alpha.alpha
        lo = self.beta1 + (self.beta2 - self.beta1) * a
        hi = self.beta3 - (self.beta3 - self.beta2) * a
        if lo > hi:
            # binary64 overshoot possible only as alpha -> 1, where both
            # endpoints equal beta2 exactly.
            lo = hi = self.beta2
        return Interval(lo, hi)

    def signed_distance(self) -> float:
        """Signed distance to the zero fuzzy point: (b1 + 2 b2 + b3) / 4.

        Equals the mean midpoint of the alpha-cuts; cross-checked against
        ``signed_distance_quadrature`` in the test suite.
        """
        return (self.beta1 + 2.0 * self.beta2 + self.beta3) / 4.0

    def __add__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        if not isinstance(other, TriangularFuzzyNumber):
            return NotImplemented
        return TriangularFuzzyNumber(
            self.beta1 + other.beta1,
            self.beta2 + other.beta2,
            self.beta3 + other.beta3,
        )

    def __sub__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        if not isinstance(other, TriangularFuzzyNumber):
            return NotImplemented
        return TriangularFuzzyNumber(
            self.beta1 - other.beta3,
            self.beta2 - other.beta2,
            self.beta3 - other.beta1,
        )

    def scale(self, k: float) -> "TriangularFuzzyNumber":
        """k (.) B: componentwise for k > 0, order-reversing for k < 0,
        the zero fuzzy point for k == 0."""
        _require_finite("k", k)
        if k > 0.0:
            return TriangularFuzzyNumber(k * self.beta1, k * self.beta2, k * self.beta3)
        if k < 0.0:
            return TriangularFuzzyNumber(k * self.beta3, k * self.beta2, k * self.beta1)
        return TriangularFuzzyNumber.point(0.0)

    def __mul__(self, k: float) -> "TriangularFuzzyNumber":
        if isinstance(k, (int, float)):
            return self.scale(k)
        return NotImplemented

    def __rmul__(self, k: float) -> "TriangularFuzzyNumber":
        if isinstance(k, (int, float)):
            return self.scale(k)
        return NotImplemented


def signed_distance_quadrature(
    cut_lo: Callable[[float], float],
    cut_hi: Callable[[float], float],
    *,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Signed distance to zero from alpha-cut endpoint functions.

    Integrates the cut midpoint ``(cut_lo(a) + cut_hi(a)) / 2`` over the
    membership levels in [0, 1] by adaptive Simpson quadrature.  Callers
    supply continuous endpoint functions with ``cut_lo <= cut_hi``
    pointwise; this is the oracle route for every closed-form signed
    distance in the package.
    """
    return adaptive_simpson(
        lambda a: 0.5 * (cut_lo(a) + cut_hi(a)),
        0.0,
        1.0,
        tol=tol,
        max_depth=max_depth,
    )
