"""Exact rational scalars, intervals, points, segments, and tail sums.

Every predicate in this package runs on ``fractions.Fraction`` values.
Floats are confined to the render module and the explicitly labeled
demonstration helpers; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidParameterError

Rational = Fraction


def rational(value: Fraction | int | str) -> Fraction:
    """Parse an exact rational from "a/b", an integer, or a decimal literal.

    Floats are rejected: callers that really want the exact binary value of a
    float (demonstration paths) must convert explicitly via ``Fraction(x)``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameterError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParameterError(f"cannot parse rational from {value!r}") from exc
    raise InvalidParameterError(f"cannot parse rational from {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Serialize a rational as "a/b" (plain "a" when the denominator is 1)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Point2:
    """An exact point in the plane."""

    x: Fraction
    y: Fraction

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def scale(self, k: Fraction) -> "Point2":
        return Point2(self.x * k, self.y * k)


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi] with rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InvalidParameterError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def translate(self, d: Fraction) -> "Interval":
        return Interval(self.lo + d, self.hi + d)


@dataclass(frozen=True)
class Segment:
    """A closed segment between two exact points (may be degenerate)."""

    a: Point2
    b: Point2


class OverlapKind(Enum):
    EMPTY = "empty"
    POINT = "point"
    SEGMENT = "segment"


@dataclass(frozen=True)
class Overlap:
    """Result of intersecting two closed intervals on a line."""

    kind: OverlapKind
    point: Fraction | None = None
    interval: Interval | None = None


def classify_overlap(i1: Interval, i2: Interval) -> Overlap:
    """Classify i1 ∩ i2 as empty, a single shared endpoint, or a subinterval."""
    lo = max(i1.lo, i2.lo)
    hi = min(i1.hi, i2.hi)
    if hi < lo:
        return Overlap(OverlapKind.EMPTY)
    if hi == lo:
        return Overlap(OverlapKind.POINT, point=lo)
    return Overlap(OverlapKind.SEGMENT, interval=Interval(lo, hi))


def geo_tail(eps: Fraction, p: int, n: int) -> Fraction:
    """Closed form of the tail sum Σ_{t=n+2..∞} eps / p^t = eps / (p^{n+1} (p−1)).

    Requires p >= 2 (convergence) and n >= 0.
    """
    if not isinstance(p, int) or p < 2:
        raise InvalidParameterError(f"tail sum needs an integer base p >= 2, got {p!r}")
    if not isinstance(n, int) or n < 0:
        raise InvalidParameterError(f"tail sum needs n >= 0, got {n!r}")
    return Fraction(eps, p ** (n + 1) * (p - 1))
