"""Core IFS machinery shared by both tile families.

Maps have the shape f(x) = x/p + d/p for an integer expansion factor p with
|p| >= 2 and a digit vector d; attractors are sampled by evaluating all words
of a fixed length, exactly, in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AddressError, InvalidParameterError, ResourceBudgetError
from .numeric import Point2

# A word is a sequence of digit indices into a DigitSet, outermost map first.
Word = tuple[int, ...]

DEFAULT_SAMPLE_BUDGET = 6_000_000


@dataclass(frozen=True)
class AffineMap:
    """The contraction x ↦ scale_inv·x + offset with scale_inv = 1/p."""

    scale_inv: Fraction
    offset: Point2

    def __post_init__(self) -> None:
        if abs(self.scale_inv.numerator) != 1 or self.scale_inv.denominator < 2:
            raise InvalidParameterError(f"scale 1/p needs integer |p| >= 2, got {self.scale_inv}")

    @property
    def base(self) -> int:
        """The expansion factor p (signed)."""
        return self.scale_inv.denominator * self.scale_inv.numerator

    @property
    def digit(self) -> Point2:
        """The digit vector d with f(x) = (x + d)/p."""
        return self.offset.scale(Fraction(self.base))

    @classmethod
    def from_digit(cls, p: int, d: Point2) -> "AffineMap":
        s = Fraction(1, p)
        return cls(s, d.scale(s))

    def apply(self, pt: Point2) -> Point2:
        return Point2(self.scale_inv * pt.x + self.offset.x, self.scale_inv * pt.y + self.offset.y)


def compose(m1: AffineMap, m2: AffineMap) -> AffineMap:
    """m1 ∘ m2. Both maps must share the same expansion factor."""
    if m1.base != m2.base:
        raise InvalidParameterError(f"cannot compose maps with bases {m1.base} and {m2.base}")
    return AffineMap(m1.scale_inv * m2.scale_inv, m1.apply(m2.offset))


def map_equal(a: AffineMap, b: AffineMap) -> bool:
    """Exact structural equality of two affine maps."""
    return a == b


def fixed_point(m: AffineMap) -> Point2:
    """The unique fixed point x = m(x); equals digit/(p − 1)."""
    k = 1 / (1 - m.scale_inv)
    return m.offset.scale(k)


@dataclass(frozen=True)
class DigitSet:
    """An IFS presented as its expansion factor and ordered digit vectors."""

    p: int
    digits: tuple[Point2, ...]

    def __post_init__(self) -> None:
        if abs(self.p) < 2:
            raise InvalidParameterError(f"digit set needs |p| >= 2, got {self.p}")
        if len(self.digits) != self.p * self.p:
            raise InvalidParameterError(
                f"digit set for p={self.p} needs p^2 = {self.p * self.p} digits, got {len(self.digits)}"
            )

    @property
    def maps(self) -> tuple[AffineMap, ...]:
        return tuple(AffineMap.from_digit(self.p, d) for d in self.digits)

    def digit_at(self, index: int) -> Point2:
        if not 0 <= index < len(self.digits):
            raise AddressError(f"digit index {index} out of range 0..{len(self.digits) - 1}")
        return self.digits[index]


def eval_word(ds: DigitSet, w: Sequence[int]) -> Point2:
    """Evaluate f_{w_1} ∘ … ∘ f_{w_k}(0) = Σ p^{−t} d_{w_t}, exactly."""
    acc = Point2(Fraction(0), Fraction(0))
    for index in reversed(w):
        d = ds.digit_at(index)
        acc = Point2((acc.x + d.x) / ds.p, (acc.y + d.y) / ds.p)
    return acc


def sample_attractor(
    ds: DigitSet, depth: int, budget: int = DEFAULT_SAMPLE_BUDGET
) -> frozenset[Point2]:
    """All points Σ p^{−t} d_{w_t} over words of the given length.

    Level-by-level: S_k = (S_{k−1} + D)/p with S_0 = {0}, deduplicating as it
    goes, so coincident branches (e.g. eps = 0) do not blow up the set.
    """
    if depth < 0:
        raise InvalidParameterError(f"depth must be >= 0, got {depth}")
    n = len(ds.digits)
    if n**depth > budget:
        raise ResourceBudgetError(f"{n}^{depth} sample words exceed budget {budget}")
    pts: set[Point2] = {Point2(Fraction(0), Fraction(0))}
    p = ds.p
    for _ in range(depth):
        pts = {
            Point2((q.x + d.x) / p, (q.y + d.y) / p) for q in pts for d in ds.digits
        }
    return frozenset(pts)


def square_digit_set(ds: DigitSet) -> DigitSet:
    """Rewrite (p, D) as the equivalent (p², D + p·D) system with positive scale.

    Two steps of the original IFS equal one step of the squared one, so both
    have the same attractor; useful to normalize p < 0 to a positive factor.
    """
    doubled = tuple(
        Point2(d1.x + ds.p * d2.x, d1.y + ds.p * d2.y) for d2 in ds.digits for d1 in ds.digits
    )
    return DigitSet(ds.p * ds.p, doubled)


def attractor_bounds(ds: DigitSet) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact bounding box (x_min, x_max, y_min, y_max) of the attractor.

    For p > 0 each coordinate ranges over [min_d/(p−1), max_d/(p−1)]; a
    negative p is normalized through the squared system first.
    """
    if ds.p < 0:
        ds = square_digit_set(ds)
    p = ds.p
    xs = [d.x for d in ds.digits]
    ys = [d.y for d in ds.digits]
    return (
        min(xs) / (p - 1),
        max(xs) / (p - 1),
        min(ys) / (p - 1),
        max(ys) / (p - 1),
    )


def common_denominator(points: Iterable[Point2]) -> int:
    """Least common denominator of all coordinates (1 for an empty iterable)."""
    den = 1
    for pt in points:
        den = math.lcm(den, pt.x.denominator, pt.y.denominator)
    return den
