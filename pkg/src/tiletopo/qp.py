"""Quasi-periodicity of the level-k translate sets of the parity-shift family.

The level-k translate set is D_k = {(m2 + hat(m1)*eps, m1) : |m1|, |m2| <=
(|p|^k - 1)/2}, where hat(m1) keeps the odd balanced digits of m1.  For
rational eps = a/b the number of distinct difference vectors inside any
window of radius c is bounded by (2c+1) * b(2c+1) independently of k, which
is the quasi-periodicity certificate; for irrational eps explicit pairs of
translates realize ever-new fractional offsets at bounded distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, InvalidParameterError, ResourceBudgetError
from .numeric import Point2, format_rational, rational
from .shift import ShiftParams, build_shift_digits

DEFAULT_SET_BUDGET = 2_000_000


@dataclass(frozen=True)
class BalancedDigits:
    """Balanced base-p digits, least significant first, no trailing zero."""

    digits: tuple[int, ...]


def balanced_digits(n: int, p: int) -> BalancedDigits:
    """Expand an integer in balanced digits over {-m..m}, m = (|p|-1)/2."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidParameterError(f"expected an integer, got {n!r}")
    if not isinstance(p, int) or abs(p) < 3 or abs(p) % 2 == 0:
        raise InvalidParameterError(f"base must be an odd integer with |p| >= 3, got {p!r}")
    P = abs(p)
    m = (P - 1) // 2
    digits: list[int] = []
    while n != 0:
        r = ((n + m) % P) - m
        digits.append(r)
        n = (n - r) // p
    return BalancedDigits(tuple(digits))


def digits_value(bd: BalancedDigits, p: int) -> int:
    """Reassemble the integer from its balanced digits."""
    total = 0
    for d in reversed(bd.digits):
        total = total * p + d
    return total


def hat(n: int, p: int) -> int:
    """The parity lift: each balanced digit of n replaced by its parity bit."""
    bd = balanced_digits(n, p)
    total = 0
    weight = 1
    for d in bd.digits:
        if d % 2 != 0:
            total += weight
        weight *= p
    return total


@dataclass(frozen=True)
class TranslateSet:
    """The exact level-k translate set of a parity-shift tile."""

    params: ShiftParams
    level: int
    points: frozenset[Point2]


def _closed_form_points(params: ShiftParams, k: int) -> frozenset[Point2]:
    M = (params.abs_p**k - 1) // 2
    pts = set()
    for m1 in range(-M, M + 1):
        h = hat(m1, params.p)
        base = h * params.eps
        for m2 in range(-M, M + 1):
            pts.add(Point2(base + m2, Fraction(m1)))
    return frozenset(pts)


def translate_set(
    params: ShiftParams, k: int, budget: int = DEFAULT_SET_BUDGET, cross_check: bool = True
) -> TranslateSet:
    """Build D_k by the recursion D_k = digits + p * D_{k-1}.

    The result is compared point-for-point with the closed form (disable with
    cross_check=False for speed), and its size must be |p|^(2k).
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"level must be a positive integer, got {k!r}")
    if params.abs_p ** (2 * k) > budget:
        raise ResourceBudgetError(
            f"translate set would hold {params.abs_p ** (2 * k)} points, over budget {budget}"
        )
    digits = [d for d in build_shift_digits(params).digits]
    level_pts: set[Point2] = set(digits)
    for _ in range(k - 1):
        level_pts = {
            Point2(d.x + params.p * s.x, d.y + params.p * s.y)
            for d in digits
            for s in level_pts
        }
    points = frozenset(level_pts)
    if len(points) != params.abs_p ** (2 * k):
        raise ResourceBudgetError(
            f"translate set at level {k} has {len(points)} points, expected {params.abs_p ** (2 * k)}"
        )
    if cross_check and points != _closed_form_points(params, k):
        raise DomainError("recursive translate set disagrees with its closed form")
    return TranslateSet(params, k, points)


def decompose_translate(params: ShiftParams, pt: Point2) -> tuple[int, int] | None:
    """Write pt as (m2 + hat(m1)*eps, m1) if possible, else None."""
    if pt.y.denominator != 1:
        return None
    m1 = pt.y.numerator
    residue = pt.x - hat(m1, params.p) * params.eps
    if residue.denominator != 1:
        return None
    return (m1, residue.numerator)


def in_translate_set(params: ShiftParams, pt: Point2, k: int) -> bool:
    """Closed-form membership of pt in D_k."""
    decomp = decompose_translate(params, pt)
    if decomp is None:
        return False
    m1, m2 = decomp
    M = (params.abs_p**k - 1) // 2
    return abs(m1) <= M and abs(m2) <= M


def self_replication_check(params: ShiftParams, t: Point2, k: int) -> bool:
    """Verify p*t + digit lands in D_{k+1} for every digit."""
    if not in_translate_set(params, t, k):
        raise DomainError(f"{t} is not a level-{k} translate")
    for d in build_shift_digits(params).digits:
        image = Point2(params.p * t.x + d.x, params.p * t.y + d.y)
        if not in_translate_set(params, image, k + 1):
            return False
    return True


@dataclass(frozen=True)
class CensusReport:
    """Distinct difference vectors of D_k within a window, against the bound."""

    c: Fraction
    k: int
    distinct_classes: int
    bound: Fraction
    within_bound: bool


def census_bound(eps: Fraction, c: Fraction) -> Fraction:
    """(2c+1) * b(2c+1) for eps = a/b in lowest terms."""
    return (2 * c + 1) * (eps.denominator * (2 * c + 1))


def local_finiteness_census(params: ShiftParams, c, k: int) -> CensusReport:
    """Count distinct nonzero differences q' - q, q, q' in D_k, |q'-q|_inf <= c.

    Differences are enumerated directly from the closed form: dy ranges over
    the integers in [-c, c], each (m1, m1 - dy) pair fixes the eps part of
    dx, and the integer part sweeps an interval of width 2c.
    """
    c = rational(c)
    if c < 0:
        raise InvalidParameterError(f"window radius must be nonnegative, got {c}")
    if not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"level must be a positive integer, got {k!r}")
    M = (params.abs_p**k - 1) // 2
    dy_max = min(int(c), 2 * M)
    classes: set[tuple[Fraction, int]] = set()
    hats = {m1: hat(m1, params.p) for m1 in range(-M, M + 1)}
    for m1 in range(-M, M + 1):
        for dy in range(-dy_max, dy_max + 1):
            n1 = m1 - dy
            if not -M <= n1 <= M:
                continue
            frac_part = (hats[m1] - hats[n1]) * params.eps
            # dx = dm2 + frac_part with dm2 = m2 - n2 in [-2M, 2M]
            lo = max(-(2 * M), math.ceil(-c - frac_part))
            hi = min(2 * M, math.floor(c - frac_part))
            for dm2 in range(lo, hi + 1):
                dx = dm2 + frac_part
                if dx == 0 and dy == 0:
                    continue
                classes.add((dx, dy))
    bound = census_bound(params.eps, c)
    return CensusReport(
        c=c,
        k=k,
        distinct_classes=len(classes),
        bound=bound,
        within_bound=len(classes) <= bound,
    )


def census_bruteforce(points: Iterable[Point2], c) -> int:
    """Distinct nonzero differences within the window, by raw enumeration."""
    c = rational(c)
    pts = list(points)
    seen: set[tuple[Fraction, Fraction]] = set()
    for q in pts:
        for r in pts:
            dx = r.x - q.x
            dy = r.y - q.y
            if dx == 0 and dy == 0:
                continue
            if abs(dx) <= c and abs(dy) <= c:
                seen.add((dx, dy))
    return len(seen)


def arrangement_census(
    params: ShiftParams, c, k: int, arity: int, budget: int = 200_000
) -> int:
    """Distinct local constellations of `arity` translates within radius c.

    Each constellation is anchored at one translate and recorded as the
    sorted tuple of differences to arity-1 nearby translates.  Exposed for
    exploration; cost grows quickly with arity.
    """
    c = rational(c)
    if arity < 2:
        raise InvalidParameterError(f"arity must be at least 2, got {arity}")
    pts = sorted(translate_set(params, k, cross_check=False).points, key=lambda q: (q.x, q.y))
    shapes: set[tuple] = set()
    work = 0
    for anchor in pts:
        near = [
            (q.x - anchor.x, q.y - anchor.y)
            for q in pts
            if q != anchor and abs(q.x - anchor.x) <= c and abs(q.y - anchor.y) <= c
        ]
        for combo in combinations(sorted(near), arity - 1):
            shapes.add(combo)
            work += 1
            if work > budget:
                raise ResourceBudgetError(f"arrangement census exceeded budget {budget}")
    return len(shapes)


@dataclass(frozen=True)
class WitnessPair:
    """Two translates at bounded distance realizing a fresh relative offset."""

    k: int
    first: tuple[float, float]
    second: tuple[float, float]
    x_difference: float
    distance: float


def irrational_witness_pairs(p: int, eps: float, k_max: int = 10) -> list[WitnessPair]:
    """Translate pairs whose x-offsets are the fractional parts of eps*p^k.

    For irrational eps these never repeat, so no finite difference census can
    cover every window; the pairs stay within distance sqrt(2) of each other.
    Float evaluation keeps k_max small enough for exact low bits (k_max <= 30).
    """
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise InvalidParameterError(f"demonstration mode needs an odd integer p >= 3, got {p!r}")
    if not isinstance(k_max, int) or not 1 <= k_max <= 30:
        raise InvalidParameterError(f"k_max must be in 1..30, got {k_max!r}")
    eps = float(eps)
    m = (p - 1) // 2
    pairs: list[WitnessPair] = []
    for k in range(1, k_max + 1):
        pk = p**k
        m1 = (pk - 1) // 2
        n1 = m1 + 1
        hat_m1 = (pk - 1) // (p - 1) if m % 2 == 1 else 0
        hat_n1 = hat_m1 + pk
        m2 = math.floor(eps * pk)
        first = (m2 + hat_m1 * eps, float(m1))
        second = (hat_n1 * eps, float(n1))
        x_diff = second[0] - first[0]
        pairs.append(
            WitnessPair(
                k=k,
                first=first,
                second=second,
                x_difference=x_diff,
                distance=math.hypot(x_diff, 1.0),
            )
        )
    return pairs


def distinct_x_classes(pairs: Sequence[WitnessPair], resolution: float = 1e-9) -> int:
    """Number of distinct x-offsets among the pairs, at the given resolution."""
    return len({round(pair.x_difference / resolution) for pair in pairs})


@dataclass(frozen=True)
class QpReport:
    """Quasi-periodicity verdict with the evidence that produced it."""

    p: int
    eps_display: str
    quasi_periodic: bool
    certified: bool
    census: tuple[CensusReport, ...] | None
    witness_pairs: tuple[WitnessPair, ...] | None
    distinct_classes: int | None

    def to_json_dict(self) -> dict:
        out: dict = {
            "p": self.p,
            "eps": self.eps_display,
            "quasi_periodic": self.quasi_periodic,
            "certified": self.certified,
        }
        if self.census is not None:
            out["census"] = [
                {
                    "c": format_rational(rep.c),
                    "k": rep.k,
                    "distinct_classes": rep.distinct_classes,
                    "bound": format_rational(rep.bound),
                    "within_bound": rep.within_bound,
                }
                for rep in self.census
            ]
        if self.witness_pairs is not None:
            out["witness_pairs"] = [
                {
                    "k": pair.k,
                    "first": list(pair.first),
                    "second": list(pair.second),
                    "x_difference": pair.x_difference,
                    "distance": pair.distance,
                }
                for pair in self.witness_pairs
            ]
        if self.distinct_classes is not None:
            out["distinct_offset_classes"] = self.distinct_classes
        return out


def is_quasi_periodic(
    p: int,
    eps,
    *,
    demo_float: bool = False,
    census_windows: Sequence = (1, 2),
    census_level: int = 3,
    k_max: int = 10,
) -> QpReport:
    """Quasi-periodic if and only if eps is rational.

    Exact inputs are rational by construction: the verdict is positive and a
    bounded difference census over the requested windows is attached as
    evidence.  With demo_float=True the input is treated as an irrational
    sample: the verdict is negative, certified=False, and witness pairs of
    unboundedly many distinct offsets are attached instead.
    """
    if demo_float:
        pairs = tuple(irrational_witness_pairs(p, float(eps), k_max))
        return QpReport(
            p=p,
            eps_display=repr(float(eps)),
            quasi_periodic=False,
            certified=False,
            census=None,
            witness_pairs=pairs,
            distinct_classes=distinct_x_classes(pairs),
        )
    params = ShiftParams(p, rational(eps))
    reports = tuple(
        local_finiteness_census(params, c, census_level) for c in census_windows
    )
    if not all(rep.within_bound for rep in reports):
        raise DomainError("difference census exceeded its finiteness bound")
    return QpReport(
        p=params.p,
        eps_display=format_rational(params.eps),
        quasi_periodic=True,
        certified=True,
        census=reports,
        witness_pairs=None,
        distinct_classes=None,
    )


def write_patch_points(points: Iterable[Point2], path: str) -> None:
    """Write one `x_num/x_den y_num/y_den` line per point, sorted by (x, y)."""
    import os
    import tempfile

    def slashed(q: Fraction) -> str:
        return f"{q.numerator}/{q.denominator}"

    lines = [
        f"{slashed(pt.x)} {slashed(pt.y)}\n"
        for pt in sorted(points, key=lambda q: (q.x, q.y))
    ]
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".patch-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.writelines(lines)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
