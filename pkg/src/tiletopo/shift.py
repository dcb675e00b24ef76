"""Family A: tiles whose digits shift odd rows horizontally by eps.

The digit set is {(i + b_j, j) : i, j in {-m..m}} with b_j = eps for odd j and
0 for even j, |p| = 2m+1.  The tile decomposes into horizontal strip cells
indexed by vertical digit words; everything about its topology (interior
component count, disk-likeness, strip contacts, tiling membership) reduces to
exact interval arithmetic on those strips.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import hata
from .errors import (
    CertificateError,
    InvalidParameterError,
    ResourceBudgetError,
)
from .ifs import DigitSet, Word
from .numeric import (
    Interval,
    Overlap,
    OverlapKind,
    Point2,
    Segment,
    classify_overlap,
    format_rational,
    geo_tail,
)

HALF = Fraction(1, 2)

# Above this many strip cells the component-count cross-check graph is skipped.
GRAPH_ORACLE_MAX_CELLS = 20_000


@dataclass(frozen=True)
class ShiftParams:
    """Parameters (p, eps) with |p| = 2m+1 odd, |p| >= 3."""

    p: int
    eps: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or abs(self.p) < 3 or self.p % 2 == 0:
            raise InvalidParameterError(f"p must be an odd integer with |p| >= 3, got {self.p!r}")
        if not isinstance(self.eps, Fraction):
            raise InvalidParameterError(f"eps must be a Fraction, got {type(self.eps).__name__}")

    @property
    def abs_p(self) -> int:
        return abs(self.p)

    @property
    def m(self) -> int:
        return (abs(self.p) - 1) // 2


def parity_offset(params: ShiftParams, j: int) -> Fraction:
    """The per-digit horizontal shift b_j: eps for odd j, 0 for even j."""
    return params.eps if j % 2 else Fraction(0)


def shift_digit_index(params: ShiftParams, i: int, j: int) -> int:
    """Index of digit (i + b_j, j) in the lexicographic (i, j) construction order."""
    m = params.m
    if not (-m <= i <= m and -m <= j <= m):
        raise InvalidParameterError(f"digit pair ({i}, {j}) outside {{-{m}..{m}}}^2")
    return (i + m) * params.abs_p + (j + m)


def build_shift_digits(params: ShiftParams) -> DigitSet:
    """The p^2 digits (i + b_j, j), i outer and j inner, both running -m..m."""
    m = params.m
    rng = range(-m, m + 1)
    digits = tuple(
        Point2(Fraction(i) + parity_offset(params, j), Fraction(j)) for i in rng for j in rng
    )
    return DigitSet(params.p, digits)


# ---------------------------------------------------------------------------
# Strip cells and their contacts
# ---------------------------------------------------------------------------


def _check_vertical_word(params: ShiftParams, w: Sequence[int]) -> tuple[int, ...]:
    m = params.m
    word = tuple(w)
    for letter in word:
        if not isinstance(letter, int) or not -m <= letter <= m:
            raise InvalidParameterError(f"address letter {letter!r} outside {{-{m}..{m}}}")
    return word


def _require_positive_p(params: ShiftParams, what: str) -> None:
    # The strip formulas describe the positive-p parity-form digit set; the
    # p < 0 attractor needs the squared (product-form) system, which only has
    # strips at even levels.  Closed-form/topology entry points stay signed.
    if params.p < 0:
        raise InvalidParameterError(f"{what} requires p > 0; analyze p < 0 via component_count/tiling_membership")


def word_height(params: ShiftParams, w: Sequence[int]) -> Fraction:
    """p(w) = sum of w_t p^{-t}: the y-center of the strip cell G_w."""
    word = _check_vertical_word(params, w)
    acc = Fraction(0)
    for letter in reversed(word):
        acc = (acc + letter) / params.p
    return acc


def word_shift(params: ShiftParams, w: Sequence[int]) -> Fraction:
    """b(w) = sum of b_{w_t} p^{-t}: the x-offset accumulated along the word."""
    word = _check_vertical_word(params, w)
    acc = Fraction(0)
    for letter in reversed(word):
        acc = (acc + parity_offset(params, letter)) / params.p
    return acc


@dataclass(frozen=True)
class StripCell:
    """A strip cell G_w: the level-n pieces sharing the vertical address w."""

    address: Word
    y_range: Interval
    x_offset: Fraction


def strip_cell(params: ShiftParams, w: Sequence[int]) -> StripCell:
    _require_positive_p(params, "strip_cell")
    word = _check_vertical_word(params, w)
    center = word_height(params, word)
    half = Fraction(1, 2 * params.p ** len(word))
    return StripCell(word, Interval(center - half, center + half), word_shift(params, word))


def strip_translation(params: ShiftParams, j0: Sequence[int]) -> Point2:
    """The vector (b(j0), p(j0)) with G_{j0} = G_0 + that vector."""
    word = _check_vertical_word(params, j0)
    return Point2(word_shift(params, word), word_height(params, word))


def tiling_patch(
    params: ShiftParams,
    span: int,
    ell: Callable[[int], Fraction] | None = None,
) -> list[Point2]:
    """Translates (n + ell(s), s), |n|,|s| <= span, of the tile's lattice tiling.

    The horizontal shear sequence ell is 0 by default; any rational-valued
    choice tiles equally well.
    """
    if span < 0:
        raise InvalidParameterError(f"span must be >= 0, got {span}")
    shear = ell if ell is not None else (lambda s: Fraction(0))
    return [
        Point2(Fraction(n) + Fraction(shear(s)), Fraction(s))
        for s in range(-span, span + 1)
        for n in range(-span, span + 1)
    ]


@dataclass(frozen=True)
class IntervalPair:
    """Cross-sections I1 = [alpha, alpha+1], I2 = [beta, beta+1] at y_meet."""

    i1: Interval
    i2: Interval
    y_meet: Fraction

    def __post_init__(self) -> None:
        if self.i1.width != 1 or self.i2.width != 1:
            raise InvalidParameterError("cross-section intervals must have width exactly 1")


def strip_interval_pair(params: ShiftParams, n: int) -> IntervalPair:
    """Exact x-cross-sections of G_{0...00} and G_{0...01} at their meeting ordinate.

    The two sibling strips meet the line y = 1/(2 p^{n+1}); the cross-section
    offsets split on the parity of m because the extreme digit +-m carries the
    shift eps exactly when m is odd.
    """
    _require_positive_p(params, "strip_interval_pair")
    if n < 0:
        raise InvalidParameterError(f"level n must be >= 0, got {n}")
    p, eps = params.p, params.eps
    if params.m % 2 == 0:
        alpha = -HALF
        beta = eps / p ** (n + 1) - HALF
    else:
        alpha = geo_tail(eps, p, n) - HALF
        beta = alpha + eps / p ** (n + 1)
    return IntervalPair(
        Interval(alpha, alpha + 1),
        Interval(beta, beta + 1),
        Fraction(1, 2 * p ** (n + 1)),
    )


@dataclass(frozen=True)
class StripContact:
    """How two strip closures meet: not at all, at one point, or along a segment."""

    kind: OverlapKind
    point: Point2 | None = None
    segment: Segment | None = None


def _contact_from_overlap(ov: Overlap, y_meet: Fraction) -> StripContact:
    if ov.kind is OverlapKind.EMPTY:
        return StripContact(OverlapKind.EMPTY)
    if ov.kind is OverlapKind.POINT:
        assert ov.point is not None
        return StripContact(OverlapKind.POINT, point=Point2(ov.point, y_meet))
    assert ov.interval is not None
    return StripContact(
        OverlapKind.SEGMENT,
        segment=Segment(Point2(ov.interval.lo, y_meet), Point2(ov.interval.hi, y_meet)),
    )


def classify_strip_intersection(params: ShiftParams, n: int) -> StripContact:
    """Trichotomy for sibling strips: Segment, Point, or Empty by |eps| vs p^{n+1}."""
    pair = strip_interval_pair(params, n)
    return _contact_from_overlap(classify_overlap(pair.i1, pair.i2), pair.y_meet)


def nonadjacent_strips_disjoint(params: ShiftParams, j0: Sequence[int], k: int, l: int) -> bool:
    """True iff the child strips G_{j0 k} and G_{j0 l} have disjoint y-ranges."""
    _require_positive_p(params, "nonadjacent_strips_disjoint")
    m = params.m
    if not (-m <= k <= m and -m <= l <= m):
        raise InvalidParameterError(f"child digits must lie in {{-{m}..{m}}}, got {k}, {l}")
    word = _check_vertical_word(params, j0)
    a = strip_cell(params, word + (k,)).y_range
    b = strip_cell(params, word + (l,)).y_range
    return classify_overlap(a, b).kind is OverlapKind.EMPTY


def _word_value(params: ShiftParams, w: tuple[int, ...]) -> int:
    """p(w) scaled by p^n: an integer that orders same-level strips by height."""
    value = 0
    for letter in w:
        value = value * params.p + letter
    return value


def level_cells(params: ShiftParams, n: int) -> list[tuple[int, ...]]:
    """All level-n vertical addresses, ordered by strip height."""
    _require_positive_p(params, "level_cells")
    if n < 0:
        raise InvalidParameterError(f"level must be >= 0, got {n}")
    m = params.m
    if params.abs_p**n > GRAPH_ORACLE_MAX_CELLS:
        raise ResourceBudgetError(f"{params.abs_p}^{n} strip cells exceed the enumeration budget")
    return list(itertools.product(range(-m, m + 1), repeat=n))


def cell_contact(params: ShiftParams, w: Sequence[int], v: Sequence[int]) -> StripContact:
    """Exact contact of two distinct same-level strip closures.

    Strips two or more height steps apart are disjoint; height-adjacent strips
    compare the top edge of the lower cell with the bottom edge of the upper
    one. Both edges sit at the meeting ordinate and carry the same tail offset
    (the extreme digits +-m have equal shifts), so the contact is the overlap
    of two unit intervals displaced by b(upper) - b(lower).
    """
    _require_positive_p(params, "cell_contact")
    a = _check_vertical_word(params, w)
    b = _check_vertical_word(params, v)
    if len(a) != len(b):
        raise InvalidParameterError("cell_contact compares same-level strips")
    if a == b:
        raise InvalidParameterError("cell_contact needs two distinct strips")
    n = len(a)
    if _word_value(params, a) > _word_value(params, b):
        a, b = b, a
    delta = _word_value(params, b) - _word_value(params, a)
    if delta >= 2:
        return StripContact(OverlapKind.EMPTY)
    # Tail offset of an extreme-digit tail below level n (levels n+1, n+2, ...).
    tail = geo_tail(parity_offset(params, params.m), params.p, n - 1) if n >= 1 else Fraction(0)
    y_meet = word_height(params, a) + Fraction(1, 2 * params.p**n)
    low = Interval(word_shift(params, a) + tail - HALF, word_shift(params, a) + tail + HALF)
    high = Interval(word_shift(params, b) + tail - HALF, word_shift(params, b) + tail + HALF)
    return _contact_from_overlap(classify_overlap(low, high), y_meet)


def cell_contact_predicate(
    params: ShiftParams, *, closure: bool = True
) -> Callable[[tuple[int, ...], tuple[int, ...]], hata.EdgeWitness | None]:
    """Intersection predicate over same-level strips for the piece graph.

    closure=True reports Point and Segment contacts; closure=False keeps only
    Segment contacts, i.e. overlapping interiors.
    """

    def predicate(a: tuple[int, ...], b: tuple[int, ...]) -> hata.EdgeWitness | None:
        contact = cell_contact(params, a, b)
        if contact.kind is OverlapKind.SEGMENT:
            return hata.EdgeWitness.SEGMENT
        if contact.kind is OverlapKind.POINT and closure:
            return hata.EdgeWitness.POINT
        return None

    return predicate


def strip_adjacency_graph(
    params: ShiftParams, n: int, *, closure: bool = False, all_pairs: bool = False
) -> hata.PieceGraph:
    """The level-n strip graph, edges by exact contact classification.

    Only height-adjacent strips can meet, so by default the predicate runs on
    consecutive cells; all_pairs=True forces the quadratic build (test use).
    """
    cells = level_cells(params, n)
    predicate = cell_contact_predicate(params, closure=closure)
    if all_pairs:
        return hata.build_graph(cells, predicate)
    edges: dict[frozenset, hata.EdgeWitness] = {}
    for a, b in zip(cells, cells[1:]):
        hit = predicate(a, b)
        if hit is not None:
            edges[frozenset((a, b))] = hit
    return hata.PieceGraph(tuple(cells), edges)


# ---------------------------------------------------------------------------
# Interior component count / disk-likeness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TopologyReport:
    """Topology verdict for one family-A tile."""

    params: ShiftParams
    is_tile: bool
    component_count: int
    cell_level: int
    cells_disklike: bool
    global_disklike: bool

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "eps": format_rational(self.params.eps),
            "n": self.cell_level,
            "components": self.component_count,
            "cells_disklike": self.cells_disklike,
            "global_disklike": self.global_disklike,
        }


def component_count(params: ShiftParams) -> TopologyReport:
    """Interior component count and disk-likeness classification.

    n is the unique level with |eps| < |p|^{n+1} and (n = 0 or |p|^n <= |eps|);
    the interior then has |p|^n components, each's closure disk-like, and the
    tile is globally disk-like iff n = 0.  For p > 0 the result is
    cross-checked against the level-n strip graph with interior (segment
    overlap) edges; a mismatch raises CertificateError.
    """
    P = params.abs_p
    a = abs(params.eps)
    n = 0
    while a >= P ** (n + 1):
        n += 1
    count = P**n
    report = TopologyReport(
        params=params,
        is_tile=True,
        component_count=count,
        cell_level=n,
        cells_disklike=True,
        global_disklike=(n == 0),
    )
    if params.p > 0 and P**n <= GRAPH_ORACLE_MAX_CELLS:
        graph = strip_adjacency_graph(params, n, closure=False)
        got = hata.components(graph)[0]
        if got != count:
            raise CertificateError(
                f"strip graph gives {got} interior components at level {n}, theory says {count}"
            )
    return report


# ---------------------------------------------------------------------------
# Balanced expansions and tiling membership
# ---------------------------------------------------------------------------


class MembershipKind(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Membership:
    kind: MembershipKind
    translate: tuple[int, int] | None = None


@dataclass(frozen=True)
class BalancedExpansion:
    """An eventually periodic digit string: preperiod then repeating cycle."""

    pre: tuple[int, ...]
    cycle: tuple[int, ...]


def _half_tail(sign: int, base: int, mm: int) -> tuple[int, ...]:
    """The unique digit cycle expanding sign/2 in the given (signed) base."""
    r = Fraction(sign, 2)
    start = r
    digits: list[int] = []
    for _ in range(4):
        v = r * base
        j = math.floor(v + HALF)
        if j > mm:  # the tie rounds out of range; only j-1 is a valid digit
            j -= 1
        digits.append(j)
        r = v - j
        if r == start:
            return tuple(digits)
    raise AssertionError("half-integer expansion failed to cycle")  # pragma: no cover


def balanced_expansions(
    y0: Fraction, base: int, budget: int = 4096
) -> list[BalancedExpansion] | None:
    """All balanced digit expansions of y0 in [-1/2, 1/2] for the signed base.

    Returns one expansion for generic y0, two when the digit recursion hits a
    remainder of exactly +-1/2 (the point sits on a cell boundary), and None
    if no cycle is found within the budget.
    """
    if abs(base) < 3 or base % 2 == 0:
        raise InvalidParameterError(f"expansion base must be odd with |base| >= 3, got {base}")
    if not -HALF <= y0 <= HALF:
        raise InvalidParameterError(f"expansion input must lie in [-1/2, 1/2], got {y0}")
    mm = (abs(base) - 1) // 2
    if abs(y0) == HALF:
        return [BalancedExpansion((), _half_tail(1 if y0 > 0 else -1, base, mm))]
    digits: list[int] = []
    r = y0
    seen: dict[Fraction, int] = {r: 0}
    for _ in range(budget):
        v = r * base
        j = math.floor(v + HALF)
        rem = v - j
        if rem == -HALF:
            # Tie: digit j leaves -1/2, digit j-1 leaves +1/2; both tails are
            # forced from there on.
            head = tuple(digits)
            return [
                BalancedExpansion(head + (j,), _half_tail(-1, base, mm)),
                BalancedExpansion(head + (j - 1,), _half_tail(1, base, mm)),
            ]
        digits.append(j)
        r = rem
        if r in seen:
            start = seen[r]
            return [BalancedExpansion(tuple(digits[:start]), tuple(digits[start:]))]
        seen[r] = len(digits)
    return None


def expansion_value(exp: BalancedExpansion, base: int) -> Fraction:
    """Reconstruct the expanded value sum digit_t * base^{-t}."""
    return _expansion_sum(exp, base, lambda d: Fraction(d))


def _expansion_sum(
    exp: BalancedExpansion, base: int, weight: Callable[[int], Fraction]
) -> Fraction:
    head = Fraction(0)
    for t, d in enumerate(exp.pre, start=1):
        head += weight(d) * Fraction(1, base) ** t
    cyc = Fraction(0)
    for t, d in enumerate(exp.cycle, start=1):
        cyc += weight(d) * Fraction(1, base) ** t
    k = len(exp.cycle)
    if k:
        head += Fraction(1, base) ** len(exp.pre) * cyc * base**k / (base**k - 1)
    return head


def _expansion_base(params: ShiftParams) -> tuple[int, Callable[[int], Fraction]]:
    """(base, digit -> x-shift) for the vertical expansion used by membership.

    For p > 0 this is the parity shift itself; p < 0 runs in the squared
    system, whose digit j' = p*k + t (balanced k, t) carries p*b_k + b_t.
    """
    if params.p > 0:
        return params.p, lambda j: parity_offset(params, j)
    P = params.abs_p
    m = params.m

    def product_shift(jq: int) -> Fraction:
        t = (jq + m) % P - m
        k = (jq - t) // params.p
        if not -m <= k <= m:
            raise InvalidParameterError(f"digit {jq} outside the squared digit range")
        return params.p * parity_offset(params, k) + parity_offset(params, t)

    return params.p * params.p, product_shift


def tiling_membership(
    params: ShiftParams, x: Point2, depth_budget: int = 4096
) -> Membership:
    """Locate the lattice translate of the tile covering x.

    Follows the constructive tiling argument: split off the integer s with
    y - s in [-1/2, 1/2), expand the remainder in balanced digits (exactly,
    via cycle detection), accumulate the x-shift b of that digit string in
    closed form, and pick the integer n with x - b - n in [-1/2, 1/2).
    Boundary is returned whenever y or the x-residual admits two expansions;
    Unresolved only if the expansion budget runs out.
    """
    base, shift_of = _expansion_base(params)
    s = math.floor(x.y + HALF)
    y0 = x.y - s
    if y0 == -HALF:
        return Membership(MembershipKind.BOUNDARY)
    exps = balanced_expansions(y0, base, depth_budget)
    if exps is None:
        return Membership(MembershipKind.UNRESOLVED)
    if len(exps) > 1:
        return Membership(MembershipKind.BOUNDARY)
    b = _expansion_sum(exps[0], base, shift_of)
    u = x.x - b
    n = math.floor(u + HALF)
    if u - n == -HALF:
        return Membership(MembershipKind.BOUNDARY)
    return Membership(MembershipKind.INSIDE, translate=(n, s))


def cover_translates(
    params: ShiftParams, x: Point2, depth_budget: int = 4096
) -> list[tuple[int, int]]:
    """All lattice translates whose (closed) tile copy contains x.

    Exhaustive oracle: every candidate s with y - s in [-1/2, 1/2], every
    balanced expansion of that remainder, every integer n with the x-residual
    in [-1/2, 1/2].  Non-boundary points must be covered exactly once.
    """
    base, shift_of = _expansion_base(params)
    covers: set[tuple[int, int]] = set()
    s_lo = math.ceil(x.y - HALF)
    s_hi = math.floor(x.y + HALF)
    for s in range(s_lo, s_hi + 1):
        exps = balanced_expansions(x.y - s, base, depth_budget)
        if exps is None:
            raise ResourceBudgetError(f"expansion budget exhausted for y = {x.y}")
        for exp in exps:
            u = x.x - _expansion_sum(exp, base, shift_of)
            for n in range(math.ceil(u - HALF), math.floor(u + HALF) + 1):
                covers.add((n, s))
    return sorted(covers)
