"""Family B: tiles whose diagonal digits are shifted by eps along (1,1).

Digits are (i + a_ij, j + a_ij) over i, j in {0..|p|-1} with a_ij = eps
exactly on the diagonal i = j.  Connectivity flips at |eps| =
(|p|-1)^2/(|p|-2); below the threshold an explicit contact witness plus a
piece-adjacency chain certifies connectedness, above it an exact separation
along the line y = x + 1/p certifies the split.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import hata
from .errors import CertificateError, InvalidParameterError
from .ifs import AffineMap, DigitSet, compose, fixed_point, map_equal
from .numeric import Point2, Segment, format_rational

LINE_MAIN_DIAGONAL = "L5"  # y = x
LINE_SHIFTED_DIAGONAL = "L3"  # y = x + 1/p
LINE_SECOND_LEVEL = "L6"  # y = x + 1/p - 1/p^2


@dataclass(frozen=True)
class DiagParams:
    """Parameters (p, eps) with |p| >= 3 (p need not be odd here)."""

    p: int
    eps: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or abs(self.p) < 3:
            raise InvalidParameterError(f"p must be an integer with |p| > 2, got {self.p!r}")
        if not isinstance(self.eps, Fraction):
            raise InvalidParameterError(f"eps must be a Fraction, got {type(self.eps).__name__}")

    @property
    def abs_p(self) -> int:
        return abs(self.p)


def diag_offset(params: DiagParams, i: int, j: int) -> Fraction:
    """The digit shift a_ij: eps on the diagonal, 0 off it."""
    return params.eps if i == j else Fraction(0)


def _check_pair(params: DiagParams, pair: tuple[int, int]) -> tuple[int, int]:
    i, j = pair
    P = params.abs_p
    if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < P and 0 <= j < P):
        raise InvalidParameterError(f"digit pair {pair!r} outside {{0..{P - 1}}}^2")
    return (i, j)


def diag_digit_index(params: DiagParams, i: int, j: int) -> int:
    """Index of digit (i + a_ij, j + a_ij) in lexicographic (i, j) order."""
    _check_pair(params, (i, j))
    return i * params.abs_p + j


def build_diag_digits(params: DiagParams) -> DigitSet:
    """The p^2 digits (i + a_ij, j + a_ij), i outer and j inner over 0..|p|-1."""
    P = params.abs_p
    digits = tuple(
        Point2(Fraction(i) + diag_offset(params, i, j), Fraction(j) + diag_offset(params, i, j))
        for i in range(P)
        for j in range(P)
    )
    return DigitSet(params.p, digits)


def piece_map(params: DiagParams, i: int, j: int) -> AffineMap:
    """The contraction f_{i,j}(x) = (x + digit)/p."""
    _check_pair(params, (i, j))
    d = Point2(Fraction(i) + diag_offset(params, i, j), Fraction(j) + diag_offset(params, i, j))
    return AffineMap.from_digit(params.p, d)


@dataclass(frozen=True)
class FixedPointTable:
    """Fixed points digit/(p-1) of the eight corner and edge maps."""

    params: DiagParams
    entries: dict[tuple[int, int], Point2]

    def point(self, i: int, j: int) -> Point2:
        return self.entries[(i, j)]


def fixed_point_table(params: DiagParams) -> FixedPointTable:
    """Fixed points of the maps used by the adjacency and contact arguments."""
    P = params.abs_p
    pairs = [
        (0, 0),
        (1, 0),
        (0, 1),
        (1, P - 1),
        (0, P - 1),
        (P - 1, 0),
        (P - 1, 1),
        (P - 1, P - 1),
    ]
    return FixedPointTable(
        params, {pair: fixed_point(piece_map(params, *pair)) for pair in pairs}
    )


def _require_positive_p(params: DiagParams, what: str) -> None:
    # The witness identities use radix geometry of the positive-p system; for
    # p < 0 the connectivity theorem is stated in |p| and certificates are
    # issued for the |p| system.
    if params.p < 0:
        raise InvalidParameterError(f"{what} requires p > 0; use is_connected/connectivity_certificate for p < 0")


def adjacency_witness(
    params: DiagParams, a: tuple[int, int], b: tuple[int, int]
) -> Point2 | None:
    """An exact common point of two neighboring pieces, if a pattern applies.

    Patterns: horizontal neighbors (i,j),(i+1,j) with i != j != i+1; vertical
    neighbors by the x<->y symmetry; the anti-diagonal pair (i+1,i),(i,i+1);
    and consecutive diagonal pieces (i,i),(i+1,i+1).  The point is computed
    under the first map and verified exactly under the second.
    """
    _require_positive_p(params, "adjacency_witness")
    a = _check_pair(params, a)
    b = _check_pair(params, b)
    if a == b:
        return None
    P = params.abs_p
    tbl = fixed_point_table(params)

    def verified(m_first: AffineMap, t_first: Point2, m_second: AffineMap, t_second: Point2) -> Point2:
        w1 = m_first.apply(t_first)
        w2 = m_second.apply(t_second)
        if w1 != w2:
            raise CertificateError(f"witness mismatch for pieces {a} and {b}: {w1} != {w2}")
        return w1

    for lo, hi in ((a, b), (b, a)):
        i, j = lo
        # horizontal neighbors: (i, j) and (i+1, j), neither on the diagonal
        if hi == (i + 1, j) and i != j and i + 1 != j:
            return verified(
                piece_map(params, i, j), tbl.point(P - 1, 1),
                piece_map(params, i + 1, j), tbl.point(0, 1),
            )
        # vertical neighbors: (i, j) and (i, j+1), neither on the diagonal
        if hi == (i, j + 1) and j != i and j + 1 != i:
            return verified(
                piece_map(params, i, j), tbl.point(1, P - 1),
                piece_map(params, i, j + 1), tbl.point(1, 0),
            )
        # anti-diagonal contact: (i+1, i) and (i, i+1)
        if j + 1 == i and hi == (j, i):
            return verified(
                piece_map(params, i, j), tbl.point(0, P - 1),
                piece_map(params, j, i), tbl.point(P - 1, 0),
            )
        # consecutive diagonal pieces: (i, i) and (i+1, i+1)
        if i == j and hi == (i + 1, j + 1):
            return verified(
                piece_map(params, i, i), tbl.point(P - 1, P - 1),
                piece_map(params, i + 1, i + 1), tbl.point(0, 0),
            )
    return None


def diag_spine(params: DiagParams) -> Segment:
    """The diagonal subsystem's attractor: the segment from t_00 to t_{p-1,p-1}."""
    _require_positive_p(params, "diag_spine")
    tbl = fixed_point_table(params)
    return Segment(tbl.point(0, 0), tbl.point(params.abs_p - 1, params.abs_p - 1))


def _on_diagonal_line(pt: Point2, offset: Fraction) -> bool:
    return pt.y - pt.x == offset


def _between_on_line(pt: Point2, seg: Segment) -> bool:
    lo, hi = sorted((seg.a.x, seg.b.x))
    return lo <= pt.x <= hi


def second_level_contact_segment(params: DiagParams) -> Segment:
    """The merged segment pi_1 = union of f_{p-2,p-1} . f_{i+1,i} (spine).

    The p-1 sub-segments chain end to end (verified exactly); the merge lives
    on the line y = x + 1/p - 1/p^2.
    """
    _require_positive_p(params, "second_level_contact_segment")
    P = params.abs_p
    spine = diag_spine(params)
    outer = piece_map(params, P - 2, P - 1)
    pieces: list[Segment] = []
    for i in range(P - 1):
        comp = compose(outer, piece_map(params, i + 1, i))
        pieces.append(Segment(comp.apply(spine.a), comp.apply(spine.b)))
    offset = Fraction(1, P) - Fraction(1, P * P)
    for seg in pieces:
        if not (_on_diagonal_line(seg.a, offset) and _on_diagonal_line(seg.b, offset)):
            raise CertificateError("second-level contact segment left its line")
    for left, right in zip(pieces, pieces[1:]):
        if left.b != right.a:
            raise CertificateError(
                f"second-level contact sub-segments fail to chain: {left.b} != {right.a}"
            )
    return Segment(pieces[0].a, pieces[-1].b)


def top_contact_segment(params: DiagParams) -> Segment:
    """pi_2 = f_{p-2,p-1}(spine), on the line y = x + 1/p."""
    _require_positive_p(params, "top_contact_segment")
    P = params.abs_p
    spine = diag_spine(params)
    m = piece_map(params, P - 2, P - 1)
    return Segment(m.apply(spine.a), m.apply(spine.b))


def _upper_piece_max_x_on_contact_line(params: DiagParams, i: int, j: int) -> Fraction | None:
    """Exact max x-coordinate of f_{i,j}(T) on the line y = x + 1/p, for i < j.

    The preimage constraint is y = x + 1 + i - j on T, whose diagonal extent
    is |y - x| <= 1: for j = i+1 the slice is the diagonal spine (max corner
    t_{p-1,p-1}), for j = i+2 it is the single corner t_{p-1,0}, otherwise
    empty.
    """
    if j == i + 1:
        top = fixed_point_table(params).point(params.abs_p - 1, params.abs_p - 1)
        return piece_map(params, i, j).apply(top).x
    if j == i + 2:
        corner = fixed_point_table(params).point(params.abs_p - 1, 0)
        return piece_map(params, i, j).apply(corner).x
    return None


@dataclass(frozen=True)
class ConnectivityCertificate:
    """Exact evidence for the connectivity verdict of one family-B tile."""

    params: DiagParams
    verdict: str  # "Connected" | "Disconnected"
    case_tag: str  # "I" | "II" | "III" | "IV"
    line_tag: str  # "L3" | "L5" | "L6"
    witness: Point2 | None
    segment: Segment | None
    separation: tuple[Fraction, Fraction] | None
    chain: hata.PieceGraph | None
    contact_pair: tuple[tuple[int, int], tuple[int, int]] | None
    mirrored: bool

    @property
    def chain_length(self) -> int:
        return len(self.chain.edges) if self.chain is not None else 0

    def to_json_dict(self) -> dict:
        return {
            "p": self.params.p,
            "eps": format_rational(self.params.eps),
            "verdict": self.verdict,
            "case": self.case_tag,
            "witness": None
            if self.witness is None
            else [format_rational(self.witness.x), format_rational(self.witness.y)],
            "line": self.line_tag,
            "chain_length": self.chain_length,
            "separation": None
            if self.separation is None
            else [format_rational(self.separation[0]), format_rational(self.separation[1])],
            "mirrored": self.mirrored,
        }


def _norm_segment(seg: Segment) -> Segment:
    if (seg.b.x, seg.b.y) < (seg.a.x, seg.a.y):
        return Segment(seg.b, seg.a)
    return seg


def _mirror_point(params: DiagParams, pt: Point2) -> Point2:
    """The isometry (x, y) -> (1-y, 1-x) carrying T_eps onto T_{-eps}."""
    return Point2(1 - pt.y, 1 - pt.x)


def _mirror_pair(params: DiagParams, pair: tuple[int, int]) -> tuple[int, int]:
    P = params.abs_p
    return (P - 1 - pair[1], P - 1 - pair[0])


def _adjacency_chain_edges(
    params: DiagParams,
) -> dict[frozenset, hata.EdgeWitness]:
    """All pattern edges of the piece graph, with witnesses verified."""
    P = params.abs_p
    edges: dict[frozenset, hata.EdgeWitness] = {}

    def add(a: tuple[int, int], b: tuple[int, int]) -> None:
        if adjacency_witness(params, a, b) is not None:
            edges[frozenset((a, b))] = hata.EdgeWitness.NONEMPTY

    for i in range(P):
        for j in range(P):
            if i + 1 < P and i != j and i + 1 != j:
                add((i, j), (i + 1, j))
            if j + 1 < P and j != i and j + 1 != i:
                add((i, j), (i, j + 1))
    for i in range(P - 1):
        add((i + 1, i), (i, i + 1))
        add((i, i), (i + 1, i + 1))
    return edges


def _case_geometry(
    work: DiagParams,
) -> tuple[str, str, str, Point2 | None, Segment | None, tuple[Fraction, Fraction] | None, tuple]:
    """Case ladder on the normalized (p > 0, eps >= 0) system."""
    p = work.abs_p
    e = work.eps
    tbl = fixed_point_table(work)
    t_low = Fraction(p * (p - 1) * (p - 2), p * p - p - 1)
    t1 = Fraction((p - 1) ** 2, p)
    t2 = Fraction(p - 1)
    t3 = Fraction((p - 1) ** 2, p - 2)

    if e <= t1:
        witness = piece_map(work, p - 2, p - 1).apply(tbl.point(p - 1, 0))
        if witness != Point2(Fraction(p - 1, p), Fraction(p - 1, p)):
            raise CertificateError("case I witness differs from its closed form")
        spine = diag_spine(work)
        if not (_on_diagonal_line(witness, Fraction(0)) and _between_on_line(witness, spine)):
            raise CertificateError("case I witness left the diagonal spine")
        # locate the diagonal piece whose spine image contains the witness
        host: tuple[int, int] | None = None
        for i in range(p):
            comp = piece_map(work, i, i)
            img = Segment(comp.apply(spine.a), comp.apply(spine.b))
            if _between_on_line(witness, img):
                host = (i, i)
                break
        if host is None:
            raise CertificateError("case I witness not on any diagonal piece's spine image")
        return ("Connected", "I", LINE_MAIN_DIAGONAL, witness, spine, None, ((p - 2, p - 1), host))

    if e <= t2:
        if not e >= t_low:
            raise CertificateError("case II entered below its lower threshold")
        witness = compose(piece_map(work, 0, 0), piece_map(work, 1, p - 1)).apply(tbl.point(0, p - 1))
        expected = Point2(Fraction(1, p * p) + e / p, Fraction(1, p) + e / p)
        if witness != expected:
            raise CertificateError("case II witness differs from its closed form")
        seg = second_level_contact_segment(work)
        if not (
            _on_diagonal_line(witness, Fraction(1, p) - Fraction(1, p * p))
            and _between_on_line(witness, seg)
        ):
            raise CertificateError("case II witness left the second-level contact segment")
        return ("Connected", "II", LINE_SECOND_LEVEL, witness, seg, None, ((0, 0), (p - 2, p - 1)))

    if e <= t3:
        witness = piece_map(work, 0, 0).apply(tbl.point(0, p - 1))
        expected = Point2(e / p, (e + 1) / p)
        if witness != expected:
            raise CertificateError("case III witness differs from its closed form")
        seg = top_contact_segment(work)
        if not (_on_diagonal_line(witness, Fraction(1, p)) and _between_on_line(witness, seg)):
            raise CertificateError("case III witness left the top contact segment")
        return ("Connected", "III", LINE_SHIFTED_DIAGONAL, witness, seg, None, ((0, 0), (p - 2, p - 1)))

    # Disconnected: the strictly-upper pieces vs everything else, split on L3.
    upper_max = max(
        x
        for i in range(p)
        for j in range(i + 1, p)
        if (x := _upper_piece_max_x_on_contact_line(work, i, j)) is not None
    )
    expected_max = e / (p * (p - 1)) + Fraction(p - 1, p)
    if upper_max != expected_max:
        raise CertificateError("separation left edge differs from its closed form")
    # each diagonal piece f_{i,i} meets L3 in the single point x = (e+i)/p
    rest_min = min((e + i) / Fraction(p) for i in range(p))
    if rest_min != e / p:
        raise CertificateError("separation right edge differs from its closed form")
    if not upper_max < rest_min:
        raise CertificateError("separation failed to be strict in the disconnected case")
    return ("Disconnected", "IV", LINE_SHIFTED_DIAGONAL, None, None, (upper_max, rest_min), None)


def connectivity_certificate(params: DiagParams) -> ConnectivityCertificate:
    """Decide connectivity with an exact witness or an exact separation.

    The ladder runs on (|p|, |eps|); for eps < 0 the resulting geometry is
    carried back through the isometry (x,y) -> (1-y, 1-x), and the adjacency
    chain is rebuilt with the true eps (its identities are polynomial in eps).
    """
    work = DiagParams(params.abs_p, abs(params.eps))
    verdict, case_tag, line_tag, witness, segment, separation, contact = _case_geometry(work)
    mirrored = params.eps < 0

    if mirrored:
        if witness is not None:
            witness = _mirror_point(work, witness)
        if segment is not None:
            segment = _norm_segment(
                Segment(_mirror_point(work, segment.a), _mirror_point(work, segment.b))
            )
        if separation is not None:
            shift = 1 - Fraction(1, work.abs_p)
            separation = (shift - separation[1], shift - separation[0])
        if contact is not None:
            contact = (_mirror_pair(work, contact[0]), _mirror_pair(work, contact[1]))

    chain: hata.PieceGraph | None = None
    contact_pair = None
    if verdict == "Connected":
        chain_params = DiagParams(params.abs_p, params.eps)
        edges = _adjacency_chain_edges(chain_params)
        assert contact is not None
        a, b = contact
        if a != b:
            edges.setdefault(frozenset((a, b)), hata.EdgeWitness.NONEMPTY)
        nodes = tuple((i, j) for i in range(work.abs_p) for j in range(work.abs_p))
        chain = hata.PieceGraph(nodes, edges)
        if not hata.is_connected_hata(chain):
            raise CertificateError("piece chain fails to connect despite a Connected verdict")
        contact_pair = (a, b)

    return ConnectivityCertificate(
        params=params,
        verdict=verdict,
        case_tag=case_tag,
        line_tag=line_tag,
        witness=witness,
        segment=segment,
        separation=separation,
        chain=chain,
        contact_pair=contact_pair,
        mirrored=mirrored,
    )


def is_connected(params: DiagParams) -> bool:
    """Closed-form connectivity |eps| <= (|p|-1)^2/(|p|-2), cross-checked."""
    P = params.abs_p
    closed = abs(params.eps) <= Fraction((P - 1) ** 2, P - 2)
    cert = connectivity_certificate(params)
    if closed != (cert.verdict == "Connected"):
        raise CertificateError("closed-form connectivity disagrees with the certificate")
    return closed


@dataclass(frozen=True)
class OscFailureWitness:
    """Two distinct composition pairs that produce identical maps."""

    l: int
    k: int
    pair: tuple[AffineMap, AffineMap]
    mirror_pair: tuple[AffineMap, AffineMap]
    pieces: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    mirror_pieces: tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def osc_failure_witness(params: DiagParams) -> OscFailureWitness | None:
    """Coinciding second-level maps when eps = l + k/p, which rules out the OSC.

    Needs integers l in {0..|p|-2}, k in {1..|p|-1} with eps = l + k/p; the
    two compositions (and their mirrors) are built and compared exactly.
    """
    P = params.abs_p
    scaled = params.eps * params.p
    if scaled.denominator != 1:
        return None
    t = scaled.numerator
    k = t % P
    if k == 0:
        return None
    l = (t - k) // params.p
    if not 0 <= l <= P - 2:
        return None
    first = compose(piece_map(params, 0, 0), piece_map(params, 0, P - 1))
    second = compose(piece_map(params, l, l + 1), piece_map(params, k, k - 1))
    mirror_first = compose(piece_map(params, 0, 0), piece_map(params, P - 1, 0))
    mirror_second = compose(piece_map(params, l + 1, l), piece_map(params, k - 1, k))
    if not (map_equal(first, second) and map_equal(mirror_first, mirror_second)):
        raise CertificateError("composition identity failed for eps = l + k/p")
    return OscFailureWitness(
        l=l,
        k=k,
        pair=(first, second),
        mirror_pair=(mirror_first, mirror_second),
        pieces=(((0, 0), (0, P - 1)), ((l, l + 1), (k, k - 1))),
        mirror_pieces=(((0, 0), (P - 1, 0)), ((l + 1, l), (k - 1, k))),
    )
