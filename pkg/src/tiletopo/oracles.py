"""Independent cross-checks for the closed-form results.

Each routine re-derives a quantity by a different route than the library
implementation (partial sums with tail brackets, raw graph search, brute
pairwise enumeration) so tests and the `oracle` CLI subcommand can compare
the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import hata
from .diag import DiagParams, connectivity_certificate
from .errors import CertificateError
from .numeric import Interval, Point2
from .qp import census_bruteforce, local_finiteness_census, translate_set
from .shift import (
    ShiftParams,
    parity_offset,
    strip_adjacency_graph,
    strip_interval_pair,
)


@dataclass(frozen=True)
class EndpointBracket:
    """Partial-sum bracket that must contain a claimed exact endpoint."""

    claimed: Fraction
    lo: Fraction
    hi: Fraction

    @property
    def ok(self) -> bool:
        return self.lo <= self.claimed <= self.hi


def sibling_interval_brackets(
    params: ShiftParams, n: int, terms: int = 120
) -> tuple[EndpointBracket, EndpointBracket]:
    """Re-derive the sibling cross-section endpoints from boundary expansions.

    At the meeting ordinate the lower cell's points carry the all-(+m)
    vertical tail and the upper cell's the all-(-m) tail; the horizontal
    offsets are the corresponding series of parity shifts.  Partial sums
    plus an exact tail bound bracket the claimed closed-form endpoints.
    """
    if params.p < 0:
        raise CertificateError("sibling strips are formulated for p > 0")
    p = params.p
    m = params.m
    tail_digit = parity_offset(params, m)  # = parity_offset at -m as well

    def bracket(start_exp: int, head: Fraction) -> tuple[Fraction, Fraction]:
        partial = head
        for t in range(start_exp, start_exp + terms):
            partial += tail_digit / Fraction(p) ** t
        rest = abs(tail_digit) * Fraction(1, p) ** (start_exp + terms - 1) / (p - 1)
        return (partial - rest, partial + rest)

    # lower cell: vertical word 0^n then digit 0, tail all +m starting at n+2
    lo1, hi1 = bracket(n + 2, Fraction(0))
    # upper sibling: vertical word 0^n then digit 1, tail all -m
    lo2, hi2 = bracket(n + 2, parity_offset(params, 1) / Fraction(p) ** (n + 1))

    pair = strip_interval_pair(params, n)
    alpha = pair.i1.lo
    beta = pair.i2.lo
    first = EndpointBracket(alpha, lo1 - Fraction(1, 2), hi1 - Fraction(1, 2))
    second = EndpointBracket(beta, lo2 - Fraction(1, 2), hi2 - Fraction(1, 2))
    if beta - alpha != params.eps / Fraction(p) ** (n + 1):
        raise CertificateError("sibling endpoints violate the exact offset identity")
    return (first, second)


def component_count_by_graph(params: ShiftParams) -> tuple[int, int, int]:
    """(level, closed-form count, graph count) for the interior components.

    The graph route builds the level-n cell contact graph with interior
    (segment) edges only and counts its connected components directly.
    """
    P = params.abs_p
    e = abs(params.eps)
    n = 0
    while e >= Fraction(P) ** (n + 1):
        n += 1
    closed = P**n
    graph = strip_adjacency_graph(params, n, closure=False)
    count, _ = hata.components(graph)
    return (n, closed, count)


def diag_flip_vs_closed_form(p: int, eps_values: Sequence[Fraction]) -> list[tuple[Fraction, bool, str]]:
    """Certificate verdicts next to the closed form over a grid of eps."""
    rows = []
    threshold = Fraction((abs(p) - 1) ** 2, abs(p) - 2)
    for eps in eps_values:
        cert = connectivity_certificate(DiagParams(p, Fraction(eps)))
        closed = abs(Fraction(eps)) <= threshold
        if closed != (cert.verdict == "Connected"):
            raise CertificateError(f"connectivity mismatch at eps={eps}")
        rows.append((Fraction(eps), closed, cert.case_tag))
    return rows


def census_agreement(params: ShiftParams, c, k: int) -> tuple[int, int]:
    """(fast count, brute-force count) of difference classes at small levels."""
    fast = local_finiteness_census(params, c, k).distinct_classes
    brute = census_bruteforce(translate_set(params, k).points, c)
    return (fast, brute)


def random_rationals(
    rng: random.Random, count: int, lo: Fraction, hi: Fraction, max_den: int = 64
) -> list[Fraction]:
    """Seeded rationals in [lo, hi] with denominators up to max_den."""
    out = []
    for _ in range(count):
        den = rng.randint(1, max_den)
        num = rng.randint(int(lo * den), int(hi * den))
        out.append(Fraction(num, den))
    return out


def random_points(
    rng: random.Random, count: int, lo: Fraction, hi: Fraction, max_den: int = 64
) -> list[Point2]:
    """Seeded rational points in the square [lo, hi]^2."""
    vals = random_rationals(rng, 2 * count, lo, hi, max_den)
    return [Point2(vals[2 * i], vals[2 * i + 1]) for i in range(count)]
