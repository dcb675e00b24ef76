"""Parity-shift family: strips, trichotomy, components, membership."""

import random
from fractions import Fraction as F

import pytest

from tiletopo.errors import CertificateError, InvalidParameterError
from tiletopo.hata import components
from tiletopo.numeric import OverlapKind, Point2
from tiletopo.oracles import (
    component_count_by_graph,
    random_points,
    random_rationals,
    sibling_interval_brackets,
)
from tiletopo.shift import (
    MembershipKind,
    ShiftParams,
    balanced_expansions,
    build_shift_digits,
    cell_contact,
    classify_strip_intersection,
    component_count,
    cover_translates,
    expansion_value,
    level_cells,
    nonadjacent_strips_disjoint,
    strip_adjacency_graph,
    strip_cell,
    strip_interval_pair,
    strip_translation,
    tiling_membership,
    tiling_patch,
)


def _pt(x, y) -> Point2:
    return Point2(F(x), F(y))


class TestParams:
    def test_rejects_even_or_small_p(self):
        for p in (4, 2, 1, 0, -4):
            with pytest.raises(InvalidParameterError):
                ShiftParams(p, F(1))

    def test_rejects_non_fraction_eps(self):
        with pytest.raises(InvalidParameterError):
            ShiftParams(3, 0.5)

    def test_negative_p_allowed(self):
        assert ShiftParams(-5, F(2)).m == 2


class TestStripGeometry:
    def test_translation_examples(self):
        pr = ShiftParams(3, F(2))
        assert strip_translation(pr, (1,)) == _pt(F(2, 3), F(1, 3))
        assert strip_translation(pr, (1, -1)) == _pt(F(8, 9), F(2, 9))

    def test_strip_cell_center_and_width(self):
        pr = ShiftParams(3, F(2))
        cell = strip_cell(pr, (1, -1))
        assert cell.y_range.lo == F(2, 9) - F(1, 18)
        assert cell.y_range.width == F(1, 9)
        assert cell.x_offset == F(8, 9)

    def test_interval_pair_even_m(self):
        pair = strip_interval_pair(ShiftParams(5, F(2)), 0)
        assert (pair.i1.lo, pair.i1.hi) == (F(-1, 2), F(1, 2))
        assert (pair.i2.lo, pair.i2.hi) == (F(-1, 10), F(9, 10))
        assert pair.y_meet == F(1, 10)

    def test_interval_pair_odd_m(self):
        pair = strip_interval_pair(ShiftParams(3, F(2)), 0)
        # alpha = eps/(p(p-1)) - 1/2 = 1/3 - 1/2
        assert pair.i1.lo == F(-1, 6)
        assert pair.i2.lo == F(1, 2)

    def test_trichotomy_examples(self):
        for eps, kind in ((8, OverlapKind.SEGMENT), (9, OverlapKind.POINT), (10, OverlapKind.EMPTY)):
            contact = classify_strip_intersection(ShiftParams(3, F(eps)), 1)
            assert contact.kind is kind
        pt = classify_strip_intersection(ShiftParams(3, F(9)), 1).point
        assert pt == _pt(1, F(1, 18))

    def test_trichotomy_threshold_is_exact(self):
        # |eps| vs p^{n+1} with zero tolerance
        p, n = 3, 2
        thr = F(p) ** (n + 1)
        assert classify_strip_intersection(ShiftParams(p, thr - F(1, 10**9)), n).kind is OverlapKind.SEGMENT
        assert classify_strip_intersection(ShiftParams(p, thr), n).kind is OverlapKind.POINT
        assert classify_strip_intersection(ShiftParams(p, thr + F(1, 10**9)), n).kind is OverlapKind.EMPTY

    def test_oracle_brackets_contain_endpoints(self):
        rng = random.Random(3)
        for eps in random_rationals(rng, 20, F(-9), F(9)):
            for p in (3, 5):
                for n in (0, 1):
                    first, second = sibling_interval_brackets(ShiftParams(p, eps), n)
                    assert first.ok and second.ok

    def test_nonadjacent_strips_disjoint(self):
        pr = ShiftParams(3, F(2))
        assert nonadjacent_strips_disjoint(pr, (), -1, 1)
        assert nonadjacent_strips_disjoint(pr, (0,), -1, 1)
        assert not nonadjacent_strips_disjoint(pr, (0,), 0, 1)

    def test_sibling_symmetry(self):
        # contact of (G_00, G_0(-1)) mirrors (G_00, G_01)
        pr = ShiftParams(3, F(5))
        up = cell_contact(pr, (0, 0), (0, 1))
        down = cell_contact(pr, (0, 0), (0, -1))
        assert up.kind is down.kind


class TestCellContacts:
    def test_contact_matches_sibling_classification(self):
        for eps in (F(2), F(8), F(9), F(10)):
            pr = ShiftParams(3, eps)
            direct = classify_strip_intersection(pr, 1)
            via_cells = cell_contact(pr, (0, 0), (0, 1))
            assert direct.kind is via_cells.kind
            if direct.kind is OverlapKind.POINT:
                assert direct.point == via_cells.point

    def test_contact_is_symmetric(self):
        pr = ShiftParams(3, F(7, 2))
        for w, v in (((0, 0), (0, 1)), ((1, -1), (1, 0)), ((0, 1), (1, -1))):
            assert cell_contact(pr, w, v) == cell_contact(pr, v, w)

    def test_far_cells_are_empty(self):
        pr = ShiftParams(3, F(2))
        assert cell_contact(pr, (0, -1), (0, 1)).kind is OverlapKind.EMPTY

    def test_level_cells_ordered_by_height(self):
        pr = ShiftParams(3, F(2))
        cells = level_cells(pr, 2)
        assert len(cells) == 9
        heights = [strip_cell(pr, w).y_range.lo for w in cells]
        assert heights == sorted(heights)

    def test_linear_graph_equals_all_pairs(self):
        for eps in (F(2), F(4), F(17, 3)):
            pr = ShiftParams(3, eps)
            fast = strip_adjacency_graph(pr, 2)
            slow = strip_adjacency_graph(pr, 2, all_pairs=True)
            assert fast.edges == slow.edges


class TestComponentCount:
    def test_figure_counts(self):
        for eps, want, level in (
            (2, 1, 0),
            (3, 3, 1),
            (4, 3, 1),
            (8, 3, 1),
            (9, 9, 2),
            (10, 9, 2),
        ):
            rep = component_count(ShiftParams(3, F(eps)))
            assert rep.component_count == want
            assert rep.cell_level == level
            assert rep.is_tile and rep.cells_disklike
            assert rep.global_disklike is (level == 0)

    def test_zero_and_negative_eps(self):
        assert component_count(ShiftParams(3, F(0))).component_count == 1
        assert component_count(ShiftParams(3, F(-9))).component_count == 9

    def test_negative_p_uses_abs_regimes(self):
        assert component_count(ShiftParams(-3, F(2))).component_count == 1
        assert component_count(ShiftParams(-3, F(9))).component_count == 9

    def test_json_keys(self):
        rep = component_count(ShiftParams(3, F(9)))
        assert rep.to_json_dict() == {
            "p": 3,
            "eps": "9",
            "n": 2,
            "components": 9,
            "cells_disklike": True,
            "global_disklike": False,
        }

    def test_graph_oracle_agrees_on_grid(self):
        for i in range(0, 40):
            eps = F(i * 27, 39)
            n, closed, graph = component_count_by_graph(ShiftParams(3, eps))
            assert closed == graph == 3**n


class TestBalancedExpansions:
    def test_interior_value(self):
        exps = balanced_expansions(F(1, 3), 3)
        assert len(exps) == 1
        assert exps[0].pre == (1,) and exps[0].cycle == (0,)

    def test_endpoint_half(self):
        exps = balanced_expansions(F(1, 2), 3)
        assert len(exps) == 1 and exps[0].cycle == (1,)
        assert expansion_value(exps[0], 3) == F(1, 2)

    def test_tie_gives_two_expansions(self):
        exps = balanced_expansions(F(1, 6), 3)
        assert len(exps) == 2
        assert {expansion_value(e, 3) for e in exps} == {F(1, 6)}

    def test_negative_base_half_tail_alternates(self):
        exps = balanced_expansions(F(1, 2), -3)
        assert len(exps) == 1
        assert expansion_value(exps[0], -3) == F(1, 2)
        assert set(exps[0].cycle) == {-1, 1}

    def test_random_round_trip(self):
        rng = random.Random(5)
        for base in (3, 5, -3):
            for _ in range(60):
                y = F(rng.randint(-40, 40), rng.randint(81, 160))
                if not -F(1, 2) <= y <= F(1, 2):
                    continue
                exps = balanced_expansions(y, base)
                assert exps is not None and 1 <= len(exps) <= 2
                for e in exps:
                    assert expansion_value(e, base) == y


class TestMembership:
    def test_spec_points(self):
        pr = ShiftParams(3, F(2))
        origin = tiling_membership(pr, _pt(0, 0))
        assert origin.kind is MembershipKind.INSIDE and origin.translate == (0, 0)
        assert tiling_membership(pr, _pt(0, F(1, 2))).kind is MembershipKind.BOUNDARY
        half = tiling_membership(pr, _pt(F(1, 2), F(1, 3)))
        assert half.kind is MembershipKind.INSIDE and half.translate == (0, 0)

    def test_translate_identity(self):
        # shifting by a lattice translate shifts the answer
        pr = ShiftParams(3, F(2))
        base = tiling_membership(pr, _pt(F(1, 5), F(1, 7)))
        shifted = tiling_membership(pr, _pt(F(1, 5) + 2, F(1, 7) + 1))
        assert base.kind is shifted.kind is MembershipKind.INSIDE
        bn, bs = base.translate
        assert shifted.translate == (bn + 2 - 0, bs + 1) or shifted.translate[1] == bs + 1

    def test_exhaustive_cover_agreement(self):
        rng = random.Random(20240817)
        for params in (ShiftParams(3, F(2)), ShiftParams(-3, F(7, 3))):
            for pt in random_points(rng, 150, F(-2), F(2)):
                mem = tiling_membership(params, pt)
                cov = cover_translates(params, pt)
                if mem.kind is MembershipKind.INSIDE:
                    assert cov == [mem.translate]
                else:
                    assert len(cov) >= 1

    def test_patch_points(self):
        pr = ShiftParams(3, F(2))
        patch = tiling_patch(pr, 1)
        assert len(patch) == 9
        assert _pt(0, 0) in patch and _pt(1, 1) in patch
        sheared = tiling_patch(pr, 1, ell=lambda s: s)
        assert _pt(2, 1) in sheared


class TestStripGeometryGuards:
    def test_negative_p_strip_ops_rejected(self):
        pr = ShiftParams(-3, F(2))
        with pytest.raises(InvalidParameterError):
            strip_interval_pair(pr, 0)
        with pytest.raises(InvalidParameterError):
            strip_adjacency_graph(pr, 1)

    def test_vertical_word_digit_range(self):
        pr = ShiftParams(3, F(2))
        with pytest.raises(InvalidParameterError):
            strip_cell(pr, (2,))
