"""Diagonal-shift family: witnesses, certificates, OSC failure."""

import random
from fractions import Fraction as F

import pytest

from tiletopo.diag import (
    ConnectivityCertificate,
    DiagParams,
    adjacency_witness,
    connectivity_certificate,
    diag_spine,
    fixed_point_table,
    is_connected,
    osc_failure_witness,
    piece_map,
    second_level_contact_segment,
    top_contact_segment,
)
from tiletopo.errors import InvalidParameterError
from tiletopo.ifs import compose, map_equal
from tiletopo.numeric import Point2


def _pt(x, y) -> Point2:
    return Point2(F(x), F(y))


class TestFixedPoints:
    def test_table_matches_digit_over_p_minus_1(self):
        pr = DiagParams(3, F(3))
        tbl = fixed_point_table(pr)
        assert tbl.point(0, 0) == _pt(F(3, 2), F(3, 2))
        assert tbl.point(2, 2) == _pt(F(5, 2), F(5, 2))
        assert tbl.point(0, 2) == _pt(0, 1)
        assert tbl.point(2, 0) == _pt(1, 0)
        assert tbl.point(1, 0) == _pt(F(1, 2), 0)
        for (i, j), t in tbl.entries.items():
            assert piece_map(pr, i, j).apply(t) == t


class TestAdjacencyWitness:
    def test_excluded_pattern_returns_none(self):
        # (0,1),(1,1) has i+1 = j: no horizontal identity applies
        assert adjacency_witness(DiagParams(3, F(1)), (0, 1), (1, 1)) is None

    def test_antidiagonal_composition_value(self):
        # f_{1,0}(t_{0,2}) = f_{0,1}(t_{2,0}) = ((i+1)/p, (i+1)/p) with i = 0
        for eps in (F(0), F(1), F(-2), F(7, 3)):
            assert adjacency_witness(DiagParams(3, eps), (1, 0), (0, 1)) == _pt(F(1, 3), F(1, 3))
            assert adjacency_witness(DiagParams(3, eps), (2, 1), (1, 2)) == _pt(F(2, 3), F(2, 3))

    def test_diagonal_pair_example(self):
        assert adjacency_witness(DiagParams(3, F(3)), (0, 0), (1, 1)) == _pt(F(11, 6), F(11, 6))

    def test_order_insensitive(self):
        pr = DiagParams(3, F(2))
        assert adjacency_witness(pr, (0, 1), (1, 1)) == adjacency_witness(pr, (1, 1), (0, 1))
        assert adjacency_witness(pr, (1, 0), (0, 1)) == adjacency_witness(pr, (0, 1), (1, 0))

    def test_closed_forms_for_all_patterns(self):
        rng = random.Random(13)
        for p in (3, 4, 5):
            for _ in range(20):
                eps = F(rng.randint(-27, 27), rng.randint(1, 9))
                pr = DiagParams(p, eps)
                for i in range(p):
                    for j in range(p):
                        if i + 1 < p and i != j and i + 1 != j:
                            w = adjacency_witness(pr, (i, j), (i + 1, j))
                            assert w == Point2(F(i + 1, p), (F(j) + F(1, p - 1)) / p)
                        if j + 1 < p and j != i and j + 1 != i:
                            w = adjacency_witness(pr, (i, j), (i, j + 1))
                            assert w == Point2((F(i) + F(1, p - 1)) / p, F(j + 1, p))
                for i in range(p - 1):
                    anti = adjacency_witness(pr, (i + 1, i), (i, i + 1))
                    assert anti == Point2(F(i + 1, p), F(i + 1, p))
                    diag = adjacency_witness(pr, (i, i), (i + 1, i + 1))
                    want = (F(i + 1) + eps + eps / (p - 1)) / p
                    assert diag == Point2(want, want)


class TestContactSegments:
    def test_spine_is_diagonal(self):
        seg = diag_spine(DiagParams(3, F(3)))
        assert seg.a == _pt(F(3, 2), F(3, 2)) and seg.b == _pt(F(5, 2), F(5, 2))

    def test_top_contact_on_l3(self):
        seg = top_contact_segment(DiagParams(3, F(3)))
        assert seg.a.y - seg.a.x == F(1, 3) and seg.b.y - seg.b.x == F(1, 3)

    def test_second_level_chains_exactly(self):
        seg = second_level_contact_segment(DiagParams(3, F(3, 2)))
        line = F(1, 3) - F(1, 9)
        assert seg.a.y - seg.a.x == line and seg.b.y - seg.b.x == line


class TestCertificates:
    def test_case_ladder_for_p3(self):
        cases = {
            F(0): ("Connected", "I"),
            F(2, 3): ("Connected", "I"),
            F(4, 3): ("Connected", "I"),
            F(3, 2): ("Connected", "II"),
            F(2): ("Connected", "II"),
            F(3): ("Connected", "III"),
            F(4): ("Connected", "III"),
            F(9, 2): ("Disconnected", "IV"),
            F(5): ("Disconnected", "IV"),
        }
        for eps, (verdict, tag) in cases.items():
            cert = connectivity_certificate(DiagParams(3, eps))
            assert (cert.verdict, cert.case_tag) == (verdict, tag), f"eps={eps}"

    def test_case_three_witness_example(self):
        cert = connectivity_certificate(DiagParams(3, F(3)))
        assert cert.witness == _pt(1, F(4, 3))
        assert cert.line_tag == "L3"
        assert cert.chain is not None and cert.chain_length >= 9

    def test_case_one_witness_example(self):
        cert = connectivity_certificate(DiagParams(3, F(0)))
        assert cert.witness == _pt(F(2, 3), F(2, 3))
        assert cert.case_tag == "I" and cert.line_tag == "L5"

    def test_disconnected_separation_example(self):
        cert = connectivity_certificate(DiagParams(3, F(5)))
        assert cert.verdict == "Disconnected"
        assert cert.separation == (F(3, 2), F(5, 3))
        assert cert.separation[0] < cert.separation[1]
        assert cert.witness is None and cert.chain is None

    def test_negative_eps_mirrors(self):
        plus = connectivity_certificate(DiagParams(3, F(3)))
        minus = connectivity_certificate(DiagParams(3, F(-3)))
        assert minus.mirrored and not plus.mirrored
        assert minus.verdict == plus.verdict and minus.case_tag == plus.case_tag
        # the isometry (x,y) -> (1-y, 1-x) carries the witness across
        assert minus.witness == Point2(1 - plus.witness.y, 1 - plus.witness.x)

    def test_negative_p_uses_abs_system(self):
        cert = connectivity_certificate(DiagParams(-3, F(3)))
        assert cert.verdict == "Connected"
        assert is_connected(DiagParams(-3, F(5))) is False

    def test_json_keys(self):
        payload = connectivity_certificate(DiagParams(3, F(4))).to_json_dict()
        assert set(payload) == {
            "p",
            "eps",
            "verdict",
            "case",
            "witness",
            "line",
            "chain_length",
            "separation",
            "mirrored",
        }
        assert payload["witness"] == ["4/3", "5/3"]
        assert payload["separation"] is None


class TestThreshold:
    def test_flip_at_closed_form(self):
        for p in (3, 4, 5, 7):
            thr = F((p - 1) ** 2, p - 2)
            assert is_connected(DiagParams(p, thr))
            assert is_connected(DiagParams(p, thr - F(1, 1000)))
            assert not is_connected(DiagParams(p, thr + F(1, 1000)))

    def test_grid_agreement(self):
        for p in (3, 4, 5, 7):
            thr = F((p - 1) ** 2, p - 2)
            for i in range(12 * (p + 2) + 1):
                eps = F(i, 12)
                cert = connectivity_certificate(DiagParams(p, eps))
                assert (cert.verdict == "Connected") == (eps <= thr)


class TestOscFailure:
    def test_third_example(self):
        w = osc_failure_witness(DiagParams(3, F(1, 3)))
        assert w is not None and (w.l, w.k) == (0, 1)
        assert map_equal(w.pair[0], w.pair[1])
        assert map_equal(w.mirror_pair[0], w.mirror_pair[1])
        # composed map is x/9 + (1/9, 1/3)
        assert w.pair[0].scale_inv == F(1, 9)
        assert w.pair[0].offset == _pt(F(1, 9), F(1, 3))

    def test_no_witness_off_the_lattice(self):
        assert osc_failure_witness(DiagParams(3, F(7, 3))) is None
        assert osc_failure_witness(DiagParams(3, F(1, 2))) is None
        assert osc_failure_witness(DiagParams(3, F(2))) is None

    def test_all_lattice_values(self):
        for p in (3, 5):
            for l in range(p - 1):
                for k in range(1, p):
                    eps = F(l) + F(k, p)
                    w = osc_failure_witness(DiagParams(p, eps))
                    assert w is not None and (w.l, w.k) == (l, k)
                    first = compose(piece_map(DiagParams(p, eps), 0, 0), piece_map(DiagParams(p, eps), 0, p - 1))
                    assert map_equal(w.pair[0], first)


class TestGuards:
    def test_small_p_rejected(self):
        with pytest.raises(InvalidParameterError):
            DiagParams(2, F(1))

    def test_witness_geometry_needs_positive_p(self):
        with pytest.raises(InvalidParameterError):
            adjacency_witness(DiagParams(-3, F(1)), (0, 0), (1, 1))
