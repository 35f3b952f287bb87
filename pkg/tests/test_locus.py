"""Singular locus of a general quasismooth member: vertex germs, edge
point counts, curve strata, and the weight-one lifting map."""

import pytest

from hyperblow.locus import (
    HypothesisViolated,
    StratumKind,
    edge_stratum,
    lift_germ,
    lift_singular_locus,
    singular_locus,
    vertex_stratum,
)
from hyperblow.quotients import quotient, same_germ
from hyperblow.weights import hypersurface


class TestVertexStratum:
    def test_top_weight_point(self):
        h = hypersurface((3, 4, 5, 7, 13), 33)
        s = vertex_stratum(h, 4)
        assert s is not None
        assert same_germ(s.germ, quotient(13, 3, 4, 5))

    def test_equivalent_presentations(self):
        h = hypersurface((3, 5, 7, 13, 35), 70)
        s = vertex_stratum(h, 3)
        assert same_germ(s.germ, quotient(13, 3, 7, 35))
        assert same_germ(s.germ, quotient(13, 5, 3, 2))

    def test_weight_dividing_degree_misses(self):
        h = hypersurface((3, 4, 5, 7, 13), 33)
        assert vertex_stratum(h, 0) is None

    def test_unit_weight_never_singular(self):
        h = hypersurface((1, 1, 2, 3, 5), 13)
        assert vertex_stratum(h, 0) is None
        assert vertex_stratum(h, 1) is None


class TestEdgeStratum:
    def test_point_count_on_edge(self):
        h = hypersurface((3, 5, 7, 13, 35), 70)
        s = edge_stratum(h, 1, 4)
        assert s.kind is StratumKind.EDGE_POINTS
        assert s.count == (5 * 70) // (5 * 35)
        assert same_germ(s.germ, quotient(5, 1, 4, 1))

    def test_second_edge(self):
        h = hypersurface((3, 5, 7, 13, 35), 70)
        s = edge_stratum(h, 2, 4)
        assert s.count == 2
        assert same_germ(s.germ, quotient(7, 1, 4, 2))

    def test_coprime_edge_empty(self):
        h = hypersurface((3, 4, 5, 7, 13), 33)
        assert edge_stratum(h, 0, 1) is None

    def test_curve_when_factor_misses_degree(self):
        h = hypersurface((1, 2, 4, 5, 7), 21)
        s = edge_stratum(h, 1, 2)
        assert s.kind is StratumKind.EDGE_CURVE
        assert s.is_curve
        assert s.germ.index == 2
        assert s.germ.has_zero_residue()


class TestSingularLocus:
    def test_isolated_quintuple(self):
        locus = singular_locus(hypersurface((3, 4, 5, 7, 13), 33))
        germs = [s.germ for s in locus.strata]
        expected = [
            quotient(4, 3, 3, 1),
            quotient(5, 3, 4, 1),
            quotient(7, 6, 1, 5),
            quotient(13, 3, 4, 5),
        ]
        assert len(germs) == len(expected)
        for got, want in zip(
            sorted(germs, key=lambda q: q.index),
            sorted(expected, key=lambda q: q.index),
        ):
            assert same_germ(got, want)
        assert not locus.has_curves

    def test_high_amplitude_case(self):
        locus = singular_locus(hypersurface((1, 1, 10, 14, 35), 70))
        got = sorted(s.germ.index for s in locus.strata)
        assert got == [2, 5, 7]
        by_index = {s.germ.index: s.germ for s in locus.strata}
        assert same_germ(by_index[2], quotient(2, 1, 1, 1))
        assert same_germ(by_index[5], quotient(5, 1, 1, 4))
        assert same_germ(by_index[7], quotient(7, 1, 1, 3))

    def test_smooth_quintic_empty(self):
        locus = singular_locus(hypersurface((1, 1, 1, 1, 1), 5))
        assert locus.strata == ()

    def test_triple_factor_rejected(self):
        with pytest.raises(HypothesisViolated):
            singular_locus(hypersurface((2, 2, 2, 3, 5), 30))

    def test_point_counts_aggregate(self):
        locus = singular_locus(hypersurface((3, 5, 7, 13, 35), 70))
        points = {
            (s.germ.index, s.count) for s in locus.point_strata
        }
        assert (5, 2) in points
        assert (7, 2) in points
        assert (13, 1) in points


class TestLifting:
    def test_lift_germ_adds_unit_residues(self):
        g = lift_germ(quotient(7, 1, 1, 3), 8)
        assert g.index == 7
        assert g.residues == (1,) * 8 + (1, 1, 3)

    def test_lift_locus(self):
        locus = singular_locus(hypersurface((1, 1, 1, 3, 8), 16))
        lifted = lift_singular_locus(locus, 1)
        assert len(lifted) == len(locus.point_strata)
        assert all(g.residues[0] == 1 for g in lifted)

    def test_lift_rejects_curves(self):
        locus = singular_locus(hypersurface((1, 2, 4, 5, 7), 21))
        assert locus.has_curves
        with pytest.raises(ValueError):
            lift_singular_locus(locus, 1)

    def test_lift_empty(self):
        locus = singular_locus(hypersurface((1, 1, 1, 1, 1), 5))
        assert lift_singular_locus(locus, 3) == ()
