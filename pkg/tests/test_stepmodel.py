"""Step model: generating functions, curvature constants, maximal points."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chamberwalk.stepmodel import (
    AtomicKind,
    CompositeSpec,
    check_chamber_point,
    gaussian_expansion,
    in_chamber,
    lattice_contains,
    maximal_points,
    s_one,
    s_second_derivative_one,
)


def axis(k, weights):
    return CompositeSpec(AtomicKind.AXIS, k, weights)


def diag(k, weights):
    return CompositeSpec(AtomicKind.DIAGONAL, k, weights)


class TestSpecValidation:
    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            axis(0, [0, 1])

    def test_rejects_negative_weight(self):
        with pytest.raises(ValueError):
            axis(1, [0, -1])

    def test_rejects_all_stationary(self):
        with pytest.raises(ValueError):
            axis(1, [1])

    def test_trailing_zeros_trimmed(self):
        assert axis(1, [0, 1, 0, 0]).weights == axis(1, [0, 1]).weights

    def test_json_round_trip(self):
        spec = axis(2, [Fraction(1, 2), 1, Fraction(3, 7)])
        assert CompositeSpec.from_json(spec.to_json()) == spec

    def test_integer_weights_flag(self):
        assert axis(1, [0, 2]).integer_weights
        assert not axis(1, [0, Fraction(1, 2)]).integer_weights


class TestGeneratingFunction:
    # S(1) = P(2k) for axis steps, P(2^k) for diagonal steps
    def test_s_one_lockstep(self):
        assert s_one(diag(2, [0, 1])) == 4
        assert s_one(diag(3, [0, 1])) == 8

    def test_s_one_random_turns(self):
        assert s_one(axis(3, [0, 1])) == 6

    def test_s_one_tangled(self):
        assert s_one(axis(2, [1, 1, 1])) == 21     # 1 + 4 + 16
        assert s_one(axis(1, [1, 1, 1])) == 7      # 1 + 2 + 4

    def test_s_one_fractional(self):
        assert s_one(axis(1, [Fraction(1, 2), Fraction(1, 3)])) == Fraction(7, 6)

    def test_second_derivative_lockstep(self):
        # S = prod (z_j + 1/z_j): d^2/dz_1^2 at 1 is 2 * 2^(k-1)
        assert s_second_derivative_one(diag(1, [0, 1])) == 2
        assert s_second_derivative_one(diag(2, [0, 1])) == 4

    def test_lam_values(self):
        assert gaussian_expansion(diag(2, [0, 1])).lam == 1
        assert gaussian_expansion(axis(2, [0, 1])).lam == Fraction(1, 2)
        assert gaussian_expansion(axis(2, [1, 1, 1])).lam == Fraction(6, 7)
        assert gaussian_expansion(axis(1, [1, 1, 1])).lam == Fraction(10, 7)

    def test_diagonal_expansion_flagged_unvalidated(self):
        assert not gaussian_expansion(diag(2, [0, 1])).omega_psi_validated
        assert gaussian_expansion(axis(2, [0, 1])).omega_psi_validated

    def test_psi_values(self):
        ge = gaussian_expansion(axis(1, [1, 1, 1]))
        assert ge.psi == ge.lam
        ge = gaussian_expansion(diag(2, [0, 1]))
        assert ge.psi == -2 * ge.lam


class TestMaximalPoints:
    def test_random_turns_two_points(self):
        pts = maximal_points(axis(2, [0, 1]))
        assert sorted(pts) == [(-1, -1), (1, 1)]

    def test_lockstep_full_hypercube(self):
        assert len(maximal_points(diag(2, [0, 1]))) == 4
        assert len(maximal_points(diag(3, [0, 1]))) == 8

    def test_tangled_single_point(self):
        assert sorted(maximal_points(axis(2, [1, 1, 1]))) == [(1, 1)]

    @given(st.sampled_from([AtomicKind.AXIS, AtomicKind.DIAGONAL]),
           st.integers(1, 3),
           st.lists(st.integers(0, 3), min_size=1, max_size=4))
    def test_all_ones_always_maximal(self, kind, k, weights):
        if not any(w for m, w in enumerate(weights) if m > 0):
            weights = weights + [1]
        spec = CompositeSpec(kind, k, weights)
        assert tuple([1] * k) in maximal_points(spec)


class TestChamberPredicates:
    def test_in_chamber(self):
        assert in_chamber((1, 2, 5))
        assert not in_chamber((0, 2))
        assert not in_chamber((2, 2))
        assert not in_chamber((3, 2))

    def test_lattice_diagonal_parity(self):
        spec = diag(2, [0, 1])
        assert lattice_contains(spec, (1, 3))
        assert lattice_contains(spec, (2, 4))
        assert not lattice_contains(spec, (1, 2))

    def test_lattice_axis_everything(self):
        assert lattice_contains(axis(2, [0, 1]), (1, 2))

    def test_check_chamber_point_rejects(self):
        with pytest.raises(ValueError):
            check_chamber_point(diag(2, [0, 1]), (1, 2))
        with pytest.raises(ValueError):
            check_chamber_point(axis(2, [0, 1]), (2, 1))
        with pytest.raises(ValueError):
            check_chamber_point(axis(2, [0, 1]), (1,))


class TestQuarticFit:
    def test_axis_curvature_matches(self):
        from chamberwalk.stepmodel import log_s_quartic_fit
        spec = axis(1, [1, 1, 1])
        c2, _ = log_s_quartic_fit(spec)
        assert c2 == pytest.approx(-float(gaussian_expansion(spec).lam) / 2, rel=1e-6)

    def test_lockstep_quartic_matches_printed_constants(self):
        from chamberwalk.stepmodel import log_s_quartic_fit
        spec = diag(2, [0, 1])
        ge = gaussian_expansion(spec)
        c2, c4 = log_s_quartic_fit(spec)
        assert c2 == pytest.approx(-float(ge.lam) / 2, rel=1e-6)
        assert c4 == pytest.approx(float(ge.omega) / 2 + float(ge.psi) / 24, rel=1e-3)


def test_angles_match_sign_vectors():
    pts = maximal_points(axis(2, [0, 1]))
    angles = pts.angles()
    assert (0.0, 0.0) in angles
    assert (math.pi, math.pi) in angles
