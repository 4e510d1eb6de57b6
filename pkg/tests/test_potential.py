import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqrm.errors import InvalidInputError, PreconditionError
from aqrm.model import Branch, ModelParams, epsilon
from aqrm.potential import (
    TaylorCoefficients,
    WellReport,
    WellShape,
    double_well_onset,
    find_wells,
    matching_condition,
    stationary_points,
    taylor_coefficients,
    v_eff,
    v_eff_derivative,
)

from conftest import G_C
from fd_oracle import fd_taylor

XI0 = -0.5 / (2 * math.sqrt(2))


class TestVeff:
    def test_origin_without_bias(self):
        assert v_eff(ModelParams(10, 1.3, 0), 0.0) == -5.0

    def test_decoupled(self):
        assert v_eff(ModelParams(10, 0, 0), 2.0) == pytest.approx(-3.0, abs=1e-15)

    def test_zero_bias_point(self):
        p = ModelParams(10, 2, 0.5)
        assert v_eff(p, XI0) == pytest.approx(XI0 ** 2 / 2 - 5, abs=1e-14)

    def test_shares_code_path_with_branch_energy(self):
        p = ModelParams(7, 1.1, 0.3)
        xs = np.linspace(-8, 8, 101)
        np.testing.assert_array_equal(v_eff(p, xs), xs ** 2 / 2 + epsilon(p, Branch.NEGATIVE, xs))

    def test_even_without_bias(self):
        p = ModelParams(10, 2.5, 0)
        xs = np.linspace(-9, 9, 181)
        np.testing.assert_allclose(v_eff(p, xs), v_eff(p, -xs), atol=1e-12)

    def test_derivative_against_central_difference(self):
        p = ModelParams(10, 2.2, 0.6)
        xs = np.linspace(-6, 6, 25)
        h = 1e-6
        fd = (v_eff(p, xs + h) - v_eff(p, xs - h)) / (2 * h)
        np.testing.assert_allclose(v_eff_derivative(p, xs), fd, atol=1e-7)


class TestTaylor:
    def test_odd_terms_vanish_without_bias(self):
        c = taylor_coefficients(ModelParams(10, 2, 0))
        assert c.c1 == 0.0 and c.c3 == 0.0

    def test_curvature_without_bias(self):
        c = taylor_coefficients(ModelParams(10, 2, 0))
        assert c.c2 == pytest.approx(0.5 - 2 * 4 / 10, rel=1e-14)
        assert c.c2 == pytest.approx(fd_taylor(10, 2, 0)[2], rel=1e-9)

    def test_matches_finite_differences(self):
        ours = taylor_coefficients(ModelParams(10, 2, 0.5)).as_tuple()
        oracle = fd_taylor(10, 2, 0.5)
        for a, b in zip(ours, oracle):
            assert a == pytest.approx(b, rel=1e-6)

    def test_singular_at_zero_coupling(self):
        with pytest.raises(PreconditionError):
            taylor_coefficients(ModelParams(10, 0, 0.5))

    def test_polynomial_approximates_potential_near_origin(self):
        p = ModelParams(10, 1.5, 0.4)
        c = taylor_coefficients(p)
        for xi in (1e-2, -2e-2):
            assert c(xi) == pytest.approx(v_eff(p, xi), abs=1e-9)

    def test_round_trip(self):
        c = taylor_coefficients(ModelParams(10, 2, 0.5))
        assert TaylorCoefficients.from_dict(c.to_dict()) == c

    @settings(max_examples=20, deadline=None)
    @given(st.floats(2, 20), st.floats(0.5, 4), st.floats(0, 2))
    def test_random_sweep_against_oracle(self, delta, g, eta):
        ours = taylor_coefficients(ModelParams(delta, g, eta)).as_tuple()
        for a, b in zip(ours, fd_taylor(delta, g, eta)):
            assert abs(a - b) <= 1e-6 * abs(b) + 1e-12


class TestFindWells:
    def test_weak_coupling_single_well(self):
        w = find_wells(ModelParams(10, 0.5, 0))
        assert w.shape is WellShape.SINGLE
        assert w.minima[0][0] == pytest.approx(0.0, abs=1e-10)
        assert w.offset is None and w.barrier is None

    def test_zero_coupling(self):
        w = find_wells(ModelParams(10, 0, 0.5))
        assert w.shape is WellShape.SINGLE
        assert w.minima[0][0] == pytest.approx(0.0, abs=1e-10)

    def test_symmetric_double_well(self):
        w = find_wells(ModelParams(10, 2.5, 0))
        assert w.shape is WellShape.DOUBLE
        (xl, vl), (xr, vr) = w.minima
        assert xl == pytest.approx(-xr, abs=1e-9)
        assert vl == pytest.approx(vr, abs=1e-12)
        assert w.offset == pytest.approx(0.0, abs=1e-12)
        assert w.barrier[0] == pytest.approx(0.0, abs=1e-10)
        # minimum satisfies xi = 2 g^2 xi / sqrt(2 g^2 xi^2 + 25)
        assert xr == pytest.approx(math.sqrt((4 * 2.5 ** 4 - 25) / (2 * 2.5 ** 2)), abs=1e-9)

    def test_biased_double_well(self):
        p = ModelParams(10, 1.5 * G_C, 0.5)
        w = find_wells(p)
        assert w.shape is WellShape.DOUBLE
        assert w.lower_minimum[0] > 0 > w.higher_minimum[0]
        assert w.barrier[1] > w.higher_minimum[1]
        assert w.offset > 0
        assert w.matched_level == 1

    @pytest.mark.parametrize("g, eta", [(2.0, 0.3), (2.9, 0.5), (3.8, 1.5), (1.0, 0.2), (2.3, 0.0)])
    def test_minima_are_genuine(self, g, eta):
        p = ModelParams(10, g, eta)
        for x, v in find_wells(p).minima:
            assert v_eff(p, x - 1e-4) > v and v_eff(p, x + 1e-4) > v
            assert abs(v_eff_derivative(p, x)) < 1e-9

    def test_stationary_points_against_dense_scan(self):
        p = ModelParams(10, 2.4, 0.7)
        xs = np.linspace(-12, 12, 200001)
        dv = v_eff_derivative(p, xs)
        brute = xs[:-1][np.sign(dv[1:]) != np.sign(dv[:-1])]
        np.testing.assert_allclose(stationary_points(p), brute, atol=2e-4)

    def test_offset_approaches_twice_bias(self):
        ratios = [find_wells(ModelParams(10, r * G_C, 0.5)).offset / 1.0 for r in (1.2, 1.5, 2.0)]
        assert abs(ratios[2] - 1) < abs(ratios[1] - 1) < abs(ratios[0] - 1)

    def test_round_trip(self):
        w = find_wells(ModelParams(10, 2.9, 0.5))
        assert WellReport.from_dict(w.to_dict()) == w


class TestMatching:
    @pytest.mark.parametrize("eta, n", [(0.5, 1), (1.0, 2), (1.5, 3), (0.8, None), (0.2, None), (0.0, None)])
    def test_examples(self, eta, n):
        assert matching_condition(eta) == n

    def test_tolerance(self):
        assert matching_condition(0.5 + 1e-6) is None
        assert matching_condition(0.5 + 1e-6, tolerance=1e-5) == 1
        with pytest.raises(InvalidInputError):
            matching_condition(0.5, tolerance=0)


class TestOnset:
    def test_symmetric_closed_form(self):
        assert double_well_onset(10, 0, (0.5, 3)) == pytest.approx(math.sqrt(10) / 2, abs=1e-8)
        assert double_well_onset(4, 0, (0.1, 3)) == pytest.approx(1.0, abs=1e-8)

    def test_bias_delays_onset(self):
        g0 = double_well_onset(10, 0, (0.5, 3))
        g1 = double_well_onset(10, 0.5, (0.5, 3), xtol=1e-7)
        g2 = double_well_onset(10, 0.5, (0.5, 3), xtol=1e-10)
        assert g1 > g0
        assert abs(g1 - g2) < 1e-6

    def test_no_transition(self):
        with pytest.raises(PreconditionError):
            double_well_onset(10, 0, (0.1, 0.5))
