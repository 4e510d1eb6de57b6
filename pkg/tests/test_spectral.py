import json
import warnings

import numpy as np
import pytest

from aqrm.bo import solve_bo
from aqrm.ed import solve_ed
from aqrm.errors import BOValidityWarning, InvalidInputError, PreconditionError
from aqrm.model import Branch, ModelParams
from aqrm.results import Method
from aqrm.spectral import (
    DegeneracyReport,
    ScanTable,
    classify_degeneracy,
    compare_methods,
    gaps,
    scan_coupling,
)

from conftest import DELTA, G_C


class TestGaps:
    def test_ladder(self):
        np.testing.assert_allclose(gaps([-4.5, -3.5, -2.5]), [1.0, 1.0])

    def test_decoupled_ed(self):
        r = solve_ed(ModelParams(10, 0, 0), 60, 4)
        np.testing.assert_allclose(gaps(r), [1, 1, 1], atol=1e-12)

    def test_strong_coupling_pairs(self):
        g = gaps(solve_ed(ModelParams(10, 2.0 * G_C, 0), 250, 6))
        assert g[0] < 1e-3 and g[2] < 1e-3 and g[4] < 1e-3
        assert g[1] > 0.5 and g[3] > 0.5

    def test_needs_two_levels(self):
        with pytest.raises(InvalidInputError):
            gaps([1.0])

    def test_non_negative(self):
        assert np.all(gaps([0.0, 0.0, 1e-17, 1e-17]) >= 0)


class TestScan:
    def test_single_point_matches_direct_solve(self):
        tables = scan_coupling(DELTA, 0.3, [1.1], "ed", k=1, n_fock=80)
        t = tables[Method.ED]
        assert t.energies().shape == (1, 1)
        assert t.results[0] == solve_ed(ModelParams(DELTA, 1.1, 0.3), 80, 1)

    def test_both_methods(self):
        tables = scan_coupling(DELTA, 0.5, [0.5, 1.0], "both", k=3, axis="g_over_gc", n_fock=120)
        assert set(tables) == {Method.BO, Method.ED}
        assert tables[Method.BO].results[1].params.g == pytest.approx(G_C)

    def test_parallel_equals_serial(self):
        values = np.linspace(0.2, 1.8, 6)
        serial = scan_coupling(DELTA, 0.5, values, "ed", k=4, axis="g_over_gc", n_fock=100)
        threaded = scan_coupling(DELTA, 0.5, values, "ed", k=4, axis="g_over_gc", n_fock=100, n_jobs=3)
        assert serial[Method.ED] == threaded[Method.ED]

    def test_deterministic(self):
        run = lambda: json.dumps(
            scan_coupling(DELTA, 0.2, [0.5, 1.5], "both", k=4, n_fock=80, n_basis=40)[Method.BO].to_dict()
        )
        assert run() == run()

    def test_rejects_unsorted(self):
        with pytest.raises(InvalidInputError):
            scan_coupling(DELTA, 0, [1.0, 0.5], "ed")

    def test_failing_point_is_identified(self):
        with pytest.raises(InvalidInputError, match=r"scan point 0 \(g=0.5, ed\)"):
            scan_coupling(DELTA, 0, [0.5, 1.0], "ed", k=10, n_fock=4)

    def test_round_trip(self):
        t = scan_coupling(DELTA, 0.5, [0.5, 1.0], "bo", k=2, n_basis=30)[Method.BO]
        assert ScanTable.from_dict(json.loads(json.dumps(t.to_dict()))) == t


class TestClassify:
    def test_first_excited_onset(self):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, 0.5), threshold=1e-3)
        assert (r.onset_level, r.predicted_onset) == (1, 1)

    def test_second_excited_onset(self):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, 1.0))
        assert r.onset_level == 2

    def test_no_onset_off_matching(self):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, 0.2))
        assert r.onset_level is None and r.predicted_onset is None
        assert min(r.gaps) > 1e-3

    @pytest.mark.parametrize("eta", [0.5, 1.0, 1.5])
    def test_onset_consistency(self, eta):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, eta))
        assert r.onset_level == r.predicted_onset

    def test_weak_coupling_rejected(self):
        with pytest.raises(PreconditionError):
            classify_degeneracy(ModelParams(DELTA, 1.0 * G_C, 0.5))

    def test_huge_threshold_flags_ground(self):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, 0.8), threshold=1.0)
        assert r.onset_level == 0

    def test_monotone_gap_closing(self):
        gap = lambda ratio: np.diff(solve_ed(ModelParams(DELTA, ratio * G_C, 0.5), 250, 3).energies)[1]
        assert gap(1.5) < gap(1.0)

    def test_round_trip(self):
        r = classify_degeneracy(ModelParams(DELTA, 1.5 * G_C, 0.5), k=4)
        assert DegeneracyReport.from_dict(json.loads(json.dumps(r.to_dict()))) == r


class TestCompare:
    @pytest.mark.parametrize("eta", [0.0, 0.5, 1.3])
    def test_decoupled_limit_agrees(self, eta):
        diff = compare_methods(ModelParams(DELTA, 0, eta), k=4, n_basis=40, n_fock=40)
        assert np.all(diff < 1e-8)

    def test_zero_point_shift_applied(self):
        p = ModelParams(DELTA, 0.7, 0.2)
        raw = solve_bo(p, Branch.NEGATIVE, 80, 3).energies[0] - solve_ed(p, 120, 3).energies[0]
        assert raw == pytest.approx(0.5, abs=1e-2)
        assert compare_methods(p, 3, 80, 120)[0] < 1e-2

    def test_small_splitting_flagged(self):
        with pytest.warns(BOValidityWarning):
            diff = compare_methods(ModelParams(0.5, 2, 0), k=8)
        assert diff.max() > 1e-1

    def test_no_warning_in_valid_regime(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            compare_methods(ModelParams(DELTA, 0.5 * G_C, 0), k=2, n_basis=60, n_fock=100)
