import math

import numpy as np
import pytest

from wstategen.fock import Polarization
from wstategen.schemes import (
    polarization_scheme_coupler,
    run_designed_path,
    run_path_w,
    run_polarization_w,
    scheme2_input,
)

H, V = Polarization.H, Polarization.V


class TestRunPathW:
    def test_tritter_port0(self):
        report = run_path_w(3, 0)
        assert report.success_probability == 1.0
        assert report.probability_uniform
        assert all(abs(p - 1 / 3) <= 1e-12 for p in report.port_probabilities)
        assert abs(report.fidelity_to_target - 1.0) <= 1e-9
        assert report.post_selection is None

    def test_port1_uniform_probabilities_zero_raw_fidelity(self):
        # the DFT column for input port 1 carries phases 1, w, w^2 which
        # sum to zero against the uniform-phase target
        report = run_path_w(3, 1)
        assert report.probability_uniform
        assert report.fidelity_to_target <= 1e-12
        assert report.success_probability == 1.0

    def test_n7(self):
        report = run_path_w(7, 0)
        assert len(report.port_probabilities) == 7
        assert all(abs(p - 1 / 7) <= 1e-12 for p in report.port_probabilities)

    @pytest.mark.parametrize("n,port", [(1, 0), (3, 3), (3, -1)])
    def test_invalid_args(self, n, port):
        with pytest.raises(ValueError):
            run_path_w(n, port)


class TestRunPolarizationW:
    def test_n3(self):
        report = run_polarization_w(3)
        assert abs(report.success_probability - 1 / 9) <= 1e-9
        assert abs(report.fidelity_to_target - 1.0) <= 1e-9
        assert report.reference_note == "published value 1/9"

    def test_n4(self):
        report = run_polarization_w(4)
        assert abs(report.success_probability - 1 / 16) <= 1e-9
        assert abs(report.fidelity_to_target - 1.0) <= 1e-9

    def test_n5_reported_as_unpublished(self):
        report = run_polarization_w(5)
        assert report.reference_note == "computed, no published reference"
        assert 0.0 < report.success_probability < 1.0

    @pytest.mark.parametrize("n", [3, 4])
    def test_kept_branches_equal_single_v(self, n):
        report = run_polarization_w(n)
        kept = list(report.post_selection.conditional)
        assert len(kept) == n
        amps = [amp for _, amp in kept]
        for s, _ in kept:
            assert s.photons_per_pol()[V] == 1
        for amp in amps:
            assert abs(amp - amps[0]) <= 1e-12

    def test_scheme2_input_layout(self):
        state = scheme2_input(4)
        assert state.photons_per_pol() == {H: 3, V: 1}
        assert state.occupation_vector(V) == (0, 0, 0, 1)

    def test_coupler_choice(self):
        assert np.allclose(np.imag(polarization_scheme_coupler(4)), 0.0)
        assert np.max(np.abs(np.imag(polarization_scheme_coupler(3)))) > 0.1


class TestRunDesignedPath:
    def test_clone_target(self):
        target = np.array([math.sqrt(2 / 3), -math.sqrt(1 / 6), -math.sqrt(1 / 6)])
        report = run_designed_path(target)
        assert report.success_probability == 1.0
        assert abs(report.fidelity_to_target - 1.0) <= 1e-9
        probs = report.port_probabilities
        assert abs(probs[0] - 2 / 3) <= 1e-12
        assert abs(probs[1] - 1 / 6) <= 1e-12
        assert abs(probs[2] - 1 / 6) <= 1e-12

    def test_basis_target(self):
        report = run_designed_path(np.array([1.0, 0.0]))
        assert report.port_probabilities == (1.0, 0.0)

    def test_uniform_matches_path_w_probabilities(self):
        report = run_designed_path(np.full(5, 1 / math.sqrt(5)))
        reference = run_path_w(5, 0)
        assert np.allclose(report.port_probabilities, reference.port_probabilities,
                           atol=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            run_designed_path(np.array([1.0, 1.0]))


class TestReportSerialization:
    def test_deterministic(self):
        assert run_polarization_w(3).to_json() == run_polarization_w(3).to_json()
        assert run_path_w(4, 1).to_json() == run_path_w(4, 1).to_json()

    def test_flat_shape(self):
        obj = run_polarization_w(3).to_json_obj()
        for key in ("schemeKind", "n", "unitaryUsed", "outputState",
                    "postSelection", "fidelityToTarget", "successProbability"):
            assert key in obj
        assert obj["schemeKind"] == "polarization-W"
        assert obj["postSelection"]["keptTerms"] == 3

    def test_path_w_has_no_postselection(self):
        obj = run_path_w(3, 0).to_json_obj()
        assert obj["postSelection"] is None
        assert obj["successProbability"] == 1.0
