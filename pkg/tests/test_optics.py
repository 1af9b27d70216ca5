import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinorbit_pd.optics import (
    CalibrationFailed,
    ConverterParams,
    MissingPhase,
    calibrate,
    calibrated_disentangler,
    calibration_report,
    disentangler_pipeline,
    entangler,
    mode_converter,
    mz,
    named_element,
    prepare_initial,
)
from spinorbit_pd.qmath import (
    adjoint,
    concurrence,
    phase_aligned_distance,
    unitarity_defect,
)

SQ2 = math.sqrt(2.0)
IZ = np.array([[1j, 0], [0, -1j]])
IX = np.array([[0, 1j], [1j, 0]])

angles = st.floats(min_value=-360.0, max_value=360.0, allow_nan=False)
phases = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi, allow_nan=False)


class TestModeConverter:
    @pytest.mark.parametrize("theta", [0.0, 13.7, 45.0, 90.0, -30.0])
    def test_zero_retardation_is_identity(self, theta):
        assert np.abs(mode_converter(ConverterParams(theta, 0.0)) - np.eye(2)).max() < 1e-15

    def test_half_wave_at_45_is_ix(self):
        assert np.abs(mode_converter(ConverterParams(45.0, math.pi)) - IX).max() < 1e-15

    def test_half_wave_at_0_is_iz(self):
        assert np.abs(mode_converter(ConverterParams(0.0, math.pi)) - IZ).max() < 1e-15

    @given(theta=angles, phi=phases)
    def test_special_unitary(self, theta, phi):
        m = mode_converter(ConverterParams(theta, phi))
        assert unitarity_defect(m) < 1e-12
        assert abs(np.linalg.det(m) - 1.0) < 1e-12

    @given(theta=angles, phi1=phases, phi2=phases)
    def test_same_axis_retardations_compose(self, theta, phi1, phi2):
        lhs = mode_converter(ConverterParams(theta, phi1)) @ mode_converter(ConverterParams(theta, phi2))
        rhs = mode_converter(ConverterParams(theta, phi1 + phi2))
        assert np.abs(lhs - rhs).max() < 1e-12

    def test_rejects_nonfinite_angles(self):
        with pytest.raises(ValueError):
            ConverterParams(math.nan, 0.0)
        with pytest.raises(ValueError):
            ConverterParams(0.0, math.inf)


class TestMachZehnder:
    def test_balanced_keeps_h_polarized_h_mode(self):
        e0 = np.array([1, 0, 0, 0], dtype=complex)
        assert np.array_equal(mz(0.0) @ e0, e0)

    def test_quarter_phase_swaps_v_modes_with_i(self):
        e2 = np.array([0, 0, 1, 0], dtype=complex)
        out = mz(math.pi / 2) @ e2
        expected = np.array([0, 0, 0, 1j])
        assert np.abs(out - expected).max() < 1e-15

    @pytest.mark.parametrize("phi", [0.0, 0.3, math.pi / 2, math.pi])
    def test_unitary(self, phi):
        assert unitarity_defect(mz(phi)) < 1e-15

    @pytest.mark.parametrize("phi1,phi2", [(0.0, 0.3), (0.5, 1.1), (math.pi / 2, math.pi / 3)])
    def test_v_block_phases_compose(self, phi1, phi2):
        # Two traversals leave the V block diagonal: -exp(i(phi1+phi2)) I,
        # so the composed phase (with the pi from the sign) sits on the
        # (2,2) and (3,3) entries.
        product = mz(phi1) @ mz(phi2)
        for idx in (2, 3):
            arg = np.angle(product[idx, idx])
            expected = (phi1 + phi2 + math.pi) % (2 * math.pi)
            assert abs((arg - expected + math.pi) % (2 * math.pi) - math.pi) < 1e-12
        assert abs(product[3, 2]) < 1e-15
        assert abs(product[2, 3]) < 1e-15


class TestEntangler:
    def test_on_cc(self):
        out = entangler() @ np.array([1, 0, 0, 0], dtype=complex)
        assert np.abs(out - np.array([1, 0, 0, 1j]) / SQ2).max() < 1e-15

    def test_on_dd(self):
        out = entangler() @ np.array([0, 0, 0, 1], dtype=complex)
        assert np.abs(out - np.array([1j, 0, 0, 1]) / SQ2).max() < 1e-15

    def test_unitary(self):
        assert unitarity_defect(entangler()) < 1e-15


class TestPrepareInitial:
    def test_amplitudes(self):
        expected = np.array([1.0, 0.0, 0.0, 1j]) / SQ2
        assert phase_aligned_distance(prepare_initial().amp, expected) < 1e-12

    def test_maximally_entangled(self):
        assert abs(concurrence(prepare_initial()) - 1.0) < 1e-12

    def test_matches_entangler_on_cc(self):
        via_entangler = entangler() @ np.array([1, 0, 0, 0], dtype=complex)
        assert phase_aligned_distance(prepare_initial().amp, via_entangler) < 1e-9


class TestDisentangler:
    def test_unitary(self):
        assert unitarity_defect(disentangler_pipeline()) < 1e-12

    def test_first_column(self):
        out = disentangler_pipeline() @ np.array([1, 0, 0, 0], dtype=complex)
        expected = np.array([1.0, 0.0, 0.0, -1j]) / SQ2
        assert np.abs(out - expected).max() < 1e-15

    def test_differs_from_adjoint_by_alice_side_phase(self):
        # The raw chain is NOT the entangler adjoint under these sign
        # conventions; only the diagonal correction diag(1, 1, i, i)
        # (a phase on Alice's V component) reconciles them.
        pipeline = disentangler_pipeline()
        target = adjoint(entangler())
        assert phase_aligned_distance(pipeline, target) > 0.5
        corrected = pipeline @ np.diag([1.0, 1.0, 1j, 1j])
        assert np.abs(corrected - target).max() < 1e-12


class TestCalibrate:
    def test_identity_fit(self):
        target = entangler()
        report = calibrate(target, target)
        assert np.abs(report.calibration - 1.0).max() < 1e-12
        assert report.residual < 1e-15

    def test_absorbs_global_phase(self):
        target = entangler()
        g = np.exp(1j * math.pi / 7)
        report = calibrate(g * target, target)
        assert report.residual < 1e-12
        assert abs(report.global_phase - g) < 1e-12

    def test_pipeline_fit_matches_exhaustive_scan(self):
        realized = disentangler_pipeline()
        target = adjoint(entangler())
        report = calibrate(realized, target)
        assert report.residual <= 1e-12
        assert np.abs(report.calibration - np.array([1.0, 1.0, 1j, 1j])).max() < 1e-12
        assert np.abs(np.abs(report.calibration) - 1.0).max() < 1e-12

        # Exhaustive eighth-turn scan over the three free phases: the fit
        # must match the unique zero-residual combination.
        steps = [np.exp(1j * k * math.pi / 4) for k in range(8)]
        best_combo, best_residual = None, math.inf
        for d1, d2, d3 in itertools.product(steps, repeat=3):
            d = np.diag([1.0, d1, d2, d3])
            residual = phase_aligned_distance(realized @ d, target)
            if residual < best_residual:
                best_combo, best_residual = (d1, d2, d3), residual
        assert best_residual < 1e-12
        assert np.abs(np.array(best_combo) - report.calibration[1:]).max() < 1e-12

    def test_genuine_mismatch_raises(self):
        with pytest.raises(CalibrationFailed) as err:
            calibrate(entangler(), np.eye(4, dtype=complex))
        assert err.value.residual > 0.1

    def test_rejects_nonunitary(self):
        with pytest.raises(ValueError):
            calibrate(2.0 * np.eye(4), np.eye(4, dtype=complex))

    def test_calibrated_disentangler_inverts_entangler(self):
        assert np.abs(calibrated_disentangler() - adjoint(entangler())).max() < 1e-12

    def test_report_accessor(self):
        report = calibration_report()
        assert report.residual <= 1e-9
        assert np.abs(report.calibration[0] - 1.0) < 1e-15


class TestNamedElements:
    def test_qwp(self):
        expected = mode_converter(ConverterParams(-45.0, math.pi / 2))
        assert np.array_equal(named_element("qwp", -45.0), expected)

    def test_hwp_at_zero_is_iz(self):
        assert np.abs(named_element("HWP", 0.0) - IZ).max() < 1e-15

    def test_dove_prism_at_45_is_ix(self):
        assert np.abs(named_element("dove_prism", 45.0) - IX).max() < 1e-15

    def test_cylindrical_requires_phase(self):
        with pytest.raises(MissingPhase):
            named_element("cylindrical", 10.0)
        m = named_element("cylindrical", 10.0, phi=0.8)
        assert np.array_equal(m, mode_converter(ConverterParams(10.0, 0.8)))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown element"):
            named_element("prism", 0.0)
