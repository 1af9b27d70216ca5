import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinorbit_pd.qmath import (
    BASIS_LABELS,
    PAULI_X,
    SpinOrbitState,
    adjoint,
    apply,
    basis_state,
    concurrence,
    is_unitary,
    phase_aligned_distance,
    tensor,
    unitarity_defect,
)

from helpers import haar_unitary, random_state

SQ2 = math.sqrt(2.0)
# Entangling operation, written out literally so this module does not lean
# on the optics constructors it helps to check.
U = np.array([[1, 0, 0, 1j], [0, 1, 1j, 0], [0, 1j, 1, 0], [1j, 0, 0, 1]], dtype=complex) / SQ2
IZ = np.array([[1j, 0], [0, -1j]])
IX = np.array([[0, 1j], [1j, 0]])

angles = st.floats(min_value=-360.0, max_value=360.0, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestTensor:
    def test_identity(self):
        assert np.array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_permutation(self):
        # X on the polarization side flips Alice's bit only: e0 -> e2.
        out = tensor(PAULI_X, np.eye(2)) @ basis_state(0).amp
        assert np.allclose(out, basis_state(2).amp, atol=1e-15)

    def test_on_entangled_state(self):
        # (iZ (x) iX) acting on the entangled |CC> image.
        out = tensor(IZ, IX) @ (U @ basis_state("CC").amp)
        expected = np.array([0.0, -1.0, 1j, 0.0]) / SQ2
        assert np.abs(out - expected).max() < 1e-15

    @given(seed=seeds)
    def test_matches_reference_kron(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        assert np.abs(tensor(a, b) - np.kron(a, b)).max() < 1e-14

    @given(seed=seeds)
    def test_mixed_product(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c, d = (haar_unitary(2, rng) for _ in range(4))
        lhs = tensor(a, b) @ tensor(c, d)
        rhs = tensor(a @ c, b @ d)
        assert np.abs(lhs - rhs).max() < 1e-12

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            tensor(np.eye(3), np.eye(2))


class TestApply:
    def test_identity(self):
        s = basis_state("DC")
        assert np.array_equal(apply(np.eye(4), s).amp, s.amp)

    def test_entangler_on_cc(self):
        out = apply(U, basis_state("CC"))
        expected = np.array([1.0, 0.0, 0.0, 1j]) / SQ2
        assert np.abs(out.amp - expected).max() < 1e-15

    def test_unitary_roundtrip(self, rng):
        s = SpinOrbitState(random_state(rng))
        back = apply(adjoint(U), apply(U, s))
        assert np.abs(back.amp - s.amp).max() < 1e-12

    @given(seed=seeds)
    def test_norm_preserved(self, seed):
        rng = np.random.default_rng(seed)
        m = haar_unitary(4, rng)
        s = SpinOrbitState(random_state(rng))
        assert abs(apply(m, s).norm - s.norm) < 1e-12


class TestAdjoint:
    def test_identity(self):
        assert np.array_equal(adjoint(np.eye(4)), np.eye(4))

    def test_inverts_unitary(self):
        assert np.abs(adjoint(U) @ U - np.eye(4)).max() < 1e-15

    def test_involution(self, rng):
        m = haar_unitary(4, rng)
        assert np.array_equal(adjoint(adjoint(m)), m)


class TestConcurrence:
    def test_product_state(self):
        assert concurrence(basis_state(0)) == 0.0

    def test_maximally_entangled(self):
        s = SpinOrbitState(np.array([1.0, 0.0, 0.0, 1j]) / SQ2)
        assert abs(concurrence(s) - 1.0) < 1e-15

    def test_partially_entangled(self):
        s = SpinOrbitState([math.sqrt(0.9), 0.0, 0.0, math.sqrt(0.1)])
        assert abs(concurrence(s) - 0.6) < 1e-15

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="unit-norm"):
            concurrence(SpinOrbitState([1.0, 0.0, 0.0, 1.0]))

    @given(seed=seeds)
    def test_local_invariance(self, seed):
        # Unitaries have |det| = 1, so local operations keep concurrence.
        rng = np.random.default_rng(seed)
        s = SpinOrbitState(random_state(rng))
        local = tensor(haar_unitary(2, rng), haar_unitary(2, rng))
        assert abs(concurrence(apply(local, s)) - concurrence(s)) < 1e-12

    @given(seed=seeds)
    def test_range(self, seed):
        rng = np.random.default_rng(seed)
        c = concurrence(SpinOrbitState(random_state(rng)))
        assert -1e-12 <= c <= 1.0 + 1e-12


class TestState:
    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="finite"):
            SpinOrbitState([np.nan, 0, 0, 0])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            SpinOrbitState([1.0, 0.0])

    def test_normalized(self):
        s = SpinOrbitState([2.0, 0.0, 0.0, 0.0]).normalized()
        assert abs(s.norm - 1.0) < 1e-15

    def test_normalize_zero_state_fails(self):
        with pytest.raises(ValueError):
            SpinOrbitState([0.0, 0.0, 0.0, 0.0]).normalized()

    def test_amp_is_readonly(self):
        s = basis_state(0)
        with pytest.raises(ValueError):
            s.amp[0] = 5.0

    def test_basis_labels(self):
        for idx, label in enumerate(BASIS_LABELS):
            assert np.array_equal(basis_state(label).amp, basis_state(idx).amp)

    def test_probabilities(self):
        s = SpinOrbitState(np.array([1.0, 0.0, 0.0, 1j]) / SQ2)
        assert np.allclose(s.probabilities(), [0.5, 0, 0, 0.5], atol=1e-15)


class TestUnitarity:
    def test_defect_zero_for_unitary(self, rng):
        assert unitarity_defect(haar_unitary(4, rng)) < 1e-12

    def test_defect_positive_for_nonunitary(self):
        assert unitarity_defect(2.0 * np.eye(4)) == 3.0
        assert not is_unitary(2.0 * np.eye(4))


class TestPhaseAlignment:
    def test_absorbs_global_phase(self, rng):
        v = random_state(rng)
        assert phase_aligned_distance(np.exp(1j * 0.7) * v, v) < 1e-15

    def test_orthogonal_vectors_keep_distance(self):
        a = np.array([1.0, 0.0, 0.0, 0.0])
        b = np.array([0.0, 1.0, 0.0, 0.0])
        assert phase_aligned_distance(a, b) == 1.0
