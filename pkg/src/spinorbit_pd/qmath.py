"""Complex linear algebra for the four-dimensional spin-orbit mode space.

A paraxial beam carrying one polarization qubit and one first-order
spatial-mode qubit lives in a 4-dimensional complex space.  Throughout this
package the basis order is polarization-major:

    index 0: psi_h e_H    index 1: psi_v e_H
    index 2: psi_h e_V    index 3: psi_v e_V

so an index decomposes as ``2*a + b`` where ``a`` is Alice's bit
(polarization, H = cooperate, V = defect) and ``b`` is Bob's bit (spatial
mode, h = cooperate, v = defect).  Every matrix in this package is written
in this one basis order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerance for algebraic identities (unitarity, norm preservation).
ALGEBRA_TOL = 1e-12
# Tolerance for end-to-end pipeline comparisons.
PIPELINE_TOL = 1e-9

# Outcome labels in basis order, Alice's letter first.
BASIS_LABELS = ("CC", "CD", "DC", "DD")

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _as_matrix(m, dim: int) -> np.ndarray:
    out = np.asarray(m, dtype=complex)
    if out.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {out.shape}")
    return out


@dataclass(frozen=True)
class SpinOrbitState:
    """Four complex amplitudes (alpha, beta, gamma, delta) in the fixed basis."""

    amp: np.ndarray

    def __post_init__(self):
        amp = np.array(self.amp, dtype=complex).reshape(-1)
        if amp.shape != (4,):
            raise ValueError(f"state needs 4 amplitudes, got {amp.shape}")
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("state amplitudes must be finite")
        object.__setattr__(self, "amp", _frozen(amp))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))

    def normalized(self) -> "SpinOrbitState":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return SpinOrbitState(self.amp / n)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amp) ** 2


def basis_state(which: int | str) -> SpinOrbitState:
    """Computational basis state by index 0..3 or label 'CC'/'CD'/'DC'/'DD'."""
    idx = BASIS_LABELS.index(which) if isinstance(which, str) else int(which)
    amp = np.zeros(4, dtype=complex)
    amp[idx] = 1.0
    return SpinOrbitState(amp)


def tensor(a, b) -> np.ndarray:
    """Product of a polarization-side and a spatial-side 2x2 operator.

    The first factor acts on Alice's qubit (polarization), the second on
    Bob's (spatial mode):  ``tensor(a, b)[2i+j, 2k+l] = a[i, k] * b[j, l]``.
    """
    a = _as_matrix(a, 2)
    b = _as_matrix(b, 2)
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)


def apply(m, s: SpinOrbitState) -> SpinOrbitState:
    """Apply a 4x4 operator to a state."""
    return SpinOrbitState(_as_matrix(m, 4) @ s.amp)


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m, dtype=complex).conj().T


def concurrence(s: SpinOrbitState, norm_tol: float = 1e-6) -> float:
    """Entanglement of a normalized state: ``2 * |alpha*delta - beta*gamma|``.

    0 for product states, 1 for maximally entangled ones (the polarization
    vortices).  Some texts drop the factor 2, which would score maximal
    entanglement as 1/2; see docs/conventions.md.
    """
    if abs(s.norm - 1.0) > norm_tol:
        raise ValueError(f"concurrence needs a unit-norm state, |s| = {s.norm}")
    a, b, c, d = s.amp
    return float(2.0 * abs(a * d - b * c))


def unitarity_defect(m) -> float:
    """Max-norm of ``m^dagger m - I``; 0 for exactly unitary matrices."""
    m = np.asarray(m, dtype=complex)
    eye = np.eye(m.shape[0])
    return float(np.abs(m.conj().T @ m - eye).max())


def is_unitary(m, tol: float = ALGEBRA_TOL) -> bool:
    return unitarity_defect(m) <= tol


def phase_aligned_distance(a, b) -> float:
    """Max-norm distance between arrays after optimal global-phase alignment.

    Finds the unimodular g maximizing overlap and returns ``max|a - g*b|``.
    If a and b are orthogonal no phase helps and the raw distance is
    returned.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    z = np.vdot(b, a)
    g = z / abs(z) if abs(z) > 0 else 1.0
    return float(np.abs(a - g * b).max())
