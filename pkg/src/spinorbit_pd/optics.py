"""Optical elements and protocol stages as matrices in the fixed basis.

Wave plates act on polarization, Dove prisms and cylindrical-lens
converters on the spatial mode; both families share the same SU(2) form
``mode_converter``.  Rotation angles are given in degrees and retardation
phases in radians at every public boundary.  Matrix products are written
physics-style: the rightmost factor is the first element the beam
traverses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qmath import (
    PIPELINE_TOL,
    SpinOrbitState,
    adjoint,
    apply,
    basis_state,
    is_unitary,
    phase_aligned_distance,
    tensor,
)


class MissingPhase(ValueError):
    """A variable retarder was requested without its retardation phase."""


class PreparationError(RuntimeError):
    """The preparation pipeline drifted from the expected entangled mode."""


class CalibrationFailed(RuntimeError):
    """No diagonal phase correction matches realized to target.

    Signals a genuine convention mismatch rather than a phase gauge; the
    best residual found is kept on the exception.
    """

    def __init__(self, residual: float):
        super().__init__(f"calibration residual {residual:.3e} exceeds tolerance")
        self.residual = residual


@dataclass(frozen=True)
class ConverterParams:
    """Mode-converter setting: rotation angle in degrees, retardation in radians."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("converter angles must be finite")


def mode_converter(params: ConverterParams) -> np.ndarray:
    """SU(2) matrix of a mode converter rotated by theta with retardation phi.

    Diagonal entries are cos(phi/2) +- i sin(phi/2) cos(2 theta), off-diagonal
    entries i sin(phi/2) sin(2 theta).  Determinant is exactly 1.
    """
    theta = math.radians(params.theta)
    c = math.cos(params.phi / 2.0)
    s = math.sin(params.phi / 2.0)
    cz = s * math.cos(2.0 * theta)
    sx = s * math.sin(2.0 * theta)
    return np.array(
        [[c + 1j * cz, 1j * sx], [1j * sx, c - 1j * cz]], dtype=complex
    )


def mz(phi: float) -> np.ndarray:
    """Mach-Zehnder transfer matrix with relative arm phase phi (radians).

    Leaves psi_h e_H alone, flips the sign of psi_v e_H, and swaps the two
    V-polarized modes with phase e^{i phi} and an antisymmetric sign.
    """
    e = np.exp(1j * phi)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, 0, -e],
            [0, 0, e, 0],
        ],
        dtype=complex,
    )


def entangler() -> np.ndarray:
    """The nonlocal entangling operation, (I + i X(x)X) / sqrt(2).

    The normalization makes it unitary; it sends |CC> to (|CC> + i|DD>)/sqrt(2).
    """
    u = np.array(
        [
            [1, 0, 0, 1j],
            [0, 1, 1j, 0],
            [0, 1j, 1, 0],
            [1j, 0, 0, 1],
        ],
        dtype=complex,
    )
    return u / math.sqrt(2.0)


def prepare_initial() -> SpinOrbitState:
    """Prepare the maximally entangled mode (psi_h e_H + i psi_v e_V)/sqrt(2).

    Follows the physical pipeline: a quarter-wave plate at 45 degrees on the
    polarization, then a balanced Mach-Zehnder.  The result is checked
    against the expected amplitudes up to a global phase.
    """
    state = basis_state("CC")  # psi_h e_H out of the hologram
    state = apply(tensor(mode_converter(ConverterParams(45.0, math.pi / 2.0)), np.eye(2)), state)
    state = apply(mz(0.0), state)
    expected = np.array([1.0, 0.0, 0.0, 1j], dtype=complex) / math.sqrt(2.0)
    drift = phase_aligned_distance(state.amp, expected)
    if drift > PIPELINE_TOL:
        raise PreparationError(f"preparation pipeline drifted by {drift:.3e}")
    return state


def disentangler_pipeline() -> np.ndarray:
    """Matrix of the disentangling chain: MZ(pi/2), QWP at -45 degrees, MZ(0).

    The beam traverses MZ(pi/2) first, so it is the rightmost factor.  The
    product inverts the entangler only after a fixed polarization phase
    correction; see ``calibrate``.
    """
    qwp = tensor(mode_converter(ConverterParams(-45.0, math.pi / 2.0)), np.eye(2))
    return mz(0.0) @ qwp @ mz(math.pi / 2.0)


@dataclass(frozen=True)
class PipelineReport:
    """Result of fitting a diagonal phase correction between two unitaries."""

    target: np.ndarray
    realized: np.ndarray
    calibration: np.ndarray  # 4 unimodular diagonal entries, first fixed to 1
    global_phase: complex
    residual: float  # max|realized @ diag(calibration) - global_phase * target|


def calibrate(realized, target, tol: float = PIPELINE_TOL) -> PipelineReport:
    """Fit phases D (diagonal, unimodular, D[0]=1) and g so realized@D = g*target.

    Physically D is a stack of fixed phase retarders appended to the
    pipeline.  The per-column overlap gives the optimal relative phase in
    closed form; a residual above ``tol`` means the two matrices differ by
    more than a phase gauge and CalibrationFailed is raised.
    """
    realized = np.asarray(realized, dtype=complex)
    target = np.asarray(target, dtype=complex)
    if not (is_unitary(realized, 1e-9) and is_unitary(target, 1e-9)):
        raise ValueError("calibrate expects two unitary matrices")
    overlaps = np.einsum("ij,ij->j", realized.conj(), target)
    mags = np.abs(overlaps)
    # Orthogonal columns admit no phase fix; keep 1 and let the residual show it.
    phases = np.where(mags > 1e-12, overlaps / np.where(mags > 0, mags, 1.0), 1.0)
    calibration = phases / phases[0]
    global_phase = complex(1.0 / phases[0])
    residual = float(
        np.abs(realized @ np.diag(calibration) - global_phase * target).max()
    )
    report = PipelineReport(
        target=target,
        realized=realized,
        calibration=calibration,
        global_phase=global_phase,
        residual=residual,
    )
    if residual > tol:
        raise CalibrationFailed(residual)
    return report


@lru_cache(maxsize=1)
def _calibration_report() -> PipelineReport:
    return calibrate(disentangler_pipeline(), adjoint(entangler()))


def calibrated_disentangler() -> np.ndarray:
    """The disentangling chain with its fitted phase correction applied."""
    report = _calibration_report()
    return report.realized @ np.diag(report.calibration)


def calibration_report() -> PipelineReport:
    """Fit report for the disentangling chain against the entangler adjoint."""
    return _calibration_report()


_FIXED_RETARDATIONS = {"qwp": math.pi / 2.0, "hwp": math.pi, "dove_prism": math.pi}


def named_element(kind: str, theta: float, phi: float | None = None) -> np.ndarray:
    """Catalog element by name: QWP, HWP, Dove prism, or cylindrical converter.

    Quarter-wave plates retard by pi/2 and half-wave plates by pi; a Dove
    prism is the spatial-mode analogue of an HWP.  Cylindrical converters
    have a variable retardation and require ``phi``.
    """
    key = kind.lower().replace("-", "_")
    if key in _FIXED_RETARDATIONS:
        return mode_converter(ConverterParams(theta, _FIXED_RETARDATIONS[key]))
    if key in ("cylindrical", "cylindrical_converter"):
        if phi is None:
            raise MissingPhase("cylindrical converters need a retardation phase")
        return mode_converter(ConverterParams(theta, phi))
    raise ValueError(f"unknown element kind: {kind!r}")
