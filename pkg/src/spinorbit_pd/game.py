"""Prisoner's dilemma engine over spin-orbit modes.

A round entangles |CC>, lets each player apply an SU(2) mode converter to
their own degree of freedom, disentangles, and projects onto the four
computational ports.  Outcome probabilities are the squared moduli of the
final amplitudes and payoffs are expected penalty reductions under the
2x2 reduction table.  Outcome labels put Alice's letter first: the "DC"
port means Alice defected, Bob cooperated.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .optics import ConverterParams, calibrated_disentangler, entangler, mode_converter, prepare_initial
from .qmath import BASIS_LABELS, adjoint, tensor

log = logging.getLogger(__name__)

BACKENDS = ("abstract", "optical")


class BadDistribution(ValueError):
    """Probabilities are negative or do not sum to one."""


class AllDark(ValueError):
    """Every background-corrected intensity is zero."""


@dataclass(frozen=True)
class PayoffTable:
    """Penalty reductions R_A(m, n) and R_B(m, n), indexed (Alice move, Bob move).

    Row/column 0 is cooperate, 1 is defect.  The default is the classic
    dilemma: (C,C) -> (3,3), (C,D) -> (0,5), (D,C) -> (5,0), (D,D) -> (1,1).
    """

    r_a: np.ndarray
    r_b: np.ndarray

    def __post_init__(self):
        for name in ("r_a", "r_b"):
            m = np.array(getattr(self, name), dtype=float)
            if m.shape != (2, 2):
                raise ValueError(f"{name} must be 2x2")
            if not np.all(np.isfinite(m)) or np.any(m < 0):
                raise ValueError(f"{name} entries must be finite and nonnegative")
            m.flags.writeable = False
            object.__setattr__(self, name, m)

    @classmethod
    def default(cls) -> "PayoffTable":
        return cls(r_a=[[3.0, 0.0], [5.0, 1.0]], r_b=[[3.0, 5.0], [0.0, 1.0]])

    @classmethod
    def from_overrides(cls, cells: dict[str, tuple[float, float]]) -> "PayoffTable":
        """Default table with some cells replaced, e.g. {"DD": (0, 0)}."""
        base = cls.default()
        r_a = np.array(base.r_a)
        r_b = np.array(base.r_b)
        for label, (va, vb) in cells.items():
            idx = BASIS_LABELS.index(label.upper())
            r_a[idx >> 1, idx & 1] = va
            r_b[idx >> 1, idx & 1] = vb
        return cls(r_a=r_a, r_b=r_b)

    def pair(self, label: str) -> tuple[float, float]:
        idx = BASIS_LABELS.index(label.upper())
        return float(self.r_a[idx >> 1, idx & 1]), float(self.r_b[idx >> 1, idx & 1])

    def bounds(self) -> tuple[float, float]:
        lo = min(self.r_a.min(), self.r_b.min())
        hi = max(self.r_a.max(), self.r_b.max())
        return float(lo), float(hi)


# The five implemented moves.  I is identity for any rotation angle; 0 is
# pinned for determinism.
NAMED_STRATEGIES: dict[str, ConverterParams] = {
    "iX": ConverterParams(45.0, math.pi),
    "Q1": ConverterParams(45.0, math.pi / 2.0),
    "I": ConverterParams(0.0, 0.0),
    "Q2": ConverterParams(0.0, math.pi / 2.0),
    "iZ": ConverterParams(0.0, math.pi),
}

# I and iX only ever cooperate or defect outright; the rest mix the basis
# states and have no classical counterpart.
STRATEGY_TAGS = {"iX": "classical", "Q1": "quantum", "I": "classical", "Q2": "quantum", "iZ": "quantum"}

_DIALED_RE = re.compile(r"^\s*C\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)\s*$")


@dataclass(frozen=True)
class Strategy:
    """A player move: converter parameters, optionally carrying a registry name."""

    params: ConverterParams
    name: str | None = None

    @classmethod
    def named(cls, name: str) -> "Strategy":
        for key, params in NAMED_STRATEGIES.items():
            if key.lower() == name.strip().lower():
                return cls(params=params, name=key)
        raise ValueError(f"unknown strategy name: {name!r}")

    @classmethod
    def dialed(cls, theta: float, phi: float) -> "Strategy":
        return cls(params=ConverterParams(float(theta), float(phi)))

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        """Parse a registry name or 'C(<theta deg>, <phi rad>)'."""
        m = _DIALED_RE.match(text)
        if m:
            try:
                return cls.dialed(float(m.group(1)), float(m.group(2)))
            except ValueError as exc:
                raise ValueError(f"bad converter parameters in {text!r}") from exc
        return cls.named(text)

    def matrix(self) -> np.ndarray:
        return mode_converter(self.params)

    @property
    def label(self) -> str:
        if self.name is not None:
            return self.name
        return f"C({self.params.theta:g}, {self.params.phi:g})"


def canonical_strategy(params: ConverterParams) -> Strategy:
    """Strategy for the given dial, picking up a registry name when it matches."""
    for name, ref in NAMED_STRATEGIES.items():
        if abs(params.theta - ref.theta) <= 1e-12 and abs(params.phi - ref.phi) <= 1e-12:
            return Strategy(params=ref, name=name)
    return Strategy(params=params)


@dataclass(frozen=True)
class Outcome:
    """Final port amplitudes c_mn, probabilities p(m, n), and the payoff pair."""

    amplitudes: np.ndarray
    probs: np.ndarray
    payoff_a: float
    payoff_b: float

    def __post_init__(self):
        for name in ("amplitudes", "probs"):
            arr = np.array(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def prob(self, label: str) -> float:
        return float(self.probs[BASIS_LABELS.index(label.upper())])


def payoffs(probs, table: PayoffTable | None = None) -> tuple[float, float]:
    """Expected penalty reductions sum_mn p(m,n) R_j(m,n) for both players."""
    table = table or PayoffTable.default()
    p = np.asarray(probs, dtype=float)
    if p.shape != (4,):
        raise BadDistribution(f"need 4 probabilities, got shape {p.shape}")
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise BadDistribution(f"not a distribution: {p.tolist()}")
    grid = p.reshape(2, 2)
    return float((grid * table.r_a).sum()), float((grid * table.r_b).sum())


@lru_cache(maxsize=2)
def _stages(backend: str) -> tuple[np.ndarray, np.ndarray]:
    """(disentangler, entangled initial amplitudes) for a backend, cached."""
    if backend == "abstract":
        u = entangler()
        initial = u @ np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
        return adjoint(u), initial
    if backend == "optical":
        return calibrated_disentangler(), prepare_initial().amp
    raise ValueError(f"unknown backend: {backend!r} (choose from {BACKENDS})")


def protocol_amplitudes(ca, cb, backend: str = "abstract") -> np.ndarray:
    """Final amplitudes for raw 2x2 player operators (entangle, move, disentangle)."""
    disentangle, initial = _stages(backend)
    return disentangle @ (tensor(ca, cb) @ initial)


def run_protocol(
    a: Strategy,
    b: Strategy,
    backend: str = "abstract",
    table: PayoffTable | None = None,
) -> Outcome:
    """Play one round of the dilemma and return amplitudes, probabilities, payoffs.

    The abstract backend conjugates the move with the ideal entangler; the
    optical backend runs the wave-plate/interferometer pipeline with its
    fitted phase calibration.  Both yield the same probabilities.
    """
    amp = protocol_amplitudes(a.matrix(), b.matrix(), backend)
    probs = np.abs(amp) ** 2
    pay_a, pay_b = payoffs(probs, table)
    return Outcome(amplitudes=amp, probs=probs, payoff_a=pay_a, payoff_b=pay_b)


def classical_mixed(pa_d: float, pb_d: float, table: PayoffTable | None = None) -> tuple[float, float]:
    """Payoffs when each player independently defects with the given probability."""
    if not (0.0 <= pa_d <= 1.0 and 0.0 <= pb_d <= 1.0):
        raise ValueError("defection probabilities must lie in [0, 1]")
    probs = np.array(
        [
            (1.0 - pa_d) * (1.0 - pb_d),
            (1.0 - pa_d) * pb_d,
            pa_d * (1.0 - pb_d),
            pa_d * pb_d,
        ]
    )
    return payoffs(probs, table)


@dataclass(frozen=True)
class Intensities:
    """Measured port powers (arbitrary units) plus a common background level."""

    i_mn: np.ndarray
    background: float = 0.0

    def __post_init__(self):
        arr = np.array(self.i_mn, dtype=float).reshape(-1)
        if arr.shape != (4,):
            raise ValueError("need 4 port intensities")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0) or not (
            math.isfinite(self.background) and self.background >= 0
        ):
            raise ValueError("intensities and background must be finite and nonnegative")
        arr.flags.writeable = False
        object.__setattr__(self, "i_mn", arr)


def intensities_to_probs(x: Intensities) -> np.ndarray:
    """Background-subtract, clamp negatives to zero, normalize to total power."""
    corrected = x.i_mn - x.background
    if np.any(corrected < 0):
        # Measurement noise can push channels below background; clamping is
        # the standard correction but worth a trace in the record.
        log.warning("clamping negative corrected intensities: %s", corrected.tolist())
        corrected = np.clip(corrected, 0.0, None)
    total = corrected.sum()
    if total <= 0.0:
        raise AllDark("all channels at or below background")
    return corrected / total


def coefficient_table(
    strategies: list[Strategy] | None = None,
    backend: str = "abstract",
    table: PayoffTable | None = None,
) -> list[list[Outcome]]:
    """Outcome for every ordered pair of strategies (rows Alice, columns Bob)."""
    if strategies is None:
        strategies = [Strategy.named(name) for name in NAMED_STRATEGIES]
    return [[run_protocol(a, b, backend, table) for b in strategies] for a in strategies]
