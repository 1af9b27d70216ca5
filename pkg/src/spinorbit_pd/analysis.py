"""Strategy-space exploration: payoff surface, best responses, equilibria.

The swept family fuses the two one-parameter segments into t in [-1, 1]:
t >= 0 dials the phase-only converter C(0 deg, t*pi) (identity to iZ) and
t < 0 dials C(45 deg, |t|*pi) (identity to iX), so t = 0 is the shared
identity and the five named moves sit at t = -1, -1/2, 0, 1/2, 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import PayoffTable, Strategy, canonical_strategy, classical_mixed, run_protocol
from .optics import ConverterParams

EQUILIBRIUM_TOL = 1e-9
DEFAULT_GRID = 101


def param_to_strategy(t: float) -> Strategy:
    """Map the fused sweep parameter t in [-1, 1] to a converter strategy."""
    if not (math.isfinite(t) and -1.0 <= t <= 1.0):
        raise ValueError(f"sweep parameter out of range: {t}")
    if t >= 0.0:
        return canonical_strategy(ConverterParams(0.0, t * math.pi))
    return canonical_strategy(ConverterParams(45.0, -t * math.pi))


def t_grid(n_per_segment: int) -> np.ndarray:
    """Fused grid over both segments; they share t = 0, so 2n-1 nodes."""
    if n_per_segment < 2:
        raise ValueError("need at least 2 points per segment")
    return np.linspace(-1.0, 1.0, 2 * n_per_segment - 1)


@dataclass(frozen=True)
class SurfacePoint:
    t_a: float
    t_b: float
    payoff_a: float
    payoff_b: float


def sweep(
    n_per_segment: int,
    backend: str = "abstract",
    table: PayoffTable | None = None,
) -> list[SurfacePoint]:
    """Evaluate every (t_a, t_b) node, row-major with t_a as the outer index."""
    ts = t_grid(n_per_segment)
    strategies = [param_to_strategy(float(t)) for t in ts]
    points = []
    for ta, sa in zip(ts, strategies):
        for tb, sb in zip(ts, strategies):
            outcome = run_protocol(sa, sb, backend, table)
            points.append(
                SurfacePoint(
                    t_a=float(ta),
                    t_b=float(tb),
                    payoff_a=outcome.payoff_a,
                    payoff_b=outcome.payoff_b,
                )
            )
    return points


def best_response(
    opponent: Strategy,
    grid: int = DEFAULT_GRID,
    backend: str = "abstract",
    table: PayoffTable | None = None,
) -> tuple[float, float]:
    """Maximize Alice's payoff over the fused family against a fixed opponent.

    Returns (t, payoff).  Payoff ties break toward the smallest |t| and then
    toward t >= 0, so the result is deterministic.
    """
    if grid < 3:
        raise ValueError("best-response grid must be at least 3")
    best_t = None
    best_payoff = -math.inf
    for t in t_grid(grid):
        t = float(t)
        payoff = run_protocol(param_to_strategy(t), opponent, backend, table).payoff_a
        if payoff > best_payoff + EQUILIBRIUM_TOL:
            better = True
        elif payoff >= best_payoff - EQUILIBRIUM_TOL:
            better = abs(t) < abs(best_t) - 1e-15 or (
                abs(abs(t) - abs(best_t)) <= 1e-15 and t > best_t
            )
        else:
            better = False
        if better:
            best_t, best_payoff = t, payoff
    return best_t, best_payoff


@dataclass(frozen=True)
class EquilibriumReport:
    """Nash pairs, pairs dominated by the reference outcome, and the Pareto front.

    All entries are (row, column) index pairs into the strategy list that
    produced the report.
    """

    equilibria: list[tuple[int, int]]
    dominated_pairs: list[tuple[int, int]]
    pareto_front: list[tuple[int, int]]


def nash_discrete(
    strategies: list[Strategy],
    backend: str = "abstract",
    table: PayoffTable | None = None,
    tol: float = EQUILIBRIUM_TOL,
) -> EquilibriumReport:
    """Exhaustive equilibrium analysis over all ordered strategy pairs.

    A pair is Nash when neither player gains more than ``tol`` by a
    unilateral switch within the set.  Dominated pairs are those whose
    payoffs are weakly beaten (one side strictly) by the mutual-iZ
    reference outcome; the Pareto front is computed within the set.
    """
    if not strategies:
        raise ValueError("need at least one strategy")
    n = len(strategies)
    pay_a = np.empty((n, n))
    pay_b = np.empty((n, n))
    for i, a in enumerate(strategies):
        for j, b in enumerate(strategies):
            outcome = run_protocol(a, b, backend, table)
            pay_a[i, j] = outcome.payoff_a
            pay_b[i, j] = outcome.payoff_b

    equilibria = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if pay_a[:, j].max() <= pay_a[i, j] + tol and pay_b[i, :].max() <= pay_b[i, j] + tol
    ]

    ref = Strategy.named("iZ")
    ref_outcome = run_protocol(ref, ref, backend, table)
    ra, rb = ref_outcome.payoff_a, ref_outcome.payoff_b
    dominated = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if ra >= pay_a[i, j] - tol
        and rb >= pay_b[i, j] - tol
        and (ra > pay_a[i, j] + tol or rb > pay_b[i, j] + tol)
    ]

    def beaten(i: int, j: int) -> bool:
        better_a = pay_a >= pay_a[i, j] - tol
        better_b = pay_b >= pay_b[i, j] - tol
        strict = (pay_a > pay_a[i, j] + tol) | (pay_b > pay_b[i, j] + tol)
        return bool((better_a & better_b & strict).any())

    pareto = [(i, j) for i in range(n) for j in range(n) if not beaten(i, j)]
    return EquilibriumReport(equilibria=equilibria, dominated_pairs=dominated, pareto_front=pareto)


@dataclass(frozen=True)
class ClassicalCheck:
    """Mutual-best-response scan over the mixed-strategy square."""

    unique_at_full_defection: bool
    equilibrium: tuple[float, float] | None
    payoffs: tuple[float, float] | None


def classical_minimum_check(
    grid: int = DEFAULT_GRID,
    table: PayoffTable | None = None,
    tol: float = EQUILIBRIUM_TOL,
) -> ClassicalCheck:
    """Verify that always-defect is the unique mutual best response.

    Scans defection probabilities on a grid x grid lattice; a point is kept
    when neither player can do better than ``tol`` by moving along their own
    axis.  Reports whether the kept set is exactly {(1, 1)} and returns the
    first equilibrium found in lexicographic order.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    ps = np.linspace(0.0, 1.0, grid)
    pay_a = np.empty((grid, grid))
    pay_b = np.empty((grid, grid))
    for i, pa in enumerate(ps):
        for j, pb in enumerate(ps):
            pay_a[i, j], pay_b[i, j] = classical_mixed(float(pa), float(pb), table)
    found = [
        (float(ps[i]), float(ps[j]))
        for i in range(grid)
        for j in range(grid)
        if pay_a[:, j].max() <= pay_a[i, j] + tol and pay_b[i, :].max() <= pay_b[i, j] + tol
    ]
    unique = len(found) == 1 and found[0] == (1.0, 1.0)
    point = found[0] if found else None
    return ClassicalCheck(
        unique_at_full_defection=unique,
        equilibrium=point,
        payoffs=classical_mixed(*point, table) if point else None,
    )
