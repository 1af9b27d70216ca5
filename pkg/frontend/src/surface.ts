/** Payoff-surface explorer helpers: grid lookup, color ramp, dial mapping.
 * Cell values come from the service sweep endpoint untouched. */

import { StrategyInfo, SweepJson } from "./api.js";
import { fmt } from "./model.js";

export interface SurfaceView {
  n: number;
  t: number[];
  values: number[][]; // Alice's payoff, rows t_a, columns t_b
  min: number;
  max: number;
}

export function surfaceView(sweep: SweepJson): SurfaceView {
  let min = Infinity;
  let max = -Infinity;
  for (const row of sweep.payoff_a) {
    for (const v of row) {
      if (v < min) min = v;
      if (v > max) max = v;
    }
  }
  return { n: sweep.n, t: sweep.t, values: sweep.payoff_a, min, max };
}

export function indexOfT(t: number[], value: number): number {
  let best = 0;
  for (let i = 1; i < t.length; i++) {
    if (Math.abs(t[i] - value) < Math.abs(t[best] - value)) best = i;
  }
  return best;
}

export interface CellView {
  i: number; // row, t_a
  j: number; // column, t_b
  tA: number;
  tB: number;
  value: number;
  text: string;
}

export function cellAt(view: SurfaceView, tA: number, tB: number): CellView {
  const i = indexOfT(view.t, tA);
  const j = indexOfT(view.t, tB);
  const value = view.values[i][j];
  return { i, j, tA: view.t[i], tB: view.t[j], value, text: fmt(value) };
}

/** Linear color ramp from dark blue to warm yellow over [min, max]. */
export function colorFor(value: number, min: number, max: number): string {
  const span = max > min ? max - min : 1;
  const u = Math.max(0, Math.min(1, (value - min) / span));
  const hue = 240 - 190 * u;
  const light = 25 + 45 * u;
  return `hsl(${hue.toFixed(0)}, 80%, ${light.toFixed(0)}%)`;
}

/** Converter dial that realizes the sweep parameter t. */
export function dialFor(t: number): { theta: number; phi: number } {
  return t >= 0 ? { theta: 0, phi: t * Math.PI } : { theta: 45, phi: -t * Math.PI };
}

/** Sweep parameter of a named strategy, from its served (theta, phi). */
export function tOf(strategy: StrategyInfo): number {
  const t = strategy.phi / Math.PI;
  return strategy.theta > 22.5 ? -t : t;
}

export interface MarkerView {
  name: string;
  i: number;
  j: number;
}

/** Diagonal markers (s, s) for the served named strategies. */
export function markers(view: SurfaceView, strategies: StrategyInfo[]): MarkerView[] {
  return strategies.map((s) => {
    const idx = indexOfT(view.t, tOf(s));
    return { name: s.name, i: idx, j: idx };
  });
}
