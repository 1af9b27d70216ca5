/** View-models and formatting. Everything here is presentation: numbers are
 * passed through from API payloads (trimmed for display), never derived. */

import { ApiClient, ProbGrid, RoundJson } from "./api.js";

export type StrategyChoice =
  | { kind: "named"; name: string }
  | { kind: "dialed"; theta: number; phi: number };

export function choiceLabel(choice: StrategyChoice): string {
  if (choice.kind === "named") return choice.name;
  return `C(${trim(choice.theta)}, ${trim(choice.phi)})`;
}

function trim(x: number): string {
  const s = x.toFixed(4);
  return s.replace(/0+$/, "").replace(/\.$/, "");
}

/** Fixed-point with trailing zeros trimmed: 3 -> "3", 0.5 -> "0.5". */
export function fmt(x: number): string {
  const s = x.toFixed(3);
  return s.replace(/0+$/, "").replace(/\.$/, "");
}

export function formatPayoffs(payoffs: [number, number]): string {
  return `${fmt(payoffs[0])} / ${fmt(payoffs[1])}`;
}

export const PORT_ORDER = ["cc", "cd", "dc", "dd"] as const;

export interface PortView {
  label: string; // "CC" .. "DD", Alice's letter first
  value: number; // probability straight from the API
  text: string;
  brightness: number; // linear in the probability, for the tile fill
}

export function portViews(probs: ProbGrid): PortView[] {
  return PORT_ORDER.map((key) => ({
    label: key.toUpperCase(),
    value: probs[key],
    text: probs[key].toFixed(3),
    brightness: Math.max(0, Math.min(1, probs[key])),
  }));
}

export interface RoundView {
  round: number;
  you: string;
  opponent: string;
  ports: PortView[];
  payoffText: string;
  cumulativeText: string;
}

export function roundView(r: RoundJson): RoundView {
  return {
    round: r.round,
    you: r.a,
    opponent: r.b,
    ports: portViews(r.probs),
    payoffText: formatPayoffs(r.payoffs),
    cumulativeText: formatPayoffs(r.cumulative),
  };
}

/** One browser tab's game. History is append-only and one round request is
 * in flight at most. */
export class GameSession {
  id: string | null = null;
  policy = "nash";
  pending = false;
  history: RoundView[] = [];
  cumulativeText = "";

  constructor(private readonly api: ApiClient) {}

  async start(policy: string, strategy?: string): Promise<void> {
    const created = await this.api.createSession(policy, strategy);
    this.id = created.id;
    this.policy = policy;
    this.history = [];
    this.cumulativeText = "";
    this.pending = false;
  }

  async playRound(choice: StrategyChoice): Promise<RoundView> {
    if (!this.id) throw new Error("no active session");
    if (this.pending) throw new Error("a round is already in flight");
    this.pending = true;
    try {
      const result = await this.api.postRound(this.id, choiceLabel(choice));
      const view = roundView(result);
      this.history.push(view);
      this.cumulativeText = view.cumulativeText;
      return view;
    } finally {
      this.pending = false;
    }
  }
}
