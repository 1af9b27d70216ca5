/** Typed client for the game service JSON API. All game numbers shown in the
 * UI originate from these responses; the client never recomputes them. */

export interface StrategyInfo {
  name: string;
  theta: number;
  phi: number;
  tag: "classical" | "quantum";
}

export interface ProbGrid {
  cc: number;
  cd: number;
  dc: number;
  dd: number;
}

export interface OutcomeJson {
  amplitudes: { re: number; im: number }[];
  probs: ProbGrid;
  payoffs: [number, number];
}

export interface RoundJson extends OutcomeJson {
  round: number;
  a: string;
  b: string;
  cumulative: [number, number];
}

export interface SessionJson {
  id: string;
  policy: string;
  strategy?: string;
  history: RoundJson[];
  cumulative: [number, number];
}

export interface SweepJson {
  n: number;
  t: number[];
  payoff_a: number[][];
  payoff_b: number[][];
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      body = null;
    }
    if (!resp.ok) {
      const reason =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${resp.status}`;
      throw new ApiError(resp.status, reason);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  strategies(): Promise<StrategyInfo[]> {
    return this.request<StrategyInfo[]>("/api/strategies");
  }

  play(a: string, b: string, backend?: string): Promise<OutcomeJson> {
    return this.post<OutcomeJson>("/api/play", backend ? { a, b, backend } : { a, b });
  }

  createSession(policy: string, strategy?: string): Promise<{ id: string; policy: string }> {
    const body: Record<string, string> = { policy };
    if (strategy !== undefined) body.strategy = strategy;
    return this.post("/api/session", body);
  }

  postRound(sessionId: string, a: string): Promise<RoundJson> {
    return this.post<RoundJson>(`/api/session/${sessionId}/round`, { a });
  }

  session(sessionId: string): Promise<SessionJson> {
    return this.request<SessionJson>(`/api/session/${sessionId}`);
  }

  sweep(n: number): Promise<SweepJson> {
    return this.request<SweepJson>(`/api/sweep?n=${n}`);
  }
}
