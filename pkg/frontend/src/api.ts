import type {
  AnalysisEnvelope,
  DecisionOutcome,
  GameInfo,
  RevealEvent,
  SessionCreated,
  SimulationResult,
  StatsResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

/** Thin typed client over the session service; computes nothing itself. */
export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : {},
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const data = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        data && typeof data === "object" && "detail" in data
          ? String((data as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return data as T;
  }

  listGames(): Promise<{ games: GameInfo[] }> {
    return this.request("GET", "/games");
  }

  analysis(
    game: string,
    params: Record<string, string> = {},
  ): Promise<AnalysisEnvelope> {
    const query = new URLSearchParams({ game, ...params });
    return this.request("GET", `/analysis?${query}`);
  }

  stats(
    game: string,
    params: Record<string, string> = {},
  ): Promise<StatsResult> {
    const query = new URLSearchParams({ game, ...params });
    return this.request("GET", `/stats?${query}`);
  }

  createSession(
    game: string,
    params: Record<string, string> = {},
    seed?: number,
  ): Promise<SessionCreated> {
    const body: Record<string, unknown> = { game, params };
    if (seed !== undefined) body.seed = seed;
    return this.request("POST", "/sessions", body);
  }

  pick(sessionId: string, door: number): Promise<RevealEvent> {
    return this.request("POST", `/sessions/${sessionId}/pick`, { door });
  }

  stick(sessionId: string): Promise<DecisionOutcome> {
    return this.request("POST", `/sessions/${sessionId}/decision`, {
      action: "stick",
    });
  }

  switchTo(sessionId: string, door: number): Promise<DecisionOutcome> {
    return this.request("POST", `/sessions/${sessionId}/decision`, {
      action: "switch",
      switch_to: door,
    });
  }

  simulate(
    game: string,
    strategy: string,
    trials: number,
    seed: number,
    params: Record<string, string> = {},
  ): Promise<SimulationResult> {
    return this.request("POST", "/simulate", {
      game,
      strategy,
      trials,
      seed,
      params,
    });
  }
}
