/** JSON shapes of the session service (mirrored verbatim). */

export interface Rational {
  num: number;
  den: number;
}

export interface GameParamSchema {
  name: string;
  type: string;
  required?: boolean;
  default?: number;
}

export interface GameInfo {
  name: string;
  doors: number;
  params: GameParamSchema[];
}

export interface AnalysisEnvelope {
  command: string;
  parameters: Record<string, string>;
  exact_results: Record<string, Rational>;
  float_results: Record<string, number>;
  metadata: Record<string, unknown>;
}

export interface SessionCreated {
  id: string;
  game: string;
  door_count: number;
  params: Record<string, string>;
  phase: string;
}

export interface RevealEvent {
  revealed_door: number;
  revealed: "goat" | "prize";
  phase: string;
  outcome?: string;
  prize_door?: number;
  seed?: number;
}

export interface DecisionOutcome {
  outcome: "win" | "lose";
  prize_door: number;
  seed: number;
  phase: string;
}

export interface SimulationResult {
  trials: number;
  seed: number;
  strategy: string;
  wins: number;
  goat_reveals: number;
  prize_reveals: number;
  empirical_win_given_goat: number;
  empirical_win_rate: number;
}

export interface StatsResult {
  game: string;
  exact: Record<string, Rational>;
  empirical: Record<string, { plays: number; wins: number }>;
}

export function rationalText(r: Rational): string {
  return r.den === 1 ? `${r.num}` : `${r.num}/${r.den}`;
}

export function rationalValue(r: Rational): number {
  return r.num / r.den;
}
