import type { RevealEvent, DecisionOutcome } from "./types.js";

export type DoorState = "closed" | "picked" | "open-goat" | "open-prize";

export type Phase =
  | "idle"
  | "awaiting_pick"
  | "awaiting_decision"
  | "finished";

export interface Tally {
  plays: number;
  wins: number;
}

/**
 * Client-side mirror of the server's session phase machine. It holds only
 * what the server has disclosed; the prize door is unknown until the
 * session finishes.
 */
export class GameView {
  phase: Phase = "idle";
  doorCount = 0;
  sessionId: string | null = null;
  picked: number | null = null;
  revealed: number | null = null;
  prizeDoor: number | null = null;
  outcome: string | null = null;
  log: string[] = [];
  tallies: Record<"stick" | "switch", Tally> = {
    stick: { plays: 0, wins: 0 },
    switch: { plays: 0, wins: 0 },
  };

  startSession(sessionId: string, doorCount: number): void {
    this.sessionId = sessionId;
    this.doorCount = doorCount;
    this.phase = "awaiting_pick";
    this.picked = null;
    this.revealed = null;
    this.prizeDoor = null;
    this.outcome = null;
    this.say(`New game with ${doorCount} doors. Pick one!`);
  }

  applyPick(door: number, reveal: RevealEvent): void {
    if (this.phase !== "awaiting_pick") {
      throw new Error(`cannot pick in phase ${this.phase}`);
    }
    this.picked = door;
    this.revealed = reveal.revealed_door;
    if (reveal.revealed === "prize") {
      this.phase = "finished";
      this.outcome = reveal.outcome ?? "host_opened_prize";
      this.prizeDoor = reveal.prize_door ?? reveal.revealed_door;
      this.say(
        `Monty opened door ${reveal.revealed_door} — the prize! Game over.`,
      );
    } else {
      this.phase = "awaiting_decision";
      this.say(
        `You picked door ${door}. Monty opened door ` +
          `${reveal.revealed_door}: a goat. Stick or switch?`,
      );
    }
  }

  applyDecision(strategy: "stick" | "switch", result: DecisionOutcome): void {
    if (this.phase !== "awaiting_decision") {
      throw new Error(`cannot decide in phase ${this.phase}`);
    }
    this.phase = "finished";
    this.outcome = result.outcome;
    this.prizeDoor = result.prize_door;
    const tally = this.tallies[strategy];
    tally.plays += 1;
    if (result.outcome === "win") tally.wins += 1;
    this.say(
      `You ${strategy === "stick" ? "stuck" : "switched"} and ` +
        `${result.outcome === "win" ? "WON" : "lost"} ` +
        `(prize was behind door ${result.prize_door}).`,
    );
  }

  doorState(door: number): DoorState {
    if (door === this.revealed) {
      return this.prizeDoor === door ? "open-prize" : "open-goat";
    }
    if (door === this.picked) return "picked";
    return "closed";
  }

  switchTargets(): number[] {
    if (this.phase !== "awaiting_decision") return [];
    const targets: number[] = [];
    for (let door = 1; door <= this.doorCount; door++) {
      if (door !== this.picked && door !== this.revealed) targets.push(door);
    }
    return targets;
  }

  rateText(strategy: "stick" | "switch"): string {
    const { plays, wins } = this.tallies[strategy];
    if (plays === 0) return "—";
    return `${wins}/${plays} = ${((100 * wins) / plays).toFixed(1)}%`;
  }

  private say(message: string): void {
    this.log.push(message);
    if (this.log.length > 50) this.log.shift();
  }
}
