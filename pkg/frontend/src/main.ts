import { ApiClient } from "./api.js";
import { buildChartData, renderChartSvg } from "./chart.js";
import { GameView } from "./state.js";
import type { AnalysisEnvelope } from "./types.js";
import { rationalText } from "./types.js";

const api = new ApiClient("");
const view = new GameView();

const el = {
  game: document.getElementById("game-select") as HTMLSelectElement,
  qControls: document.getElementById("q-controls") as HTMLElement,
  q1: document.getElementById("q1") as HTMLInputElement,
  q2: document.getElementById("q2") as HTMLInputElement,
  q3: document.getElementById("q3") as HTMLInputElement,
  qReadout: document.getElementById("q-readout") as HTMLElement,
  newGame: document.getElementById("new-game") as HTMLButtonElement,
  doors: document.getElementById("doors") as HTMLElement,
  decisions: document.getElementById("decisions") as HTMLElement,
  log: document.getElementById("log") as HTMLElement,
  exact: document.getElementById("exact-panel") as HTMLElement,
  empirical: document.getElementById("empirical-panel") as HTMLElement,
  simulate: document.getElementById("simulate-10k") as HTMLButtonElement,
  error: document.getElementById("error") as HTMLElement,
  chart: document.getElementById("chart") as HTMLElement,
};

// q sliders step in 1/96 so every value is an exact fraction server-side
const Q_DENOM = 96;

function sliderFraction(input: HTMLInputElement): string {
  return `${input.value}/${Q_DENOM}`;
}

function currentParams(): Record<string, string> {
  if (el.game.value !== "psi-epistemic") return {};
  return {
    q1: sliderFraction(el.q1),
    q2: sliderFraction(el.q2),
    q3: sliderFraction(el.q3),
  };
}

function showError(message: string): void {
  el.error.textContent = message;
  el.error.hidden = message === "";
}

async function guard<T>(work: () => Promise<T>): Promise<T | null> {
  try {
    showError("");
    return await work();
  } catch (err) {
    showError(err instanceof Error ? err.message : String(err));
    return null;
  }
}

function renderDoors(): void {
  el.doors.replaceChildren();
  for (let door = 1; door <= view.doorCount; door++) {
    const button = document.createElement("button");
    const state = view.doorState(door);
    button.className = `door ${state}`;
    button.textContent =
      state === "open-goat"
        ? `🐐 ${door}`
        : state === "open-prize"
          ? `🏆 ${door}`
          : `${door}`;
    button.setAttribute(
      "aria-label",
      `Door ${door}${state === "picked" ? " (your pick)" : ""}`,
    );
    if (view.phase === "awaiting_pick") {
      button.addEventListener("click", () => pickDoor(door));
    } else if (
      view.phase === "awaiting_decision" &&
      view.switchTargets().includes(door)
    ) {
      button.addEventListener("click", () => decide("switch", door));
    } else {
      button.disabled = true;
    }
    el.doors.appendChild(button);
  }

  el.decisions.replaceChildren();
  if (view.phase === "awaiting_decision") {
    const stickButton = document.createElement("button");
    stickButton.textContent = `Stick with door ${view.picked}`;
    stickButton.addEventListener("click", () => decide("stick"));
    el.decisions.appendChild(stickButton);
    const hint = document.createElement("span");
    hint.textContent = " or click an unopened door to switch";
    el.decisions.appendChild(hint);
  }
}

function renderLog(): void {
  el.log.replaceChildren(
    ...view.log.slice(-8).map((line) => {
      const item = document.createElement("li");
      item.textContent = line;
      return item;
    }),
  );
}

function renderEmpirical(): void {
  el.empirical.innerHTML =
    `<h3>Your sessions</h3>` +
    `<p>stick: ${view.rateText("stick")}<br>` +
    `switch: ${view.rateText("switch")}</p>`;
}

function renderExact(envelope: AnalysisEnvelope): void {
  const rows = [
    ["P(win | stick, goat shown)", "p_win_stick_given_goat"],
    ["P(win | switch, goat shown)", "p_win_switch_given_goat"],
    ["P(Monty opens prize)", "p_opens_prize"],
  ]
    .map(([label, key]) => {
      const r = envelope.exact_results[key];
      return `<tr><td>${label}</td><td>${rationalText(r)}</td>` +
        `<td>${(envelope.float_results[key] * 100).toFixed(2)}%</td></tr>`;
    })
    .join("");
  el.exact.innerHTML =
    `<h3>Exact (server)</h3><table><tbody>${rows}</tbody></table>`;
}

async function refreshExact(): Promise<void> {
  const envelope = await guard(() =>
    api.analysis(el.game.value, currentParams()),
  );
  if (envelope) renderExact(envelope);
}

async function pickDoor(door: number): Promise<void> {
  if (!view.sessionId) return;
  const reveal = await guard(() => api.pick(view.sessionId!, door));
  if (!reveal) return;
  view.applyPick(door, reveal);
  renderAll();
}

async function decide(
  strategy: "stick" | "switch",
  door?: number,
): Promise<void> {
  if (!view.sessionId) return;
  const result = await guard(() =>
    strategy === "stick"
      ? api.stick(view.sessionId!)
      : api.switchTo(view.sessionId!, door!),
  );
  if (!result) return;
  view.applyDecision(strategy, result);
  renderAll();
}

async function newGame(): Promise<void> {
  const created = await guard(() =>
    api.createSession(el.game.value, currentParams()),
  );
  if (!created) return;
  view.startSession(created.id, created.door_count);
  renderAll();
  await refreshExact();
}

async function simulateBatch(): Promise<void> {
  const result = await guard(() =>
    api.simulate(
      el.game.value,
      "switch",
      10_000,
      Math.floor(Math.random() * 2 ** 31),
      currentParams(),
    ),
  );
  if (!result) return;
  view.log.push(
    `Server simulated ${result.trials} switch games: ` +
      `win|goat = ${(100 * result.empirical_win_given_goat).toFixed(2)}%`,
  );
  renderLog();
}

function clampSlider(input: HTMLInputElement): void {
  const max = Number(input.max);
  const value = Number(input.value);
  if (value > max || value < 0) {
    input.value = String(Math.min(Math.max(value, 0), max));
    view.log.push("q value clamped to its valid range");
  }
}

async function refreshChart(): Promise<void> {
  // sample the curves at exact q values the server can evaluate
  const steps = [0, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48];
  const envelopes = await guard(() =>
    Promise.all(
      steps.map(async (n) => {
        const third = `${n}/288`; // q/3 with q = n/96
        const envelope = await api.analysis("psi-epistemic", {
          q1: third,
          q2: third,
          q3: third,
        });
        return { q: n / Q_DENOM, envelope };
      }),
    ),
  );
  if (!envelopes) return;
  el.chart.innerHTML = renderChartSvg(buildChartData(envelopes));
}

function updateQReadout(): void {
  const q =
    (Number(el.q1.value) + Number(el.q2.value) + Number(el.q3.value)) /
    Q_DENOM;
  el.qReadout.textContent =
    `q1=${el.q1.value}/96, q2=${el.q2.value}/96, ` +
    `q3=${el.q3.value}/96, q=${q.toFixed(4)}`;
}

function renderAll(): void {
  el.qControls.hidden = el.game.value !== "psi-epistemic";
  renderDoors();
  renderLog();
  renderEmpirical();
}

async function init(): Promise<void> {
  const catalog = await guard(() => api.listGames());
  if (catalog) {
    el.game.replaceChildren(
      ...catalog.games.map((g) => {
        const option = document.createElement("option");
        option.value = g.name;
        option.textContent = g.name;
        return option;
      }),
    );
  }
  el.game.addEventListener("change", () => {
    renderAll();
    void refreshExact();
  });
  el.newGame.addEventListener("click", () => void newGame());
  el.simulate.addEventListener("click", () => void simulateBatch());
  for (const slider of [el.q1, el.q2, el.q3]) {
    slider.addEventListener("input", () => {
      clampSlider(slider);
      updateQReadout();
      void refreshExact();
    });
  }
  updateQReadout();
  renderAll();
  await refreshExact();
  await refreshChart();
}

void init();
