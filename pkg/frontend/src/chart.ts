import type { AnalysisEnvelope } from "./types.js";
import { rationalValue } from "./types.js";

export interface CurvePoint {
  q: number;
  stick: number;
  switch: number;
}

export interface ChartData {
  points: CurvePoint[];
  /** q where the server reports stick == switch (exact), if present. */
  crossover: { q: number; value: number } | null;
}

/**
 * Builds chart data purely from server analysis envelopes — the client
 * never evaluates the probability formulas itself.
 */
export function buildChartData(
  envelopes: { q: number; envelope: AnalysisEnvelope }[],
): ChartData {
  const points = envelopes.map(({ q, envelope }) => ({
    q,
    stick: rationalValue(envelope.exact_results.p_win_stick_given_goat),
    switch: rationalValue(envelope.exact_results.p_win_switch_given_goat),
  }));
  points.sort((a, b) => a.q - b.q);

  let crossover: ChartData["crossover"] = null;
  for (const { q, envelope } of envelopes) {
    const stick = envelope.exact_results.p_win_stick_given_goat;
    const sw = envelope.exact_results.p_win_switch_given_goat;
    if (stick.num * sw.den === sw.num * stick.den) {
      crossover = { q, value: rationalValue(stick) };
      break;
    }
  }
  return { points, crossover };
}

export interface ChartGeometry {
  width: number;
  height: number;
  margin: number;
}

const DEFAULT_GEOMETRY: ChartGeometry = { width: 420, height: 260, margin: 36 };

function scales(data: ChartData, geo: ChartGeometry) {
  const qs = data.points.map((p) => p.q);
  const values = data.points.flatMap((p) => [p.stick, p.switch]);
  const qMin = Math.min(...qs);
  const qMax = Math.max(...qs);
  const vMin = Math.min(...values);
  const vMax = Math.max(...values);
  const pad = (vMax - vMin || 1) * 0.1;
  const x = (q: number) =>
    geo.margin +
    ((q - qMin) / (qMax - qMin || 1)) * (geo.width - 2 * geo.margin);
  const y = (v: number) =>
    geo.height -
    geo.margin -
    ((v - vMin + pad) / (vMax - vMin + 2 * pad)) *
      (geo.height - 2 * geo.margin);
  return { x, y };
}

export function polylinePoints(
  data: ChartData,
  curve: "stick" | "switch",
  geo: ChartGeometry = DEFAULT_GEOMETRY,
): string {
  const { x, y } = scales(data, geo);
  return data.points
    .map((p) => `${x(p.q).toFixed(1)},${y(p[curve]).toFixed(1)}`)
    .join(" ");
}

export function renderChartSvg(
  data: ChartData,
  geo: ChartGeometry = DEFAULT_GEOMETRY,
): string {
  if (data.points.length === 0) return "<svg></svg>";
  const { x, y } = scales(data, geo);
  const stick = polylinePoints(data, "stick", geo);
  const sw = polylinePoints(data, "switch", geo);
  let marker = "";
  if (data.crossover) {
    const cx = x(data.crossover.q).toFixed(1);
    const cy = y(data.crossover.value).toFixed(1);
    marker =
      `<circle class="crossover" cx="${cx}" cy="${cy}" r="5"/>` +
      `<text x="${cx}" y="${Number(cy) - 10}" text-anchor="middle" ` +
      `class="crossover-label">q = ${data.crossover.q}</text>`;
  }
  return (
    `<svg viewBox="0 0 ${geo.width} ${geo.height}" role="img" ` +
    `aria-label="Stick and switch win rates against q">` +
    `<polyline class="curve stick" fill="none" points="${stick}"/>` +
    `<polyline class="curve switch" fill="none" points="${sw}"/>` +
    marker +
    `</svg>`
  );
}
