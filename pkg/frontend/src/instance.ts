/**
 * Instance-shape plot: per-step packet counts as vertical bars, the view
 * used to eyeball how heavy-tailed or spiky an arrival sequence is.
 */

import { document, fmt, line, text, ticks } from "./svg.js";
import { scale } from "./svg.js";

export class InstanceError extends Error {}

export interface InstancePayload {
  d: number;
  counts: number[];
}

export function parseInstance(jsonText: string): InstancePayload {
  let payload: unknown;
  try {
    payload = JSON.parse(jsonText);
  } catch (exc) {
    throw new InstanceError(`invalid JSON: ${(exc as Error).message}`);
  }
  const record = payload as Record<string, unknown>;
  if (!Array.isArray(record.counts) || record.counts.some((c) => typeof c !== "number")) {
    throw new InstanceError("instance JSON needs a numeric 'counts' array");
  }
  if (typeof record.d !== "number") {
    throw new InstanceError("instance JSON needs a numeric 'd'");
  }
  return { d: record.d, counts: record.counts as number[] };
}

const WIDTH = 920;
const HEIGHT = 300;
const MARGIN = { top: 28, right: 16, bottom: 42, left: 52 };

export function renderInstance(payload: InstancePayload): string {
  const counts = payload.counts;
  const n = counts.length;
  if (n === 0) {
    throw new InstanceError("instance has no steps");
  }
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxCount = Math.max(1, ...counts);
  const sx = scale(0, n - 1 || 1, MARGIN.left, MARGIN.left + plotW);
  const sy = scale(0, maxCount, MARGIN.top + plotH, MARGIN.top);

  const parts: string[] = [];
  parts.push(text(WIDTH / 2, 16, `arrivals per step (d = ${payload.d})`, {
    "text-anchor": "middle",
    "font-size": 13,
    "font-weight": "bold",
  }));
  parts.push(line(MARGIN.left, MARGIN.top, MARGIN.left, MARGIN.top + plotH, { stroke: "#000" }));
  parts.push(
    line(MARGIN.left, MARGIN.top + plotH, MARGIN.left + plotW, MARGIN.top + plotH, {
      stroke: "#000",
    }),
  );

  // bars as one path; zero counts leave the baseline visible
  const segments: string[] = [];
  counts.forEach((count, i) => {
    if (count > 0) {
      segments.push(`M${fmt(sx(i))} ${fmt(sy(0))}L${fmt(sx(i))} ${fmt(sy(count))}`);
    }
  });
  parts.push(
    `<path class="bars" d="${segments.join("")}" stroke="#1f77b4" stroke-width="1" fill="none"/>`,
  );

  for (const tx of ticks(0, n - 1 || 1, 8)) {
    parts.push(line(sx(tx), MARGIN.top + plotH, sx(tx), MARGIN.top + plotH + 4, { stroke: "#000" }));
    parts.push(text(sx(tx), MARGIN.top + plotH + 16, tx.toString(), {
      "text-anchor": "middle",
      "font-size": 10,
    }));
  }
  for (const ty of ticks(0, maxCount)) {
    parts.push(line(MARGIN.left - 4, sy(ty), MARGIN.left, sy(ty), { stroke: "#000" }));
    parts.push(text(MARGIN.left - 7, sy(ty) + 3, ty.toString(), {
      "text-anchor": "end",
      "font-size": 10,
    }));
  }
  parts.push(text(MARGIN.left + plotW / 2, HEIGHT - 8, "time step", {
    "text-anchor": "middle",
    "font-size": 11,
  }));

  return document(WIDTH, HEIGHT, parts.join("\n"));
}
