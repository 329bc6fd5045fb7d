/**
 * Figure renderer for sweep aggregates: one panel per distribution, mean
 * competitive ratio vs replacement rate, one line per lambda, with dashed
 * reference lines at the theoretical robustness constants.
 */

import { CsvError, Table, columnIndex } from "./csv.js";
import { document, fmt, line, polyline, scale, text, ticks } from "./svg.js";

/** Theoretical robustness constants per trust parameter. */
export const ROBUSTNESS_CONSTANTS: ReadonlyMap<string, number> = new Map([
  ["1", 1.58],
  ["0.8", 1.68],
  ["0.6", 2.21],
  ["0.4", 3.03],
]);

const PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

const PANEL_W = 320;
const PANEL_H = 260;
const MARGIN = { top: 42, right: 24, bottom: 46, left: 56 };
const GAP = 36;

interface Series {
  lambda: string;
  points: Array<[number, number]>; // (replacement rate, mean ratio)
}

interface Panel {
  dist: string;
  series: Series[];
}

function groupPanels(table: Table): Panel[] {
  const distIdx = columnIndex(table, "dist");
  const lamIdx = columnIndex(table, "lambda");
  const rateIdx = columnIndex(table, "replacement_rate");
  const ratioIdx = columnIndex(table, "mean_ratio");

  const panels = new Map<string, Map<string, Array<[number, number]>>>();
  for (const row of table.rows) {
    const rate = Number(row[rateIdx]);
    const ratio = Number(row[ratioIdx]);
    if (!Number.isFinite(rate) || !Number.isFinite(ratio)) {
      throw new CsvError(`non-numeric rate/ratio row: ${row.join(",")}`);
    }
    let byLambda = panels.get(row[distIdx]);
    if (!byLambda) {
      byLambda = new Map();
      panels.set(row[distIdx], byLambda);
    }
    let points = byLambda.get(row[lamIdx]);
    if (!points) {
      points = [];
      byLambda.set(row[lamIdx], points);
    }
    points.push([rate, ratio]);
  }
  return [...panels.entries()].map(([dist, byLambda]) => ({
    dist,
    series: [...byLambda.entries()].map(([lambda, points]) => ({
      lambda,
      points: points.slice().sort((a, b) => a[0] - b[0]),
    })),
  }));
}

export function renderRatioPanels(table: Table): string {
  const panels = groupPanels(table);
  const lambdas = [...new Set(panels.flatMap((p) => p.series.map((s) => s.lambda)))];

  const refValues = lambdas
    .filter((l) => ROBUSTNESS_CONSTANTS.has(l))
    .map((l) => ROBUSTNESS_CONSTANTS.get(l)!);
  const maxRatio = Math.max(
    ...panels.flatMap((p) => p.series.flatMap((s) => s.points.map(([, r]) => r))),
    ...refValues,
  );
  const minRatio = Math.min(
    1.0,
    ...panels.flatMap((p) => p.series.flatMap((s) => s.points.map(([, r]) => r))),
  );
  const yLo = Math.floor(minRatio * 20) / 20;
  const yHi = maxRatio + 0.08 * (maxRatio - yLo || 1);

  const width = MARGIN.left + panels.length * PANEL_W + (panels.length - 1) * GAP + MARGIN.right;
  const height = MARGIN.top + PANEL_H + MARGIN.bottom;
  const color = (lambda: string) => PALETTE[lambdas.indexOf(lambda) % PALETTE.length];

  const body: string[] = [];
  panels.forEach((panel, i) => {
    const x0 = MARGIN.left + i * (PANEL_W + GAP);
    const y0 = MARGIN.top;
    const sx = scale(0, 1, x0, x0 + PANEL_W);
    const sy = scale(yLo, yHi, y0 + PANEL_H, y0);
    const parts: string[] = [];

    parts.push(text(x0 + PANEL_W / 2, y0 - 14, panel.dist, {
      "text-anchor": "middle",
      "font-size": 14,
      "font-weight": "bold",
    }));

    // frame and ticks
    parts.push(line(x0, y0, x0, y0 + PANEL_H, { stroke: "#000" }));
    parts.push(line(x0, y0 + PANEL_H, x0 + PANEL_W, y0 + PANEL_H, { stroke: "#000" }));
    for (const tx of [0, 0.2, 0.4, 0.6, 0.8, 1]) {
      parts.push(line(sx(tx), y0 + PANEL_H, sx(tx), y0 + PANEL_H + 4, { stroke: "#000" }));
      parts.push(text(sx(tx), y0 + PANEL_H + 16, tx.toString(), {
        "text-anchor": "middle",
        "font-size": 10,
      }));
    }
    for (const ty of ticks(yLo, yHi)) {
      parts.push(line(x0 - 4, sy(ty), x0, sy(ty), { stroke: "#000" }));
      parts.push(text(x0 - 7, sy(ty) + 3, ty.toString(), {
        "text-anchor": "end",
        "font-size": 10,
      }));
      parts.push(line(x0, sy(ty), x0 + PANEL_W, sy(ty), {
        stroke: "#ddd",
        "stroke-width": 0.5,
      }));
    }
    parts.push(text(x0 + PANEL_W / 2, y0 + PANEL_H + 34, "replacement rate", {
      "text-anchor": "middle",
      "font-size": 11,
    }));
    if (i === 0) {
      parts.push(
        `<g transform="translate(${fmt(x0 - 42)},${fmt(y0 + PANEL_H / 2)}) rotate(-90)">` +
          text(0, 0, "mean competitive ratio", { "text-anchor": "middle", "font-size": 11 }) +
          `</g>`,
      );
    }

    // theoretical robustness reference lines
    for (const lambda of lambdas) {
      const constant = ROBUSTNESS_CONSTANTS.get(lambda);
      if (constant === undefined) continue;
      parts.push(
        line(x0, sy(constant), x0 + PANEL_W, sy(constant), {
          class: "ref",
          "data-value": constant.toString(),
          stroke: color(lambda),
          "stroke-dasharray": "5,4",
          "stroke-width": 1,
          opacity: 0.65,
        }),
      );
      parts.push(text(x0 + PANEL_W - 2, sy(constant) - 3, `robustness ${constant}`, {
        "text-anchor": "end",
        "font-size": 9,
        fill: color(lambda),
        opacity: 0.9,
      }));
    }

    // one line per lambda
    for (const series of panel.series) {
      parts.push(
        polyline(series.points.map(([p, r]) => [sx(p), sy(r)]), {
          class: "series",
          "data-lambda": series.lambda,
          stroke: color(series.lambda),
          "stroke-width": 1.8,
        }),
      );
      for (const [p, r] of series.points) {
        parts.push(tag_circle(sx(p), sy(r), 2.2, color(series.lambda)));
      }
    }

    body.push(`<g class="panel" data-dist="${panel.dist}">\n${parts.join("\n")}\n</g>`);
  });

  // legend across the top
  const legend: string[] = [];
  lambdas.forEach((lambda, i) => {
    const lx = MARGIN.left + i * 110;
    legend.push(line(lx, 14, lx + 26, 14, { stroke: color(lambda), "stroke-width": 2 }));
    legend.push(text(lx + 32, 18, `lambda = ${lambda}`, { "font-size": 11 }));
  });
  body.push(`<g class="legend">\n${legend.join("\n")}\n</g>`);

  return document(width, height, body.join("\n"));
}

function tag_circle(cx: number, cy: number, r: number, fill: string): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`;
}
