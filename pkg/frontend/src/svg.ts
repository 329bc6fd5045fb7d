/**
 * String-building SVG helpers.  Output is a pure function of the inputs
 * (fixed precision, no timestamps or ids), so renders diff cleanly.
 */

export function fmt(value: number): string {
  // fixed precision keeps coordinates byte-stable across platforms
  return value.toFixed(2).replace(/^-0\.00$/, "0.00");
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  children?: string,
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join(" ");
  if (children === undefined) {
    return `<${name} ${parts}/>`;
  }
  return `<${name} ${parts}>${children}</${name}>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  attrs: Record<string, string | number> = {},
): string {
  return tag("text", { x, y, ...attrs }, escapeXml(content));
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  attrs: Record<string, string | number> = {},
): string {
  return tag("line", { x1, y1, x2, y2, ...attrs });
}

export function polyline(
  points: Array<[number, number]>,
  attrs: Record<string, string | number> = {},
): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return tag("polyline", { points: joined, fill: "none", ...attrs });
}

export function escapeXml(content: string): string {
  return content
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n${body}\n</svg>\n`
  );
}

/** Linear scale mapping [d0, d1] onto [r0, r1]. */
export function scale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): (v: number) => number {
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Round ticks covering [lo, hi] at a human step (1/2/5 progression). */
export function ticks(lo: number, hi: number, target = 5): number[] {
  const span = hi - lo || 1;
  const raw = span / target;
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * power).find((s) => span / s <= target) ?? power * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12; v += step) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}
