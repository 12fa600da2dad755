/**
 * Minimal deterministic SVG line-chart builder.
 *
 * Rendering is read-only: the only numeric transformation is the affine map
 * from data coordinates to pixels. Styling is fixed so identical inputs
 * produce identical SVG bytes.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  /** Thicker stroke (used for the initial-packet curve in the snapshot plot). */
  emphasize?: boolean;
}

export interface PanelOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 36, right: 16, bottom: 48, left: 64 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

/** Tick positions at a 1-2-5 step covering [lo, hi]. */
export function ticks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  const rawStep = span / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const step = [1, 2, 5, 10].map((m) => m * power).find((s) => span / s <= target)!;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

function fmt(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Build one chart panel as a standalone group at the given y offset. */
function panelGroup(panel: PanelOptions, yOffset: number): string {
  const innerW = WIDTH - MARGIN.left - MARGIN.right;
  const innerH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const [x0, x1] = extent(panel.series.flatMap((s) => s.x));
  const [yLo, yHi] = extent(panel.series.flatMap((s) => s.y));
  const pad = 0.05 * (yHi - yLo);
  const [y0, y1] = [yLo - pad, yHi + pad];
  const sx = (v: number) => MARGIN.left + ((v - x0) / (x1 - x0)) * innerW;
  const sy = (v: number) => MARGIN.top + innerH - ((v - y0) / (y1 - y0)) * innerH;

  const parts: string[] = [`<g transform="translate(0,${yOffset})">`];
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${innerW}" height="${innerH}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of ticks(x0, x1)) {
    const px = sx(t).toFixed(2);
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top + innerH}" x2="${px}" y2="${MARGIN.top + innerH + 5}" stroke="#333"/>`,
      `<text x="${px}" y="${MARGIN.top + innerH + 18}" text-anchor="middle" font-size="11">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(y0, y1)) {
    const py = sy(t).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${py}" x2="${MARGIN.left}" y2="${py}" stroke="#333"/>`,
      `<text x="${MARGIN.left - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" font-size="11">${fmt(t)}</text>`,
    );
  }
  if (y0 < 0 && y1 > 0) {
    parts.push(
      `<line x1="${MARGIN.left}" y1="${sy(0).toFixed(2)}" x2="${MARGIN.left + innerW}" y2="${sy(0).toFixed(2)}" stroke="#bbb" stroke-dasharray="4 3"/>`,
    );
  }
  panel.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const points = s.x
      .map((xv, j) => `${sx(xv).toFixed(2)},${sy(s.y[j]).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="${s.emphasize ? 3 : 1.4}"/>`,
    );
  });
  panel.series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const lx = MARGIN.left + innerW - 150;
    const ly = MARGIN.top + 14 + 16 * i;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 24}" y2="${ly - 4}" stroke="${color}" stroke-width="${s.emphasize ? 3 : 1.4}"/>`,
      `<text x="${lx + 30}" y="${ly}" font-size="11">${esc(s.label)}</text>`,
    );
  });
  parts.push(
    `<text x="${WIDTH / 2}" y="${MARGIN.top - 12}" text-anchor="middle" font-size="14" font-weight="bold">${esc(panel.title)}</text>`,
    `<text x="${MARGIN.left + innerW / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="12">${esc(panel.xLabel)}</text>`,
    `<text transform="translate(16,${MARGIN.top + innerH / 2}) rotate(-90)" text-anchor="middle" font-size="12">${esc(panel.yLabel)}</text>`,
    `</g>`,
  );
  return parts.join("\n");
}

/** Assemble one or more stacked panels into a complete SVG document. */
export function renderSvg(panels: PanelOptions[]): string {
  const total = HEIGHT * panels.length;
  const body = panels.map((p, i) => panelGroup(p, i * HEIGHT)).join("\n");
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${total}" viewBox="0 0 ${WIDTH} ${total}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${WIDTH}" height="${total}" fill="white"/>`,
    body,
    `</svg>`,
  ].join("\n");
}
