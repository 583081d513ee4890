/**
 * SVG comparison figure from a bounds-sweep CSV: x = c, y = log2 bound,
 * one labeled curve per selected series.  Values are plotted in log2
 * directly (the literal bounds underflow doubles long before n = 500).
 * Rendering is deterministic: fixed geometry, colors keyed by series name.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { extname } from "node:path";

import { parseSweepCsv, SchemaError, SweepRow } from "./csv.js";

export type SeriesName =
  | "classic"
  | "improved"
  | "improved_sandwich"
  | "true_ratio"
  | "ratio_gain";

export const SERIES_NAMES: readonly SeriesName[] = [
  "classic",
  "improved",
  "improved_sandwich",
  "true_ratio",
  "ratio_gain",
];

const SERIES_COLUMN: Record<SeriesName, (row: SweepRow) => number | null> = {
  classic: (row) => row.log2_classic,
  improved: (row) => row.log2_improved,
  improved_sandwich: (row) => row.log2_improved_sandwich,
  true_ratio: (row) => row.log2_true_ratio,
  ratio_gain: (row) => row.log2_ratio_gain,
};

// stable colors by series name, independent of which subset is selected
export const SERIES_COLOR: Record<SeriesName, string> = {
  classic: "#1f77b4",
  improved: "#d62728",
  improved_sandwich: "#2ca02c",
  true_ratio: "#9467bd",
  ratio_gain: "#ff7f0e",
};

export interface PlotSpec {
  inputCsv: string;
  outputImage: string;
  nFilter?: number;
  series: SeriesName[];
}

export interface SeriesPoints {
  name: SeriesName;
  points: Array<{ c: number; value: number }>;
}

export interface RenderResult {
  pointCounts: Record<string, number>;
  svg: string;
}

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { left: 78, right: 24, top: 28, bottom: 56 };

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function extractSeries(spec: PlotSpec): SeriesPoints[] {
  if (spec.series.length === 0) {
    throw new SchemaError("no series selected");
  }
  for (const name of spec.series) {
    if (!SERIES_NAMES.includes(name)) {
      throw new SchemaError(`unknown series "${name}"; choose from ${SERIES_NAMES.join(", ")}`);
    }
  }
  let rows = parseSweepCsv(readFileSync(spec.inputCsv, "utf-8"));
  if (spec.nFilter !== undefined) {
    rows = rows.filter((row) => row.n === spec.nFilter);
  }
  const series = spec.series.map((name) => ({
    name,
    points: rows
      .map((row) => ({ c: row.c, value: SERIES_COLUMN[name](row) }))
      .filter((p): p is { c: number; value: number } => p.value !== null),
  }));
  if (series.every((s) => s.points.length === 0)) {
    throw new SchemaError("no data: every selected series is empty after NA filtering");
  }
  return series;
}

export function render(spec: PlotSpec): RenderResult {
  if (extname(spec.outputImage).toLowerCase() !== ".svg") {
    throw new SchemaError(
      `unsupported output format "${extname(spec.outputImage)}"; vector .svg is supported`,
    );
  }
  const series = extractSeries(spec);
  const drawn = series.filter((s) => s.points.length > 0);

  const allC = drawn.flatMap((s) => s.points.map((p) => p.c));
  const allV = drawn.flatMap((s) => s.points.map((p) => p.value));
  const cLo = Math.min(...allC);
  const cHi = Math.max(...allC);
  const vLo = Math.min(...allV);
  const vHi = Math.max(...allV);
  const cPad = cLo === cHi ? 0.5 : 0.02 * (cHi - cLo);
  const vPad = vLo === vHi ? 1.0 : 0.05 * (vHi - vLo);

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const x = (c: number) => MARGIN.left + ((c - cLo + cPad) / (cHi - cLo + 2 * cPad)) * plotW;
  const y = (v: number) => MARGIN.top + ((vHi + vPad - v) / (vHi - vLo + 2 * vPad)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  );

  for (const tick of niceTicks(cLo, cHi, 8)) {
    const px = x(tick);
    parts.push(
      `<line x1="${px}" y1="${MARGIN.top}" x2="${px}" y2="${HEIGHT - MARGIN.bottom}" stroke="#dddddd"/>`,
      `<text x="${px}" y="${HEIGHT - MARGIN.bottom + 18}" font-size="12" text-anchor="middle">${tick}</text>`,
    );
  }
  for (const tick of niceTicks(vLo, vHi, 8)) {
    const py = y(tick);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${py + 4}" font-size="12" text-anchor="end">${tick}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" font-size="14" text-anchor="middle">c</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" font-size="14" text-anchor="middle" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">log2 bound</text>`,
  );

  for (const s of drawn) {
    const color = SERIES_COLOR[s.name];
    const coords = s.points.map((p) => `${x(p.c)},${y(p.value)}`).join(" ");
    if (s.points.length > 1) {
      parts.push(`<polyline class="curve s-${s.name}" points="${coords}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    }
    for (const p of s.points) {
      parts.push(
        `<circle class="pt s-${s.name}" data-c="${p.c}" data-v="${p.value}" cx="${x(p.c)}" cy="${y(p.value)}" r="3" fill="${color}"/>`,
      );
    }
  }

  let legendY = MARGIN.top + 16;
  for (const s of drawn) {
    const color = SERIES_COLOR[s.name];
    parts.push(
      `<line x1="${WIDTH - MARGIN.right - 168}" y1="${legendY - 4}" x2="${WIDTH - MARGIN.right - 140}" y2="${legendY - 4}" stroke="${color}" stroke-width="3"/>`,
      `<text x="${WIDTH - MARGIN.right - 132}" y="${legendY}" font-size="12">${s.name}</text>`,
    );
    legendY += 18;
  }
  parts.push("</svg>");

  const svg = parts.join("\n") + "\n";
  writeFileSync(spec.outputImage, svg, "utf-8");
  const pointCounts: Record<string, number> = {};
  for (const s of series) {
    pointCounts[s.name] = s.points.length;
  }
  return { pointCounts, svg };
}
