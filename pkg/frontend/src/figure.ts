/**
 * Figure models: pure data describing what gets drawn.
 *
 * Renderers consume these; tests assert on them directly (point counts,
 * envelope values) instead of inspecting pixels.
 */

import { SweepRow } from "./schema.js";

export type ScaleKind = "linear" | "log";

export interface ScatterPoint {
  x: number;
  y: number;
  key: number; // n_different, used for color
}

export interface Polyline {
  label: string;
  key: number;
  points: Array<{ x: number; y: number }>;
}

export interface FigureModel {
  kind: "fig1-scatter" | "scaling-lines";
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: ScaleKind;
  yScale: ScaleKind;
  points: ScatterPoint[];
  lines: Polyline[];
  refLines: Array<{ y: number; label: string }>;
}

const PALETTE = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377"];

export function colorFor(key: number): string {
  return PALETTE[((key % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

function finiteRatioRows(rows: SweepRow[]): SweepRow[] {
  return rows.filter((r) => Number.isFinite(r.ratio));
}

/**
 * Ratio against state count, one point per record, colored by the number of
 * distinct interval lengths, with the per-class minima envelope and the
 * ratio = 1 reference line.
 */
export function buildFig1Scatter(rows: SweepRow[], yScale: ScaleKind = "log"): FigureModel {
  const usable = finiteRatioRows(rows);
  const points = usable.map((r) => ({ x: r.N, y: r.ratio, key: r.n_different }));

  const classes = [...new Set(usable.map((r) => r.n_different))].sort((a, b) => a - b);
  const lines: Polyline[] = classes.map((nd) => {
    const byN = new Map<number, number>();
    for (const r of usable) {
      if (r.n_different !== nd) continue;
      const current = byN.get(r.N);
      if (current === undefined || r.ratio < current) byN.set(r.N, r.ratio);
    }
    const pts = [...byN.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, y]) => ({ x, y }));
    return { label: `n_different = ${nd} (min)`, key: nd, points: pts };
  });

  return {
    kind: "fig1-scatter",
    title: "minimum energy over the equal-interval bound",
    xLabel: "N (number of distinct states)",
    yLabel: "ratio e_min / (N - 1)",
    xScale: "linear",
    yScale,
    points,
    lines,
    refLines: [{ y: 1, label: "equal intervals" }],
  };
}

function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 === 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

/**
 * Min and median ratio against the number of distinct interval lengths,
 * split into small (N < 8) and large (N >= 8) state counts.
 */
export function buildScalingLines(rows: SweepRow[]): FigureModel {
  const usable = finiteRatioRows(rows);
  const classes = [...new Set(usable.map((r) => r.n_different))].sort((a, b) => a - b);
  const splits: Array<{ label: string; filter: (r: SweepRow) => boolean }> = [
    { label: "N < 8", filter: (r) => r.N < 8 },
    { label: "N >= 8", filter: (r) => r.N >= 8 },
  ];
  const lines: Polyline[] = [];
  splits.forEach((split, s) => {
    for (const stat of ["min", "median"] as const) {
      const pts: Array<{ x: number; y: number }> = [];
      for (const nd of classes) {
        const ratios = usable.filter((r) => r.n_different === nd && split.filter(r)).map((r) => r.ratio);
        if (ratios.length === 0) continue;
        pts.push({ x: nd, y: stat === "min" ? Math.min(...ratios) : median(ratios) });
      }
      if (pts.length > 0) {
        lines.push({ label: `${stat} ratio, ${split.label}`, key: 2 * s + (stat === "min" ? 0 : 1), points: pts });
      }
    }
  });

  return {
    kind: "scaling-lines",
    title: "ratio growth with the number of distinct interval lengths",
    xLabel: "n_different",
    yLabel: "ratio e_min / (N - 1)",
    xScale: "linear",
    yScale: "linear",
    points: [],
    lines,
    refLines: [{ y: 1, label: "equal intervals" }],
  };
}
