/**
 * Shared plot geometry: axis domains, tick placement, and data-to-pixel maps.
 * Both the SVG and the raster renderer draw from the same layout so the two
 * outputs agree about where everything sits.
 */

import { FigureModel, ScaleKind } from "./figure.js";

export interface Layout {
  width: number;
  height: number;
  plot: { left: number; top: number; right: number; bottom: number };
  xTicks: Array<{ value: number; label: string }>;
  yTicks: Array<{ value: number; label: string }>;
  mapX(value: number): number;
  mapY(value: number): number;
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= step0) {
      step = mag * mult;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const start = Math.floor(Math.log10(lo));
  const end = Math.ceil(Math.log10(hi));
  for (let e = start; e <= end; e++) {
    for (const mult of [1, 2, 5]) {
      const v = mult * Math.pow(10, e);
      if (v >= lo * 0.999 && v <= hi * 1.001) ticks.push(v);
    }
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) return value.toExponential(0).replace("+", "");
  const text = value.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

function dataRange(model: FigureModel): { x: [number, number]; y: [number, number] } {
  const xs: number[] = [];
  const ys: number[] = [];
  for (const p of model.points) {
    xs.push(p.x);
    ys.push(p.y);
  }
  for (const line of model.lines) {
    for (const p of line.points) {
      xs.push(p.x);
      ys.push(p.y);
    }
  }
  for (const ref of model.refLines) ys.push(ref.y);
  if (xs.length === 0) {
    xs.push(0, 1);
  }
  if (ys.length === 0) {
    ys.push(0, 1);
  }
  return {
    x: [Math.min(...xs), Math.max(...xs)],
    y: [Math.min(...ys), Math.max(...ys)],
  };
}

function pad(range: [number, number], scale: ScaleKind): [number, number] {
  let [lo, hi] = range;
  if (scale === "log") {
    lo = Math.max(lo, 1e-12);
    hi = Math.max(hi, lo * 1.0001);
    return [lo / 1.15, hi * 1.15];
  }
  if (hi === lo) {
    return [lo - 1, hi + 1];
  }
  const margin = 0.05 * (hi - lo);
  return [lo - margin, hi + margin];
}

export function computeLayout(model: FigureModel, width = 880, height = 600): Layout {
  const plot = { left: 72, top: 40, right: width - 160, bottom: height - 56 };
  const xDomain = pad(dataRange(model).x, model.xScale);
  const yDomain = pad(dataRange(model).y, model.yScale);

  const toX = (value: number): number => {
    const [lo, hi] = xDomain;
    const f = model.xScale === "log"
      ? (Math.log(value) - Math.log(lo)) / (Math.log(hi) - Math.log(lo))
      : (value - lo) / (hi - lo);
    return plot.left + f * (plot.right - plot.left);
  };
  const toY = (value: number): number => {
    const [lo, hi] = yDomain;
    const f = model.yScale === "log"
      ? (Math.log(value) - Math.log(lo)) / (Math.log(hi) - Math.log(lo))
      : (value - lo) / (hi - lo);
    return plot.bottom - f * (plot.bottom - plot.top);
  };

  const xTickValues = model.xScale === "log" ? logTicks(xDomain[0], xDomain[1]) : niceTicks(xDomain[0], xDomain[1]);
  const yTickValues = model.yScale === "log" ? logTicks(yDomain[0], yDomain[1]) : niceTicks(yDomain[0], yDomain[1]);

  return {
    width,
    height,
    plot,
    xTicks: xTickValues.map((v) => ({ value: v, label: formatTick(v) })),
    yTicks: yTickValues.map((v) => ({ value: v, label: formatTick(v) })),
    mapX: toX,
    mapY: toY,
  };
}
