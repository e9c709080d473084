import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { buildFig1Scatter, buildScalingLines } from "../src/figure.js";
import { SWEEP_HEADER, parseSweepCsv } from "../src/schema.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function fixtureRows(name: string) {
  return parseSweepCsv(readFileSync(join(FIXTURES, name), "utf-8"));
}

/** Synthetic, schema-exact CSV with the given number of records. */
export function syntheticCsv(records: number, seed = 12345): string {
  const lines = [SWEEP_HEADER.join(",")];
  let state = seed >>> 0;
  const rand = () => {
    // xorshift32: deterministic fixture data, not used for statistics
    state ^= state << 13;
    state >>>= 0;
    state ^= state >> 17;
    state ^= state << 5;
    state >>>= 0;
    return state / 2 ** 32;
  };
  for (let i = 0; i < records; i++) {
    const n = 2 + Math.floor(rand() * 19);
    const nd = 2 + Math.floor(rand() * 3);
    const ratio = 1.05 + rand() * (nd - 1);
    const intervals = Array.from({ length: n }, () => 1 + Math.floor(rand() * 100));
    const T = intervals.reduce((a, b) => a + b, 0);
    const eMin = ratio * (n - 1);
    lines.push([
      i, n, T, nd, intervals.join("-"),
      eMin.toPrecision(12), n - 1, ratio.toPrecision(12),
      (rand() * 1e-9).toExponential(6), "true", "0", String(i * 977 + 13),
    ].join(","));
  }
  return lines.join("\n") + "\n";
}

describe("buildFig1Scatter", () => {
  it("keeps one point per record", () => {
    const rows = parseSweepCsv(syntheticCsv(10_000));
    const model = buildFig1Scatter(rows);
    expect(model.points).toHaveLength(10_000);
  });

  it("places every control point on the reference line", () => {
    const rows = fixtureRows("control.csv");
    const model = buildFig1Scatter(rows);
    expect(model.points).toHaveLength(rows.length);
    for (const p of model.points) {
      expect(Math.abs(p.y - 1)).toBeLessThan(1e-6);
    }
    expect(model.refLines[0].y).toBe(1);
  });

  it("envelope touches the doubled-interval family curve", () => {
    const rows = [...fixtureRows("mixed.csv"), ...fixtureRows("family.csv")];
    const model = buildFig1Scatter(rows);
    const envelope = model.lines.find((l) => l.key === 2);
    expect(envelope).toBeDefined();
    for (const point of envelope!.points) {
      // family records are the known minimum for their N, so the envelope
      // can never sit above N/(N-1) where the family was sampled
      const family = rows.find((r) => r.n_different === 2 && r.N === point.x
        && Math.abs(r.ratio - point.x / (point.x - 1)) < 1e-6);
      if (family) {
        expect(point.y).toBeLessThanOrEqual(point.x / (point.x - 1) + 1e-9);
      }
    }
  });

  it("drops non-finite ratios from the data layer", () => {
    const text = syntheticCsv(5).replace(/\n([^\n]*)\n$/, "\n$1\n");
    const rows = parseSweepCsv(text);
    rows.push({ ...rows[0], index: 99, ratio: Number.NaN });
    const model = buildFig1Scatter(rows);
    expect(model.points).toHaveLength(5);
  });

  it("builds one envelope per distinct-length class", () => {
    const rows = parseSweepsafe();
    function parseSweepsafe() {
      return parseSweepCsv(syntheticCsv(500));
    }
    const model = buildFig1Scatter(rows);
    const classes = new Set(rows.map((r) => r.n_different));
    expect(model.lines).toHaveLength(classes.size);
    for (const line of model.lines) {
      const expected = new Map<number, number>();
      for (const r of rows) {
        if (r.n_different !== line.key) continue;
        const cur = expected.get(r.N);
        if (cur === undefined || r.ratio < cur) expected.set(r.N, r.ratio);
      }
      expect(line.points).toHaveLength(expected.size);
      for (const p of line.points) {
        expect(p.y).toBeCloseTo(expected.get(p.x)!, 12);
      }
    }
  });
});

describe("buildScalingLines", () => {
  it("splits stats at N = 8", () => {
    const rows = parseSweepCsv(syntheticCsv(800));
    const model = buildScalingLines(rows);
    expect(model.lines.length).toBe(4); // {min, median} x {N<8, N>=8}
    const minSmall = model.lines.find((l) => l.label === "min ratio, N < 8")!;
    for (const p of minSmall.points) {
      const group = rows.filter((r) => r.n_different === p.x && r.N < 8);
      expect(p.y).toBeCloseTo(Math.min(...group.map((r) => r.ratio)), 12);
    }
  });

  it("control sweep collapses to the reference line", () => {
    const model = buildScalingLines(fixtureRows("control.csv"));
    for (const line of model.lines) {
      for (const p of line.points) {
        expect(Math.abs(p.y - 1)).toBeLessThan(1e-6);
      }
    }
  });
});
