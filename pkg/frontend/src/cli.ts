#!/usr/bin/env node
/**
 * plot --mode fig1-scatter|scaling-lines --in sweep.csv --out figure.svg|.png
 *
 * Exit codes: 0 ok, 1 schema/data error (offending column named), 2 usage,
 * 4 i/o failure.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { buildFig1Scatter, buildScalingLines, FigureModel, ScaleKind } from "./figure.js";
import { renderPng } from "./render.js";
import { parseSweepCsv, SchemaError } from "./schema.js";
import { renderSvg } from "./svg.js";

interface Args {
  mode: "fig1-scatter" | "scaling-lines";
  input: string;
  output: string;
  yScale: ScaleKind;
}

function usage(): string {
  return "usage: plot --mode fig1-scatter|scaling-lines --in sweep.csv --out figure.svg|png [--yscale log|linear]";
}

export function parseArgs(argv: string[]): Args {
  let mode: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  let yScale: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case "--mode":
        mode = value;
        i++;
        break;
      case "--in":
        input = value;
        i++;
        break;
      case "--out":
        output = value;
        i++;
        break;
      case "--yscale":
        yScale = value;
        i++;
        break;
      default:
        throw new Error(`unknown flag '${flag}'\n${usage()}`);
    }
  }
  if (mode !== "fig1-scatter" && mode !== "scaling-lines") {
    throw new Error(`--mode must be fig1-scatter or scaling-lines\n${usage()}`);
  }
  if (!input || !output) {
    throw new Error(`--in and --out are required\n${usage()}`);
  }
  if (!output.endsWith(".svg") && !output.endsWith(".png")) {
    throw new Error(`--out must end in .svg or .png\n${usage()}`);
  }
  if (yScale !== undefined && yScale !== "log" && yScale !== "linear") {
    throw new Error(`--yscale must be log or linear\n${usage()}`);
  }
  const defaultScale: ScaleKind = mode === "fig1-scatter" ? "log" : "linear";
  return { mode, input, output, yScale: (yScale as ScaleKind) ?? defaultScale };
}

export function buildModel(args: Args, csvText: string): FigureModel {
  const rows = parseSweepCsv(csvText);
  return args.mode === "fig1-scatter" ? buildFig1Scatter(rows, args.yScale) : buildScalingLines(rows);
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }

  let csvText: string;
  try {
    csvText = readFileSync(args.input, "utf-8");
  } catch (err) {
    console.error(`cannot read ${args.input}: ${err instanceof Error ? err.message : err}`);
    return 4;
  }

  let model: FigureModel;
  try {
    model = buildModel(args, csvText);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error in column '${err.column}': ${err.message}`);
      return 1;
    }
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }

  try {
    if (args.output.endsWith(".png")) {
      writeFileSync(args.output, renderPng(model));
    } else {
      writeFileSync(args.output, renderSvg(model), "utf-8");
    }
  } catch (err) {
    console.error(`cannot write ${args.output}: ${err instanceof Error ? err.message : err}`);
    return 4;
  }
  console.log(`${args.output}: ${model.points.length} points, ${model.lines.length} lines`);
  return 0;
}

const entry = process.argv[1];
if (entry && (entry.endsWith("cli.js") || entry.endsWith("plot"))) {
  process.exit(main(process.argv.slice(2)));
}
