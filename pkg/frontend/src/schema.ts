/**
 * Strict parser for sweep record CSV files.
 *
 * The header must match the producer's schema exactly (names and order);
 * any mismatch or unparsable cell fails with the offending column named.
 */

export const SWEEP_HEADER = [
  "index",
  "N",
  "T",
  "n_different",
  "intervals",
  "e_min",
  "e_bound",
  "ratio",
  "cert_gap",
  "ortho_ok",
  "solve_ms",
  "sub_seed",
] as const;

export interface SweepRow {
  index: number;
  N: number;
  T: number;
  n_different: number;
  intervals: number[];
  e_min: number;
  e_bound: number;
  ratio: number;
  cert_gap: number;
  ortho_ok: boolean;
  solve_ms: number;
  sub_seed: bigint;
}

export class SchemaError extends Error {
  readonly column: string;

  constructor(column: string, message: string) {
    super(message);
    this.name = "SchemaError";
    this.column = column;
  }
}

function parseIntCell(value: string, column: string, line: number): number {
  if (!/^-?\d+$/.test(value)) {
    throw new SchemaError(column, `line ${line}: column '${column}' expects an integer, got '${value}'`);
  }
  return Number(value);
}

function parseFloatCell(value: string, column: string, line: number): number {
  if (value === "nan") return Number.NaN;
  const parsed = Number(value);
  if (value === "" || Number.isNaN(parsed)) {
    throw new SchemaError(column, `line ${line}: column '${column}' expects a number, got '${value}'`);
  }
  return parsed;
}

function parseBoolCell(value: string, column: string, line: number): boolean {
  if (value === "true") return true;
  if (value === "false") return false;
  throw new SchemaError(column, `line ${line}: column '${column}' expects true/false, got '${value}'`);
}

function parseBigCell(value: string, column: string, line: number): bigint {
  if (!/^\d+$/.test(value)) {
    throw new SchemaError(column, `line ${line}: column '${column}' expects an unsigned integer, got '${value}'`);
  }
  return BigInt(value);
}

function parseIntervals(value: string, line: number): number[] {
  const parts = value.split("-");
  return parts.map((part) => {
    if (!/^\d+$/.test(part)) {
      throw new SchemaError("intervals", `line ${line}: column 'intervals' expects dash-separated integers, got '${value}'`);
    }
    return Number(part);
  });
}

/** Parse the full CSV text; throws SchemaError on any deviation. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line, i, all) => !(line === "" && i === all.length - 1));
  if (lines.length === 0 || lines[0] === "") {
    throw new SchemaError("header", "empty file: expected the sweep record header");
  }
  const header = lines[0].split(",");
  for (let i = 0; i < SWEEP_HEADER.length; i++) {
    if (header[i] !== SWEEP_HEADER[i]) {
      throw new SchemaError(
        SWEEP_HEADER[i],
        `header mismatch at column ${i + 1}: expected '${SWEEP_HEADER[i]}', got '${header[i] ?? "<missing>"}'`,
      );
    }
  }
  if (header.length !== SWEEP_HEADER.length) {
    throw new SchemaError(header[SWEEP_HEADER.length], `unexpected extra column '${header[SWEEP_HEADER.length]}'`);
  }
  if (lines.length === 1) {
    throw new SchemaError("index", "no records: the CSV contains only the header");
  }

  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    if (lines[i] === "") continue;
    const cells = lines[i].split(",");
    if (cells.length !== SWEEP_HEADER.length) {
      throw new SchemaError("row", `line ${i + 1}: expected ${SWEEP_HEADER.length} cells, got ${cells.length}`);
    }
    const lineNo = i + 1;
    rows.push({
      index: parseIntCell(cells[0], "index", lineNo),
      N: parseIntCell(cells[1], "N", lineNo),
      T: parseIntCell(cells[2], "T", lineNo),
      n_different: parseIntCell(cells[3], "n_different", lineNo),
      intervals: parseIntervals(cells[4], lineNo),
      e_min: parseFloatCell(cells[5], "e_min", lineNo),
      e_bound: parseFloatCell(cells[6], "e_bound", lineNo),
      ratio: parseFloatCell(cells[7], "ratio", lineNo),
      cert_gap: parseFloatCell(cells[8], "cert_gap", lineNo),
      ortho_ok: parseBoolCell(cells[9], "ortho_ok", lineNo),
      solve_ms: parseFloatCell(cells[10], "solve_ms", lineNo),
      sub_seed: parseBigCell(cells[11], "sub_seed", lineNo),
    });
  }
  return rows;
}
