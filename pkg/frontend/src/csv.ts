/**
 * Strict readers for the simulator's CSV contract (schema_version 1):
 * optional `#`-prefixed comment lines, one header row, then numeric rows
 * with locale-independent decimal points ("nan" allowed).
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  /** column-major numeric data; data[j][i] is row i of column j */
  data: number[][];
  comments: Map<string, string>;
}

function parseNumber(raw: string, where: string): number {
  if (raw === "nan" || raw === "-nan") return NaN;
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new SchemaError(`non-numeric cell ${JSON.stringify(raw)} at ${where}`);
  }
  return v;
}

export function parseTable(text: string, source = "<csv>"): Table {
  const comments = new Map<string, string>();
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  let i = 0;
  while (i < lines.length && lines[i].startsWith("#")) {
    const body = lines[i].slice(1).trim();
    const eq = body.indexOf("=");
    if (eq > 0) comments.set(body.slice(0, eq), body.slice(eq + 1));
    i += 1;
  }
  if (i >= lines.length) throw new SchemaError(`${source}: no header row`);
  const columns = lines[i].split(",");
  i += 1;
  if (i >= lines.length) throw new SchemaError(`${source}: no data rows`);
  const data: number[][] = columns.map(() => []);
  for (; i < lines.length; i += 1) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${source}: row ${i + 1} has ${cells.length} cells, expected ${columns.length}`,
      );
    }
    cells.forEach((c, j) => data[j].push(parseNumber(c, `${source}:${i + 1}`)));
  }
  return { columns, data, comments };
}

export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseTable(text, path);
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `missing column ${JSON.stringify(name)}; have ${table.columns.join(", ")}`,
    );
  }
  return table.data[idx];
}

/** Columns whose name matches a predicate, in file order. */
export function matchColumns(table: Table, pred: (name: string) => boolean): string[] {
  const names = table.columns.filter(pred);
  if (names.length === 0) {
    throw new SchemaError(`no columns match; have ${table.columns.join(", ")}`);
  }
  return names;
}

export interface Grid {
  axis1: number[];
  axis2: number[];
  /** values[i][j] belongs to (axis1[i], axis2[j]) */
  values: number[][];
}

/** Rebuild the 2-D grid from a long-format plane slice (axis1,axis2,W). */
export function tableToGrid(table: Table, source = "<csv>"): Grid {
  const a1 = column(table, "axis1");
  const a2 = column(table, "axis2");
  const w = column(table, "W");
  const axis1: number[] = [];
  for (const v of a1) {
    if (axis1.length === 0 || v !== axis1[axis1.length - 1]) axis1.push(v);
  }
  const n2 = a1.length / axis1.length;
  if (!Number.isInteger(n2)) {
    throw new SchemaError(`${source}: rows do not form a rectangular grid`);
  }
  const axis2 = a2.slice(0, n2);
  const values: number[][] = [];
  for (let i = 0; i < axis1.length; i += 1) {
    values.push(w.slice(i * n2, (i + 1) * n2));
  }
  return { axis1, axis2, values };
}
