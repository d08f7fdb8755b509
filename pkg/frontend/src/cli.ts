/**
 * render --figure fig3 --data-dir <dir> --out <path>
 *
 * Exit codes: 0 success, 2 bad arguments, 3 schema/data error.
 */

import { writeFileSync } from "node:fs";

import { SchemaError } from "./csv.js";
import { FIGURE_IDS, FigureId, renderFigure } from "./figures.js";

function parseArgs(argv: string[]): { figure: FigureId; dataDir: string; out: string } {
  if (argv[0] !== "render") {
    throw new UsageError(`unknown command ${JSON.stringify(argv[0])}; expected "render"`);
  }
  const opts = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    const val = argv[i + 1];
    if (!key.startsWith("--") || val === undefined) {
      throw new UsageError(`malformed option pair near ${JSON.stringify(key)}`);
    }
    opts.set(key.slice(2), val);
  }
  const figure = opts.get("figure");
  const dataDir = opts.get("data-dir");
  const out = opts.get("out");
  if (!figure || !dataDir || !out) {
    throw new UsageError("render requires --figure, --data-dir, and --out");
  }
  if (!(FIGURE_IDS as readonly string[]).includes(figure)) {
    throw new UsageError(`unknown figure ${JSON.stringify(figure)}; known: ${FIGURE_IDS.join(", ")}`);
  }
  return { figure: figure as FigureId, dataDir, out };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    const { figure, dataDir, out } = parseArgs(argv);
    const result = renderFigure(figure, dataDir);
    writeFileSync(out, result.svg);
    const scale = result.vmax !== undefined ? ` (heatmap scale ±${result.vmax.toFixed(4)})` : "";
    console.log(`wrote ${out}${scale}`);
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`usage error: ${err.message}`);
      return 2;
    }
    if (err instanceof SchemaError) {
      console.error(`data error: ${err.message}`);
      return 3;
    }
    throw err;
  }
}

const isDirectRun = process.argv[1] !== undefined && import.meta.url.endsWith("cli.js");
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
