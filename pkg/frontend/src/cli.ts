/**
 * Render a figure CSV produced by the relaydmt CLI into a standalone
 * SVG file.
 *
 * Usage:
 *   node dist/cli.js render --figure 4 --csv-dir out --out fig4.svg
 *   node dist/cli.js render --figure 2 --csv-dir out --ci
 *
 * The CSV is looked up as <csv-dir>/figure<N>.csv, the name the
 * relaydmt figure command writes. --out defaults to
 * <csv-dir>/figure<N>.svg. --ci shades the confidence band carried in
 * the ci_low/ci_high columns behind every curve.
 *
 * Exit codes: 0 success, 2 usage, 3 unreadable or off-schema input.
 */

import { readFileSync, writeFileSync } from "node:fs";
import path from "node:path";
import { pathToFileURL } from "node:url";

import { CsvSchemaError, parseSweepCsv } from "./csv.js";
import { FIGURE_SPECS, figureSpec } from "./figures.js";
import { renderFigure } from "./render.js";

const USAGE = `usage: render --figure N --csv-dir DIR [--out FILE] [--ci]
  --figure N     figure id (${Object.keys(FIGURE_SPECS).join(", ")})
  --csv-dir DIR  directory holding figure<N>.csv
  --out FILE     output SVG path (default: <csv-dir>/figure<N>.svg)
  --ci           shade confidence bands`;

interface Args {
  figure: number;
  csvDir: string;
  out: string;
  ci: boolean;
}

// ---------------------------------------------------------------------------
// argument parsing

function usageError(msg: string): never {
  throw new UsageError(msg);
}

class UsageError extends Error {}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") usageError(`expected subcommand 'render', got '${argv[0] ?? ""}'`);
  let figure: number | undefined;
  let csvDir: string | undefined;
  let out: string | undefined;
  let ci = false;
  for (let i = 1; i < argv.length; i++) {
    const flag = argv[i]!;
    const takeValue = () => {
      const v = argv[++i];
      if (v === undefined) usageError(`${flag} needs a value`);
      return v;
    };
    if (flag === "--figure") {
      const raw = takeValue();
      figure = Number(raw);
      if (!Number.isInteger(figure)) usageError(`--figure needs an integer, got '${raw}'`);
    } else if (flag === "--csv-dir") {
      csvDir = takeValue();
    } else if (flag === "--out") {
      out = takeValue();
    } else if (flag === "--ci") {
      ci = true;
    } else {
      usageError(`unknown flag '${flag}'`);
    }
  }
  if (figure === undefined) usageError("--figure is required");
  if (csvDir === undefined) usageError("--csv-dir is required");
  if (FIGURE_SPECS[figure] === undefined) {
    usageError(`unknown figure ${figure}; known figures: ${Object.keys(FIGURE_SPECS).join(", ")}`);
  }
  return {
    figure,
    csvDir,
    out: out ?? path.join(csvDir, `figure${figure}.svg`),
    ci,
  };
}

// ---------------------------------------------------------------------------
// entry point

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}`);
      console.error(USAGE);
      return 2;
    }
    throw err;
  }

  const csvPath = path.join(args.csvDir, `figure${args.figure}.csv`);
  let text: string;
  try {
    text = readFileSync(csvPath, "utf-8");
  } catch (err) {
    console.error(`error: cannot read ${csvPath}: ${(err as Error).message}`);
    return 3;
  }

  let svg: string;
  try {
    const csv = parseSweepCsv(text, csvPath);
    svg = renderFigure(csv, figureSpec(args.figure), { ci: args.ci });
  } catch (err) {
    if (err instanceof CsvSchemaError) {
      console.error(`error: ${err.message}`);
      return 3;
    }
    throw err;
  }

  writeFileSync(args.out, svg, "utf-8");
  console.log(args.out);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
