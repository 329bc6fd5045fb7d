#!/usr/bin/env node
/**
 * CLI: render sweep aggregates or instance shapes to SVG.
 *
 *   render --csv results_agg.csv --out ratios.svg [--kind ratios]
 *   render --csv instance.json   --out shape.svg   --kind instance
 *
 * Exit codes: 0 success, 1 bad input shape (missing column, empty CSV,
 * malformed instance), 2 usage or I/O failure.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { CsvError, parseCsv } from "./csv.js";
import { InstanceError, parseInstance, renderInstance } from "./instance.js";
import { renderRatioPanels } from "./ratios.js";

interface Args {
  input: string;
  out: string;
  kind: "ratios" | "instance";
}

export function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let out: string | undefined;
  let kind = "ratios";
  for (let i = 0; i < argv.length; i += 1) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (flag === "--csv" || flag === "--json" || flag === "--in") {
      input = value;
      i += 1;
    } else if (flag === "--out") {
      out = value;
      i += 1;
    } else if (flag === "--kind") {
      kind = value;
      i += 1;
    } else {
      throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!input || !out) {
    throw new UsageError("usage: render --csv INPUT --out OUTPUT [--kind ratios|instance]");
  }
  if (kind !== "ratios" && kind !== "instance") {
    throw new UsageError(`unknown kind ${kind}`);
  }
  return { input, out, kind };
}

export class UsageError extends Error {}

export function renderToString(kind: "ratios" | "instance", inputText: string): string {
  if (kind === "ratios") {
    return renderRatioPanels(parseCsv(inputText));
  }
  return renderInstance(parseInstance(inputText));
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (exc) {
    console.error((exc as Error).message);
    return 2;
  }
  let inputText: string;
  try {
    inputText = readFileSync(args.input, "utf8");
  } catch (exc) {
    console.error(`cannot read ${args.input}: ${(exc as Error).message}`);
    return 2;
  }
  try {
    const svg = renderToString(args.kind, inputText);
    writeFileSync(args.out, svg, "utf8");
  } catch (exc) {
    if (exc instanceof CsvError || exc instanceof InstanceError) {
      console.error(`bad input: ${exc.message}`);
      return 1;
    }
    console.error((exc as Error).message);
    return 2;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("render.js")) {
  process.exit(main(process.argv.slice(2)));
}
