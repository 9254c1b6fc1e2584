#!/usr/bin/env node
/**
 * fig-render: draw BER/ESR figures from simulator CSVs.
 *
 *   fig-render render --spec plot.json
 *   fig-render ber results1.csv [results2.csv ...] --out fig.svg
 *   fig-render esr esr_a03.csv esr_a09.csv --out esr.svg
 */

import { writeFileSync } from "fs";

import { SchemaError, readCurveFile } from "./csv.js";
import { renderFigure } from "./render.js";
import { PlotSpec, SpecError, loadSpec, validateSpec } from "./spec.js";

function usageError(msg: string): never {
  throw new SpecError(`${msg}\nusage: fig-render render --spec <path> | fig-render <ber|esr> <csv...> --out <img>`);
}

export function parseArgs(argv: string[]): PlotSpec {
  if (argv.length === 0) usageError("missing subcommand");
  const [cmd, ...rest] = argv;
  if (cmd === "render") {
    const i = rest.indexOf("--spec");
    if (i < 0 || i + 1 >= rest.length) usageError("render needs --spec <path>");
    return loadSpec(rest[i + 1]);
  }
  if (cmd === "ber" || cmd === "esr") {
    const out = rest.indexOf("--out");
    if (out < 0 || out + 1 >= rest.length) usageError(`${cmd} needs --out <img>`);
    const csvs = rest.filter((_, k) => k !== out && k !== out + 1);
    if (csvs.length === 0) usageError(`${cmd} needs at least one CSV path`);
    return validateSpec({ kind: cmd, series: csvs, out: rest[out + 1] });
  }
  usageError(`unknown subcommand '${cmd}'`);
}

export function run(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    const files = spec.series.map((s) => readCurveFile(s.path));
    const svg = renderFigure(spec, files);
    writeFileSync(spec.out, svg);
    console.log(spec.out);
    return 0;
  } catch (err) {
    if (err instanceof SpecError || err instanceof SchemaError || err instanceof Error) {
      console.error(`fig-render: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

import { pathToFileURL } from "url";

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(run(process.argv.slice(2)));
}
