/** Plot specification: JSON form and the positional CLI shorthand. */

import { readFileSync } from "fs";

export type PlotKind = "ber" | "esr";

export interface SeriesSpec {
  /** CSV path following the simulator schema. */
  path: string;
  /** Legend label; defaults to the file stem. */
  label?: string;
  /** BER column to draw for this file (ber runs only). */
  column?: "ber_bob" | "ber_eve";
}

export interface PlotSpec {
  kind: PlotKind;
  series: SeriesSpec[];
  out: string;
  format?: "svg";
  xRange?: [number, number];
  yRange?: [number, number];
  title?: string;
}

export class SpecError extends Error {}

function asRange(v: unknown, name: string): [number, number] | undefined {
  if (v === undefined) return undefined;
  if (!Array.isArray(v) || v.length !== 2 || v.some((x) => typeof x !== "number")) {
    throw new SpecError(`'${name}' must be a [min, max] number pair`);
  }
  if (!(v[0] < v[1])) throw new SpecError(`'${name}' must satisfy min < max`);
  return [v[0], v[1]];
}

export function validateSpec(raw: unknown): PlotSpec {
  if (typeof raw !== "object" || raw === null) throw new SpecError("spec must be a JSON object");
  const o = raw as Record<string, unknown>;
  if (o.kind !== "ber" && o.kind !== "esr") {
    throw new SpecError(`'kind' must be 'ber' or 'esr', got ${JSON.stringify(o.kind)}`);
  }
  if (!Array.isArray(o.series) || o.series.length === 0) {
    throw new SpecError("'series' must be a nonempty array");
  }
  const series: SeriesSpec[] = o.series.map((s, i) => {
    if (typeof s === "string") return { path: s };
    if (typeof s !== "object" || s === null || typeof (s as any).path !== "string") {
      throw new SpecError(`series[${i}] needs a 'path' string`);
    }
    const spec = s as SeriesSpec;
    if (spec.column !== undefined && spec.column !== "ber_bob" && spec.column !== "ber_eve") {
      throw new SpecError(`series[${i}].column must be 'ber_bob' or 'ber_eve'`);
    }
    return spec;
  });
  if (typeof o.out !== "string" || o.out === "") throw new SpecError("'out' must be a path");
  if (o.format !== undefined && o.format !== "svg") {
    throw new SpecError(`unsupported output format ${JSON.stringify(o.format)}; only 'svg'`);
  }
  return {
    kind: o.kind,
    series,
    out: o.out,
    format: "svg",
    xRange: asRange(o.xRange, "xRange"),
    yRange: asRange(o.yRange, "yRange"),
    title: typeof o.title === "string" ? o.title : undefined,
  };
}

export function loadSpec(path: string): PlotSpec {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SpecError(`cannot read spec file '${path}': ${(err as Error).message}`);
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (err) {
    throw new SpecError(`spec file '${path}' is not valid JSON: ${(err as Error).message}`);
  }
  return validateSpec(parsed);
}
