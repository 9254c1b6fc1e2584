/**
 * Figure assembly from curve files. The renderer only applies plotting
 * transforms (axis scaling, tick placement); data values pass through
 * untouched. Zero or absent values cannot be placed on a log axis and are
 * skipped, never altered.
 */

import { basename } from "path";

import { CurveFile, CurveRow } from "./csv.js";
import { PlotSpec, SeriesSpec } from "./spec.js";
import { Scale, fmt, linearScale, logScale } from "./scale.js";
import { PALETTE, document as svgDocument, el, marker, polyline, textEl } from "./svg.js";

const W = 640;
const H = 480;
const MARGIN = { left: 70, right: 20, top: 36, bottom: 48 };

interface Series {
  label: string;
  points: Array<[number, number]>;
  band?: Array<[number, number, number]>; // x, lo, hi
  dashed?: boolean;
  color: string;
  shape: number;
  withMarkers: boolean;
}

function seriesLabel(spec: SeriesSpec, fallbackIndex: number): string {
  if (spec.label) return spec.label;
  const stem = basename(spec.path).replace(/\.[^.]*$/, "");
  return stem || `series ${fallbackIndex + 1}`;
}

function pick(rows: CurveRow[], col: keyof CurveRow): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (const r of rows) {
    const y = r[col];
    if (y !== null) out.push([r.snr_db as number, y as number]);
  }
  return out;
}

export function berSeries(files: CurveFile[], specs: SeriesSpec[]): Series[] {
  const out: Series[] = [];
  files.forEach((file, i) => {
    const col = specs[i].column ?? "ber_bob";
    const color = PALETTE[i % PALETTE.length];
    const sim = pick(file.rows, col);
    const bound = pick(file.rows, "ber_bound");
    if (sim.length === 0 && bound.length === 0) {
      throw new Error(
        `${file.path}: neither '${col}' nor 'ber_bound' holds values to plot`,
      );
    }
    if (sim.length > 0) {
      out.push({
        label: seriesLabel(specs[i], i),
        points: sim,
        color,
        shape: i,
        withMarkers: true,
      });
    }
    if (bound.length > 0) {
      // bound-only files (separate `bound` runs) draw as a dashed overlay
      const suffix = sim.length > 0 ? " (bound)" : "";
      out.push({
        label: `${seriesLabel(specs[i], i)}${suffix}`,
        points: bound,
        dashed: true,
        color,
        shape: i,
        withMarkers: false,
      });
    }
  });
  return out;
}

export function esrSeries(files: CurveFile[], specs: SeriesSpec[]): Series[] {
  return files.map((file, i) => {
    const rate = pick(file.rows, "r_s");
    if (rate.length === 0) {
      throw new Error(`${file.path}: column 'r_s' holds no values to plot`);
    }
    const band: Array<[number, number, number]> = [];
    for (const r of file.rows) {
      if (r.r_s !== null && r.r_s_se !== null) {
        band.push([r.snr_db as number, r.r_s - r.r_s_se, r.r_s + r.r_s_se]);
      }
    }
    return {
      label: seriesLabel(specs[i], i),
      points: rate,
      band: band.length === rate.length ? band : undefined,
      color: PALETTE[i % PALETTE.length],
      shape: i,
      withMarkers: true,
    };
  });
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function axes(x: Scale, y: Scale, logY: boolean, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = H - MARGIN.bottom;
  const y1 = MARGIN.top;
  for (const t of x.ticks()) {
    const xp = x.toPx(t);
    parts.push(polyline([[xp, y0], [xp, y1]], { stroke: "#dddddd", "stroke-width": "0.5" }));
    parts.push(textEl(xp, y0 + 18, fmt(t), { "text-anchor": "middle", "font-size": "11" }));
  }
  for (const t of y.ticks()) {
    const yp = y.toPx(t);
    parts.push(polyline([[x0, yp], [x1, yp]], { stroke: "#dddddd", "stroke-width": "0.5" }));
    const label = logY ? `1e${Math.round(Math.log10(t))}` : fmt(t);
    parts.push(textEl(x0 - 6, yp + 4, label, { "text-anchor": "end", "font-size": "11" }));
  }
  parts.push(
    polyline([[x0, y1], [x0, y0], [x1, y0]], { stroke: "black", "stroke-width": "1" }),
  );
  parts.push(textEl((x0 + x1) / 2, H - 12, xLabel, { "text-anchor": "middle", "font-size": "13" }));
  parts.push(
    el(
      "g",
      { transform: `translate(16 ${(y0 + y1) / 2}) rotate(-90)` },
      textEl(0, 0, yLabel, { "text-anchor": "middle", "font-size": "13" }),
    ),
  );
  return parts.join("\n");
}

function legend(series: Series[]): string {
  const parts: string[] = [];
  series.forEach((s, i) => {
    const yp = MARGIN.top + 8 + 16 * i;
    const xp = W - MARGIN.right - 170;
    parts.push(
      polyline([[xp, yp], [xp + 26, yp]], {
        stroke: s.color,
        "stroke-width": "1.5",
        ...(s.dashed ? { "stroke-dasharray": "6 4" } : {}),
      }),
    );
    if (s.withMarkers) parts.push(marker(s.shape, xp + 13, yp, s.color));
    parts.push(textEl(xp + 32, yp + 4, s.label, { "font-size": "11" }));
  });
  return parts.join("\n");
}

export function renderFigure(spec: PlotSpec, files: CurveFile[]): string {
  const logY = spec.kind === "ber";
  const series = logY ? berSeries(files, spec.series) : esrSeries(files, spec.series);

  const plottable = series.map((s) =>
    logY ? { ...s, points: s.points.filter(([, v]) => v > 0) } : s,
  );
  const xs = plottable.flatMap((s) => s.points.map(([x]) => x));
  const ys = plottable.flatMap((s) =>
    s.points.map(([, v]) => v).concat(s.band ? s.band.flatMap(([, lo, hi]) => [lo, hi]) : []),
  );
  if (xs.length === 0) throw new Error("nothing to plot after dropping non-positive values");

  const [xlo, xhi] = spec.xRange ?? extent(xs);
  let [ylo, yhi] = spec.yRange ?? extent(ys);
  if (logY) {
    if (spec.yRange === undefined) {
      ylo = Math.pow(10, Math.floor(Math.log10(ylo)));
      yhi = Math.pow(10, Math.ceil(Math.log10(yhi)));
      if (ylo === yhi) yhi = ylo * 10;
    }
  } else if (spec.yRange === undefined) {
    ylo = Math.min(0, ylo);
    yhi = yhi + 0.05 * (yhi - ylo || 1);
  }

  const x = linearScale([xlo, xhi === xlo ? xlo + 1 : xhi], [MARGIN.left, W - MARGIN.right]);
  const y = logY
    ? logScale([ylo, yhi], [H - MARGIN.bottom, MARGIN.top])
    : linearScale([ylo, yhi], [H - MARGIN.bottom, MARGIN.top]);

  const parts: string[] = [];
  parts.push(axes(x, y, logY, "SNR (dB)", logY ? "BER" : "secrecy rate (bpcu)"));

  for (const s of plottable) {
    if (s.band) {
      const upper = s.band.map(([bx, , hi]) => [x.toPx(bx), y.toPx(hi)] as [number, number]);
      const lower = s.band
        .slice()
        .reverse()
        .map(([bx, lo]) => [x.toPx(bx), y.toPx(lo)] as [number, number]);
      const d =
        upper.map(([px_, py], i) => `${i === 0 ? "M" : "L"}${px_.toFixed(2)} ${py.toFixed(2)}`).join(" ") +
        " " +
        lower.map(([px_, py]) => `L${px_.toFixed(2)} ${py.toFixed(2)}`).join(" ") +
        " Z";
      parts.push(el("path", { d, fill: s.color, "fill-opacity": "0.15", stroke: "none" }));
    }
    const pts = s.points.map(([vx, vy]) => [x.toPx(vx), y.toPx(vy)] as [number, number]);
    parts.push(
      polyline(pts, {
        stroke: s.color,
        "stroke-width": "1.5",
        ...(s.dashed ? { "stroke-dasharray": "6 4" } : {}),
      }),
    );
    if (s.withMarkers) {
      for (const [mx, my] of pts) parts.push(marker(s.shape, mx, my, s.color));
    }
  }

  parts.push(legend(plottable));
  if (spec.title) {
    parts.push(textEl(W / 2, 20, spec.title, { "text-anchor": "middle", "font-size": "14" }));
  }
  return svgDocument(W, H, parts.join("\n"));
}
