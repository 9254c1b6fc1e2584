import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { run } from "../src/cli.js";
import { parseCurveText } from "../src/csv.js";
import { renderFigure } from "../src/render.js";
import { validateSpec } from "../src/spec.js";
import { linearTicks } from "../src/scale.js";

const HEADER =
  "snr_db,ber_bob,ber_bob_se,ber_eve,ber_eve_se,ber_bound,r_b,r_e,r_s,r_s_se,blocks,bit_errors_bob";

function berCsv(withBound: boolean): string {
  const rows = [
    [0, 1.9e-1, 1e-3, 2.8e-1, 1e-3, 5.0e-1],
    [8, 1.5e-2, 2e-4, 2.1e-1, 1e-3, 5.3e-2],
    [16, 2.2e-4, 1e-5, 1.8e-1, 1e-3, 3.1e-4],
    [24, 3.7e-6, 4e-7, 1.7e-1, 1e-3, 3.2e-6],
  ];
  const body = rows
    .map(([s, b, bse, e, ese, bd]) =>
      [s, b, bse, e, ese, withBound ? bd : "", "", "", "", "", 10000, 99].join(","),
    )
    .join("\n");
  return `# kind = ber\n# seed = 1\n${HEADER}\n${body}\n`;
}

function esrCsv(scale: number): string {
  const rows = [0, 5, 10, 15].map((s) =>
    [s, "", "", "", "", "", 1.2, 0.4, (scale * (s + 1)) / 16, 0.01, "", ""].join(","),
  );
  return `# kind = esr\n${HEADER}\n${rows.join("\n")}\n`;
}

describe("figure rendering", () => {
  it("draws a semilog BER figure with markers and a dashed bound", () => {
    const files = [parseCurveText(berCsv(true), "a.csv")];
    const spec = validateSpec({ kind: "ber", series: ["a.csv"], out: "x.svg" });
    const svg = renderFigure(spec, files);
    expect(svg).toContain("<svg");
    expect(svg).toContain("stroke-dasharray"); // bound overlay
    expect(svg).toContain("1e-6"); // log ticks reach the data floor
    expect(svg).toContain("circle"); // simulation markers
    expect(svg).toContain("BER");
  });

  it("omits the bound overlay when the column is empty", () => {
    const files = [parseCurveText(berCsv(false), "a.csv")];
    const spec = validateSpec({ kind: "ber", series: ["a.csv"], out: "x.svg" });
    const svg = renderFigure(spec, files);
    expect(svg).not.toContain("stroke-dasharray");
  });

  it("skips zero BER points on the log axis instead of failing", () => {
    const text = `${HEADER}\n0,0.1,,,,,,,,,,\n10,0,,,,,,,,,,\n20,0.001,,,,,,,,,,\n`;
    const files = [parseCurveText(text, "z.csv")];
    const spec = validateSpec({ kind: "ber", series: ["z.csv"], out: "x.svg" });
    expect(() => renderFigure(spec, files)).not.toThrow();
  });

  it("draws a two-series ESR comparison with error bands", () => {
    const files = [parseCurveText(esrCsv(1), "lo.csv"), parseCurveText(esrCsv(2), "hi.csv")];
    const spec = validateSpec({
      kind: "esr",
      series: [
        { path: "lo.csv", label: "alpha=0.3" },
        { path: "hi.csv", label: "alpha=0.9" },
      ],
      out: "x.svg",
    });
    const svg = renderFigure(spec, files);
    expect(svg).toContain("alpha=0.3");
    expect(svg).toContain("alpha=0.9");
    expect(svg).toContain("fill-opacity"); // shaded +-1 SE band
    expect(svg).toContain("secrecy rate");
  });

  it("is byte-deterministic for identical inputs", () => {
    const files = [parseCurveText(berCsv(true), "a.csv")];
    const spec = validateSpec({ kind: "ber", series: ["a.csv"], out: "x.svg" });
    expect(renderFigure(spec, files)).toBe(renderFigure(spec, files));
  });

  it("draws bound-only files as a dashed series", () => {
    const text = `${HEADER}\n0,,,,,0.5,,,,,,\n8,,,,,0.05,,,,,,\n`;
    const files = [parseCurveText(text, "b.csv")];
    const spec = validateSpec({ kind: "ber", series: ["b.csv"], out: "x.svg" });
    const svg = renderFigure(spec, files);
    expect(svg).toContain("stroke-dasharray");
    expect(svg).not.toContain("circle");
  });

  it("reports a file with nothing to plot", () => {
    const text = `${HEADER}\n0,,,,,,1.1,0.4,0.7,0.01,,\n`;
    const files = [parseCurveText(text, "b.csv")];
    const spec = validateSpec({ kind: "ber", series: ["b.csv"], out: "x.svg" });
    expect(() => renderFigure(spec, files)).toThrowError(/ber_bob.*ber_bound/);
  });
});

describe("cli", () => {
  it("renders from positional args and from a JSON spec", () => {
    const dir = mkdtempSync(join(tmpdir(), "figrender-"));
    const a = join(dir, "a.csv");
    const b = join(dir, "b.csv");
    writeFileSync(a, berCsv(true));
    writeFileSync(b, esrCsv(1));
    const out1 = join(dir, "fig1.svg");
    expect(run(["ber", a, "--out", out1])).toBe(0);
    expect(readFileSync(out1, "utf8")).toContain("stroke-dasharray");

    const specPath = join(dir, "plot.json");
    const out2 = join(dir, "fig2.svg");
    writeFileSync(
      specPath,
      JSON.stringify({ kind: "esr", series: [{ path: b, label: "run" }], out: out2 }),
    );
    expect(run(["render", "--spec", specPath])).toBe(0);
    expect(readFileSync(out2, "utf8")).toContain("run");
  });

  it("fails cleanly on missing files and bad specs", () => {
    expect(run(["ber", "/nonexistent.csv", "--out", "/tmp/x.svg"])).toBe(2);
    expect(run(["png"])).toBe(2);
    expect(run([])).toBe(2);
  });
});

describe("ticks", () => {
  it("produces round 1/2/5 steps covering the domain", () => {
    expect(linearTicks(0, 24)).toEqual([0, 5, 10, 15, 20]);
    const fine = linearTicks(0, 1);
    expect(fine[0]).toBe(0);
    expect(fine).toHaveLength(6);
    fine.forEach((v, i) => expect(v).toBeCloseTo(0.2 * i, 12));
  });
});
