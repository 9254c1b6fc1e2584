import { describe, expect, it } from "vitest";

import { SchemaError, parseCurveText } from "../src/csv.js";

const HEADER =
  "snr_db,ber_bob,ber_bob_se,ber_eve,ber_eve_se,ber_bound,r_b,r_e,r_s,r_s_se,blocks,bit_errors_bob";

describe("curve file parsing", () => {
  it("parses comments, header and sparse rows", () => {
    const text = [
      "# kind = ber",
      "# seed = 7",
      HEADER,
      "0,0.19,0.001,0.28,0.001,,,,,,102400,176000",
      "10,0.0066,0.0001,0.18,0.001,,,,,,102400,6100",
    ].join("\n");
    const f = parseCurveText(text);
    expect(f.comments).toEqual(["kind = ber", "seed = 7"]);
    expect(f.rows).toHaveLength(2);
    expect(f.rows[0].snr_db).toBe(0);
    expect(f.rows[0].ber_bound).toBeNull();
    expect(f.rows[1].ber_bob).toBeCloseTo(0.0066);
    expect(f.rows[1].blocks).toBe(102400);
  });

  it("names the offending column on header mismatch", () => {
    const bad = HEADER.replace("ber_bound", "bound");
    expect(() => parseCurveText(bad + "\n")).toThrowError(/column 5.*ber_bound/);
  });

  it("rejects missing header, bad field counts and non-numeric cells", () => {
    expect(() => parseCurveText("# only comments\n")).toThrow(SchemaError);
    expect(() => parseCurveText(HEADER + "\n1,2,3\n")).toThrowError(/3 fields/);
    expect(() => parseCurveText(HEADER + "\n0,x,,,,,,,,,,\n")).toThrowError(/'ber_bob'/);
    expect(() => parseCurveText(HEADER + "\n,,,,,,,,,,,\n")).toThrowError(/snr_db/);
  });
});
