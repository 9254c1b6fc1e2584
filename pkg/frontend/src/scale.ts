/** Linear and log10 axis scales with deterministic tick generation. */

export interface Scale {
  toPx(value: number): number;
  ticks(): number[];
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return {
    domain,
    toPx: (v) => r0 + ((v - d0) / span) * (r1 - r0),
    ticks: () => linearTicks(d0, d1),
  };
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error(`log scale needs positive domain, got [${d0}, ${d1}]`);
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const [r0, r1] = range;
  return {
    domain,
    toPx: (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0),
    ticks: () => {
      const out: number[] = [];
      for (let e = Math.ceil(l0 - 1e-9); e <= Math.floor(l1 + 1e-9); e++) {
        out.push(Math.pow(10, e));
      }
      return out.length >= 2 ? out : [d0, d1];
    },
  };
}

/** Round tick positions covering [lo, hi] with a 1/2/5 step. */
export function linearTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Fixed, locale-independent number formatting for SVG text. */
export function fmt(value: number): string {
  if (value === 0) return "0";
  const a = Math.abs(value);
  if (a >= 0.01 && a < 10000) {
    return String(Number(value.toPrecision(6)));
  }
  const e = Math.floor(Math.log10(a));
  const mant = Number((value / Math.pow(10, e)).toPrecision(3));
  return `${mant}e${e}`;
}
