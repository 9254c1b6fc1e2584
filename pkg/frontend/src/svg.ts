/** Minimal deterministic SVG assembly: fixed precision, no timestamps. */

const P = 2; // pixel precision

export function px(v: number): string {
  const r = Number(v.toFixed(P));
  return Object.is(r, -0) ? "0" : String(r);
}

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  body = "",
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? px(v) : v}"`)
    .join(" ");
  return body === "" ? `<${tag} ${parts}/>` : `<${tag} ${parts}>${body}</${tag}>`;
}

export function polyline(points: Array<[number, number]>, attrs: Record<string, string>): string {
  const d = points.map(([x, y], i) => `${i === 0 ? "M" : "L"}${px(x)} ${px(y)}`).join(" ");
  return el("path", { d, fill: "none", ...attrs });
}

export function textEl(
  x: number,
  y: number,
  body: string,
  attrs: Record<string, string> = {},
): string {
  return el(
    "text",
    { x, y, "font-family": "Helvetica, Arial, sans-serif", ...attrs },
    escapeXml(body),
  );
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Marker glyphs keyed by series index. */
export function marker(shape: number, x: number, y: number, color: string): string {
  const r = 3.5;
  switch (shape % 4) {
    case 0:
      return el("circle", { cx: x, cy: y, r, fill: "none", stroke: color, "stroke-width": "1.5" });
    case 1:
      return el("rect", {
        x: x - r, y: y - r, width: 2 * r, height: 2 * r,
        fill: "none", stroke: color, "stroke-width": "1.5",
      });
    case 2:
      return el("path", {
        d: `M${px(x)} ${px(y - r)} L${px(x + r)} ${px(y + r)} L${px(x - r)} ${px(y + r)} Z`,
        fill: "none", stroke: color, "stroke-width": "1.5",
      });
    default:
      return el("path", {
        d: `M${px(x - r)} ${px(y)} L${px(x)} ${px(y - r)} L${px(x + r)} ${px(y)} L${px(x)} ${px(y + r)} Z`,
        fill: "none", stroke: color, "stroke-width": "1.5",
      });
  }
}

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}
