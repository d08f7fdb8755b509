/**
 * Minimal deterministic SVG scene building: panels with axes, polyline
 * curves, heatmap cells, legends.  No text measurement, no randomness,
 * fixed fonts and sizes, so output bytes depend only on the inputs.
 */

import { CURVE_COLORS, diverging } from "./colormap.js";

export interface Frame {
  x: number;
  y: number;
  width: number;
  height: number;
  xRange: [number, number];
  yRange: [number, number];
}

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const s = v.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export function xPix(f: Frame, x: number): number {
  const [lo, hi] = f.xRange;
  return f.x + ((x - lo) / (hi - lo)) * f.width;
}

export function yPix(f: Frame, y: number): number {
  const [lo, hi] = f.yRange;
  return f.y + f.height - ((y - lo) / (hi - lo)) * f.height;
}

function ticks(lo: number, hi: number, n = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < n; i += 1) out.push(lo + ((hi - lo) * i) / (n - 1));
  return out;
}

export function axes(f: Frame, xLabel: string, yLabel: string, title = ""): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(f.x)}" y="${fmt(f.y)}" width="${fmt(f.width)}" height="${fmt(
      f.height,
    )}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of ticks(f.xRange[0], f.xRange[1])) {
    const px = xPix(f, t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(f.y + f.height)}" x2="${fmt(px)}" y2="${fmt(
        f.y + f.height + 4,
      )}" stroke="#333" stroke-width="1"/>`,
      `<text x="${fmt(px)}" y="${fmt(f.y + f.height + 15)}" text-anchor="middle" ` +
        `font-size="9" ${FONT}>${fmt(t).replace(/\.?0+$/, "") || "0"}</text>`,
    );
  }
  for (const t of ticks(f.yRange[0], f.yRange[1])) {
    const py = yPix(f, t);
    parts.push(
      `<line x1="${fmt(f.x - 4)}" y1="${fmt(py)}" x2="${fmt(f.x)}" y2="${fmt(py)}" ` +
        `stroke="#333" stroke-width="1"/>`,
      `<text x="${fmt(f.x - 6)}" y="${fmt(py + 3)}" text-anchor="end" font-size="9" ` +
        `${FONT}>${fmt(t).replace(/\.?0+$/, "") || "0"}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(f.x + f.width / 2)}" y="${fmt(f.y + f.height + 30)}" ` +
      `text-anchor="middle" font-size="11" ${FONT}>${xLabel}</text>`,
    `<text x="${fmt(f.x - 38)}" y="${fmt(f.y + f.height / 2)}" text-anchor="middle" ` +
      `font-size="11" ${FONT} transform="rotate(-90 ${fmt(f.x - 38)} ${fmt(
        f.y + f.height / 2,
      )})">${yLabel}</text>`,
  );
  if (title) {
    parts.push(
      `<text x="${fmt(f.x + f.width / 2)}" y="${fmt(f.y - 6)}" text-anchor="middle" ` +
        `font-size="11" font-weight="bold" ${FONT}>${title}</text>`,
    );
  }
  return parts.join("\n");
}

export interface CurveStyle {
  color?: string;
  dash?: string;
  width?: number;
}

export function polyline(f: Frame, xs: number[], ys: number[], style: CurveStyle = {}): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i += 1) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) continue; // skip nan gaps
    pts.push(`${fmt(xPix(f, xs[i]))},${fmt(yPix(f, ys[i]))}`);
  }
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
  return (
    `<polyline points="${pts.join(" ")}" fill="none" stroke="${style.color ?? CURVE_COLORS[0]}"` +
    ` stroke-width="${style.width ?? 1.2}"${dash}/>`
  );
}

export function heatmap(
  f: Frame,
  axis1: number[],
  axis2: number[],
  values: number[][],
  vmax: number,
): string {
  // axis1 runs along x, axis2 along y
  const cw = f.width / axis1.length;
  const ch = f.height / axis2.length;
  const cells: string[] = [];
  for (let i = 0; i < axis1.length; i += 1) {
    for (let j = 0; j < axis2.length; j += 1) {
      const x = f.x + i * cw;
      const y = f.y + f.height - (j + 1) * ch;
      cells.push(
        `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(cw + 0.05)}" height="${fmt(
          ch + 0.05,
        )}" fill="${diverging(values[i][j], vmax)}"/>`,
      );
    }
  }
  return cells.join("\n");
}

export function colorbar(x: number, y: number, height: number, vmax: number): string {
  const steps = 40;
  const parts: string[] = [];
  for (let i = 0; i < steps; i += 1) {
    const v = vmax - (2 * vmax * i) / (steps - 1);
    parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y + (height * i) / steps)}" width="10" height="${fmt(
        height / steps + 0.05,
      )}" fill="${diverging(v, vmax)}"/>`,
    );
  }
  parts.push(
    `<rect x="${fmt(x)}" y="${fmt(y)}" width="10" height="${fmt(height)}" fill="none" ` +
      `stroke="#333" stroke-width="0.5"/>`,
    `<text x="${fmt(x + 14)}" y="${fmt(y + 6)}" font-size="9" ${FONT}>+${vmax.toFixed(3)}</text>`,
    `<text x="${fmt(x + 14)}" y="${fmt(y + height / 2 + 3)}" font-size="9" ${FONT}>0</text>`,
    `<text x="${fmt(x + 14)}" y="${fmt(y + height)}" font-size="9" ${FONT}>-${vmax.toFixed(3)}</text>`,
  );
  return parts.join("\n");
}

export function legend(x: number, y: number, entries: { label: string; style: CurveStyle }[]): string {
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const yy = y + i * 13;
    const dash = e.style.dash ? ` stroke-dasharray="${e.style.dash}"` : "";
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(yy)}" x2="${fmt(x + 18)}" y2="${fmt(yy)}" ` +
        `stroke="${e.style.color ?? CURVE_COLORS[0]}" stroke-width="1.5"${dash}/>`,
      `<text x="${fmt(x + 22)}" y="${fmt(yy + 3)}" font-size="9" ${FONT}>${e.label}</text>`,
    );
  });
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export function finiteRange(values: number[][], pad = 0.05): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const arr of values) {
    for (const v of arr) {
      if (Number.isFinite(v)) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!(lo < hi)) {
    lo = 0;
    hi = 1;
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}
