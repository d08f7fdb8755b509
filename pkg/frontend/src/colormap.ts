/**
 * Diverging blue-white-red colormap, symmetric about zero, for the Wigner
 * heatmaps: negative quasiprobability must be as visible as positive.
 */

type Rgb = [number, number, number];

// cool half anchors (deep blue -> white) and warm half (white -> deep red)
const NEG: Rgb[] = [
  [5, 48, 97],
  [33, 102, 172],
  [67, 147, 195],
  [146, 197, 222],
  [209, 229, 240],
  [255, 255, 255],
];
const POS: Rgb[] = [
  [255, 255, 255],
  [253, 219, 199],
  [244, 165, 130],
  [214, 96, 77],
  [178, 24, 43],
  [103, 0, 31],
];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

function sample(anchors: Rgb[], t: number): Rgb {
  const x = Math.min(Math.max(t, 0), 1) * (anchors.length - 1);
  const i = Math.min(Math.floor(x), anchors.length - 2);
  const f = x - i;
  return [
    Math.round(lerp(anchors[i][0], anchors[i + 1][0], f)),
    Math.round(lerp(anchors[i][1], anchors[i + 1][1], f)),
    Math.round(lerp(anchors[i][2], anchors[i + 1][2], f)),
  ];
}

/** Map v in [-vmax, vmax] to a CSS color; v = 0 is exactly white. */
export function diverging(v: number, vmax: number): string {
  if (vmax <= 0) throw new Error("vmax must be positive");
  const t = Math.min(Math.max(v / vmax, -1), 1);
  const rgb = t < 0 ? sample(NEG, 1 + t) : sample(POS, t);
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

/** Symmetric scale bound: max |v| over every finite value. */
export function symmetricMax(valueSets: number[][][]): number {
  let m = 0;
  for (const grid of valueSets) {
    for (const row of grid) {
      for (const v of row) {
        if (Number.isFinite(v)) m = Math.max(m, Math.abs(v));
      }
    }
  }
  return m > 0 ? m : 1;
}

export const CURVE_COLORS = ["#2166ac", "#b2182b", "#1a9850", "#762a83", "#e08214"];
