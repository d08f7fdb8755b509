/**
 * Per-figure SVG layouts over the simulator's CSV outputs.
 *
 * Pure CSV-to-image transforms: nothing here recomputes physics.  All
 * Wigner heatmaps in a figure share one diverging color scale, symmetric
 * about zero, so negative quasiprobability is rendered faithfully.
 */

import { join } from "node:path";

import { Grid, SchemaError, Table, column, matchColumns, readTable, tableToGrid } from "./csv.js";
import { CURVE_COLORS, symmetricMax } from "./colormap.js";
import {
  Frame,
  axes,
  colorbar,
  document as svgDocument,
  finiteRange,
  heatmap,
  legend,
  polyline,
} from "./svg.js";

export const FIGURE_IDS = ["fig2", "fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig6", "fig7", "fig8"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export interface RenderResult {
  svg: string;
  /** heatmap scale bound when the figure has heatmaps: scale is [-vmax, vmax] */
  vmax?: number;
}

interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  curves: { xs: number[]; ys: number[]; label: string; color: string; dash?: string }[];
  inset?: [number, number];
}

const PANEL_W = 240;
const PANEL_H = 160;
const MARGIN_X = 62;
const MARGIN_Y = 46;

function curvePanel(px: number, py: number, spec: PanelSpec): string {
  const allY = spec.curves.map((c) => c.ys);
  const frame: Frame = {
    x: px,
    y: py,
    width: PANEL_W,
    height: PANEL_H,
    xRange: finiteRange(spec.curves.map((c) => c.xs), 0),
    yRange: finiteRange(allY),
  };
  const parts = [axes(frame, spec.xLabel, spec.yLabel, spec.title)];
  spec.curves.forEach((c) => {
    parts.push(polyline(frame, c.xs, c.ys, { color: c.color, dash: c.dash }));
  });
  parts.push(
    legend(
      px + PANEL_W - 78,
      py + 12,
      spec.curves.map((c) => ({ label: c.label, style: { color: c.color, dash: c.dash } })),
    ),
  );
  if (spec.inset) {
    const [lo, hi] = spec.inset;
    const ins: Frame = {
      x: px + PANEL_W * 0.42,
      y: py + PANEL_H * 0.52,
      width: PANEL_W * 0.4,
      height: PANEL_H * 0.36,
      xRange: [lo, hi],
      yRange: finiteRange(
        spec.curves.map((c) => c.ys.filter((_, i) => c.xs[i] >= lo && c.xs[i] <= hi)),
      ),
    };
    const body = [
      `<rect x="${ins.x}" y="${ins.y}" width="${ins.width}" height="${ins.height}" ` +
        `fill="white" stroke="#888" stroke-width="0.8"/>`,
    ];
    spec.curves.forEach((c) => {
      const xs = c.xs.map((v, i) => (v >= lo && v <= hi ? v : NaN));
      body.push(polyline(ins, xs, c.ys, { color: c.color, dash: c.dash, width: 0.9 }));
    });
    parts.push(body.join("\n"));
  }
  return parts.join("\n");
}

function grid2(panels: PanelSpec[], columns: number): RenderResult {
  const rows = Math.ceil(panels.length / columns);
  const width = MARGIN_X + columns * (PANEL_W + MARGIN_X);
  const height = MARGIN_Y + rows * (PANEL_H + MARGIN_Y + 14);
  const body = panels
    .map((p, i) => {
      const cx = MARGIN_X + (i % columns) * (PANEL_W + MARGIN_X);
      const cy = MARGIN_Y + Math.floor(i / columns) * (PANEL_H + MARGIN_Y + 14);
      return curvePanel(cx, cy, p);
    })
    .join("\n");
  return { svg: svgDocument(width, height, body) };
}

// ---------------------------------------------------------------------------
// time-series figures
// ---------------------------------------------------------------------------

function renderNegativity(dataDir: string): RenderResult {
  const table = readTable(join(dataDir, "negativity.csv"));
  const t = column(table, "t");
  return grid2(
    [
      {
        title: "conditional-cat logarithmic negativity",
        xLabel: "delta_c t",
        yLabel: "N",
        curves: [
          { xs: t, ys: column(table, "N_plus"), label: "N+", color: CURVE_COLORS[0] },
          { xs: t, ys: column(table, "N_minus"), label: "N-", color: CURVE_COLORS[1] },
        ],
        inset: [1.7, 2.5],
      },
    ],
    1,
  );
}

function renderProbabilities(dataDir: string): RenderResult {
  const table = readTable(join(dataDir, "probabilities.csv"));
  const t = column(table, "t");
  return grid2(
    [
      {
        title: "detection probabilities (exact branch)",
        xLabel: "delta_c t",
        yLabel: "P",
        curves: [
          { xs: t, ys: column(table, "P_plus_exact"), label: "P+", color: CURVE_COLORS[0] },
          { xs: t, ys: column(table, "P_minus_exact"), label: "P-", color: CURVE_COLORS[1] },
        ],
        inset: [2.5, 4.0],
      },
      {
        title: "optomechanical approximation",
        xLabel: "delta_c t",
        yLabel: "P",
        curves: [
          { xs: t, ys: column(table, "P_plus_approx"), label: "P+", color: CURVE_COLORS[0] },
          { xs: t, ys: column(table, "P_minus_approx"), label: "P-", color: CURVE_COLORS[1] },
        ],
        inset: [2.5, 4.0],
      },
    ],
    2,
  );
}

function renderFidelity(dataDir: string, prefix: "F" | "Fp" | "Fm", title: string): RenderResult {
  const table = readTable(join(dataDir, "fidelity.csv"));
  const t = column(table, "t");
  const names = matchColumns(table, (n) => n.startsWith(`${prefix}_`));
  return grid2(
    [
      {
        title,
        xLabel: "delta_c t",
        yLabel: prefix === "F" ? "F" : prefix === "Fp" ? "F+" : "F-",
        curves: names.map((name, i) => ({
          xs: t,
          ys: column(table, name),
          label: name.slice(prefix.length + 1),
          color: CURVE_COLORS[i % CURVE_COLORS.length],
        })),
      },
    ],
    1,
  );
}

// ---------------------------------------------------------------------------
// open-system sweep figures
// ---------------------------------------------------------------------------

const SWEEP_MODES = ["a", "b", "c"] as const;
const SWEEP_KAPPAS = ["0.01", "0.05", "0.1"] as const;

function openTables(dataDir: string): Map<string, Table> {
  const out = new Map<string, Table>();
  for (const mode of SWEEP_MODES) {
    for (const kappa of SWEEP_KAPPAS) {
      const label = `k${mode}${kappa}`;
      out.set(label, readTable(join(dataDir, `open_${label}.csv`)));
    }
  }
  return out;
}

function sweepPanels(tables: Map<string, Table>, col: string, yLabel: string): PanelSpec[] {
  return SWEEP_MODES.map((mode) => ({
    title: `${yLabel}, kappa_${mode} sweep`,
    xLabel: "delta_c t",
    yLabel,
    curves: SWEEP_KAPPAS.map((kappa, i) => {
      const table = tables.get(`k${mode}${kappa}`)!;
      return {
        xs: column(table, "t"),
        ys: column(table, col),
        label: `k=${kappa}`,
        color: CURVE_COLORS[i],
      };
    }),
    inset: [1.7, 2.5] as [number, number],
  }));
}

function renderOpenFidelities(dataDir: string): RenderResult {
  const tables = openTables(dataDir);
  return grid2(
    [
      ...sweepPanels(tables, "f", "f"),
      ...sweepPanels(tables, "f_plus", "f+"),
      ...sweepPanels(tables, "f_minus", "f-"),
    ],
    3,
  );
}

function renderOpenProbabilities(dataDir: string): RenderResult {
  const tables = openTables(dataDir);
  return grid2(
    [...sweepPanels(tables, "P_plus", "P+"), ...sweepPanels(tables, "P_minus", "P-")],
    3,
  );
}

function renderOpenNegativity(dataDir: string): RenderResult {
  const tables = openTables(dataDir);
  return grid2(
    [...sweepPanels(tables, "N_plus", "N+"), ...sweepPanels(tables, "N_minus", "N-")],
    3,
  );
}

// ---------------------------------------------------------------------------
// Wigner tomography figure
// ---------------------------------------------------------------------------

const WIGNER_TIMES = ["1.85", "3.14159"] as const;

function wignerPath(dataDir: string, kind: string, name: string, sign: string, t: string): string {
  return join(dataDir, `wigner_${kind}_${name}_${sign}_t${t}.csv`);
}

function renderWigner(dataDir: string): RenderResult {
  const planes: { grid: Grid; title: string }[] = [];
  for (const plane of ["re_re", "im_im"]) {
    for (const sign of ["plus", "minus"]) {
      for (const t of WIGNER_TIMES) {
        const table = readTable(wignerPath(dataDir, "plane", plane, sign, t));
        planes.push({
          grid: tableToGrid(table),
          title: `W${sign === "plus" ? "+" : "-"} ${plane} t=${t === "1.85" ? "1.85" : "pi"}`,
        });
      }
    }
  }
  const vmax = symmetricMax(planes.map((p) => p.grid.values));

  const cell = 150;
  const gapX = 46;
  const gapY = 40;
  const cols = 4;
  const heatRows = 2;
  const parts: string[] = [];
  planes.forEach((p, i) => {
    const px = 50 + (i % cols) * (cell + gapX);
    const py = 34 + Math.floor(i / cols) * (cell + gapY);
    const frame: Frame = {
      x: px,
      y: py,
      width: cell,
      height: cell,
      xRange: [p.grid.axis1[0], p.grid.axis1[p.grid.axis1.length - 1]],
      yRange: [p.grid.axis2[0], p.grid.axis2[p.grid.axis2.length - 1]],
    };
    parts.push(heatmap(frame, p.grid.axis1, p.grid.axis2, p.grid.values, vmax));
    const labels = p.title.includes("re_re") ? ["Re z_b", "Re z_c"] : ["Im z_b", "Im z_c"];
    parts.push(axes(frame, labels[0], labels[1], p.title));
  });
  const width = 50 + cols * (cell + gapX) + 30;
  parts.push(colorbar(width - 56, 34, cell, vmax));

  // line-cut panels: solid = entangled time, dashed = decoupling time
  const cutKinds = ["re_diag", "im_diag"];
  const cutY = 34 + heatRows * (cell + gapY) + 16;
  let panelIdx = 0;
  for (const kind of cutKinds) {
    for (const sign of ["plus", "minus"]) {
      const curves = WIGNER_TIMES.map((t, i) => {
        const table = readTable(wignerPath(dataDir, "line", kind, sign, t));
        return {
          xs: column(table, "axis1"),
          ys: column(table, "W"),
          label: t === "1.85" ? "t=1.85" : "t=pi",
          color: i === 0 ? CURVE_COLORS[0] : CURVE_COLORS[1],
          dash: i === 0 ? undefined : "4 3",
        };
      });
      const px = 50 + (panelIdx % cols) * (cell + gapX);
      parts.push(
        curvePanel(px, cutY, {
          title: `${kind} cut, W${sign === "plus" ? "+" : "-"}`,
          xLabel: kind === "re_diag" ? "Re z_b = Re z_c" : "Im z_b = Im z_c",
          yLabel: "W",
          curves,
        }),
      );
      panelIdx += 1;
    }
  }
  const height = cutY + PANEL_H + 60;
  return { svg: svgDocument(width, height, parts.join("\n")), vmax };
}

// ---------------------------------------------------------------------------

export function renderFigure(figure: FigureId, dataDir: string): RenderResult {
  switch (figure) {
    case "fig2":
      return renderNegativity(dataDir);
    case "fig3":
      return renderWigner(dataDir);
    case "fig4":
      return renderProbabilities(dataDir);
    case "fig5a":
      return renderFidelity(dataDir, "F", "branch fidelity F(t) across delta_b/delta_c");
    case "fig5b":
      return renderFidelity(dataDir, "Fp", "plus-cat fidelity across delta_b/delta_c");
    case "fig5c":
      return renderFidelity(dataDir, "Fm", "minus-cat fidelity across delta_b/delta_c");
    case "fig6":
      return renderOpenFidelities(dataDir);
    case "fig7":
      return renderOpenProbabilities(dataDir);
    case "fig8":
      return renderOpenNegativity(dataDir);
    default:
      throw new SchemaError(`unknown figure ${JSON.stringify(figure)}`);
  }
}
