/**
 * Figure definitions for the four sweep CSV kinds, mapping each file's
 * column contract onto a multi-series line chart: one curve per group
 * value (mu for the sweeps, snapshot time for distributions), legend
 * sorted by that value.
 */

import { CsvFormatError, ParsedCsv } from "./csv";
import { Series, buildLineChart, fmtNum } from "./chart";

export const FIGURE_KINDS = [
  "delta_sweep",
  "noise_sweep",
  "relative_sweep",
  "distribution",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

interface FigureDef {
  columns: string[];
  xColumn: string;
  yColumn: string;
  groupColumn: string;
  groupSymbol: string;
  title: string;
  xLabel: string;
  yLabel: string;
  markers: boolean;
}

const FIGURE_DEFS: Record<FigureKind, FigureDef> = {
  delta_sweep: {
    columns: ["delta", "mu", "phi"],
    xColumn: "delta",
    yColumn: "phi",
    groupColumn: "mu",
    groupSymbol: "μ",
    title: "Quantumness vs separation",
    xLabel: "Separation Δ",
    yLabel: "Quantumness Φ_Δ(t)",
    markers: true,
  },
  noise_sweep: {
    columns: ["t", "mu", "phi"],
    xColumn: "t",
    yColumn: "phi",
    groupColumn: "mu",
    groupSymbol: "μ",
    title: "Quantumness vs time",
    xLabel: "Time step t",
    yLabel: "Quantumness Φ_2(t)",
    markers: false,
  },
  relative_sweep: {
    columns: ["t", "mu", "phi", "phi_rel"],
    xColumn: "t",
    yColumn: "phi_rel",
    groupColumn: "mu",
    groupSymbol: "μ",
    title: "Relative quantumness vs time",
    xLabel: "Time step t",
    yLabel: "Relative quantumness Φ_rel(t)",
    markers: false,
  },
  distribution: {
    columns: ["t", "x", "p"],
    xColumn: "x",
    yColumn: "p",
    groupColumn: "t",
    groupSymbol: "t",
    title: "Position distribution",
    xLabel: "Position x",
    yLabel: "Probability",
    markers: false,
  },
};

const PALETTE = [
  "#4361ee",
  "#e63946",
  "#2d6a4f",
  "#f77f00",
  "#9d4edd",
  "#00798c",
  "#bc4b51",
  "#5f6c37",
];

function subtitleFor(kind: FigureKind, meta: Record<string, string>): string {
  const parts: string[] = [];
  if (meta["walk.alpha"] !== undefined) {
    parts.push(`α = ${fmtNum(parseFloat(meta["walk.alpha"]))}`);
  }
  if (kind === "delta_sweep" && meta["sweep.t_fixed"] !== undefined) {
    parts.push(`t = ${meta["sweep.t_fixed"]}`);
  }
  if (kind === "distribution" && meta["walk.mu"] !== undefined) {
    parts.push(`μ = ${fmtNum(parseFloat(meta["walk.mu"]))}`);
  }
  if (meta["walk.channel_name"] !== undefined) {
    parts.push(meta["walk.channel_name"].replace(/_/g, " "));
  }
  return parts.join("  ·  ");
}

/** Group rows by the figure's group column, ascending; each group is
 * sorted by the x column so row order in the file never matters. */
function groupedSeries(def: FigureDef, csv: ParsedCsv): Series[] {
  const groups = new Map<number, Record<string, number>[]>();
  for (const row of csv.rows) {
    const key = row[def.groupColumn];
    const bucket = groups.get(key);
    if (bucket === undefined) groups.set(key, [row]);
    else bucket.push(row);
  }
  const keys = [...groups.keys()].sort((a, b) => a - b);
  return keys.map((key, i) => {
    const rows = [...groups.get(key)!].sort(
      (a, b) => a[def.xColumn] - b[def.xColumn]
    );
    return {
      x: rows.map((r) => r[def.xColumn]),
      y: rows.map((r) => r[def.yColumn]),
      color: PALETTE[i % PALETTE.length],
      label: `${def.groupSymbol} = ${fmtNum(key)}`,
      markers: def.markers,
    };
  });
}

export function figureSvg(kind: FigureKind, csv: ParsedCsv): string {
  const def = FIGURE_DEFS[kind];
  if (
    csv.columns.length !== def.columns.length ||
    def.columns.some((c, i) => csv.columns[i] !== c)
  ) {
    throw new CsvFormatError(
      `${kind} expects columns ${def.columns.join(",")}, got ${csv.columns.join(",")}`
    );
  }
  return buildLineChart({
    title: def.title,
    subtitle: subtitleFor(kind, csv.metadata),
    xLabel: def.xLabel,
    yLabel: def.yLabel,
    series: groupedSeries(def, csv),
  });
}
