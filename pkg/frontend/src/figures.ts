/**
 * Figure table: which CSV series each built-in figure carries and how
 * to draw them.
 *
 * Series names here must match the `series` column values written by
 * `relaydmt figure N` byte for byte; render refuses a CSV whose series
 * set differs from this table (unless a name is listed in `suppress`).
 */

export type Marker = "circle" | "plus" | "square" | "diamond" | "cross";

/** y axis: probability on [0,1], or outage on a log scale. */
export type YAxisKind = "linear" | "log";

export interface SeriesStyle {
  name: string;
  color: string;
  /** stroke-dasharray; solid when absent */
  dash?: string;
  marker?: Marker;
}

export interface FigureSpec {
  id: number;
  yAxis: YAxisKind;
  yLabel: string;
  /** Every series the CSV must contain, in draw/legend order. */
  series: SeriesStyle[];
  /** Series tolerated in the CSV but intentionally not drawn. */
  suppress: string[];
}

const BLUE = "#1f77b4";
const GREEN = "#2ca02c";
const RED = "#d62728";
const GRAY = "#555555";

const DASHED = "7,3";
const DOTTED = "2,3";

export const FIGURE_SPECS: Record<number, FigureSpec> = {
  2: {
    id: 2,
    yAxis: "linear",
    yLabel: "probability",
    series: [
      { name: "p_c_phi10db", color: BLUE, marker: "circle" },
      { name: "p_c_phi20db", color: GREEN, marker: "circle" },
      { name: "p_c_phi30db", color: RED, marker: "circle" },
      // Threshold approximations ride as dashed overlays in the same
      // color as the curve they approximate.
      { name: "p_nu_phi10db", color: BLUE, dash: DASHED },
      { name: "p_nu_phi20db", color: GREEN, dash: DASHED },
      { name: "p_nu_phi30db", color: RED, dash: DASHED },
    ],
    suppress: [],
  },
  3: {
    id: 3,
    yAxis: "linear",
    yLabel: "decode probability",
    series: [
      { name: "p_c_phi10db", color: BLUE, marker: "circle" },
      { name: "p_c_phi20db", color: GREEN, marker: "square" },
      { name: "p_c_phi30db", color: RED, marker: "plus" },
    ],
    suppress: [],
  },
  4: {
    id: 4,
    yAxis: "log",
    yLabel: "outage probability",
    series: [
      { name: "direct", color: GRAY, marker: "circle" },
      { name: "composite", color: BLUE, marker: "plus" },
      { name: "adaptive_phi20db", color: GREEN, dash: DASHED, marker: "square" },
      { name: "bound_phi20db", color: GREEN, dash: DOTTED, marker: "square" },
      { name: "adaptive_phi30db", color: RED, dash: DASHED, marker: "diamond" },
      { name: "bound_phi30db", color: RED, dash: DOTTED, marker: "diamond" },
    ],
    suppress: [],
  },
  5: {
    id: 5,
    yAxis: "linear",
    yLabel: "decode probability",
    series: [
      { name: "p_c_one_relay", color: BLUE, marker: "circle" },
      { name: "p_c_ors_two_relay", color: RED, marker: "plus" },
    ],
    suppress: [],
  },
  6: {
    id: 6,
    yAxis: "log",
    yLabel: "outage probability",
    series: [
      { name: "selection_one_relay", color: BLUE, marker: "circle" },
      { name: "selection_two_relay", color: RED, marker: "plus" },
    ],
    suppress: [],
  },
  7: {
    id: 7,
    yAxis: "linear",
    yLabel: "decode probability",
    series: [
      { name: "p_c_1", color: BLUE, marker: "plus" },
      { name: "p_c_2", color: RED, marker: "circle" },
    ],
    suppress: [],
  },
  8: {
    id: 8,
    yAxis: "log",
    yLabel: "outage probability",
    series: [
      { name: "multi_adaptive", color: RED, marker: "square" },
      { name: "composite_two_relay", color: BLUE, marker: "plus" },
      { name: "direct", color: GRAY, marker: "circle" },
      { name: "composite_one_relay", color: GREEN, marker: "cross" },
    ],
    suppress: [],
  },
};

export function figureSpec(id: number): FigureSpec {
  const spec = FIGURE_SPECS[id];
  if (spec === undefined) {
    const known = Object.keys(FIGURE_SPECS).join(", ");
    throw new Error(`unknown figure ${id}; known figures: ${known}`);
  }
  return spec;
}
