/**
 * Figure rendering: check a parsed sweep CSV against the figure table,
 * then hand the matched series to the chart builder.
 *
 * The checks are deliberately two-sided. A series the figure expects
 * but the CSV lacks is an error, and so is a series the CSV carries
 * but the figure table neither draws nor suppresses. Nothing is ever
 * quietly ignored.
 */

import { CsvSchemaError, declaredSeries } from "./csv.js";
import type { SweepCsv } from "./csv.js";
import type { FigureSpec } from "./figures.js";
import { buildChart } from "./svg.js";
import type { ChartSeries } from "./svg.js";

export interface RenderOptions {
  /** Shade Wilson confidence bands behind the curves. */
  ci?: boolean;
}

function metaValue(csv: SweepCsv, key: string): string | undefined {
  const prefix = key + "=";
  for (const line of csv.meta) {
    if (line.startsWith(prefix)) return line.slice(prefix.length);
  }
  return undefined;
}

export function renderFigure(csv: SweepCsv, spec: FigureSpec, opts: RenderOptions = {}): string {
  const present = new Map(csv.series.map((s) => [s.name, s]));

  // A series announced in the metadata but absent from the data rows
  // was written empty by the producer.
  for (const name of declaredSeries(csv)) {
    if (!present.has(name)) {
      throw new CsvSchemaError(`figure ${spec.id}: empty series '${name}'`);
    }
  }

  const expected = new Set(spec.series.map((s) => s.name));
  for (const style of spec.series) {
    if (!present.has(style.name)) {
      const have = csv.series.map((s) => s.name).join(", ");
      throw new CsvSchemaError(
        `figure ${spec.id}: missing series '${style.name}' (csv has: ${have})`,
      );
    }
  }
  for (const s of csv.series) {
    if (!expected.has(s.name) && !spec.suppress.includes(s.name)) {
      throw new CsvSchemaError(`figure ${spec.id}: unexpected series '${s.name}'`);
    }
  }

  const series: ChartSeries[] = spec.series.map((style) => ({
    style,
    points: present.get(style.name)!.points,
  }));

  const subtitle = ["trials", "seed"]
    .map((key) => {
      const v = metaValue(csv, key);
      return v === undefined ? null : `${key}=${v}`;
    })
    .filter((part): part is string => part !== null)
    .join("  ");

  return buildChart({
    title: `figure ${spec.id}`,
    subtitle,
    yLabel: spec.yLabel,
    yAxis: spec.yAxis,
    series,
    ci: opts.ci === true,
  });
}
