/**
 * Hand-rolled SVG line charts for sweep CSVs.
 *
 * Everything is assembled from strings so that a given input always
 * produces the same bytes: fixed canvas, fixed style table, no
 * timestamps, no randomness, coordinates rounded to 1/100 px.
 */

import type { CsvPoint } from "./csv.js";
import { CsvSchemaError } from "./csv.js";
import type { SeriesStyle, YAxisKind, Marker } from "./figures.js";

// ── Layout ─────────────────────────────────────────────────────────────────

const W = 760;
const H = 430;
const margin = { top: 46, right: 24, bottom: 52, left: 66 };
const plotW = W - margin.left - margin.right;
const plotH = H - margin.top - margin.bottom;

const r2 = (v: number) => v.toFixed(2);

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

// ── Scales ─────────────────────────────────────────────────────────────────

export type Scale = (v: number) => number;

export function makeLinearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Log10 scale; the domain bounds must be positive. */
export function makeLog10Scale(d0: number, d1: number, r0: number, r1: number): Scale {
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  return (v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0);
}

// ── Ticks ──────────────────────────────────────────────────────────────────

function etaTicks(lo: number, hi: number): number[] {
  const step = hi - lo > 60 ? 10 : 5;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9; v += step) ticks.push(v);
  return ticks;
}

const fmtEta = (v: number) => (v % 1 === 0 ? String(v) : v.toFixed(1));

const fmtDecade = (exp: number) => (exp === 0 ? "1" : `1e${exp}`);

// ── Markers ────────────────────────────────────────────────────────────────

function markerAt(kind: Marker, x: number, y: number, color: string): string {
  const a = r2(x);
  const b = r2(y);
  switch (kind) {
    case "circle":
      return `<circle cx="${a}" cy="${b}" r="3" fill="none" stroke="${color}" stroke-width="1.2"/>`;
    case "plus":
      return (
        `<path d="M ${r2(x - 3.5)} ${b} H ${r2(x + 3.5)} M ${a} ${r2(y - 3.5)} V ${r2(y + 3.5)}" ` +
        `stroke="${color}" stroke-width="1.2" fill="none"/>`
      );
    case "square":
      return `<rect x="${r2(x - 3)}" y="${r2(y - 3)}" width="6" height="6" fill="none" stroke="${color}" stroke-width="1.2"/>`;
    case "diamond":
      return (
        `<path d="M ${a} ${r2(y - 4)} L ${r2(x + 4)} ${b} L ${a} ${r2(y + 4)} L ${r2(x - 4)} ${b} Z" ` +
        `fill="none" stroke="${color}" stroke-width="1.2"/>`
      );
    case "cross":
      return (
        `<path d="M ${r2(x - 3)} ${r2(y - 3)} L ${r2(x + 3)} ${r2(y + 3)} ` +
        `M ${r2(x - 3)} ${r2(y + 3)} L ${r2(x + 3)} ${r2(y - 3)}" ` +
        `stroke="${color}" stroke-width="1.2" fill="none"/>`
      );
  }
}

// ── Chart assembly ─────────────────────────────────────────────────────────

export interface ChartSeries {
  style: SeriesStyle;
  points: CsvPoint[];
}

export interface ChartInput {
  title: string;
  subtitle: string;
  yLabel: string;
  yAxis: YAxisKind;
  series: ChartSeries[];
  /** Shade the ci_low..ci_high band behind each curve. */
  ci: boolean;
}

const clamp = (v: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, v));

/**
 * Points a polyline can actually carry: on a log axis a Monte-Carlo
 * estimate of exactly zero has no image, so those rows are left out of
 * the drawn curve (the CSV itself is untouched). A series with no
 * drawable point at all is reported instead of silently vanishing.
 */
function drawablePoints(s: ChartSeries, yAxis: YAxisKind): CsvPoint[] {
  const pts = yAxis === "log" ? s.points.filter((p) => p.value > 0) : s.points;
  if (pts.length === 0) {
    throw new CsvSchemaError(`series '${s.style.name}' has no positive values for a log axis`);
  }
  return pts;
}

export function buildChart(input: ChartInput): string {
  const kept = input.series.map((s) => drawablePoints(s, input.yAxis));

  // x domain across everything that will be drawn
  let xLo = Infinity;
  let xHi = -Infinity;
  for (const pts of kept) {
    for (const p of pts) {
      if (p.etaDb < xLo) xLo = p.etaDb;
      if (p.etaDb > xHi) xHi = p.etaDb;
    }
  }
  const sx = makeLinearScale(xLo, xHi, margin.left, margin.left + plotW);

  // y domain: probabilities live on [0,1]; outage curves get whole
  // decades down to the smallest positive estimate.
  let yMin = 1;
  let sy: Scale;
  let yTickSvg: string[] = [];
  if (input.yAxis === "log") {
    let minPos = 1;
    for (const pts of kept) {
      for (const p of pts) if (p.value < minPos) minPos = p.value;
    }
    let expLo = Math.floor(Math.log10(minPos) - 1e-12);
    if (expLo >= 0) expLo = -1;
    yMin = Math.pow(10, expLo);
    sy = makeLog10Scale(yMin, 1, margin.top + plotH, margin.top);
    for (let exp = expLo; exp <= 0; exp++) {
      const y = sy(Math.pow(10, exp));
      yTickSvg.push(
        `<line x1="${margin.left}" y1="${r2(y)}" x2="${margin.left + plotW}" y2="${r2(y)}" stroke="#eee" stroke-width="0.6"/>`,
        `<line x1="${margin.left - 4}" y1="${r2(y)}" x2="${margin.left}" y2="${r2(y)}" stroke="#333" stroke-width="0.6"/>`,
        `<text x="${margin.left - 7}" y="${r2(y + 3)}" text-anchor="end" font-size="10" fill="#444">${fmtDecade(exp)}</text>`,
      );
    }
  } else {
    yMin = 0;
    sy = makeLinearScale(0, 1, margin.top + plotH, margin.top);
    for (let i = 0; i <= 5; i++) {
      const v = i / 5;
      const y = sy(v);
      yTickSvg.push(
        `<line x1="${margin.left}" y1="${r2(y)}" x2="${margin.left + plotW}" y2="${r2(y)}" stroke="#eee" stroke-width="0.6"/>`,
        `<line x1="${margin.left - 4}" y1="${r2(y)}" x2="${margin.left}" y2="${r2(y)}" stroke="#333" stroke-width="0.6"/>`,
        `<text x="${margin.left - 7}" y="${r2(y + 3)}" text-anchor="end" font-size="10" fill="#444">${v.toFixed(1)}</text>`,
      );
    }
  }

  const out: string[] = [];
  const push = (s: string) => out.push(s);

  push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" ` +
      `font-family="Helvetica, Arial, sans-serif">`,
  );
  push(`<rect width="${W}" height="${H}" fill="#fff"/>`);

  // Title block
  push(
    `<text x="${margin.left}" y="18" font-size="13" font-weight="600" fill="#222">${esc(input.title)}</text>`,
  );
  push(`<text x="${margin.left}" y="32" font-size="9" fill="#888">${esc(input.subtitle)}</text>`);

  // Grid and y ticks
  out.push(...yTickSvg);

  // Confidence bands go under the curves.
  if (input.ci) {
    for (let i = 0; i < input.series.length; i++) {
      const s = input.series[i]!;
      const pts = kept[i]!;
      const upper = pts.map(
        (p) => `${r2(sx(p.etaDb))},${r2(sy(clamp(p.ciHigh, yMin, 1)))}`,
      );
      const lower = pts.map(
        (p) => `${r2(sx(p.etaDb))},${r2(sy(clamp(p.ciLow, input.yAxis === "log" ? yMin : 0, 1)))}`,
      );
      lower.reverse();
      push(
        `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${s.style.color}" fill-opacity="0.14" stroke="none"/>`,
      );
    }
  }

  // Curves
  for (let i = 0; i < input.series.length; i++) {
    const s = input.series[i]!;
    const pts = kept[i]!;
    const coords = pts.map((p) => `${r2(sx(p.etaDb))},${r2(sy(clamp(p.value, yMin, 1)))}`);
    const dash = s.style.dash ? ` stroke-dasharray="${s.style.dash}"` : "";
    push(
      `<polyline fill="none" stroke="${s.style.color}" stroke-width="1.5"${dash} points="${coords.join(" ")}"/>`,
    );
    if (s.style.marker) {
      for (const p of pts) {
        push(markerAt(s.style.marker, sx(p.etaDb), sy(clamp(p.value, yMin, 1)), s.style.color));
      }
    }
  }

  // Frame
  push(
    `<rect x="${margin.left}" y="${margin.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333" stroke-width="0.8"/>`,
  );

  // x ticks
  for (const v of etaTicks(xLo, xHi)) {
    const x = sx(v);
    push(
      `<line x1="${r2(x)}" y1="${margin.top + plotH}" x2="${r2(x)}" y2="${margin.top + plotH + 4}" stroke="#333" stroke-width="0.6"/>`,
    );
    push(
      `<text x="${r2(x)}" y="${margin.top + plotH + 16}" text-anchor="middle" font-size="10" fill="#444">${fmtEta(v)}</text>`,
    );
  }
  push(
    `<text x="${margin.left + plotW / 2}" y="${H - 10}" text-anchor="middle" font-size="11" fill="#333">eta (dB)</text>`,
  );
  push(
    `<text x="16" y="${margin.top + plotH / 2}" text-anchor="middle" font-size="11" fill="#333" ` +
      `transform="rotate(-90,16,${margin.top + plotH / 2})">${esc(input.yLabel)}</text>`,
  );

  // Legend, top right: every curve in this data set falls with eta, so
  // that corner stays clear.
  const labelLen = Math.max(...input.series.map((s) => s.style.name.length));
  const legW = labelLen * 6.2 + 46;
  const legX = margin.left + plotW - legW - 8;
  const legY = margin.top + 8;
  const rowH = 14;
  push(
    `<rect x="${r2(legX)}" y="${legY}" width="${r2(legW)}" height="${input.series.length * rowH + 8}" rx="3" fill="#fff" fill-opacity="0.9" stroke="#ccc" stroke-width="0.6"/>`,
  );
  for (let i = 0; i < input.series.length; i++) {
    const st = input.series[i]!.style;
    const y = legY + 10 + i * rowH;
    const dash = st.dash ? ` stroke-dasharray="${st.dash}"` : "";
    push(
      `<line x1="${r2(legX + 6)}" y1="${y}" x2="${r2(legX + 28)}" y2="${y}" stroke="${st.color}" stroke-width="1.5"${dash}/>`,
    );
    if (st.marker) push(markerAt(st.marker, legX + 17, y, st.color));
    push(
      `<text x="${r2(legX + 33)}" y="${y + 3}" font-size="10" fill="#333">${esc(st.name)}</text>`,
    );
  }

  push(`</svg>`);
  return out.join("\n") + "\n";
}
