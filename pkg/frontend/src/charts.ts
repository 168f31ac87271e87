/** Chart geometry builders and SVG rendering.
 *
 * Model builders are pure (unit-testable without a DOM): they map API
 * numbers to plot coordinates without transforming the values themselves.
 * Objective-space dispatch: M=2 scatter, M=3 static axonometric
 * projection, M>3 parallel coordinates. Convergence is always value vs
 * function evaluations.
 */

import type { HistoryPoint } from "./types.js";

export interface ScatterPoint {
  x: number;
  y: number;
  index: number;
}

export interface ScatterModel {
  kind: "scatter";
  points: ScatterPoint[];
  overlay: { x: number; y: number }[];
  highlight: number | null;
}

export interface Projection3dModel {
  kind: "projection3d";
  points: (ScatterPoint & { depth: number })[];
  highlight: number | null;
}

export interface ParallelModel {
  kind: "parallel";
  axes: { min: number; max: number }[];
  /** per row: one display coordinate in [0, 1] per axis */
  lines: number[][];
  highlight: number | null;
}

export type FrontModel = ScatterModel | Projection3dModel | ParallelModel;

/** Static axonometric projection for three objectives. */
export function project3d(row: number[]): { x: number; y: number; depth: number } {
  const [f1, f2, f3] = row;
  return {
    x: f1 + 0.5 * f3,
    y: f2 + 0.35 * f3,
    depth: f3,
  };
}

export function frontModel(front: number[][], highlight: number | null = null, overlay: number[][] = []): FrontModel {
  const m = front.length > 0 ? front[0].length : overlay.length > 0 ? overlay[0].length : 2;
  if (m === 2) {
    return {
      kind: "scatter",
      points: front.map((row, index) => ({ x: row[0], y: row[1], index })),
      overlay: overlay.map((row) => ({ x: row[0], y: row[1] })),
      highlight,
    };
  }
  if (m === 3) {
    return {
      kind: "projection3d",
      points: front.map((row, index) => ({ ...project3d(row), index })),
      highlight,
    };
  }
  const axes = Array.from({ length: m }, (_, j) => {
    const column = front.map((row) => row[j]);
    return { min: Math.min(...column), max: Math.max(...column) };
  });
  return {
    kind: "parallel",
    axes,
    lines: front.map((row) =>
      row.map((v, j) => {
        const { min, max } = axes[j];
        return max > min ? (v - min) / (max - min) : 0.5;
      }),
    ),
    highlight,
  };
}

export interface ConvergenceSeries {
  metricId: string;
  /** finite points only; null (undefined metric) values are skipped */
  points: { fe: number; value: number }[];
}

export function convergenceModel(
  histories: Record<string, HistoryPoint[]>,
  metricId: string,
): ConvergenceSeries {
  const raw = histories[metricId] ?? [];
  const points: { fe: number; value: number }[] = [];
  for (const [fe, value] of raw) {
    if (value !== null && Number.isFinite(value)) {
      points.push({ fe, value });
    }
  }
  return { metricId, points };
}

// ---------------------------------------------------------------------------
// SVG rendering (thin, no logic beyond coordinate mapping)

const NS = "http://www.w3.org/2000/svg";

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

interface Range {
  lo: number;
  hi: number;
}

function rangeOf(values: number[]): Range {
  if (values.length === 0) return { lo: 0, hi: 1 };
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const pad = (hi - lo) * 0.06;
  return { lo: lo - pad, hi: hi + pad };
}

function scale(value: number, range: Range, size: number, flip = false): number {
  const t = (value - range.lo) / (range.hi - range.lo);
  return flip ? size - t * size : t * size;
}

export function renderFront(model: FrontModel, width = 420, height = 300): SVGSVGElement {
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}`, class: "chart" });
  if (model.kind === "parallel") {
    const m = model.axes.length;
    const step = width / Math.max(m - 1, 1);
    for (let j = 0; j < m; j++) {
      svg.appendChild(
        svgElement("line", {
          x1: j * step, y1: 8, x2: j * step, y2: height - 8,
          stroke: "#bbb", "stroke-width": 1,
        }),
      );
    }
    model.lines.forEach((line, index) => {
      const d = line
        .map((v, j) => `${j === 0 ? "M" : "L"}${j * step},${8 + (1 - v) * (height - 16)}`)
        .join(" ");
      svg.appendChild(
        svgElement("path", {
          d,
          fill: "none",
          stroke: index === model.highlight ? "#d04f00" : "#3572b0",
          "stroke-width": index === model.highlight ? 2.5 : 1,
          opacity: index === model.highlight ? 1 : 0.55,
        }),
      );
    });
    return svg;
  }
  const xs = model.points.map((p) => p.x);
  const ys = model.points.map((p) => p.y);
  if (model.kind === "scatter") {
    xs.push(...model.overlay.map((p) => p.x));
    ys.push(...model.overlay.map((p) => p.y));
  }
  const rx = rangeOf(xs);
  const ry = rangeOf(ys);
  if (model.kind === "scatter" && model.overlay.length > 0) {
    const d = model.overlay
      .map((p, i) => `${i === 0 ? "M" : "L"}${scale(p.x, rx, width)},${scale(p.y, ry, height, true)}`)
      .join(" ");
    svg.appendChild(svgElement("path", { d, fill: "none", stroke: "#9aa5ad", "stroke-width": 1 }));
  }
  for (const point of model.points) {
    const isHighlight = point.index === model.highlight;
    svg.appendChild(
      svgElement("circle", {
        cx: scale(point.x, rx, width),
        cy: scale(point.y, ry, height, true),
        r: isHighlight ? 6 : 3,
        fill: isHighlight ? "#d04f00" : "#3572b0",
        opacity: model.kind === "projection3d" ? 0.75 : 0.9,
        class: isHighlight ? "pt highlight" : "pt",
      }),
    );
  }
  return svg;
}

export function renderConvergence(
  series: ConvergenceSeries[],
  width = 420,
  height = 220,
): SVGSVGElement {
  const svg = svgElement("svg", { width, height, viewBox: `0 0 ${width} ${height}`, class: "chart" });
  const fes = series.flatMap((s) => s.points.map((p) => p.fe));
  const values = series.flatMap((s) => s.points.map((p) => p.value));
  const rx = rangeOf(fes);
  const ry = rangeOf(values);
  const palette = ["#3572b0", "#d04f00", "#2c8c4b", "#8456b0"];
  series.forEach((s, k) => {
    if (s.points.length === 0) return;
    const d = s.points
      .map(
        (p, i) =>
          `${i === 0 ? "M" : "L"}${scale(p.fe, rx, width)},${scale(p.value, ry, height, true)}`,
      )
      .join(" ");
    svg.appendChild(
      svgElement("path", {
        d,
        fill: "none",
        stroke: palette[k % palette.length],
        "stroke-width": 1.5,
        "data-metric": s.metricId,
      }),
    );
  });
  return svg;
}
