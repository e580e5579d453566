/** String renderers for the matrix and scatter views.
 *
 * Every number shown comes verbatim from the service payload via
 * `String(value)`; the UI never recomputes a measure. Renderers return
 * markup strings so they run identically in the browser and under node
 * tests.
 */

import { forceLayout, graphSignature, hashString, type Point } from "./layout.js";
import { intervalColor, legendEntries, nodeColor } from "./palette.js";
import type {
  CellDoc,
  ColorMode,
  MatrixResultDoc,
  SampleDoc,
} from "./types.js";

const CELL_W = 240;
const CELL_H = 190;

export type LayoutCache = Map<string, Point[]>;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatValue(value: number | null): string {
  return value === null ? "·" : String(value);
}

function cellLayout(cell: CellDoc, cache?: LayoutCache): Point[] {
  const sig = `${cell.row},${cell.col}:${graphSignature(
    cell.graph.nodes.length, cell.graph.edges)}`;
  const hit = cache?.get(sig);
  if (hit) return hit;
  const pts = forceLayout(cell.graph.nodes.length, cell.graph.edges,
    hashString(sig));
  cache?.set(sig, pts);
  return pts;
}

function renderGraphSvg(cell: CellDoc, mode: ColorMode,
  cache?: LayoutCache): string {
  const { nodes, edges } = cell.graph;
  if (nodes.length === 0) {
    return `<div class="placeholder">no structure</div>`;
  }
  const pts = cellLayout(cell, cache);
  const px = (p: Point) => (8 + p.x * (CELL_W - 16)).toFixed(1);
  const py = (p: Point) => (8 + p.y * (CELL_H - 16)).toFixed(1);
  const vector = cell.vectors.stitched ?? cell.vectors.base;
  const parts: string[] = [];
  for (const [a, b] of edges) {
    const pa = pts[a]!;
    const pb = pts[b]!;
    parts.push(
      `<line x1="${px(pa)}" y1="${py(pa)}" x2="${px(pb)}" y2="${py(pb)}"/>`);
  }
  const maxSize = Math.max(...nodes.map((n) => n.size), 1);
  for (const node of nodes) {
    const p = pts[node.id]!;
    const r = (3 + 5 * Math.sqrt(node.size / maxSize)).toFixed(1);
    const fill = nodeColor(mode, node.interval, vector);
    parts.push(
      `<circle cx="${px(p)}" cy="${py(p)}" r="${r}" fill="${fill}" ` +
      `data-node="${node.id}" data-interval="${node.interval}">` +
      `<title>node ${node.id}: interval ${node.interval}, ` +
      `${node.size} points</title></circle>`);
  }
  return `<svg viewBox="0 0 ${CELL_W} ${CELL_H}" class="graph">` +
    `<g class="edges">${parts.join("")}</g></svg>`;
}

/** Rectangle bars, one per interval, labeled with the exact payload value. */
export function renderBars(values: number[], cssClass: string): string {
  const finite = values.filter((v) => Number.isFinite(v));
  const maxAbs = Math.max(...finite.map((v) => Math.abs(v)), 1e-12);
  const bars = values.map((v, i) => {
    const h = Math.round((Math.abs(v) / maxAbs) * 48);
    const sign = v < 0 ? " negative" : "";
    return (
      `<div class="bar${sign}" data-interval="${i}">` +
      `<div class="bar-rect" style="height:${h}px;` +
      `background:${intervalColor(i)}"></div>` +
      `<span class="bar-value">${escapeHtml(String(v))}</span></div>`
    );
  });
  return `<div class="bars ${cssClass}">${bars.join("")}</div>`;
}

function renderCell(cell: CellDoc, variables: string[], mode: ColorMode,
  cache?: LayoutCache): string {
  const isDiag = cell.row === cell.col;
  const rowVar = variables[cell.row] ?? `v${cell.row}`;
  const colVar = variables[cell.col] ?? `v${cell.col}`;
  const title = isDiag ? rowVar : `${rowVar} + ${colVar}`;
  const parts = [
    `<div class="cell ${isDiag ? "diagonal" : "off-diagonal"}" ` +
    `data-row="${cell.row}" data-col="${cell.col}">`,
    `<div class="cell-title">${escapeHtml(title)}</div>`,
    renderGraphSvg(cell, mode, cache),
  ];
  const shown = isDiag ? cell.vectors.base : cell.vectors.stitched;
  if (shown) parts.push(renderBars(shown, isDiag ? "base" : "stitched"));
  if (!isDiag && cell.vectors.diff) {
    parts.push(renderBars(cell.vectors.diff, "diff"));
  }
  if (!isDiag && cell.global.diff !== null) {
    parts.push(
      `<div class="global-diff">global Δ = ` +
      `<span class="global-diff-value">` +
      `${escapeHtml(formatValue(cell.global.diff))}</span></div>`);
  }
  parts.push("</div>");
  return parts.join("");
}

export function renderLegend(nIntervals: number): string {
  const entries = legendEntries(nIntervals)
    .map(({ interval, color }) =>
      `<span class="legend-entry"><span class="legend-swatch" ` +
      `style="background:${color}"></span>${interval + 1}</span>`)
    .join("");
  return `<div class="legend">intervals: ${entries}</div>`;
}

/** The k x k mapper-graph matrix. */
export function renderMatrix(result: MatrixResultDoc, mode: ColorMode,
  cache?: LayoutCache): string {
  const variables = result.spec.variables;
  const k = variables.length;
  const cells = [...result.cells].sort((a, b) =>
    a.row - b.row || a.col - b.col);
  const maxIntervals = Math.max(
    ...cells.map((c) => (c.vectors.base ?? c.vectors.stitched ?? []).length),
    1);
  const body = cells.map((c) => renderCell(c, variables, mode, cache)).join("");
  return (
    `<div class="matrix" data-k="${k}" ` +
    `style="grid-template-columns:repeat(${k},1fr)">${body}</div>` +
    renderLegend(maxIntervals)
  );
}

/** Pairwise scatter-plot matrix aligned cell-for-cell with the mapper matrix. */
export function renderScatterMatrix(sample: SampleDoc): string {
  const vars = sample.variables;
  const k = vars.length;
  const size = 120;
  const cells: string[] = [];
  for (let row = 0; row < k; row++) {
    for (let col = 0; col < k; col++) {
      const xName = vars[col]!;
      const yName = vars[row]!;
      if (row === col) {
        cells.push(
          `<div class="scatter-cell scatter-label">` +
          `${escapeHtml(xName)}</div>`);
        continue;
      }
      const xs = sample.values[xName] ?? [];
      const ys = sample.values[yName] ?? [];
      const n = Math.min(xs.length, ys.length);
      const xLo = Math.min(...xs);
      const xHi = Math.max(...xs);
      const yLo = Math.min(...ys);
      const yHi = Math.max(...ys);
      const xSpan = xHi - xLo || 1; // constant column renders as a strip
      const ySpan = yHi - yLo || 1;
      const dots: string[] = [];
      for (let i = 0; i < n; i++) {
        const cx = (4 + ((xs[i]! - xLo) / xSpan) * (size - 8)).toFixed(1);
        const cy = (size - 4 - ((ys[i]! - yLo) / ySpan) * (size - 8)).toFixed(1);
        dots.push(`<circle cx="${cx}" cy="${cy}" r="1.4"/>`);
      }
      cells.push(
        `<div class="scatter-cell" data-x="${escapeHtml(xName)}" ` +
        `data-y="${escapeHtml(yName)}">` +
        `<svg viewBox="0 0 ${size} ${size}">${dots.join("")}</svg></div>`);
    }
  }
  return (
    `<div class="scatter-matrix" data-k="${k}" ` +
    `style="grid-template-columns:repeat(${k},1fr)">${cells.join("")}</div>`
  );
}

export function renderErrorBanner(message: string): string {
  return (
    `<div class="error-banner">` +
    `<span class="error-message">${escapeHtml(message)}</span>` +
    `<button class="retry" data-action="retry">retry</button></div>`
  );
}
