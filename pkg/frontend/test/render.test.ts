import { describe, expect, it } from "vitest";

import { renderBars, renderMatrix, renderScatterMatrix } from "../src/render.js";
import { INTERVAL_PALETTE, intervalColor } from "../src/palette.js";
import type { CellDoc, MatrixResultDoc, SampleDoc } from "../src/types.js";
import fixture from "./fixtures/iris_matrix.json";

const iris = fixture as unknown as MatrixResultDoc;

function cellHtml(html: string, row: number, col: number): string {
  const marker = `data-row="${row}" data-col="${col}"`;
  const start = html.indexOf(marker);
  expect(start).toBeGreaterThan(-1);
  const end = html.indexOf("data-row=", start + marker.length);
  return end === -1 ? html.slice(start) : html.slice(start, end);
}

function barValues(html: string, cssClass: string): string[] {
  const block = html.match(
    new RegExp(`<div class="bars ${cssClass}">([\\s\\S]*?)</div></div>`, ""));
  const source = block ? block[0] : html;
  return [...source.matchAll(/<span class="bar-value">([^<]*)<\/span>/g)]
    .map((m) => m[1]!);
}

describe("matrix rendering from the canned Iris fixture", () => {
  const html = renderMatrix(iris, "interval");

  it("renders a 4x4 grid with all 16 cells", () => {
    expect(iris.spec.variables).toHaveLength(4);
    expect(html).toContain('data-k="4"');
    for (let r = 0; r < 4; r++) {
      for (let c = 0; c < 4; c++) {
        expect(html).toContain(`data-row="${r}" data-col="${c}"`);
      }
    }
  });

  it("diagonal bars match the payload base vectors digit for digit", () => {
    for (let i = 0; i < 4; i++) {
      const cell = iris.cells.find((c) => c.row === i && c.col === i)!;
      const shown = barValues(cellHtml(html, i, i), "base");
      expect(shown).toEqual(cell.vectors.base!.map((v) => String(v)));
    }
  });

  it("off-diagonal bars match stitched and diff vectors digit for digit", () => {
    for (const cell of iris.cells) {
      if (cell.row === cell.col) continue;
      const chunk = cellHtml(html, cell.row, cell.col);
      expect(barValues(chunk, "stitched")).toEqual(
        cell.vectors.stitched!.map((v) => String(v)));
      expect(barValues(chunk, "diff")).toEqual(
        cell.vectors.diff!.map((v) => String(v)));
    }
  });

  it("off-diagonal cells show the global diff scalar verbatim", () => {
    for (const cell of iris.cells) {
      if (cell.row === cell.col) continue;
      const chunk = cellHtml(html, cell.row, cell.col);
      const match = chunk.match(
        /<span class="global-diff-value">([^<]*)<\/span>/);
      expect(match?.[1]).toBe(String(cell.global.diff));
    }
  });

  it("colors nodes by interval with the fixed 7-color cycle", () => {
    const first = INTERVAL_PALETTE[0];
    expect(html).toContain(`fill="${first}"`);
    expect(intervalColor(7)).toBe(intervalColor(0));
    expect(html).toContain('class="legend"');
  });

  it("is deterministic: re-rendering produces identical markup", () => {
    expect(renderMatrix(iris, "interval")).toBe(html);
  });

  it("measure color mode re-renders without moving nodes", () => {
    const recolored = renderMatrix(iris, "measure");
    const coords = (s: string) =>
      [...s.matchAll(/<circle cx="([\d.]+)" cy="([\d.]+)"/g)]
        .map((m) => `${m[1]},${m[2]}`);
    expect(coords(recolored)).toEqual(coords(html));
    expect(recolored).not.toBe(html);
  });
});

describe("edge cases", () => {
  it("renders an empty cell as a placeholder", () => {
    const empty: CellDoc = {
      row: 0, col: 1,
      graph: { nodes: [], edges: [], simplices: [] },
      vectors: { base: null, stitched: [0, 0], diff: [0, 0] },
      global: { base: 0, stitched: 0, diff: 0 },
    };
    const doc: MatrixResultDoc = {
      version: "1.0",
      spec: { variables: ["a", "b"], measure: "lhd0" },
      cells: [empty],
    };
    const html = renderMatrix(doc, "interval");
    expect(html).toContain("no structure");
  });

  it("bars render negative entries distinctly", () => {
    const html = renderBars([1, -1, 0], "diff");
    expect(html).toContain('class="bar negative"');
    expect(html.match(/bar-value/g)).toHaveLength(3);
  });
});

describe("scatter matrix", () => {
  const sample: SampleDoc = {
    dataset: "t",
    variables: ["a", "b", "c"],
    values: {
      a: [0, 1, 2, 3],
      b: [1, 0, 2, 1],
      c: [5, 5, 5, 5], // constant column
    },
  };

  it("renders a k x k grid aligned with the variables", () => {
    const html = renderScatterMatrix(sample);
    expect(html).toContain('data-k="3"');
    expect(html.match(/scatter-label/g)).toHaveLength(3);
    expect(html.match(/<svg /g)).toHaveLength(6);
    expect(html).toContain('data-x="b" data-y="a"');
  });

  it("survives a constant column", () => {
    const html = renderScatterMatrix(sample);
    expect(html).toContain('data-x="c"');
    expect(html).not.toContain("NaN");
  });
});
