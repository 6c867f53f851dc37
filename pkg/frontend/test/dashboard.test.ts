// Snapshot tests against a captured server response for the describe
// intention on the census cube. The client renders what the server sent;
// nothing here recomputes scores or highlights.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { buildGrid, pivot, renderGrid } from "../src/grid.js";
import { componentsOfCell, inspectComponent } from "../src/overlay.js";
import type { EnhancedCubeDoc } from "../src/types.js";

const fixturePath = fileURLToPath(
  new URL("./fixtures/describe.json", import.meta.url),
);
const doc: EnhancedCubeDoc = JSON.parse(readFileSync(fixturePath, "utf8"));

const grid = () => buildGrid(doc, "work_class", "education");

describe("describe intention grid", () => {
  it("lays out a 6x4 grid of work class by education", () => {
    const g = grid();
    expect(g.rows).toEqual([
      "Federal-gov",
      "Local-gov",
      "Private",
      "Self-emp-inc",
      "Self-emp-not-inc",
      "State-gov",
    ]);
    expect(g.cols).toEqual(["Assoc", "Post-grad", "Some-college", "University"]);
    expect(g.values).toHaveLength(6);
    expect(g.values.every((row) => row.length === 4)).toBe(true);
  });

  it("copies measure values verbatim from the document", () => {
    const g = grid();
    // (Self-emp-inc, Post-grad) and (State-gov, Some-college)
    expect(g.values[3][1]).toBe(53.05);
    expect(g.values[5][2]).toBe(34.73);
    expect(g.values.flat().every((v) => v !== null)).toBe(true);
  });

  it("marks exactly the two highlighted cells amber", () => {
    const g = grid();
    const amber: [string, string][] = [];
    g.rows.forEach((row, r) =>
      g.cols.forEach((col, c) => {
        if (g.highlightMask[r][c]) amber.push([row, col]);
      }),
    );
    expect(amber).toEqual([
      ["Self-emp-inc", "Post-grad"],
      ["State-gov", "Some-college"],
    ]);
    const html = renderGrid(g);
    expect(html.match(/class="amber"/g)).toHaveLength(2);
  });

  it("pivot swaps axes and is an involution", () => {
    const g = grid();
    const p = pivot(g);
    expect(p.rows).toEqual(g.cols);
    expect(p.values[1][3]).toBe(g.values[3][1]);
    expect(p.highlightMask[1][3]).toBe(true);
    expect(pivot(p)).toEqual(g);
  });
});

describe("component overlays", () => {
  it("Top-5 overlays five cells", () => {
    const cells = inspectComponent(doc, "topk", "Top-5");
    expect(cells).toHaveLength(5);
    expect(cells).toContainEqual(["Post-grad", "Self-emp-inc"]);
  });

  it("the winning component overlay matches the highlight core", () => {
    const cells = inspectComponent(doc, "outliers", "Outliers");
    expect(cells).toEqual(doc.highlight!.core_cell_coordinates);
  });

  it("clicking (Post-grad, Self-emp-inc) lists both components", () => {
    const refs = componentsOfCell(doc, ["Post-grad", "Self-emp-inc"]);
    expect(refs.map((r) => r.component).sort()).toEqual(["Outliers", "Top-5"]);
    const top5 = refs.find((r) => r.component === "Top-5")!;
    expect(top5.model).toBe("topk");
    expect(top5.score).toBe(doc.highlight!.per_component_scores["Top-5"]);
  });

  it("rejects numeric components and unknown cells", () => {
    expect(() => inspectComponent(doc, "topk", "Rank")).toThrow(
      /not a cell subset/,
    );
    expect(() => componentsOfCell(doc, ["Nope", "Nada"])).toThrow(/no cell/);
  });
});
