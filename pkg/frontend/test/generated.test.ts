/**
 * Renders the two-panel figure from artifacts produced by an actual
 * simulation run (scripts/make_figure_artifacts.py): one panel per rate
 * group, each with two BER curves, a union bound, and a threshold line.
 */

import { describe, expect, it } from "vitest";
import { readFileSync } from "fs";
import { join } from "path";
import { loadFigureSpec, renderBerFigure, FigureSpec } from "../src/figure.js";

const GEN = join(__dirname, "fixtures", "generated");

function loadSpec(): FigureSpec {
  const fs_ = loadFigureSpec(JSON.parse(readFileSync(join(GEN, "figure.json"), "utf8")));
  for (const panel of fs_.panels) {
    for (const input of panel.inputs) {
      input.path = join(GEN, input.path);
    }
  }
  return fs_;
}

describe("two-panel figure from simulation artifacts", () => {
  it("renders both rate panels with all declared elements", () => {
    const svg = renderBerFigure(loadSpec());
    expect(svg).toContain(">rate 0.9</text>");
    expect(svg).toContain(">rate 0.75</text>");
    // four series per panel
    for (const p of [0, 1]) {
      for (const s of [0, 1, 2, 3]) {
        expect(svg).toContain(`class="p${p}-s${s}"`);
      }
    }
    // dashed union bounds and vertical thresholds are present
    expect((svg.match(/stroke-dasharray="6 4"/g) ?? []).length).toBe(2);
    expect((svg.match(/stroke-dasharray="2 3"/g) ?? []).length).toBe(2);
  });

  it("marks zero-error grid points as censored floor markers", () => {
    const svg = renderBerFigure(loadSpec());
    expect((svg.match(/-censored"/g) ?? []).length).toBeGreaterThan(0);
  });

  it("produces byte-identical output across renders", () => {
    expect(renderBerFigure(loadSpec())).toBe(renderBerFigure(loadSpec()));
  });
});
