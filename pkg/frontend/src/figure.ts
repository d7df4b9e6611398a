/**
 * Deterministic semilog-y BER figure rendering.
 *
 * Produces plain SVG text with no timestamps, random ids, or environment
 * dependence: identical inputs yield byte-identical output. One panel is
 * drawn per rate group; each panel overlays simulated BER curves
 * (lines + circle markers), truncated union bounds (dashed lines), and
 * decoding thresholds (vertical lines). Grid points with zero observed
 * errors are censored: drawn at the y-axis floor with an open
 * triangle-down marker and excluded from the connecting line.
 */

import { readBerCsv, readTubCsv, readThresholdJson } from "./formats.js";

export type InputKind = "ber" | "tub" | "threshold";

export interface InputSpec {
  kind: InputKind;
  path: string;
  label: string;
}

export interface PanelSpec {
  /** Panel caption, e.g. "rate 0.9". */
  title: string;
  inputs: InputSpec[];
}

export interface FigureSpec {
  panels: PanelSpec[];
  /** Horizontal axis range in dB, inclusive. */
  ebnoRange: [number, number];
  /** Vertical axis range [floor, ceiling]; both must be positive. */
  berRange: [number, number];
  /** Pixel size of a single panel (default 460x380). */
  panelWidth?: number;
  panelHeight?: number;
}

const MARGIN = { left: 62, right: 16, top: 34, bottom: 44 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

function fmt(x: number): string {
  // Fixed-precision coordinates keep the output byte-stable across platforms.
  return x.toFixed(2).replace(/^-0\.00$/, "0.00");
}

interface Scale {
  x(ebno: number): number;
  y(ber: number): number;
  x0: number;
  y0: number;
  plotW: number;
  plotH: number;
}

function makeScale(fs: FigureSpec, panelIndex: number, w: number, h: number): Scale {
  const [e0, e1] = fs.ebnoRange;
  const [bFloor, bCeil] = fs.berRange;
  const x0 = panelIndex * w + MARGIN.left;
  const y0 = MARGIN.top;
  const plotW = w - MARGIN.left - MARGIN.right;
  const plotH = h - MARGIN.top - MARGIN.bottom;
  const lf = Math.log10(bFloor);
  const lc = Math.log10(bCeil);
  return {
    x: (ebno) => x0 + ((ebno - e0) / (e1 - e0)) * plotW,
    y: (ber) => {
      const clamped = Math.min(Math.max(ber, bFloor), bCeil);
      return y0 + ((lc - Math.log10(clamped)) / (lc - lf)) * plotH;
    },
    x0,
    y0,
    plotW,
    plotH,
  };
}

function xTickStep(span: number): number {
  if (span <= 3) return 0.5;
  if (span <= 8) return 1;
  return 2;
}

function axes(fs: FigureSpec, s: Scale, title: string): string[] {
  const parts: string[] = [];
  const [e0, e1] = fs.ebnoRange;
  const [bFloor, bCeil] = fs.berRange;
  parts.push(
    `<rect x="${fmt(s.x0)}" y="${fmt(s.y0)}" width="${fmt(s.plotW)}" ` +
      `height="${fmt(s.plotH)}" fill="none" stroke="#000000" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(s.x0 + s.plotW / 2)}" y="${fmt(s.y0 - 12)}" ` +
      `text-anchor="middle" font-size="14">${title}</text>`,
  );
  const step = xTickStep(e1 - e0);
  for (let v = Math.ceil(e0 / step) * step; v <= e1 + 1e-9; v += step) {
    const px = s.x(v);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(s.y0 + s.plotH)}" x2="${fmt(px)}" ` +
        `y2="${fmt(s.y0 + s.plotH + 5)}" stroke="#000000" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(s.y0 + s.plotH + 18)}" text-anchor="middle" ` +
        `font-size="11">${v.toFixed(1)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(s.x0 + s.plotW / 2)}" y="${fmt(s.y0 + s.plotH + 36)}" ` +
      `text-anchor="middle" font-size="12">Eb/N0 (dB)</text>`,
  );
  for (let d = Math.ceil(Math.log10(bFloor)); d <= Math.log10(bCeil) + 1e-9; d += 1) {
    const py = s.y(10 ** d);
    parts.push(
      `<line x1="${fmt(s.x0)}" y1="${fmt(py)}" x2="${fmt(s.x0 + s.plotW)}" ` +
        `y2="${fmt(py)}" stroke="#dddddd" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text x="${fmt(s.x0 - 6)}" y="${fmt(py + 4)}" text-anchor="end" ` +
        `font-size="11">1e${d}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(s.x0 - 46)}" y="${fmt(s.y0 + s.plotH / 2)}" text-anchor="middle" ` +
      `font-size="12" transform="rotate(-90 ${fmt(s.x0 - 46)} ` +
      `${fmt(s.y0 + s.plotH / 2)})">BER</text>`,
  );
  return parts;
}

function berSeries(
  rows: { ebnoDb: number; ber: number }[],
  s: Scale,
  floor: number,
  color: string,
  cls: string,
): string[] {
  const parts: string[] = [];
  const live = rows.filter((r) => r.ber > 0);
  const censored = rows.filter((r) => r.ber <= 0);
  if (live.length > 0) {
    const pts = live.map((r) => `${fmt(s.x(r.ebnoDb))},${fmt(s.y(r.ber))}`).join(" ");
    parts.push(
      `<polyline class="${cls}" points="${pts}" fill="none" stroke="${color}" ` +
        `stroke-width="1.5"/>`,
    );
    for (const r of live) {
      parts.push(
        `<circle class="${cls}-marker" cx="${fmt(s.x(r.ebnoDb))}" ` +
          `cy="${fmt(s.y(r.ber))}" r="3.5" fill="${color}"/>`,
      );
    }
  }
  for (const r of censored) {
    const cx = s.x(r.ebnoDb);
    const cy = s.y(floor);
    parts.push(
      `<path class="${cls}-censored" d="M ${fmt(cx - 4)} ${fmt(cy - 4)} ` +
        `L ${fmt(cx + 4)} ${fmt(cy - 4)} L ${fmt(cx)} ${fmt(cy + 3)} Z" ` +
        `fill="none" stroke="${color}" stroke-width="1.5"/>`,
    );
  }
  return parts;
}

function tubSeries(
  rows: { ebnoDb: number; bound: number }[],
  s: Scale,
  color: string,
  cls: string,
): string[] {
  const pts = rows
    .filter((r) => r.bound > 0)
    .map((r) => `${fmt(s.x(r.ebnoDb))},${fmt(s.y(r.bound))}`)
    .join(" ");
  return [
    `<polyline class="${cls}" points="${pts}" fill="none" stroke="${color}" ` +
      `stroke-width="1.5" stroke-dasharray="6 4"/>`,
  ];
}

function thresholdLine(db: number, s: Scale, color: string, cls: string): string[] {
  const px = s.x(db);
  return [
    `<line class="${cls}" x1="${fmt(px)}" y1="${fmt(s.y0)}" x2="${fmt(px)}" ` +
      `y2="${fmt(s.y0 + s.plotH)}" stroke="${color}" stroke-width="1.2" ` +
      `stroke-dasharray="2 3"/>`,
  ];
}

function legend(s: Scale, entries: { label: string; color: string }[]): string[] {
  const parts: string[] = [];
  const lx = s.x0 + s.plotW - 8;
  let ly = s.y0 + 14;
  for (const e of entries) {
    parts.push(
      `<line x1="${fmt(lx - 150)}" y1="${fmt(ly - 4)}" x2="${fmt(lx - 126)}" ` +
        `y2="${fmt(ly - 4)}" stroke="${e.color}" stroke-width="1.5"/>`,
    );
    parts.push(
      `<text x="${fmt(lx - 120)}" y="${fmt(ly)}" font-size="11" ` +
        `text-anchor="start">${e.label}</text>`,
    );
    ly += 16;
  }
  return parts;
}

/** Render the figure described by `fs` and return the SVG document text. */
export function renderBerFigure(fs: FigureSpec): string {
  if (fs.panels.length === 0) {
    throw new Error("figure spec has no panels");
  }
  const [e0, e1] = fs.ebnoRange;
  const [bFloor, bCeil] = fs.berRange;
  if (!(e1 > e0) || !(bFloor > 0) || !(bCeil > bFloor)) {
    throw new Error("invalid axis ranges");
  }
  const w = fs.panelWidth ?? 460;
  const h = fs.panelHeight ?? 380;
  const width = w * fs.panels.length;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${h}" ` +
      `viewBox="0 0 ${width} ${h}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${h}" fill="#ffffff"/>`,
  ];
  fs.panels.forEach((panel, pi) => {
    const s = makeScale(fs, pi, w, h);
    parts.push(...axes(fs, s, panel.title));
    const legendEntries: { label: string; color: string }[] = [];
    panel.inputs.forEach((input, ii) => {
      const color = PALETTE[ii % PALETTE.length];
      const cls = `p${pi}-s${ii}`;
      if (input.kind === "ber") {
        parts.push(...berSeries(readBerCsv(input.path), s, bFloor, color, cls));
      } else if (input.kind === "tub") {
        parts.push(...tubSeries(readTubCsv(input.path), s, color, cls));
      } else if (input.kind === "threshold") {
        parts.push(
          ...thresholdLine(readThresholdJson(input.path).thresholdDb, s, color, cls),
        );
      } else {
        throw new Error(`unknown input kind "${input.kind}"`);
      }
      legendEntries.push({ label: input.label, color });
    });
    parts.push(...legend(s, legendEntries));
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/** Parse a FigureSpec from a JSON document, validating required fields. */
export function loadFigureSpec(doc: unknown): FigureSpec {
  const d = doc as Record<string, unknown>;
  if (!Array.isArray(d.panels) || !Array.isArray(d.ebnoRange) || !Array.isArray(d.berRange)) {
    throw new Error("figure spec requires panels, ebnoRange, berRange");
  }
  for (const panel of d.panels as PanelSpec[]) {
    if (typeof panel.title !== "string" || !Array.isArray(panel.inputs)) {
      throw new Error("each panel requires a title and an inputs list");
    }
    for (const input of panel.inputs) {
      if (!["ber", "tub", "threshold"].includes(input.kind)) {
        throw new Error(`unknown input kind "${input.kind}"`);
      }
      if (typeof input.path !== "string" || typeof input.label !== "string") {
        throw new Error("each input requires a path and a label");
      }
    }
  }
  return d as unknown as FigureSpec;
}
