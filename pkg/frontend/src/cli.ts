/**
 * Figure rendering entry point.
 *
 * Usage:
 *   node dist/cli.js <figure-spec.json> [-o out.svg]
 *
 * The figure spec is a JSON document:
 *   {
 *     "panels": [{"title": "rate 0.9",
 *                 "inputs": [{"kind": "ber", "path": "ber.csv", "label": "C1"},
 *                            {"kind": "tub", "path": "tub.csv", "label": "TUB"},
 *                            {"kind": "threshold", "path": "th.json", "label": "th"}]}],
 *     "ebnoRange": [2.0, 5.0],
 *     "berRange": [1e-7, 1.0],
 *     "output": "figure.svg"
 *   }
 *
 * Input paths are resolved relative to the spec file's directory. The -o
 * flag overrides the spec's "output" path.
 */

import { readFileSync, writeFileSync } from "fs";
import path from "path";
import { loadFigureSpec, renderBerFigure, FigureSpec } from "./figure.js";

export function main(argv: string[]): number {
  const args = argv.slice();
  let outOverride: string | null = null;
  const oi = args.indexOf("-o");
  if (oi >= 0) {
    outOverride = args[oi + 1];
    args.splice(oi, 2);
  }
  if (args.length !== 1) {
    process.stderr.write("usage: cli.js <figure-spec.json> [-o out.svg]\n");
    return 2;
  }
  const specPath = args[0];
  let fs_: FigureSpec & { output?: string };
  try {
    fs_ = loadFigureSpec(JSON.parse(readFileSync(specPath, "utf8")));
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  const base = path.dirname(path.resolve(specPath));
  for (const panel of fs_.panels) {
    for (const input of panel.inputs) {
      input.path = path.resolve(base, input.path);
    }
  }
  const outPath = outOverride ?? (fs_ as { output?: string }).output;
  if (!outPath) {
    process.stderr.write("error: no output path (spec \"output\" or -o flag)\n");
    return 2;
  }
  let svg: string;
  try {
    svg = renderBerFigure(fs_);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  writeFileSync(path.resolve(base, outPath), svg);
  return 0;
}

if (process.argv[1] && path.basename(process.argv[1]) === "cli.js") {
  process.exit(main(process.argv.slice(2)));
}
