/**
 * Parsers for the simulation toolkit's on-disk artifacts.
 *
 * Three formats are consumed, all produced by the `acldpc` CLI:
 *
 *   ber.csv        header: ebno_db,rate,frames,bit_errors,frame_errors,ber,fer,seed
 *   tub.csv        header: ebno_db,bound
 *   threshold.json keys:   dv, dc, method, threshold_db, tol
 *
 * Every parser validates the header/keys and throws on mismatch so that a
 * stale or foreign file fails loudly instead of producing an empty plot.
 */

import { readFileSync } from "fs";

export interface BerRow {
  ebnoDb: number;
  rate: number;
  frames: number;
  bitErrors: number;
  frameErrors: number;
  ber: number;
  fer: number;
  seed: number;
}

export interface TubRow {
  ebnoDb: number;
  bound: number;
}

export interface ThresholdDoc {
  dv: number;
  dc: number;
  method: string;
  thresholdDb: number;
  tol: number;
}

const BER_HEADER = [
  "ebno_db",
  "rate",
  "frames",
  "bit_errors",
  "frame_errors",
  "ber",
  "fer",
  "seed",
];

const TUB_HEADER = ["ebno_db", "bound"];

function parseCsv(path: string, expectedHeader: string[]): Record<string, number>[] {
  // The toolkit's CSVs are plain comma-separated numbers with no quoting,
  // so a strict line splitter is all the parsing needed.
  const lines = readFileSync(path, "utf8").trim().split(/\r?\n/);
  const fields = lines[0].split(",");
  if (fields.join(",") !== expectedHeader.join(",")) {
    throw new Error(
      `${path}: unexpected header "${fields.join(",")}" ` +
        `(expected "${expectedHeader.join(",")}")`,
    );
  }
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== expectedHeader.length) {
      throw new Error(`${path}: row ${i + 1}: expected ${expectedHeader.length} cells`);
    }
    const out: Record<string, number> = {};
    expectedHeader.forEach((field, j) => {
      const value = Number(cells[j]);
      if (!Number.isFinite(value)) {
        throw new Error(`${path}: row ${i + 1}: non-numeric ${field}=${cells[j]}`);
      }
      out[field] = value;
    });
    return out;
  });
}

export function readBerCsv(path: string): BerRow[] {
  return parseCsv(path, BER_HEADER).map((r) => ({
    ebnoDb: r.ebno_db,
    rate: r.rate,
    frames: r.frames,
    bitErrors: r.bit_errors,
    frameErrors: r.frame_errors,
    ber: r.ber,
    fer: r.fer,
    seed: r.seed,
  }));
}

export function readTubCsv(path: string): TubRow[] {
  return parseCsv(path, TUB_HEADER).map((r) => ({
    ebnoDb: r.ebno_db,
    bound: r.bound,
  }));
}

export function readThresholdJson(path: string): ThresholdDoc {
  const doc = JSON.parse(readFileSync(path, "utf8"));
  for (const key of ["dv", "dc", "method", "threshold_db", "tol"]) {
    if (!(key in doc)) {
      throw new Error(`${path}: missing key "${key}" in threshold document`);
    }
  }
  return {
    dv: doc.dv,
    dc: doc.dc,
    method: doc.method,
    thresholdDb: doc.threshold_db,
    tol: doc.tol,
  };
}
