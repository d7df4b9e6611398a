import { describe, expect, it } from "vitest";
import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { readBerCsv, readThresholdJson, readTubCsv } from "../src/formats.js";

const FIX = join(__dirname, "fixtures");

describe("readBerCsv", () => {
  it("parses all rows with numeric fields", () => {
    const rows = readBerCsv(join(FIX, "ber_a.csv"));
    expect(rows).toHaveLength(5);
    expect(rows[0].ebnoDb).toBe(2.0);
    expect(rows[0].rate).toBe(0.4);
    expect(rows[2].bitErrors).toBe(230);
    expect(rows[4].ber).toBe(0);
  });

  it("rejects a wrong header", () => {
    const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "snr,ber\n1.0,0.1\n");
    expect(() => readBerCsv(bad)).toThrow(/unexpected header/);
  });

  it("rejects non-numeric cells", () => {
    const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(
      bad,
      "ebno_db,rate,frames,bit_errors,frame_errors,ber,fer,seed\n" +
        "x,0.4,1,1,1,0.1,0.1,0\n",
    );
    expect(() => readBerCsv(bad)).toThrow(/non-numeric/);
  });

  it("throws for a missing file", () => {
    expect(() => readBerCsv(join(FIX, "nope.csv"))).toThrow();
  });
});

describe("readTubCsv", () => {
  it("parses bound rows", () => {
    const rows = readTubCsv(join(FIX, "tub_a.csv"));
    expect(rows).toHaveLength(5);
    expect(rows[0]).toEqual({ ebnoDb: 2.0, bound: 0.031 });
  });

  it("rejects the ber header", () => {
    expect(() => readTubCsv(join(FIX, "ber_a.csv"))).toThrow(/unexpected header/);
  });
});

describe("readThresholdJson", () => {
  it("parses the document", () => {
    const doc = readThresholdJson(join(FIX, "threshold.json"));
    expect(doc.thresholdDb).toBeCloseTo(1.17);
    expect(doc.method).toBe("ga");
  });

  it("rejects a document with missing keys", () => {
    const dir = mkdtempSync(join(tmpdir(), "plotkit-"));
    const bad = join(dir, "bad.json");
    writeFileSync(bad, JSON.stringify({ dv: 3 }));
    expect(() => readThresholdJson(bad)).toThrow(/missing key/);
  });
});
