import { describe, expect, it } from "vitest";

import {
  CSV_COLUMNS,
  EmptyCsvError,
  MissingColumnError,
  num,
  parseCsv,
  requireNum,
} from "../src/csv.js";

const SMALL = [
  "strategy,fraction,time,trace_distance",
  "shallow,,0.01,3.4e-05",
  "fractional,0.5,0.01,1.2e-05",
  "",
].join("\n");

describe("parseCsv", () => {
  it("reads rows keyed by header name", () => {
    const rows = parseCsv(SMALL, ["strategy", "trace_distance"]);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({
      strategy: "shallow",
      fraction: "",
      time: "0.01",
      trace_distance: "3.4e-05",
    });
    expect(rows[1]?.["fraction"]).toBe("0.5");
  });

  it("tolerates trailing newlines and blank lines", () => {
    const rows = parseCsv(`${SMALL}\n\n`, ["strategy"]);
    expect(rows).toHaveLength(2);
  });

  it("accepts headers with more columns than required", () => {
    expect(() => parseCsv(SMALL, ["time"])).not.toThrow();
  });

  it("names the missing column", () => {
    let caught: unknown;
    try {
      parseCsv(SMALL, ["strategy", "mag_exact"]);
    } catch (error) {
      caught = error;
    }
    expect(caught).toBeInstanceOf(MissingColumnError);
    const error = caught as MissingColumnError;
    expect(error.column).toBe("mag_exact");
    expect(error.message).toBe('CSV is missing required column "mag_exact"');
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("strategy,fraction\n", ["strategy"])).toThrow(
      EmptyCsvError,
    );
  });

  it("rejects an entirely empty file", () => {
    expect(() => parseCsv("", [])).toThrow(EmptyCsvError);
    expect(() => parseCsv("\n\n", [])).toThrow("CSV contains no data rows");
  });

  it("pads short data lines with empty cells", () => {
    const rows = parseCsv("strategy,fraction\nshallow\n", ["strategy"]);
    expect(rows[0]).toEqual({ strategy: "shallow", fraction: "" });
  });
});

describe("schema", () => {
  it("matches the producer's 17-column layout", () => {
    expect(CSV_COLUMNS).toHaveLength(17);
    expect(CSV_COLUMNS[0]).toBe("experiment");
    expect(CSV_COLUMNS[16]).toBe("bures");
    expect(CSV_COLUMNS).toContain("trace_distance");
    expect(CSV_COLUMNS).toContain("mag_sim");
  });
});

describe("numeric accessors", () => {
  const rows = parseCsv(SMALL, []);

  it("parses numeric cells", () => {
    expect(num(rows[0] ?? {}, "trace_distance")).toBeCloseTo(3.4e-5, 12);
    expect(requireNum(rows[1] ?? {}, "fraction")).toBe(0.5);
  });

  it("maps empty cells to null", () => {
    expect(num(rows[0] ?? {}, "fraction")).toBeNull();
  });

  it("requireNum rejects empty cells", () => {
    expect(() => requireNum(rows[0] ?? {}, "fraction")).toThrow(
      'column "fraction" is unexpectedly empty',
    );
  });

  it("rejects non-numeric cells by column name", () => {
    const bad = parseCsv("trace_distance\nnot-a-number\n", ["trace_distance"]);
    expect(() => num(bad[0] ?? {}, "trace_distance")).toThrow(
      'column "trace_distance" holds non-numeric value "not-a-number"',
    );
  });
});
