/**
 * Strict reader for the experiment CSV schema.
 *
 * The producer writes 17 fixed columns with LF endings and no quoting
 * (values never contain commas), so parsing is a straight split.  The
 * reader still validates the header against whatever columns a figure
 * needs and fails loudly, by column name, when one is missing.
 */

export const CSV_COLUMNS = [
  "experiment",
  "model",
  "L",
  "dt",
  "steps",
  "strategy",
  "fraction",
  "p",
  "instance",
  "step_index",
  "time",
  "seq_length",
  "mag_exact",
  "mag_sim",
  "trace_distance",
  "fidelity",
  "bures",
] as const;

export type Column = (typeof CSV_COLUMNS)[number];

export type Row = Record<string, string>;

/** A figure asked for a column the CSV header does not provide. */
export class MissingColumnError extends Error {
  readonly column: string;

  constructor(column: string) {
    super(`CSV is missing required column "${column}"`);
    this.name = "MissingColumnError";
    this.column = column;
  }
}

/** The CSV has no data rows (or no content at all). */
export class EmptyCsvError extends Error {
  constructor() {
    super("CSV contains no data rows");
    this.name = "EmptyCsvError";
  }
}

/**
 * Parse CSV text into rows keyed by header name.
 *
 * `required` lists the columns the caller is about to read; a missing
 * one raises {@link MissingColumnError} with its name.  A header-only
 * or blank file raises {@link EmptyCsvError}.
 */
export function parseCsv(text: string, required: readonly Column[]): Row[] {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new EmptyCsvError();
  }
  const header = (lines[0] as string).split(",");
  for (const column of required) {
    if (!header.includes(column)) {
      throw new MissingColumnError(column);
    }
  }
  const rows: Row[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const row: Row = {};
    header.forEach((name, i) => {
      row[name] = cells[i] ?? "";
    });
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new EmptyCsvError();
  }
  return rows;
}

/** Numeric cell value, or null when the cell is empty. */
export function num(row: Row, column: Column): number | null {
  const cell = row[column];
  if (cell === undefined || cell === "") {
    return null;
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new Error(`column "${column}" holds non-numeric value "${cell}"`);
  }
  return value;
}

/** Numeric cell value that must be present. */
export function requireNum(row: Row, column: Column): number {
  const value = num(row, column);
  if (value === null) {
    throw new Error(`column "${column}" is unexpectedly empty`);
  }
  return value;
}
