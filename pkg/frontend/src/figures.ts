/**
 * Typed series extraction for the four standard figures.
 *
 * Rows come straight from the experiment CSVs; these helpers group
 * them into ordered series (shallow first, fractional budgets in
 * ascending f, then wide, then hybrid) and carry the fixed style
 * conventions: shallow blue, wide red, hybrid black dashed, and a
 * sequential colormap keyed by f for fractional curves.
 */

import { type Column, type Row, num, requireNum } from "./csv.js";

export const STRATEGY_COLORS: Record<string, string> = {
  shallow: "#1f77b4",
  wide: "#d62728",
  hybrid: "#000000",
};

export const HYBRID_DASH = "6 4";

/** Sequential colormap for fractional budgets f in [0, 1]. */
export function fractionColor(f: number): string {
  const stops: ReadonlyArray<readonly [number, number, number]> = [
    [68, 1, 84],
    [33, 145, 140],
    [253, 231, 37],
  ];
  const position = Math.min(Math.max(f, 0), 1) * (stops.length - 1);
  const index = Math.min(Math.floor(position), stops.length - 2);
  const t = position - index;
  const lo = stops[index] as readonly [number, number, number];
  const hi = stops[index + 1] as readonly [number, number, number];
  const channel = (k: 0 | 1 | 2) => Math.round(lo[k] + (hi[k] - lo[k]) * t);
  const hex = (value: number) => value.toString(16).padStart(2, "0");
  return `#${hex(channel(0))}${hex(channel(1))}${hex(channel(2))}`;
}

/** Display label for a row's strategy ("f=0.3" for fractional rows). */
export function strategyLabel(row: Row): string {
  const strategy = row["strategy"] ?? "";
  if (strategy === "fractional") {
    return `f=${Number(row["fraction"])}`;
  }
  return strategy;
}

/**
 * Percentage magnetization error with the producer's near-zero guard:
 * below |exact| = 1e-8 the relative error is meaningless, so the
 * absolute difference times 100 is used instead.
 */
export function percentError(magSim: number, magExact: number): number {
  if (Math.abs(magExact) < 1e-8) {
    return Math.abs(magSim - magExact) * 100;
  }
  return (Math.abs(magSim - magExact) / Math.abs(magExact)) * 100;
}

function groupByLabel(rows: Row[]): Map<string, Row[]> {
  const groups = new Map<string, Row[]>();
  for (const row of rows) {
    const label = strategyLabel(row);
    const bucket = groups.get(label);
    if (bucket) {
      bucket.push(row);
    } else {
      groups.set(label, [row]);
    }
  }
  return groups;
}

/** shallow, fractional budgets ascending in f, wide, hybrid. */
export function canonicalOrder(labels: Iterable<string>): string[] {
  const plain: string[] = [];
  const fractions: string[] = [];
  for (const label of labels) {
    (label.startsWith("f=") ? fractions : plain).push(label);
  }
  fractions.sort((a, b) => Number(a.slice(2)) - Number(b.slice(2)));
  const tail = ["wide", "hybrid"].filter((label) => plain.includes(label));
  const head = plain.filter((label) => !tail.includes(label));
  return [...head, ...fractions, ...tail];
}

export function seriesColor(label: string): string {
  if (label.startsWith("f=")) {
    return fractionColor(Number(label.slice(2)));
  }
  return STRATEGY_COLORS[label] ?? "#555555";
}

export function seriesDash(label: string): string | undefined {
  return label === "hybrid" ? HYBRID_DASH : undefined;
}

export interface TrajectorySeries {
  label: string;
  times: number[];
  values: number[];
}

function sortedByStep(rows: Row[]): Row[] {
  return [...rows].sort(
    (a, b) => requireNum(a, "step_index") - requireNum(b, "step_index"),
  );
}

/** Time series of one numeric column for every strategy in the rows. */
export function trajectorySeries(
  rows: Row[],
  column: Column,
  transform?: (row: Row) => number,
): TrajectorySeries[] {
  const groups = groupByLabel(rows);
  const series: TrajectorySeries[] = [];
  for (const label of canonicalOrder(groups.keys())) {
    const ordered = sortedByStep(groups.get(label) as Row[]);
    series.push({
      label,
      times: ordered.map((row) => requireNum(row, "time")),
      values: ordered.map((row) =>
        transform ? transform(row) : requireNum(row, column),
      ),
    });
  }
  return series;
}

export const FIG1_STRATEGIES = ["shallow", "wide", "hybrid"] as const;

export interface ExtremalData {
  magnetizationDifference: TrajectorySeries[];
  traceDistance: TrajectorySeries[];
}

/** Main-panel and inset series for the extremal comparison figure. */
export function extremalData(rows: Row[]): ExtremalData {
  const present = new Set(rows.map((row) => strategyLabel(row)));
  for (const strategy of FIG1_STRATEGIES) {
    if (!present.has(strategy)) {
      throw new Error(`extremal CSV has no rows for strategy "${strategy}"`);
    }
  }
  const kept = rows.filter((row) =>
    (FIG1_STRATEGIES as readonly string[]).includes(strategyLabel(row)),
  );
  return {
    magnetizationDifference: trajectorySeries(kept, "mag_sim", (row) =>
      Math.abs(requireNum(row, "mag_sim") - requireNum(row, "mag_exact")),
    ),
    traceDistance: trajectorySeries(kept, "trace_distance"),
  };
}

export interface FractionPoint {
  fraction: number;
  finalValue: number;
}

export interface FractionalSweepData {
  traceDistance: TrajectorySeries[];
  finalByFraction: FractionPoint[];
}

/** Trajectories plus the final-value-vs-fraction inset points. */
export function fractionalSweepData(rows: Row[]): FractionalSweepData {
  const traceDistance = trajectorySeries(rows, "trace_distance");
  const finalByFraction: FractionPoint[] = [];
  for (const series of traceDistance) {
    if (series.label.startsWith("f=")) {
      finalByFraction.push({
        fraction: Number(series.label.slice(2)),
        finalValue: series.values[series.values.length - 1] as number,
      });
    }
  }
  if (finalByFraction.length === 0) {
    throw new Error("fractional-sweep CSV has no fractional strategy rows");
  }
  return { traceDistance, finalByFraction };
}

export interface EnsembleBar {
  label: string;
  mean: number;
  std: number;
}

/** Mean and deviation of the final trace distance per strategy. */
export function ensembleData(rows: Row[]): EnsembleBar[] {
  const means = new Map<string, number>();
  const stds = new Map<string, number>();
  for (const row of rows) {
    const tag = row["instance"];
    if (tag !== "mean" && tag !== "std") {
      continue;
    }
    const target = tag === "mean" ? means : stds;
    target.set(strategyLabel(row), requireNum(row, "trace_distance"));
  }
  if (means.size === 0) {
    throw new Error('ensemble CSV has no aggregate rows (instance "mean")');
  }
  const bars: EnsembleBar[] = [];
  for (const label of canonicalOrder(means.keys())) {
    const std = stds.get(label);
    if (std === undefined) {
      throw new Error(`ensemble CSV lacks the "std" aggregate for ${label}`);
    }
    bars.push({ label, mean: means.get(label) as number, std });
  }
  return bars;
}

export interface NoiseSeries {
  label: string;
  probabilities: number[];
  percentErrors: number[];
  traceDistances: number[];
}

/** Per-strategy error curves over the noise-probability grid. */
export function noiseSweepData(rows: Row[]): NoiseSeries[] {
  const groups = groupByLabel(rows.filter((row) => num(row, "p") !== null));
  if (groups.size === 0) {
    throw new Error("noise-sweep CSV has no rows with a noise probability");
  }
  const series: NoiseSeries[] = [];
  for (const label of canonicalOrder(groups.keys())) {
    const ordered = [...(groups.get(label) as Row[])].sort(
      (a, b) => requireNum(a, "p") - requireNum(b, "p"),
    );
    series.push({
      label,
      probabilities: ordered.map((row) => requireNum(row, "p")),
      percentErrors: ordered.map((row) =>
        percentError(requireNum(row, "mag_sim"), requireNum(row, "mag_exact")),
      ),
      traceDistances: ordered.map((row) => requireNum(row, "trace_distance")),
    });
  }
  return series;
}
