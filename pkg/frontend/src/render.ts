/**
 * Layouts for the four standard figures, rendered as standalone SVG.
 *
 * Every figure is a pure function of the parsed CSV rows: fixed
 * canvas size, fixed styles, no timestamps, so rendering the same CSV
 * twice produces byte-identical documents.
 */

import { type Column, type Row, parseCsv } from "./csv.js";
import {
  type EnsembleBar,
  type NoiseSeries,
  type TrajectorySeries,
  ensembleData,
  extremalData,
  fractionalSweepData,
  noiseSweepData,
  seriesColor,
  seriesDash,
} from "./figures.js";
import {
  type Scale,
  axis,
  circle,
  decadeLabel,
  decadeTicks,
  frame,
  legend,
  line,
  linearScale,
  linearTicks,
  logScale,
  polyline,
  svgDocument,
  text,
} from "./svg.js";

export const FIGURE_IDS = [
  "fig1-magnetization",
  "fig2-fractional",
  "fig3-ensemble",
  "fig4-noise",
] as const;

export type FigureId = (typeof FIGURE_IDS)[number];

const WIDTH = 760;
const HEIGHT = 500;

interface Box {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

function minMax(values: Iterable<number>): [number, number] {
  let lo = Number.POSITIVE_INFINITY;
  let hi = Number.NEGATIVE_INFINITY;
  for (const value of values) {
    if (value < lo) lo = value;
    if (value > hi) hi = value;
  }
  if (!(lo <= hi)) {
    throw new Error("cannot scale an empty value range");
  }
  return [lo, hi];
}

/** Smallest strictly positive entry; log plots clamp zeros up to it. */
function positiveFloor(values: Iterable<number>): number {
  let floor = Number.POSITIVE_INFINITY;
  for (const value of values) {
    if (value > 0 && value < floor) floor = value;
  }
  if (!Number.isFinite(floor)) {
    throw new Error("log-scaled panel needs at least one positive value");
  }
  return floor;
}

function clampPositive(value: number, floor: number): number {
  return value > 0 ? value : floor;
}

function seriesPath(
  series: TrajectorySeries,
  x: Scale,
  y: Scale,
  transformY: (value: number) => number = (value) => value,
): string {
  const points = series.times.map(
    (time, i) =>
      [x(time), y(transformY(series.values[i] as number))] as const,
  );
  return polyline(points, {
    color: seriesColor(series.label),
    width: series.label === "hybrid" ? 1.6 : 1.5,
    dash: seriesDash(series.label),
  });
}

function trajectoryLegend(labels: string[], x: number, y: number): string {
  return legend(
    x,
    y,
    labels.map((label) => ({
      label,
      color: seriesColor(label),
      dash: seriesDash(label),
    })),
  );
}

// ---------------------------------------------------------------- fig1

function renderExtremal(rows: Row[]): string {
  const data = extremalData(rows);
  const main: Box = { x0: 70, y0: 48, x1: WIDTH - 30, y1: HEIGHT - 56 };
  const allTimes = data.magnetizationDifference.flatMap((s) => s.times);
  const allDiffs = data.magnetizationDifference.flatMap((s) => s.values);
  const [t0, t1] = minMax(allTimes);
  const [, dHi] = minMax(allDiffs);
  const x = linearScale([t0 > 0.1 ? 0 : 0, t1], [main.x0, main.x1]);
  const y = linearScale([0, dHi * 1.05], [main.y1, main.y0]);

  const parts: string[] = [];
  parts.push(frame(main.x0, main.y0, main.x1 - main.x0, main.y1 - main.y0));
  for (const series of data.magnetizationDifference) {
    parts.push(seriesPath(series, x, y));
  }
  parts.push(
    axis({
      scale: x,
      ticks: linearTicks(0, t1, 6),
      at: main.y1,
      side: "bottom",
      label: "time",
    }),
  );
  parts.push(
    axis({
      scale: y,
      ticks: linearTicks(0, dHi * 1.05, 5),
      at: main.x0,
      side: "left",
      label: "|magnetization error|",
    }),
  );
  parts.push(
    trajectoryLegend(
      data.magnetizationDifference.map((s) => s.label),
      main.x1 - 120,
      main.y0 + 16,
    ),
  );

  // Trace-distance inset, upper left where the growing curves leave room.
  const inset: Box = {
    x0: main.x0 + 46,
    y0: main.y0 + 14,
    x1: main.x0 + 286,
    y1: main.y0 + 164,
  };
  const allDistances = data.traceDistance.flatMap((s) => s.values);
  const [, distHi] = minMax(allDistances);
  const ix = linearScale([0, t1], [inset.x0, inset.x1]);
  const iy = linearScale([0, distHi * 1.05], [inset.y1, inset.y0]);
  parts.push(
    `<rect x="${inset.x0}" y="${inset.y0}" width="${inset.x1 - inset.x0}" ` +
      `height="${inset.y1 - inset.y0}" fill="#ffffff"/>`,
  );
  parts.push(frame(inset.x0, inset.y0, inset.x1 - inset.x0, inset.y1 - inset.y0));
  for (const series of data.traceDistance) {
    parts.push(seriesPath(series, ix, iy));
  }
  parts.push(
    axis({
      scale: ix,
      ticks: linearTicks(0, t1, 3),
      at: inset.y1,
      side: "bottom",
    }),
  );
  parts.push(
    axis({
      scale: iy,
      ticks: linearTicks(0, distHi * 1.05, 3),
      at: inset.x0,
      side: "left",
    }),
  );
  parts.push(
    text((inset.x0 + inset.x1) / 2, inset.y0 - 4, "trace distance", {
      size: 10,
    }),
  );

  parts.push(
    text(WIDTH / 2, 24, "Shallow vs wide vs hybrid: magnetization error", {
      size: 14,
    }),
  );
  return svgDocument(WIDTH, HEIGHT, "extremal comparison", parts.join("\n"));
}

// ---------------------------------------------------------------- fig2

function renderFractional(rows: Row[]): string {
  const data = fractionalSweepData(rows);
  const main: Box = { x0: 70, y0: 48, x1: WIDTH - 150, y1: HEIGHT - 56 };
  const allTimes = data.traceDistance.flatMap((s) => s.times);
  const allValues = data.traceDistance.flatMap((s) => s.values);
  const [, t1] = minMax(allTimes);
  const floor = positiveFloor(allValues);
  const [, vHi] = minMax(allValues);
  const x = linearScale([0, t1], [main.x0, main.x1]);
  const y = logScale([floor, vHi * 1.3], [main.y1, main.y0]);

  const parts: string[] = [];
  parts.push(frame(main.x0, main.y0, main.x1 - main.x0, main.y1 - main.y0));
  for (const series of data.traceDistance) {
    parts.push(seriesPath(series, x, y, (value) => clampPositive(value, floor)));
  }
  parts.push(
    axis({
      scale: x,
      ticks: linearTicks(0, t1, 6),
      at: main.y1,
      side: "bottom",
      label: "time",
    }),
  );
  parts.push(
    axis({
      scale: y,
      ticks: decadeTicks(floor, vHi * 1.3),
      at: main.x0,
      side: "left",
      label: "trace distance",
      tickFormat: decadeLabel,
    }),
  );
  parts.push(
    trajectoryLegend(
      data.traceDistance.map((s) => s.label),
      main.x1 + 16,
      main.y0 + 10,
    ),
  );

  // Final-value-vs-fraction inset, upper left (log-y keeps it clear).
  const inset: Box = {
    x0: main.x0 + 46,
    y0: main.y0 + 14,
    x1: main.x0 + 246,
    y1: main.y0 + 148,
  };
  const finals = data.finalByFraction.map((point) => point.finalValue);
  const fractions = data.finalByFraction.map((point) => point.fraction);
  const [fLo, fHi] = minMax(fractions);
  const [vLo2, vHi2] = minMax(finals);
  const ix = linearScale([fLo - 0.05, fHi + 0.05], [inset.x0, inset.x1]);
  const iy =
    vHi2 / Math.max(vLo2, Number.MIN_VALUE) > 10
      ? logScale([vLo2, vHi2], [inset.y1, inset.y0])
      : linearScale([vLo2 * 0.9, vHi2 * 1.1], [inset.y1, inset.y0]);
  parts.push(
    `<rect x="${inset.x0}" y="${inset.y0}" width="${inset.x1 - inset.x0}" ` +
      `height="${inset.y1 - inset.y0}" fill="#ffffff"/>`,
  );
  parts.push(frame(inset.x0, inset.y0, inset.x1 - inset.x0, inset.y1 - inset.y0));
  parts.push(
    polyline(
      data.finalByFraction.map(
        (point) => [ix(point.fraction), iy(point.finalValue)] as const,
      ),
      { color: "#555555", width: 1 },
    ),
  );
  for (const point of data.finalByFraction) {
    parts.push(
      circle(ix(point.fraction), iy(point.finalValue), 3, seriesColor(`f=${point.fraction}`)),
    );
  }
  parts.push(
    axis({
      scale: ix,
      ticks: linearTicks(fLo, fHi, 4),
      at: inset.y1,
      side: "bottom",
    }),
  );
  parts.push(
    text((inset.x0 + inset.x1) / 2, inset.y0 - 4, "final value vs f", {
      size: 10,
    }),
  );

  parts.push(
    text(WIDTH / 2, 24, "Fractional budgets between shallow and wide", {
      size: 14,
    }),
  );
  return svgDocument(WIDTH, HEIGHT, "fractional sweep", parts.join("\n"));
}

// ---------------------------------------------------------------- fig3

function renderEnsemble(rows: Row[]): string {
  const bars: EnsembleBar[] = ensembleData(rows);
  const main: Box = { x0: 80, y0: 48, x1: WIDTH - 40, y1: HEIGHT - 90 };
  const highest = minMax(bars.map((bar) => bar.mean + bar.std))[1];
  const y = linearScale([0, highest * 1.1], [main.y1, main.y0]);
  const band = (main.x1 - main.x0) / bars.length;

  const parts: string[] = [];
  parts.push(frame(main.x0, main.y0, main.x1 - main.x0, main.y1 - main.y0));
  bars.forEach((bar, i) => {
    const cx = main.x0 + band * (i + 0.5);
    const color = seriesColor(bar.label);
    const top = y(bar.mean + bar.std);
    const bottom = y(Math.max(bar.mean - bar.std, 0));
    parts.push(line(cx, top, cx, bottom, { color, width: 1.4 }));
    parts.push(line(cx - 5, top, cx + 5, top, { color, width: 1.4 }));
    parts.push(line(cx - 5, bottom, cx + 5, bottom, { color, width: 1.4 }));
    parts.push(circle(cx, y(bar.mean), 3.5, color));
    parts.push(
      text(cx, main.y1 + 14, bar.label, {
        size: 10,
        anchor: "end",
        rotate: -35,
      }),
    );
  });
  parts.push(
    axis({
      scale: y,
      ticks: linearTicks(0, highest * 1.1, 5),
      at: main.x0,
      side: "left",
      label: "final trace distance",
    }),
  );
  parts.push(line(main.x0, main.y1, main.x1, main.y1, { color: "#222" }));
  parts.push(
    text(WIDTH / 2, 24, "Random ensemble: mean final error by strategy", {
      size: 14,
    }),
  );
  parts.push(
    text(WIDTH / 2, HEIGHT - 16, "strategy", { size: 12 }),
  );
  return svgDocument(WIDTH, HEIGHT, "ensemble statistics", parts.join("\n"));
}

// ---------------------------------------------------------------- fig4

function renderNoise(rows: Row[]): string {
  const series: NoiseSeries[] = noiseSweepData(rows);
  const main: Box = { x0: 80, y0: 48, x1: WIDTH - 80, y1: HEIGHT - 56 };
  const probabilities = series.flatMap((s) => s.probabilities);
  const [pLo, pHi] = minMax(probabilities);
  const x = logScale([pLo, pHi], [main.x0, main.x1]);

  const errors = series.flatMap((s) => s.percentErrors);
  const errorFloor = positiveFloor(errors);
  const [, errorHi] = minMax(errors);
  const left = logScale([errorFloor, errorHi * 1.3], [main.y1, main.y0]);

  const distances = series.flatMap((s) => s.traceDistances);
  const distanceFloor = positiveFloor(distances);
  const [, distanceHi] = minMax(distances);
  const right = logScale([distanceFloor, distanceHi * 1.3], [main.y1, main.y0]);

  const parts: string[] = [];
  parts.push(frame(main.x0, main.y0, main.x1 - main.x0, main.y1 - main.y0));
  for (const s of series) {
    const color = seriesColor(s.label);
    parts.push(
      polyline(
        s.probabilities.map(
          (p, i) =>
            [x(p), left(clampPositive(s.percentErrors[i] as number, errorFloor))] as const,
        ),
        { color, width: 1.6 },
      ),
    );
    parts.push(
      polyline(
        s.probabilities.map(
          (p, i) =>
            [
              x(p),
              right(clampPositive(s.traceDistances[i] as number, distanceFloor)),
            ] as const,
        ),
        { color, width: 1.2, dash: "5 4" },
      ),
    );
  }
  parts.push(
    axis({
      scale: x,
      ticks: decadeTicks(pLo, pHi),
      at: main.y1,
      side: "bottom",
      label: "depolarizing probability p",
      tickFormat: decadeLabel,
    }),
  );
  parts.push(
    axis({
      scale: left,
      ticks: decadeTicks(errorFloor, errorHi * 1.3),
      at: main.x0,
      side: "left",
      label: "magnetization error (%)",
      tickFormat: decadeLabel,
    }),
  );
  parts.push(
    axis({
      scale: right,
      ticks: decadeTicks(distanceFloor, distanceHi * 1.3),
      at: main.x1,
      side: "right",
      label: "trace distance",
      tickFormat: decadeLabel,
    }),
  );
  const entries = series.map((s) => ({
    label: s.label,
    color: seriesColor(s.label),
  }));
  entries.push({ label: "solid: % error", color: "#888888" });
  parts.push(legend(main.x0 + 14, main.y0 + 16, entries));
  parts.push(
    legend(main.x0 + 14, main.y0 + 16 + entries.length * 16, [
      { label: "dashed: trace distance", color: "#888888", dash: "5 4" },
    ]),
  );
  parts.push(
    text(WIDTH / 2, 24, "Best strategy vs depolarizing noise strength", {
      size: 14,
    }),
  );
  return svgDocument(WIDTH, HEIGHT, "noise crossover", parts.join("\n"));
}

// ------------------------------------------------------------ registry

interface FigureDefinition {
  required: readonly Column[];
  render: (rows: Row[]) => string;
}

export const FIGURES: Record<FigureId, FigureDefinition> = {
  "fig1-magnetization": {
    required: [
      "strategy",
      "fraction",
      "step_index",
      "time",
      "mag_exact",
      "mag_sim",
      "trace_distance",
    ],
    render: renderExtremal,
  },
  "fig2-fractional": {
    required: ["strategy", "fraction", "step_index", "time", "trace_distance"],
    render: renderFractional,
  },
  "fig3-ensemble": {
    required: ["strategy", "fraction", "instance", "trace_distance"],
    render: renderEnsemble,
  },
  "fig4-noise": {
    required: [
      "strategy",
      "fraction",
      "p",
      "mag_exact",
      "mag_sim",
      "trace_distance",
    ],
    render: renderNoise,
  },
};

export function isFigureId(value: string): value is FigureId {
  return (FIGURE_IDS as readonly string[]).includes(value);
}

/** Parse CSV text and render one figure to an SVG string. */
export function renderFigure(figure: FigureId, csvText: string): string {
  const definition = FIGURES[figure];
  const rows = parseCsv(csvText, definition.required);
  return definition.render(rows);
}
