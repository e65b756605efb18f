export {
  CSV_COLUMNS,
  EmptyCsvError,
  MissingColumnError,
  num,
  parseCsv,
  requireNum,
  type Column,
  type Row,
} from "./csv.js";
export {
  STRATEGY_COLORS,
  HYBRID_DASH,
  canonicalOrder,
  ensembleData,
  extremalData,
  fractionColor,
  fractionalSweepData,
  noiseSweepData,
  percentError,
  seriesColor,
  seriesDash,
  strategyLabel,
  trajectorySeries,
  type EnsembleBar,
  type ExtremalData,
  type FractionalSweepData,
  type NoiseSeries,
  type TrajectorySeries,
} from "./figures.js";
export { FIGURE_IDS, FIGURES, isFigureId, renderFigure, type FigureId } from "./render.js";
export { main } from "./cli.js";
