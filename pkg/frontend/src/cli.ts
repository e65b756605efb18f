#!/usr/bin/env node
/**
 * Command-line renderer: turns a trajectory CSV produced by the
 * suzukilab CLI into one of the four standard SVG figures.
 *
 *   suzukilab-figures render --figure fig2-fractional --in sweep.csv --out fig2.svg
 *
 * Exit codes: 0 success, 2 usage error, 1 runtime failure (unreadable
 * input, missing columns, empty CSV).  The output file is only written
 * after the figure has rendered successfully.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { extname } from "node:path";
import { parseArgs } from "node:util";

import { EmptyCsvError, MissingColumnError } from "./csv.js";
import { FIGURE_IDS, isFigureId, renderFigure } from "./render.js";

const USAGE = `usage: suzukilab-figures render --figure <id> --in <csv> --out <svg>

figures: ${FIGURE_IDS.join(", ")} (or fig1..fig4)`;

/** Short aliases accepted alongside the full figure ids. */
const FIGURE_ALIASES: Record<string, string> = Object.fromEntries(
  FIGURE_IDS.map((id) => [id.split("-")[0] as string, id]),
);

export interface Io {
  out: (message: string) => void;
  err: (message: string) => void;
}

const CONSOLE_IO: Io = {
  out: (message) => process.stdout.write(`${message}\n`),
  err: (message) => process.stderr.write(`${message}\n`),
};

function usageError(io: Io, message: string): number {
  io.err(`suzukilab-figures: error: ${message}`);
  io.err(USAGE);
  return 2;
}

export function main(argv: string[], io: Io = CONSOLE_IO): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        figure: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
    });
  } catch (error) {
    return usageError(io, (error as Error).message);
  }

  if (parsed.values.help) {
    io.out(USAGE);
    return 0;
  }

  const [command, ...extra] = parsed.positionals;
  if (command === undefined) {
    return usageError(io, "missing command (expected: render)");
  }
  if (command !== "render") {
    return usageError(io, `unknown command "${command}"`);
  }
  if (extra.length > 0) {
    return usageError(io, `unexpected argument "${extra[0]}"`);
  }

  const { figure: figureArg, in: input, out } = parsed.values;
  if (figureArg === undefined) {
    return usageError(io, "--figure is required");
  }
  const figure = FIGURE_ALIASES[figureArg] ?? figureArg;
  if (!isFigureId(figure)) {
    return usageError(io, `unknown figure "${figureArg}"`);
  }
  if (input === undefined) {
    return usageError(io, "--in is required");
  }
  if (out === undefined) {
    return usageError(io, "--out is required");
  }
  const extension = extname(out).toLowerCase();
  if (extension !== ".svg") {
    return usageError(
      io,
      `unsupported output format "${extension || out}" (only .svg is supported)`,
    );
  }

  let csvText: string;
  try {
    csvText = readFileSync(input, "utf8");
  } catch (error) {
    io.err(`suzukilab-figures: cannot read ${input}: ${(error as Error).message}`);
    return 1;
  }

  let svg: string;
  try {
    svg = renderFigure(figure, csvText);
  } catch (error) {
    if (error instanceof MissingColumnError || error instanceof EmptyCsvError) {
      io.err(`suzukilab-figures: ${error.message}`);
    } else {
      io.err(`suzukilab-figures: ${(error as Error).message}`);
    }
    return 1;
  }

  try {
    writeFileSync(out, svg, "utf8");
  } catch (error) {
    io.err(`suzukilab-figures: cannot write ${out}: ${(error as Error).message}`);
    return 1;
  }
  io.out(`wrote ${out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  (process.argv[1].endsWith("cli.js") || process.argv[1].endsWith("suzukilab-figures"));
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
