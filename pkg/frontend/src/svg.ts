/**
 * Minimal deterministic SVG toolkit: scales, ticks, paths, axes.
 *
 * Everything renders to plain strings with fixed two-decimal pixel
 * coordinates and no timestamps or randomness, so identical inputs
 * yield byte-identical documents.
 */

export interface Scale {
  (value: number): number;
  readonly domain: [number, number];
  readonly range: [number, number];
}

export function linearScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as {
    (value: number): number;
    domain: [number, number];
    range: [number, number];
  };
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function logScale(
  domain: [number, number],
  range: [number, number],
): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error(`log scale needs a positive domain, got [${domain}]`);
  }
  const inner = linearScale(
    [Math.log10(domain[0]), Math.log10(domain[1])],
    range,
  );
  const scale = ((value: number) => inner(Math.log10(value))) as {
    (value: number): number;
    domain: [number, number];
    range: [number, number];
  };
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round-numbered ticks covering [lo, hi] with roughly `count` steps. */
export function linearTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const power = Math.floor(Math.log10(rawStep));
  const base = 10 ** power;
  let step = base;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * base >= rawStep) {
      step = mult * base;
      break;
    }
  }
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  for (let k = first; k <= last; k += 1) {
    // Snap multiples of the step to short decimals (0.6, not 0.6000…01).
    const tick = Number((k * step).toPrecision(12));
    ticks.push(tick === 0 ? 0 : tick);
  }
  return ticks;
}

/** Powers of ten inside [lo, hi], inclusive at the decade boundaries. */
export function decadeTicks(lo: number, hi: number): number[] {
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  const ticks: number[] = [];
  for (let exponent = first; exponent <= last; exponent += 1) {
    // `10 ** -5` is not the double closest to 1e-5; the literal form is.
    ticks.push(Number(`1e${exponent}`));
  }
  return ticks;
}

/** Label for a pure power-of-ten tick: always the "1e<k>" form. */
export function decadeLabel(value: number): string {
  if (value === 0) {
    return "0";
  }
  return `1e${Math.round(Math.log10(Math.abs(value)))}`;
}

const px = (value: number): string => {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
};

/** Short deterministic label for a tick value. */
export function tickLabel(value: number): string {
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    const exponent = Math.round(Math.log10(magnitude));
    if (Math.abs(magnitude / 10 ** exponent - 1) < 1e-9) {
      return `1e${exponent}`;
    }
    return value.toExponential(1).replace("e+", "e");
  }
  return String(Math.round(value * 1e6) / 1e6);
}

export function escapeText(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

export interface StrokeStyle {
  color: string;
  width?: number;
  dash?: string;
}

export function polyline(
  points: ReadonlyArray<readonly [number, number]>,
  style: StrokeStyle,
): string {
  if (points.length === 0) {
    return "";
  }
  const path = points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${px(x)},${px(y)}`)
    .join(" ");
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
  return (
    `<path d="${path}" fill="none" stroke="${style.color}" ` +
    `stroke-width="${style.width ?? 1.5}"${dash}/>`
  );
}

export function circle(x: number, y: number, r: number, fill: string): string {
  return `<circle cx="${px(x)}" cy="${px(y)}" r="${px(r)}" fill="${fill}"/>`;
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  style: StrokeStyle,
): string {
  const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
  return (
    `<line x1="${px(x1)}" y1="${px(y1)}" x2="${px(x2)}" y2="${px(y2)}" ` +
    `stroke="${style.color}" stroke-width="${style.width ?? 1}"${dash}/>`
  );
}

export function text(
  x: number,
  y: number,
  content: string,
  options: {
    size?: number;
    anchor?: "start" | "middle" | "end";
    color?: string;
    rotate?: number;
  } = {},
): string {
  const transform =
    options.rotate !== undefined
      ? ` transform="rotate(${options.rotate} ${px(x)} ${px(y)})"`
      : "";
  return (
    `<text x="${px(x)}" y="${px(y)}" font-size="${options.size ?? 11}" ` +
    `text-anchor="${options.anchor ?? "middle"}" ` +
    `fill="${options.color ?? "#222"}"${transform}>` +
    `${escapeText(content)}</text>`
  );
}

export interface AxisOptions {
  scale: Scale;
  ticks: number[];
  label?: string;
  /** Pixel coordinate of the axis line on the perpendicular direction. */
  at: number;
  side: "bottom" | "left" | "right";
  tickFormat?: (value: number) => string;
}

/** Axis line, tick marks, tick labels, and an optional axis title. */
export function axis(options: AxisOptions): string {
  const { scale, ticks, at, side } = options;
  const format = options.tickFormat ?? tickLabel;
  const parts: string[] = [];
  const [r0, r1] = scale.range;
  const stroke = { color: "#222", width: 1 };
  if (side === "bottom") {
    parts.push(line(r0, at, r1, at, stroke));
    for (const value of ticks) {
      const x = scale(value);
      parts.push(line(x, at, x, at + 5, stroke));
      parts.push(text(x, at + 17, format(value), { size: 10 }));
    }
    if (options.label) {
      parts.push(
        text((r0 + r1) / 2, at + 34, options.label, { size: 12 }),
      );
    }
  } else {
    const direction = side === "left" ? -1 : 1;
    parts.push(line(at, r0, at, r1, stroke));
    for (const value of ticks) {
      const y = scale(value);
      parts.push(line(at, y, at + 5 * direction, y, stroke));
      parts.push(
        text(at + 9 * direction, y + 3.5, format(value), {
          size: 10,
          anchor: side === "left" ? "end" : "start",
        }),
      );
    }
    if (options.label) {
      const x = at + 52 * direction;
      parts.push(
        text(x, (r0 + r1) / 2, options.label, {
          size: 12,
          rotate: side === "left" ? -90 : 90,
        }),
      );
    }
  }
  return parts.join("\n");
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export function legend(
  x: number,
  y: number,
  entries: readonly LegendEntry[],
): string {
  const parts: string[] = [];
  entries.forEach((entry, i) => {
    const rowY = y + i * 16;
    parts.push(
      line(x, rowY, x + 22, rowY, {
        color: entry.color,
        width: 2,
        dash: entry.dash,
      }),
    );
    parts.push(
      text(x + 28, rowY + 3.5, entry.label, { size: 11, anchor: "start" }),
    );
  });
  return parts.join("\n");
}

export function frame(
  x: number,
  y: number,
  width: number,
  height: number,
): string {
  return (
    `<rect x="${px(x)}" y="${px(y)}" width="${px(width)}" ` +
    `height="${px(height)}" fill="none" stroke="#999" stroke-width="0.75"/>`
  );
}

export function svgDocument(
  width: number,
  height: number,
  title: string,
  body: string,
): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}" ` +
    `font-family="Helvetica, Arial, sans-serif">\n` +
    `<title>${escapeText(title)}</title>\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    `\n</svg>\n`
  );
}
