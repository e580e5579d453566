/** Color assignment for nodes and bars. */

import type { ColorMode } from "./types.js";

/** Fixed categorical cycle, one entry per interval index (mod 7):
 * light blue, dark blue, light green, dark green, pink, red, orange. */
export const INTERVAL_PALETTE = [
  "#8ecae6", // light blue
  "#1d3557", // dark blue
  "#b7e4c7", // light green
  "#2d6a4f", // dark green
  "#ffafcc", // pink
  "#e63946", // red
  "#fb8500", // orange
] as const;

export function intervalColor(interval: number): string {
  const idx = ((interval % INTERVAL_PALETTE.length) + INTERVAL_PALETTE.length)
    % INTERVAL_PALETTE.length;
  return INTERVAL_PALETTE[idx]!;
}

/** Single-hue ramp for measure-value coloring (low -> high). */
export function measureColor(value: number, lo: number, hi: number): string {
  const t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
  const clamped = Math.max(0, Math.min(1, t));
  const light = Math.round(92 - 55 * clamped);
  return `hsl(24, 85%, ${light}%)`;
}

export function nodeColor(
  mode: ColorMode,
  interval: number,
  vector: number[] | null,
): string {
  if (mode === "measure" && vector && vector.length > 0) {
    const lo = Math.min(...vector);
    const hi = Math.max(...vector);
    const value = vector[interval];
    if (value !== undefined) return measureColor(value, lo, hi);
  }
  return intervalColor(interval);
}

export function legendEntries(nIntervals: number): { interval: number; color: string }[] {
  return Array.from({ length: nIntervals }, (_, i) => ({
    interval: i,
    color: intervalColor(i),
  }));
}
