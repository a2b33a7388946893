/** Conductance-vs-k chart geometry, computed as pure data so it can be
 * unit-tested; the SVG layer in dom.ts just draws what this returns. */

import type { SweepRow } from "./api.js";

export interface ChartPoint {
  x: number;
  y: number;
  k: number;
  cluster: number;
  conductance: number;
  belowThreshold: boolean;
}

export interface SweepGeometry {
  width: number;
  height: number;
  padding: number;
  points: ChartPoint[];
  thresholdY: number;
  xTicks: { x: number; k: number }[];
  yTicks: { y: number; value: number }[];
  yMax: number;
}

export function sweepGeometry(
  rows: SweepRow[],
  delta: number,
  width = 640,
  height = 320,
  padding = 44,
): SweepGeometry {
  const ks = [...new Set(rows.map((r) => r.k))].sort((a, b) => a - b);
  const rawMax = Math.max(delta * 1.5, ...rows.map((r) => r.conductance), 0.0001);
  const yMax = Math.min(1, rawMax * 1.1);
  const innerW = width - 2 * padding;
  const innerH = height - 2 * padding;
  const xOf = (k: number) =>
    padding + (ks.length === 1 ? innerW / 2 : (ks.indexOf(k) / (ks.length - 1)) * innerW);
  const yOf = (c: number) => padding + innerH - (Math.min(c, yMax) / yMax) * innerH;
  const points = rows.map((r) => ({
    x: xOf(r.k),
    y: yOf(r.conductance),
    k: r.k,
    cluster: r.cluster,
    conductance: r.conductance,
    belowThreshold: r.conductance <= delta,
  }));
  const yTickCount = 4;
  const yTicks = Array.from({ length: yTickCount + 1 }, (_, i) => {
    const value = (yMax * i) / yTickCount;
    return { y: yOf(value), value };
  });
  return {
    width,
    height,
    padding,
    points,
    thresholdY: yOf(delta),
    xTicks: ks.map((k) => ({ x: xOf(k), k })),
    yTicks,
    yMax,
  };
}

/** Which k a click at pixel-x selects (nearest tick). */
export function nearestK(geometry: SweepGeometry, x: number): number | null {
  if (!geometry.xTicks.length) return null;
  let best = geometry.xTicks[0];
  for (const tick of geometry.xTicks) {
    if (Math.abs(tick.x - x) < Math.abs(best.x - x)) best = tick;
  }
  return best.k;
}
