import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import type { SweepRow } from "../src/api.js";
import { nearestK, sweepGeometry } from "../src/sweep.js";

const here = dirname(fileURLToPath(import.meta.url));
const sweepFixture = JSON.parse(
  readFileSync(join(here, "fixtures", "sweep_response.json"), "utf-8"),
) as { rows: SweepRow[] };

describe("sweep chart geometry", () => {
  const delta = 0.1;
  const geometry = sweepGeometry(sweepFixture.rows, delta, 640, 320);

  it("produces one point per (k, cluster) row, all inside the frame", () => {
    expect(geometry.points).toHaveLength(sweepFixture.rows.length);
    for (const point of geometry.points) {
      expect(point.x).toBeGreaterThanOrEqual(geometry.padding);
      expect(point.x).toBeLessThanOrEqual(geometry.width - geometry.padding);
      expect(point.y).toBeGreaterThanOrEqual(geometry.padding);
      expect(point.y).toBeLessThanOrEqual(geometry.height - geometry.padding);
    }
  });

  it("splits points across the threshold line exactly at delta", () => {
    for (const point of geometry.points) {
      expect(point.belowThreshold).toBe(point.conductance <= delta);
      if (point.belowThreshold) {
        expect(point.y).toBeGreaterThanOrEqual(geometry.thresholdY);
      } else {
        expect(point.y).toBeLessThanOrEqual(geometry.thresholdY);
      }
    }
  });

  it("keeps conductance values untouched in the point data", () => {
    const byKCluster = new Map(
      sweepFixture.rows.map((r) => [`${r.k}:${r.cluster}`, r.conductance]),
    );
    for (const point of geometry.points) {
      expect(point.conductance).toBe(byKCluster.get(`${point.k}:${point.cluster}`));
    }
  });

  it("hit-tests clicks to the nearest k tick", () => {
    for (const tick of geometry.xTicks) {
      expect(nearestK(geometry, tick.x)).toBe(tick.k);
      expect(nearestK(geometry, tick.x + 3)).toBe(tick.k);
    }
    expect(nearestK(geometry, 0)).toBe(geometry.xTicks[0].k);
    expect(nearestK(geometry, 10_000)).toBe(geometry.xTicks[geometry.xTicks.length - 1].k);
  });

  it("handles a single-k sweep", () => {
    const onlyK2 = sweepFixture.rows.filter((r) => r.k === 2);
    const single = sweepGeometry(onlyK2, delta, 640, 320);
    expect(single.xTicks).toHaveLength(1);
    expect(nearestK(single, 320)).toBe(2);
  });
});
