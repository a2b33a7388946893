/** Client-side force-directed layout: seeded, deterministic, no dependencies.
 * Spring forces along edges, pairwise repulsion, gentle centering; the
 * iteration count shrinks for large samples to stay within frame budget. */

import type { GraphSample } from "./api.js";

export interface LayoutNode {
  id: string;
  cluster: number | null;
  degree: number;
  x: number;
  y: number;
}

/** Small deterministic PRNG so layouts are reproducible per seed. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  sample: GraphSample,
  width = 640,
  height = 480,
  seed = 7,
  iterations?: number,
): LayoutNode[] {
  const n = sample.nodes.length;
  if (n === 0) return [];
  const rand = mulberry32(seed);
  const nodes: LayoutNode[] = sample.nodes.map((node, i) => {
    const angle = (2 * Math.PI * i) / n;
    const radius = Math.min(width, height) * 0.35;
    return {
      ...node,
      x: width / 2 + radius * Math.cos(angle) + (rand() - 0.5) * 20,
      y: height / 2 + radius * Math.sin(angle) + (rand() - 0.5) * 20,
    };
  });
  const index = new Map(nodes.map((node, i) => [node.id, i]));
  const edges = sample.edges
    .map((e) => ({ a: index.get(e.u), b: index.get(e.v), w: e.w }))
    .filter((e): e is { a: number; b: number; w: number } => e.a !== undefined && e.b !== undefined);

  const iters = iterations ?? (n > 600 ? 40 : n > 200 ? 80 : 150);
  const area = width * height;
  const ideal = Math.sqrt(area / n) * 0.8;
  for (let step = 0; step < iters; step++) {
    const temp = 0.1 * Math.min(width, height) * (1 - step / iters) + 1;
    const dx = new Float64Array(n);
    const dy = new Float64Array(n);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = nodes[i].x - nodes[j].x;
        let vy = nodes[i].y - nodes[j].y;
        let dist = Math.hypot(vx, vy);
        if (dist < 0.01) {
          vx = rand() - 0.5;
          vy = rand() - 0.5;
          dist = 0.7;
        }
        const force = (ideal * ideal) / dist;
        dx[i] += (vx / dist) * force;
        dy[i] += (vy / dist) * force;
        dx[j] -= (vx / dist) * force;
        dy[j] -= (vy / dist) * force;
      }
    }
    for (const edge of edges) {
      const vx = nodes[edge.a].x - nodes[edge.b].x;
      const vy = nodes[edge.a].y - nodes[edge.b].y;
      const dist = Math.max(Math.hypot(vx, vy), 0.01);
      const force = (dist * dist) / ideal * Math.min(edge.w, 4) * 0.25;
      dx[edge.a] -= (vx / dist) * force;
      dy[edge.a] -= (vy / dist) * force;
      dx[edge.b] += (vx / dist) * force;
      dy[edge.b] += (vy / dist) * force;
    }
    for (let i = 0; i < n; i++) {
      const disp = Math.max(Math.hypot(dx[i], dy[i]), 0.01);
      const limited = Math.min(disp, temp);
      nodes[i].x += (dx[i] / disp) * limited;
      nodes[i].y += (dy[i] / disp) * limited;
      // drift back toward the frame
      nodes[i].x += (width / 2 - nodes[i].x) * 0.01;
      nodes[i].y += (height / 2 - nodes[i].y) * 0.01;
      nodes[i].x = Math.min(width - 10, Math.max(10, nodes[i].x));
      nodes[i].y = Math.min(height - 10, Math.max(10, nodes[i].y));
    }
  }
  return nodes;
}

/** Stable color per cluster index; noisy clusters get muted at render time. */
export function clusterColor(cluster: number | null): string {
  if (cluster === null) return "#888888";
  const palette = ["#4e9bde", "#e06c5a", "#58b46e", "#c9a13d", "#9a6dd7", "#d76da8", "#5ac8c8"];
  return palette[cluster % palette.length];
}
