/** Thin DOM/SVG layer: draws what the pure modules computed. */

import type { Selection, SweepRow, TermsPayload } from "./api.js";
import { buildDrillRows } from "./drill.js";
import type { LayoutNode } from "./network.js";
import { clusterColor } from "./network.js";
import type { SweepGeometry } from "./sweep.js";
import { nearestK } from "./sweep.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  node.append(...children);
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function errorBanner(message: string): HTMLElement {
  return el("div", { class: "banner error" }, message);
}

export function noticeBanner(message: string): HTMLElement {
  return el("div", { class: "banner notice" }, message);
}

export function renderSweepChart(
  geometry: SweepGeometry,
  rows: SweepRow[],
  selection: Selection,
  selectedK: number,
  onSelectK: (k: number) => void,
): HTMLElement {
  const wrap = el("div", { class: "panel sweep" });
  wrap.append(el("h2", {}, "Conductance by number of clusters"));
  const svg = svgEl("svg", {
    viewBox: `0 0 ${geometry.width} ${geometry.height}`,
    class: "sweep-chart",
    role: "img",
  });

  for (const tick of geometry.yTicks) {
    svg.append(
      svgEl("line", {
        x1: String(geometry.padding),
        x2: String(geometry.width - geometry.padding),
        y1: String(tick.y),
        y2: String(tick.y),
        class: "gridline",
      }),
    );
    const label = svgEl("text", {
      x: String(geometry.padding - 6),
      y: String(tick.y + 4),
      class: "tick-label",
      "text-anchor": "end",
    });
    label.textContent = tick.value.toFixed(2);
    svg.append(label);
  }

  // threshold line for delta
  svg.append(
    svgEl("line", {
      x1: String(geometry.padding),
      x2: String(geometry.width - geometry.padding),
      y1: String(geometry.thresholdY),
      y2: String(geometry.thresholdY),
      class: "threshold",
    }),
  );
  const deltaLabel = svgEl("text", {
    x: String(geometry.width - geometry.padding + 4),
    y: String(geometry.thresholdY + 4),
    class: "threshold-label",
  });
  deltaLabel.textContent = `δ=${selection.delta}`;
  svg.append(deltaLabel);

  for (const tick of geometry.xTicks) {
    const label = svgEl("text", {
      x: String(tick.x),
      y: String(geometry.height - geometry.padding + 18),
      class: tick.k === selectedK ? "tick-label selected" : "tick-label",
      "text-anchor": "middle",
    });
    label.textContent = `k=${tick.k}`;
    svg.append(label);
  }

  for (const point of geometry.points) {
    const circle = svgEl("circle", {
      cx: String(point.x),
      cy: String(point.y),
      r: "6",
      class: point.belowThreshold ? "point below" : "point above",
    });
    const title = svgEl("title");
    title.textContent = `k=${point.k} cluster ${point.cluster}: conductance ${point.conductance}`;
    circle.append(title);
    svg.append(circle);
  }

  svg.addEventListener("click", (event) => {
    const rect = (svg as unknown as SVGGraphicsElement).getBoundingClientRect();
    const x = ((event.clientX - rect.left) / rect.width) * geometry.width;
    const k = nearestK(geometry, x);
    if (k !== null) onSelectK(k);
  });
  wrap.append(svg);
  wrap.append(
    el(
      "p",
      { class: "hint" },
      `Points at or below the dashed line are viewpoint candidates. Click a k to load that partition. Rows: ${rows.length}.`,
    ),
  );
  return wrap;
}

export function renderNetwork(
  nodes: LayoutNode[],
  edges: { u: string; v: string; w: number }[],
  noisy: Set<number>,
  width: number,
  height: number,
  onSelectCluster: (cluster: number) => void,
): HTMLElement {
  const wrap = el("div", { class: "panel network" });
  wrap.append(el("h2", {}, "Endorsement network"));
  if (!nodes.length) {
    wrap.append(el("p", { class: "placeholder" }, "No nodes in sample."));
    return wrap;
  }
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, class: "network-svg" });
  for (const edge of edges) {
    const a = byId.get(edge.u);
    const b = byId.get(edge.v);
    if (!a || !b) continue;
    svg.append(
      svgEl("line", {
        x1: String(a.x),
        y1: String(a.y),
        x2: String(b.x),
        y2: String(b.y),
        class: "edge",
        "stroke-width": String(Math.min(1 + Math.log2(edge.w), 4)),
      }),
    );
  }
  for (const node of nodes) {
    const muted = node.cluster !== null && noisy.has(node.cluster);
    const circle = svgEl("circle", {
      cx: String(node.x),
      cy: String(node.y),
      r: String(Math.min(4 + Math.sqrt(node.degree), 12)),
      fill: clusterColor(node.cluster),
      class: muted ? "node muted" : "node",
    });
    const title = svgEl("title");
    title.textContent = `${node.id} — degree ${node.degree}, cluster ${node.cluster ?? "?"}`;
    circle.append(title);
    if (node.cluster !== null && !muted) {
      const cluster = node.cluster;
      circle.addEventListener("click", () => onSelectCluster(cluster));
    }
    svg.append(circle);
  }
  wrap.append(svg);
  return wrap;
}

export function renderTermsTable(
  payload: TermsPayload,
  onDrillTerm: (term: string) => void,
  onAddTerm: (term: string) => void,
): HTMLElement {
  const table = el("table", { class: "terms-table" });
  table.append(
    el(
      "tr",
      {},
      el("th", {}, "term"),
      el("th", {}, "score"),
      el("th", {}, "subject rank"),
      el("th", {}, "contrast rank"),
      el("th", {}, "subject freq"),
      el("th", {}, ""),
    ),
  );
  for (const row of buildDrillRows(payload)) {
    const termLink = el("a", { href: "#", class: "term-link" }, row.term);
    termLink.addEventListener("click", (ev) => {
      ev.preventDefault();
      onDrillTerm(row.term);
    });
    const addBtn = el("button", { class: "add-term", title: "add to drill set" }, "+");
    addBtn.addEventListener("click", () => onAddTerm(row.term));
    table.append(
      el(
        "tr",
        {},
        el("td", {}, termLink),
        el("td", { class: "score" }, row.score),
        el("td", {}, row.subjectRank),
        el("td", {}, row.contrastRank),
        el("td", {}, row.subjectFreq),
        el("td", {}, addBtn),
      ),
    );
  }
  return table;
}
