/** Controller: URL state in, API data in, panels out.
 *
 * Every interaction funnels through setState -> pushState -> render, so the
 * address bar always encodes the exact view and popstate replays it.
 */

import {
  ApiError,
  drill,
  getPartition,
  getSample,
  getSelection,
  getSweep,
  getTerms,
  type GraphSample,
  type Selection,
  type SweepRow,
  type TermsPayload,
} from "./api.js";
import { el, errorBanner, noticeBanner, renderNetwork, renderSweepChart, renderTermsTable } from "./dom.js";
import { DrillHistory } from "./drill.js";
import { forceLayout } from "./network.js";
import { sweepGeometry } from "./sweep.js";
import { decodeState, encodeState, type ExplorerState } from "./state.js";

const MAX_SAMPLE_NODES = 2000;

interface LoadedData {
  sweep: SweepRow[];
  selection: Selection;
}

let data: LoadedData | null = null;
let state: ExplorerState = decodeState(window.location.search);
let history = new DrillHistory();

function root(): HTMLElement {
  return document.getElementById("app") as HTMLElement;
}

function setState(next: Partial<ExplorerState>, push = true): void {
  state = { ...state, ...next };
  if (push) {
    const query = encodeState(state);
    window.history.pushState(null, "", query ? `?${query}` : window.location.pathname);
  }
  void render();
}

function currentK(): number {
  return state.k ?? data?.selection.chosen_k ?? 2;
}

async function loadClusterPanel(container: HTMLElement): Promise<void> {
  const k = currentK();
  try {
    const [sample, partition] = await Promise.all([getSample(MAX_SAMPLE_NODES), getPartition(k)]);
    const recolored: GraphSample = {
      ...sample,
      nodes: sample.nodes.map((n) => ({ ...n, cluster: partition.assignment[n.id] ?? null })),
    };
    const nodes = forceLayout(recolored, 640, 460);
    const noisy = new Set(k === data?.selection.chosen_k ? data.selection.noisy : []);
    container.replaceChildren(
      renderNetwork(nodes, sample.edges, noisy, 640, 460, (cluster) => {
        if (data && data.selection.viewpoints.includes(cluster)) {
          setState({ viewpoint: cluster, terms: [], history: [] });
        }
      }),
      el(
        "p",
        { class: "hint" },
        `k=${k}, edge cut ${partition.edge_cut}, showing ${sample.nodes.length} of ${sample.total_nodes} users. ` +
          "Click a colored node to open its viewpoint.",
      ),
    );
  } catch (err) {
    container.replaceChildren(errorBanner(`cluster view failed: ${(err as Error).message}`));
  }
}

function describePanelHeader(selection: Selection): HTMLElement {
  const header = el("div", { class: "viewpoint-picker" });
  header.append(el("span", {}, "Viewpoints: "));
  for (const vp of selection.viewpoints) {
    const btn = el(
      "button",
      { class: state.viewpoint === vp ? "vp-btn active" : "vp-btn" },
      `viewpoint ${vp}`,
    );
    btn.addEventListener("click", () => setState({ viewpoint: vp, terms: [], history: [] }));
    header.append(btn);
  }
  if (selection.noisy.length) {
    header.append(el("span", { class: "muted" }, ` noisy: ${selection.noisy.join(", ")}`));
  }
  return header;
}

function breadcrumbBar(onJump: (terms: string[]) => void): HTMLElement {
  const bar = el("div", { class: "breadcrumb" });
  bar.append(el("span", { class: "crumb-label" }, "history:"));
  const crumbs = history.list();
  if (!crumbs.length) bar.append(el("span", { class: "muted" }, " (none)"));
  crumbs.forEach((crumb, i) => {
    const btn = el("button", { class: "crumb" }, crumb.label);
    btn.addEventListener("click", () => onJump([...crumb.terms]));
    bar.append(btn);
    if (i < crumbs.length - 1) bar.append(el("span", {}, " › "));
  });
  return bar;
}

function termSetBar(container: HTMLElement): HTMLElement {
  const bar = el("div", { class: "term-set" });
  bar.append(el("span", {}, "drill set: "));
  if (!pendingTerms.length) bar.append(el("span", { class: "muted" }, "(click + to compose a multi-term query)"));
  for (const term of pendingTerms) {
    bar.append(el("span", { class: "chip" }, term));
  }
  if (pendingTerms.length) {
    const go = el("button", { class: "drill-go" }, `drill {${pendingTerms.join(", ")}}`);
    go.addEventListener("click", () => {
      const terms = [...pendingTerms];
      pendingTerms = [];
      runDrill(container, terms);
    });
    const clear = el("button", { class: "drill-clear" }, "clear");
    clear.addEventListener("click", () => {
      pendingTerms = [];
      void render();
    });
    bar.append(go, clear);
  }
  return bar;
}

let pendingTerms: string[] = [];

function runDrill(container: HTMLElement, terms: string[]): void {
  if (state.viewpoint === null) return;
  const nextHistory = state.terms.length ? [...state.history, state.terms] : state.history;
  setState({ terms, history: nextHistory });
  void container; // re-render happens through setState
}

async function showViewpoint(container: HTMLElement): Promise<void> {
  if (!data) return;
  const selection = data.selection;
  container.replaceChildren(el("h2", {}, "Viewpoint terms"), describePanelHeader(selection));
  if (state.viewpoint === null) {
    container.append(el("p", { class: "placeholder" }, "Pick a viewpoint to see its descriptive terms."));
    return;
  }
  const vp = state.viewpoint;
  container.append(breadcrumbBar((terms) => {
    // back-navigation: restore from cache when we have it (no refetch)
    const cached = history.restore(vp, terms, state.n, state.m);
    if (cached) {
      setState({ terms });
      void cached;
    } else {
      setState({ terms });
    }
  }));
  container.append(termSetBar(container));
  const tableHost = el("div", { class: "table-host" });
  container.append(tableHost);
  const onDrillTerm = (term: string) => runDrill(container, [term]);
  const onAddTerm = (term: string) => {
    if (!pendingTerms.includes(term)) pendingTerms.push(term);
    void render();
  };
  try {
    let payload: TermsPayload;
    let caption: string;
    if (state.terms.length) {
      payload =
        history.restore(vp, state.terms, state.n, state.m) ??
        (await drill(vp, state.terms, state.n, state.m));
      if (!history.restore(vp, state.terms, state.n, state.m)) {
        history.push(vp, state.terms, state.n, state.m, payload);
      }
      caption = `drilldown {${payload.query_terms.join(", ")}} — subject ${payload.subject_size} terms, contrast ${payload.contrast_size}`;
    } else {
      payload = await getTerms(vp);
      caption = `what is viewpoint ${vp} about? (top ${payload.terms.length})`;
    }
    tableHost.append(el("p", { class: "caption" }, caption));
    tableHost.append(renderTermsTable(payload, onDrillTerm, onAddTerm));
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      tableHost.append(
        noticeBanner(
          `Degenerate split: ${err.message} — try a rarer term or a different set. Your history is preserved.`,
        ),
      );
    } else {
      tableHost.append(errorBanner(`drill failed: ${(err as Error).message}`));
    }
  }
}

async function render(): Promise<void> {
  const app = root();
  if (!data) return;
  const { sweep, selection } = data;
  app.replaceChildren();
  if (selection.verdict === "no_clear_viewpoints") {
    app.append(
      noticeBanner(
        "No clear viewpoints: every cluster's conductance exceeds the threshold at every k. " +
          "The topic may not be controversial in this data.",
      ),
    );
  }
  const grid = el("div", { class: "grid" });
  app.append(grid);
  const geometry = sweepGeometry(sweep, selection.delta);
  grid.append(
    renderSweepChart(geometry, sweep, selection, currentK(), (k) => setState({ k })),
  );
  const clusterPanel = el("div", { class: "panel-host" });
  grid.append(clusterPanel);
  void loadClusterPanel(clusterPanel);
  const drillPanel = el("div", { class: "panel drill-panel" });
  app.append(drillPanel);
  void showViewpoint(drillPanel);
}

async function init(): Promise<void> {
  const app = root();
  app.replaceChildren(el("p", { class: "placeholder" }, "Loading snapshot…"));
  try {
    const [sweepResp, selection] = await Promise.all([getSweep(), getSelection()]);
    data = { sweep: sweepResp.rows, selection };
  } catch (err) {
    app.replaceChildren(errorBanner(`failed to load snapshot: ${(err as Error).message}`));
    return;
  }
  history = DrillHistory.fromQueries(state.viewpoint, state.history);
  window.addEventListener("popstate", () => {
    state = decodeState(window.location.search);
    history = DrillHistory.fromQueries(state.viewpoint, state.history);
    void render();
  });
  void render();
}

void init();
