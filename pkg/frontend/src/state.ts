/** Explorer state, fully round-trippable through the URL query string so any
 * view is shareable and reopening a link reproduces it exactly. */

export interface ExplorerState {
  /** selected partition k; null falls back to the server's chosen k */
  k: number | null;
  /** selected viewpoint cluster; null until one is picked */
  viewpoint: number | null;
  /** current drill term set (empty = showing the viewpoint description) */
  terms: string[];
  n: number;
  m: number;
  /** breadcrumb of past drill queries, oldest first */
  history: string[][];
}

export const DEFAULT_N = 200;
export const DEFAULT_M = 5;

export function defaultState(): ExplorerState {
  return { k: null, viewpoint: null, terms: [], n: DEFAULT_N, m: DEFAULT_M, history: [] };
}

const HIST_GROUP = ";";
const HIST_TERM = ",";

export function encodeState(state: ExplorerState): string {
  const params = new URLSearchParams();
  if (state.k !== null) params.set("k", String(state.k));
  if (state.viewpoint !== null) params.set("vp", String(state.viewpoint));
  if (state.terms.length) params.set("terms", state.terms.join(HIST_TERM));
  if (state.n !== DEFAULT_N) params.set("n", String(state.n));
  if (state.m !== DEFAULT_M) params.set("m", String(state.m));
  if (state.history.length) {
    params.set("hist", state.history.map((t) => t.join(HIST_TERM)).join(HIST_GROUP));
  }
  return params.toString();
}

function parseIntOr(value: string | null, fallback: number): number {
  if (value === null) return fallback;
  const parsed = Number.parseInt(value, 10);
  return Number.isFinite(parsed) ? parsed : fallback;
}

export function decodeState(query: string): ExplorerState {
  const params = new URLSearchParams(query);
  const state = defaultState();
  if (params.has("k")) {
    const k = Number.parseInt(params.get("k") ?? "", 10);
    if (Number.isFinite(k)) state.k = k;
  }
  if (params.has("vp")) {
    const vp = Number.parseInt(params.get("vp") ?? "", 10);
    if (Number.isFinite(vp)) state.viewpoint = vp;
  }
  const terms = params.get("terms");
  if (terms) state.terms = terms.split(HIST_TERM).filter((t) => t.length > 0);
  state.n = parseIntOr(params.get("n"), DEFAULT_N);
  state.m = parseIntOr(params.get("m"), DEFAULT_M);
  const hist = params.get("hist");
  if (hist) {
    state.history = hist
      .split(HIST_GROUP)
      .map((group) => group.split(HIST_TERM).filter((t) => t.length > 0))
      .filter((group) => group.length > 0);
  }
  return state;
}

export function statesEqual(a: ExplorerState, b: ExplorerState): boolean {
  return encodeState(a) === encodeState(b);
}
