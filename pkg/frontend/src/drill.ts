/** Drill panel model: rows are a pure, untouched projection of the API
 * payload (scores and ranks pass through as the JSON values, no rounding or
 * recomputation), plus an append-only breadcrumb with a payload cache so
 * back-navigation never refetches. */

import type { TermsPayload } from "./api.js";
import { drillKey } from "./api.js";

export interface DrillRow {
  term: string;
  score: string;
  subjectRank: string;
  contrastRank: string;
  subjectFreq: string;
}

/** String(x) of a JSON-parsed double prints the shortest round-trip form,
 * i.e. exactly the digits the server serialized. */
export function buildDrillRows(payload: TermsPayload): DrillRow[] {
  return payload.terms.map((entry) => ({
    term: entry.term,
    score: String(entry.score),
    subjectRank: String(entry.subject_rank),
    contrastRank: entry.contrast_rank === null ? "absent" : String(entry.contrast_rank),
    subjectFreq: String(entry.subject_freq),
  }));
}

export interface BreadcrumbEntry {
  viewpoint: number;
  terms: string[];
  label: string;
}

export class DrillHistory {
  private entries: BreadcrumbEntry[] = [];
  private cache = new Map<string, TermsPayload>();

  get length(): number {
    return this.entries.length;
  }

  list(): readonly BreadcrumbEntry[] {
    return this.entries;
  }

  /** Append a completed drill; the breadcrumb is append-only by design. */
  push(viewpoint: number, terms: string[], n: number, m: number, payload: TermsPayload): void {
    this.entries.push({ viewpoint, terms: [...terms], label: terms.join(" + ") });
    this.cache.set(drillKey(viewpoint, terms, n, m), payload);
  }

  /** Cached payload for back-navigation; undefined means it must be fetched
   * (e.g. the breadcrumb came from a shared URL). */
  restore(viewpoint: number, terms: string[], n: number, m: number): TermsPayload | undefined {
    return this.cache.get(drillKey(viewpoint, terms, n, m));
  }

  queries(): string[][] {
    return this.entries.map((e) => [...e.terms]);
  }

  static fromQueries(viewpoint: number | null, queries: string[][]): DrillHistory {
    const history = new DrillHistory();
    if (viewpoint === null) return history;
    for (const terms of queries) {
      history.entries.push({ viewpoint, terms: [...terms], label: terms.join(" + ") });
    }
    return history;
  }
}
