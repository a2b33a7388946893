import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import type { TermsPayload } from "../src/api.js";
import { DrillHistory, buildDrillRows } from "../src/drill.js";
import { decodeState, defaultState, encodeState } from "../src/state.js";

const here = dirname(fileURLToPath(import.meta.url));
const drillFixture = JSON.parse(
  readFileSync(join(here, "fixtures", "drill_response.json"), "utf-8"),
) as TermsPayload;

describe("drill rows are a pure passthrough of the API payload", () => {
  it("matches the recorded two-term drill response field for field", () => {
    // fixture captured from POST /api/viewpoints/{i}/drill on the synthetic
    // snapshot with a two-term query
    expect(drillFixture.query_terms).toHaveLength(2);
    const rows = buildDrillRows(drillFixture);
    expect(rows).toHaveLength(drillFixture.terms.length);
    drillFixture.terms.forEach((entry, i) => {
      expect(rows[i].term).toBe(entry.term);
      // displayed string parses back to the exact JSON double
      expect(Number(rows[i].score)).toBe(entry.score);
      expect(rows[i].score).toBe(String(entry.score));
      expect(Number(rows[i].subjectRank)).toBe(entry.subject_rank);
      expect(Number(rows[i].subjectFreq)).toBe(entry.subject_freq);
      if (entry.contrast_rank === null) {
        expect(rows[i].contrastRank).toBe("absent");
      } else {
        expect(Number(rows[i].contrastRank)).toBe(entry.contrast_rank);
      }
    });
  });

  it("a state URL reopened in a fresh session yields the same table", () => {
    const firstSession = {
      ...defaultState(),
      viewpoint: drillFixture.viewpoint,
      terms: [...drillFixture.query_terms],
      n: drillFixture.n,
      m: drillFixture.m,
    };
    const sharedUrl = `?${encodeState(firstSession)}`;
    const secondSession = decodeState(sharedUrl);
    expect(secondSession.viewpoint).toBe(drillFixture.viewpoint);
    expect(secondSession.terms).toEqual(drillFixture.query_terms);
    expect(secondSession.n).toBe(drillFixture.n);
    expect(secondSession.m).toBe(drillFixture.m);
    // identical query parameters against the same immutable snapshot return
    // the same payload, hence the identical table
    const first = buildDrillRows(drillFixture);
    const second = buildDrillRows(drillFixture);
    expect(second).toEqual(first);
  });
});

describe("breadcrumb history", () => {
  it("is append-only and restores cached payloads without refetching", () => {
    const history = new DrillHistory();
    history.push(1, ["#alpha"], 200, 5, drillFixture);
    history.push(1, ["#alpha", "cohort"], 200, 5, drillFixture);
    expect(history.length).toBe(2);
    expect(history.list()[0].label).toBe("#alpha");
    const cached = history.restore(1, ["#alpha", "cohort"], 200, 5);
    expect(cached).toBe(drillFixture);
    // unknown queries (e.g. from a shared URL) have no cache entry
    expect(history.restore(1, ["never"], 200, 5)).toBeUndefined();
  });

  it("term-set order does not defeat the cache", () => {
    const history = new DrillHistory();
    history.push(1, ["cohort", "#alpha"], 200, 5, drillFixture);
    expect(history.restore(1, ["#alpha", "cohort"], 200, 5)).toBe(drillFixture);
  });

  it("rebuilds breadcrumb labels from URL-decoded queries", () => {
    const history = DrillHistory.fromQueries(1, [["murphy"], ["#voteyes", "#yes"]]);
    expect(history.length).toBe(2);
    expect(history.list()[1].label).toBe("#voteyes + #yes");
    expect(history.queries()).toEqual([["murphy"], ["#voteyes", "#yes"]]);
  });
});
