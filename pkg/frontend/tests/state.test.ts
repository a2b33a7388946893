import { describe, expect, it } from "vitest";

import { decodeState, defaultState, encodeState, statesEqual } from "../src/state.js";

describe("explorer state in the URL", () => {
  it("round-trips every field", () => {
    const state = {
      k: 3,
      viewpoint: 1,
      terms: ["#voteyes", "#yes"],
      n: 150,
      m: 8,
      history: [["murphy"], ["#voteyes"], ["#voteyes", "#yes"]],
    };
    const decoded = decodeState(encodeState(state));
    expect(decoded).toEqual(state);
  });

  it("round-trips the empty default", () => {
    expect(decodeState(encodeState(defaultState()))).toEqual(defaultState());
    expect(encodeState(defaultState())).toBe("");
  });

  it("keeps hashtags intact through URL encoding", () => {
    const state = { ...defaultState(), viewpoint: 0, terms: ["#brexit"] };
    const query = encodeState(state);
    expect(query).toContain("%23brexit");
    expect(decodeState(query).terms).toEqual(["#brexit"]);
  });

  it("survives a real query-string prefix as a fresh session would see it", () => {
    const state = { ...defaultState(), k: 2, viewpoint: 0, terms: ["alpha", "beta"] };
    const url = `?${encodeState(state)}`;
    expect(statesEqual(decodeState(url), state)).toBe(true);
  });

  it("ignores malformed numbers", () => {
    const decoded = decodeState("k=banana&n=notanumber");
    expect(decoded.k).toBeNull();
    expect(decoded.n).toBe(200);
  });

  it("drops empty history groups", () => {
    const decoded = decodeState("vp=0&hist=a%2Cb%3B%3Bc");
    expect(decoded.history).toEqual([["a", "b"], ["c"]]);
  });
});
