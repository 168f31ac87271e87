/** Weight slider helpers and view-state selector invariants. */

import { describe, expect, it } from "vitest";

import { Store } from "../src/store.js";
import { normalizeWeights, uniformWeights } from "../src/weights.js";
import { ZDT_FRONT, makeRunStatus } from "./helpers.js";

describe("normalizeWeights", () => {
  it("sums to one", () => {
    const w = normalizeWeights([3, 1]);
    expect(w[0]).toBeCloseTo(0.75, 12);
    expect(w[1]).toBeCloseTo(0.25, 12);
    expect(w.reduce((a, b) => a + b, 0)).toBeCloseTo(1, 12);
  });

  it("all-zero input falls back to uniform", () => {
    expect(normalizeWeights([0, 0, 0])).toEqual(uniformWeights(3));
  });

  it("negative and non-finite entries are clipped to zero", () => {
    const w = normalizeWeights([-5, 1, Number.NaN]);
    expect(w).toEqual([0, 1, 0]);
  });
});

describe("store selector invariants", () => {
  it("selections fall back to catalog members", () => {
    const store = new Store();
    store.update({
      problems: [
        { id: "zdt1", name: "ZDT1", n_obj: 2, n_var: 30, scalable_obj: false,
          tags: [], has_closed_front: true },
      ],
      algorithms: [
        { id: "nsga2", name: "NSGA-II", tags: [], default_config: {} },
      ],
      selectedProblem: "not-in-catalog",
      selectedAlgorithm: "also-missing",
    });
    expect(store.get().selectedProblem).toBe("zdt1");
    expect(store.get().selectedAlgorithm).toBe("nsga2");
  });

  it("weight vector always matches the selected run's objective count", () => {
    const store = new Store();
    const status = makeRunStatus(ZDT_FRONT.map((row) => [...row, 0.5, 0.2]));
    store.update({ runs: [status], selectedRun: status.run_id });
    expect(store.get().mcdmWeights.length).toBe(4);
    expect(store.get().mcdmWeights.reduce((a, b) => a + b, 0)).toBeCloseTo(1, 12);
  });
});
