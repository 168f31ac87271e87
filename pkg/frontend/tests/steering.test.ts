/** The MCDM steering loop: weight changes move the highlighted point.
 *
 * The decide endpoint is mocked with an independent weighted-sum oracle;
 * driving the workspace's sliders from uniform to (0.9, 0.1) must move the
 * highlight to a row with strictly smaller normalized f1.
 */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Store } from "../src/store.js";
import { McdmWorkspace } from "../src/workspaces/mcdm.js";
import {
  ZDT_FRONT,
  flush,
  jsonResponse,
  makeRunStatus,
  minMaxNormalize,
  mockFetch,
  weightedSumOracle,
} from "./helpers.js";

function oracleBackedFetch() {
  return mockFetch({
    "/api/mcdm/decide": (init) => {
      const body = JSON.parse(String(init?.body)) as { weights: number[]; method: string };
      const oracle = weightedSumOracle(ZDT_FRONT, body.weights);
      return jsonResponse({
        snapshot: {
          run_id: "run-1",
          method: body.method,
          weights: body.weights,
          raw_weights: body.weights,
          selected_index: oracle.index,
          score: oracle.score,
          normalized_row: oracle.normalizedRow,
          selected_values: ZDT_FRONT[oracle.index],
          created_at: "2026-01-01T00:00:00Z",
          front_hash: "abc",
          meta: {},
        },
        highlight_index: oracle.index,
        front: ZDT_FRONT,
      });
    },
  });
}

describe("steering loop", () => {
  let root: HTMLElement;
  let store: Store;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.appendChild(root);
    store = new Store();
  });

  async function applyWithSliders(
    workspaceRoot: HTMLElement,
    sliderValues: number[] | null,
  ): Promise<number> {
    if (sliderValues) {
      const sliders = [...workspaceRoot.querySelectorAll<HTMLInputElement>("input[type=range]")];
      expect(sliders.length).toBe(sliderValues.length);
      sliders.forEach((slider, j) => {
        slider.value = String(sliderValues[j]);
        slider.dispatchEvent(new Event("input"));
      });
    }
    const apply = [...workspaceRoot.querySelectorAll("button")].find(
      (b) => b.textContent === "Apply rule",
    )!;
    apply.click();
    await flush();
    await flush();
    const highlighted = workspaceRoot.querySelectorAll("circle.highlight");
    expect(highlighted.length).toBe(1);
    const circles = [...workspaceRoot.querySelectorAll("circle")];
    return circles.indexOf(highlighted[0] as SVGCircleElement);
  }

  it("moving weights from uniform to (0.9, 0.1) lowers the normalized f1", async () => {
    const { fetchFn, calls } = oracleBackedFetch();
    const api = new ApiClient("", fetchFn);
    new McdmWorkspace(root, api, store);
    store.update({ runs: [makeRunStatus(ZDT_FRONT)], selectedRun: "run-1" });

    const methodSelect = root.querySelector("select:nth-of-type(1)")!;
    const selects = [...root.querySelectorAll("select")];
    (selects[1] as HTMLSelectElement).value = "weighted_sum";
    void methodSelect;

    const uniformIndex = await applyWithSliders(root, null);
    const steeredIndex = await applyWithSliders(root, [0.9, 0.1]);

    const normalized = minMaxNormalize(ZDT_FRONT);
    expect(normalized[steeredIndex][0]).toBeLessThan(normalized[uniformIndex][0]);

    // submitted weights are always sum-normalized
    for (const call of calls) {
      const weights = (call.body as { weights: number[] }).weights;
      const total = weights.reduce((a, b) => a + b, 0);
      expect(Math.abs(total - 1)).toBeLessThan(1e-12);
    }
    const last = calls[calls.length - 1].body as { weights: number[] };
    expect(last.weights[0]).toBeCloseTo(0.9, 12);
    expect(last.weights[1]).toBeCloseTo(0.1, 12);

    // the oracle agrees with what got highlighted
    expect(steeredIndex).toBe(weightedSumOracle(ZDT_FRONT, [0.9, 0.1]).index);
    expect(uniformIndex).toBe(weightedSumOracle(ZDT_FRONT, [0.5, 0.5]).index);
  });

  it("re-applying after a weight change immediately re-highlights", async () => {
    const { fetchFn } = oracleBackedFetch();
    const api = new ApiClient("", fetchFn);
    new McdmWorkspace(root, api, store);
    store.update({ runs: [makeRunStatus(ZDT_FRONT)], selectedRun: "run-1" });

    const first = await applyWithSliders(root, [0.1, 0.9]);
    const second = await applyWithSliders(root, [0.9, 0.1]);
    expect(first).not.toBe(second);
    // exactly one highlight is present after each application
    expect(root.querySelectorAll("circle.highlight").length).toBe(1);
  });
});
