/** Every number the UI shows is traceable to an API response. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { convergenceModel, frontModel, renderFront } from "../src/charts.js";
import { formatCell } from "../src/format.js";
import { summaryTableElement, testsElement } from "../src/workspaces/experiment.js";
import type { SummaryTable } from "../src/types.js";
import { ZDT_FRONT, jsonResponse, makeRunPayload, mockFetch, weightedSumOracle } from "./helpers.js";

const SUMMARY: SummaryTable = {
  metric_id: "igd",
  direction: "minimize",
  algorithms: ["nsga2", "moead"],
  rows: [
    {
      problem_id: "zdt1",
      n_obj: 2,
      n_var: 30,
      cells: {
        nsga2: { mean: 0.2, std: 0.1, n: 3, best: true },
        moead: { mean: 0.21, std: 0.02, n: 3, best: false },
      },
    },
    {
      problem_id: "zdt2",
      n_obj: 2,
      n_var: 10,
      cells: {
        nsga2: { mean: null, std: null, n: 3, best: false },
        moead: { mean: 0.4, std: 0, n: 1, best: true },
      },
    },
  ],
};

describe("summary table parity", () => {
  it("renders exactly the API cell values, best cells in bold", async () => {
    const { fetchFn } = mockFetch({
      "/api/experiments/e1/summary": () => jsonResponse({ status: "finished", summary: SUMMARY }),
    });
    const api = new ApiClient("", fetchFn);
    const table = await api.summary("e1", "igd");
    const element = summaryTableElement(table);
    const rows = [...element.querySelectorAll("tr")].slice(1);

    const firstCells = [...rows[0].querySelectorAll("td")].map((td) => td.textContent);
    expect(firstCells).toEqual(["zdt1", "2", "30", formatCell(0.2, 0.1), formatCell(0.21, 0.02)]);
    expect(rows[0].querySelectorAll("td b").length).toBe(1);
    expect(rows[0].querySelector("td.best")?.textContent).toBe(formatCell(0.2, 0.1));

    const secondCells = [...rows[1].querySelectorAll("td")].map((td) => td.textContent);
    expect(secondCells[3]).toBe("—"); // null mean renders distinctly
    expect(rows[1].querySelector("td.best")?.textContent).toBe(formatCell(0.4, 0));
  });
});

describe("mcdm highlight parity", () => {
  it("highlight index equals the snapshot's selected index", async () => {
    const oracle = weightedSumOracle(ZDT_FRONT, [0.5, 0.5]);
    const { fetchFn, calls } = mockFetch({
      "/api/mcdm/decide": () =>
        jsonResponse({
          snapshot: {
            run_id: "run-1",
            method: "weighted_sum",
            weights: [0.5, 0.5],
            raw_weights: null,
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
        }),
    });
    const api = new ApiClient("", fetchFn);
    const response = await api.decide("run-1", "weighted_sum", [0.5, 0.5]);
    expect(calls[0].body).toEqual({ run_id: "run-1", method: "weighted_sum", weights: [0.5, 0.5] });

    const model = frontModel(response.front, response.highlight_index);
    expect(model.highlight).toBe(response.snapshot.selected_index);

    const svg = renderFront(model);
    const highlighted = [...svg.querySelectorAll("circle.highlight")];
    expect(highlighted.length).toBe(1);
    const points = [...svg.querySelectorAll("circle")];
    expect(points.indexOf(highlighted[0] as SVGCircleElement)).toBe(oracle.index);
  });
});

describe("analytical front overlay parity", () => {
  it("overlay points equal the API front rows", async () => {
    const reference = [
      [0, 1],
      [0.5, 1 - Math.sqrt(0.5)],
      [1, 0],
    ];
    const { fetchFn } = mockFetch({
      "/api/problems/zdt1/front": () => jsonResponse({ problem_id: "zdt1", front: reference }),
    });
    const api = new ApiClient("", fetchFn);
    const front = await api.problemFront("zdt1", 3);
    const model = frontModel(ZDT_FRONT, null, front!);
    expect(model.kind).toBe("scatter");
    if (model.kind === "scatter") {
      expect(model.overlay).toEqual(reference.map(([x, y]) => ({ x, y })));
    }
    const svg = renderFront(model);
    expect(svg.querySelectorAll("path").length).toBe(1);
  });

  it("problems without a closed front yield null", async () => {
    const { fetchFn } = mockFetch({
      "/api/problems/custom@v1/front": () =>
        jsonResponse({ code: "no_reference_front", message: "none" }, 404),
    });
    const api = new ApiClient("", fetchFn);
    expect(await api.problemFront("custom@v1")).toBeNull();
  });
});

describe("convergence chart parity", () => {
  it("chart points equal the payload metric history", () => {
    const payload = makeRunPayload(ZDT_FRONT);
    const histories = Object.fromEntries(
      payload.metric_histories.map((h) => [h.metric_id, h.points]),
    );
    const series = convergenceModel(histories, "igd");
    expect(series.points).toEqual([
      { fe: 12, value: 0.8 },
      { fe: 24, value: 0.5 },
      { fe: 36, value: 0.31 },
    ]);
  });
});

describe("statistical test panel parity", () => {
  it("shows the API statistics verbatim", () => {
    const element = testsElement({
      wilcoxon: [
        { pair: ["nsga2", "moead"], test: "wilcoxon_signed_rank", statistic: 3,
          p_value: 0.03125, n: 6, method_note: "exact(n<=12)" },
      ],
      friedman: { test: "friedman", statistic: 6.0, p_value: 0.0498, n: 3,
        method_note: "chi_square(df=2)" },
    });
    const lines = [...element.querySelectorAll(".test-line")].map((n) => n.textContent);
    expect(lines[0]).toContain("W=3");
    expect(lines[0]).toContain("p=0.0313");  // 0.03125 at four decimals
    expect(lines[1]).toContain("chi2=6.000");
  });
});
