/** Reconnect replay renders the same final chart as an uninterrupted stream. */

import { describe, expect, it } from "vitest";

import { convergenceModel, frontModel } from "../src/charts.js";
import { reduceEvents } from "../src/events.js";
import type { RunEvent } from "../src/types.js";
import { generationEvent } from "./helpers.js";

const started: RunEvent = {
  run_id: "run-1",
  kind: "started",
  fe_used: 0,
  payload: {
    problem_id: "zdt1",
    algorithm_id: "nsga2",
    seed: 7,
    fe_budget: 120,
    pop_size: 12,
    backend: "cpu-batch",
    metrics: ["igd"],
  },
};

const finished: RunEvent = {
  run_id: "run-1",
  kind: "finished",
  fe_used: 120,
  payload: { fe_used: 120, wall_time_ms: 9 },
};

function fullStream(): RunEvent[] {
  const events: RunEvent[] = [started];
  const fronts = [
    [[0.4, 0.9], [0.8, 0.5]],
    [[0.2, 0.8], [0.6, 0.4]],
    [[0.1, 0.7], [0.5, 0.3], [0.9, 0.1]],
  ];
  const histories: [number, number | null][][] = [
    [[40, 0.9]],
    [[40, 0.9], [80, 0.6]],
    [[40, 0.9], [80, 0.6], [120, 0.35]],
  ];
  fronts.forEach((front, i) => {
    events.push({
      run_id: "run-1",
      kind: "metric_point",
      fe_used: (i + 1) * 40,
      payload: { metric_id: "igd", fe: (i + 1) * 40, value: histories[i][i][1] },
    });
    events.push(generationEvent(i, (i + 1) * 40, front, histories[i]));
  });
  events.push(finished);
  return events;
}

describe("event replay", () => {
  it("replay snapshot reproduces the uninterrupted final charts", () => {
    const full = fullStream();
    const lastGeneration = [...full].reverse().find((e) => e.kind === "generation")!;
    const replay: RunEvent[] = [started, lastGeneration, finished];

    const uninterrupted = reduceEvents("run-1", full);
    const reconnected = reduceEvents("run-1", replay);

    // chart inputs are identical
    expect(reconnected.front).toEqual(uninterrupted.front);
    expect(reconnected.histories).toEqual(uninterrupted.histories);
    expect(reconnected.finished).toBe(true);

    // and so are the derived chart models
    const frontA = frontModel(uninterrupted.front);
    const frontB = frontModel(reconnected.front);
    expect(JSON.stringify(frontB)).toBe(JSON.stringify(frontA));
    const convergenceA = convergenceModel(uninterrupted.histories, "igd");
    const convergenceB = convergenceModel(reconnected.histories, "igd");
    expect(convergenceB).toEqual(convergenceA);
  });

  it("null metric values are skipped, not plotted as zeros", () => {
    const view = reduceEvents("run-1", [
      started,
      generationEvent(0, 40, [[0.5, 0.5]], [[40, null]]),
      generationEvent(1, 80, [[0.4, 0.4]], [[40, null], [80, 0.3]]),
      finished,
    ]);
    const series = convergenceModel(view.histories, "igd");
    expect(series.points).toEqual([{ fe: 80, value: 0.3 }]);
  });

  it("failed runs surface the error and still terminate the view", () => {
    const view = reduceEvents("run-1", [
      started,
      { run_id: "run-1", kind: "failed", fe_used: 12, payload: { error: "non-finite" } },
    ]);
    expect(view.failed).toBe(true);
    expect(view.finished).toBe(true);
    expect(view.error).toContain("non-finite");
  });
});
