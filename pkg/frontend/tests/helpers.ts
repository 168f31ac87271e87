/** Shared fixtures and mocks for the component tests. */

import type { RunEvent, RunPayload, RunStatus } from "../src/types.js";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** fetch stub backed by a route table; records every request. */
export function mockFetch(
  routes: Record<string, (init?: RequestInit) => unknown>,
): { fetchFn: (input: string, init?: RequestInit) => Promise<Response>; calls: { url: string; body?: unknown }[] } {
  const calls: { url: string; body?: unknown }[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ url: path, body });
    for (const [route, handler] of Object.entries(routes)) {
      if (path.startsWith(route)) {
        const result = handler(init);
        return result instanceof Response ? result : jsonResponse(result);
      }
    }
    return jsonResponse({ code: "not_found", message: `no mock for ${path}` }, 404);
  };
  return { fetchFn, calls };
}

export const ZDT_FRONT: number[][] = [
  [0.0, 1.0],
  [0.2, 0.55],
  [0.5, 0.3],
  [0.8, 0.11],
  [1.0, 0.0],
];

export function minMaxNormalize(front: number[][]): number[][] {
  const m = front[0].length;
  const lo = Array.from({ length: m }, (_, j) => Math.min(...front.map((r) => r[j])));
  const hi = Array.from({ length: m }, (_, j) => Math.max(...front.map((r) => r[j])));
  return front.map((row) =>
    row.map((v, j) => (hi[j] > lo[j] ? (v - lo[j]) / (hi[j] - lo[j]) : 0)),
  );
}

/** Independent weighted-sum oracle: argmin of w·normalized, lowest index. */
export function weightedSumOracle(
  front: number[][],
  weights: number[],
): { index: number; score: number; normalizedRow: number[] } {
  const total = weights.reduce((a, b) => a + b, 0);
  const w = weights.map((v) => v / total);
  const norm = minMaxNormalize(front);
  const scores = norm.map((row) => row.reduce((acc, v, j) => acc + w[j] * v, 0));
  let index = 0;
  for (let i = 1; i < scores.length; i++) {
    if (scores[i] < scores[index]) index = i;
  }
  return { index, score: scores[index], normalizedRow: norm[index] };
}

export function makeRunPayload(front: number[][]): RunPayload {
  return {
    schema_version: 1,
    run_id: "run-1",
    problem: { id: "zdt1", n_obj: front[0].length, n_var: 6, overrides: {} },
    algorithm: { id: "nsga2", config: { pop_size: 12 } },
    seed: 7,
    backend: "cpu-batch",
    fe_budget: 120,
    metric_histories: [
      { metric_id: "igd", points: [[12, 0.8], [24, 0.5], [36, 0.31]] },
    ],
    final_F: front,
    nondominated_indices: front.map((_, i) => i),
    wall_time_ms: 5,
    log: [],
    meta: {},
  };
}

export function makeRunStatus(front: number[][]): RunStatus {
  return {
    run_id: "run-1",
    status: "finished",
    request: {},
    error: "",
    payload_path: "/store/run-1.run.json",
    payload: makeRunPayload(front),
  };
}

export function generationEvent(
  generation: number,
  feUsed: number,
  front: number[][],
  igdPoints: [number, number | null][],
): RunEvent {
  return {
    run_id: "run-1",
    kind: "generation",
    fe_used: feUsed,
    payload: {
      generation,
      fe_used: feUsed,
      fe_budget: 120,
      front,
      histories: { igd: igdPoints },
    },
  };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
