/** Run event stream handling.
 *
 * Generation events carry immutable snapshots (current front + cumulative
 * metric histories), so the view model is always rebuilt from the latest
 * snapshot rather than mutated incrementally. That makes a replayed
 * stream (started, last generation, terminal) render exactly the same
 * charts as an uninterrupted one.
 */

import type { GenerationPayload, HistoryPoint, RunEvent, StartedPayload } from "./types.js";

export interface RunView {
  runId: string;
  started: StartedPayload | null;
  generation: number;
  feUsed: number;
  feBudget: number;
  front: number[][];
  histories: Record<string, HistoryPoint[]>;
  finished: boolean;
  failed: boolean;
  error: string;
  log: string[];
}

export function emptyRunView(runId: string): RunView {
  return {
    runId,
    started: null,
    generation: -1,
    feUsed: 0,
    feBudget: 0,
    front: [],
    histories: {},
    finished: false,
    failed: false,
    error: "",
    log: [],
  };
}

export function applyEvent(view: RunView, event: RunEvent): RunView {
  const next: RunView = { ...view, feUsed: Math.max(view.feUsed, event.fe_used) };
  switch (event.kind) {
    case "started": {
      const payload = event.payload as unknown as StartedPayload;
      next.started = payload;
      next.feBudget = payload.fe_budget;
      next.log = [...view.log, `started ${payload.algorithm_id} on ${payload.problem_id} (seed ${payload.seed}, budget ${payload.fe_budget})`];
      break;
    }
    case "generation": {
      const payload = event.payload as unknown as GenerationPayload;
      next.generation = payload.generation;
      next.feBudget = payload.fe_budget;
      next.front = payload.front;
      next.histories = payload.histories;
      next.log = [...view.log, `generation ${payload.generation}: fe ${payload.fe_used}/${payload.fe_budget}, front size ${payload.front.length}`];
      break;
    }
    case "metric_point":
      // cumulative histories arrive with each generation snapshot; the
      // granular event only feeds the log
      next.log = [
        ...view.log,
        `metric ${String(event.payload.metric_id)} = ${String(event.payload.value)} at fe ${event.fe_used}`,
      ];
      break;
    case "finished":
      next.finished = true;
      next.log = [...view.log, `finished at fe ${event.fe_used}`];
      break;
    case "failed":
      next.finished = true;
      next.failed = true;
      next.error = String(event.payload.error ?? "run failed");
      next.log = [...view.log, `failed: ${next.error}`];
      break;
  }
  return next;
}

export function reduceEvents(runId: string, events: RunEvent[]): RunView {
  return events.reduce(applyEvent, emptyRunView(runId));
}

export type Unsubscribe = () => void;

/** Subscribe to a run's SSE endpoint; closes itself on the terminal event. */
export function subscribeRunEvents(
  url: string,
  onEvent: (event: RunEvent) => void,
  onClose?: () => void,
): Unsubscribe {
  const source = new EventSource(url);
  const kinds: string[] = ["started", "generation", "metric_point", "finished", "failed"];
  for (const kind of kinds) {
    source.addEventListener(kind, (raw: MessageEvent) => {
      try {
        const event = JSON.parse(raw.data) as RunEvent;
        onEvent(event);
        if (kind === "finished" || kind === "failed") {
          source.close();
          onClose?.();
        }
      } catch {
        /* malformed frame: ignore */
      }
    });
  }
  return () => source.close();
}
