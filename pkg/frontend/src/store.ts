/** Single serialized UI store.
 *
 * Selector invariants: selections only ever reference ids present in the
 * fetched catalogs, and the MCDM weight vector always has one entry per
 * objective of the selected run.
 */

import type { AlgorithmInfo, MetricInfo, ProblemInfo, RunStatus } from "./types.js";
import { uniformWeights } from "./weights.js";

export type Workspace = "test" | "experiment" | "mcdm" | "formulation";

export interface ViewState {
  workspace: Workspace;
  problems: ProblemInfo[];
  algorithms: AlgorithmInfo[];
  metrics: MetricInfo[];
  selectedProblem: string | null;
  selectedAlgorithm: string | null;
  selectedMetrics: string[];
  runs: RunStatus[];
  selectedRun: string | null;
  mcdmWeights: number[];
}

type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState = {
    workspace: "test",
    problems: [],
    algorithms: [],
    metrics: [],
    selectedProblem: null,
    selectedAlgorithm: null,
    selectedMetrics: ["igd"],
    runs: [],
    selectedRun: null,
    mcdmWeights: uniformWeights(2),
  };
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  update(patch: Partial<ViewState>): void {
    this.state = this.sanitize({ ...this.state, ...patch });
    for (const listener of [...this.listeners]) {
      listener(this.state);
    }
  }

  private sanitize(state: ViewState): ViewState {
    const problemIds = new Set(state.problems.map((p) => p.id));
    const algorithmIds = new Set(state.algorithms.map((a) => a.id));
    if (state.selectedProblem !== null && !problemIds.has(state.selectedProblem)) {
      state.selectedProblem = state.problems[0]?.id ?? null;
    }
    if (state.selectedAlgorithm !== null && !algorithmIds.has(state.selectedAlgorithm)) {
      state.selectedAlgorithm = state.algorithms[0]?.id ?? null;
    }
    const run = state.runs.find((r) => r.run_id === state.selectedRun);
    const m = run?.payload?.problem.n_obj ?? state.mcdmWeights.length;
    if (state.mcdmWeights.length !== m) {
      state.mcdmWeights = uniformWeights(m);
    }
    return state;
  }
}
