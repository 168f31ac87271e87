/** Wire types mirroring the HTTP API payloads. */

export interface ProblemInfo {
  id: string;
  name: string;
  n_obj: number;
  n_var: number;
  scalable_obj: boolean;
  tags: string[];
  has_closed_front: boolean;
  versions?: string[];
}

export interface AlgorithmInfo {
  id: string;
  name: string;
  tags: string[];
  default_config: Record<string, number | string | null>;
}

export interface MetricInfo {
  id: string;
  name: string;
  direction: "minimize" | "maximize";
  requires_reference_front: boolean;
  parameters: Record<string, unknown>;
}

export type EventKind = "started" | "generation" | "metric_point" | "finished" | "failed";

/** [fe, value]; null = undefined metric value (e.g. no reference front). */
export type HistoryPoint = [number, number | null];

export interface StartedPayload {
  problem_id: string;
  algorithm_id: string;
  seed: number;
  fe_budget: number;
  pop_size: number;
  backend: string;
  metrics: string[];
}

export interface GenerationPayload {
  generation: number;
  fe_used: number;
  fe_budget: number;
  front: number[][];
  histories: Record<string, HistoryPoint[]>;
}

export interface RunEvent {
  run_id: string;
  kind: EventKind;
  fe_used: number;
  payload: Record<string, unknown>;
}

export interface MetricHistory {
  metric_id: string;
  points: HistoryPoint[];
}

export interface RunPayload {
  schema_version: number;
  run_id: string;
  problem: { id: string; n_obj: number; n_var: number; overrides: Record<string, unknown> };
  algorithm: { id: string; config: Record<string, unknown> };
  seed: number;
  backend: string;
  fe_budget: number;
  metric_histories: MetricHistory[];
  final_F: number[][];
  nondominated_indices: number[];
  wall_time_ms: number;
  log: string[];
  meta: Record<string, string>;
}

export interface RunStatus {
  run_id: string;
  status: "running" | "finished" | "failed";
  request: Record<string, unknown>;
  error: string;
  payload_path: string | null;
  payload?: RunPayload;
}

export interface SummaryCell {
  mean: number | null;
  std: number | null;
  n: number;
  best: boolean;
}

export interface SummaryRow {
  problem_id: string;
  n_obj: number;
  n_var: number;
  cells: Record<string, SummaryCell>;
}

export interface SummaryTable {
  metric_id: string;
  direction: string;
  algorithms: string[];
  rows: SummaryRow[];
}

export interface ExperimentStatus {
  experiment_id: string;
  status: "running" | "finished";
  error: string;
  total_runs: number;
  completed?: number;
  failed?: number;
  failures?: Record<string, unknown>[];
}

export interface TestResultBody {
  test: string;
  statistic: number;
  p_value: number;
  n: number;
  method_note: string;
}

export interface PairwiseTest extends TestResultBody {
  pair: [string, string];
}

export interface NonparametricTests {
  wilcoxon: PairwiseTest[];
  friedman: TestResultBody | null;
}

export interface DecisionSnapshot {
  run_id: string;
  method: string;
  weights: number[];
  raw_weights: number[] | null;
  selected_index: number;
  score: number;
  normalized_row: number[];
  selected_values: number[];
  created_at: string;
  front_hash: string;
  meta: Record<string, string>;
}

export interface DecideResponse {
  snapshot: DecisionSnapshot;
  highlight_index: number;
  front: number[][];
}

export interface StageResult {
  stage: string;
  passed: boolean;
  diagnostics: string[];
}

export interface VerificationReport {
  stages: StageResult[];
  accepted: boolean;
  meta: Record<string, string>;
}

export interface ProblemSourceDoc {
  name: string;
  n_var: number;
  n_obj: number;
  n_ieq: number;
  n_eq: number;
  lower: number | number[];
  upper: number | number[];
  objectives: string[];
  constraints_ieq: string[];
  constraints_eq: string[];
  provenance: string;
  raw_prompt: string | null;
}
