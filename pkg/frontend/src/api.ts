/** Thin typed client for the workbench HTTP API.
 *
 * The UI computes no domain results: every number it shows comes through
 * this client. fetch is injectable so component tests can mock the API.
 */

import type {
  AlgorithmInfo,
  DecideResponse,
  ExperimentStatus,
  MetricInfo,
  NonparametricTests,
  ProblemInfo,
  ProblemSourceDoc,
  RunStatus,
  SummaryTable,
  VerificationReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail?: unknown,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string): string {
    return `${this.base.replace(/\/$/, "")}${path}`;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.url(path), init);
    if (!response.ok) {
      let code = "http_error";
      let message = `${response.status}`;
      let detail: unknown;
      try {
        const body = (await response.json()) as Record<string, unknown>;
        code = String(body.code ?? code);
        message = String(body.message ?? message);
        detail = body.detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, message, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async problems(): Promise<ProblemInfo[]> {
    return (await this.request<{ problems: ProblemInfo[] }>("/api/problems")).problems;
  }

  async algorithms(): Promise<AlgorithmInfo[]> {
    return (await this.request<{ algorithms: AlgorithmInfo[] }>("/api/algorithms")).algorithms;
  }

  async metrics(): Promise<MetricInfo[]> {
    return (await this.request<{ metrics: MetricInfo[] }>("/api/metrics")).metrics;
  }

  /** Closed-form reference front rows, or null when the problem has none. */
  async problemFront(problemId: string, points = 200): Promise<number[][] | null> {
    try {
      const body = await this.request<{ front: number[][] }>(
        `/api/problems/${encodeURIComponent(problemId)}/front?points=${points}`,
      );
      return body.front;
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) return null;
      throw error;
    }
  }

  async startRun(body: Record<string, unknown>): Promise<string> {
    return (await this.post<{ run_id: string }>("/api/runs", body)).run_id;
  }

  run(runId: string): Promise<RunStatus> {
    return this.request<RunStatus>(`/api/runs/${runId}`);
  }

  eventsUrl(runId: string): string {
    return this.url(`/api/runs/${runId}/events`);
  }

  async startExperiment(plan: Record<string, unknown>): Promise<string> {
    return (await this.post<{ experiment_id: string }>("/api/experiments", plan)).experiment_id;
  }

  experiment(id: string): Promise<ExperimentStatus> {
    return this.request<ExperimentStatus>(`/api/experiments/${id}`);
  }

  async summary(id: string, metric: string): Promise<SummaryTable> {
    const body = await this.request<{ summary: SummaryTable }>(
      `/api/experiments/${id}/summary?metric=${encodeURIComponent(metric)}`,
    );
    return body.summary;
  }

  async exportText(id: string, metric: string, format: "csv" | "latex"): Promise<string> {
    const response = await this.fetchFn(
      this.url(`/api/experiments/${id}/export?metric=${encodeURIComponent(metric)}&format=${format}`),
    );
    if (!response.ok) throw new ApiError(response.status, "export_failed", "export failed");
    return response.text();
  }

  tests(id: string, metric: string): Promise<NonparametricTests> {
    return this.request<NonparametricTests>(
      `/api/experiments/${id}/tests?metric=${encodeURIComponent(metric)}`,
    );
  }

  decide(runId: string, method: string, weights: number[] | null): Promise<DecideResponse> {
    return this.post<DecideResponse>("/api/mcdm/decide", {
      run_id: runId,
      method,
      weights,
    });
  }

  async generate(prompt: string): Promise<ProblemSourceDoc> {
    return (await this.post<{ source: ProblemSourceDoc }>("/api/formulation/generate", { prompt }))
      .source;
  }

  async validate(source: ProblemSourceDoc): Promise<VerificationReport> {
    return (
      await this.post<{ report: VerificationReport }>("/api/formulation/validate", { source })
    ).report;
  }

  register(source: ProblemSourceDoc): Promise<{ problem_id: string; report: VerificationReport }> {
    return this.post("/api/formulation/register", { source });
  }
}
