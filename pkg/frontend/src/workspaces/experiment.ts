/** Experiment workspace: campaign builder, progress, summary, exports.
 *
 * The summary table and the Wilcoxon/Friedman panel display API values
 * verbatim; best cells arrive flagged from the server and are rendered in
 * bold.
 */

import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import { formatCell, formatP } from "../format.js";
import { Store } from "../store.js";
import type { NonparametricTests, SummaryTable } from "../types.js";

export function summaryTableElement(table: SummaryTable): HTMLTableElement {
  const root = el("table", { class: "summary" });
  const head = el("tr", {}, el("th", {}, "problem"), el("th", {}, "M"), el("th", {}, "D"));
  for (const algorithm of table.algorithms) {
    head.appendChild(el("th", {}, algorithm));
  }
  root.appendChild(head);
  for (const row of table.rows) {
    const tr = el(
      "tr",
      {},
      el("td", {}, row.problem_id),
      el("td", {}, String(row.n_obj)),
      el("td", {}, String(row.n_var)),
    );
    for (const algorithm of table.algorithms) {
      const cell = row.cells[algorithm];
      const text = cell ? formatCell(cell.mean, cell.std) : "—";
      const td = el("td", { class: cell?.best ? "best" : "" });
      td.appendChild(cell?.best ? el("b", {}, text) : document.createTextNode(text));
      tr.appendChild(td);
    }
    root.appendChild(tr);
  }
  return root;
}

export class ExperimentWorkspace {
  private form = {
    problems: el("select", { multiple: "true", size: "5" }) as HTMLSelectElement,
    algorithms: el("select", { multiple: "true", size: "2" }) as HTMLSelectElement,
    runs: el("input", { type: "number", value: "3", min: "1" }),
    budget: el("input", { type: "number", value: "2000", min: "1" }),
    popSize: el("input", { type: "number", value: "24", min: "4" }),
    policy: el("select", {}) as HTMLSelectElement,
    baseSeed: el("input", { type: "number", value: "42" }),
    workers: el("input", { type: "number", value: "2", min: "1" }),
    metric: el("select", {}) as HTMLSelectElement,
  };
  private status = el("div", { class: "status" });
  private progress = el("div", { class: "progress-grid" });
  private summaryBox = el("div", { class: "summary-box" });
  private testsBox = el("div", { class: "tests-box" });
  private experimentId: string | null = null;
  private poll: ReturnType<typeof setInterval> | null = null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private store: Store,
  ) {
    this.build();
    store.subscribe(() => this.refreshSelectors());
  }

  private build(): void {
    for (const policy of ["sequence", "fixed", "random"]) {
      this.form.policy.appendChild(el("option", { value: policy }, policy));
    }
    for (const metric of ["igd", "igd_plus", "gd"]) {
      this.form.metric.appendChild(el("option", { value: metric }, metric));
    }
    const start = el("button", { class: "primary" }, "Run campaign");
    start.addEventListener("click", () => void this.startCampaign());
    const exportCsv = el("button", {}, "Export CSV");
    exportCsv.addEventListener("click", () => void this.download("csv"));
    const exportLatex = el("button", {}, "Export LaTeX");
    exportLatex.addEventListener("click", () => void this.download("latex"));

    this.root.append(
      el(
        "div",
        { class: "grid" },
        el(
          "section",
          { class: "panel" },
          el("h3", {}, "Plan"),
          this.labeled("algorithms", this.form.algorithms),
          this.labeled("problems", this.form.problems),
          this.labeled("runs per cell", this.form.runs),
          this.labeled("FE budget", this.form.budget),
          this.labeled("population size", this.form.popSize),
          this.labeled("seed policy", this.form.policy),
          this.labeled("base seed", this.form.baseSeed),
          this.labeled("max workers", this.form.workers),
          start,
          this.status,
        ),
        el(
          "section",
          { class: "panel" },
          el("h3", {}, "Progress"),
          this.progress,
        ),
      ),
      el(
        "section",
        { class: "panel wide" },
        el("h3", {}, "Summary"),
        this.labeled("metric", this.form.metric),
        exportCsv,
        exportLatex,
        this.summaryBox,
      ),
      el("section", { class: "panel wide" }, el("h3", {}, "Statistical tests"), this.testsBox),
    );
    this.form.metric.addEventListener("change", () => void this.refreshSummary());
    this.refreshSelectors();
  }

  private labeled(text: string, input: HTMLElement): HTMLElement {
    return el("label", { class: "field" }, el("span", {}, text), input);
  }

  private refreshSelectors(): void {
    const state = this.store.get();
    const keepProblems = new Set(
      [...this.form.problems.selectedOptions].map((o) => o.value),
    );
    clear(this.form.problems);
    for (const problem of state.problems) {
      const option = el("option", { value: problem.id }, `${problem.id} (M=${problem.n_obj})`);
      if (keepProblems.has(problem.id)) option.selected = true;
      this.form.problems.appendChild(option);
    }
    const keepAlgorithms = new Set(
      [...this.form.algorithms.selectedOptions].map((o) => o.value),
    );
    clear(this.form.algorithms);
    for (const algorithm of state.algorithms) {
      const option = el("option", { value: algorithm.id }, algorithm.id);
      if (keepAlgorithms.size === 0 || keepAlgorithms.has(algorithm.id)) option.selected = true;
      this.form.algorithms.appendChild(option);
    }
  }

  private async startCampaign(): Promise<void> {
    const algorithms = [...this.form.algorithms.selectedOptions].map((o) => ({
      algorithm_id: o.value,
      pop_size: Number(this.form.popSize.value),
    }));
    const problems = [...this.form.problems.selectedOptions].map((o) => ({
      problem_id: o.value,
      variants: [{}],
    }));
    if (algorithms.length === 0 || problems.length === 0) {
      this.status.textContent = "select at least one algorithm and one problem";
      return;
    }
    const plan = {
      algorithms,
      problems,
      n_runs: Number(this.form.runs.value),
      fe_budget: Number(this.form.budget.value),
      seed_plan: {
        policy: this.form.policy.value,
        base_seed: this.form.policy.value === "random" ? null : Number(this.form.baseSeed.value),
      },
      max_workers: Number(this.form.workers.value),
      metrics: [{ metric_id: this.form.metric.value }],
    };
    try {
      this.experimentId = await this.api.startExperiment(plan);
      this.status.textContent = `campaign ${this.experimentId} running`;
      if (this.poll) clearInterval(this.poll);
      this.poll = setInterval(() => void this.refreshProgress(), 500);
    } catch (error) {
      this.status.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }
  }

  private async refreshProgress(): Promise<void> {
    if (!this.experimentId) return;
    const status = await this.api.experiment(this.experimentId);
    clear(this.progress);
    const completed = status.completed ?? 0;
    const failed = status.failed ?? 0;
    for (let i = 0; i < status.total_runs; i++) {
      const cls = i < completed ? "cell ok" : i < completed + failed ? "cell failed" : "cell pending";
      this.progress.appendChild(el("span", { class: cls }));
    }
    if (status.status === "finished") {
      if (this.poll) clearInterval(this.poll);
      this.poll = null;
      this.status.textContent = `campaign finished: ${completed} ok, ${failed} failed`;
      await this.refreshSummary();
    }
  }

  private async refreshSummary(): Promise<void> {
    if (!this.experimentId) return;
    const metric = this.form.metric.value;
    const table = await this.api.summary(this.experimentId, metric);
    clear(this.summaryBox);
    this.summaryBox.appendChild(summaryTableElement(table));
    const tests = await this.api.tests(this.experimentId, metric);
    clear(this.testsBox);
    this.testsBox.appendChild(testsElement(tests));
  }

  private async download(format: "csv" | "latex"): Promise<void> {
    if (!this.experimentId) return;
    const text = await this.api.exportText(this.experimentId, this.form.metric.value, format);
    const blob = new Blob([text], { type: "text/plain;charset=utf-8" });
    const anchor = el("a", {
      href: URL.createObjectURL(blob),
      download: `summary.${format === "csv" ? "csv" : "tex"}`,
    });
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }
}

export function testsElement(tests: NonparametricTests): HTMLElement {
  const root = el("div", {});
  for (const test of tests.wilcoxon) {
    root.appendChild(
      el(
        "div",
        { class: "test-line" },
        `wilcoxon ${test.pair[0]} vs ${test.pair[1]}: W=${test.statistic} ` +
          `p=${formatP(test.p_value)} (${test.method_note})`,
      ),
    );
  }
  if (tests.friedman) {
    root.appendChild(
      el(
        "div",
        { class: "test-line" },
        `friedman: chi2=${tests.friedman.statistic.toFixed(3)} p=${formatP(tests.friedman.p_value)}`,
      ),
    );
  }
  if (!tests.wilcoxon.length && !tests.friedman) {
    root.appendChild(el("div", { class: "test-line" }, "no test results yet"));
  }
  return root;
}
