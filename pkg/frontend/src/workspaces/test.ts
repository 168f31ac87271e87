/** Test workspace: one algorithm, one problem, one run.
 *
 * Six regions: algorithm list (A), problem list (B), execution config (C),
 * metric multi-select (D), result canvas with front + convergence charts
 * (E), and the scrolling execution log (F). Charts re-render from the
 * latest immutable generation snapshot.
 */

import { ApiClient, ApiError } from "../api.js";
import { convergenceModel, frontModel, renderConvergence, renderFront } from "../charts.js";
import { clear, el } from "../dom.js";
import { RunView, applyEvent, emptyRunView, subscribeRunEvents } from "../events.js";
import { Store } from "../store.js";
import type { ProblemInfo, RunStatus } from "../types.js";

function tagFilterList<T extends { id: string; name: string; tags: string[] }>(
  title: string,
  items: () => T[],
  selected: () => string | null,
  onSelect: (id: string) => void,
): { root: HTMLElement; refresh: () => void } {
  const filter = el("input", { type: "text", placeholder: "filter by tag", class: "tag-filter" });
  const list = el("ul", { class: "select-list" });
  const root = el("section", { class: "panel" }, el("h3", {}, title), filter, list);

  function refresh(): void {
    const needle = filter.value.trim().toLowerCase();
    clear(list);
    for (const item of items()) {
      if (needle && !item.tags.some((t) => t.includes(needle)) && !item.id.includes(needle)) {
        continue;
      }
      const li = el(
        "li",
        { class: item.id === selected() ? "selected" : "" },
        el("span", { class: "item-name" }, item.name),
        el("span", { class: "item-tags" }, item.tags.join(" ")),
      );
      li.addEventListener("click", () => onSelect(item.id));
      list.appendChild(li);
    }
  }

  filter.addEventListener("input", refresh);
  return { root, refresh };
}

export class TestWorkspace {
  private unsubscribeRun: (() => void) | null = null;
  private view: RunView | null = null;
  private overlay: number[][] = [];
  private overlayProblem: string | null = null;
  private panels: { root: HTMLElement; refresh: () => void }[] = [];
  private form = {
    popSize: el("input", { type: "number", value: "100", min: "4" }),
    nObj: el("input", { type: "number", placeholder: "default" }),
    nVar: el("input", { type: "number", placeholder: "default" }),
    budget: el("input", { type: "number", value: "5000", min: "1" }),
    seed: el("input", { type: "number", value: "42" }),
    workers: el("input", { type: "number", value: "1", min: "1", title: "campaign worker bound; single tests run on one worker" }),
    backend: el("input", { type: "text", value: "cpu-batch", disabled: "true" }),
    referenceFront: el("input", { type: "checkbox", checked: "true" }),
  };
  private metricBoxes: HTMLInputElement[] = [];
  private canvas = el("div", { class: "canvas" });
  private convergence = el("div", { class: "canvas" });
  private log = el("pre", { class: "log" });
  private status = el("div", { class: "status" });

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private store: Store,
  ) {
    this.build();
    store.subscribe(() => this.refreshCatalogPanels());
  }

  private build(): void {
    const algorithms = tagFilterList(
      "A · Algorithms",
      () => this.store.get().algorithms,
      () => this.store.get().selectedAlgorithm,
      (id) => this.store.update({ selectedAlgorithm: id }),
    );
    const problems = tagFilterList(
      "B · Problems",
      () =>
        this.store.get().problems.map((p: ProblemInfo) => ({
          id: p.id,
          name: `${p.name} (M=${p.n_obj}, D=${p.n_var})`,
          tags: p.tags,
        })),
      () => this.store.get().selectedProblem,
      (id) => this.store.update({ selectedProblem: id }),
    );
    this.panels = [algorithms, problems];

    const config = el(
      "section",
      { class: "panel" },
      el("h3", {}, "C · Configuration"),
      this.labeled("population size (N)", this.form.popSize),
      this.labeled("objectives (M)", this.form.nObj),
      this.labeled("variables (D)", this.form.nVar),
      this.labeled("FE budget", this.form.budget),
      this.labeled("seed", this.form.seed),
      this.labeled("workers", this.form.workers),
      this.labeled("backend", this.form.backend),
      this.labeled("use reference front", this.form.referenceFront),
    );

    const metricPanel = el("section", { class: "panel" }, el("h3", {}, "D · Metrics"));
    for (const id of ["igd", "igd_plus", "gd"]) {
      const box = el("input", { type: "checkbox" }) as HTMLInputElement;
      if (id === "igd") box.checked = true;
      box.dataset.metric = id;
      this.metricBoxes.push(box);
      metricPanel.appendChild(el("label", { class: "inline" }, box, ` ${id}`));
    }

    const start = el("button", { class: "primary" }, "Start run");
    start.addEventListener("click", () => void this.startRun());
    const results = el(
      "section",
      { class: "panel wide" },
      el("h3", {}, "E · Results"),
      start,
      this.status,
      el("div", { class: "charts" }, this.canvas, this.convergence),
    );
    const logPanel = el("section", { class: "panel wide" }, el("h3", {}, "F · Execution log"), this.log);

    this.root.append(
      el("div", { class: "grid" }, algorithms.root, problems.root, config, metricPanel),
      results,
      logPanel,
    );
    this.refreshCatalogPanels();
  }

  private labeled(text: string, input: HTMLElement): HTMLElement {
    return el("label", { class: "field" }, el("span", {}, text), input);
  }

  private refreshCatalogPanels(): void {
    for (const panel of this.panels) panel.refresh();
  }

  private selectedMetricIds(): string[] {
    return this.metricBoxes.filter((b) => b.checked).map((b) => b.dataset.metric as string);
  }

  private async startRun(): Promise<void> {
    const state = this.store.get();
    if (!state.selectedProblem || !state.selectedAlgorithm) {
      this.status.textContent = "select an algorithm and a problem first";
      return;
    }
    this.unsubscribeRun?.();
    const metrics = this.selectedMetricIds().map((id) => ({ metric_id: id }));
    const body: Record<string, unknown> = {
      problem: state.selectedProblem,
      algorithm: state.selectedAlgorithm,
      config: { pop_size: Number(this.form.popSize.value) },
      seed: Number(this.form.seed.value),
      fe_budget: Number(this.form.budget.value),
      metrics,
      use_reference_front: this.form.referenceFront.checked,
    };
    if (this.form.nObj.value) body.n_obj = Number(this.form.nObj.value);
    if (this.form.nVar.value) body.n_var = Number(this.form.nVar.value);
    try {
      await this.loadOverlay(state.selectedProblem);
      const runId = await this.api.startRun(body);
      this.status.textContent = `run ${runId} submitted`;
      this.view = emptyRunView(runId);
      this.unsubscribeRun = subscribeRunEvents(this.api.eventsUrl(runId), (event) => {
        if (!this.view) return;
        this.view = applyEvent(this.view, event);
        this.render(this.view);
        if (this.view.finished) void this.registerFinishedRun(runId);
      });
    } catch (error) {
      this.status.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }
  }

  private async registerFinishedRun(runId: string): Promise<void> {
    try {
      const status: RunStatus = await this.api.run(runId);
      const runs = [...this.store.get().runs.filter((r) => r.run_id !== runId), status];
      this.store.update({ runs });
    } catch {
      /* status refresh is best-effort */
    }
  }

  /** Analytical front rows for the scatter overlay, when the problem has one. */
  private async loadOverlay(problemId: string): Promise<void> {
    if (this.overlayProblem === problemId) return;
    this.overlayProblem = problemId;
    this.overlay = [];
    const info = this.store.get().problems.find((p) => p.id === problemId);
    if (info?.has_closed_front && info.n_obj === 2) {
      this.overlay = (await this.api.problemFront(problemId)) ?? [];
    }
  }

  /** Rebuild every chart from the current immutable snapshot. */
  private render(view: RunView): void {
    this.status.textContent = view.failed
      ? `failed: ${view.error}`
      : view.finished
        ? `finished at ${view.feUsed} evaluations`
        : `running: ${view.feUsed}/${view.feBudget} evaluations`;
    clear(this.canvas);
    if (view.front.length === 0) {
      this.canvas.appendChild(el("div", { class: "status" }, "no front yet"));
    } else {
      this.canvas.appendChild(renderFront(frontModel(view.front, null, this.overlay)));
    }
    clear(this.convergence);
    const series = this.selectedMetricIds().map((id) => convergenceModel(view.histories, id));
    this.convergence.appendChild(renderConvergence(series));
    this.log.textContent = view.log.join("\n");
    this.log.scrollTop = this.log.scrollHeight;
  }
}
