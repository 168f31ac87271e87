/** Analysis & MCDM workspace: a-posteriori selection over finished runs.
 *
 * Weight sliders always sum-normalize before submission and display the
 * normalized values. The decide endpoint returns the highlight index and
 * scored front; for two or three objectives the chosen point is
 * highlighted on the chart, above three a per-objective scalar report is
 * shown instead. Re-applying after a weight change immediately
 * re-highlights, closing the steering loop.
 */

import { ApiClient, ApiError } from "../api.js";
import { frontModel, renderFront } from "../charts.js";
import { clear, el } from "../dom.js";
import { formatNumber } from "../format.js";
import { Store } from "../store.js";
import type { DecideResponse } from "../types.js";
import { formatWeight, normalizeWeights, uniformWeights } from "../weights.js";

export class McdmWorkspace {
  private runSelect = el("select", {}) as HTMLSelectElement;
  private methodSelect = el("select", {}) as HTMLSelectElement;
  private sliders = el("div", { class: "sliders" });
  private canvas = el("div", { class: "canvas" });
  private report = el("div", { class: "scalar-report" });
  private decisions = el("ul", { class: "decision-list" });
  private status = el("div", { class: "status" });
  private weights: number[] = uniformWeights(2);

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private store: Store,
  ) {
    this.build();
    store.subscribe(() => this.refreshRuns());
  }

  private build(): void {
    for (const method of ["topsis", "weighted_sum"]) {
      this.methodSelect.appendChild(el("option", { value: method }, method));
    }
    const apply = el("button", { class: "primary" }, "Apply rule");
    apply.addEventListener("click", () => void this.apply());
    this.runSelect.addEventListener("change", () => this.resetWeights());
    this.root.append(
      el(
        "div",
        { class: "grid" },
        el(
          "section",
          { class: "panel" },
          el("h3", {}, "Selection"),
          el("label", { class: "field" }, el("span", {}, "run"), this.runSelect),
          el("label", { class: "field" }, el("span", {}, "method"), this.methodSelect),
          this.sliders,
          apply,
          this.status,
        ),
        el("section", { class: "panel" }, el("h3", {}, "Front"), this.canvas, this.report),
      ),
      el("section", { class: "panel wide" }, el("h3", {}, "Applied decisions"), this.decisions),
    );
    this.refreshRuns();
  }

  private finishedRuns() {
    return this.store.get().runs.filter((r) => r.status === "finished" && r.payload);
  }

  private refreshRuns(): void {
    const keep = this.runSelect.value;
    clear(this.runSelect);
    for (const run of this.finishedRuns()) {
      const label = `${run.payload?.algorithm.id} / ${run.payload?.problem.id} seed ${run.payload?.seed}`;
      this.runSelect.appendChild(el("option", { value: run.run_id }, label));
    }
    if (keep) this.runSelect.value = keep;
    if (!this.runSelect.value && this.runSelect.options.length > 0) {
      this.runSelect.selectedIndex = 0;
    }
    this.resetWeights();
  }

  private selectedRun() {
    return this.finishedRuns().find((r) => r.run_id === this.runSelect.value) ?? null;
  }

  private resetWeights(): void {
    const run = this.selectedRun();
    const m = run?.payload?.problem.n_obj ?? 2;
    if (this.weights.length !== m) {
      this.weights = uniformWeights(m);
    }
    this.renderSliders();
  }

  /** Sliders always render one entry per objective of the selected run. */
  private renderSliders(): void {
    clear(this.sliders);
    const normalized = normalizeWeights(this.weights);
    normalized.forEach((value, j) => {
      const slider = el("input", {
        type: "range",
        min: "0",
        max: "1",
        step: "0.01",
        value: String(value),
      }) as HTMLInputElement;
      const label = el("span", { class: "weight-value" }, formatWeight(value));
      slider.addEventListener("input", () => {
        this.weights = this.weights.map((w, k) => (k === j ? Number(slider.value) : w));
        const display = normalizeWeights(this.weights);
        [...this.sliders.querySelectorAll(".weight-value")].forEach((node, k) => {
          node.textContent = formatWeight(display[k]);
        });
      });
      this.sliders.appendChild(
        el("label", { class: "field" }, el("span", {}, `w${j + 1}`), slider, label),
      );
    });
  }

  private async apply(): Promise<void> {
    const run = this.selectedRun();
    if (!run) {
      this.status.textContent = "no finished run selected";
      return;
    }
    const weights = normalizeWeights(this.weights);
    try {
      const response = await this.api.decide(run.run_id, this.methodSelect.value, weights);
      this.renderDecision(response);
      this.status.textContent =
        `selected index ${response.highlight_index}, score ${formatNumber(response.snapshot.score)}`;
      const sidecar = run.payload_path
        ? run.payload_path.replace(/\.run\.json$/, ".decision.json")
        : "(in memory)";
      this.decisions.prepend(
        el(
          "li",
          {},
          `${response.snapshot.created_at} ${response.snapshot.method} ` +
            `weights [${response.snapshot.weights.map(formatWeight).join(", ")}] ` +
            `→ index ${response.snapshot.selected_index}, sidecar ${sidecar}`,
        ),
      );
    } catch (error) {
      this.status.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }
  }

  private renderDecision(response: DecideResponse): void {
    const m = response.front[0]?.length ?? 0;
    clear(this.canvas);
    clear(this.report);
    if (m <= 3) {
      this.canvas.appendChild(renderFront(frontModel(response.front, response.highlight_index)));
    } else {
      // dense scalar report: the chosen point's value per objective
      const table = el("table", { class: "summary" });
      table.appendChild(el("tr", {}, el("th", {}, "objective"), el("th", {}, "value"), el("th", {}, "normalized")));
      response.snapshot.selected_values.forEach((value, j) => {
        table.appendChild(
          el(
            "tr",
            {},
            el("td", {}, `f${j + 1}`),
            el("td", {}, formatNumber(value)),
            el("td", {}, formatNumber(response.snapshot.normalized_row[j])),
          ),
        );
      });
      this.report.appendChild(table);
    }
  }
}
