/** Formulation workspace: prompt -> generate -> edit -> validate -> register.
 *
 * Registration reloads the catalogs, so the new problem shows up in every
 * selector without a page reload. The editor round-trips the DSL JSON
 * document; prompt provenance survives edit-and-revalidate loops.
 */

import { ApiClient, ApiError } from "../api.js";
import { clear, el } from "../dom.js";
import type { ProblemSourceDoc, VerificationReport } from "../types.js";

export class FormulationWorkspace {
  private prompt = el("textarea", {
    rows: "3",
    placeholder: "describe the optimization problem in natural language",
  }) as HTMLTextAreaElement;
  private editor = el("textarea", { rows: "16", class: "editor" }) as HTMLTextAreaElement;
  private stageBox = el("div", { class: "stage-report" });
  private status = el("div", { class: "status" });
  private rawPrompt: string | null = null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private onRegistered: () => Promise<void>,
  ) {
    this.build();
  }

  private build(): void {
    const generate = el("button", { class: "primary" }, "Generate");
    generate.addEventListener("click", () => void this.generate());
    const validate = el("button", {}, "Validate");
    validate.addEventListener("click", () => void this.validate());
    const registerButton = el("button", {}, "Register");
    registerButton.addEventListener("click", () => void this.register());
    this.root.append(
      el(
        "section",
        { class: "panel wide" },
        el("h3", {}, "Prompt"),
        this.prompt,
        generate,
        this.status,
      ),
      el(
        "div",
        { class: "grid" },
        el("section", { class: "panel" }, el("h3", {}, "Source document"), this.editor, validate, registerButton),
        el("section", { class: "panel" }, el("h3", {}, "Verification chain"), this.stageBox),
      ),
    );
  }

  private async generate(): Promise<void> {
    try {
      const source = await this.api.generate(this.prompt.value);
      this.rawPrompt = source.raw_prompt ?? this.prompt.value;
      this.editor.value = JSON.stringify(source, null, 2);
      this.status.textContent = "generated; edit and validate before registering";
      clear(this.stageBox);
    } catch (error) {
      this.status.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }
  }

  private currentSource(): ProblemSourceDoc | null {
    try {
      const doc = JSON.parse(this.editor.value) as ProblemSourceDoc;
      // edits keep the original prompt provenance
      if (this.rawPrompt !== null && !doc.raw_prompt) {
        doc.raw_prompt = this.rawPrompt;
      }
      return doc;
    } catch {
      this.status.textContent = "editor does not contain valid JSON";
      return null;
    }
  }

  private renderReport(report: VerificationReport): void {
    clear(this.stageBox);
    this.stageBox.appendChild(stageReportElement(report));
  }

  private async validate(): Promise<void> {
    const source = this.currentSource();
    if (!source) return;
    try {
      const report = await this.api.validate(source);
      this.renderReport(report);
      this.status.textContent = report.accepted
        ? "verification chain passed"
        : "verification failed; see the stage report";
    } catch (error) {
      this.status.textContent =
        error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    }
  }

  private async register(): Promise<void> {
    const source = this.currentSource();
    if (!source) return;
    try {
      const result = await this.api.register(source);
      this.renderReport(result.report);
      this.status.textContent = `registered as ${result.problem_id}`;
      await this.onRegistered();
    } catch (error) {
      if (error instanceof ApiError) {
        const detail = error.detail as { report?: VerificationReport } | undefined;
        if (detail?.report) this.renderReport(detail.report);
        this.status.textContent = `${error.code}: ${error.message}`;
      } else {
        this.status.textContent = String(error);
      }
    }
  }
}

export function stageReportElement(report: VerificationReport): HTMLElement {
  const list = el("ul", { class: "stages" });
  for (const stage of report.stages) {
    const item = el(
      "li",
      { class: stage.passed ? "stage pass" : "stage fail" },
      el("b", {}, `${stage.stage}: ${stage.passed ? "pass" : "FAIL"}`),
    );
    for (const diagnostic of stage.diagnostics) {
      item.appendChild(el("div", { class: "diagnostic" }, diagnostic));
    }
    list.appendChild(item);
  }
  const footer = el(
    "div",
    { class: report.accepted ? "accepted" : "rejected" },
    report.accepted ? "accepted" : "not accepted",
  );
  return el("div", {}, list, footer);
}
