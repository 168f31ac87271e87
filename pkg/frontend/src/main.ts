/** Application entry point: catalogs, navigation, workspace mounting. */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { Store, Workspace } from "./store.js";
import { ExperimentWorkspace } from "./workspaces/experiment.js";
import { FormulationWorkspace } from "./workspaces/formulation.js";
import { McdmWorkspace } from "./workspaces/mcdm.js";
import { TestWorkspace } from "./workspaces/test.js";

declare global {
  interface Window {
    EMOLAB_API_BASE?: string;
  }
}

const WORKSPACES: { id: Workspace; label: string }[] = [
  { id: "test", label: "Test" },
  { id: "experiment", label: "Experiment" },
  { id: "mcdm", label: "Analysis & MCDM" },
  { id: "formulation", label: "Formulation" },
];

async function loadCatalogs(api: ApiClient, store: Store): Promise<void> {
  const [problems, algorithms, metrics] = await Promise.all([
    api.problems(),
    api.algorithms(),
    api.metrics(),
  ]);
  store.update({
    problems,
    algorithms,
    metrics,
    selectedProblem: store.get().selectedProblem ?? problems[0]?.id ?? null,
    selectedAlgorithm: store.get().selectedAlgorithm ?? algorithms[0]?.id ?? null,
  });
}

function boot(): void {
  const api = new ApiClient(window.EMOLAB_API_BASE ?? "");
  const store = new Store();
  const appRoot = document.getElementById("app");
  if (!appRoot) throw new Error("#app element not found");

  const nav = el("nav", { class: "topnav" });
  const containers = new Map<Workspace, HTMLElement>();
  for (const { id, label } of WORKSPACES) {
    const button = el("button", { "data-workspace": id }, label);
    button.addEventListener("click", () => store.update({ workspace: id }));
    nav.appendChild(button);
    containers.set(id, el("main", { class: "workspace", "data-workspace": id }));
  }
  clear(appRoot);
  appRoot.appendChild(nav);
  for (const container of containers.values()) appRoot.appendChild(container);

  new TestWorkspace(containers.get("test")!, api, store);
  new ExperimentWorkspace(containers.get("experiment")!, api, store);
  new McdmWorkspace(containers.get("mcdm")!, api, store);
  new FormulationWorkspace(containers.get("formulation")!, api, () =>
    loadCatalogs(api, store),
  );

  store.subscribe((state) => {
    for (const [id, container] of containers) {
      container.style.display = id === state.workspace ? "block" : "none";
    }
    for (const button of nav.querySelectorAll("button")) {
      button.classList.toggle(
        "active",
        button.getAttribute("data-workspace") === state.workspace,
      );
    }
  });
  store.update({ workspace: "test" });

  loadCatalogs(api, store).catch((error) => {
    const banner = el("div", { class: "error-banner" }, `failed to reach the API: ${error}`);
    appRoot.prepend(banner);
  });
}

boot();
