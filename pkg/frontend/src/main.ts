/** Browser bootstrap: wires the controller to the document. */

import { HttpApi } from "./api.js";
import { ExplorerController, MEASURES, RESTRICTIONS, type HistoryAdapter } from "./state.js";
import type { ColorMode, DatasetInfo, Measure, Restriction, ViewState } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function browserHistory(onPop: (state: ViewState) => void): HistoryAdapter {
  window.addEventListener("popstate", (event) => {
    if (event.state) onPop(event.state as ViewState);
  });
  return {
    push(state: ViewState) {
      history.pushState(state, "", null);
    },
  };
}

function fillSelect(select: HTMLSelectElement, options: readonly string[]) {
  select.innerHTML = options
    .map((o) => `<option value="${o}">${o}</option>`)
    .join("");
}

async function boot() {
  const api = new HttpApi("");
  const matrixHost = el<HTMLDivElement>("matrix");
  const scatterHost = el<HTMLDivElement>("scatter");
  const bannerHost = el<HTMLDivElement>("banner");

  const controller = new ExplorerController(
    api,
    {
      matrix: (html) => {
        matrixHost.innerHTML = html;
      },
      scatter: (html) => {
        scatterHost.innerHTML = html;
      },
      banner: (html) => {
        bannerHost.innerHTML = html ?? "";
      },
    },
    browserHistory((state) => controller.restore(state)),
  );
  bannerHost.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset["action"] === "retry") void controller.retry();
  });

  const datasetSel = el<HTMLSelectElement>("dataset");
  const varsSel = el<HTMLSelectElement>("variables");
  const measureSel = el<HTMLSelectElement>("measure");
  const restrictionSel = el<HTMLSelectElement>("restriction");
  const colorSel = el<HTMLSelectElement>("colormode");
  const intervalsInput = el<HTMLInputElement>("intervals");
  const overlapInput = el<HTMLInputElement>("overlap");
  const epsilonInput = el<HTMLInputElement>("epsilon");

  fillSelect(measureSel, MEASURES);
  measureSel.value = "led_a";
  fillSelect(restrictionSel, RESTRICTIONS);
  restrictionSel.value = "boundary";
  fillSelect(colorSel, ["interval", "measure"]);

  const datasets: DatasetInfo[] = await api.datasets();
  fillSelect(datasetSel, datasets.map((d) => d.name));

  const variablesFor = (name: string) =>
    datasets.find((d) => d.name === name)?.variables ?? [];

  const syncVariableChoices = (name: string) => {
    const vars = variablesFor(name);
    varsSel.innerHTML = vars
      .map((v) => `<option value="${v}">${v}</option>`)
      .join("");
    const initial = vars.slice(0, Math.min(4, vars.length));
    for (const option of varsSel.options) {
      option.selected = initial.includes(option.value);
    }
    return initial;
  };

  const selectedVariables = () =>
    [...varsSel.selectedOptions].map((o) => o.value);

  datasetSel.addEventListener("change", () => {
    const vars = syncVariableChoices(datasetSel.value);
    void controller.setDataset(datasetSel.value, vars);
  });
  varsSel.addEventListener("change", () =>
    void controller.setVariables(selectedVariables()));
  measureSel.addEventListener("change", () =>
    void controller.setParam({ measure: measureSel.value as Measure }));
  restrictionSel.addEventListener("change", () =>
    void controller.setParam({
      restriction: restrictionSel.value as Restriction,
    }));
  colorSel.addEventListener("change", () =>
    controller.setColorMode(colorSel.value as ColorMode));
  intervalsInput.addEventListener("change", () =>
    void controller.setParam({ intervals: Number(intervalsInput.value) }));
  overlapInput.addEventListener("change", () =>
    void controller.setParam({ overlap: Number(overlapInput.value) }));
  epsilonInput.addEventListener("change", () =>
    void controller.setParam({
      epsilon: epsilonInput.value === "" ? null : Number(epsilonInput.value),
    }));

  const first = datasets[0];
  if (first) {
    datasetSel.value = first.name;
    const vars = syncVariableChoices(first.name);
    await controller.setDataset(first.name, vars);
  }
}

void boot();
