/**
 * UI wiring: file pickers and drag-and-drop (or ?model=…&results=… URLs),
 * property selection, display sliders, and the pick readout.
 */

import { Viewer } from "./render.js";
import { SceneModel, loadScene } from "./scene.js";
import { DEFAULT_VIEW, ViewState, applySelection } from "./view.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const status = $("status");
const labelSelect = $<HTMLSelectElement>("label");
const modeSelect = $<HTMLSelectElement>("mode");
const satSlider = $<HTMLInputElement>("sat-opacity");
const unsatSlider = $<HTMLInputElement>("unsat-opacity");
const shrinkSlider = $<HTMLInputElement>("shrink");
const pickReadout = $("pick");

let modelBytes: Uint8Array | null = null;
let resultsBytes: Uint8Array | null = null;
let scene: SceneModel | null = null;

const viewer = new Viewer($<HTMLCanvasElement>("canvas"));

function currentView(): ViewState {
  return {
    label: labelSelect.value,
    mode: modeSelect.value === "classify" ? "classify" : "opacity",
    satOpacity: Number(satSlider.value),
    unsatOpacity: Number(unsatSlider.value),
    shrink: Number(shrinkSlider.value),
  };
}

function redraw(): void {
  if (!scene || !labelSelect.value) return;
  try {
    viewer.show(applySelection(scene, currentView()));
  } catch (err) {
    status.textContent = String(err);
  }
}

async function tryAssemble(): Promise<void> {
  if (!modelBytes || !resultsBytes) return;
  try {
    scene = await loadScene(modelBytes, resultsBytes);
  } catch (err) {
    scene = null;
    status.textContent = String(err);
    return;
  }
  status.textContent =
    `${scene.cellCount} cells ` +
    `(${scene.byDim[0].length} points, ${scene.byDim[1].length} segments, ` +
    `${scene.byDim[2].length} triangles, ${scene.byDim[3].length} tetrahedra)`;
  labelSelect.replaceChildren(
    ...scene.labels.map((label) => new Option(label, label)),
  );
  viewer.frame(scene);
  redraw();
}

function bindFileInput(id: string, sink: (bytes: Uint8Array) => void): void {
  $<HTMLInputElement>(id).addEventListener("change", async (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) return;
    sink(new Uint8Array(await file.arrayBuffer()));
    await tryAssemble();
  });
}

bindFileInput("model-file", (bytes) => (modelBytes = bytes));
bindFileInput("results-file", (bytes) => (resultsBytes = bytes));

document.body.addEventListener("dragover", (e) => e.preventDefault());
document.body.addEventListener("drop", async (e) => {
  e.preventDefault();
  for (const file of e.dataTransfer?.files ?? []) {
    const bytes = new Uint8Array(await file.arrayBuffer());
    const text = new TextDecoder().decode(bytes.slice(0, 4096));
    if (text.includes('"results"')) resultsBytes = bytes;
    else modelBytes = bytes;
  }
  await tryAssemble();
});

for (const control of [labelSelect, modeSelect, satSlider, unsatSlider, shrinkSlider]) {
  control.addEventListener("input", redraw);
}

$<HTMLCanvasElement>("canvas").addEventListener("click", (event) => {
  if (!scene) return;
  const cell = viewer.pick(event.clientX, event.clientY);
  if (cell === null) {
    pickReadout.textContent = "";
    return;
  }
  const values = scene.results.get(labelSelect.value);
  const atoms = scene.atoms[cell];
  pickReadout.textContent =
    `cell ${cell}: vertices [${scene.cells[cell].join(", ")}]` +
    (atoms.length ? `, atoms {${atoms.join(", ")}}` : "") +
    (values ? `, ${labelSelect.value}=${values[cell]}` : "");
});

async function fetchInto(url: string, sink: (bytes: Uint8Array) => void): Promise<void> {
  const response = await fetch(url);
  if (!response.ok) throw new Error(`${url}: HTTP ${response.status}`);
  sink(new Uint8Array(await response.arrayBuffer()));
}

const params = new URLSearchParams(window.location.search);
const modelUrl = params.get("model");
const resultsUrl = params.get("results");
if (modelUrl && resultsUrl) {
  Promise.all([
    fetchInto(modelUrl, (b) => (modelBytes = b)),
    fetchInto(resultsUrl, (b) => (resultsBytes = b)),
  ])
    .then(tryAssemble)
    .catch((err) => (status.textContent = String(err)));
}

satSlider.value = String(DEFAULT_VIEW.satOpacity);
unsatSlider.value = String(DEFAULT_VIEW.unsatOpacity);
shrinkSlider.value = String(DEFAULT_VIEW.shrink);
