/**
 * DOM wiring for the annotator. All state transitions go through the
 * flows; this file only reads the state and paints it.
 */

import { ApiClient } from "./api.js";
import type { Region } from "./api.js";
import {
  annotateFlow,
  linkFlow,
  loadImage,
  openProject,
  queryConsole,
  suggestForSelection,
} from "./flows.js";
import {
  ViewState,
  annotations,
  classOptions,
  draftSubmittable,
  graphDocument,
  highlightForAnswer,
  initialState,
  relationMenu,
  relationPickerEnabled,
  toggleSelect,
  validationSummary,
} from "./state.js";
import * as canvas from "./canvas.js";
import { renderGraphSvg } from "./graphpanel.js";

const api = new ApiClient("");
const state: ViewState = initialState();

let transform = canvas.identity();
let imageEl: HTMLImageElement | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const canvasEl = () => el<HTMLCanvasElement>("canvas");

function repaint(): void {
  const ctx = canvasEl().getContext("2d");
  if (!ctx) return;
  canvas.paint(ctx, {
    image: imageEl,
    imageSize: imageEl ? [imageEl.naturalWidth, imageEl.naturalHeight] : [0, 0],
    annotations: annotations(state),
    selected: state.selected,
    highlighted: state.highlight.annotations,
    draft: state.draft,
    transform,
  });
}

function renderVocabulary(): void {
  const select = el<HTMLSelectElement>("class-picker");
  select.innerHTML = "";
  for (const cls of classOptions(state)) {
    const option = document.createElement("option");
    option.value = cls.term;
    option.textContent = cls.label;
    option.title = `${cls.term} — ${cls.definition}`;
    select.appendChild(option);
  }
}

function renderRelationMenu(): void {
  const select = el<HTMLSelectElement>("relation-picker");
  const button = el<HTMLButtonElement>("link-button");
  select.innerHTML = "";
  const enabled = relationPickerEnabled(state);
  select.disabled = !enabled;
  const menu = relationMenu(state);
  for (const item of menu) {
    const option = document.createElement("option");
    option.value = item.term;
    option.textContent = item.label;
    option.title = item.tooltip;
    select.appendChild(option);
  }
  button.disabled = !enabled || menu.length === 0;
  el("link-note").textContent =
    enabled && menu.length === 0
      ? "no relation admits this pair of classes"
      : "";
}

function renderValidation(): void {
  el("status-line").textContent = validationSummary(state);
  const list = el<HTMLUListElement>("violations");
  list.innerHTML = "";
  for (const violation of state.status?.validation.violations ?? []) {
    const item = document.createElement("li");
    item.className = violation.severity;
    item.textContent = violation.message;
    list.appendChild(item);
  }
}

function renderGraph(): void {
  el("graph-panel").innerHTML = renderGraphSvg(
    graphDocument(state),
    state.highlight.edges,
  );
}

function renderAnswers(): void {
  const list = el<HTMLOListElement>("answers");
  list.innerHTML = "";
  const caret = el("query-error");
  if (state.queryError) {
    const { line, column, message } = state.queryError;
    caret.textContent = `${" ".repeat(Math.max(0, column - 1))}^ line ${line}: ${message}`;
  } else {
    caret.textContent = "";
  }
  const result = state.queryResult;
  if (!result) return;
  if (!result.bindings.length) {
    const item = document.createElement("li");
    item.textContent = "no matches";
    list.appendChild(item);
    return;
  }
  result.bindings.forEach((binding, index) => {
    const item = document.createElement("li");
    item.textContent = result.projection
      .map((v) => `?${v} = ${binding[v]}`)
      .join("  ");
    item.addEventListener("click", () => {
      state.highlight = highlightForAnswer(state, index);
      repaint();
      renderGraph();
    });
    list.appendChild(item);
  });
}

function renderAll(): void {
  renderVocabulary();
  renderRelationMenu();
  renderValidation();
  renderGraph();
  renderAnswers();
  el<HTMLButtonElement>("annotate-button").disabled = !draftSubmittable(state);
  repaint();
}

function flash(message: string): void {
  el("flash").textContent = message;
  setTimeout(() => {
    el("flash").textContent = "";
  }, 4000);
}

function hitTest(x: number, y: number): string | null {
  for (const a of [...annotations(state)].reverse()) {
    const [cx, cy] = canvas.regionCenter(a.region);
    if (Math.hypot(cx - x, cy - y) < 12 / transform.scale) return a.id;
  }
  return null;
}

async function onCanvasClick(event: MouseEvent): Promise<void> {
  const rect = canvasEl().getBoundingClientRect();
  const [x, y] = canvas.toImage(
    transform,
    event.clientX - rect.left,
    event.clientY - rect.top,
  );
  if (state.tool === "select") {
    const hit = hitTest(x, y);
    if (hit) {
      toggleSelect(state, hit);
      await suggestForSelection(api, state).catch((e) => flash(String(e)));
    }
  } else if (state.tool === "polygon") {
    state.draft.push([x, y]);
  } else {
    await submitAnnotation({ kind: "point", x, y });
  }
  renderAll();
}

async function submitAnnotation(region: Region): Promise<void> {
  const classTerm = el<HTMLSelectElement>("class-picker").value;
  const label = el<HTMLInputElement>("label-input").value || undefined;
  try {
    await annotateFlow(api, state, region, classTerm, label);
    el<HTMLInputElement>("label-input").value = "";
  } catch (error) {
    flash(String(error));
  }
}

function bind(): void {
  el("open-button").addEventListener("click", async () => {
    const name = el<HTMLInputElement>("project-name").value || "untitled";
    await openProject(api, state, name);
    renderAll();
  });

  el<HTMLInputElement>("image-input").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file || !state.project) return;
    const type = file.type === "image/jpeg" ? "image/jpeg" : "image/png";
    await loadImage(api, state, await file.arrayBuffer(), type);
    imageEl = new Image();
    imageEl.onload = () => {
      const view = canvasEl();
      transform = canvas.fitImage(
        imageEl!.naturalWidth, imageEl!.naturalHeight,
        view.width, view.height,
      );
      renderAll();
    };
    imageEl.src = URL.createObjectURL(file);
  });

  for (const tool of ["select", "point", "polygon"] as const) {
    el(`tool-${tool}`).addEventListener("click", () => {
      state.tool = tool;
      state.draft = [];
      renderAll();
    });
  }

  canvasEl().addEventListener("click", (ev) => {
    void onCanvasClick(ev);
  });
  canvasEl().addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = canvasEl().getBoundingClientRect();
    transform = canvas.zoomAt(
      transform,
      ev.clientX - rect.left,
      ev.clientY - rect.top,
      ev.deltaY < 0 ? 1.15 : 1 / 1.15,
    );
    repaint();
  });

  el("annotate-button").addEventListener("click", async () => {
    const region = state.tool === "polygon"
      ? ({ kind: "polygon", points: [...state.draft] } as Region)
      : null;
    if (region) await submitAnnotation(region);
    renderAll();
  });

  el("link-button").addEventListener("click", async () => {
    const relation = el<HTMLSelectElement>("relation-picker").value;
    try {
      await linkFlow(api, state, relation);
    } catch (error) {
      flash(String(error));
    }
    renderAll();
  });

  el("query-button").addEventListener("click", async () => {
    const text = el<HTMLTextAreaElement>("query-input").value;
    await queryConsole(api, state, text);
    renderAll();
  });
}

document.addEventListener("DOMContentLoaded", () => {
  bind();
  renderAll();
});
