/**
 * User-facing flows: each one talks to the API, then refreshes the state
 * from server truth. No graph fact lives only on the client, and nothing
 * updates optimistically: the canvas redraws after the server acknowledges.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Annotation, Region, RelationOption } from "./api.js";
import {
  ViewState,
  clearSelection,
  relationPickerEnabled,
} from "./state.js";

export async function openProject(
  api: ApiClient,
  state: ViewState,
  name: string,
): Promise<void> {
  state.project = await api.createProject(name);
  state.vocabulary = (await api.vocabulary()).classes;
  state.status = await api.status(state.project.id);
}

export async function loadImage(
  api: ApiClient,
  state: ViewState,
  bytes: ArrayBuffer | Uint8Array,
  mediaType: "image/png" | "image/jpeg",
): Promise<void> {
  if (!state.project) throw new Error("no project open");
  const ref = await api.uploadImage(state.project.id, bytes, mediaType);
  state.project = await api.getProject(state.project.id);
  state.activeImage = ref.id;
}

async function refresh(api: ApiClient, state: ViewState): Promise<void> {
  if (!state.project) return;
  state.project = await api.getProject(state.project.id);
  state.status = await api.status(state.project.id);
}

/**
 * Place a region, bind it to a vocabulary class, persist, and redraw from
 * the server's copy of the project.
 */
export async function annotateFlow(
  api: ApiClient,
  state: ViewState,
  region: Region,
  classTerm: string,
  label?: string,
): Promise<Annotation> {
  if (!state.project || !state.activeImage) throw new Error("no image loaded");
  if (!state.vocabulary.some((c) => c.term === classTerm)) {
    throw new Error(`${classTerm} is not in the vocabulary menu`);
  }
  const annotation = await api.addAnnotation(
    state.project.id,
    state.activeImage,
    region,
    classTerm,
    label,
  );
  state.draft = [];
  await refresh(api, state);
  return annotation;
}

/** Populate the relation menu for the two selected annotations. */
export async function suggestForSelection(
  api: ApiClient,
  state: ViewState,
): Promise<RelationOption[]> {
  if (!state.project || !relationPickerEnabled(state)) {
    state.suggestions = null;
    return [];
  }
  const [from, to] = state.selected;
  const { relations } = await api.suggestLinks(state.project.id, from, to);
  state.suggestions = relations;
  return relations;
}

/**
 * Submit the chosen relation between the two selected annotations, then
 * refresh the validation panel from /status.
 */
export async function linkFlow(
  api: ApiClient,
  state: ViewState,
  relationTerm: string,
): Promise<void> {
  if (!state.project) throw new Error("no project open");
  if (!relationPickerEnabled(state)) {
    throw new Error("select exactly two annotations to link");
  }
  const menu = state.suggestions ?? [];
  if (!menu.some((r) => r.term === relationTerm)) {
    throw new Error(`${relationTerm} is not in the suggested menu`);
  }
  const [from, to] = state.selected;
  await api.addLink(state.project.id, from, relationTerm, to);
  clearSelection(state);
  await refresh(api, state);
}

/** Run the query console; parse errors land in state with their caret. */
export async function queryConsole(
  api: ApiClient,
  state: ViewState,
  text: string,
): Promise<void> {
  if (!state.project) throw new Error("no project open");
  state.queryError = null;
  try {
    state.queryResult = await api.query(state.project.id, text);
  } catch (error) {
    state.queryResult = null;
    if (error instanceof ApiError && error.code === "ParseError") {
      state.queryError = {
        message: error.message,
        line: error.position?.line ?? 1,
        column: error.position?.column ?? 1,
      };
      return;
    }
    throw error;
  }
}
