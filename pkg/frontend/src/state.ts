/**
 * View state and the pure rules the widgets obey.
 *
 * Everything rendered comes from the latest server payloads stored here:
 * the class menu is exactly the /vocabulary response, the relation menu is
 * exactly the last links:suggest response, and the graph panel draws the
 * last export. The functions in this module are side-effect free so the
 * invariants are testable without a DOM.
 */

import type {
  Annotation,
  GraphExport,
  Project,
  QueryEdge,
  QueryResult,
  Region,
  RelationOption,
  Status,
  VocabClass,
} from "./api.js";

export type Tool = "select" | "point" | "polygon";

export interface Highlight {
  annotations: string[];
  edges: QueryEdge[];
}

export interface ViewState {
  project: Project | null;
  activeImage: string | null;
  tool: Tool;
  selected: string[]; // annotation ids, at most 2, in click order
  panels: { vocabulary: boolean; graph: boolean; validation: boolean; query: boolean };
  vocabulary: VocabClass[];
  suggestions: RelationOption[] | null; // last links:suggest payload
  status: Status | null;
  queryResult: QueryResult | null;
  queryError: { message: string; line: number; column: number } | null;
  highlight: Highlight;
  draft: [number, number][]; // polygon vertices being placed
}

export function initialState(): ViewState {
  return {
    project: null,
    activeImage: null,
    tool: "select",
    selected: [],
    panels: { vocabulary: true, graph: true, validation: true, query: true },
    vocabulary: [],
    suggestions: null,
    status: null,
    queryResult: null,
    queryError: null,
    highlight: { annotations: [], edges: [] },
    draft: [],
  };
}

/** The class picker offers the /vocabulary payload and nothing else. */
export function classOptions(state: ViewState): VocabClass[] {
  return state.vocabulary;
}

/** The relation picker is enabled iff exactly two annotations are selected. */
export function relationPickerEnabled(state: ViewState): boolean {
  return state.selected.length === 2;
}

/**
 * The relation menu renders the last links:suggest payload: plain-language
 * labels up front, ontological names as tooltips.
 */
export function relationMenu(
  state: ViewState,
): { label: string; tooltip: string; term: string }[] {
  if (!relationPickerEnabled(state) || state.suggestions === null) return [];
  return state.suggestions.map((r) => ({
    label: r.label,
    tooltip: r.term,
    term: r.term,
  }));
}

export function toggleSelect(state: ViewState, annotationId: string): void {
  const at = state.selected.indexOf(annotationId);
  if (at >= 0) {
    state.selected.splice(at, 1);
  } else {
    state.selected.push(annotationId);
    while (state.selected.length > 2) state.selected.shift();
  }
  if (state.selected.length !== 2) state.suggestions = null;
}

export function clearSelection(state: ViewState): void {
  state.selected = [];
  state.suggestions = null;
}

/** A polygon draft can be submitted once it has three vertices. */
export function draftSubmittable(state: ViewState): boolean {
  return state.tool === "point" ? true : state.draft.length >= 3;
}

export function draftRegion(
  state: ViewState,
  point?: [number, number],
): Region | null {
  if (state.tool === "point") {
    if (!point) return null;
    return { kind: "point", x: point[0], y: point[1] };
  }
  if (state.tool === "polygon" && draftSubmittable(state)) {
    return { kind: "polygon", points: [...state.draft] };
  }
  return null;
}

export function annotations(state: ViewState): Annotation[] {
  return state.project?.annotations ?? [];
}

export function annotationByInstance(
  state: ViewState,
  instance: string,
): Annotation | undefined {
  return annotations(state).find((a) => a.instance === instance);
}

/** Server truth for the graph panel: the latest status export. */
export function graphDocument(state: ViewState): GraphExport | null {
  return state.status?.graph ?? null;
}

/**
 * Map a query answer to the things to light up: annotation regions for
 * every bound instance and the witnessing edges over the graph panel.
 */
export function highlightForAnswer(
  state: ViewState,
  answerIndex: number,
): Highlight {
  const result = state.queryResult;
  if (!result || answerIndex < 0 || answerIndex >= result.bindings.length) {
    return { annotations: [], edges: [] };
  }
  const binding = result.bindings[answerIndex];
  const ids: string[] = [];
  for (const instance of Object.values(binding)) {
    const annotation = annotationByInstance(state, instance);
    if (annotation && !ids.includes(annotation.id)) ids.push(annotation.id);
  }
  return { annotations: ids, edges: result.explanations[answerIndex] ?? [] };
}

export function validationSummary(state: ViewState): string {
  if (!state.status) return "no status yet";
  const { consistency, validation } = state.status;
  const errors = validation.violations.filter((v) => v.severity === "error");
  const parts = [
    consistency.consistent ? "consistent" : "INCONSISTENT",
    validation.conforms ? "conforms" : `${errors.length} violation(s)`,
  ];
  return parts.join(" · ");
}
