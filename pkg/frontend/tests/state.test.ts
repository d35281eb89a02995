import { describe, expect, it } from "vitest";

import { fitImage, pan, toImage, toScreen, zoomAt } from "../src/canvas.js";
import {
  classOptions,
  draftSubmittable,
  highlightForAnswer,
  initialState,
  relationMenu,
  relationPickerEnabled,
  toggleSelect,
} from "../src/state.js";
import type { Annotation, Project } from "../src/api.js";

function annotation(id: string, instance: string, label: string): Annotation {
  return {
    id,
    image: "img1",
    region: { kind: "point", x: 1, y: 1 },
    class: "geofault:FaultVolume",
    instance,
    label,
  };
}

function projectWith(items: Annotation[]): Project {
  return {
    id: "p1",
    name: "t",
    created_at: "2026-01-01T00:00:00Z",
    images: [],
    annotations: items,
  };
}

describe("selection rules", () => {
  it("relation picker enables only with exactly two selections", () => {
    const state = initialState();
    expect(relationPickerEnabled(state)).toBe(false);
    toggleSelect(state, "a1");
    expect(relationPickerEnabled(state)).toBe(false);
    toggleSelect(state, "a2");
    expect(relationPickerEnabled(state)).toBe(true);
    toggleSelect(state, "a3"); // oldest selection drops out
    expect(state.selected).toEqual(["a2", "a3"]);
    toggleSelect(state, "a3"); // toggle off
    expect(state.selected).toEqual(["a2"]);
    expect(relationPickerEnabled(state)).toBe(false);
  });

  it("relation menu is empty without a suggestion payload", () => {
    const state = initialState();
    toggleSelect(state, "a1");
    toggleSelect(state, "a2");
    expect(relationMenu(state)).toEqual([]);
    state.suggestions = [
      { term: "geofault:part_of", label: "is part of",
        domain: "bfo:MaterialEntity", range: "bfo:MaterialEntity" },
    ];
    expect(relationMenu(state)).toEqual([
      { label: "is part of", tooltip: "geofault:part_of", term: "geofault:part_of" },
    ]);
  });
});

describe("polygon drafts", () => {
  it("needs three vertices before submit enables", () => {
    const state = initialState();
    state.tool = "polygon";
    state.draft = [[1, 1], [5, 1]];
    expect(draftSubmittable(state)).toBe(false);
    state.draft.push([5, 5]);
    expect(draftSubmittable(state)).toBe(true);
  });
});

describe("class picker", () => {
  it("shows exactly the vocabulary payload", () => {
    const state = initialState();
    state.vocabulary = [
      { term: "geofault:FaultCore", label: "Fault Core", definition: "",
        relations: [] },
    ];
    expect(classOptions(state).map((c) => c.term)).toEqual(["geofault:FaultCore"]);
  });
});

describe("answer highlighting", () => {
  it("maps bound instances to annotation regions and keeps the path edges", () => {
    const state = initialState();
    state.project = projectWith([
      annotation("a1", "geofault-proj:p1_1", "FV7"),
      annotation("a2", "geofault-proj:p1_2", "FV6"),
    ]);
    state.queryResult = {
      projection: ["f"],
      bindings: [{ f: "geofault-proj:p1_1" }],
      explanations: [[
        { from: "geofault-proj:p1_1", rel: "geofault:east_of",
          to: "geofault-proj:p1_2" },
      ]],
    };
    const highlight = highlightForAnswer(state, 0);
    expect(highlight.annotations).toEqual(["a1"]);
    expect(highlight.edges).toHaveLength(1);
    expect(highlightForAnswer(state, 9)).toEqual({ annotations: [], edges: [] });
  });
});

describe("canvas transforms", () => {
  it("round-trips image and screen coordinates", () => {
    const t = fitImage(320, 240, 720, 540);
    const [sx, sy] = toScreen(t, 100, 50);
    const [ix, iy] = toImage(t, sx, sy);
    expect(ix).toBeCloseTo(100, 6);
    expect(iy).toBeCloseTo(50, 6);
  });

  it("zoom keeps the anchor point fixed and pan shifts it", () => {
    let t = fitImage(320, 240, 720, 540);
    const anchor: [number, number] = [200, 150];
    const before = toImage(t, ...anchor);
    t = zoomAt(t, ...anchor, 2);
    const after = toImage(t, ...anchor);
    expect(after[0]).toBeCloseTo(before[0], 6);
    expect(after[1]).toBeCloseTo(before[1], 6);
    const shifted = pan(t, 10, -5);
    expect(shifted.tx).toBeCloseTo(t.tx + 10, 6);
    expect(shifted.ty).toBeCloseTo(t.ty - 5, 6);
  });
});
