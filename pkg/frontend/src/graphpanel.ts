/**
 * Node-link view of the project graph as plain SVG. Nodes sit on a ring
 * (annotation projects are small); highlighted edges redraw on top in the
 * answer color. Every node and edge comes from the last server export.
 */

import type { GraphExport, QueryEdge } from "./api.js";

const W = 560;
const H = 420;

interface Placed {
  x: number;
  y: number;
  label: string;
}

function layout(doc: GraphExport): Map<string, Placed> {
  // instances (typed nodes) go on the ring; class nodes stay un-drawn
  const placed = new Map<string, Placed>();
  const instanceNodes = doc.nodes.filter((n) => n.types.length > 0);
  const n = instanceNodes.length || 1;
  instanceNodes.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    placed.set(node.id, {
      x: W / 2 + Math.cos(angle) * (W / 2 - 70),
      y: H / 2 + Math.sin(angle) * (H / 2 - 40),
      label: node.label,
    });
  });
  return placed;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderGraphSvg(
  doc: GraphExport | null,
  highlightEdges: QueryEdge[] = [],
): string {
  if (!doc) return `<svg viewBox="0 0 ${W} ${H}"></svg>`;
  const placed = layout(doc);
  const lit = new Set(highlightEdges.map((e) => `${e.from}|${e.rel}|${e.to}`));
  const parts: string[] = [];
  for (const edge of doc.edges) {
    const a = placed.get(edge.from);
    const b = placed.get(edge.to);
    if (!a || !b) continue;
    const key = `${edge.from}|${edge.rel}|${edge.to}`;
    const hot = lit.has(key);
    const dashed = edge.provenance === "inferred" ? ' stroke-dasharray="4 3"' : "";
    const color = hot ? "#2563eb" : edge.provenance === "inferred" ? "#9ca3af" : "#4b5563";
    const width = hot ? 3 : 1.2;
    parts.push(
      `<line x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
      `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" stroke="${color}" ` +
      `stroke-width="${width}"${dashed}><title>${esc(key)}</title></line>`,
    );
    if (hot) {
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      parts.push(
        `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="edge-label">` +
        `${esc(edge.rel.split(":").pop() ?? edge.rel)}</text>`,
      );
    }
  }
  for (const [id, p] of placed) {
    parts.push(
      `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="6" ` +
      `fill="#e5e7eb" stroke="#374151"><title>${esc(id)}</title></circle>`,
      `<text x="${(p.x + 8).toFixed(1)}" y="${(p.y - 8).toFixed(1)}">` +
      `${esc(p.label)}</text>`,
    );
  }
  return `<svg viewBox="0 0 ${W} ${H}" xmlns="http://www.w3.org/2000/svg">` +
    parts.join("") + "</svg>";
}
