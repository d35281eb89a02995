/**
 * Image canvas geometry and painting.
 *
 * Regions live in image pixel coordinates; zoom/pan is a client-side
 * affine transform applied at draw time only.
 */

import type { Annotation, Region } from "./api.js";

export interface Affine {
  scale: number;
  tx: number;
  ty: number;
}

export function identity(): Affine {
  return { scale: 1, tx: 0, ty: 0 };
}

export function fitImage(
  imageW: number,
  imageH: number,
  viewW: number,
  viewH: number,
): Affine {
  const scale = Math.min(viewW / imageW, viewH / imageH) || 1;
  return {
    scale,
    tx: (viewW - imageW * scale) / 2,
    ty: (viewH - imageH * scale) / 2,
  };
}

export function toScreen(t: Affine, x: number, y: number): [number, number] {
  return [x * t.scale + t.tx, y * t.scale + t.ty];
}

export function toImage(t: Affine, sx: number, sy: number): [number, number] {
  return [(sx - t.tx) / t.scale, (sy - t.ty) / t.scale];
}

export function zoomAt(t: Affine, sx: number, sy: number, factor: number): Affine {
  const scale = Math.min(32, Math.max(1 / 32, t.scale * factor));
  const ratio = scale / t.scale;
  return {
    scale,
    tx: sx - (sx - t.tx) * ratio,
    ty: sy - (sy - t.ty) * ratio,
  };
}

export function pan(t: Affine, dx: number, dy: number): Affine {
  return { scale: t.scale, tx: t.tx + dx, ty: t.ty + dy };
}

export function regionCenter(region: Region): [number, number] {
  if (region.kind === "point") return [region.x, region.y];
  const n = region.points.length;
  let cx = 0;
  let cy = 0;
  for (const [x, y] of region.points) {
    cx += x;
    cy += y;
  }
  return [cx / n, cy / n];
}

export interface PaintModel {
  image: CanvasImageSource | null;
  imageSize: [number, number];
  annotations: Annotation[];
  selected: string[];
  highlighted: string[];
  draft: [number, number][];
  transform: Affine;
}

function strokeFor(a: Annotation, model: PaintModel): string {
  if (model.highlighted.includes(a.id)) return "#2563eb"; // answer path
  if (model.selected.includes(a.id)) return "#f59e0b";
  return "#10b981";
}

export function paint(ctx: CanvasRenderingContext2D, model: PaintModel): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  const t = model.transform;
  if (model.image) {
    ctx.save();
    ctx.setTransform(t.scale, 0, 0, t.scale, t.tx, t.ty);
    ctx.drawImage(model.image, 0, 0);
    ctx.restore();
  }
  ctx.lineWidth = 2;
  ctx.font = "12px sans-serif";
  for (const a of model.annotations) {
    ctx.strokeStyle = strokeFor(a, model);
    ctx.fillStyle = ctx.strokeStyle;
    if (a.region.kind === "point") {
      const [x, y] = toScreen(t, a.region.x, a.region.y);
      ctx.beginPath();
      ctx.arc(x, y, 5, 0, 2 * Math.PI);
      ctx.stroke();
    } else {
      ctx.beginPath();
      a.region.points.forEach(([px, py], i) => {
        const [x, y] = toScreen(t, px, py);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.closePath();
      ctx.stroke();
    }
    const [cx, cy] = toScreen(t, ...regionCenter(a.region));
    ctx.fillText(a.label, cx + 6, cy - 6);
  }
  if (model.draft.length) {
    ctx.strokeStyle = "#ef4444";
    ctx.beginPath();
    model.draft.forEach(([px, py], i) => {
      const [x, y] = toScreen(t, px, py);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }
}
