import type { RectData } from "./types.js";

/** Drags shorter than this on either axis are accidental clicks. */
export const MIN_DRAG_PX = 3;

/** Normalize a drag in any diagonal direction; null when below threshold. */
export function normalizeDrag(
  x1: number, y1: number, x2: number, y2: number,
): RectData | null {
  const left = Math.min(x1, x2);
  const right = Math.max(x1, x2);
  const top = Math.min(y1, y2);
  const bottom = Math.max(y1, y2);
  if (right - left < MIN_DRAG_PX || bottom - top < MIN_DRAG_PX) {
    return null;
  }
  return { left, top, right, bottom };
}

export function rectUnion(a: RectData, b: RectData): RectData {
  return {
    left: Math.min(a.left, b.left),
    top: Math.min(a.top, b.top),
    right: Math.max(a.right, b.right),
    bottom: Math.max(a.bottom, b.bottom),
  };
}

function intersection(a: RectData, b: RectData): RectData | null {
  const left = Math.max(a.left, b.left);
  const top = Math.max(a.top, b.top);
  const right = Math.min(a.right, b.right);
  const bottom = Math.min(a.bottom, b.bottom);
  if (left >= right || top >= bottom) return null;
  return { left, top, right, bottom };
}

/** a minus the interior of b: up to 4 strips (top, bottom, left, right). */
export function rectSubtract(a: RectData, b: RectData): RectData[] {
  const inter = intersection(a, b);
  if (inter === null) return [a];
  const pieces: RectData[] = [];
  if (inter.top > a.top) {
    pieces.push({ left: a.left, top: a.top, right: a.right, bottom: inter.top });
  }
  if (inter.bottom < a.bottom) {
    pieces.push({ left: a.left, top: inter.bottom, right: a.right, bottom: a.bottom });
  }
  if (inter.left > a.left) {
    pieces.push({ left: a.left, top: inter.top, right: inter.left, bottom: inter.bottom });
  }
  if (inter.right < a.right) {
    pieces.push({ left: inter.right, top: inter.top, right: a.right, bottom: inter.bottom });
  }
  return pieces;
}

export function rectArea(r: RectData): number {
  return (r.right - r.left) * (r.bottom - r.top);
}

export function clampRect(r: RectData, width: number, height: number): RectData {
  return {
    left: Math.max(0, Math.min(r.left, width)),
    top: Math.max(0, Math.min(r.top, height)),
    right: Math.max(0, Math.min(r.right, width)),
    bottom: Math.max(0, Math.min(r.bottom, height)),
  };
}
