// Snapshot renderer. Drawing is a pure function of (static payload, latest
// snapshot, transient hover/drag state); all geometry and relationship
// decisions happen engine-side, this module only plots what it is given.

import {
  ACTIVE_LINK_WIDTH,
  BACKGROUND,
  BAR_WIDTH,
  BUNDLE_FILL,
  COPY_FILL,
  COPY_SIZE,
  ELEMENT_FILL,
  ELEMENT_RADIUS,
  FOCUS_FILL,
  FOCUS_RADIUS,
  LINK_WIDTH,
  MARKER_ALPHA,
  MARKER_RADIUS,
  MARKER_VARIANT,
  PALETTE,
  PROGRESS_BAR_HEIGHT,
  PROGRESS_BAR_OFFSET,
  PROGRESS_BAR_WIDTH,
  PROGRESS_TRAIL_WIDTH,
  TEXT_COLOR,
  VIEW_FRAME,
} from './config.js';
import type {
  ColorClass,
  ElementDef,
  PathPayload,
  Point,
  Snapshot,
  StaticPayload,
} from './types.js';

/** The 2D-context subset the renderer needs (real canvas or software). */
export interface Ctx2D {
  lineWidth: number;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  globalAlpha: number;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  bezierCurveTo(c1x: number, c1y: number, c2x: number, c2y: number,
                x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
}

export interface TransientState {
  hoverLabel?: string;
  hoverPos?: Point;
  highlightId?: string;
}

const CLASS_ORDER: ColorClass[] = ['unrelated', 'related', 'managed', 'active'];

function tracePath(ctx: Ctx2D, path: PathPayload): void {
  ctx.beginPath();
  const pts = path.points;
  ctx.moveTo(pts[0][0], pts[0][1]);
  if (path.type === 'cubic') {
    ctx.bezierCurveTo(pts[1][0], pts[1][1], pts[2][0], pts[2][1],
                      pts[3][0], pts[3][1]);
  } else {
    for (let i = 1; i < pts.length; i++) ctx.lineTo(pts[i][0], pts[i][1]);
  }
  ctx.stroke();
}

function circle(ctx: Ctx2D, p: Point, r: number): void {
  ctx.beginPath();
  ctx.arc(p[0], p[1], r, 0, Math.PI * 2);
  ctx.fill();
}

export function render(ctx: Ctx2D, width: number, height: number,
                       payload: StaticPayload, snapshot: Snapshot,
                       transient: TransientState = {}): void {
  ctx.globalAlpha = 1;
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, width, height);

  for (const view of payload.views) {
    ctx.strokeStyle = VIEW_FRAME;
    ctx.lineWidth = 1;
    ctx.strokeRect(view.rect[0], view.rect[1], view.rect[2], view.rect[3]);
    ctx.fillStyle = TEXT_COLOR;
    ctx.fillText(view.id, view.rect[0] + 4, view.rect[1] - 4);
  }

  // links, weakest class first so important strokes end up on top
  const byClass = new Map<ColorClass, string[]>();
  for (const [id, style] of Object.entries(snapshot.linkStyles)) {
    if (style.opacity <= 0) continue; // hidden
    const bucket = byClass.get(style.colorClass) ?? [];
    bucket.push(id);
    byClass.set(style.colorClass, bucket);
  }
  const linkById = new Map(payload.links.map((l) => [l.id, l]));
  for (const cls of CLASS_ORDER) {
    for (const id of byClass.get(cls) ?? []) {
      const link = linkById.get(id);
      if (!link) continue;
      const style = snapshot.linkStyles[id];
      ctx.globalAlpha = style.opacity;
      ctx.strokeStyle = PALETTE[cls];
      ctx.lineWidth = cls === 'active' ? ACTIVE_LINK_WIDTH : LINK_WIDTH;
      tracePath(ctx, snapshot.pinnedPaths[id] ?? link.path);
    }
  }

  // traversed-subpath highlight on the active link only
  for (const prog of snapshot.progress) {
    if (prog.subpath.length < 2) continue;
    ctx.globalAlpha = 1;
    ctx.strokeStyle = PALETTE.active;
    ctx.lineWidth = PROGRESS_TRAIL_WIDTH;
    tracePath(ctx, { type: 'polyline', points: prog.subpath });
  }

  const viewById = new Map(payload.views.map((v) => [v.id, v]));
  for (const el of payload.elements) {
    drawElement(ctx, el, viewById.get(el.view)?.rect,
                transient.highlightId === el.id);
  }

  for (const copy of snapshot.copies) {
    ctx.globalAlpha = 0.8;
    ctx.fillStyle = COPY_FILL;
    ctx.fillRect(copy.pos[0] - COPY_SIZE / 2, copy.pos[1] - COPY_SIZE / 2,
                 COPY_SIZE, COPY_SIZE);
  }

  for (const focus of snapshot.foci) {
    ctx.globalAlpha = 1;
    ctx.fillStyle = FOCUS_FILL;
    circle(ctx, focus.pos, FOCUS_RADIUS);
  }

  const progressByMarker = new Map(snapshot.progress.map((p) => [p.marker, p]));
  for (const marker of snapshot.markers) {
    if (MARKER_VARIANT === 'scaledCopy') {
      ctx.globalAlpha = MARKER_ALPHA;
      ctx.fillStyle = ELEMENT_FILL;
      circle(ctx, marker.pos, MARKER_RADIUS);
    } else {
      ctx.globalAlpha = 1;
      ctx.strokeStyle = FOCUS_FILL;
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.arc(marker.pos[0], marker.pos[1], MARKER_RADIUS, 0, Math.PI * 2);
      ctx.stroke();
    }
    const prog = progressByMarker.get(marker.id);
    const x = marker.pos[0] - PROGRESS_BAR_WIDTH / 2;
    const y = marker.pos[1] - MARKER_RADIUS - PROGRESS_BAR_OFFSET;
    ctx.globalAlpha = 0.9;
    ctx.fillStyle = BACKGROUND;
    ctx.fillRect(x, y, PROGRESS_BAR_WIDTH, PROGRESS_BAR_HEIGHT);
    ctx.fillStyle = PALETTE.active;
    ctx.fillRect(x, y, PROGRESS_BAR_WIDTH * (prog?.proportion ?? 0),
                 PROGRESS_BAR_HEIGHT);
  }

  if (transient.hoverLabel && transient.hoverPos) {
    ctx.globalAlpha = 1;
    ctx.fillStyle = TEXT_COLOR;
    ctx.fillText(transient.hoverLabel,
                 transient.hoverPos[0] + 10, transient.hoverPos[1] - 10);
  }
}

function drawElement(ctx: Ctx2D, el: ElementDef,
                     rect: [number, number, number, number] | undefined,
                     highlighted: boolean): void {
  ctx.globalAlpha = 1;
  if (el.kind === 'bundle') {
    ctx.fillStyle = BUNDLE_FILL;
    ctx.fillRect(el.pos[0] - 5, el.pos[1] - 5, 10, 10);
  } else if (el.kind === 'organization' && rect) {
    // bar chart: a bar from the anchor down to the view's bottom edge
    ctx.fillStyle = highlighted ? PALETTE.active : ELEMENT_FILL;
    const bottom = rect[1] + rect[3] - 2;
    ctx.fillRect(el.pos[0] - BAR_WIDTH / 2, el.pos[1],
                 BAR_WIDTH, Math.max(1, bottom - el.pos[1]));
  } else {
    ctx.fillStyle = highlighted ? PALETTE.active : ELEMENT_FILL;
    circle(ctx, el.pos, ELEMENT_RADIUS);
  }
  if (highlighted && el.kind !== 'organization') {
    ctx.strokeStyle = PALETTE.active;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(el.pos[0], el.pos[1], ELEMENT_RADIUS + 3, 0, Math.PI * 2);
    ctx.stroke();
  }
}
