// Pointer and menu gestures -> engine commands. The UI owns no snapping or
// relationship logic: it only hit-tests rendered glyph positions and emits
// commands; the engine decides everything else.

import { HIT_RADIUS, MAX_DRAG_COMMANDS_PER_SECOND } from './config.js';
import type { Command, Point, Snapshot, StaticPayload } from './types.js';

export interface HitTarget {
  kind: 'element' | 'marker' | 'copy' | 'focus';
  id: string;
  pos: Point;
}

export function hitTest(payload: StaticPayload, snapshot: Snapshot,
                        x: number, y: number): HitTarget | null {
  const near = (p: Point) => Math.hypot(p[0] - x, p[1] - y) <= HIT_RADIUS;
  // front-most first: markers, then foci and copies, then raw elements
  for (const m of snapshot.markers) {
    if (near(m.pos)) return { kind: 'marker', id: m.id, pos: m.pos };
  }
  for (const f of snapshot.foci) {
    if (near(f.pos)) return { kind: 'focus', id: f.id, pos: f.pos };
  }
  for (const c of snapshot.copies) {
    if (near(c.pos)) return { kind: 'copy', id: c.id, pos: c.pos };
  }
  for (const el of payload.elements) {
    if (near(el.pos)) return { kind: 'element', id: el.id, pos: el.pos };
  }
  return null;
}

export interface MenuItem {
  label: string;
  command: Command;
}

/** Context-menu model for a right-click on a hit target (or the canvas). */
export function contextMenu(target: HitTarget | null): MenuItem[] {
  if (target === null) {
    return [
      { label: 'Links: normal', command: { cmd: 'setUnpinnedVisibility', mode: 'normal' } },
      { label: 'Dim unpinned links', command: { cmd: 'setUnpinnedVisibility', mode: 'semiTransparent' } },
      { label: 'Hide unpinned links', command: { cmd: 'setUnpinnedVisibility', mode: 'hidden' } },
      { label: 'Fade: off', command: { cmd: 'setTransparency', mode: 'off' } },
      { label: 'Fade unrelated links', command: { cmd: 'setTransparency', mode: 'fadeUnrelated' } },
      { label: 'Fade all but active', command: { cmd: 'setTransparency', mode: 'fadeAllButActive' } },
    ];
  }
  if (target.kind === 'element') {
    return [
      { label: 'Toggle focus marker', command: { cmd: 'toggleMarker', element: target.id } },
    ];
  }
  if (target.kind === 'marker') {
    return [
      { label: 'Attract copies to view border',
        command: { cmd: 'attract', marker: target.id, mode: 'viewBorder' } },
      { label: 'Attract copies near marker',
        command: { cmd: 'attract', marker: target.id, mode: 'nearMarker' } },
      { label: 'Pin link (manage)', command: { cmd: 'pin', marker: target.id } },
    ];
  }
  return [];
}

/**
 * Stateful pointer-gesture translator. Feed it pointer events; it emits
 * commands through the sink. Dragging a marker streams throttled drag
 * commands; hovering emits hover commands; left-clicking a marker toggles
 * its supportive foci.
 */
export class GestureTranslator {
  private sink: (cmd: Command) => void;
  private clock: () => number;
  private dragging: string | null = null;
  private dragMoved = false;
  private lastDragSent = -Infinity;
  private pendingDrag: { x: number; y: number } | null = null;
  private lastHoverTarget: string | null = null;

  constructor(sink: (cmd: Command) => void, clock: () => number = () => Date.now()) {
    this.sink = sink;
    this.clock = clock;
  }

  pointerDown(payload: StaticPayload, snapshot: Snapshot, x: number, y: number,
              button: number): void {
    const target = hitTest(payload, snapshot, x, y);
    if (button !== 0 || target === null) return;
    if (target.kind === 'marker') {
      this.dragging = target.id;
      this.dragMoved = false;
    }
  }

  pointerMove(payload: StaticPayload, snapshot: Snapshot, x: number, y: number): void {
    if (this.dragging !== null) {
      this.dragMoved = true;
      const now = this.clock();
      const minGap = 1000 / MAX_DRAG_COMMANDS_PER_SECOND;
      if (now - this.lastDragSent >= minGap) {
        this.lastDragSent = now;
        this.pendingDrag = null;
        this.sink({ cmd: 'drag', marker: this.dragging, x, y });
      } else {
        this.pendingDrag = { x, y }; // latest position wins at release
      }
      return;
    }
    const target = hitTest(payload, snapshot, x, y);
    const id = target?.id ?? null;
    if (id !== null && id !== this.lastHoverTarget) {
      this.sink({ cmd: 'hover', target: id });
    }
    this.lastHoverTarget = id;
  }

  pointerUp(payload: StaticPayload, snapshot: Snapshot, x: number, y: number,
            button: number): void {
    if (this.dragging !== null) {
      const marker = this.dragging;
      this.dragging = null;
      if (this.pendingDrag !== null) {
        this.sink({ cmd: 'drag', marker, x: this.pendingDrag.x, y: this.pendingDrag.y });
        this.pendingDrag = null;
      }
      if (this.dragMoved) {
        this.sink({ cmd: 'endDrag', marker });
        return;
      }
      // a click (no movement) on the marker toggles supportive foci
      this.sink({ cmd: 'toggleFoci', marker });
      return;
    }
    if (button !== 0) return;
    const target = hitTest(payload, snapshot, x, y);
    if (target !== null) this.sink({ cmd: 'click', target: target.id });
  }

  /** Right-click: the caller shows the returned menu; selection emits. */
  contextMenuAt(payload: StaticPayload, snapshot: Snapshot,
                x: number, y: number): MenuItem[] {
    return contextMenu(hitTest(payload, snapshot, x, y));
  }

  choose(item: MenuItem): void {
    this.sink(item.command);
  }
}
