import { describe, expect, it } from 'vitest';

import { GestureTranslator, contextMenu, hitTest } from '../src/gestures.js';
import type { Command, Snapshot, StaticPayload } from '../src/types.js';

const payload: StaticPayload = {
  views: [
    { id: 'left', kind: 'map', rect: [0, 0, 200, 200] },
    { id: 'mid', kind: 'barChart', rect: [300, 0, 200, 200] },
  ],
  elements: [
    { id: 'a', kind: 'location', label: 'Alpha', view: 'left', pos: [100, 100] },
    { id: 'b', kind: 'organization', label: 'Beta', view: 'mid', pos: [400, 100] },
  ],
  links: [],
};

const emptySnapshot: Snapshot = {
  markers: [], foci: [], copies: [], linkStyles: {}, progress: [], pinnedPaths: {},
};

const withMarker: Snapshot = {
  ...emptySnapshot,
  markers: [{ id: 'mk1', anchor: 'a', activeLink: null, arcLength: 0,
              proportion: 0, pos: [100, 100], fociEnabled: false, managing: false }],
};

describe('hit testing', () => {
  it('finds elements by proximity', () => {
    expect(hitTest(payload, emptySnapshot, 103, 98)?.id).toBe('a');
    expect(hitTest(payload, emptySnapshot, 150, 150)).toBeNull();
  });

  it('prefers markers over the element underneath', () => {
    expect(hitTest(payload, withMarker, 100, 100)?.kind).toBe('marker');
  });
});

describe('context menus', () => {
  it('element menu toggles a marker', () => {
    const items = contextMenu({ kind: 'element', id: 'a', pos: [100, 100] });
    expect(items[0].command).toEqual({ cmd: 'toggleMarker', element: 'a' });
  });

  it('marker menu offers attract modes and pinning', () => {
    const cmds = contextMenu({ kind: 'marker', id: 'mk1', pos: [0, 0] })
      .map((i) => i.command);
    expect(cmds).toContainEqual({ cmd: 'attract', marker: 'mk1', mode: 'viewBorder' });
    expect(cmds).toContainEqual({ cmd: 'attract', marker: 'mk1', mode: 'nearMarker' });
    expect(cmds).toContainEqual({ cmd: 'pin', marker: 'mk1' });
  });

  it('canvas menu controls link visibility', () => {
    const cmds = contextMenu(null).map((i) => i.command);
    expect(cmds).toContainEqual({ cmd: 'setUnpinnedVisibility', mode: 'hidden' });
    expect(cmds).toContainEqual({ cmd: 'setTransparency', mode: 'fadeUnrelated' });
  });
});

describe('pointer gestures', () => {
  it('drags stream throttled to at most 120 commands per second', () => {
    const sent: Command[] = [];
    let now = 0;
    const g = new GestureTranslator((c) => sent.push(c), () => now);
    g.pointerDown(payload, withMarker, 100, 100, 0);
    // 500 moves over exactly one second
    for (let i = 0; i < 500; i++) {
      now = (i * 1000) / 500;
      g.pointerMove(payload, withMarker, 100 + i, 100);
    }
    now = 1000;
    g.pointerUp(payload, withMarker, 600, 100, 0);
    const drags = sent.filter((c) => c.cmd === 'drag');
    expect(drags.length).toBeLessThanOrEqual(121); // 120/s + the release flush
    expect(drags.length).toBeGreaterThan(100);
    // the final position always arrives
    const last = drags[drags.length - 1] as { x: number };
    expect(last.x).toBe(599);
    expect(sent[sent.length - 1]).toEqual({ cmd: 'endDrag', marker: 'mk1' });
  });

  it('clicking a marker without moving toggles its foci', () => {
    const sent: Command[] = [];
    const g = new GestureTranslator((c) => sent.push(c), () => 0);
    g.pointerDown(payload, withMarker, 100, 100, 0);
    g.pointerUp(payload, withMarker, 100, 100, 0);
    expect(sent).toEqual([{ cmd: 'toggleFoci', marker: 'mk1' }]);
  });

  it('clicking an element emits a click command', () => {
    const sent: Command[] = [];
    const g = new GestureTranslator((c) => sent.push(c), () => 0);
    g.pointerDown(payload, emptySnapshot, 400, 100, 0);
    g.pointerUp(payload, emptySnapshot, 400, 100, 0);
    expect(sent).toEqual([{ cmd: 'click', target: 'b' }]);
  });

  it('hovering emits one hover per target change', () => {
    const sent: Command[] = [];
    const g = new GestureTranslator((c) => sent.push(c), () => 0);
    g.pointerMove(payload, emptySnapshot, 100, 100);
    g.pointerMove(payload, emptySnapshot, 101, 100);
    g.pointerMove(payload, emptySnapshot, 150, 150); // off any glyph
    g.pointerMove(payload, emptySnapshot, 400, 100);
    expect(sent).toEqual([
      { cmd: 'hover', target: 'a' },
      { cmd: 'hover', target: 'b' },
    ]);
  });

  it('events over empty canvas produce no command', () => {
    const sent: Command[] = [];
    const g = new GestureTranslator((c) => sent.push(c), () => 0);
    g.pointerDown(payload, emptySnapshot, 150, 150, 0);
    g.pointerUp(payload, emptySnapshot, 150, 150, 0);
    expect(sent).toEqual([]);
  });
});
