// Render fidelity against live engine snapshots: translucency of unrelated
// links at mid-transition, the active hue, and the snapshot-field coverage
// checklist.

import { resolve } from 'node:path';
import { describe, expect, it } from 'vitest';

import { PALETTE } from '../src/config.js';
import { SoftCanvas } from '../src/rasterizer.js';
import { render } from '../src/renderer.js';
import type { LinkDef, Snapshot, StaticPayload } from '../src/types.js';
import { cubicAt, replaySnapshot } from './helpers.js';

const DATASET = resolve(__dirname, 'fixtures', 'render_dataset.json');

// static payload mirrors what the engine serves for the fixture dataset
const LINK_AB: LinkDef = {
  id: 'lnk:a:b', kind: 'direct', a: 'a', b: 'b',
  path: { type: 'cubic', points: [[100, 100], [200, 130], [300, 130], [400, 100]] },
};
const LINK_BC: LinkDef = {
  id: 'lnk:b:c', kind: 'direct', a: 'b', b: 'c',
  path: { type: 'cubic', points: [[400, 100], [500, 130], [600, 130], [700, 100]] },
};
const PAYLOAD: StaticPayload = {
  views: [
    { id: 'left', kind: 'map', rect: [0, 0, 200, 200] },
    { id: 'mid', kind: 'barChart', rect: [300, 0, 200, 200] },
    { id: 'right', kind: 'nodeLinkGraph', rect: [600, 0, 200, 200] },
  ],
  elements: [
    { id: 'a', kind: 'location', label: 'Alpha', view: 'left', pos: [100, 100] },
    { id: 'b', kind: 'organization', label: 'Beta', view: 'mid', pos: [400, 100] },
    { id: 'c', kind: 'person', label: 'Carol', view: 'right', pos: [700, 100] },
  ],
  links: [LINK_AB, LINK_BC],
};

function rgb(hex: string): [number, number, number] {
  const v = parseInt(hex.slice(1), 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

/** Recover a stroke's alpha from its composite over a known background. */
function strokeAlphaNear(canvas: SoftCanvas, x: number, y: number,
                         stroke: string, bg: string): number {
  const [sr, sg, sb] = rgb(stroke);
  const [br, bgc, bb] = rgb(bg);
  let best = -1;
  for (let py = y - 3; py <= y + 3; py++) {
    for (let px = x - 3; px <= x + 3; px++) {
      const p = canvas.pixel(px, py);
      // solve out = s*alpha + bg*(1-alpha) on the strongest channel
      const channels: Array<[number, number, number]> = [
        [p.r, sr, br], [p.g, sg, bgc], [p.b, sb, bb]];
      channels.sort((u, v) => Math.abs(v[1] - v[2]) - Math.abs(u[1] - u[2]));
      const [out, s, b] = channels[0];
      const alpha = (out - b) / (s - b);
      if (alpha > best) best = alpha;
    }
  }
  return best;
}

const BG = '#14181d';

describe('render fidelity (engine-driven)', () => {
  const midpointAB = cubicAt(LINK_AB.path.points, 0.5); // arc midpoint by symmetry
  const fidelityScript = [
    { t: 0, cmd: 'load' },
    { t: 10, cmd: 'toggleMarker', element: 'a' },
    { t: 20, cmd: 'setTransparency', mode: 'fadeUnrelated' },
    { t: 30, cmd: 'drag', marker: 'mk1', x: midpointAB[0], y: midpointAB[1] },
  ].map((c) => JSON.stringify(c)).join('\n') + '\n';

  it('unrelated links render at 50% +/- 2% alpha at half transition', () => {
    const snapshot = replaySnapshot(DATASET, fidelityScript);
    // snapping resolution is half an arc unit, so proportion is ~0.5
    expect(snapshot.markers[0].proportion).toBeCloseTo(0.5, 2);
    expect(snapshot.linkStyles['lnk:b:c'].opacity).toBeCloseTo(0.5, 2);
    const canvas = new SoftCanvas(850, 250);
    render(canvas, 850, 250, PAYLOAD, snapshot);
    const mid = cubicAt(LINK_BC.path.points, 0.5);
    const alpha = strokeAlphaNear(canvas, Math.round(mid[0]), Math.round(mid[1]),
                                  PALETTE.unrelated, BG);
    expect(alpha).toBeGreaterThanOrEqual(0.48);
    expect(alpha).toBeLessThanOrEqual(0.52);
  });

  it('the active link renders in the configured active hue', () => {
    const snapshot = replaySnapshot(DATASET, fidelityScript);
    expect(snapshot.linkStyles['lnk:a:b'].colorClass).toBe('active');
    const canvas = new SoftCanvas(850, 250);
    render(canvas, 850, 250, PAYLOAD, snapshot);
    const p75 = cubicAt(LINK_AB.path.points, 0.75); // beyond the progress trail
    const [ar, ag, ab] = rgb(PALETTE.active);
    let found = false;
    for (let dy = -3; dy <= 3 && !found; dy++) {
      for (let dx = -3; dx <= 3 && !found; dx++) {
        const p = canvas.pixel(Math.round(p75[0]) + dx, Math.round(p75[1]) + dy);
        if (Math.abs(p.r - ar) < 2 && Math.abs(p.g - ag) < 2 && Math.abs(p.b - ab) < 2) {
          found = true;
        }
      }
    }
    expect(found).toBe(true);
  });

  it('consumes every pixel-affecting snapshot field', () => {
    const coverageScript = [
      { t: 0, cmd: 'load' },
      { t: 10, cmd: 'toggleMarker', element: 'a' },
      { t: 20, cmd: 'drag', marker: 'mk1', x: midpointAB[0], y: midpointAB[1] },
      { t: 30, cmd: 'toggleFoci', marker: 'mk1' },
      { t: 40, cmd: 'attract', marker: 'mk1', mode: 'viewBorder' },
      { t: 50, cmd: 'pin', marker: 'mk1' },
      { t: 60, cmd: 'drag', marker: 'mk1', x: 250, y: 40 },
    ].map((c) => JSON.stringify(c)).join('\n') + '\n';
    const snapshot = replaySnapshot(DATASET, coverageScript);
    // the scenario populates every field
    expect(snapshot.markers.length).toBeGreaterThan(0);
    expect(snapshot.copies.length).toBeGreaterThan(0);
    expect(Object.keys(snapshot.pinnedPaths).length).toBeGreaterThan(0);
    const accessed = new Set<string | symbol>();
    const spy = new Proxy(snapshot as unknown as Record<string, unknown>, {
      get(target, prop) {
        accessed.add(prop);
        return target[prop as string];
      },
    }) as unknown as Snapshot;
    const canvas = new SoftCanvas(850, 250);
    render(canvas, 850, 250, PAYLOAD, spy);
    for (const field of ['markers', 'foci', 'copies', 'linkStyles',
                         'progress', 'pinnedPaths']) {
      expect(accessed, `renderer must consume ${field}`).toContain(field);
    }
  });
});
