// Browser bootstrap: connect to the engine server, render snapshots, wire
// pointer gestures and the context menu.
//
// Query parameters: ?ws=localhost:8765 selects the engine server;
// ?data=name.json picks a dataset when the server was started on a
// directory.

import { browserSocket, EngineClient } from './client.js';
import { GestureTranslator, type MenuItem } from './gestures.js';
import { render } from './renderer.js';
import type { Snapshot, StaticPayload } from './types.js';

function start(): void {
  const params = new URLSearchParams(window.location.search);
  const wsHost = params.get('ws') ?? 'localhost:8765';
  const dataset = params.get('data') ?? undefined;

  const canvas = document.getElementById('scene') as HTMLCanvasElement;
  const ctx = canvas.getContext('2d')!;
  const banner = document.getElementById('banner')!;
  const menuEl = document.getElementById('menu')!;

  let payload: StaticPayload | null = null;
  let snapshot: Snapshot | null = null;
  let hover: { label: string; highlight: string } | null = null;
  let hoverPos: [number, number] = [0, 0];
  let frameQueued = false;

  const draw = () => {
    frameQueued = false;
    if (!payload || !snapshot) return;
    render(ctx, canvas.width, canvas.height, payload, snapshot, {
      hoverLabel: hover?.label,
      hoverPos,
      highlightId: hover?.highlight,
    });
  };
  const scheduleDraw = () => {
    if (!frameQueued) {
      frameQueued = true;
      requestAnimationFrame(draw);
    }
  };

  const client = new EngineClient(browserSocket(`ws://${wsHost}`), {
    onLoaded: (p, s) => {
      payload = p;
      snapshot = s;
      const maxX = Math.max(...p.views.map((v) => v.rect[0] + v.rect[2]));
      const maxY = Math.max(...p.views.map((v) => v.rect[1] + v.rect[3]));
      canvas.width = maxX + 40;
      canvas.height = maxY + 40;
      scheduleDraw();
    },
    onSnapshot: (s) => {
      snapshot = s;
      scheduleDraw();
    },
    onHover: (info) => {
      hover = info;
      scheduleDraw();
    },
    onError: (message) => {
      banner.textContent = message;
      banner.style.display = 'block';
      setTimeout(() => { banner.style.display = 'none'; }, 4000);
    },
  });
  client.load(dataset);

  const gestures = new GestureTranslator((cmd) => client.send(cmd));
  const pos = (ev: MouseEvent): [number, number] => {
    const r = canvas.getBoundingClientRect();
    return [ev.clientX - r.left, ev.clientY - r.top];
  };

  canvas.addEventListener('pointerdown', (ev) => {
    hideMenu();
    if (!payload || !snapshot) return;
    const [x, y] = pos(ev);
    gestures.pointerDown(payload, snapshot, x, y, ev.button);
  });
  canvas.addEventListener('pointermove', (ev) => {
    if (!payload || !snapshot) return;
    const [x, y] = pos(ev);
    hoverPos = [x, y];
    gestures.pointerMove(payload, snapshot, x, y);
  });
  canvas.addEventListener('pointerup', (ev) => {
    if (!payload || !snapshot) return;
    const [x, y] = pos(ev);
    gestures.pointerUp(payload, snapshot, x, y, ev.button);
  });
  canvas.addEventListener('contextmenu', (ev) => {
    ev.preventDefault();
    if (!payload || !snapshot) return;
    const [x, y] = pos(ev);
    showMenu(gestures.contextMenuAt(payload, snapshot, x, y), ev.clientX, ev.clientY);
  });

  function showMenu(items: MenuItem[], x: number, y: number): void {
    menuEl.innerHTML = '';
    if (items.length === 0) return;
    for (const item of items) {
      const row = document.createElement('div');
      row.className = 'menu-item';
      row.textContent = item.label;
      row.addEventListener('click', () => {
        gestures.choose(item);
        hideMenu();
      });
      menuEl.appendChild(row);
    }
    menuEl.style.left = `${x}px`;
    menuEl.style.top = `${y}px`;
    menuEl.style.display = 'block';
  }

  function hideMenu(): void {
    menuEl.style.display = 'none';
  }
}

window.addEventListener('DOMContentLoaded', start);
