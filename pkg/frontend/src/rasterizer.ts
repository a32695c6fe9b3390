// Software implementation of the Ctx2D subset, for tests and headless use.
// Strokes are stamped as disks along flattened paths; compositing is plain
// source-over with float precision. Precise enough for center-of-stroke
// pixel assertions, not a general canvas replacement.

import type { Ctx2D } from './renderer.js';
import type { Point } from './types.js';

function parseColor(color: string | CanvasGradient | CanvasPattern):
    [number, number, number] {
  const m = typeof color === 'string' ? /^#([0-9a-f]{6})$/i.exec(color) : null;
  if (!m) throw new Error(`unsupported color ${String(color)}`);
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

export class SoftCanvas implements Ctx2D {
  readonly width: number;
  readonly height: number;
  // premultiplied float RGBA
  private buf: Float64Array;
  private path: Point[][] = [];
  private current: Point[] = [];

  lineWidth = 1;
  strokeStyle: string | CanvasGradient | CanvasPattern = '#000000';
  fillStyle: string | CanvasGradient | CanvasPattern = '#000000';
  globalAlpha = 1;
  readonly textCalls: Array<{ text: string; x: number; y: number }> = [];

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
    this.buf = new Float64Array(width * height * 4);
  }

  beginPath(): void {
    this.path = [];
    this.current = [];
  }

  moveTo(x: number, y: number): void {
    if (this.current.length > 1) this.path.push(this.current);
    this.current = [[x, y]];
  }

  lineTo(x: number, y: number): void {
    this.current.push([x, y]);
  }

  bezierCurveTo(c1x: number, c1y: number, c2x: number, c2y: number,
                x: number, y: number): void {
    const [sx, sy] = this.current[this.current.length - 1];
    const n = 128;
    for (let i = 1; i <= n; i++) {
      const t = i / n;
      const mt = 1 - t;
      const px = mt * mt * mt * sx + 3 * mt * mt * t * c1x
        + 3 * mt * t * t * c2x + t * t * t * x;
      const py = mt * mt * mt * sy + 3 * mt * mt * t * c1y
        + 3 * mt * t * t * c2y + t * t * t * y;
      this.current.push([px, py]);
    }
  }

  arc(x: number, y: number, r: number, a0: number, a1: number): void {
    const n = 64;
    for (let i = 0; i <= n; i++) {
      const a = a0 + (a1 - a0) * (i / n);
      const p: Point = [x + r * Math.cos(a), y + r * Math.sin(a)];
      if (this.current.length === 0 && i === 0) this.current = [p];
      else this.current.push(p);
    }
  }

  stroke(): void {
    const polys = [...this.path, this.current].filter((p) => p.length > 1);
    const r = Math.max(0.5, this.lineWidth / 2);
    const [cr, cg, cb] = parseColor(this.strokeStyle);
    // one stroke composites once, even where the path overlaps itself
    const seen = new Set<number>();
    for (const poly of polys) {
      for (let i = 1; i < poly.length; i++) {
        const [a, b] = [poly[i - 1], poly[i]];
        const len = Math.hypot(b[0] - a[0], b[1] - a[1]);
        const steps = Math.max(1, Math.ceil(len / (r * 0.5)));
        for (let s = 0; s <= steps; s++) {
          const t = s / steps;
          this.diskPixels(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, r, seen);
        }
      }
    }
    for (const idx of seen) this.blendIndex(idx, cr, cg, cb, this.globalAlpha);
  }

  fill(): void {
    // supports the circle/arc fills the renderer uses: fill the convex hull
    // of the current subpath approximated as stamped disk at its centroid
    const poly = this.current.length > 1 ? this.current : this.path[0] ?? [];
    if (poly.length < 3) return;
    let cx = 0;
    let cy = 0;
    for (const [x, y] of poly) {
      cx += x;
      cy += y;
    }
    cx /= poly.length;
    cy /= poly.length;
    let radius = 0;
    for (const [x, y] of poly) {
      radius = Math.max(radius, Math.hypot(x - cx, y - cy));
    }
    const [cr, cg, cb] = parseColor(this.fillStyle);
    this.stampDisk(cx, cy, radius, cr, cg, cb, this.globalAlpha);
  }

  fillRect(x: number, y: number, w: number, h: number): void {
    const [cr, cg, cb] = parseColor(this.fillStyle);
    const x0 = Math.max(0, Math.ceil(x - 0.5));
    const y0 = Math.max(0, Math.ceil(y - 0.5));
    const x1 = Math.min(this.width - 1, Math.floor(x + w - 0.5));
    const y1 = Math.min(this.height - 1, Math.floor(y + h - 0.5));
    for (let py = y0; py <= y1; py++) {
      for (let px = x0; px <= x1; px++) {
        this.blend(px, py, cr, cg, cb, this.globalAlpha);
      }
    }
  }

  strokeRect(x: number, y: number, w: number, h: number): void {
    const [cr, cg, cb] = parseColor(this.strokeStyle);
    const r = Math.max(0.5, this.lineWidth / 2);
    const corners: Point[] = [[x, y], [x + w, y], [x + w, y + h], [x, y + h], [x, y]];
    const seen = new Set<number>();
    for (let i = 1; i < corners.length; i++) {
      const [a, b] = [corners[i - 1], corners[i]];
      const len = Math.hypot(b[0] - a[0], b[1] - a[1]);
      const steps = Math.max(1, Math.ceil(len / (r * 0.5)));
      for (let s = 0; s <= steps; s++) {
        const t = s / steps;
        this.diskPixels(a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, r, seen);
      }
    }
    for (const idx of seen) this.blendIndex(idx, cr, cg, cb, this.globalAlpha);
  }

  fillText(text: string, x: number, y: number): void {
    this.textCalls.push({ text, x, y });
  }

  private stampDisk(x: number, y: number, r: number,
                    cr: number, cg: number, cb: number, alpha: number): void {
    const seen = new Set<number>();
    this.diskPixels(x, y, r, seen);
    for (const idx of seen) this.blendIndex(idx, cr, cg, cb, alpha);
  }

  private diskPixels(x: number, y: number, r: number, out: Set<number>): void {
    const x0 = Math.max(0, Math.floor(x - r));
    const x1 = Math.min(this.width - 1, Math.ceil(x + r));
    const y0 = Math.max(0, Math.floor(y - r));
    const y1 = Math.min(this.height - 1, Math.ceil(y + r));
    const r2 = r * r;
    for (let py = y0; py <= y1; py++) {
      for (let px = x0; px <= x1; px++) {
        const dx = px + 0.5 - x;
        const dy = py + 0.5 - y;
        if (dx * dx + dy * dy <= r2) out.add(py * this.width + px);
      }
    }
  }

  private blend(px: number, py: number,
                cr: number, cg: number, cb: number, alpha: number): void {
    this.blendIndex(py * this.width + px, cr, cg, cb, alpha);
  }

  private blendIndex(idx: number, cr: number, cg: number, cb: number,
                     alpha: number): void {
    const i = idx * 4;
    const inv = 1 - alpha;
    this.buf[i] = cr * alpha + this.buf[i] * inv;
    this.buf[i + 1] = cg * alpha + this.buf[i + 1] * inv;
    this.buf[i + 2] = cb * alpha + this.buf[i + 2] * inv;
    this.buf[i + 3] = alpha + this.buf[i + 3] * inv;
  }

  /** Non-premultiplied RGBA of one pixel, channels 0..255 / alpha 0..1. */
  pixel(x: number, y: number): { r: number; g: number; b: number; a: number } {
    const i = (Math.round(y) * this.width + Math.round(x)) * 4;
    const a = this.buf[i + 3];
    if (a <= 0) return { r: 0, g: 0, b: 0, a: 0 };
    return { r: this.buf[i] / a, g: this.buf[i + 1] / a, b: this.buf[i + 2] / a, a };
  }

  /** Max alpha within a square window, with the location that attains it. */
  maxAlphaNear(x: number, y: number, radius: number):
      { a: number; x: number; y: number } {
    let best = { a: 0, x, y };
    for (let py = Math.max(0, y - radius); py <= Math.min(this.height - 1, y + radius); py++) {
      for (let px = Math.max(0, x - radius); px <= Math.min(this.width - 1, x + radius); px++) {
        const a = this.buf[(py * this.width + px) * 4 + 3];
        if (a > best.a) best = { a, x: px, y: py };
      }
    }
    return best;
  }
}
