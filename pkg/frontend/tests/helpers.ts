// Shared test plumbing: running the Python engine CLI and the websocket
// server, plus tiny math helpers for choreographing cursor paths.

import { execFileSync, spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join, resolve } from 'node:path';

import type { Point, Snapshot } from '../src/types.js';

export const REPO_ROOT = resolve(__dirname, '..', '..');
export const PYTHON = process.env.CROSSTRACE_PYTHON ?? 'python3';

export function replaySnapshot(datasetPath: string, scriptText: string): Snapshot {
  const dir = mkdtempSync(join(tmpdir(), 'ct-ui-'));
  const script = join(dir, 'script.ndjson');
  const snap = join(dir, 'snapshot.json');
  writeFileSync(script, scriptText);
  execFileSync(PYTHON, ['-m', 'crosstrace.cli', 'replay',
    '--data', datasetPath, '--script', script, '--snapshot', snap],
    { cwd: REPO_ROOT });
  return JSON.parse(readFileSync(snap, 'utf-8')) as Snapshot;
}

export interface ServerHandle {
  proc: ChildProcess;
  port: number;
}

export function startServer(datasetPath: string): Promise<ServerHandle> {
  const proc = spawn(PYTHON, ['-m', 'crosstrace.cli', 'serve',
    '--data', datasetPath, '--port', '0'], { cwd: REPO_ROOT });
  return new Promise((resolvePort, reject) => {
    let out = '';
    proc.stdout!.on('data', (chunk: Buffer) => {
      out += chunk.toString();
      const m = /listening on ws:\/\/[^:]+:(\d+)/.exec(out);
      if (m) resolvePort({ proc, port: parseInt(m[1], 10) });
    });
    proc.on('error', reject);
    proc.on('exit', (code) => reject(new Error(`server exited early (${code})`)));
    setTimeout(() => reject(new Error('server start timeout')), 15000);
  });
}

/** Cubic Bezier point for choreographing cursors along known link shapes. */
export function cubicAt(points: Point[], t: number): Point {
  const [p0, p1, p2, p3] = points;
  const mt = 1 - t;
  return [
    mt * mt * mt * p0[0] + 3 * mt * mt * t * p1[0] + 3 * mt * t * t * p2[0] + t * t * t * p3[0],
    mt * mt * mt * p0[1] + 3 * mt * mt * t * p1[1] + 3 * mt * t * t * p2[1] + t * t * t * p3[1],
  ];
}
