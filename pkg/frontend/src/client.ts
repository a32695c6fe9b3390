// Engine protocol client. Commands are fire-and-forget: callers enqueue and
// the socket preserves ordering; snapshots and log records arrive as events.

import type { Command, ServerEvent, Snapshot, StaticPayload } from './types.js';

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onMessage(handler: (data: string) => void): void;
  onOpen(handler: () => void): void;
  onClose(handler: () => void): void;
}

/** Adapter for the browser's native WebSocket. */
export function browserSocket(url: string): SocketLike {
  const ws = new WebSocket(url);
  return {
    send: (data) => ws.send(data),
    close: () => ws.close(),
    onMessage: (h) => { ws.onmessage = (e) => h(String(e.data)); },
    onOpen: (h) => { ws.onopen = () => h(); },
    onClose: (h) => { ws.onclose = () => h(); },
  };
}

export interface ClientHandlers {
  onLoaded?: (payload: StaticPayload, state: Snapshot) => void;
  onSnapshot?: (state: Snapshot, metrics: Record<string, number>) => void;
  onHover?: (info: { label: string; highlight: string }) => void;
  onError?: (message: string) => void;
}

export class EngineClient {
  private socket: SocketLike;
  private handlers: ClientHandlers;
  private clock: () => number;
  private opened = false;
  private queue: string[] = [];
  /** every command sent, with its timestamp: replayable as a script */
  readonly sent: Array<Command & { t: number }> = [];

  constructor(socket: SocketLike, handlers: ClientHandlers = {},
              clock: () => number = () => Date.now()) {
    this.socket = socket;
    this.handlers = handlers;
    this.clock = clock;
    socket.onOpen(() => {
      this.opened = true;
      for (const msg of this.queue) this.socket.send(msg);
      this.queue = [];
    });
    socket.onMessage((data) => this.dispatch(JSON.parse(data) as ServerEvent));
  }

  send(cmd: Command): void {
    const stamped = { ...cmd, t: this.clock() };
    this.sent.push(stamped);
    const text = JSON.stringify(stamped);
    if (this.opened) this.socket.send(text);
    else this.queue.push(text);
  }

  load(data?: string): void {
    this.send(data ? { cmd: 'load', data } : { cmd: 'load' });
  }

  private dispatch(ev: ServerEvent): void {
    switch (ev.event) {
      case 'loaded':
        this.handlers.onLoaded?.(ev.static, ev.state);
        break;
      case 'snapshot':
        this.handlers.onSnapshot?.(ev.state, ev.metrics);
        break;
      case 'hover':
        this.handlers.onHover?.(ev.info);
        break;
      case 'error':
        this.handlers.onError?.(ev.message);
        break;
      case 'log':
        break; // metrics arrive with snapshots; raw records are server-side
    }
  }

  /** The sent command stream as an NDJSON replay script. */
  script(): string {
    return this.sent.map((c) => JSON.stringify(c)).join('\n') + '\n';
  }
}
