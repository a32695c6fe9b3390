"""WebSocket server exposing the engine protocol to the UI.

One session per connection; messages are single JSON objects. Events:

    {"event": "loaded", "static": ..., "state": ...}   after load
    {"event": "snapshot", "seq": n, "state": ...}      after each command
    {"event": "log", "record": ...}                    per log record
    {"event": "hover", "info": ...}                    hover/click lookups
    {"event": "error", "message": ...}                 rejected command
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path as FsPath

from websockets.asyncio.server import serve as ws_serve

from .engine import TraceSession
from .errors import TraceError
from .harness import compute_metrics
from .model import RelationGraph
from .protocol import apply_command, canonical_json


class EngineServer:
    def __init__(self, data_path: str, host: str = "127.0.0.1", port: int = 0):
        self.data_path = FsPath(data_path)
        self.host = host
        self.port = port

    def _load_graph(self, name: str | None) -> RelationGraph:
        path = self.data_path
        if name and self.data_path.is_dir():
            candidate = (self.data_path / name).resolve()
            if candidate.parent != self.data_path.resolve() or candidate.suffix != ".json":
                raise TraceError(f"invalid dataset name {name!r}")
            path = candidate
        elif path.is_dir():
            raise TraceError("server started on a directory; load needs a dataset name")
        return RelationGraph.load(path)

    async def _handle(self, websocket) -> None:
        session: TraceSession | None = None
        seq = 0
        async for message in websocket:
            try:
                cmd = json.loads(message)
            except json.JSONDecodeError:
                await websocket.send(canonical_json(
                    {"event": "error", "message": "invalid JSON"}))
                continue
            try:
                if cmd.get("cmd") == "load":
                    graph = self._load_graph(cmd.get("data"))
                    session = TraceSession(graph)
                    await websocket.send(canonical_json({
                        "event": "loaded",
                        "static": session.static_payload(),
                        "state": session.snapshot(),
                    }))
                    continue
                if session is None:
                    raise TraceError("no dataset loaded")
                t = int(cmd.get("t", 0))
                record = apply_command(session, cmd, t)
                seq += 1
                if record is not None:
                    await websocket.send(canonical_json(
                        {"event": "log", "record": record.to_json_obj()}))
                if record is not None and record.kind in ("hover", "click"):
                    await websocket.send(canonical_json({
                        "event": "hover",
                        "info": {"label": record.payload["label"],
                                 "highlight": record.payload["highlight"]},
                    }))
                await websocket.send(canonical_json({
                    "event": "snapshot", "seq": seq, "state": session.snapshot(),
                    "metrics": compute_metrics(session.log),
                }))
            except TraceError as e:
                await websocket.send(canonical_json(
                    {"event": "error", "message": str(e)}))

    async def run(self) -> None:
        async with ws_serve(self._handle, self.host, self.port) as server:
            port = server.sockets[0].getsockname()[1] if server.sockets else self.port
            print(f"listening on ws://{self.host}:{port}", flush=True)
            await asyncio.Future()


def serve_forever(data_path: str, host: str = "127.0.0.1", port: int = 0) -> None:
    asyncio.run(EngineServer(data_path, host, port).run())
