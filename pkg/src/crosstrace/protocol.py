"""Command/event protocol: one JSON object per message.

Commands drive a TraceSession; events are full state snapshots plus
incremental log records. The log file format is bit-exact: canonical JSON
with fixed field order and floats rounded to six decimals, one record per
line, UTF-8.
"""

from __future__ import annotations

import json
from typing import Any

from .engine import LogRecord, TraceSession
from .errors import InvalidArgumentError

COMMANDS = ("load", "toggleMarker", "drag", "endDrag", "toggleFoci", "attract",
            "pin", "unpin", "setTransparency", "setUnpinnedVisibility",
            "hover", "click")


def _round_floats(value: Any) -> Any:
    if isinstance(value, float):
        r = round(value, 6)
        if r.is_integer():
            return int(r)  # also normalizes -0.0
        return r
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def canonical_json(obj: Any) -> str:
    """Deterministic, platform-stable JSON text (fixed field order, 6-decimal floats)."""
    return json.dumps(_round_floats(obj), ensure_ascii=False, separators=(",", ":"))


def _need(cmd: dict, key: str) -> Any:
    if key not in cmd:
        raise InvalidArgumentError(f"command {cmd.get('cmd')!r} needs field {key!r}")
    return cmd[key]


def apply_command(session: TraceSession, cmd: dict, t: int = 0) -> LogRecord | None:
    """Apply one protocol command; returns the log record it produced (if any).

    ``load`` is session setup, not a user interaction, and is never logged.
    Raises NotFoundError / InvalidArgumentError / InvalidStateError on bad
    commands; callers translate those into protocol errors.
    """
    if not isinstance(cmd, dict) or "cmd" not in cmd:
        raise InvalidArgumentError("command must be an object with a 'cmd' field")
    name = cmd["cmd"]
    if name not in COMMANDS:
        raise InvalidArgumentError(f"unknown command {name!r}")
    record: LogRecord | None = None

    if name == "load":
        pass
    elif name == "toggleMarker":
        element = _need(cmd, "element")
        marker_id = session.toggle_marker(element)
        record = LogRecord(t, "toggleMarker", element,
                           {"element": element, "enabled": marker_id is not None})
    elif name == "drag":
        marker = _need(cmd, "marker")
        x, y = float(_need(cmd, "x")), float(_need(cmd, "y"))
        session.drag_marker(marker, (x, y))
        record = LogRecord(t, "drag", marker, {"marker": marker, "x": x, "y": y})
    elif name == "endDrag":
        marker = _need(cmd, "marker")
        session.end_drag(marker)
        record = LogRecord(t, "drag", marker, {"marker": marker, "phase": "end"})
    elif name == "toggleFoci":
        marker = _need(cmd, "marker")
        enabled = session.toggle_foci(marker)
        record = LogRecord(t, "toggleFoci", marker, {"marker": marker, "enabled": enabled})
    elif name == "attract":
        marker = _need(cmd, "marker")
        mode = _need(cmd, "mode")
        count = session.attract_copies(marker, mode)
        record = LogRecord(t, "attract", marker,
                           {"marker": marker, "mode": mode, "copies": count})
    elif name == "pin":
        marker = _need(cmd, "marker")
        link = session.pin_link(marker)
        record = LogRecord(t, "pin", link, {"marker": marker, "link": link, "action": "pin"})
    elif name == "unpin":
        link = _need(cmd, "link")
        session.unpin_link(link)
        record = LogRecord(t, "pin", link, {"link": link, "action": "unpin"})
    elif name == "setTransparency":
        mode = _need(cmd, "mode")
        session.set_transparency(mode)
        record = LogRecord(t, "transparency", None, {"mode": mode})
    elif name == "setUnpinnedVisibility":
        mode = _need(cmd, "mode")
        session.set_unpinned_visibility(mode)
        record = LogRecord(t, "transparency", None, {"visibility": mode})
    elif name == "hover":
        target = _need(cmd, "target")
        info = session.hover(target)
        record = LogRecord(t, "hover", target,
                           {"target": target, "label": info.label,
                            "highlight": info.highlight_id})
    elif name == "click":
        target = _need(cmd, "target")
        info = session.hover(target)  # same resolution; highlights persist UI-side
        record = LogRecord(t, "click", target,
                           {"target": target, "label": info.label,
                            "highlight": info.highlight_id})
    if record is not None:
        session.log.append(record)
    return record


def serialize_log(records: list[LogRecord]) -> str:
    """Newline-delimited canonical JSON, one record per line."""
    return "".join(canonical_json(r.to_json_obj()) + "\n" for r in records)


def serialize_snapshot(snapshot: dict) -> str:
    return canonical_json(snapshot) + "\n"
