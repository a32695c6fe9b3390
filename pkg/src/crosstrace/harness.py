"""Headless session driving: scripted replay, metrics, finding verification.

Scripts are newline-delimited JSON commands, each carrying an explicit
timestamp ``t`` (milliseconds) so time-derived metrics are reproducible
without wall clocks. Logs are written in the bit-exact canonical format of
:mod:`crosstrace.protocol`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .engine import EngineConfig, LogRecord, TraceSession
from .errors import NotFoundError, ReplayError, TraceError
from .model import RelationGraph
from .protocol import apply_command


@dataclass
class ReplayResult:
    final_snapshot: dict
    log: list[LogRecord]
    metrics: dict
    checkpoints: list[dict] = field(default_factory=list)


def parse_script(text: str) -> list[dict]:
    """Parse an NDJSON command script; raises ReplayError with the bad index."""
    commands = []
    index = 0
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise ReplayError(f"invalid JSON: {e.msg}", index) from e
        commands.append(obj)
        index += 1
    return commands


def compute_metrics(log: list[LogRecord]) -> dict:
    """Session metrics, a pure function of the log."""
    hover_count = sum(1 for r in log if r.kind == "hover")
    click_count = sum(1 for r in log if r.kind == "click")
    duration = log[-1].timestamp_ms - log[0].timestamp_ms if len(log) >= 2 else 0
    metrics = {
        "hoverCount": hover_count,
        "clickCount": click_count,
        "commandCount": len(log),
        "durationMs": duration,
    }
    if click_count > 0:
        metrics["hoverToClickRatio"] = hover_count / click_count
    return metrics


def replay(graph: RelationGraph, commands: list[dict],
           checkpoint_every: int | None = None,
           config: EngineConfig | None = None) -> ReplayResult:
    """Apply a command script in order on a fresh session."""
    session = TraceSession(graph, config)
    checkpoints: list[dict] = []
    last_t: int | None = None
    for i, cmd in enumerate(commands):
        if not isinstance(cmd, dict):
            raise ReplayError("command is not an object", i)
        t = cmd.get("t", 0)
        if not isinstance(t, int):
            raise ReplayError("timestamp 't' must be an integer", i)
        if last_t is not None and t < last_t:
            raise ReplayError(f"timestamp {t} decreases (previous {last_t})", i)
        last_t = t
        try:
            apply_command(session, cmd, t)
        except ReplayError:
            raise
        except TraceError as e:
            raise ReplayError(str(e), i) from e
        if checkpoint_every and (i + 1) % checkpoint_every == 0:
            checkpoints.append(session.snapshot())
    return ReplayResult(final_snapshot=session.snapshot(), log=session.log,
                        metrics=compute_metrics(session.log),
                        checkpoints=checkpoints)


# -- finding verification --------------------------------------------------


def task_answer(graph: RelationGraph, target_view: str, required: list[str]) -> set[str]:
    """Entities of ``target_view`` related to every required entity.

    Intersection of the required entities' related sets, restricted to the
    target view (this is the production route; tests check it against a
    nested-loop join over the raw relation list).
    """
    if target_view not in graph.views:
        raise NotFoundError(f"unknown view {target_view!r}")
    for rid in required:
        graph.entity(rid)
    answer = {e.id for e in graph.entities_in_view(target_view)}
    for rid in required:
        related = set(graph.related_flat(rid))
        answer &= related
    return answer


def verify_finding(graph: RelationGraph, claim: dict) -> bool:
    """Check a reported finding against the relation-graph ground truth.

    ``claim`` carries the task (target view plus the conjunction of required
    related entities) and the reported answer set.
    """
    task = claim.get("task", {})
    target_view = task.get("targetView")
    required = list(task.get("required", []))
    answer = set(claim.get("answer", []))
    for eid in answer:
        graph.entity(eid)
    truth = task_answer(graph, target_view, required)
    return answer == truth
