"""Deterministic cross-view relationship tracing.

Core pieces: the relation model with closed-bicluster mining, arc-length
path geometry with the two-phase closest-point search, the focus-transition
engine, bundle routing, a study-scale dataset generator, and a headless
replay harness with a WebSocket server for the companion UI.
"""

from .engine import EngineConfig, TraceSession
from .generator import GenSpec, generate
from .harness import replay, verify_finding
from .model import Bicluster, Entity, RelationGraph, View

__all__ = [
    "Bicluster",
    "EngineConfig",
    "Entity",
    "GenSpec",
    "RelationGraph",
    "TraceSession",
    "View",
    "generate",
    "replay",
    "verify_finding",
]
