"""Entities, views, individual relations and mined bi-group relationships.

The relation graph is immutable after construction and safe to share across
threads; bicluster mining is a pure function of the relation set and is
cached per adjacent view pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InvalidArgumentError, NotFoundError
from .mining import mine_biclusters

ENTITY_TYPES = ("person", "location", "organization", "generic")
VIEW_KINDS = ("map", "barChart", "nodeLinkGraph", "relationshipView")

Rect = tuple[float, float, float, float]  # x, y, w, h


@dataclass(frozen=True)
class Entity:
    id: str
    entity_type: str
    label: str
    position: tuple[float, float]
    view_id: str


@dataclass(frozen=True)
class View:
    id: str
    kind: str
    rect: Rect


@dataclass(frozen=True)
class Bicluster:
    """A closed m:n relationship between entity sets of two views."""

    left_view_id: str
    right_view_id: str
    left_entities: tuple[str, ...]
    right_entities: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.left_entities) + len(self.right_entities)

    def pairs(self) -> Iterable[tuple[str, str]]:
        for a in self.left_entities:
            for b in self.right_entities:
                yield (a, b)


@dataclass(frozen=True)
class Chain:
    """Two biclusters joined through a shared middle entity set."""

    first: Bicluster
    second: Bicluster
    shared: tuple[str, ...]


def _rects_disjoint(a: Rect, b: Rect) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return ax + aw <= bx or bx + bw <= ax or ay + ah <= by or by + bh <= ay


class RelationGraph:
    """Validated, queryable dataset: views, entities and relations."""

    def __init__(self, views: Sequence[View], entities: Sequence[Entity],
                 relations: Iterable[tuple[str, str]]):
        self.views: dict[str, View] = {}
        for v in views:
            if v.id in self.views:
                raise InvalidArgumentError(f"duplicate view id {v.id!r}")
            if v.kind not in VIEW_KINDS:
                raise InvalidArgumentError(f"unknown view kind {v.kind!r}")
            self.views[v.id] = v
        vlist = list(self.views.values())
        for i in range(len(vlist)):
            for j in range(i + 1, len(vlist)):
                if not _rects_disjoint(vlist[i].rect, vlist[j].rect):
                    raise InvalidArgumentError(
                        f"views {vlist[i].id!r} and {vlist[j].id!r} overlap")

        self.entities: dict[str, Entity] = {}
        self._by_view: dict[str, list[Entity]] = {v.id: [] for v in views}
        for e in entities:
            if e.id in self.entities:
                raise InvalidArgumentError(f"duplicate entity id {e.id!r}")
            if e.entity_type not in ENTITY_TYPES:
                raise InvalidArgumentError(f"unknown entity type {e.entity_type!r}")
            view = self.views.get(e.view_id)
            if view is None:
                raise InvalidArgumentError(f"entity {e.id!r} references missing view")
            x, y, w, h = view.rect
            if not (x <= e.position[0] <= x + w and y <= e.position[1] <= y + h):
                raise InvalidArgumentError(f"entity {e.id!r} lies outside its view")
            self.entities[e.id] = e
            self._by_view[e.view_id].append(e)
        for lst in self._by_view.values():
            lst.sort(key=lambda e: e.id)

        self.relations: list[tuple[str, str]] = []
        self._neighbors: dict[str, set[str]] = {}
        seen: set[tuple[str, str]] = set()
        for a, b in relations:
            ea = self.entities.get(a)
            eb = self.entities.get(b)
            if ea is None or eb is None:
                raise InvalidArgumentError(f"relation ({a!r}, {b!r}) references missing entity")
            if ea.view_id == eb.view_id:
                raise InvalidArgumentError(f"relation ({a!r}, {b!r}) stays inside one view")
            key = (a, b) if a <= b else (b, a)
            if key in seen:
                raise InvalidArgumentError(f"duplicate relation {key!r}")
            seen.add(key)
            self.relations.append(key)
            self._neighbors.setdefault(a, set()).add(b)
            self._neighbors.setdefault(b, set()).add(a)
        self.relations.sort()
        self._bicluster_cache: dict[tuple[str, str, int], list[Bicluster]] = {}

    # -- queries ---------------------------------------------------------

    def entity(self, entity_id: str) -> Entity:
        e = self.entities.get(entity_id)
        if e is None:
            raise NotFoundError(f"unknown entity {entity_id!r}")
        return e

    def entities_in_view(self, view_id: str) -> list[Entity]:
        if view_id not in self.views:
            raise NotFoundError(f"unknown view {view_id!r}")
        return self._by_view[view_id]

    def related_elements(self, entity_id: str) -> dict[str, list[str]]:
        """All entities individually related to ``entity_id``, per view."""
        self.entity(entity_id)
        grouped: dict[str, list[str]] = {}
        for other in sorted(self._neighbors.get(entity_id, ())):
            grouped.setdefault(self.entities[other].view_id, []).append(other)
        return grouped

    def related_flat(self, entity_id: str) -> list[str]:
        self.entity(entity_id)
        return sorted(self._neighbors.get(entity_id, ()))

    def are_related(self, a: str, b: str) -> bool:
        return b in self._neighbors.get(a, ())

    def data_views(self) -> list[View]:
        """Non-relationship views, left to right."""
        return sorted((v for v in self.views.values() if v.kind != "relationshipView"),
                      key=lambda v: v.rect[0])

    def adjacent_view_pairs(self) -> list[tuple[str, str]]:
        views = self.data_views()
        return [(views[i].id, views[i + 1].id) for i in range(len(views) - 1)]

    def biclusters_between(self, left_view: str, right_view: str,
                           min_side: int = 2) -> list[Bicluster]:
        key = (left_view, right_view, min_side)
        if key not in self._bicluster_cache:
            self._bicluster_cache[key] = mine_biclusters(self, left_view, right_view, min_side)
        return self._bicluster_cache[key]

    def all_biclusters(self, min_side: int = 2) -> list[Bicluster]:
        out: list[Bicluster] = []
        for left, right in self.adjacent_view_pairs():
            out.extend(self.biclusters_between(left, right, min_side))
        return out

    def bicluster_chains(self, min_side: int = 2) -> list[Chain]:
        pairs = self.adjacent_view_pairs()
        chains: list[Chain] = []
        for i in range(len(pairs) - 1):
            for b1 in self.biclusters_between(*pairs[i], min_side=min_side):
                for b2 in self.biclusters_between(*pairs[i + 1], min_side=min_side):
                    chain = chain_biclusters(b1, b2)
                    if chain is not None:
                        chains.append(chain)
        return chains

    # -- serialization ---------------------------------------------------

    def to_document(self) -> dict:
        return {
            "views": [{"id": v.id, "kind": v.kind, "rect": list(v.rect)}
                      for v in self.views.values()],
            "entities": [{"id": e.id, "type": e.entity_type, "label": e.label,
                          "view": e.view_id, "pos": list(e.position)}
                         for e in self.entities.values()],
            "relations": [list(r) for r in self.relations],
        }

    @classmethod
    def from_document(cls, doc: Mapping) -> "RelationGraph":
        views = [View(v["id"], v["kind"], tuple(v["rect"])) for v in doc["views"]]
        entities = [Entity(e["id"], e["type"], e["label"], tuple(e["pos"]), e["view"])
                    for e in doc["entities"]]
        relations = [(a, b) for a, b in doc["relations"]]
        return cls(views, entities, relations)

    @classmethod
    def load(cls, path) -> "RelationGraph":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_document(json.load(f))


def chain_biclusters(b1: Bicluster, b2: Bicluster) -> Chain | None:
    """Chain two biclusters through their shared middle view.

    Returns the chain with the shared entity set, or None when the middle
    sets are disjoint.
    """
    if b1.right_view_id != b2.left_view_id:
        raise InvalidArgumentError(
            f"cannot chain: {b1.right_view_id!r} != {b2.left_view_id!r}")
    shared = tuple(sorted(set(b1.right_entities) & set(b2.left_entities)))
    if not shared:
        return None
    return Chain(first=b1, second=b2, shared=shared)
