"""Relationship views and bundle-element routing.

When bundling is enabled, each adjacent view pair gets a relationship view in
the horizontal gap between the two data views. Every mined bicluster becomes
one bundle element inside that view, and every individual relation covered by
at least one bicluster is rendered as two legs through the bundle element of
its largest covering bicluster (ties: lowest bundle id). Relations covered by
no bicluster keep their direct link. Each bundle element always carries one
leg per member element, so a c x d bicluster contributes c + d legs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Bicluster, RelationGraph, Rect, View


@dataclass(frozen=True)
class BundleElement:
    """One bicluster's junction point inside a relationship view."""

    id: str
    view_id: str
    bicluster: Bicluster
    position: tuple[float, float]
    label: str


@dataclass(frozen=True)
class Routing:
    """The bundling layer derived from a relation graph."""

    relationship_views: tuple[View, ...]
    bundles: tuple[BundleElement, ...]
    # relation pair -> bundle id carrying it (absent = direct link)
    assignment: dict[tuple[str, str], str]
    # (element id, bundle id) legs, ordered
    legs: tuple[tuple[str, str], ...]
    direct_pairs: tuple[tuple[str, str], ...]


def relationship_view_rects(graph: RelationGraph, width_ratio: float = 0.7,
                            ) -> list[tuple[str, str, str, Rect]]:
    """One gap rect per adjacent data-view pair: (view_id, left, right, rect)."""
    out = []
    views = graph.data_views()
    for i in range(len(views) - 1):
        a, b = views[i], views[i + 1]
        gap_x0 = a.rect[0] + a.rect[2]
        gap_x1 = b.rect[0]
        gap = gap_x1 - gap_x0
        w = gap * width_ratio
        x = gap_x0 + (gap - w) / 2
        y = min(a.rect[1], b.rect[1])
        h = max(a.rect[1] + a.rect[3], b.rect[1] + b.rect[3]) - y
        out.append((f"rv:{a.id}:{b.id}", a.id, b.id, (x, y, w, h)))
    return out


def build_relationship_views(graph: RelationGraph) -> list[View]:
    """Relationship views occupying the gaps between adjacent data views."""
    return [View(vid, "relationshipView", rect)
            for vid, _, _, rect in relationship_view_rects(graph)]


def build_bundles(graph: RelationGraph, min_side: int = 2) -> list[BundleElement]:
    """One bundle element per mined bicluster, laid out vertically.

    Within each relationship view, elements are ordered by bicluster size
    (total entity count) descending, ties by id ascending.
    """
    bundles: list[BundleElement] = []
    rv_by_pair = {}
    for v in graph.views.values():
        if v.kind == "relationshipView":
            parts = v.id.split(":")
            if len(parts) == 3:
                rv_by_pair[(parts[1], parts[2])] = v
    for left, right in graph.adjacent_view_pairs():
        view = rv_by_pair.get((left, right))
        if view is None:
            continue
        bics = graph.biclusters_between(left, right, min_side)
        # ids follow the deterministic mining order
        entries = [(f"bun:{left}:{right}:{i:02d}", b) for i, b in enumerate(bics)]
        entries.sort(key=lambda e: (-e[1].size, e[0]))
        x = view.rect[0] + view.rect[2] / 2
        n = len(entries)
        for i, (bid, b) in enumerate(entries):
            y = view.rect[1] + view.rect[3] * (i + 1) / (n + 1)
            label = f"{len(b.left_entities)}x{len(b.right_entities)} bundle"
            bundles.append(BundleElement(bid, view.id, b, (x, y), label))
    return bundles


def route_links(graph: RelationGraph, bundles: list[BundleElement]) -> Routing:
    """Assign covered relations to bundles and derive legs and direct links.

    A pair covered by several biclusters routes through the largest one
    (ties: lowest bundle id). Legs cover every (element, bundle) membership,
    independent of the assignment, so leg counts are c + d per bundle.
    """
    covering: dict[tuple[str, str], list[BundleElement]] = {}
    for be in bundles:
        for a, b in be.bicluster.pairs():
            key = (a, b) if a <= b else (b, a)
            covering.setdefault(key, []).append(be)
    assignment: dict[tuple[str, str], str] = {}
    for key, cands in covering.items():
        cands.sort(key=lambda be: (-be.bicluster.size, be.id))
        assignment[key] = cands[0].id

    legs: list[tuple[str, str]] = []
    for be in bundles:
        for e in be.bicluster.left_entities + be.bicluster.right_entities:
            legs.append((e, be.id))

    direct = tuple(r for r in graph.relations if r not in assignment)
    rvs = tuple(v for v in graph.views.values() if v.kind == "relationshipView")
    return Routing(relationship_views=rvs, bundles=tuple(bundles),
                   assignment=assignment, legs=tuple(legs), direct_pairs=direct)


def build_routing(graph: RelationGraph, min_side: int = 2) -> Routing | None:
    """The full bundling layer, or None when the graph has no relationship views."""
    if not any(v.kind == "relationshipView" for v in graph.views.values()):
        return None
    return route_links(graph, build_bundles(graph, min_side))
