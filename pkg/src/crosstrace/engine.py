"""The focus-transition state machine.

A trace session owns the focus markers, the visual-link styling state, the
attracted copies and the interaction log. Commands are applied sequentially
(single writer); every snapshot is a plain immutable dict safe to hand to
concurrent readers.

Styling is a pure function of marker state. Links are classed as::

    managed    pinned via a focus marker (always drawn, opacity 1)
    active     the link currently being traversed by some marker
    related    other links of a traced element
    unrelated  everything else

Dynamic transparency follows the transition proportion of the marker: in
``fadeUnrelated`` mode unrelated links get opacity ``1 - proportion``; in
``fadeAllButActive`` related links fade too. With several markers a link
takes its strongest class and its maximum opacity. The unpinned-visibility
mode (normal / semiTransparent / hidden) then overrides opacities of all
unpinned links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bundling import BundleElement, Routing, build_routing
from .errors import InvalidArgumentError, InvalidStateError, NotFoundError
from .geometry import (
    Path,
    PathPoint,
    closest_point,
    first_rect_entry,
    link_path,
)
from .model import RelationGraph

TRANSPARENCY_MODES = ("off", "fadeUnrelated", "fadeAllButActive")
VISIBILITY_MODES = ("normal", "semiTransparent", "hidden")
ATTRACT_MODES = ("viewBorder", "nearMarker")

CLASS_RANK = {"unrelated": 0, "related": 1, "active": 2, "managed": 3}


@dataclass
class EngineConfig:
    """Tunable interaction constants (canvas units)."""

    switch_hysteresis: float = 2.0     # rival link must win by this much
    attract_radius: float = 24.0       # nearMarker stop distance from anchor
    attract_spread: float = 8.0        # extra arc per de-overlapped copy
    overlap_distance: float = 8.0      # copies closer than this are spread
    subpath_spacing: float = 4.0       # progress polyline sample spacing
    min_side: int = 2                  # bicluster mining threshold


@dataclass(frozen=True)
class LinkDef:
    """Immutable link geometry: a direct relation link or a bundle leg."""

    id: str
    a: str
    b: str
    kind: str  # "direct" | "leg"
    path: Path

    def other(self, element_id: str) -> str:
        return self.b if element_id == self.a else self.a


@dataclass
class Marker:
    id: str
    anchor: str                      # trace origin (may become a bundle id)
    active_link: str | None = None
    arc: float = 0.0                 # measured from the anchor's endpoint
    proportion: float = 0.0
    foci_enabled: bool = False
    managing: bool = False           # link-management (pin & drag) mode
    managed_pos: tuple[float, float] | None = None


@dataclass
class LinkState:
    pinned: bool = False
    pinned_by: str | None = None
    pinned_path: Path | None = None


@dataclass
class LogRecord:
    timestamp_ms: int
    kind: str
    target_id: str | None
    payload: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"timestampMs": self.timestamp_ms, "kind": self.kind,
                "targetId": self.target_id, "payload": self.payload}


@dataclass(frozen=True)
class HoverInfo:
    label: str
    highlight_id: str


class TraceSession:
    """Single-writer interactive tracing session over a relation graph."""

    def __init__(self, graph: RelationGraph, config: EngineConfig | None = None):
        self.graph = graph
        self.config = config or EngineConfig()
        self.routing: Routing | None = build_routing(graph, self.config.min_side)
        self.links: dict[str, LinkDef] = {}
        self.link_states: dict[str, LinkState] = {}
        self._incident: dict[str, list[str]] = {}
        self._bundles: dict[str, BundleElement] = {}
        self._route_cache: dict[tuple[str, str], Path] = {}
        self.markers: dict[str, Marker] = {}
        self.copies: list[dict] = []
        self.transparency_mode = "off"
        self.visibility_mode = "normal"
        self.log: list[LogRecord] = []
        self._marker_seq = 0
        self._build_links()

    # -- construction ------------------------------------------------------

    def _element_pos(self, element_id: str) -> tuple[float, float]:
        if element_id in self._bundles:
            return self._bundles[element_id].position
        return self.graph.entity(element_id).position

    def _add_link(self, link: LinkDef) -> None:
        self.links[link.id] = link
        self.link_states[link.id] = LinkState()
        self._incident.setdefault(link.a, []).append(link.id)
        self._incident.setdefault(link.b, []).append(link.id)

    def _build_links(self) -> None:
        if self.routing is None:
            direct = self.graph.relations
            legs: tuple[tuple[str, str], ...] = ()
        else:
            for be in self.routing.bundles:
                self._bundles[be.id] = be
            direct = self.routing.direct_pairs
            legs = self.routing.legs
        for a, b in direct:
            a, b = sorted((a, b))
            path = link_path(self._element_pos(a), self._element_pos(b))
            self._add_link(LinkDef(f"lnk:{a}:{b}", a, b, "direct", path))
        for e, bid in legs:
            a, b = sorted((e, bid))
            path = link_path(self._element_pos(a), self._element_pos(b))
            self._add_link(LinkDef(f"leg:{e}:{bid}", a, b, "leg", path))
        for lst in self._incident.values():
            lst.sort()

    # -- id resolution -------------------------------------------------------

    def element_exists(self, element_id: str) -> bool:
        return element_id in self.graph.entities or element_id in self._bundles

    def _require_element(self, element_id: str) -> None:
        if not self.element_exists(element_id):
            raise NotFoundError(f"unknown element {element_id!r}")

    def _require_marker(self, marker_id: str) -> Marker:
        m = self.markers.get(marker_id)
        if m is None:
            raise NotFoundError(f"unknown marker {marker_id!r}")
        return m

    def _element_view(self, element_id: str) -> str:
        if element_id in self._bundles:
            return self._bundles[element_id].view_id
        return self.graph.entity(element_id).view_id

    def incident_links(self, element_id: str) -> list[str]:
        return self._incident.get(element_id, [])

    # -- orientation helpers -------------------------------------------------

    def _oriented_s(self, link: LinkDef, anchor: str, arc: float) -> float:
        """Path-native arc length for an arc measured from ``anchor``."""
        return arc if link.a == anchor else link.path.total_length - arc

    def _oriented_point(self, link: LinkDef, anchor: str, arc: float) -> tuple[float, float]:
        return link.path.point_at(self._oriented_s(link, anchor, arc))

    def _arc_from_anchor(self, link: LinkDef, anchor: str, pp: PathPoint) -> float:
        return pp.arc_length if link.a == anchor else link.path.total_length - pp.arc_length

    # -- commands --------------------------------------------------------

    def toggle_marker(self, element_id: str) -> str | None:
        """Create a marker at the element, or remove the one anchored there.

        Returns the new marker id, or None when a marker was removed.
        """
        self._require_element(element_id)
        for mid, m in list(self.markers.items()):
            if m.anchor == element_id:
                del self.markers[mid]
                return None
        self._marker_seq += 1
        mid = f"mk{self._marker_seq}"  # no colon: focus ids embed marker + link ids
        self.markers[mid] = Marker(id=mid, anchor=element_id)
        return mid

    def drag_marker(self, marker_id: str, cursor: tuple[float, float]) -> None:
        """Snap the marker to the closest point on its anchor's links.

        Switches the active link only when a rival beats the current one by
        more than the hysteresis margin. Reaching the far end of a leg whose
        endpoint is a bundle element re-anchors the trace at the bundle.
        While the marker manages a pinned link, dragging repositions that
        link instead.
        """
        m = self._require_marker(marker_id)
        if m.managing:
            self._reposition_pinned(m, cursor)
            return
        link_ids = self.incident_links(m.anchor)
        if not link_ids:
            return
        cands: dict[str, tuple[PathPoint, float]] = {}
        for lid in link_ids:
            pp = closest_point(self.links[lid].path, cursor)
            d = math.hypot(pp.position[0] - cursor[0], pp.position[1] - cursor[1])
            cands[lid] = (pp, d)
        best_id = min(cands, key=lambda lid: (cands[lid][1], link_ids.index(lid)))
        chosen = best_id
        if m.active_link in cands and chosen != m.active_link:
            if cands[chosen][1] >= cands[m.active_link][1] - self.config.switch_hysteresis:
                chosen = m.active_link
        pp, dist = cands[chosen]
        link = self.links[chosen]
        arc = self._arc_from_anchor(link, m.anchor, pp)

        # crossing into a bundle re-anchors the trace there
        far = link.other(m.anchor)
        if (far in self._bundles
                and arc >= link.path.total_length - 1e-9):
            sub_ids = [lid for lid in self.incident_links(far) if lid != chosen]
            best_sub = None
            for lid in sub_ids:
                spp = closest_point(self.links[lid].path, cursor)
                sd = math.hypot(spp.position[0] - cursor[0], spp.position[1] - cursor[1])
                if best_sub is None or sd < best_sub[2]:
                    best_sub = (lid, spp, sd)
            if best_sub is not None and best_sub[2] < dist:
                m.anchor = far
                chosen, pp = best_sub[0], best_sub[1]
                link = self.links[chosen]
                arc = self._arc_from_anchor(link, far, pp)

        m.active_link = chosen
        m.arc = arc
        total = link.path.total_length
        m.proportion = arc / total if total > 0 else 0.0

    def end_drag(self, marker_id: str) -> None:
        self._require_marker(marker_id)

    def toggle_foci(self, marker_id: str) -> bool:
        m = self._require_marker(marker_id)
        m.foci_enabled = not m.foci_enabled
        return m.foci_enabled

    def supportive_foci(self, marker_id: str) -> list[dict]:
        """One focus per non-active link of the anchor, at the marker's proportion."""
        m = self._require_marker(marker_id)
        if not m.foci_enabled or m.active_link is None:
            return []
        out = []
        for lid in self.incident_links(m.anchor):
            if lid == m.active_link:
                continue
            link = self.links[lid]
            total = link.path.total_length
            arc = m.proportion * total
            pos = self._oriented_point(link, m.anchor, arc)
            out.append({"marker": m.id, "link": lid, "pos": pos,
                        "proportion": arc / total if total > 0 else 0.0})
        return out

    def _related_of(self, element_id: str) -> list[str]:
        if element_id in self._bundles:
            b = self._bundles[element_id].bicluster
            return sorted(b.left_entities + b.right_entities)
        return self.graph.related_flat(element_id)

    def _route_path(self, anchor: str, related: str) -> Path:
        """Geometry from ``related`` to ``anchor`` (direct link or two legs)."""
        key = (anchor, related)
        cached = self._route_cache.get(key)
        if cached is not None:
            return cached
        parts: list[LinkDef] = []
        direct_id = "lnk:%s:%s" % tuple(sorted((anchor, related)))
        leg_id = f"leg:{related}:{anchor}" if anchor in self._bundles else None
        if direct_id in self.links:
            parts = [self.links[direct_id]]
        elif leg_id and leg_id in self.links:
            parts = [self.links[leg_id]]
        else:
            pair = tuple(sorted((anchor, related)))
            bid = self.routing.assignment.get(pair) if self.routing else None
            if bid is None:
                raise NotFoundError(f"no route between {related!r} and {anchor!r}")
            parts = [self.links[f"leg:{related}:{bid}"], self.links[f"leg:{anchor}:{bid}"]]
        # orient each part so the walk runs related -> anchor
        oriented: Path | None = None
        walk_from = related
        for link in parts:
            p = link.path if link.a == walk_from else link.path.reversed()
            oriented = p if oriented is None else oriented.concat(p)
            walk_from = link.other(walk_from)
        assert oriented is not None
        self._route_cache[key] = oriented
        return oriented

    def attract_copies(self, marker_id: str, mode: str) -> int:
        """Pull copies of related elements along their links toward the marker.

        ``viewBorder`` stops each copy where its route first enters the
        anchor's view; ``nearMarker`` stops at the configured arc distance
        from the anchor, spreading overlapping copies further out. Copies
        replace the previous batch and stay frozen until the next attract.
        """
        if mode not in ATTRACT_MODES:
            raise InvalidArgumentError(f"unknown attract mode {mode!r}")
        m = self._require_marker(marker_id)
        related = self._related_of(m.anchor)
        if not related:
            return 0
        rect = self.graph.views[self._element_view(m.anchor)].rect
        placed: list[tuple[float, float]] = []
        new_copies: list[dict] = []
        for src in related:
            route = self._route_path(m.anchor, src)  # runs src -> anchor
            total = route.total_length
            if mode == "viewBorder":
                hit = first_rect_entry(route, rect)
                pos = hit.position if hit is not None else route.end
            else:
                back = self.config.attract_radius
                pos = route.point_at(max(0.0, total - back))
                while any(math.hypot(pos[0] - q[0], pos[1] - q[1]) < self.config.overlap_distance
                          for q in placed) and back < total:
                    back += self.config.attract_spread
                    pos = route.point_at(max(0.0, total - back))
                placed.append(pos)
            new_copies.append({"id": f"cp:{src}", "source": src,
                               "pos": pos, "stopMode": mode})
        self.copies = new_copies
        return len(new_copies)

    def pin_link(self, marker_id: str) -> str:
        """Freeze the marker's active link as a managed (pinned) link."""
        m = self._require_marker(marker_id)
        if m.active_link is None:
            raise InvalidStateError("marker has no active link to pin")
        state = self.link_states[m.active_link]
        if state.pinned:
            raise InvalidStateError(f"link {m.active_link!r} is already pinned")
        state.pinned = True
        state.pinned_by = m.id
        state.pinned_path = self.links[m.active_link].path
        m.managing = True
        m.managed_pos = self._oriented_point(self.links[m.active_link], m.anchor, m.arc)
        return m.active_link

    def _reposition_pinned(self, m: Marker, cursor: tuple[float, float]) -> None:
        link = self.links[m.active_link]
        state = self.link_states[m.active_link]
        anchor_pos = self._element_pos(m.anchor)
        far_pos = self._element_pos(link.other(m.anchor))
        state.pinned_path = Path.polyline([anchor_pos, cursor, far_pos])
        m.managed_pos = cursor

    def reposition_pinned(self, link_id: str, cursor: tuple[float, float]) -> None:
        """Reroute a pinned link through the cursor (two-segment path)."""
        state = self.link_states.get(link_id)
        if state is None:
            raise NotFoundError(f"unknown link {link_id!r}")
        if not state.pinned:
            raise InvalidStateError(f"link {link_id!r} is not pinned")
        owner = self.markers.get(state.pinned_by or "")
        if owner is not None and owner.active_link == link_id:
            self._reposition_pinned(owner, cursor)
            return
        # pinned but its marker is gone: reroute between the stored endpoints
        link = self.links[link_id]
        state.pinned_path = Path.polyline(
            [self._element_pos(link.a), cursor, self._element_pos(link.b)])

    def unpin_link(self, link_id: str) -> None:
        state = self.link_states.get(link_id)
        if state is None:
            raise NotFoundError(f"unknown link {link_id!r}")
        if not state.pinned:
            raise InvalidStateError(f"link {link_id!r} is not pinned")
        owner = self.markers.get(state.pinned_by or "")
        if owner is not None and owner.active_link == link_id:
            owner.managing = False
            owner.managed_pos = None
        state.pinned = False
        state.pinned_by = None
        state.pinned_path = None

    def set_transparency(self, mode: str) -> None:
        if mode not in TRANSPARENCY_MODES:
            raise InvalidArgumentError(f"unknown transparency mode {mode!r}")
        self.transparency_mode = mode

    def set_unpinned_visibility(self, mode: str) -> None:
        if mode not in VISIBILITY_MODES:
            raise InvalidArgumentError(f"unknown visibility mode {mode!r}")
        self.visibility_mode = mode

    def hover(self, target_id: str) -> HoverInfo:
        """Label plus the original mark to highlight, for any hoverable id."""
        if target_id in self.graph.entities:
            e = self.graph.entities[target_id]
            return HoverInfo(label=e.label, highlight_id=e.id)
        if target_id in self._bundles:
            return HoverInfo(label=self._bundles[target_id].label, highlight_id=target_id)
        if target_id.startswith("cp:"):
            src = target_id[3:]
            if any(c["id"] == target_id for c in self.copies) and src in self.graph.entities:
                return HoverInfo(label=self.graph.entities[src].label, highlight_id=src)
            raise NotFoundError(f"unknown copy {target_id!r}")
        if target_id.startswith("sf:"):
            # sf:<marker>:<link id> -> far-end element of that link
            rest = target_id[3:]
            mid, _, lid = rest.partition(":")
            m = self.markers.get(mid)
            link = self.links.get(lid)
            if m is None or link is None:
                raise NotFoundError(f"unknown supportive focus {target_id!r}")
            far = link.other(m.anchor)
            label = (self._bundles[far].label if far in self._bundles
                     else self.graph.entities[far].label)
            return HoverInfo(label=label, highlight_id=far)
        if target_id in self.markers:
            m = self.markers[target_id]
            return self.hover(m.anchor)
        raise NotFoundError(f"unknown hover target {target_id!r}")

    # -- derived state -----------------------------------------------------

    def marker_position(self, marker_id: str) -> tuple[float, float]:
        m = self._require_marker(marker_id)
        if m.managing and m.managed_pos is not None:
            return m.managed_pos
        if m.active_link is None:
            return self._element_pos(m.anchor)
        return self._oriented_point(self.links[m.active_link], m.anchor, m.arc)

    def style_links(self) -> dict[str, tuple[str, float]]:
        """colorClass and opacity per link id (pure function of state)."""
        styles: dict[str, tuple[str, float]] = {}
        mode = self.transparency_mode
        for lid, link in self.links.items():
            if self.link_states[lid].pinned:
                styles[lid] = ("managed", 1.0)
                continue
            cls = "unrelated"
            opacity = 1.0 if not self.markers else 0.0
            for m in self.markers.values():
                p = m.proportion if m.active_link is not None else 0.0
                if m.active_link == lid:
                    mcls, mop = "active", 1.0
                elif lid in self.incident_links(m.anchor):
                    mcls = "related"
                    mop = 1.0 - p if mode == "fadeAllButActive" else 1.0
                else:
                    mcls = "unrelated"
                    mop = 1.0 - p if mode in ("fadeUnrelated", "fadeAllButActive") else 1.0
                if CLASS_RANK[mcls] > CLASS_RANK[cls]:
                    cls = mcls
                opacity = max(opacity, mop)
            if self.visibility_mode == "semiTransparent":
                opacity = 0.3
            elif self.visibility_mode == "hidden":
                opacity = 0.0
            styles[lid] = (cls, opacity)
        return styles

    def progress(self, marker_id: str) -> tuple[float, list[tuple[float, float]]]:
        """Progress-bar value and the traversed subpath on the active link only."""
        m = self._require_marker(marker_id)
        if m.active_link is None or m.arc <= 0.0:
            return (m.proportion if m.active_link else 0.0, [])
        link = self.links[m.active_link]
        s0 = self._oriented_s(link, m.anchor, 0.0)
        s1 = self._oriented_s(link, m.anchor, m.arc)
        return (m.proportion, link.path.sample(s0, s1, self.config.subpath_spacing))

    # -- snapshotting ------------------------------------------------------

    def static_payload(self) -> dict:
        """Geometry the UI needs once per dataset: views, elements, links."""
        elements = []
        for e in self.graph.entities.values():
            elements.append({"id": e.id, "kind": e.entity_type, "label": e.label,
                             "view": e.view_id, "pos": list(e.position)})
        for be in self._bundles.values():
            elements.append({"id": be.id, "kind": "bundle", "label": be.label,
                             "view": be.view_id, "pos": list(be.position)})
        elements.sort(key=lambda d: d["id"])
        links = []
        for lid in sorted(self.links):
            link = self.links[lid]
            links.append({"id": lid, "kind": link.kind, "a": link.a, "b": link.b,
                          "path": _path_payload(link.path)})
        return {
            "views": [{"id": v.id, "kind": v.kind, "rect": list(v.rect)}
                      for v in self.graph.views.values()],
            "elements": elements,
            "links": links,
        }

    def snapshot(self) -> dict:
        markers = []
        foci = []
        progress = []
        for mid, m in self.markers.items():
            pos = self.marker_position(mid)
            markers.append({
                "id": mid, "anchor": m.anchor, "activeLink": m.active_link,
                "arcLength": m.arc, "proportion": m.proportion,
                "pos": list(pos), "fociEnabled": m.foci_enabled,
                "managing": m.managing,
            })
            for f in self.supportive_foci(mid):
                foci.append({"id": f"sf:{mid}:{f['link']}", "marker": mid,
                             "link": f["link"], "pos": list(f["pos"]),
                             "proportion": f["proportion"]})
            prop, sub = self.progress(mid)
            progress.append({"marker": mid, "proportion": prop,
                             "subpath": [list(p) for p in sub]})
        styles = self.style_links()
        link_styles = {lid: {"colorClass": cls, "opacity": op}
                       for lid, (cls, op) in sorted(styles.items())}
        pinned_paths = {}
        for lid in sorted(self.links):
            st = self.link_states[lid]
            if st.pinned and st.pinned_path is not None:
                pinned_paths[lid] = _path_payload(st.pinned_path)
        return {
            "markers": markers,
            "foci": foci,
            "copies": [{"id": c["id"], "source": c["source"],
                        "pos": list(c["pos"]), "stopMode": c["stopMode"]}
                       for c in self.copies],
            "linkStyles": link_styles,
            "progress": progress,
            "pinnedPaths": pinned_paths,
        }


def _path_payload(path: Path) -> dict:
    """Serializable geometry: exact control points when simple, else a polyline."""
    if len(path.segments) == 1 and path.segments[0][0] == "cubic":
        _, p0, p1, p2, p3 = path.segments[0]
        return {"type": "cubic", "points": [list(p0), list(p1), list(p2), list(p3)]}
    pts: list[list[float]] = []
    for seg in path.segments:
        if seg[0] == "line":
            if not pts:
                pts.append(list(seg[1]))
            pts.append(list(seg[2]))
        else:
            return {"type": "polyline",
                    "points": [list(p) for p in path.sample(0.0, path.total_length, 2.0)]}
    return {"type": "polyline", "points": pts}
