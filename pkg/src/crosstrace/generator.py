"""Synthetic study-scale dataset generation.

Each dataset has three entity sets of 50 (locations on a map, organizations
in a bar chart, persons in a node-link graph) and an exact number of
individual relations per adjacent view pair: 250 at low density, 500 at
high. The total number of mined bi-group relationships must land inside a
configured band (default [8, 16]).

Uniform pair sampling cannot reach that band at these densities (measured
~85 / ~620 closed biclusters per pair), so generation plants disjoint
biclusters per view pair and then fills to the exact relation count with
noise edges, greedily rejecting any edge that would complete a 2x2 all-ones
submatrix outside a planted block. That keeps the closed-bicluster set of
the final matrix exactly equal to the planted set. The mined result is
re-checked against the band; failed attempts retry with fresh draws, bounded
by ``max_attempts``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .bundling import relationship_view_rects
from .errors import GenerationFailedError, InvalidArgumentError
from .model import Entity, RelationGraph, Rect, View
from .wordlists import ORGANIZATIONS, REGIONS, SURNAMES

DENSITY_RELATIONS = {"low": 250, "high": 500}

# planted-bicluster draw ranges per density: (count_lo, count_hi, side_lo, side_hi)
PLANT_RANGES = {"low": (4, 8, 2, 4), "high": (4, 5, 8, 11)}

POSITION_MARGIN = 20.0  # > the spec's 4-unit minimum; keeps glyphs readable

DEFAULT_VIEWS = (
    ("map", "map", (40.0, 120.0, 520.0, 840.0)),
    ("bar", "barChart", (700.0, 120.0, 520.0, 840.0)),
    ("graph", "nodeLinkGraph", (1360.0, 120.0, 520.0, 840.0)),
)

VIEW_ENTITY_TYPE = {"map": "location", "barChart": "organization",
                    "nodeLinkGraph": "person"}
TYPE_LABELS = {"location": REGIONS, "organization": ORGANIZATIONS,
               "person": SURNAMES}
TYPE_PREFIX = {"location": "loc", "organization": "org", "person": "per"}


@dataclass
class GenSpec:
    seed: int
    density: str = "low"
    bundling: bool = False
    entities_per_type: int = 50
    band: tuple[int, int] = (8, 16)
    max_attempts: int = 100
    views: tuple = DEFAULT_VIEWS

    def relations_per_pair(self) -> int:
        if self.density not in DENSITY_RELATIONS:
            raise InvalidArgumentError(f"unknown density {self.density!r}")
        # density is a fraction of all pairwise entities; must divide exactly
        n = self.entities_per_type * self.entities_per_type
        frac = {"low": 0.10, "high": 0.20}[self.density]
        count = frac * n
        if count != int(count):
            raise InvalidArgumentError("relation count per pair must be an integer")
        return int(count)


@dataclass
class GenResult:
    graph: RelationGraph
    document: dict
    meta: dict = field(default_factory=dict)


def _positions_scatter(rng: random.Random, rect: Rect, n: int) -> list[tuple[float, float]]:
    x, y, w, h = rect
    return [(round(rng.uniform(x + POSITION_MARGIN, x + w - POSITION_MARGIN), 2),
             round(rng.uniform(y + POSITION_MARGIN, y + h - POSITION_MARGIN), 2))
            for _ in range(n)]


def _positions_bars(rng: random.Random, rect: Rect, n: int) -> list[tuple[float, float]]:
    """Evenly spaced bar anchors; the y is each bar's top."""
    x, y, w, h = rect
    xs = [x + POSITION_MARGIN + (w - 2 * POSITION_MARGIN) * (i + 0.5) / n
          for i in range(n)]
    out = []
    for bx in xs:
        height = rng.uniform(0.15, 0.70) * (h - 2 * POSITION_MARGIN)
        out.append((round(bx, 2), round(y + h - POSITION_MARGIN - height, 2)))
    return out


def _plant_biclusters(rng: random.Random, n: int, count: int,
                      side_lo: int, side_hi: int) -> list[tuple[list[int], list[int]]] | None:
    """Disjoint (rows, cols) index blocks; None when the draw does not fit."""
    rows = list(range(n))
    cols = list(range(n))
    rng.shuffle(rows)
    rng.shuffle(cols)
    sizes = [(rng.randint(side_lo, side_hi), rng.randint(side_lo, side_hi))
             for _ in range(count)]
    # at least one block with both sides >= 3 keeps bundling strictly cheaper
    if not any(a >= 3 and b >= 3 for a, b in sizes):
        i = rng.randrange(count)
        sizes[i] = (max(sizes[i][0], 3), max(sizes[i][1], 3))
    if sum(a for a, _ in sizes) > n or sum(b for _, b in sizes) > n:
        return None
    blocks = []
    ri = ci = 0
    for a, b in sizes:
        blocks.append((sorted(rows[ri:ri + a]), sorted(cols[ci:ci + b])))
        ri += a
        ci += b
    return blocks


def _fill_pair_matrix(rng: random.Random, n: int, target_edges: int,
                      count: int, side_lo: int, side_hi: int):
    """One attempt: planted blocks + greedy safe noise. Returns row masks or None."""
    blocks = _plant_biclusters(rng, n, count, side_lo, side_hi)
    if blocks is None:
        return None
    row_masks = [0] * n
    edges = 0
    for rows, cols in blocks:
        cmask = 0
        for c in cols:
            cmask |= 1 << c
        for r in rows:
            row_masks[r] |= cmask
        edges += len(rows) * len(cols)
    if edges > target_edges:
        return None
    candidates = [(r, c) for r in range(n) for c in range(n)
                  if not row_masks[r] >> c & 1]
    rng.shuffle(candidates)
    for r, c in candidates:
        if edges >= target_edges:
            break
        # reject if (r, c) completes a 2x2 all-ones with any other row; all
        # planted pairs already exist, so any completed 2x2 is a new one
        ok = True
        col_bit = 1 << c
        for r2 in range(n):
            if r2 != r and row_masks[r2] & col_bit and row_masks[r2] & row_masks[r]:
                ok = False
                break
        if ok:
            row_masks[r] |= col_bit
            edges += 1
    if edges != target_edges:
        return None
    return row_masks, blocks


def generate(spec: GenSpec) -> GenResult:
    """Build one dataset document (deterministic per spec)."""
    rng = random.Random(spec.seed)
    n = spec.entities_per_type
    target = spec.relations_per_pair()
    count_lo, count_hi, side_lo, side_hi = PLANT_RANGES[spec.density]

    views = [View(vid, kind, rect) for vid, kind, rect in spec.views]
    entities: list[Entity] = []
    ids_by_view: dict[str, list[str]] = {}
    for view in views:
        etype = VIEW_ENTITY_TYPE[view.kind]
        labels = TYPE_LABELS[etype]
        if len(labels) < n:
            raise InvalidArgumentError(f"not enough {etype} labels for {n} entities")
        if view.kind == "barChart":
            positions = _positions_bars(rng, view.rect, n)
        else:
            positions = _positions_scatter(rng, view.rect, n)
        ids = []
        prefix = TYPE_PREFIX[etype]
        for i in range(n):
            eid = f"{prefix}-{i:02d}"
            ids.append(eid)
            entities.append(Entity(eid, etype, labels[i], positions[i], view.id))
        ids_by_view[view.id] = ids

    pair_ids = [(views[i].id, views[i + 1].id) for i in range(len(views) - 1)]
    # split the band across the view pairs so the dataset total lands inside it
    n_pairs = len(pair_ids)
    lo = max(count_lo, spec.band[0] // n_pairs)
    hi = min(count_hi, spec.band[1] // n_pairs)
    if lo > hi:
        lo = hi

    attempts = 0
    diagnostics: list[str] = []
    graph: RelationGraph | None = None
    mined_per_pair: dict[str, int] = {}
    while graph is None:
        relations: list[tuple[str, str]] = []
        for left_view, right_view in pair_ids:
            filled = None
            while filled is None:
                if attempts >= spec.max_attempts:
                    raise GenerationFailedError(
                        f"could not generate a valid dataset within "
                        f"{spec.max_attempts} attempts", attempts, diagnostics)
                attempts += 1
                count = rng.randint(lo, hi)
                filled = _fill_pair_matrix(rng, n, target, count, side_lo, side_hi)
                if filled is None:
                    diagnostics.append(
                        f"{left_view}-{right_view}: fill failed (attempt {attempts})")
            row_masks, _blocks = filled
            left_ids = ids_by_view[left_view]
            right_ids = ids_by_view[right_view]
            for r in range(n):
                mask = row_masks[r]
                c = 0
                while mask:
                    if mask & 1:
                        relations.append((left_ids[r], right_ids[c]))
                    mask >>= 1
                    c += 1

        candidate = RelationGraph(views, entities, relations)
        mined_per_pair = {f"{l}-{r}": len(candidate.biclusters_between(l, r))
                          for l, r in candidate.adjacent_view_pairs()}
        total_mined = sum(mined_per_pair.values())
        if spec.band[0] <= total_mined <= spec.band[1]:
            graph = candidate
        else:
            diagnostics.append(
                f"mined total {total_mined} outside band {spec.band} "
                f"(per pair: {mined_per_pair})")
            if attempts >= spec.max_attempts:
                raise GenerationFailedError(
                    f"mined bicluster total {total_mined} outside band {spec.band}",
                    attempts, diagnostics)

    if spec.bundling:
        all_views = list(graph.views.values()) + [
            View(vid, "relationshipView", rect)
            for vid, _, _, rect in relationship_view_rects(graph)]
        graph = RelationGraph(all_views, entities, graph.relations)
    total_mined = sum(mined_per_pair.values())

    document = graph.to_document()
    meta = {
        "seed": spec.seed,
        "density": spec.density,
        "bundling": spec.bundling,
        "relationsPerPair": target,
        "biclusters": total_mined,
        "biclustersPerPair": mined_per_pair,
        "retries": attempts - len(pair_ids),
    }
    return GenResult(graph=graph, document=document, meta=meta)
