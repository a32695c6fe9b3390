"""Arc-length parameterized 2D paths and the closest-point search.

Paths are ordered lists of straight or cubic-Bezier segments in global canvas
units. Every path carries a flattened polyline (recursive subdivision at a
fixed flatness tolerance) plus its cumulative arc-length table, which makes
``point_at`` a binary search and lets the oracle-style dense sampling run
vectorized over numpy arrays.

The closest-point search is a two-phase process: a coarse linear scan at a
fixed step, followed by an iterative bidirectional refinement that halves the
step each round and prefers the backward probe when both probes improve. One
extra scan sample is taken exactly at the path end so queries nearest the tail
are never missed by more than the refinement resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidPathError

Point = tuple[float, float]

# Flatness tolerance for the arc-length tables (canvas units).
FLATTEN_TOL = 1e-4

# Linear-scan step of the closest-point search (canvas units).
SCAN_STEP = 8.0
# The bidirectional refinement exits once the step reaches this value.
MIN_STEP = 0.5


def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _flatten_cubic(p0: Point, p1: Point, p2: Point, p3: Point,
                   tol: float, out: list[Point], depth: int = 0) -> None:
    """Append the flattened interior+end vertices of a cubic to ``out``.

    ``out`` must already contain p0. Splits at t=0.5 until both control
    points are within ``tol`` of the chord.
    """
    dx, dy = p3[0] - p0[0], p3[1] - p0[1]
    chord = math.hypot(dx, dy)
    if chord > 0.0:
        d1 = abs((p1[0] - p0[0]) * dy - (p1[1] - p0[1]) * dx) / chord
        d2 = abs((p2[0] - p0[0]) * dy - (p2[1] - p0[1]) * dx) / chord
    else:
        # Degenerate chord: fall back to control-point distance from p0.
        d1 = _dist(p1, p0)
        d2 = _dist(p2, p0)
    if (d1 <= tol and d2 <= tol) or depth >= 32:
        out.append(p3)
        return
    # de Casteljau split at t = 0.5
    m01 = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
    m12 = ((p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2)
    m23 = ((p2[0] + p3[0]) / 2, (p2[1] + p3[1]) / 2)
    m012 = ((m01[0] + m12[0]) / 2, (m01[1] + m12[1]) / 2)
    m123 = ((m12[0] + m23[0]) / 2, (m12[1] + m23[1]) / 2)
    mid = ((m012[0] + m123[0]) / 2, (m012[1] + m123[1]) / 2)
    _flatten_cubic(p0, m01, m012, mid, tol, out, depth + 1)
    _flatten_cubic(mid, m123, m23, p3, tol, out, depth + 1)


@dataclass(frozen=True)
class PathPoint:
    """A point on a path, addressed by arc length."""

    position: Point
    arc_length: float
    proportion: float


class Path:
    """An immutable 2D path made of line and cubic-Bezier segments.

    Segments are tuples: ``("line", p0, p1)`` or ``("cubic", p0, p1, p2, p3)``.
    Consecutive segments must share endpoints.
    """

    __slots__ = ("segments", "_xs", "_ys", "_cum", "_len")

    def __init__(self, segments: Sequence[tuple]):
        if not segments:
            raise InvalidPathError("path needs at least one segment")
        self.segments = tuple(segments)
        pts: list[Point] = [segments[0][1]]
        for seg in segments:
            kind = seg[0]
            if kind == "line":
                pts.append(seg[2])
            elif kind == "cubic":
                _flatten_cubic(seg[1], seg[2], seg[3], seg[4], FLATTEN_TOL, pts)
            else:
                raise InvalidPathError(f"unknown segment kind {kind!r}")
        xs = np.array([p[0] for p in pts], dtype=float)
        ys = np.array([p[1] for p in pts], dtype=float)
        d = np.hypot(np.diff(xs), np.diff(ys))
        cum = np.concatenate(([0.0], np.cumsum(d)))
        self._xs = xs
        self._ys = ys
        self._cum = cum
        self._len = float(cum[-1])

    @classmethod
    def polyline(cls, points: Sequence[Point]) -> "Path":
        if len(points) < 2:
            raise InvalidPathError("polyline needs at least two points")
        return cls([("line", points[i], points[i + 1])
                    for i in range(len(points) - 1)])

    @classmethod
    def cubic(cls, p0: Point, p1: Point, p2: Point, p3: Point) -> "Path":
        return cls([("cubic", p0, p1, p2, p3)])

    @property
    def total_length(self) -> float:
        return self._len

    @property
    def start(self) -> Point:
        return (float(self._xs[0]), float(self._ys[0]))

    @property
    def end(self) -> Point:
        return (float(self._xs[-1]), float(self._ys[-1]))

    def point_at(self, s: float) -> Point:
        """Point at arc length ``s``, clamped to [0, total_length]."""
        cum = self._cum
        if s <= 0.0:
            return (float(self._xs[0]), float(self._ys[0]))
        if s >= self._len:
            return (float(self._xs[-1]), float(self._ys[-1]))
        i = int(np.searchsorted(cum, s, side="right"))
        s0, s1 = cum[i - 1], cum[i]
        t = 0.0 if s1 == s0 else (s - s0) / (s1 - s0)
        x = self._xs[i - 1] + t * (self._xs[i] - self._xs[i - 1])
        y = self._ys[i - 1] + t * (self._ys[i] - self._ys[i - 1])
        return (float(x), float(y))

    def points_at(self, lengths: np.ndarray) -> np.ndarray:
        """Vectorized ``point_at``: (N,) lengths -> (N, 2) points."""
        s = np.clip(lengths, 0.0, self._len)
        x = np.interp(s, self._cum, self._xs)
        y = np.interp(s, self._cum, self._ys)
        return np.stack([x, y], axis=1)

    def sample(self, s0: float, s1: float, spacing: float = 4.0) -> list[Point]:
        """Vertices of the sub-arc [s0, s1] at roughly ``spacing`` intervals.

        Endpoints are always included; s0 may exceed s1, in which case the
        samples run backwards along the path.
        """
        a = max(0.0, min(self._len, s0))
        b = max(0.0, min(self._len, s1))
        n = max(1, int(math.ceil(abs(b - a) / spacing)))
        lengths = np.linspace(a, b, n + 1)
        pts = self.points_at(lengths)
        return [(float(x), float(y)) for x, y in pts]

    def reversed(self) -> "Path":
        """The same geometry walked end-to-start."""
        segs = []
        for seg in reversed(self.segments):
            if seg[0] == "line":
                segs.append(("line", seg[2], seg[1]))
            else:
                segs.append(("cubic", seg[4], seg[3], seg[2], seg[1]))
        return Path(segs)

    def concat(self, other: "Path") -> "Path":
        """This path followed by ``other`` (endpoints should coincide)."""
        return Path(list(self.segments) + list(other.segments))


@dataclass
class SearchStats:
    """Instrumentation for one closest-point search."""

    linear_evals: int = 0
    halvings: int = 0


def closest_point(path: Path, query: Point,
                  stats: SearchStats | None = None) -> PathPoint:
    """Closest point on ``path`` to ``query`` via the two-phase search.

    Phase 1 scans arc lengths 0, 8, 16, ... below the total length plus one
    extra sample exactly at the end, keeping the first strict improvement.
    Phase 2 halves the step (4, 2, 1, 0.5) and probes both sides of the best
    arc length, taking the backward probe whenever it strictly improves and
    only otherwise considering the forward probe.
    """
    total = path.total_length
    if total <= 0.0:
        if stats is not None:
            stats.linear_evals = 1
            stats.halvings = 0
        return PathPoint(path.point_at(0.0), 0.0, 0.0)

    # Linear scan, vectorized. np.argmin returns the first minimum, which
    # matches the sequential strict-improvement update order.
    lengths = np.arange(0.0, total, SCAN_STEP)
    lengths = np.append(lengths, total)  # extra tail sample
    pts = path.points_at(lengths)
    dists = np.hypot(pts[:, 0] - query[0], pts[:, 1] - query[1])
    k = int(np.argmin(dists))
    best_len = float(lengths[k])
    best_dist = float(dists[k])
    if stats is not None:
        stats.linear_evals = len(lengths)

    # Bidirectional refinement.
    step = SCAN_STEP
    halvings = 0
    while step > MIN_STEP:
        step /= 2.0
        halvings += 1
        left = max(0.0, best_len - step)
        right = min(total, best_len + step)
        lp = path.point_at(left)
        rp = path.point_at(right)
        ld = math.hypot(lp[0] - query[0], lp[1] - query[1])
        rd = math.hypot(rp[0] - query[0], rp[1] - query[1])
        if ld < best_dist:
            best_len, best_dist = left, ld
        elif rd < best_dist:
            best_len, best_dist = right, rd
    if stats is not None:
        stats.halvings = halvings

    return PathPoint(path.point_at(best_len), best_len, best_len / total)


def closest_among_links(paths: Sequence[Path], query: Point) -> tuple[int, PathPoint]:
    """Closest point over several paths; ties go to the lowest index."""
    if not paths:
        raise InvalidArgumentError("closest_among_links needs at least one path")
    best_i = -1
    best_pp: PathPoint | None = None
    best_d = math.inf
    for i, path in enumerate(paths):
        pp = closest_point(path, query)
        d = _dist(pp.position, query)
        if d < best_d:
            best_i, best_pp, best_d = i, pp, d
    assert best_pp is not None
    return best_i, best_pp


def link_path(a: Point, b: Point) -> Path:
    """The canonical visual-link shape between two element positions.

    A single cubic whose control points sit one third and two thirds along
    the chord, offset perpendicularly by 10% of the chord length. Degenerate
    (zero-chord) links collapse to a point-like line segment.
    """
    dx, dy = b[0] - a[0], b[1] - a[1]
    chord = math.hypot(dx, dy)
    if chord == 0.0:
        return Path([("line", a, b)])
    off = 0.1 * chord
    px, py = -dy / chord * off, dx / chord * off
    c1 = (a[0] + dx / 3 + px, a[1] + dy / 3 + py)
    c2 = (a[0] + 2 * dx / 3 + px, a[1] + 2 * dy / 3 + py)
    return Path.cubic(a, c1, c2, b)


def point_in_rect(p: Point, rect: tuple[float, float, float, float]) -> bool:
    x, y, w, h = rect
    return x <= p[0] <= x + w and y <= p[1] <= y + h


def _segment_rect_crossing(p: Point, q: Point,
                           rect: tuple[float, float, float, float]) -> Point | None:
    """First boundary crossing of segment p->q entering ``rect``.

    Requires p outside and q inside (or on the boundary) of the rectangle.
    Returns the entry point, or None when the segment does not cross.
    """
    x0, y0, w, h = rect
    x1, y1 = x0 + w, y0 + h
    px, py = p
    qx, qy = q
    dx, dy = qx - px, qy - py
    # Liang-Barsky style clipping: find the largest t where the segment
    # enters all four half-planes.
    t_enter = 0.0
    for num, den in (
        (x0 - px, dx),   # left
        (px - x1, -dx),  # right
        (y0 - py, dy),   # top
        (py - y1, -dy),  # bottom
    ):
        if den == 0.0:
            if num > 0.0:
                return None
            continue
        t = num / den
        if den > 0.0 and t > t_enter:
            t_enter = t
    if t_enter < 0.0 or t_enter > 1.0:
        return None
    return (px + t_enter * dx, py + t_enter * dy)


def first_rect_entry(path: Path, rect: tuple[float, float, float, float]) -> PathPoint | None:
    """Walk the path from its start and return the first entry into ``rect``.

    Returns the boundary point (a PathPoint with the path-native arc length),
    or the start itself when it already lies inside, or None when the path
    never reaches the rectangle.
    """
    xs, ys, cum = path._xs, path._ys, path._cum
    prev = (float(xs[0]), float(ys[0]))
    if point_in_rect(prev, rect):
        return PathPoint(prev, 0.0, 0.0)
    for i in range(1, len(xs)):
        cur = (float(xs[i]), float(ys[i]))
        if point_in_rect(cur, rect):
            hit = _segment_rect_crossing(prev, cur, rect)
            if hit is None:
                hit = cur
            arc = float(cum[i - 1]) + _dist(prev, hit)
            total = path.total_length
            return PathPoint(hit, arc, arc / total if total > 0 else 0.0)
        prev = cur
    return None
