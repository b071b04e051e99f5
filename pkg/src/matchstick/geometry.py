"""Arbitrary-precision 2D kernel: points, lines, rotations, intersections.

All operations are pure functions of their inputs plus the global precision
context, so they are safe for concurrent use.  Angles are radians throughout;
degrees appear only at I/O boundaries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from mpmath import atan2, cos, mp, mpf, pi, sin, sqrt

from .errors import DegenerateCenters, DegenerateSegment, NoIntersection
from .precision import tol


@dataclass(frozen=True)
class Point:
    """Immutable 2D point with arbitrary-precision coordinates."""

    x: mpf
    y: mpf

    def __post_init__(self):
        object.__setattr__(self, "x", mpf(self.x))
        object.__setattr__(self, "y", mpf(self.y))
        if not (mp.isfinite(self.x) and mp.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def dot(self, other: "Point") -> mpf:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point") -> mpf:
        return self.x * other.y - self.y * other.x

    def norm(self) -> mpf:
        return sqrt(self.x * self.x + self.y * self.y)

    def conj(self) -> "Point":
        """Mirror image across the x-axis."""
        return Point(self.x, -self.y)


def distance(p: Point, q: Point) -> mpf:
    return (p - q).norm()


@dataclass(frozen=True)
class Line:
    """Line through ``anchor`` with direction angle ``theta`` in [0, pi)."""

    anchor: Point
    theta: mpf

    def __post_init__(self):
        th = mpf(self.theta) % pi
        if th < 0:
            th += pi
        if th >= pi:  # guard against rounding at the boundary
            th -= pi
        object.__setattr__(self, "theta", th)

    @classmethod
    def from_points(cls, p: Point, q: Point) -> "Line":
        if distance(p, q) <= tol(5):
            raise DegenerateSegment("cannot span a line through coincident points")
        return cls(p, atan2(q.y - p.y, q.x - p.x))

    def direction(self) -> Point:
        return Point(cos(self.theta), sin(self.theta))

    def signed_distance(self, p: Point) -> mpf:
        """Distance of ``p`` from the line, positive on the left of direction."""
        return self.direction().cross(p - self.anchor)


def rotate(pt: Point, center: Point, angle) -> Point:
    """Rotate ``pt`` about ``center`` by ``angle`` radians (counterclockwise)."""
    c, s = cos(mpf(angle)), sin(mpf(angle))
    dx, dy = pt.x - center.x, pt.y - center.y
    return Point(center.x + dx * c - dy * s, center.y + dx * s + dy * c)


def reflect(pt: Point, axis: Line) -> Point:
    """Mirror image of ``pt`` across ``axis``."""
    u = axis.direction()
    v = pt - axis.anchor
    k = 2 * v.dot(u)
    return Point(axis.anchor.x + k * u.x - v.x, axis.anchor.y + k * u.y - v.y)


def circle_circle_intersect(c1: Point, c2: Point, side: int) -> Point:
    """Intersection of the unit circles around ``c1`` and ``c2``.

    ``side=+1`` picks the point on the counterclockwise (left) side of the
    directed segment c1 -> c2, ``side=-1`` the right side.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    eps = tol(5)
    d = distance(c1, c2)
    if d <= eps:
        raise DegenerateCenters(f"centers coincide (d={d})")
    if d >= 2 - eps:
        raise NoIntersection(f"centers too far apart (d={d})")
    ux, uy = (c2.x - c1.x) / d, (c2.y - c1.y) / d
    h = sqrt(1 - (d / 2) ** 2)
    mx, my = (c1.x + c2.x) / 2, (c1.y + c2.y) / 2
    # Left normal of (ux, uy) is (-uy, ux).
    return Point(mx - side * h * uy, my + side * h * ux)


def point_segment_distance(p: Point, a: Point, b: Point) -> mpf:
    """Euclidean distance from ``p`` to the closed segment ``a``-``b``."""
    ab = b - a
    den = ab.dot(ab)
    if sqrt(den) <= tol(5):
        raise DegenerateSegment("segment endpoints coincide")
    t = (p - a).dot(ab) / den
    if t <= 0:
        return distance(p, a)
    if t >= 1:
        return distance(p, b)
    return distance(p, Point(a.x + t * ab.x, a.y + t * ab.y))


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    PROPER_CROSSING = "proper-crossing"
    SHARED_ENDPOINT = "shared-endpoint"
    ENDPOINT_ON_INTERIOR = "endpoint-on-interior"
    COLLINEAR_OVERLAP = "collinear-overlap"


def segment_relation(a: Point, b: Point, c: Point, d: Point, eps=None) -> SegmentRelation:
    """Classify how segments ``a``-``b`` and ``c``-``d`` relate geometrically.

    ``eps`` is the incidence threshold below which points are considered to
    touch; it comes from the verification tolerance profile.  The result is
    symmetric under swapping the segments and reversing either one.
    """
    if eps is None:
        eps = mpf("1e-12")
    eps = mpf(eps)
    lab, lcd = distance(a, b), distance(c, d)
    if lab <= tol(5) or lcd <= tol(5):
        raise DegenerateSegment("zero-length segment in relation test")

    # Collinearity: all endpoints within eps of the other carrier line.
    line_dists = (
        abs((b - a).cross(c - a)) / lab,
        abs((b - a).cross(d - a)) / lab,
        abs((d - c).cross(a - c)) / lcd,
        abs((d - c).cross(b - c)) / lcd,
    )
    if max(line_dists) < eps:
        u = Point((b.x - a.x) / lab, (b.y - a.y) / lab)
        s0, s1 = mpf(0), lab
        t0 = (c - a).dot(u)
        t1 = (d - a).dot(u)
        if t0 > t1:
            t0, t1 = t1, t0
        overlap = min(s1, t1) - max(s0, t0)
        if overlap > eps:
            return SegmentRelation.COLLINEAR_OVERLAP
        if overlap >= -eps:
            return SegmentRelation.SHARED_ENDPOINT
        return SegmentRelation.DISJOINT

    end_touch = min(distance(a, c), distance(a, d), distance(b, c), distance(b, d))
    if end_touch < eps:
        return SegmentRelation.SHARED_ENDPOINT

    ends_on = min(
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
    )
    if ends_on < eps:
        return SegmentRelation.ENDPOINT_ON_INTERIOR

    d1 = (b - a).cross(c - a)
    d2 = (b - a).cross(d - a)
    d3 = (d - c).cross(a - c)
    d4 = (d - c).cross(b - c)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return SegmentRelation.PROPER_CROSSING
    return SegmentRelation.DISJOINT


def segment_segment_distance(a: Point, b: Point, c: Point, d: Point) -> mpf:
    """Minimum distance between two closed segments (0 if they cross)."""
    d1 = (b - a).cross(c - a)
    d2 = (b - a).cross(d - a)
    d3 = (d - c).cross(a - c)
    d4 = (d - c).cross(b - c)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return mpf(0)
    return min(
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
    )
