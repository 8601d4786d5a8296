"""Axis-aligned rectangle primitives and boolean-style operations.

Rectangles are half-open in spirit but stored as plain (left, top, right,
bottom) real coordinates with the origin at the top-left of the image.
All operations are pure functions over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

Point = Tuple[float, float]


class DegenerateRect(ValueError):
    """Raised when two corner points collapse on either axis."""


@dataclass(frozen=True)
class Rect:
    left: float
    top: float
    right: float
    bottom: float

    def __post_init__(self):
        for v in (self.left, self.top, self.right, self.bottom):
            if not math.isfinite(v):
                raise ValueError(f"non-finite coordinate: {v!r}")
            if v < 0:
                raise ValueError(f"negative coordinate: {v!r}")
        if not self.left < self.right:
            raise DegenerateRect(f"left {self.left} must be < right {self.right}")
        if not self.top < self.bottom:
            raise DegenerateRect(f"top {self.top} must be < bottom {self.bottom}")

    @property
    def width(self) -> float:
        return self.right - self.left

    @property
    def height(self) -> float:
        return self.bottom - self.top

    @property
    def area(self) -> float:
        return self.width * self.height

    def contains(self, other: "Rect") -> bool:
        return (self.left <= other.left and self.top <= other.top
                and self.right >= other.right and self.bottom >= other.bottom)


def make_rect(p1: Point, p2: Point) -> Rect:
    """Build a normalized rect from two opposite corners, in either order."""
    x1, y1 = p1
    x2, y2 = p2
    left, right = min(x1, x2), max(x1, x2)
    top, bottom = min(y1, y2), max(y1, y2)
    if left == right or top == bottom:
        raise DegenerateRect(f"corners {p1} and {p2} coincide on an axis")
    return Rect(left, top, right, bottom)


def rect_union(a: Rect, b: Rect) -> Rect:
    """Minimal axis-aligned rectangle containing both inputs."""
    return Rect(min(a.left, b.left), min(a.top, b.top),
                max(a.right, b.right), max(a.bottom, b.bottom))


def intersect(a: Rect, b: Rect) -> Rect | None:
    """Intersection rectangle, or None when interiors are disjoint."""
    left = max(a.left, b.left)
    top = max(a.top, b.top)
    right = min(a.right, b.right)
    bottom = min(a.bottom, b.bottom)
    if left >= right or top >= bottom:
        return None
    return Rect(left, top, right, bottom)


def intersection_area(a: Rect, b: Rect) -> float:
    inter = intersect(a, b)
    return inter.area if inter is not None else 0.0


def rect_subtract(a: Rect, b: Rect) -> List[Rect]:
    """Decompose ``a`` minus the interior of ``b`` into at most 4 strips.

    Pieces are pairwise disjoint and emitted in fixed order: top strip,
    bottom strip, left strip, right strip.  Returns [a] when the rects are
    disjoint and [] when b covers a.
    """
    inter = intersect(a, b)
    if inter is None:
        return [a]
    pieces: List[Rect] = []
    if inter.top > a.top:
        pieces.append(Rect(a.left, a.top, a.right, inter.top))
    if inter.bottom < a.bottom:
        pieces.append(Rect(a.left, inter.bottom, a.right, a.bottom))
    if inter.left > a.left:
        pieces.append(Rect(a.left, inter.top, inter.left, inter.bottom))
    if inter.right < a.right:
        pieces.append(Rect(inter.right, inter.top, a.right, inter.bottom))
    return pieces


def iou(a: Rect, b: Rect) -> float:
    """Intersection over union of two rects, in [0, 1]; 0 when disjoint."""
    inter = intersection_area(a, b)
    if inter == 0.0:
        return 0.0
    return inter / (a.area + b.area - inter)
