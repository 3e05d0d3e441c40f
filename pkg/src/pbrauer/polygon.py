"""Convex lattice polygons: Newton polygons, dominance, Hodge-Newton polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IntegralityViolation, InvalidArgument
from .slopes import SlopeMultiset


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex polygon through lattice points, starting at the origin.

    Only breakpoints are stored: consecutive segment slopes strictly
    increase, and all slopes are nonnegative.
    """

    vertices: tuple[tuple[int, int], ...] = ((0, 0),)

    def __post_init__(self):
        verts = tuple((v[0], v[1]) for v in self.vertices)
        if not verts or verts[0] != (0, 0):
            raise InvalidArgument("a Newton polygon starts at (0, 0)")
        for x, y in verts:
            if not (isinstance(x, int) and isinstance(y, int)) or isinstance(x, bool) or isinstance(y, bool):
                raise IntegralityViolation(f"vertex ({x!r}, {y!r}) is not a lattice point")
        prev = None
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            if x1 <= x0:
                raise InvalidArgument("vertex abscissae must strictly increase")
            slope = Fraction(y1 - y0, x1 - x0)
            if slope < 0:
                raise InvalidArgument(f"negative slope {slope} is not allowed")
            if prev is not None and slope <= prev:
                raise InvalidArgument("segment slopes must strictly increase (convexity, no redundant vertices)")
            prev = slope
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> NewtonPolygon:
        """Build from any list of points on a convex chain, dropping collinear interior points."""
        pts = [(int(x), int(y)) for x, y in points]
        kept = [pts[0]]
        for pt in pts[1:]:
            if kept[-1][0] == pt[0]:
                raise InvalidArgument("repeated abscissa")
            while len(kept) >= 2:
                (x0, y0), (x1, y1) = kept[-2], kept[-1]
                if Fraction(y1 - y0, x1 - x0) == Fraction(pt[1] - y1, pt[0] - x1):
                    kept.pop()
                else:
                    break
            kept.append(pt)
        return cls(tuple(kept))

    @classmethod
    def from_ordinates(cls, ys: Sequence[int]) -> NewtonPolygon:
        return cls.from_points(enumerate(ys))

    @property
    def end(self) -> tuple[int, int]:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return self.vertices[-1][0]

    def segments(self) -> list[tuple[Fraction, int]]:
        """``(slope, horizontal length)`` per segment."""
        return [(Fraction(y1 - y0, x1 - x0), x1 - x0)
                for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def height(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > self.length:
            raise InvalidArgument(f"x = {x} outside [0, {self.length}]")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x <= x1:
                return y0 + Fraction(y1 - y0, x1 - x0) * (x - x0)
        return Fraction(self.vertices[-1][1])

    def ordinates(self) -> list[Fraction]:
        return [self.height(x) for x in range(self.length + 1)]

    def to_json(self) -> list[list[int]]:
        return [[x, y] for x, y in self.vertices]

    @classmethod
    def from_json(cls, pairs) -> NewtonPolygon:
        return cls(tuple((p[0], p[1]) for p in pairs))

    def __str__(self) -> str:
        return ",".join(f"({x},{y})" for x, y in self.vertices)


def polygon_from_slopes(ms: SlopeMultiset) -> NewtonPolygon:
    x, y = 0, Fraction(0)
    verts = [(0, 0)]
    for slope, mult in ms:
        x += mult
        y += slope * mult
        if y.denominator != 1:
            raise IntegralityViolation(f"breakpoint ({x}, {y}) after slope {slope} is not a lattice point")
        verts.append((x, int(y)))
    return NewtonPolygon(tuple(verts))


def slopes_from_polygon(np: NewtonPolygon) -> SlopeMultiset:
    return SlopeMultiset(tuple(np.segments()))


def lies_below(a: NewtonPolygon, b: NewtonPolygon) -> bool:
    """Pointwise ``a <= b`` on the common domain."""
    if a.end != b.end:
        raise InvalidArgument(f"endpoints differ: {a.end} vs {b.end}")
    xs = {x for x, _ in a.vertices} | {x for x, _ in b.vertices}
    # both are piecewise linear, so comparing at all breakpoints suffices
    return all(a.height(x) <= b.height(x) for x in xs)


def hodge_newton_polygon(np: NewtonPolygon) -> NewtonPolygon:
    """Highest convex polygon below ``np`` with integral slopes and lattice vertices.

    Every such polygon is the upper envelope of lines ``y = k x + c`` with
    integers k, c lying below ``np``. For each integer slope k the best
    intercept is ``min(y - k x)`` over the vertices of ``np``, which is
    already an integer, so the envelope of these supporting lines is the
    answer.
    """
    n = np.length
    if n == 0:
        return NewtonPolygon()
    top = math.ceil(np.segments()[-1][0])
    intercepts = [min(y - k * x for x, y in np.vertices) for k in range(top + 1)]
    ys = [max(k * x + c for k, c in enumerate(intercepts)) for x in range(n + 1)]
    return NewtonPolygon.from_ordinates(ys)


def integral_slope_multiplicities(np: NewtonPolygon) -> dict[int, int]:
    out: dict[int, int] = {}
    for slope, length in np.segments():
        if slope.denominator != 1:
            raise InvalidArgument(f"slope {slope} is not an integer")
        out[int(slope)] = out.get(int(slope), 0) + length
    return out


def plot(polygons: Sequence[tuple[str, NewtonPolygon]], scale: int = 2) -> str:
    """Character plot on a grid refined by ``scale``; ``*`` marks points shared by several polygons."""
    if not polygons:
        return ""
    width = max(p.length for _, p in polygons)
    height = max(p.end[1] for _, p in polygons)
    cols, rows = width * scale + 1, height * scale + 1
    grid = [["." for _ in range(cols)] for _ in range(rows)]
    for mark, poly in polygons:
        for c in range(cols):
            x = Fraction(c, scale)
            if x > poly.length:
                break
            y = poly.height(x) * scale
            if y.denominator == 1:
                cell = grid[int(y)][c]
                grid[int(y)][c] = mark if cell in (".", mark) else "*"
    lines = ["".join(row) for row in reversed(grid)]
    legend = "  ".join(f"{mark}: {poly}" for mark, poly in polygons)
    return "\n".join(lines + [legend])
