"""Planar polyline realizations of Lagrangian petal diagrams.

The curve is a counterclockwise rose.  Every strand is a straight segment
through the origin, strand ``i`` travelling in direction
``strand_angle(i, n)``; petal ``p`` occupies the angular sector from
``strand_angle(p, n)`` to ``strand_angle(p, n) + pi / n``.  A plain petal is
a circular sector.  A twisted petal is a kite whose tip carries a small
clockwise loop; the loop is the half-twist crossing.

Heights are recovered as ``z = -integral(y dx)``, so a counterclockwise lobe
raises ``z`` by its area and a clockwise twist loop lowers it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from scipy.optimize import brentq

from .errors import (
    DegenerateSegment,
    InvalidResolution,
    NonCanonicalTwists,
    NonIntegerTurning,
    OpenCurve,
)
from .expansion import strand_angle
from .petal_core import LagrangianPetalDiagram, PetalPermutation

__all__ = [
    "LobeAreas",
    "LobeMark",
    "ClosedPolyline",
    "ZProfile",
    "HeightCheck",
    "Z_SIGN",
    "assign_areas",
    "realize_polyline",
    "line_integral_y_dx",
    "shoelace_area",
    "recover_z_profile",
    "crossing_height_check",
    "turning_number",
    "rose_polyline",
    "circle_polyline",
]

# z = Z_SIGN * integral(y dx); with the rose counterclockwise this makes h = 1 the top strand
Z_SIGN = -1.0

CLOSURE_TOL = 1e-12
TURNING_RESIDUE = 0.01

Point = tuple[float, float]


@dataclass(frozen=True)
class LobeAreas:
    plain_area: float
    twist_area: float


@dataclass(frozen=True)
class LobeMark:
    """Vertex indices of one petal.

    The petal runs from ``start`` (the centre) to ``end`` (the centre again).
    For a twisted petal the twist lobe is ``x1..x2``, both indices sitting on
    the self-crossing; the plain lobe is the rest of the petal.
    """

    petal: int
    start: int
    end: int
    x1: int | None = None
    x2: int | None = None

    def plain_indices(self) -> list[int]:
        if self.x1 is None:
            return list(range(self.start, self.end + 1))
        return list(range(self.start, self.x1 + 1)) + list(range(self.x2 + 1, self.end + 1))

    def twist_indices(self) -> list[int]:
        if self.x1 is None:
            return []
        return list(range(self.x1, self.x2 + 1))


@dataclass(frozen=True)
class ClosedPolyline:
    vertices: tuple[Point, ...]
    strand_marks: dict = None  # strand -> vertex index at the centre
    lobe_marks: tuple[LobeMark, ...] = ()

    def __post_init__(self):
        if self.strand_marks is None:
            object.__setattr__(self, "strand_marks", {})

    def lobe_area(self, petal: int, which: str = "plain") -> float:
        """Absolute shoelace area of a lobe."""
        mark = self.lobe_marks[petal - 1]
        idx = mark.plain_indices() if which == "plain" else mark.twist_indices()
        if not idx:
            return 0.0
        return abs(shoelace_area([self.vertices[i] for i in idx]))


@dataclass(frozen=True)
class ZProfile:
    samples: tuple[float, ...]
    crossing_heights: dict
    closure_defect: float
    total_variation: float

    @property
    def relative_defect(self) -> float:
        if self.total_variation == 0:
            return abs(self.closure_defect)
        return abs(self.closure_defect) / self.total_variation


@dataclass(frozen=True)
class HeightCheck:
    passed: bool
    observed: tuple[int, ...]  # strands from highest z to lowest
    expected: tuple[int, ...]


# --- areas ------------------------------------------------------------------------


def assign_areas(perm: PetalPermutation) -> list[LobeAreas]:
    """Lobe areas making petal ``p`` drop ``z`` by ``h(p + 1) - h(p)``."""
    if perm.n == 1:
        return [LobeAreas(1.0, 1.0)]
    out = []
    for p in range(1, perm.n + 1):
        d = perm.h_next(p) - perm.h(p)
        if d > 0:
            out.append(LobeAreas(1.0, float(1 + d)))
        else:
            out.append(LobeAreas(float(-d), 0.0))
    return out


# --- integrals --------------------------------------------------------------------


def shoelace_area(points: Sequence[Point]) -> float:
    """Signed area of a closed polygon (positive when counterclockwise)."""
    s = 0.0
    m = len(points)
    for k in range(m):
        x0, y0 = points[k]
        x1, y1 = points[(k + 1) % m]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def line_integral_y_dx(points: Sequence[Point]) -> float:
    """Exact integral of ``y dx`` around the closed polygon."""
    s = 0.0
    m = len(points)
    for k in range(m):
        x0, y0 = points[k]
        x1, y1 = points[(k + 1) % m]
        s += 0.5 * (y0 + y1) * (x1 - x0)
    return s


# --- construction -----------------------------------------------------------------


def _rot(p: Point, phi: float) -> Point:
    c, s = math.cos(phi), math.sin(phi)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def _arc(radius: float, a0: float, a1: float, segments: int) -> list[Point]:
    return [
        (radius * math.cos(a0 + (a1 - a0) * t / segments), radius * math.sin(a0 + (a1 - a0) * t / segments))
        for t in range(segments + 1)
    ]


def _plain_petal(beta: float, width: float, area: float, segments: int) -> list[Point]:
    """Sector petal (without the centre vertex) of the given polygon area."""
    unit = [(0.0, 0.0)] + _arc(1.0, beta, beta + width, segments)
    rho = math.sqrt(area / shoelace_area(unit))
    return [(rho * x, rho * y) for x, y in unit[1:]]


def _twisted_petal(beta: float, width: float, plain: float, twist: float, segments: int):
    """Kite with a clockwise cap at its tip; returns (points, i_x1, i_x2).

    Indices are relative to the returned list; both refer to the crossing.
    """
    gamma = width / 2
    phi = beta + gamma
    ra = math.sqrt(plain / (2 * math.sin(gamma)))
    a = (ra * math.cos(gamma), -ra * math.sin(gamma))
    b = (ra * math.cos(gamma), ra * math.sin(gamma))
    x = (2 * ra, 0.0)
    c1 = (x[0] + 0.5 * (x[0] - a[0]), x[1] + 0.5 * (x[1] - a[1]))
    c2 = (x[0] + 0.5 * (x[0] - b[0]), x[1] + 0.5 * (x[1] - b[1]))
    t1 = math.atan2(c1[1], c1[0])
    t2 = math.atan2(c2[1], c2[0])
    r1 = math.hypot(*c1)

    def cap(radius: float) -> list[Point]:
        return [x, c1] + _arc(radius, t1, t2, segments) + [c2]

    def excess(radius: float) -> float:
        return -shoelace_area(cap(radius)) - twist

    lo = r1 * (1 + 1e-9)
    if excess(lo) > 0:
        raise InvalidResolution(f"twist area {twist} too small for this petal")
    hi = 2 * r1
    while excess(hi) < 0:
        hi *= 2
    radius = brentq(excess, lo, hi, xtol=1e-15, rtol=4 * 2.220446049250313e-16, maxiter=500)
    local = [a, x, c1] + _arc(radius, t1, t2, segments) + [c2, x, b]
    pts = [_rot(p, phi) for p in local]
    return pts, 1, len(local) - 2


def realize_polyline(
    diag: LagrangianPetalDiagram,
    segments_per_lobe: int = 32,
    areas: Sequence[LobeAreas] | None = None,
) -> ClosedPolyline:
    """Rose-style closed polyline of a canonical diagram.

    ``areas`` overrides the computed lobe areas (for fault injection).
    """
    if not isinstance(segments_per_lobe, int) or segments_per_lobe < 16:
        raise InvalidResolution(f"segments_per_lobe must be an integer >= 16, got {segments_per_lobe!r}")
    if not diag.standard:
        raise NonCanonicalTwists("realization needs one half-twist on each ascending petal")
    n = diag.n
    lobes = list(areas) if areas is not None else assign_areas(diag.perm)
    if len(lobes) != n:
        raise InvalidResolution(f"expected {n} lobe areas, got {len(lobes)}")
    width = math.pi / n
    verts: list[Point] = []
    strand_marks = {}
    marks = []
    for p in range(1, n + 1):
        beta = strand_angle(p, n)
        start = len(verts)
        strand_marks[p] = start
        verts.append((0.0, 0.0))
        lobe = lobes[p - 1]
        if diag.twists[p - 1]:
            pts, i1, i2 = _twisted_petal(beta, width, lobe.plain_area, lobe.twist_area, segments_per_lobe)
            verts.extend(pts)
            marks.append(LobeMark(p, start, start + len(pts) + 1, start + 1 + i1, start + 1 + i2))
        else:
            pts = _plain_petal(beta, width, lobe.plain_area, segments_per_lobe)
            verts.extend(pts)
            marks.append(LobeMark(p, start, start + len(pts) + 1))
    verts.append(verts[0])
    return ClosedPolyline(tuple(verts), strand_marks, tuple(marks))


def circle_polyline(segments: int = 64, radius: float = 1.0) -> ClosedPolyline:
    pts = _arc(radius, 0.0, 2 * math.pi, segments)
    pts[-1] = pts[0]
    return ClosedPolyline(tuple(pts))


def rose_polyline(n: int, segments_per_lobe: int = 32) -> ClosedPolyline:
    """Twist-free rose with ``n`` unit-area petals; heights are not consistent."""
    if segments_per_lobe < 16:
        raise InvalidResolution("segments_per_lobe must be >= 16")
    verts: list[Point] = []
    marks = {}
    for p in range(1, n + 1):
        marks[p] = len(verts)
        verts.append((0.0, 0.0))
        verts.extend(_plain_petal(strand_angle(p, n), math.pi / n, 1.0, segments_per_lobe))
    verts.append(verts[0])
    return ClosedPolyline(tuple(verts), marks)


# --- oracles ----------------------------------------------------------------------


def _check_closed(poly: ClosedPolyline) -> None:
    v = poly.vertices
    if len(v) < 3:
        raise OpenCurve("a closed polyline needs at least three vertices")
    if abs(v[0][0] - v[-1][0]) > CLOSURE_TOL or abs(v[0][1] - v[-1][1]) > CLOSURE_TOL:
        raise OpenCurve("first and last vertex differ")


def recover_z_profile(poly: ClosedPolyline) -> ZProfile:
    """Cumulative ``z`` along the polyline, starting from 0 at the first vertex."""
    _check_closed(poly)
    v = poly.vertices
    z = [0.0]
    variation = 0.0
    for (x0, y0), (x1, y1) in zip(v, v[1:]):
        dz = Z_SIGN * 0.5 * (y0 + y1) * (x1 - x0)
        variation += abs(dz)
        z.append(z[-1] + dz)
    heights = {i: z[k] for i, k in poly.strand_marks.items()}
    return ZProfile(tuple(z), heights, z[-1] - z[0], variation)


def crossing_height_check(
    diag: LagrangianPetalDiagram, poly: ClosedPolyline, profile: ZProfile
) -> HeightCheck:
    """Pass iff sorting the strands by decreasing ``z`` at the centre reproduces ``h``."""
    perm = diag.perm
    zs = profile.crossing_heights
    observed = tuple(sorted(zs, key=lambda i: (-zs[i], i)))
    expected = tuple(sorted(range(1, perm.n + 1), key=perm.h))
    values = sorted(zs.values(), reverse=True)
    distinct = all(b < a for a, b in zip(values, values[1:]))
    return HeightCheck(distinct and observed == expected, observed, expected)


def turning_number(poly: ClosedPolyline) -> int:
    """Total signed exterior angle over ``2 pi``."""
    _check_closed(poly)
    v = list(poly.vertices[:-1])
    m = len(v)
    edges = []
    for k in range(m):
        dx = v[(k + 1) % m][0] - v[k][0]
        dy = v[(k + 1) % m][1] - v[k][1]
        if math.hypot(dx, dy) == 0.0:
            raise DegenerateSegment(f"zero-length segment at vertex {k}")
        edges.append((dx, dy))
    total = 0.0
    for k in range(m):
        ax, ay = edges[k - 1]
        bx, by = edges[k]
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    w = total / (2 * math.pi)
    r = round(w)
    if abs(w - r) >= TURNING_RESIDUE:
        raise NonIntegerTurning(f"turning {w:.6f} is not close to an integer")
    return int(r)
