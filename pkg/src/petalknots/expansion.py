"""Compile a petal multi-crossing into a classical diagram.

Strand ``i`` runs through the centre along the chord at angle
``(i - 1) * pi / n``, reversed for even ``i``; petals are traversed
counterclockwise.  Spreading the multi-crossing means translating each chord
by a small generic offset, which leaves exactly one crossing per pair of
strands.  The over-strand is the one with smaller height rank.

Read from +z, that counterclockwise picture is the mirror of the diagram
whose writhe is the Thurston-Bennequin number.  The ``"standard"``
convention therefore reflects the plane (y -> -y) before reading crossings;
``"mirror"`` skips the reflection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import ClassicalDiagram, DiagramBuilder, sign_sum, writhe
from .errors import ComponentCountNotOne, NotBijection, PetalError
from .petal_core import LagrangianPetalDiagram, PetalPermutation, canonical_twists

__all__ = [
    "CONVENTIONS",
    "FROZEN_CONVENTION",
    "strand_angle",
    "spread_multicrossing",
    "close_petals",
    "expand",
    "expansion_writhe",
    "multicrossing_sign_sum",
]

CONVENTIONS = ("standard", "mirror")
FROZEN_CONVENTION = "standard"


def strand_angle(i: int, n: int) -> float:
    """Direction of travel of strand ``i`` through the centre."""
    return (i - 1) * math.pi / n + (math.pi if i % 2 == 0 else 0.0)


def _offset(i: int) -> float:
    return ((i * 0.6180339887498949) % 1.0) - 0.5


def _vec(theta: float, reflect: bool) -> tuple[float, float]:
    x, y = math.cos(theta), math.sin(theta)
    return (x, -y) if reflect else (x, y)


def _twist_directions(p: int, n: int, reflect: bool):
    """Directions of the first and second pass through a half-twist on petal ``p``."""
    gamma = math.pi / (2 * n)
    mid = strand_angle(p, n) + gamma
    first = math.atan2(math.sin(gamma), 2 - math.cos(gamma)) + mid
    second = math.atan2(math.sin(gamma), math.cos(gamma) - 2) + mid
    return _vec(first, reflect), _vec(second, reflect)


@dataclass(frozen=True)
class _CentreLayout:
    heights: tuple[int, ...]
    convention: str
    # strand -> other strands in the order they are crossed
    order: tuple[tuple[int, ...], ...]


def _check_convention(convention: str) -> bool:
    if convention not in CONVENTIONS:
        raise PetalError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    return convention == "standard"


def _heights(perm) -> tuple[int, ...]:
    """Heights of a petal permutation or of a bare multi-crossing (any n >= 1)."""
    if isinstance(perm, PetalPermutation):
        return perm.heights
    hs = tuple(int(v) for v in perm)
    if not hs or sorted(hs) != list(range(1, len(hs) + 1)):
        raise NotBijection(f"{hs} is not a bijection on 1..{len(hs)}")
    return hs


def _centre_layout(hs: tuple[int, ...], convention: str) -> _CentreLayout:
    n = len(hs)
    params: dict[int, list[tuple[float, int]]] = {i: [] for i in range(1, n + 1)}
    for i in range(1, n + 1):
        ti = strand_angle(i, n)
        ui = (math.cos(ti), math.sin(ti))
        pi_ = (-_offset(i) * ui[1], _offset(i) * ui[0])
        for j in range(1, n + 1):
            if j == i:
                continue
            tj = strand_angle(j, n)
            uj = (math.cos(tj), math.sin(tj))
            pj = (-_offset(j) * uj[1], _offset(j) * uj[0])
            # pi + t ui = pj + s uj
            det = -ui[0] * uj[1] + ui[1] * uj[0]
            rx, ry = pj[0] - pi_[0], pj[1] - pi_[1]
            t = (-rx * uj[1] + ry * uj[0]) / det
            params[i].append((t, j))
    order = []
    for i in range(1, n + 1):
        ts = sorted(params[i])
        gaps = [b[0] - a[0] for a, b in zip(ts, ts[1:])]
        if gaps and min(gaps) < 1e-9:
            raise PetalError("degenerate spreading of the multi-crossing")
        order.append(tuple(j for _, j in ts))
    return _CentreLayout(hs, convention, tuple(order))


def _add_centre(builder: DiagramBuilder, layout: _CentreLayout) -> dict:
    hs = layout.heights
    n = len(hs)
    reflect = layout.convention == "standard"
    cids = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            over_i = hs[i - 1] < hs[j - 1]
            cids[(i, j)] = builder.add_crossing(
                _vec(strand_angle(i, n), reflect),
                _vec(strand_angle(j, n), reflect),
                "u" if over_i else "v",
                over_strand=i if over_i else j,
                under_strand=j if over_i else i,
                kind="multi",
            )
    return cids


def _strand_passes(layout: _CentreLayout, cids: dict, i: int) -> list[tuple[int, str]]:
    passes = []
    for j in layout.order[i - 1]:
        key = (min(i, j), max(i, j))
        passes.append((cids[key], "u" if i < j else "v"))
    return passes


def spread_multicrossing(perm, convention: str = FROZEN_CONVENTION) -> ClassicalDiagram:
    """Open tangle: one crossing for every pair of strands.

    ``perm`` may be a :class:`PetalPermutation` or any height sequence, so a
    2-multi-crossing (an ordinary crossing) is accepted too.
    """
    _check_convention(convention)
    hs = _heights(perm)
    layout = _centre_layout(hs, convention)
    builder = DiagramBuilder()
    cids = _add_centre(builder, layout)
    starts = []
    for i in range(1, len(hs) + 1):
        passes = _strand_passes(layout, cids, i)
        for (c1, d1), (c2, d2) in zip(passes, passes[1:]):
            builder.connect((c1, d1 + "+"), (c2, d2 + "-"))
        if passes:
            starts.append((passes[0][0], passes[0][1] + "-"))
    diagram = builder.build(starts=starts, closed=False)
    return ClassicalDiagram(
        crossings=diagram.crossings,
        gauss=diagram.gauss,
        closed=False,
        layout=layout,
    )


def close_petals(tangle: ClassicalDiagram, diag: LagrangianPetalDiagram) -> ClassicalDiagram:
    """Join strand ``p`` to strand ``p + 1`` through petal ``p``.

    Each half-twist on a petal contributes one extra crossing.
    """
    layout = tangle.layout
    if not isinstance(layout, _CentreLayout) or layout.heights != diag.perm.heights:
        raise PetalError("tangle was not spread from this diagram's permutation")
    n = diag.n
    reflect = layout.convention == "standard"
    builder = DiagramBuilder()
    cids = _add_centre(builder, layout)
    sequence: list[tuple[int, str]] = []
    for p in range(1, n + 1):
        sequence.extend(_strand_passes(layout, cids, p))
        first, second = _twist_directions(p, n, reflect)
        for _ in range(diag.twists[p - 1]):
            # the lobe beyond the twist has negative z-increment: first pass is higher
            cid = builder.add_crossing(first, second, "u", over_strand=p, under_strand=p, kind="twist")
            sequence.append((cid, "u"))
            sequence.append((cid, "v"))
    if not sequence:
        raise PetalError("diagram has no crossings")
    for (c1, d1), (c2, d2) in zip(sequence, sequence[1:] + sequence[:1]):
        builder.connect((c1, d1 + "+"), (c2, d2 + "-"))
    closed = builder.build(starts=[(sequence[0][0], sequence[0][1] + "-")])
    if closed.components != 1:
        raise ComponentCountNotOne(f"petal closure produced {closed.components} components")
    return ClassicalDiagram(
        crossings=closed.crossings, gauss=closed.gauss, closed=True, layout=layout
    )


def expand(
    diag: LagrangianPetalDiagram | PetalPermutation, convention: str = FROZEN_CONVENTION
) -> ClassicalDiagram:
    """Closed classical diagram of a petal diagram (canonical twists for a bare permutation)."""
    if isinstance(diag, PetalPermutation):
        diag = canonical_twists(diag)
    return close_petals(spread_multicrossing(diag.perm, convention), diag)


def expansion_writhe(diag: LagrangianPetalDiagram, convention: str = FROZEN_CONVENTION) -> int:
    return writhe(expand(diag, convention))


def multicrossing_sign_sum(perm: PetalPermutation, convention: str = FROZEN_CONVENTION) -> int:
    return sign_sum(spread_multicrossing(perm, convention))
