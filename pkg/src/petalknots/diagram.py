"""Classical knot diagrams: planar construction, PD and Gauss codes.

PD convention: ``X[a,b,c,d]`` lists the four arcs at a crossing starting
with the incoming under-arc and continuing counterclockwise.  A crossing is
positive when the over-strand enters at position ``d``, i.e. the sign is the
right-hand rule applied to (over direction, under direction).
"""
from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Any, Sequence

from .errors import OpenTangle, ParseError

__all__ = [
    "Crossing",
    "ClassicalDiagram",
    "DiagramBuilder",
    "writhe",
    "sign_sum",
    "mirror",
    "to_pd_code",
    "to_gauss_code",
    "parse_pd_code",
    "faces",
    "checkerboard",
]


@dataclass(frozen=True)
class Crossing:
    id: int
    arcs: tuple[int, int, int, int]
    sign: int
    over: Any = None
    under: Any = None
    kind: str = ""


@dataclass(frozen=True)
class ClassicalDiagram:
    """A (possibly open) oriented diagram.

    ``gauss`` holds one tuple per component with a crossing; each entry is
    ``(crossing id, passes_over)`` in traversal order.  ``free_loops`` counts
    crossingless unknotted components.
    """

    crossings: tuple[Crossing, ...]
    gauss: tuple[tuple[tuple[int, bool], ...], ...] = ()
    closed: bool = True
    free_loops: int = 0
    layout: Any = field(default=None, compare=False, repr=False)

    @property
    def arcs(self) -> frozenset[int]:
        return frozenset(a for c in self.crossings for a in c.arcs)

    @property
    def components(self) -> int:
        return len(self.gauss) + self.free_loops

    def __len__(self) -> int:
        return len(self.crossings)


def sign_sum(d: ClassicalDiagram) -> int:
    return sum(c.sign for c in d.crossings)


def writhe(d: ClassicalDiagram) -> int:
    if not d.closed:
        raise OpenTangle("writhe is defined on closed diagrams")
    return sign_sum(d)


def _mirror_crossing(c: Crossing) -> Crossing:
    a, b, cc, d = c.arcs
    arcs = (d, a, b, cc) if c.sign > 0 else (b, cc, d, a)
    return replace(c, arcs=arcs, sign=-c.sign, over=c.under, under=c.over)


def mirror(d: ClassicalDiagram) -> ClassicalDiagram:
    """Change every crossing; the result is the mirror image."""
    gauss = tuple(tuple((cid, not over) for cid, over in comp) for comp in d.gauss)
    return replace(
        d, crossings=tuple(_mirror_crossing(c) for c in d.crossings), gauss=gauss
    )


# --- planar construction -----------------------------------------------------

PortRef = tuple[int, str]


class DiagramBuilder:
    """Assemble a diagram from transverse crossings and the edges between them.

    Each crossing is given by two direction vectors ``u`` and ``v``; its four
    half-edges are named ``"u+"``, ``"u-"``, ``"v+"``, ``"v-"`` after the
    direction they point in.  A strand travelling along ``u`` enters through
    ``"u-"`` and leaves through ``"u+"``.
    """

    def __init__(self):
        self._ports: list[dict[str, int]] = []
        self._over: list[str] = []
        self._info: list[dict] = []
        self._edges: dict[tuple[int, int], tuple[int, int]] = {}
        self._free_loops = 0

    def add_crossing(self, u, v, over: str = "u", **info) -> int:
        if over not in ("u", "v"):
            raise ValueError("over must be 'u' or 'v'")
        angles = {
            "u+": math.atan2(u[1], u[0]),
            "u-": math.atan2(-u[1], -u[0]),
            "v+": math.atan2(v[1], v[0]),
            "v-": math.atan2(-v[1], -v[0]),
        }
        order = sorted(angles, key=lambda k: angles[k] % (2 * math.pi))
        ports = {name: order.index(name) for name in angles}
        if (ports["u+"] - ports["u-"]) % 4 != 2:
            raise ValueError("crossing is not transverse")
        self._ports.append(ports)
        self._over.append(over)
        self._info.append(info)
        return len(self._ports) - 1

    def _port(self, ref: PortRef) -> tuple[int, int]:
        cid, name = ref
        return cid, self._ports[cid][name]

    def connect(self, a: PortRef, b: PortRef) -> None:
        pa, pb = self._port(a), self._port(b)
        for p in (pa, pb):
            if p in self._edges:
                raise ValueError(f"port {p} already connected")
        if pa == pb:
            raise ValueError("cannot connect a port to itself")
        self._edges[pa] = pb
        self._edges[pb] = pa

    def add_free_loop(self) -> None:
        self._free_loops += 1

    def build(self, starts: Sequence[PortRef] = (), closed: bool = True) -> ClassicalDiagram:
        """Traverse every component, label arcs and emit PD records.

        ``starts`` fixes where traversal begins (entering a crossing through
        the named half-edge); remaining closed components start at the
        smallest unvisited port.
        """
        ncross = len(self._ports)
        label_at: dict[tuple[int, int], int] = {}
        passes: dict[int, list[int]] = defaultdict(list)  # cid -> entry ports
        visited: set[tuple[int, int]] = set()
        components: list[list[tuple[int, int]]] = []
        next_label = 1

        candidates = [self._port(s) for s in starts]
        if closed:
            candidates += [(c, p) for c in range(ncross) for p in range(4)]
        for start in candidates:
            if start in visited or (start[0], (start[1] + 2) % 4) in visited:
                continue
            dangling = start not in self._edges
            if dangling and closed:
                raise ValueError(f"port {start} is not connected")
            seq = []
            cur = start
            while True:
                cid, pin = cur
                if cur in visited:
                    raise ValueError("inconsistent traversal")
                visited.add(cur)
                visited.add((cid, (pin + 2) % 4))
                seq.append(cur)
                nxt = self._edges.get((cid, (pin + 2) % 4))
                if nxt is None:
                    if not dangling:
                        raise ValueError("strand ends inside a closed component")
                    break
                if nxt == start:
                    break
                cur = nxt
            m = len(seq)
            for t, (cid, pin) in enumerate(seq):
                label_at[(cid, pin)] = next_label + t
                out_label = t + 1 if dangling else (t + 1) % m
                label_at[(cid, (pin + 2) % 4)] = next_label + out_label
            next_label += m + 1 if dangling else m
            components.append(seq)
            for cid, pin in seq:
                passes[cid].append(pin)

        # crossing ids follow first visit along the traversal
        new_id: dict[int, int] = {}
        for seq in components:
            for cid, _ in seq:
                new_id.setdefault(cid, len(new_id) + 1)
        if len(new_id) != ncross:
            raise ValueError("some crossings were never reached")

        records = []
        for cid in sorted(range(ncross), key=new_id.get):
            ports = self._ports[cid]
            over_pair = {ports[self._over[cid] + "+"], ports[self._over[cid] + "-"]}
            pins = passes[cid]
            under_in = next(p for p in pins if p not in over_pair)
            over_in = next(p for p in pins if p in over_pair)
            arcs = tuple(label_at[(cid, (under_in + r) % 4)] for r in range(4))
            sign = 1 if over_in == (under_in + 3) % 4 else -1
            info = self._info[cid]
            records.append(
                Crossing(
                    id=new_id[cid],
                    arcs=arcs,
                    sign=sign,
                    over=info.get("over_strand"),
                    under=info.get("under_strand"),
                    kind=info.get("kind", ""),
                )
            )
        gauss = []
        for seq in components:
            gauss.append(
                tuple(
                    (new_id[cid], pin in {self._ports[cid][self._over[cid] + s] for s in "+-"})
                    for cid, pin in seq
                )
            )
        return ClassicalDiagram(
            crossings=tuple(records),
            gauss=tuple(gauss),
            closed=closed,
            free_loops=self._free_loops,
        )


# --- text codes ---------------------------------------------------------------


def to_pd_code(d: ClassicalDiagram) -> str:
    if not d.closed:
        raise OpenTangle("PD code is emitted for closed diagrams only")
    terms = ", ".join("X[%d,%d,%d,%d]" % c.arcs for c in d.crossings)
    return f"PD[{terms}]"


def to_gauss_code(d: ClassicalDiagram) -> str:
    """Signed Gauss code, e.g. ``O1-,U1-``; components are separated by ``|``."""
    if not d.closed:
        raise OpenTangle("Gauss code is emitted for closed diagrams only")
    sign = {c.id: "+" if c.sign > 0 else "-" for c in d.crossings}
    return " | ".join(
        ",".join(f"{'O' if over else 'U'}{cid}{sign[cid]}" for cid, over in comp)
        for comp in d.gauss
    )


_TERM = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd_code(text: str) -> ClassicalDiagram:
    """Parse ``PD[X[..], ...]`` (or a bare list of ``X[..]`` terms).

    Orientation comes from the under-passes; a component that never passes
    under is oriented so its smallest arc label is followed by the next one.
    """
    terms = [tuple(int(g) for g in m.groups()) for m in _TERM.finditer(text)]
    stripped = _TERM.sub("", text).replace("PD", "")
    if re.sub(r"[\s\[\],]", "", stripped):
        raise ParseError(f"unrecognised content in PD code: {text!r}")
    if not terms:
        return ClassicalDiagram(crossings=(), gauss=(), closed=True, free_loops=1)
    return _diagram_from_terms(terms)


def _diagram_from_terms(terms: list[tuple[int, int, int, int]]) -> ClassicalDiagram:
    occurrences: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for ci, arcs in enumerate(terms):
        for pos, a in enumerate(arcs):
            occurrences[a].append((ci, pos))
    for a, occ in occurrences.items():
        if len(occ) != 2:
            raise ParseError(f"arc {a} appears {len(occ)} times")

    def other_end(ci, pos):
        first, second = occurrences[terms[ci][pos]]
        return second if first == (ci, pos) else first

    # entry position of each pass: under pass enters at 0; over pass at 1 or 3
    over_entry: dict[int, int] = {}
    seen_pass: set[tuple[int, str]] = set()
    gauss = []

    def walk(ci, entry):
        seq = []
        while True:
            kind = "U" if entry in (0, 2) else "O"
            if (ci, kind) in seen_pass:
                break
            seen_pass.add((ci, kind))
            if kind == "O":
                over_entry[ci] = entry
            seq.append((ci, kind == "O"))
            ci, entry = other_end(ci, (entry + 2) % 4)
        return seq

    for ci in range(len(terms)):
        if (ci, "U") not in seen_pass:
            gauss.append(walk(ci, 0))
    for ci in range(len(terms)):
        if (ci, "O") not in seen_pass:
            # over-only component: orient by label succession
            b, d = terms[ci][1], terms[ci][3]
            entry = 3 if b == d + 1 or (d > b + 1) else 1
            gauss.append(walk(ci, entry))

    crossings = tuple(
        Crossing(id=ci + 1, arcs=arcs, sign=1 if over_entry[ci] == 3 else -1)
        for ci, arcs in enumerate(terms)
    )
    return ClassicalDiagram(
        crossings=crossings,
        gauss=tuple(tuple((ci + 1, over) for ci, over in comp) for comp in gauss),
        closed=True,
    )


# --- faces -------------------------------------------------------------------


def faces(d: ClassicalDiagram) -> list[list[tuple[int, int]]]:
    """Regions of the planar diagram as cycles of corners ``(crossing index, p)``.

    Corner ``p`` is the region between positions ``p`` and ``p + 1``.
    """
    cs = d.crossings
    occurrences: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for ci, c in enumerate(cs):
        for pos, a in enumerate(c.arcs):
            occurrences[a].append((ci, pos))
    seen: set[tuple[int, int]] = set()
    result = []
    for ci in range(len(cs)):
        for p in range(4):
            if (ci, p) in seen:
                continue
            face = []
            cur = (ci, p)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                c, q = cur
                first, second = occurrences[cs[c].arcs[q]]
                oc, opos = second if first == (c, q) else first
                cur = (oc, (opos - 1) % 4)
            result.append(face)
    return result


def checkerboard(d: ClassicalDiagram) -> tuple[list[list[tuple[int, int]]], list[int]]:
    """Faces and a proper two-colouring of them."""
    fs = faces(d)
    face_of = {corner: fi for fi, f in enumerate(fs) for corner in f}
    color = [-1] * len(fs)
    for root in range(len(fs)):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            fi = stack.pop()
            for ci, p in fs[fi]:
                for q in ((p + 1) % 4, (p - 1) % 4):
                    other = face_of[(ci, q)]
                    want = 1 - color[fi]
                    if color[other] < 0:
                        color[other] = want
                        stack.append(other)
                    elif color[other] != want:
                        raise ValueError("diagram is not checkerboard colourable")
    return fs, color


def relabel_arcs(d: ClassicalDiagram, mapping: dict[int, int]) -> ClassicalDiagram:
    return replace(
        d,
        crossings=tuple(
            replace(c, arcs=tuple(mapping[a] for a in c.arcs)) for c in d.crossings
        ),
    )


def equivalent_up_to_relabeling(d1: ClassicalDiagram, d2: ClassicalDiagram) -> bool:
    """Same crossing records (arcs, signs) after renaming arc labels."""
    if len(d1.crossings) != len(d2.crossings):
        return False
    mapping: dict[int, int] = {}
    for c1, c2 in zip(d1.crossings, d2.crossings):
        if c1.sign != c2.sign:
            return False
        for a, b in zip(c1.arcs, c2.arcs):
            if mapping.setdefault(a, b) != b:
                return False
    return len(set(mapping.values())) == len(mapping)
