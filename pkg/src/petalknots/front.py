"""Half-twist tangles with non-crossing closures.

A front diagram with a single multi-crossing is an ``n``-strand half-twist
whose ``2n`` ends are joined by disjoint arcs outside the tangle box.  The
closures are non-crossing perfect matchings on the boundary, taken in the
cyclic order ``L1..Ln`` (left, top to bottom) followed by ``Rn..R1``.

The strand entering at ``L_i`` leaves at ``R_{n+1-i}``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .diagram import ClassicalDiagram, DiagramBuilder
from .errors import IndexOutOfRange, InvalidPattern, NoAdjacentPair, ParseError, TooLarge
from .invariants import BRACKET_CAP, component_count, determinant, jones

__all__ = [
    "Endpoint",
    "ClosurePattern",
    "ReductionStep",
    "ReductionTrace",
    "FrontVerdict",
    "half_twist_layering",
    "rainbow_closure",
    "enumerate_closures",
    "closure_components",
    "compose",
    "reduce_closure",
    "front_verdict",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 8

Endpoint = tuple[str, int]  # ("L", i) or ("R", i)


def _pos(e: Endpoint, n: int) -> int:
    side, i = e
    return i - 1 if side == "L" else 2 * n - i


def _endpoint_at(pos: int, n: int) -> Endpoint:
    return ("L", pos + 1) if pos < n else ("R", 2 * n - pos)


def _fmt(e: Endpoint) -> str:
    return f"{e[0]}{e[1]}"


@dataclass(frozen=True)
class ClosurePattern:
    n: int
    matching: tuple[tuple[Endpoint, Endpoint], ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise InvalidPattern(f"need at least one strand, got {n}")
        seen: list[int] = []
        pairs = []
        for a, b in self.matching:
            for side, i in (a, b):
                if side not in ("L", "R") or not 1 <= i <= n:
                    raise InvalidPattern(f"endpoint {side}{i} outside 1..{n}")
            pa, pb = sorted((_pos(a, n), _pos(b, n)))
            if pa == pb:
                raise InvalidPattern("an endpoint cannot be matched to itself")
            seen += [pa, pb]
            pairs.append((pa, pb))
        if sorted(seen) != list(range(2 * n)):
            raise InvalidPattern("closure must use every endpoint exactly once")
        for a, b in pairs:
            for c, d in pairs:
                if a < c < b < d:
                    raise InvalidPattern("closure arcs cross")
        canon = tuple(
            (_endpoint_at(a, n), _endpoint_at(b, n)) for a, b in sorted(pairs)
        )
        object.__setattr__(self, "matching", canon)

    def partner(self) -> dict[Endpoint, Endpoint]:
        out = {}
        for a, b in self.matching:
            out[a] = b
            out[b] = a
        return out

    def is_rainbow(self) -> bool:
        return all(a == ("L", b[1]) and b[0] == "R" for a, b in self.matching)

    def __str__(self) -> str:
        terms = []
        for a, b in self.matching:
            if a[0] == b[0] and a[1] > b[1]:
                a, b = b, a
            terms.append(f"{_fmt(a)}-{_fmt(b)}")
        return ",".join(terms)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "ClosurePattern":
        pairs = []
        for term in filter(None, (t.strip() for t in text.split(","))):
            m = re.fullmatch(r"([LR])(\d+)\s*-\s*([LR])(\d+)", term)
            if not m:
                raise ParseError(f"bad closure term {term!r}")
            pairs.append(((m[1], int(m[2])), (m[3], int(m[4]))))
        if not pairs:
            raise ParseError("empty closure pattern")
        if n is None:
            n = len(pairs)
        return cls(n, tuple(pairs))


# --- tangles ----------------------------------------------------------------------


def _half_twist_word(n: int) -> list[int]:
    word = []
    for r in range(n - 1, 0, -1):
        word.extend(range(1, r + 1))
    return word


def _half_twist(builder: DiagramBuilder, n: int, convention: str):
    """Add the crossings; returns per-strand lists of passes ``(cid, 'u'|'v')``."""
    if convention not in ("standard", "mirror"):
        raise ValueError(f"unknown convention {convention!r}")
    at = list(range(1, n + 1))  # at[j-1] = strand currently at position j
    passes: dict[int, list[tuple[int, str]]] = {s: [] for s in at}
    down, up = (1.0, -1.0), (1.0, 1.0)
    for j in _half_twist_word(n):
        a, b = at[j - 1], at[j]
        # a moves down (slope -1) and has the smaller slope
        front = "u" if convention == "standard" else "v"
        cid = builder.add_crossing(
            down, up, front,
            over_strand=a if front == "u" else b,
            under_strand=b if front == "u" else a,
            kind="front",
        )
        passes[a].append((cid, "u"))
        passes[b].append((cid, "v"))
        at[j - 1], at[j] = b, a
    for s, ps in passes.items():
        for (c1, d1), (c2, d2) in zip(ps, ps[1:]):
            builder.connect((c1, d1 + "+"), (c2, d2 + "-"))
    return passes


def _boundary(passes, n: int) -> dict[Endpoint, tuple[int, str]]:
    ports = {}
    for s, ps in passes.items():
        if not ps:
            continue
        ports[("L", s)] = (ps[0][0], ps[0][1] + "-")
        ports[("R", n + 1 - s)] = (ps[-1][0], ps[-1][1] + "+")
    return ports


def half_twist_layering(n: int, convention: str = "standard") -> ClassicalDiagram:
    """Open half-twist tangle; the strand from ``L_i`` exits at ``R_{n+1-i}``."""
    if n < 1:
        raise IndexOutOfRange(f"need n >= 1, got {n}")
    builder = DiagramBuilder()
    passes = _half_twist(builder, n, convention)
    if n == 1:
        return ClassicalDiagram(crossings=(), closed=False)
    ports = _boundary(passes, n)
    starts = [ports[("L", s)] for s in range(1, n + 1)]
    d = builder.build(starts=starts, closed=False)
    exits = tuple(n + 1 - s for s in range(1, n + 1))
    return ClassicalDiagram(crossings=d.crossings, gauss=d.gauss, closed=False, layout=exits)


def compose(n: int, pattern: ClosurePattern, convention: str = "standard") -> ClassicalDiagram:
    """Closed diagram: half-twist plus the closure arcs."""
    if pattern.n != n:
        raise InvalidPattern(f"pattern has {pattern.n} strands, tangle has {n}")
    builder = DiagramBuilder()
    passes = _half_twist(builder, n, convention)
    if n == 1:
        builder.add_free_loop()
        return builder.build()
    ports = _boundary(passes, n)
    for a, b in pattern.matching:
        builder.connect(ports[a], ports[b])
    return builder.build()


# --- closures ---------------------------------------------------------------------


def rainbow_closure(n: int) -> ClosurePattern:
    """Nested arcs joining ``L_i`` to ``R_i``."""
    return ClosurePattern(n, tuple((("L", i), ("R", i)) for i in range(1, n + 1)))


@lru_cache(maxsize=None)
def _matchings(lo: int, hi: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Non-crossing perfect matchings of the positions ``lo..hi - 1``."""
    if lo >= hi:
        return ((),)
    out = []
    for k in range(lo + 1, hi, 2):
        for inner in _matchings(lo + 1, k):
            for outer in _matchings(k + 1, hi):
                out.append(((lo, k),) + inner + outer)
    return tuple(out)


def enumerate_closures(n: int) -> list[ClosurePattern]:
    """All Catalan(n) closures in lexicographic order of boundary positions."""
    if n > ENUMERATION_CAP:
        raise TooLarge(f"enumeration is capped at n = {ENUMERATION_CAP}, got {n}")
    if n < 1:
        raise IndexOutOfRange(f"need n >= 1, got {n}")
    pats = [
        ClosurePattern(n, tuple((_endpoint_at(a, n), _endpoint_at(b, n)) for a, b in m))
        for m in _matchings(0, 2 * n)
    ]
    return sorted(pats, key=lambda p: [(_pos(a, n), _pos(b, n)) for a, b in p.matching])


def closure_components(n: int, pattern: ClosurePattern) -> int:
    """Cycles of the graph whose edges are tangle strands and closure arcs."""
    if pattern.n != n:
        raise InvalidPattern(f"pattern has {pattern.n} strands, expected {n}")
    strand = {}
    for i in range(1, n + 1):
        strand[("L", i)] = ("R", n + 1 - i)
        strand[("R", n + 1 - i)] = ("L", i)
    arc = pattern.partner()
    seen = set()
    cycles = 0
    for start in strand:
        if start in seen:
            continue
        cycles += 1
        e = start
        while e not in seen:
            seen.add(e)
            f = strand[e]
            seen.add(f)
            e = arc[f]
    return cycles


# --- reduction --------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    side: str  # side of the removed cap
    index: int  # the cap joined positions index and index + 1
    strands: int  # strand count before the step
    shed_unknot: bool


@dataclass(frozen=True)
class ReductionTrace:
    n: int
    steps: tuple[ReductionStep, ...]
    final_strands: int

    @property
    def shed_unknots(self) -> int:
        return sum(s.shed_unknot for s in self.steps)

    @property
    def components(self) -> int:
        # what is left is a rainbow closure
        return self.shed_unknots + math.ceil(self.final_strands / 2)

    @property
    def verdict(self) -> str:
        return "unknot" if self.components == 1 else "link"


def _adjacent_pair(m: int, arc: dict) -> tuple[str, int] | None:
    for side in ("L", "R"):
        for i in range(1, m):
            if arc.get((side, i)) == (side, i + 1):
                return side, i
    return None


def reduce_closure(n: int, pattern: ClosurePattern) -> ReductionTrace:
    """Peel off caps joining adjacent ends of the same side.

    A cap on adjacent ends slides through the half-twist and comes out as a
    cap on the opposite side, leaving a half-twist on two fewer strands.  If
    the two ends it lands on were already joined to each other, that loop
    is a split unknot.
    """
    if pattern.n != n:
        raise InvalidPattern(f"pattern has {pattern.n} strands, expected {n}")
    arc = pattern.partner()
    if n >= 3 and _adjacent_pair(n, arc) is None:
        raise NoAdjacentPair("rainbow closure: no adjacent pair to remove")
    m = n
    steps = []
    while m > 2:
        found = _adjacent_pair(m, arc)
        if found is None:
            break
        side, i = found
        other = "R" if side == "L" else "L"
        j = m - i  # the cap lands on other-side positions j and j + 1
        x, y = (other, j), (other, j + 1)
        shed = arc[x] == y
        for e in ((side, i), (side, i + 1)):
            del arc[e]
        px, py = arc.pop(x), arc.pop(y)
        if not shed:
            arc[px], arc[py] = py, px

        def relabel(e):
            s, k = e
            cut = i if s == side else j
            return (s, k - 2) if k > cut + 1 else e

        arc = {relabel(a): relabel(b) for a, b in arc.items()}
        m -= 2
        steps.append(ReductionStep(side, i, m + 2, shed))
        # what remains must again be a non-crossing closure
        ClosurePattern(m, tuple((a, b) for a, b in arc.items() if _pos(a, m) < _pos(b, m)))
    return ReductionTrace(n, tuple(steps), m)


# --- verdicts ---------------------------------------------------------------------


@dataclass(frozen=True)
class FrontVerdict:
    n: int
    pattern: str
    components: int
    verdict: str  # "unknot" or "link"
    diagram_components: int
    trace_steps: int | None
    trace_components: int
    determinant: int | None
    jones: str | None

    @property
    def consistent(self) -> bool:
        ok = self.components == self.diagram_components == self.trace_components
        if self.verdict == "unknot":
            ok = ok and self.determinant in (None, 1) and self.jones in (None, "1")
        return ok

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "components": self.components,
            "verdict": self.verdict,
            "diagram_components": self.diagram_components,
            "trace_steps": self.trace_steps,
            "trace_components": self.trace_components,
            "determinant": self.determinant,
            "jones": self.jones,
            "consistent": self.consistent,
        }


def front_verdict(n: int, pattern: ClosurePattern, convention: str = "standard") -> FrontVerdict:
    """Unknot iff the closure has one component, cross-checked three ways."""
    c = closure_components(n, pattern)
    d = compose(n, pattern, convention)
    try:
        trace = reduce_closure(n, pattern)
        steps, tc = len(trace.steps), trace.components
    except NoAdjacentPair:
        steps, tc = None, math.ceil(n / 2)
    det = v = None
    if c == 1:
        det = determinant(d)
        if len(d.crossings) <= BRACKET_CAP and n <= 6:
            v = str(jones(d))
    return FrontVerdict(
        n=n,
        pattern=str(pattern),
        components=c,
        verdict="unknot" if c == 1 else "link",
        diagram_components=component_count(d),
        trace_steps=steps,
        trace_components=tc,
        determinant=det,
        jones=v,
    )
