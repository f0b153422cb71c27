"""Smooth-type engines on classical diagrams.

Component count, knot determinant (Goeritz matrix), Kauffman bracket and
Jones polynomial, plus a conservative unknot verdict.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import sympy

from .diagram import ClassicalDiagram, checkerboard, writhe
from .errors import TooManyCrossings
from .laurent import LaurentPolynomial

BRACKET_CAP = 24
DETERMINANT_CAP = 64

A = LaurentPolynomial.monomial(1)
# loop value d = -A^2 - A^-2
LOOP = LaurentPolynomial({2: -1, -2: -1})


def component_count(d: ClassicalDiagram) -> int:
    """Number of link components, by joining arcs through each crossing."""
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for c in d.crossings:
        a, b, cc, dd = c.arcs
        union(a, cc)
        union(b, dd)
    return len({find(x) for x in list(parent)}) + d.free_loops


# --- determinant ---------------------------------------------------------------


def goeritz_matrix(d: ClassicalDiagram) -> list[list[int]]:
    """Unreduced Goeritz matrix over the colour-0 regions."""
    fs, color = checkerboard(d)
    face_of = {corner: fi for fi, f in enumerate(fs) for corner in f}
    white = [fi for fi in range(len(fs)) if color[fi] == 0]
    index = {fi: k for k, fi in enumerate(white)}
    g = [[0] * len(white) for _ in white]
    for ci in range(len(d.crossings)):
        # corners 1 and 3 are the regions joined by the A-smoothing
        if color[face_of[(ci, 1)]] == 0:
            eta, f1, f2 = 1, face_of[(ci, 1)], face_of[(ci, 3)]
        else:
            eta, f1, f2 = -1, face_of[(ci, 0)], face_of[(ci, 2)]
        if f1 == f2:
            continue
        i, j = index[f1], index[f2]
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return g


def determinant(d: ClassicalDiagram) -> int:
    if len(d.crossings) > DETERMINANT_CAP:
        raise TooManyCrossings(f"{len(d.crossings)} crossings exceeds {DETERMINANT_CAP}")
    if not d.crossings:
        return 1 if d.free_loops <= 1 else 0
    g = goeritz_matrix(d)
    reduced = [row[1:] for row in g[1:]]
    if not reduced:
        return 1
    return abs(int(sympy.Matrix(reduced).det(method="bareiss")))


# --- Kauffman bracket ---------------------------------------------------------


def _join(partner: dict[int, int], x: int, y: int) -> int:
    """Connect arc ends ``x`` and ``y``; returns the number of loops closed."""
    if x == y:
        return 1
    px = partner.pop(x, None)
    py = partner.pop(y, None)
    if px is None and py is None:
        partner[x] = y
        partner[y] = x
    elif px is None:
        partner[py] = x
        partner[x] = py
    elif py is None:
        partner[px] = y
        partner[y] = px
    elif px == y:
        return 1
    else:
        partner[px] = py
        partner[py] = px
    return 0


def _frontier_order(d: ClassicalDiagram) -> list:
    remaining = list(d.crossings)
    order = []
    open_arcs: set[int] = set()
    while remaining:
        best = max(remaining, key=lambda c: (sum(a in open_arcs for a in c.arcs), -c.id))
        remaining.remove(best)
        order.append(best)
        for a in best.arcs:
            open_arcs ^= {a}
    return order


def kauffman_bracket(d: ClassicalDiagram) -> LaurentPolynomial:
    """Bracket normalised so the crossingless unknot has value 1.

    State sum over all smoothings, merged on the connectivity of the arcs
    still open after each crossing is processed.
    """
    if len(d.crossings) > BRACKET_CAP:
        raise TooManyCrossings(f"{len(d.crossings)} crossings exceeds {BRACKET_CAP}")
    if not d.crossings:
        return LOOP ** max(d.free_loops - 1, 0)
    states: dict[tuple, LaurentPolynomial] = {(): LaurentPolynomial.constant(1)}
    for c in _frontier_order(d):
        a, b, cc, dd = c.arcs
        smoothings = ((((a, b), (cc, dd)), 1), (((a, dd), (b, cc)), -1))
        nxt: dict[tuple, LaurentPolynomial] = {}
        for key, poly in states.items():
            for pairs, exp in smoothings:
                partner = {}
                for x, y in key:
                    partner[x] = y
                    partner[y] = x
                loops = sum(_join(partner, x, y) for x, y in pairs)
                new_key = tuple(sorted((x, y) for x, y in partner.items() if x < y))
                term = poly.shift(exp) * LOOP**loops
                nxt[new_key] = nxt[new_key] + term if new_key in nxt else term
        states = nxt
    total = states[()]
    return total.divexact(LOOP) * LOOP**d.free_loops


def jones(d: ClassicalDiagram) -> LaurentPolynomial:
    """Jones polynomial in ``t``; exponents are kept in halves of ``t``."""
    w = writhe(d)
    f = kauffman_bracket(d) * LaurentPolynomial({-3 * w: -1 if w % 2 else 1})
    coeffs = {}
    for e, c in f.coeffs.items():
        # A^e = t^(-e/4) = (t^(1/2))^(-e/2)
        if e % 2:
            raise ValueError("bracket normalisation produced odd powers of A")
        coeffs[-e // 2] = c
    return LaurentPolynomial(coeffs, var="t", den=2)


def jones_at_minus_one(v: LaurentPolynomial) -> complex:
    """Exact value at ``t = -1``, taking ``t^(1/2) = i``."""
    units = {0: 1, 1: 1j, 2: -1, 3: -1j}
    return sum(c * units[e % 4] for e, c in v.coeffs.items())


def jones_from_text(text: str) -> LaurentPolynomial:
    """Parse the canonical text form (integer powers of ``t`` only)."""
    t = sympy.Symbol("t")
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals={"t": t}))
    coeffs = {}
    for term in sympy.Add.make_args(expr):
        c, e = term.as_coeff_exponent(t)
        coeffs[int(2 * e)] = int(c)
    return LaurentPolynomial(coeffs, var="t", den=2)


# --- verdicts -------------------------------------------------------------------


class Verdict(str, enum.Enum):
    CERTIFIED_UNKNOT = "certified_unknot"
    NOT_UNKNOT = "not_unknot"
    INDETERMINATE = "indeterminate"


def remove_curls(d: ClassicalDiagram) -> ClassicalDiagram:
    """Repeatedly delete Reidemeister-I curls (an arc joining adjacent slots)."""
    crossings = list(d.crossings)
    free = d.free_loops
    changed = True
    while changed:
        changed = False
        for idx, c in enumerate(crossings):
            arcs = c.arcs
            for p in range(4):
                if arcs[p] == arcs[(p + 1) % 4]:
                    keep = arcs[(p + 2) % 4]
                    drop = arcs[(p + 3) % 4]
                    del crossings[idx]
                    if keep == drop:
                        free += 1
                    else:
                        crossings = [
                            replace(x, arcs=tuple(keep if a == drop else a for a in x.arcs))
                            for x in crossings
                        ]
                    changed = True
                    break
            if changed:
                break
    return ClassicalDiagram(crossings=tuple(crossings), gauss=(), closed=True, free_loops=free)


@dataclass(frozen=True)
class UnknotReport:
    verdict: Verdict
    determinant: int | None = None
    jones: LaurentPolynomial | None = None
    reason: str = ""


def certify_unknot(d: ClassicalDiagram, reduction_proves_unknot: bool = False) -> UnknotReport:
    """Certify only through a structural reduction; refute through invariants.

    ``reduction_proves_unknot`` lets a caller pass in an external proof such
    as a completed front-closure reduction trace.
    """
    if component_count(d) != 1:
        return UnknotReport(Verdict.NOT_UNKNOT, reason="more than one component")
    if reduction_proves_unknot:
        return UnknotReport(Verdict.CERTIFIED_UNKNOT, reason="reduction trace")
    if not remove_curls(d).crossings:
        return UnknotReport(Verdict.CERTIFIED_UNKNOT, reason="Reidemeister I reduction")
    det = determinant(d) if len(d.crossings) <= DETERMINANT_CAP else None
    if det is not None and det != 1:
        return UnknotReport(Verdict.NOT_UNKNOT, det, reason="determinant != 1")
    v = jones(d) if len(d.crossings) <= BRACKET_CAP else None
    if v is not None and not v.is_one():
        return UnknotReport(Verdict.NOT_UNKNOT, det, v, reason="Jones != 1")
    return UnknotReport(Verdict.INDETERMINATE, det, v, reason="invariants trivial")


# --- identification -------------------------------------------------------------

FINGERPRINTS = {
    "unknot": (1, "1"),
    "right trefoil": (3, "t + t^3 - t^4"),
    "left trefoil": (3, "-t^-4 + t^-3 + t^-1"),
    "figure-eight": (5, "t^-2 - t^-1 + 1 - t + t^2"),
}


def candidate_names(det: int, v: LaurentPolynomial | None) -> list[str]:
    names = []
    for name, (fdet, ftext) in FINGERPRINTS.items():
        if fdet != det:
            continue
        if v is not None and jones_from_text(ftext) != v:
            continue
        names.append(name)
    return names
