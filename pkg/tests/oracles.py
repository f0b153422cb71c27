"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import sympy

A = sympy.Symbol("A")
t = sympy.Symbol("t")


def sigma_table(heights):
    """1-based sign table straight from the definition."""
    n = len(heights)
    h = {i + 1: v for i, v in enumerate(heights)}
    table = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            i_higher_rank = h[i] > h[j]
            table[(i, j)] = 1 if i_higher_rank == ((i + j) % 2 == 0) else -1
    return table


def tb_rot(heights):
    n = len(heights)
    if n == 1:
        k = 1
    else:
        k = sum(1 for p in range(n) if heights[p] < heights[(p + 1) % n])
    return sum(sigma_table(heights).values()) - k, (n + 1) // 2 - k


def naive_bracket(terms):
    """Kauffman bracket by summing over all 2^c states (sympy expression in A)."""
    total = 0
    for state in itertools.product((0, 1), repeat=len(terms)):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        a_count = 0
        for s, (a, b, c, d) in zip(state, terms):
            for arc in (a, b, c, d):
                find(arc)
            if s == 0:
                a_count += 1
                union(a, b)
                union(c, d)
            else:
                union(a, d)
                union(b, c)
        loops = len({find(x) for x in list(parent)})
        total += A ** (a_count - (len(terms) - a_count)) * (-A**2 - A**-2) ** (loops - 1)
    return sympy.expand(total)


def naive_jones(terms, writhe):
    """Jones polynomial as a sympy expression in t (integer powers expected)."""
    f = sympy.expand((-A**3) ** (-writhe) * naive_bracket(terms))
    return sympy.expand(f.subs(A, t ** sympy.Rational(-1, 4)))


def pd_terms(text):
    import re

    return [tuple(int(v) for v in m) for m in re.findall(r"X\[(\d+),(\d+),(\d+),(\d+)\]", text)]


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def brute_noncrossing_matchings(n):
    """Non-crossing perfect matchings of 0..2n-1 by brute force over all matchings."""

    def all_matchings(points):
        if not points:
            yield ()
            return
        a = points[0]
        for k in range(1, len(points)):
            rest = points[1:k] + points[k + 1:]
            for m in all_matchings(rest):
                yield ((a, points[k]),) + m

    out = []
    for m in all_matchings(list(range(2 * n))):
        if not any(a < c < b < d for a, b in m for c, d in m):
            out.append(m)
    return out


def cycle_components(n, pairs):
    """Components of (strand i -> n+1-i) together with closure pairs, via permutation cycles.

    Endpoints are cyclic positions: L_i = i - 1, R_i = 2n - i.
    """
    strand = {}
    for i in range(1, n + 1):
        a, b = i - 1, 2 * n - (n + 1 - i)
        strand[a], strand[b] = b, a
    arc = {}
    for a, b in pairs:
        arc[a], arc[b] = b, a
    perm = {x: arc[strand[x]] for x in strand}
    seen, cycles = set(), 0
    for x in perm:
        if x in seen:
            continue
        cycles += 1
        while x not in seen:
            seen.add(x)
            x = perm[x]
    # every component shows up once per direction of travel
    return cycles // 2


def exact_shoelace(points):
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2
