"""Exhaustive scans over petal permutations.

Permutations are canonicalised by rotating the top strand to position 1,
so a scan over ``n`` petals visits ``(n - 1)!`` permutations.  Work is split
by the value of ``h(2)`` and merged in task order, which keeps every report
independent of the worker count.
"""
from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable

import numpy as np

from .errors import EvenPetalCount, TooLarge, TooSmall
from .expansion import FROZEN_CONVENTION, expand, multicrossing_sign_sum
from .diagram import writhe
from .geometry import crossing_height_check, realize_polyline, recover_z_profile, turning_number
from .petal_core import (
    PetalPermutation,
    canonical_twists,
    lambda_family,
    rotation_number,
    sigma_sum,
    sigma_sum_bound,
    tb_upper_bound,
    thurston_bennequin,
)

__all__ = [
    "SearchReport",
    "exhaustive_scan",
    "lambda_audit",
    "square_property_scan",
    "SquareReport",
    "ConformanceReport",
    "oracle_conformance",
    "canonical_permutations",
    "worker_count",
    "EXHAUSTIVE_CAP",
    "LAMBDA_CAP",
    "SQUARE_EXHAUSTIVE_CAP",
    "CONFORMANCE_CAP",
]

EXHAUSTIVE_CAP = 11
LAMBDA_CAP = 15
SQUARE_EXHAUSTIVE_CAP = 9
CONFORMANCE_CAP = 7
MODES = ("bound_check", "histogram", "maximizers")


def worker_count() -> int:
    raw = os.environ.get("PETAL_THREADS", "")
    try:
        k = int(raw)
    except ValueError:
        k = os.cpu_count() or 1
    return max(1, k)


def _run(fn, tasks: list) -> list:
    """Map ``fn`` over ``tasks``; results come back in task order."""
    workers = min(worker_count(), len(tasks))
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _check_odd(n: int, lo: int = 3) -> None:
    if n % 2 == 0:
        raise EvenPetalCount(f"n must be odd, got {n}")
    if n < lo:
        raise TooSmall(f"n must be at least {lo}, got {n}")


def _block(n: int, second: int) -> np.ndarray:
    """All canonical permutations with ``h(1) = 1`` and ``h(2) = second``."""
    rest = [v for v in range(2, n + 1) if v != second]
    count = math.factorial(len(rest))
    tail = np.fromiter(
        (v for p in permutations(rest) for v in p), dtype=np.int8, count=count * len(rest)
    ).reshape(count, len(rest))
    head = np.empty((count, 2), dtype=np.int8)
    head[:, 0] = 1
    head[:, 1] = second
    return np.hstack([head, tail])


def canonical_permutations(n: int) -> np.ndarray:
    """Every permutation with ``h(1) = 1`` as an int8 array, lexicographic order."""
    if n == 1:
        return np.ones((1, 1), dtype=np.int8)
    return np.vstack([_block(n, s) for s in range(2, n + 1)])


def _sigma_matrix(perms: np.ndarray) -> np.ndarray:
    """``S[:, i, j]`` = sigma of strands ``i < j`` (0-based), zero elsewhere."""
    n = perms.shape[1]
    above = perms[:, :, None] > perms[:, None, :]
    idx = np.arange(n)
    same = ((idx[:, None] + idx[None, :]) % 2 == 0)[None, :, :]
    s = np.where(above == same, 1, -1).astype(np.int8)
    return s * np.triu(np.ones((n, n), dtype=np.int8), 1)[None, :, :]


def _sigma_sums(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    total = np.zeros(perms.shape[0], dtype=np.int32)
    for i in range(n):
        for j in range(i + 1, n):
            above = perms[:, i] > perms[:, j]
            total += np.where(above == ((i + j) % 2 == 0), 1, -1).astype(np.int32)
    return total


def _twist_counts(perms: np.ndarray) -> np.ndarray:
    if perms.shape[1] == 1:
        return np.ones(perms.shape[0], dtype=np.int32)
    return (perms < np.roll(perms, -1, axis=1)).sum(axis=1).astype(np.int32)


# --- exhaustive scan ---------------------------------------------------------------


@dataclass
class _Partial:
    scanned: int
    max_sigma: int
    max_tb: int
    argmax: list
    histogram: dict
    parity_ok: int


def _scan_block(task: tuple[int, int]) -> _Partial:
    n, second = task
    perms = _block(n, second)
    s = _sigma_sums(perms)
    k = _twist_counts(perms)
    tb = s - k
    rot = (n + 1) // 2 - k
    top = int(tb.max())
    argmax = [tuple(int(v) for v in row) for row in perms[tb == top]]
    values, counts = np.unique(tb, return_counts=True)
    return _Partial(
        scanned=len(perms),
        max_sigma=int(s.max()),
        max_tb=top,
        argmax=argmax,
        histogram={int(v): int(c) for v, c in zip(values, counts)},
        parity_ok=int(((tb + rot) % 2 != 0).sum()),
    )


@dataclass
class SearchReport:
    n: int
    mode: str
    permutations_scanned: int
    max_sigma_sum: int
    max_tb: int
    argmax: list
    bound: int
    sigma_bound: int
    bound_satisfied: bool
    histogram: dict
    lambda_family_row: dict
    tb_rot_odd: bool
    runtime: float = field(default=0.0, compare=False)

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "n": self.n,
            "mode": self.mode,
            "permutations_scanned": self.permutations_scanned,
            "max_sigma_sum": self.max_sigma_sum,
            "max_tb": self.max_tb,
            "bound": self.bound,
            "sigma_bound": self.sigma_bound,
            "bound_satisfied": self.bound_satisfied,
            "tb_rot_odd": self.tb_rot_odd,
            "lambda_family_row": self.lambda_family_row,
        }
        if self.mode == "histogram":
            out["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        if self.mode == "maximizers":
            out["argmax"] = [",".join(map(str, p)) for p in self.argmax]
        if include_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out


def _lambda_row(n: int) -> dict:
    m = (n - 1) // 2
    d = canonical_twists(lambda_family(n))
    tb = thurston_bennequin(d).tb
    return {"claimed_tb": m * m - m, "computed_tb": tb, "match": tb == m * m - m}


def exhaustive_scan(n: int, mode: str = "bound_check") -> SearchReport:
    """Visit all ``(n - 1)!`` canonical permutations and aggregate tb data."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    _check_odd(n)
    if n > EXHAUSTIVE_CAP:
        raise TooLarge(f"exhaustive scans stop at n = {EXHAUSTIVE_CAP}, got {n}")
    t0 = time.perf_counter()
    parts = _run(_scan_block, [(n, s) for s in range(2, n + 1)])
    max_sigma = max(p.max_sigma for p in parts)
    max_tb = max(p.max_tb for p in parts)
    hist: dict[int, int] = {}
    for p in parts:
        for v, c in p.histogram.items():
            hist[v] = hist.get(v, 0) + c
    scanned = sum(p.scanned for p in parts)
    argmax = sorted(a for p in parts if p.max_tb == max_tb for a in p.argmax)
    return SearchReport(
        n=n,
        mode=mode,
        permutations_scanned=scanned,
        max_sigma_sum=max_sigma,
        max_tb=max_tb,
        argmax=argmax,
        bound=tb_upper_bound(n),
        sigma_bound=sigma_sum_bound(n),
        bound_satisfied=max_sigma <= sigma_sum_bound(n) and max_tb <= tb_upper_bound(n),
        histogram=dict(sorted(hist.items())),
        lambda_family_row=_lambda_row(n),
        tb_rot_odd=sum(p.parity_ok for p in parts) == scanned,
        runtime=time.perf_counter() - t0,
    )


def three_petal_check() -> dict:
    """tb + |rot| <= -1 and unknottedness for both 3-petal diagrams."""
    from .invariants import determinant, jones

    rows = []
    for hs in ((1, 2, 3), (1, 3, 2)):
        d = canonical_twists(PetalPermutation(hs))
        tb = thurston_bennequin(d).tb
        rot = rotation_number(d)
        e = expand(d)
        rows.append(
            {
                "perm": ",".join(map(str, hs)),
                "tb": tb,
                "rot": rot,
                "bennequin_ok": tb + abs(rot) <= -1,
                "determinant": determinant(e),
                "jones": str(jones(e)),
            }
        )
    return {"rows": rows, "all_ok": all(r["bennequin_ok"] and r["determinant"] == 1 and r["jones"] == "1" for r in rows)}


# --- the interleaved family ----------------------------------------------------------


def lambda_audit(n_max: int, compare_max_up_to: int = 9) -> list[dict]:
    """Claimed versus computed tb for the interleaved family, n = 3, 5, ..., n_max.

    Rows up to ``compare_max_up_to`` also carry the exhaustive maximum tb, so
    whether the family is extremal can be read off as data.
    """
    _check_odd(n_max)
    if n_max > LAMBDA_CAP:
        raise TooLarge(f"audit stops at n = {LAMBDA_CAP}, got {n_max}")
    rows = []
    for n in range(3, n_max + 1, 2):
        m = (n - 1) // 2
        d = canonical_twists(lambda_family(n))
        r = thurston_bennequin(d)
        row = {
            "n": n,
            "perm": str(d.perm),
            "k": r.k,
            "k_expected": m,
            "k_ok": r.k == m,
            "sigma_sum": r.sigma_sum,
            "claimed_tb": m * m - m,
            "computed_tb": r.tb,
            "match": r.tb == m * m - m,
            "expansion_writhe": writhe(expand(d)),
        }
        row["writhe_agrees"] = row["expansion_writhe"] == r.tb
        if n <= min(compare_max_up_to, EXHAUSTIVE_CAP):
            best = exhaustive_scan(n).max_tb
            row["exhaustive_max_tb"] = best
            row["family_is_maximal"] = r.tb == best
        rows.append(row)
    for col in ("claimed_tb", "computed_tb"):
        inc = all(b[col] > a[col] for a, b in zip(rows, rows[1:]))
        for row in rows:
            row[f"{col}_strictly_increasing"] = inc
    return rows


# --- square lemma ------------------------------------------------------------------


def tested_blocks(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Pair blocks that partition all strand pairs, each holding a negative sign.

    Strands are grouped as ``{1}, {2, 3}, {4, 5}, ...``.  Each pair of
    two-element groups gives a 2x2 square, and each two-element group
    together with strand 1 gives a triangle of three pairs.
    """
    m = (n - 1) // 2
    groups = [(2 * a, 2 * a + 1) for a in range(1, m + 1)]
    blocks = []
    for a in range(m):
        g = groups[a]
        blocks.append(((1, g[0]), (1, g[1]), g))
        for b in range(a + 1, m):
            h = groups[b]
            blocks.append(tuple((i, j) for i in g for j in h))
    return blocks


def genuine_squares(n: int) -> list[tuple[int, int]]:
    """Corners ``(i, j)`` of squares ``{i, i+1} x {j, j+1}`` with ``j > i + 1``."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n)]


@dataclass
class SquareReport:
    n: int
    exhaustive: bool
    permutations_checked: int
    square_violations: list
    block_violations: list
    tested_square_count: int
    expected_count: int
    count_ok: bool
    pairs_covered: bool
    implied_bound: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "exhaustive": self.exhaustive,
            "permutations_checked": self.permutations_checked,
            "violations": len(self.square_violations) + len(self.block_violations),
            "square_violations": self.square_violations[:10],
            "block_violations": self.block_violations[:10],
            "tested_square_count": self.tested_square_count,
            "expected_count": self.expected_count,
            "count_ok": self.count_ok,
            "pairs_covered": self.pairs_covered,
            "implied_sigma_bound": self.implied_bound,
        }


def _square_block(task) -> tuple[int, list, list]:
    n, perms = task
    s = _sigma_matrix(perms)
    sq_bad, blk_bad = [], []
    for i, j in genuine_squares(n):
        vals = s[:, i - 1, j - 1] + s[:, i - 1, j] + s[:, i, j - 1] + s[:, i, j]
        for r in np.nonzero(vals == 4)[0]:
            sq_bad.append({"perm": ",".join(map(str, perms[r])), "square": [i, j]})
    for blk in tested_blocks(n):
        vals = sum(s[:, i - 1, j - 1].astype(np.int32) for i, j in blk)
        for r in np.nonzero(vals == len(blk))[0]:
            blk_bad.append({"perm": ",".join(map(str, perms[r])), "block": [list(p) for p in blk]})
    return len(perms), sq_bad, blk_bad


def square_property_scan(n: int, samples: int = 20000, seed: int = 0) -> SquareReport:
    """Check that no square of sign table entries is all positive.

    Exhaustive for ``n <= 9``; above that a seeded random sample is used.
    """
    _check_odd(n)
    blocks = tested_blocks(n)
    covered = sorted(p for b in blocks for p in b) == [
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
    ]
    exhaustive = n <= SQUARE_EXHAUSTIVE_CAP
    if exhaustive:
        tasks = [(n, _block(n, s)) for s in range(2, n + 1)]
    else:
        rng = random.Random(seed)
        rows = []
        for _ in range(samples):
            rest = list(range(2, n + 1))
            rng.shuffle(rest)
            rows.append([1] + rest)
        arr = np.array(rows, dtype=np.int8)
        tasks = [(n, arr[i:i + 4096]) for i in range(0, len(arr), 4096)]
    parts = _run(_square_block, tasks)
    expected = (n + 1) * (n - 1) // 8
    return SquareReport(
        n=n,
        exhaustive=exhaustive,
        permutations_checked=sum(p[0] for p in parts),
        square_violations=[v for p in parts for v in p[1]],
        block_violations=[v for p in parts for v in p[2]],
        tested_square_count=len(blocks),
        expected_count=expected,
        count_ok=len(blocks) == expected,
        pairs_covered=covered,
        implied_bound=n * (n - 1) // 2 - 2 * len(blocks),
    )


# --- oracle conformance ------------------------------------------------------------


@dataclass
class ConformanceReport:
    n_max: int
    permutations: int
    convention: str
    global_flip: str
    writhe_agreement: float
    raw_writhe_agreement: float
    rotation_agreement: float
    height_agreement: float
    max_relative_defect: float
    witnesses: list
    per_n: dict
    runtime: float = field(default=0.0, compare=False)

    @property
    def all_agree(self) -> bool:
        return self.writhe_agreement == self.rotation_agreement == self.height_agreement == 100.0

    def to_dict(self, include_runtime: bool = False) -> dict:
        out = {
            "n_max": self.n_max,
            "permutations": self.permutations,
            "convention": self.convention,
            "global_flip": self.global_flip,
            "sigma_vs_writhe_pct": self.writhe_agreement,
            "sigma_vs_raw_writhe_pct": self.raw_writhe_agreement,
            "rot_vs_turning_pct": self.rotation_agreement,
            "height_check_pct": self.height_agreement,
            "max_relative_z_defect": self.max_relative_defect,
            "per_n": self.per_n,
            "all_agree": self.all_agree,
            "witnesses": self.witnesses[:20],
        }
        if include_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out


def _conform_one(task) -> dict:
    heights, sigma = task
    perm = PetalPermutation(heights)
    d = canonical_twists(perm)
    s = sigma(perm)
    std = multicrossing_sign_sum(perm, FROZEN_CONVENTION)
    raw = multicrossing_sign_sum(perm, "mirror")
    tb = s - d.k
    w = writhe(expand(d, FROZEN_CONVENTION))
    poly = realize_polyline(d, 16)
    prof = recover_z_profile(poly)
    check = crossing_height_check(d, poly, prof)
    turn = turning_number(poly)
    return {
        "perm": str(perm),
        "writhe_ok": s == std and w == tb,
        "raw_ok": s == raw,
        "rot_ok": turn == rotation_number(d),
        "height_ok": check.passed and prof.relative_defect <= 1e-9,
        "defect": prof.relative_defect,
        "sigma": s,
        "sign_sum": std,
        "turning": turn,
        "observed_order": list(check.observed),
    }


def _conform_chunk(task) -> list[dict]:
    rows, sigma = task
    return [_conform_one((tuple(int(v) for v in r), sigma)) for r in rows]


def oracle_conformance(n_max: int, sigma: Callable[[PetalPermutation], int] | None = None) -> ConformanceReport:
    """Compare the closed-form invariants against the expansion and geometry oracles.

    ``sigma`` replaces the closed-form sign sum, which is how a fault is
    injected.  It must be picklable when more than one worker is used.
    """
    _check_odd(n_max)
    if n_max > CONFORMANCE_CAP:
        raise TooLarge(f"conformance stops at n = {CONFORMANCE_CAP}, got {n_max}")
    sigma = sigma or sigma_sum
    t0 = time.perf_counter()
    tasks = []
    for n in range(3, n_max + 1, 2):
        perms = canonical_permutations(n)
        for i in range(0, len(perms), 120):
            tasks.append((perms[i:i + 120], sigma))
    rows = [r for chunk in _run(_conform_chunk, tasks) for r in chunk]
    total = len(rows)

    def pct(key):
        return round(100.0 * sum(r[key] for r in rows) / total, 4) if total else 100.0

    per_n: dict[str, dict] = {}
    for r in rows:
        n = str(r["perm"].count(",") + 1)
        slot = per_n.setdefault(n, {"permutations": 0, "agree": 0})
        slot["permutations"] += 1
        slot["agree"] += r["writhe_ok"] and r["rot_ok"] and r["height_ok"]
    witnesses = [
        {k: r[k] for k in ("perm", "sigma", "sign_sum", "turning", "observed_order", "writhe_ok", "rot_ok", "height_ok")}
        for r in rows
        if not (r["writhe_ok"] and r["rot_ok"] and r["height_ok"])
    ]
    return ConformanceReport(
        n_max=n_max,
        permutations=total,
        convention=FROZEN_CONVENTION,
        global_flip="plane reflected (y -> -y) before reading crossing signs",
        writhe_agreement=pct("writhe_ok"),
        raw_writhe_agreement=pct("raw_ok"),
        rotation_agreement=pct("rot_ok"),
        height_agreement=pct("height_ok"),
        max_relative_defect=max((r["defect"] for r in rows), default=0.0),
        witnesses=witnesses,
        per_n=per_n,
        runtime=time.perf_counter() - t0,
    )
