"""Brute-force ground truth on small grids."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .lattice import GridShape, LatticeError, Point, all_points_array, iterate_points, leq
from .oracle import Oracle, TableInstance, TableOracle

MONOTONE_ENUM_CAP = 9


@dataclass(frozen=True)
class MonotonicityReport:
    monotone: bool
    witness: tuple[Point, Point] | None = None

    def to_json(self) -> dict:
        if self.witness is None:
            return {"monotone": self.monotone, "witness": None}
        u, v = self.witness
        return {"monotone": self.monotone, "witness": {"u": list(u), "v": list(v)}}


def _table_of(inst, shape: GridShape | None, override: bool) -> tuple[GridShape, np.ndarray]:
    if isinstance(inst, TableInstance):
        shape = shape or inst.shape
        return shape, np.asarray(inst.table)
    if shape is not None and shape != inst.shape:
        raise LatticeError(f"shape {shape} does not match oracle shape {inst.shape}")
    return inst.shape, inst.tabulate(override)


def _cover_violations(shape: GridShape, table: np.ndarray) -> bool:
    """True if some covering pair v < v + e_i breaks monotonicity."""
    grid = table.reshape((shape.n,) * shape.k + (shape.k,))
    for axis in range(shape.k):
        lower = np.take(grid, range(shape.n - 1), axis=axis)
        upper = np.take(grid, range(1, shape.n), axis=axis)
        if (lower > upper).any():
            return True
    return False


def check_monotone(inst, shape: GridShape | None = None, override: bool = False) -> MonotonicityReport:
    """Check u <= v => f(u) <= f(v) over every comparable pair.

    Covering pairs decide the answer (the order is their transitive
    closure); the full pair scan only runs to locate the first violating
    pair in lexicographic (u, v) order.
    """
    shape, table = _table_of(inst, shape, override)
    if not _cover_violations(shape, table):
        return MonotonicityReport(True)
    pts = all_points_array(shape, override=True)
    for r in range(shape.size):
        above = (pts >= pts[r]).all(axis=1)
        above[: r + 1] = False
        bad = above & ~(table[r] <= table).all(axis=1)
        if bad.any():
            s = int(np.argmax(bad))
            return MonotonicityReport(False, (shape.unrank(r), shape.unrank(s)))
    raise AssertionError("cover check and pair scan disagree")


def fixed_points_bruteforce(inst, shape: GridShape | None = None, override: bool = False) -> set[Point]:
    shape, table = _table_of(inst, shape, override)
    pts = all_points_array(shape, override=True)
    hits = np.flatnonzero((table == pts).all(axis=1))
    return {tuple(int(c) for c in pts[r]) for r in hits}


def check_tarski_lattice(points: Iterable[Point]) -> bool:
    """Every pair has a greatest lower bound and least upper bound inside the set.

    Bounds are taken in the induced order, so they need not be the grid's
    meet and join. An empty set fails.
    """
    P = list(set(map(tuple, points)))
    if not P:
        return False
    for p, q in itertools.combinations(P, 2):
        lower = [r for r in P if leq(r, p) and leq(r, q)]
        if not any(all(leq(r, g) for r in lower) for g in lower):
            return False
        upper = [r for r in P if leq(p, r) and leq(q, r)]
        if not any(all(leq(l, r) for r in upper) for l in upper):
            return False
    return True


def enumerate_monotone_functions(shape: GridShape) -> Iterator[TableInstance]:
    """Every monotone self-map of a tiny grid, each exactly once.

    Inputs are assigned in lexicographic order, so all of v's lower
    covers are fixed when v is reached; v may take any output above the
    join of their outputs.
    """
    if shape.size > MONOTONE_ENUM_CAP:
        raise LatticeError(f"monotone enumeration is capped at n^k <= {MONOTONE_ENUM_CAP}, got {shape.size}")
    for outputs in _monotone_outputs(shape):
        yield TableInstance.from_outputs(shape, outputs)


def _monotone_outputs(shape: GridShape) -> Iterator[list[Point]]:
    pts = list(iterate_points(shape))
    strides = [shape.n ** (shape.k - 1 - i) for i in range(shape.k)]
    covers = [[r - strides[i] for i in range(shape.k) if p[i] > 0] for r, p in enumerate(pts)]
    above_cache: dict[Point, list[Point]] = {}

    def above(floor: Point) -> list[Point]:
        if floor not in above_cache:
            above_cache[floor] = [p for p in pts if leq(floor, p)]
        return above_cache[floor]

    out: list[Point] = []

    def rec(r: int) -> Iterator[list[Point]]:
        if r == len(pts):
            yield list(out)
            return
        floor = shape.bottom
        for c in covers[r]:
            floor = tuple(max(a, b) for a, b in zip(floor, out[c]))
        for val in above(floor):
            out.append(val)
            yield from rec(r + 1)
            out.pop()

    return rec(0)


def enumerate_monotone_oracles(shape: GridShape) -> Iterator[TableOracle]:
    for inst in enumerate_monotone_functions(shape):
        yield TableOracle(inst)


def is_fixed_point(oracle: Oracle, v: Point) -> bool:
    return tuple(oracle(v)) == tuple(v)
