"""The grid lattice {0, ..., n-1}^k under the componentwise order.

Points are plain tuples of ints. ``GridShape`` owns validation and the
exhaustive-enumeration budget.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

Point = tuple[int, ...]

EXHAUSTIVE_BUDGET = 2**24


class LatticeError(ValueError):
    """Invalid point, shape mismatch, or malformed box."""


class BudgetExceeded(LatticeError):
    """An exhaustive operation was asked to enumerate too many points."""


@dataclass(frozen=True)
class GridShape:
    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise LatticeError(f"n and k must be integers, got n={self.n!r}, k={self.k!r}")
        if self.n < 1 or self.k < 1:
            raise LatticeError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")

    @property
    def size(self) -> int:
        return self.n**self.k

    @property
    def bottom(self) -> Point:
        return (0,) * self.k

    @property
    def top(self) -> Point:
        return (self.n - 1,) * self.k

    def point(self, coords: Sequence[int]) -> Point:
        """Validate ``coords`` against this shape and return them as a Point."""
        p = tuple(int(c) for c in coords)
        if len(p) != self.k:
            raise LatticeError(f"point {p} has {len(p)} coordinates, shape has k={self.k}")
        for c in p:
            if c < 0 or c >= self.n:
                raise LatticeError(f"point {p} leaves [0, {self.n - 1}]")
        return p

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == self.k and all(0 <= c < self.n for c in v)

    def check_budget(self, override: bool = False, budget: int = EXHAUSTIVE_BUDGET) -> None:
        if not override and self.size > budget:
            raise BudgetExceeded(
                f"n^k = {self.n}^{self.k} exceeds the exhaustive budget of {budget} points"
            )

    def rank(self, v: Sequence[int]) -> int:
        """Lexicographic rank of ``v`` (the index used by dense tables)."""
        r = 0
        for c in v:
            r = r * self.n + c
        return r

    def unrank(self, r: int) -> Point:
        coords = []
        for _ in range(self.k):
            r, c = divmod(r, self.n)
            coords.append(c)
        return tuple(reversed(coords))


def _same_length(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise LatticeError(f"shape mismatch: {tuple(u)} vs {tuple(v)}")


def leq(u: Sequence[int], v: Sequence[int]) -> bool:
    _same_length(u, v)
    return all(a <= b for a, b in zip(u, v))


def meet(u: Sequence[int], v: Sequence[int]) -> Point:
    _same_length(u, v)
    return tuple(min(a, b) for a, b in zip(u, v))


def join(u: Sequence[int], v: Sequence[int]) -> Point:
    _same_length(u, v)
    return tuple(max(a, b) for a, b in zip(u, v))


def clamp_to_box(v: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> Point:
    """Componentwise median of ``lo``, ``v``, ``hi``."""
    _same_length(v, lo)
    _same_length(lo, hi)
    if not leq(lo, hi):
        raise LatticeError(f"empty box: lo={tuple(lo)} is not <= hi={tuple(hi)}")
    return tuple(min(max(c, a), b) for c, a, b in zip(v, lo, hi))


def iterate_points(shape: GridShape, override: bool = False) -> Iterator[Point]:
    """All points of the grid, in lexicographic order."""
    shape.check_budget(override)
    return itertools.product(range(shape.n), repeat=shape.k)


def all_points_array(shape: GridShape, override: bool = False) -> np.ndarray:
    """The grid as an ``(n**k, k)`` int array; row ``r`` is ``shape.unrank(r)``."""
    shape.check_budget(override)
    grids = np.indices((shape.n,) * shape.k).reshape(shape.k, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def parse_point(text: str) -> Point:
    """Parse the comma-separated text form, e.g. ``"2,4"``."""
    parts = [s.strip() for s in text.split(",")]
    try:
        return tuple(int(s) for s in parts)
    except ValueError:
        raise LatticeError(f"cannot parse point {text!r}; expected comma-separated integers") from None


def format_point(v: Sequence[int]) -> str:
    return ",".join(str(c) for c in v)
