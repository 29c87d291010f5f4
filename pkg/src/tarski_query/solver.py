"""Fixed-point search in the query model.

All solvers take an oracle, wrap it in a fresh ``CountingOracle`` and
report the exact number of probes in the returned ``SolveOutcome``.
A solver whose final probe already showed ``f(p) == p`` uses that
response as its confirmation; otherwise it spends one more probe.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .lattice import GridShape, Point, leq
from .oracle import CountingOracle, Oracle


class NonMonotoneOracle(RuntimeError):
    pass


class NotFamilyOracle(RuntimeError):
    """A response that no member of the hidden-point family could produce."""


@dataclass
class SolveOutcome:
    point: Point
    queries: int
    confirmed: bool = True
    fallback: bool = False
    trace: list[tuple[Point, Point]] | None = None


@dataclass
class IntervalState:
    """Per-coordinate bounds x <= a <= y on the hidden point."""

    x: list[int]
    y: list[int]

    @classmethod
    def initial(cls, shape: GridShape) -> "IntervalState":
        return cls([0] * shape.k, [shape.n - 1] * shape.k)

    @property
    def solved(self) -> bool:
        return self.x == self.y

    def next_query(self) -> Point:
        return tuple(xi if xi == yi else xi + 1 for xi, yi in zip(self.x, self.y))


def _outcome(q: CountingOracle, point, confirmed=True, fallback=False) -> SolveOutcome:
    return SolveOutcome(tuple(point), q.count, confirmed, fallback, q.trace)


def _resolve_shape(oracle: Oracle, shape: GridShape | None) -> GridShape:
    if shape is not None and shape != oracle.shape:
        raise ValueError(f"shape {shape} does not match oracle shape {oracle.shape}")
    return oracle.shape


# ---------------------------------------------------------------------------
# path following


def _kleene(q: CountingOracle, start: Point, up: bool, max_queries: int) -> tuple[Point, Point]:
    v = start
    while True:
        if q.count >= max_queries:
            raise NonMonotoneOracle(f"no fixed point after {max_queries} path-following queries")
        fv = q(v)
        if fv == v:
            return v, fv
        if not (leq(v, fv) if up else leq(fv, v)):
            raise NonMonotoneOracle(f"f({v}) = {fv} moves against the iteration direction")
        v = fv


def kleene_from_bottom(oracle: Oracle, shape: GridShape | None = None, trace: bool = False) -> SolveOutcome:
    """Iterate v <- f(v) from the bottom; returns the least fixed point."""
    shape = _resolve_shape(oracle, shape)
    q = CountingOracle(oracle, trace=trace)
    p, _ = _kleene(q, shape.bottom, True, shape.k * (shape.n - 1) + 1)
    return _outcome(q, p)


def kleene_from_top(oracle: Oracle, shape: GridShape | None = None, trace: bool = False) -> SolveOutcome:
    """Iterate v <- f(v) from the top; returns the greatest fixed point."""
    shape = _resolve_shape(oracle, shape)
    q = CountingOracle(oracle, trace=trace)
    p, _ = _kleene(q, shape.top, False, shape.k * (shape.n - 1) + 1)
    return _outcome(q, p)


# ---------------------------------------------------------------------------
# divide and conquer


class _SearchFailed(Exception):
    pass


def _clamp1(c: int, lo: int, hi: int) -> int:
    return lo if c < lo else hi if c > hi else c


def _dnc_search(q: CountingOracle, d: int, lo: list[int], hi: list[int]) -> tuple[Point, Point]:
    """Find p in the box with f(p)_i == p_i for all i <= d (after clamping).

    Coordinates above ``d`` are pinned (lo == hi there). The box keeps
    lo <= f(lo) and f(hi) <= hi, so a monotone f maps it into itself and
    the binary search on coordinate ``d`` cannot run dry.
    """
    while lo[d] <= hi[d]:
        m = (lo[d] + hi[d]) // 2
        slo = list(lo)
        shi = list(hi)
        slo[d] = shi[d] = m
        if d == 0:
            p = tuple(slo)
            fp = q(p)
        else:
            p, fp = _dnc_search(q, d - 1, slo, shi)
        c = _clamp1(fp[d], lo[d], hi[d])
        if c == m:
            return p, fp
        if c > m:
            lo = list(p)
            lo[d] = m + 1
        else:
            hi = list(p)
            hi[d] = m - 1
    raise _SearchFailed((lo, hi))


def dnc_fixed_point(oracle: Oracle, shape: GridShape | None = None, trace: bool = False) -> SolveOutcome:
    """Recursive binary search over the last coordinate, solving slices in between.

    Falls back to clamped path following inside the last box if the
    search fails or its answer does not check out; that only happens for
    non-monotone oracles.
    """
    shape = _resolve_shape(oracle, shape)
    q = CountingOracle(oracle, trace=trace)
    lo, hi = list(shape.bottom), list(shape.top)
    try:
        p, fp = _dnc_search(q, shape.k - 1, lo, hi)
        if fp == p:
            return _outcome(q, p)
    except _SearchFailed as exc:
        lo, hi = exc.args[0]
        if not leq(lo, hi):
            lo, hi = list(shape.bottom), list(shape.top)
    p, fp = _kleene_in_box(q, tuple(lo), tuple(hi))
    return _outcome(q, p, confirmed=fp == p, fallback=True)


def _kleene_in_box(q: CountingOracle, lo: Point, hi: Point) -> tuple[Point, Point]:
    limit = q.count + sum(h - l for l, h in zip(lo, hi)) + 1
    v = lo
    while True:
        fv = q(v)
        nxt = tuple(_clamp1(c, a, b) for c, a, b in zip(fv, lo, hi))
        if nxt == v or q.count >= limit:
            return v, fv
        v = nxt


# ---------------------------------------------------------------------------
# the O(k + n) algorithm for the hidden-point family


def solve_hidden_family(
    oracle: Oracle,
    shape: GridShape | None = None,
    trace: bool = False,
    confirm: bool = True,
    strict: bool = True,
    prefix_inference: bool = False,
) -> SolveOutcome:
    """Pin down the hidden point a coordinate interval at a time.

    Each probe sits one step above the lower bound x on every unresolved
    coordinate. A decrement at coordinate j proves a_j = x_j; no
    decrement proves a_i > x_i for every unresolved i. At most k probes
    of the first kind and n - 1 of the second.

    With ``strict`` an impossible response raises ``NotFamilyOracle``;
    otherwise the solver falls back to path following from the bottom.
    ``prefix_inference`` also raises x_i for unresolved i < j after a
    decrement at j (sound, but off to keep the analysed update rule).
    """
    shape = _resolve_shape(oracle, shape)
    q = CountingOracle(oracle, trace=trace)
    state = IntervalState.initial(shape)
    last = None
    try:
        while not state.solved:
            v = state.next_query()
            fv = q(v)
            last = (v, fv)
            dec = _family_decrement(state, v, fv)
            if dec is not None:
                state.y[dec] = state.x[dec]
                if prefix_inference:
                    for i in range(dec):
                        if state.x[i] < state.y[i]:
                            state.x[i] += 1
            else:
                for i in range(shape.k):
                    if state.x[i] < state.y[i]:
                        state.x[i] += 1
        point = tuple(state.x)
        if not confirm:
            return _outcome(q, point, confirmed=False)
        fp = last[1] if last is not None and last[0] == point else q(point)
        if fp != point:
            raise NotFamilyOracle(f"deduced hidden point {point} but f({point}) = {fp}")
        return _outcome(q, point)
    except NotFamilyOracle:
        if strict:
            raise
    p, fp = _kleene_in_box(q, shape.bottom, shape.top)
    return _outcome(q, p, confirmed=fp == p, fallback=True)


def _family_decrement(state: IntervalState, v: Point, fv: Point) -> int | None:
    dec = None
    inc = None
    for j, (vj, fj) in enumerate(zip(v, fv)):
        if fj == vj:
            continue
        resolved = state.x[j] == state.y[j]
        if resolved or abs(fj - vj) != 1:
            raise NotFamilyOracle(f"f({v}) = {fv} moves coordinate {j + 1} impossibly")
        if fj < vj:
            if dec is not None:
                raise NotFamilyOracle(f"f({v}) = {fv} decrements two coordinates")
            dec = j
        else:
            if inc is not None:
                raise NotFamilyOracle(f"f({v}) = {fv} increments two coordinates")
            inc = j
    return dec


SOLVERS: dict[str, Callable[..., SolveOutcome]] = {
    "kleene": kleene_from_bottom,
    "kleene-top": kleene_from_top,
    "dnc": dnc_fixed_point,
    "family": solve_hidden_family,
}
