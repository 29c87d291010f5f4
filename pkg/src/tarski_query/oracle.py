"""Query access to functions on the grid, with exact query accounting.

Every oracle maps a Point of its shape to a Point of the same shape.
Oracles are pure; the only mutable state lives in ``CountingOracle``.
Oracles that can evaluate the whole grid at once implement
``tabulate`` with numpy so the brute-force checks stay fast.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .lattice import (
    GridShape,
    LatticeError,
    Point,
    all_points_array,
    clamp_to_box,
    iterate_points,
    leq,
)


class InstanceFormatError(ValueError):
    """Malformed instance description; the message names the offending field."""


class Oracle:
    shape: GridShape

    def __call__(self, v: Sequence[int]) -> Point:
        raise NotImplementedError

    def tabulate(self, override: bool = False) -> np.ndarray:
        """Outputs for every grid point as an ``(n**k, k)`` array in lexicographic input order."""
        self.shape.check_budget(override)
        return np.array([self(v) for v in iterate_points(self.shape, override)], dtype=np.int64).reshape(
            -1, self.shape.k
        )


# ---------------------------------------------------------------------------
# the hidden-point family


@dataclass(frozen=True)
class HiddenPointInstance:
    shape: GridShape
    a: Point

    def __post_init__(self):
        object.__setattr__(self, "a", self.shape.point(self.a))


def eval_hidden_point(inst: HiddenPointInstance, v: Sequence[int]) -> Point:
    """Evaluate f^a at ``v``.

    Coordinate i moves one step toward a_i, down when v_i > a_i and every
    earlier coordinate satisfies v_j <= a_j, up when v_i < a_i and every
    earlier coordinate satisfies v_j >= a_j.
    """
    v = inst.shape.point(v)
    return _hidden_point(inst.a, v)


def _hidden_point(a: Point, v: Point) -> Point:
    out = list(v)
    below_ok = True  # v_j <= a_j for all j seen so far
    above_ok = True  # v_j >= a_j for all j seen so far
    for i, (vi, ai) in enumerate(zip(v, a)):
        if vi > ai:
            if below_ok:
                out[i] = vi - 1
            below_ok = False
        elif vi < ai:
            if above_ok:
                out[i] = vi + 1
            above_ok = False
        if not (below_ok or above_ok):
            break
    return tuple(out)


def hidden_point_array(a, points) -> np.ndarray:
    """Vectorized f^a(v); ``a`` and ``points`` broadcast row-wise.

    Pass one hidden point and many rows of points, or many hidden points
    (rows of ``a``) and a single point.
    """
    a = np.atleast_2d(np.asarray(a, dtype=np.int64))
    points = np.atleast_2d(np.asarray(points, dtype=np.int64))
    gt = points > a
    lt = points < a
    points = np.broadcast_to(points, gt.shape)
    # prefix conditions over j < i: exclusive cumulative "all"
    ones = np.ones((gt.shape[0], 1), dtype=bool)
    pre_le = np.concatenate([ones, np.cumprod(~gt, axis=1)[:, :-1].astype(bool)], axis=1)
    pre_ge = np.concatenate([ones, np.cumprod(~lt, axis=1)[:, :-1].astype(bool)], axis=1)
    return points - (gt & pre_le) + (lt & pre_ge)


class HiddenPointOracle(Oracle):
    def __init__(self, inst: HiddenPointInstance):
        self.instance = inst
        self.shape = inst.shape
        self.a = inst.a

    @classmethod
    def of(cls, n: int, a: Sequence[int]) -> "HiddenPointOracle":
        return cls(HiddenPointInstance(GridShape(n, len(a)), tuple(a)))

    def __call__(self, v):
        return _hidden_point(self.a, self.shape.point(v))

    def tabulate(self, override=False):
        return hidden_point_array(self.a, all_points_array(self.shape, override))

    def __repr__(self):
        return f"HiddenPointOracle(n={self.shape.n}, a={self.a})"


# ---------------------------------------------------------------------------
# explicit tables


@dataclass(frozen=True, eq=False)
class TableInstance:
    """A total function given as a dense table indexed by lexicographic rank.

    Monotonicity is not assumed.
    """

    shape: GridShape
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (self.shape.size, self.shape.k):
            raise LatticeError(f"table has shape {t.shape}, expected {(self.shape.size, self.shape.k)}")
        if t.size and (t.min() < 0 or t.max() >= self.shape.n):
            raise LatticeError("table output leaves the grid")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_function(cls, shape: GridShape, fn: Callable[[Point], Sequence[int]]) -> "TableInstance":
        return cls(shape, np.array([fn(v) for v in iterate_points(shape)], dtype=np.int64).reshape(-1, shape.k))

    @classmethod
    def from_outputs(cls, shape: GridShape, outputs: Sequence[Sequence[int]]) -> "TableInstance":
        return cls(shape, np.array(outputs, dtype=np.int64).reshape(-1, shape.k))


class TableOracle(Oracle):
    def __init__(self, inst: TableInstance):
        self.instance = inst
        self.shape = inst.shape
        pts = iterate_points(inst.shape, override=True)
        self._lookup = {p: tuple(int(c) for c in row) for p, row in zip(pts, inst.table.tolist())}

    def __call__(self, v):
        try:
            return self._lookup[tuple(v)]
        except KeyError:
            self.shape.point(v)
            raise

    def tabulate(self, override=False):
        return np.array(self.instance.table)


class FunctionOracle(Oracle):
    """Wraps a plain Python callable."""

    def __init__(self, shape: GridShape, fn: Callable[[Point], Sequence[int]], name: str = "function"):
        self.shape = shape
        self.fn = fn
        self.name = name

    def __call__(self, v):
        return tuple(self.fn(self.shape.point(v)))

    def __repr__(self):
        return f"FunctionOracle({self.name}, n={self.shape.n}, k={self.shape.k})"


def identity_oracle(shape: GridShape) -> FunctionOracle:
    return FunctionOracle(shape, lambda v: v, name="identity")


# ---------------------------------------------------------------------------
# reductions


class ClampLiftOracle(Oracle):
    """Lift a hypercube oracle to side length n via v -> inner(min(v, 1))."""

    def __init__(self, inner: Oracle, n: int):
        if inner.shape.n != 2:
            raise LatticeError(f"clamp lift needs a hypercube inner oracle, got n={inner.shape.n}")
        if n < 2:
            raise LatticeError(f"clamp lift needs n >= 2, got {n}")
        self.inner = inner
        self.shape = GridShape(n, inner.shape.k)

    def __call__(self, v):
        v = self.shape.point(v)
        return self.inner(tuple(min(c, 1) for c in v))

    def tabulate(self, override=False):
        pts = np.minimum(all_points_array(self.shape, override), 1)
        inner_table = self.inner.tabulate()
        ranks = pts @ (2 ** np.arange(self.shape.k - 1, -1, -1, dtype=np.int64))
        return inner_table[ranks]


def lift_clamp(inner: Oracle, n: int) -> ClampLiftOracle:
    return ClampLiftOracle(inner, n)


class BoxRestrictedOracle(Oracle):
    """v -> clamp_to_box(outer(v), lo, hi)."""

    def __init__(self, outer: Oracle, lo: Sequence[int], hi: Sequence[int]):
        lo = outer.shape.point(lo)
        hi = outer.shape.point(hi)
        if not leq(lo, hi):
            raise LatticeError(f"empty box: lo={lo} is not <= hi={hi}")
        self.outer = outer
        self.shape = outer.shape
        self.lo = lo
        self.hi = hi

    def __call__(self, v):
        return clamp_to_box(self.outer(v), self.lo, self.hi)

    def tabulate(self, override=False):
        return np.clip(self.outer.tabulate(override), self.lo, self.hi)


def restrict_box(outer: Oracle, lo: Sequence[int], hi: Sequence[int]) -> BoxRestrictedOracle:
    return BoxRestrictedOracle(outer, lo, hi)


# ---------------------------------------------------------------------------
# query accounting


@dataclass
class QueryCounter:
    count: int = 0


class CountingOracle(Oracle):
    """Forwards every evaluation and charges one query for it. No caching."""

    def __init__(self, inner: Oracle, counter: QueryCounter | None = None, trace: bool = False):
        self.inner = inner
        self.shape = inner.shape
        self.counter = counter if counter is not None else QueryCounter()
        self.trace: list[tuple[Point, Point]] | None = [] if trace else None

    def __call__(self, v):
        out = self.inner(v)
        self.counter.count += 1
        if self.trace is not None:
            self.trace.append((tuple(v), out))
        return out

    @property
    def count(self) -> int:
        return self.counter.count


def make_counting(oracle: Oracle, trace: bool = False) -> tuple[CountingOracle, QueryCounter]:
    wrapped = CountingOracle(oracle, trace=trace)
    return wrapped, wrapped.counter


# ---------------------------------------------------------------------------
# instance files


def _field(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise InstanceFormatError(f"{where}: missing field {key!r}")
    return obj[key]


def _int_field(obj: dict, key: str, where: str) -> int:
    val = _field(obj, key, where)
    if not isinstance(val, int) or isinstance(val, bool):
        raise InstanceFormatError(f"{where}.{key}: expected an integer, got {val!r}")
    return val


def oracle_from_json(obj: Any, where: str = "instance") -> Oracle:
    """Build an oracle from a parsed instance document."""
    if not isinstance(obj, dict):
        raise InstanceFormatError(f"{where}: expected a JSON object")
    kind = _field(obj, "kind", where)
    try:
        if kind == "hidden-point":
            n, k = _int_field(obj, "n", where), _int_field(obj, "k", where)
            a = _field(obj, "a", where)
            if not isinstance(a, list):
                raise InstanceFormatError(f"{where}.a: expected a list of integers")
            return HiddenPointOracle(HiddenPointInstance(GridShape(n, k), tuple(a)))
        if kind == "table":
            n, k = _int_field(obj, "n", where), _int_field(obj, "k", where)
            return TableOracle(_table_from_rows(GridShape(n, k), _field(obj, "rows", where), where))
        if kind == "clamp-lift":
            n = _int_field(obj, "n", where)
            inner = oracle_from_json(_field(obj, "inner", where), where + ".inner")
            return ClampLiftOracle(inner, n)
    except LatticeError as exc:
        raise InstanceFormatError(f"{where}: {exc}") from None
    raise InstanceFormatError(f"{where}.kind: unknown kind {kind!r}")


def _table_from_rows(shape: GridShape, rows: Any, where: str) -> TableInstance:
    shape.check_budget()
    if not isinstance(rows, list):
        raise InstanceFormatError(f"{where}.rows: expected a list")
    out = np.full((shape.size, shape.k), -1, dtype=np.int64)
    seen = np.zeros(shape.size, dtype=bool)
    for idx, row in enumerate(rows):
        loc = f"{where}.rows[{idx}]"
        if not isinstance(row, list) or len(row) != 2 * shape.k:
            raise InstanceFormatError(f"{loc}: expected {2 * shape.k} integers")
        try:
            v = shape.point(row[: shape.k])
            fv = shape.point(row[shape.k :])
        except (LatticeError, TypeError) as exc:
            raise InstanceFormatError(f"{loc}: {exc}") from None
        r = shape.rank(v)
        if seen[r]:
            raise InstanceFormatError(f"{loc}: input {v} listed twice")
        seen[r] = True
        out[r] = fv
    if not seen.all():
        missing = shape.unrank(int(np.argmin(seen)))
        raise InstanceFormatError(f"{where}.rows: input {missing} is missing")
    return TableInstance(shape, out)


def oracle_to_json(oracle: Oracle) -> dict:
    if isinstance(oracle, HiddenPointOracle):
        return {"kind": "hidden-point", "n": oracle.shape.n, "k": oracle.shape.k, "a": list(oracle.a)}
    if isinstance(oracle, ClampLiftOracle):
        return {"kind": "clamp-lift", "n": oracle.shape.n, "inner": oracle_to_json(oracle.inner)}
    shape = oracle.shape
    table = oracle.tabulate()
    rows = [list(v) + [int(c) for c in out] for v, out in zip(iterate_points(shape), table)]
    return {"kind": "table", "n": shape.n, "k": shape.k, "rows": rows}


def load_instance(path) -> Oracle:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return oracle_from_json(doc, where=str(path))
