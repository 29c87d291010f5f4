"""Bookkeeping behind the lower-bound arguments.

On the hypercube, a query v splits the coordinates by their bit. Among
the positions where v holds bit b, the response reveals the first one
whose hidden bit differs (it gets flipped), and with it every earlier
position of the same bit. ``KnowledgeState`` tracks exactly those
revealed bits. Coordinate indices are 1-based throughout this module.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .lattice import BudgetExceeded, GridShape, Point, all_points_array
from .oracle import HiddenPointOracle, hidden_point_array
from .solver import SOLVERS

CONSISTENCY_CAP_K = 12


class NotFamilyResponse(ValueError):
    pass


class InconsistentHistory(ValueError):
    pass


def _check_cube(v: Sequence[int], response: Sequence[int]) -> None:
    if len(v) != len(response):
        raise ValueError(f"query {tuple(v)} and response {tuple(response)} differ in length")
    for c in itertools.chain(v, response):
        if c not in (0, 1):
            raise ValueError(f"not a hypercube point: {tuple(v)} -> {tuple(response)}")


def c_index(v: Sequence[int], response: Sequence[int], b: int) -> int | None:
    """The index i with v_i = b flipped to 1 - b by the response, or None."""
    _check_cube(v, response)
    flipped = [i + 1 for i, (x, y) in enumerate(zip(v, response)) if x == b and y == 1 - b]
    if len(flipped) > 1:
        raise NotFamilyResponse(f"response flips several {b}-bits: {flipped}")
    return flipped[0] if flipped else None


@dataclass(frozen=True)
class KnowledgeState:
    k: int
    known: Mapping[int, int] = field(default_factory=dict)

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(self.known)

    @property
    def complete(self) -> bool:
        return len(self.known) == self.k

    def __len__(self):
        return len(self.known)


def delta_set(state: KnowledgeState, v: Sequence[int], response: Sequence[int], b: int) -> set[int]:
    c = c_index(v, response, b)
    cutoff = state.k if c is None else c
    return {i for i in range(1, cutoff + 1) if v[i - 1] == b and i not in state.known}


def _implied_bits(v: Sequence[int], response: Sequence[int], b: int) -> dict[int, int]:
    c = c_index(v, response, b)
    cutoff = len(v) if c is None else c
    return {i: (1 - b if i == c else b) for i in range(1, cutoff + 1) if v[i - 1] == b}


def update_knowledge(state: KnowledgeState, v: Sequence[int], response: Sequence[int]) -> KnowledgeState:
    if len(v) != state.k:
        raise ValueError(f"query has {len(v)} coordinates, state has k={state.k}")
    known = dict(state.known)
    for b in (0, 1):
        for i, bit in _implied_bits(v, response, b).items():
            if known.setdefault(i, bit) != bit:
                raise InconsistentHistory(f"coordinate {i} was known as {known[i]}, response implies {bit}")
    return KnowledgeState(state.k, known)


def consistent_hidden_points(k: int, history: Sequence[tuple[Point, Point]]) -> np.ndarray:
    """All a in {0,1}^k whose f^a reproduces every (query, response) pair."""
    if k > CONSISTENCY_CAP_K:
        raise BudgetExceeded(f"consistency enumeration is capped at k <= {CONSISTENCY_CAP_K}")
    cands = all_points_array(GridShape(2, k))
    for v, resp in history:
        out = hidden_point_array(cands, v)
        cands = cands[(out == np.asarray(resp)).all(axis=1)]
    return cands


# ---------------------------------------------------------------------------
# query strategies
#
# A strategy gets (state, step, last_response, rng) and returns the next
# hypercube query. ``step`` counts from 1; ``last_response`` is None on
# the first step.

Strategy = Callable[[KnowledgeState, int, "Point | None", np.random.Generator], Point]


def uniform_random(state, step, last_response, rng):
    """Known coordinates pinned to their value, the rest uniform bits."""
    bits = rng.integers(0, 2, size=state.k)
    return tuple(state.known.get(i + 1, int(bits[i])) for i in range(state.k))


def all_zeros_then_flip(state, step, last_response, rng):
    """Unknown coordinates all 0 on odd steps, all 1 on even steps."""
    fill = 0 if step % 2 == 1 else 1
    return tuple(state.known.get(i + 1, fill) for i in range(state.k))


def path_follow(state, step, last_response, rng):
    """Start at the bottom, then query each response in turn."""
    return (0,) * state.k if last_response is None else tuple(last_response)


def replay(queries: Sequence[Point]) -> Strategy:
    def strategy(state, step, last_response, rng):
        if step > len(queries):
            raise StopIteration
        return tuple(queries[step - 1])

    return strategy


STRATEGIES: dict[str, Strategy] = {
    "uniform-random": uniform_random,
    "all-zeros-then-flip": all_zeros_then_flip,
    "path-follow": path_follow,
}


# ---------------------------------------------------------------------------
# information gain


@dataclass(frozen=True)
class StepRecord:
    trial: int
    step: int
    gain: int
    delta0: int
    delta1: int


@dataclass
class GainStats:
    k: int
    records: list[StepRecord] = field(default_factory=list)
    incomplete_trials: int = 0

    @property
    def gains(self) -> list[int]:
        return [r.gain for r in self.records]

    @property
    def mean_gain(self) -> float:
        return float(np.mean(self.gains)) if self.records else 0.0

    @property
    def max_gain(self) -> int:
        return max(self.gains, default=0)

    def delta_sizes(self) -> np.ndarray:
        """Pooled |Delta_t(b)| samples, both bits, one per (step, b)."""
        return np.array([d for r in self.records for d in (r.delta0, r.delta1)], dtype=np.int64)

    def tail_frequency(self, C: int) -> float:
        sizes = self.delta_sizes()
        return float((sizes > C).mean()) if sizes.size else 0.0

    def tail_table(self, max_c: int = 8) -> list[dict]:
        """Empirical Pr[|Delta| > C] beside 2^-C and the binomial standard error at 2^-C."""
        sizes = self.delta_sizes()
        rows = []
        for C in range(max_c + 1):
            bound = 2.0**-C
            se = math.sqrt(bound * (1 - bound) / sizes.size) if sizes.size else 0.0
            rows.append({"C": C, "freq": float((sizes > C).mean()) if sizes.size else 0.0, "bound": bound, "se": se})
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "step", "gain", "delta0", "delta1"])
        for r in self.records:
            w.writerow([r.trial, r.step, r.gain, r.delta0, r.delta1])
        return buf.getvalue()


def run_knowledge_trace(a: Sequence[int], strategy: Strategy, rng=None, max_steps: int | None = None):
    """Play ``strategy`` against f^a until every bit of a is known.

    Returns the list of (query, response, state_after, delta0, delta1).
    """
    k = len(a)
    oracle = HiddenPointOracle.of(2, a)
    rng = rng if rng is not None else np.random.default_rng(0)
    max_steps = max_steps if max_steps is not None else 4 * k + 64
    state = KnowledgeState(k)
    last = None
    steps = []
    for step in range(1, max_steps + 1):
        if state.complete:
            break
        try:
            v = strategy(state, step, last, rng)
        except StopIteration:
            break
        resp = oracle(v)
        d0 = delta_set(state, v, resp, 0)
        d1 = delta_set(state, v, resp, 1)
        state = update_knowledge(state, v, resp)
        steps.append((v, resp, state, len(d0), len(d1)))
        last = resp
    return steps


def simulate_info_gain(
    strategy: Strategy | str, k: int, trials: int, seed: int, hidden: Sequence[int] | None = None
) -> GainStats:
    """Uniform hidden points, one knowledge trace per trial.

    Trial t draws a and all strategy randomness from ``default_rng(seed + t)``.
    ``hidden`` fixes a for every trial instead (replaying a known trace).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if isinstance(strategy, str):
        strategy = STRATEGIES[strategy]
    stats = GainStats(k)
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        a = tuple(int(b) for b in rng.integers(0, 2, size=k))
        if hidden is not None:
            a = tuple(hidden)
        prev = 0
        steps = run_knowledge_trace(a, strategy, rng)
        for s, (_, _, state, d0, d1) in enumerate(steps, start=1):
            stats.records.append(StepRecord(t, s, len(state) - prev, d0, d1))
            prev = len(state)
        if prev < k:
            stats.incomplete_trials += 1
    return stats


# ---------------------------------------------------------------------------
# fan-out and averaged query counts


def enumerate_Qv(shape: GridShape, v: Sequence[int], override: bool = False) -> set[Point]:
    """Every response f^a(v) can take as a ranges over the grid."""
    v = shape.point(v)
    out = hidden_point_array(all_points_array(shape, override), v)
    return {tuple(int(c) for c in row) for row in np.unique(out, axis=0)}


def leaf_depth_bound(n: int, k: int, success: float = 0.8) -> float:
    """Average leaf depth forced on a decision tree with fan-out (k+1)^2 and success * n^k leaves."""
    return (math.log2(success) + k * math.log2(n)) / (2 * math.log2(k + 1)) - 1


@dataclass
class YaoResult:
    solver: str
    mean_queries: float
    max_queries: int
    instances: int
    failures: list[Point]


def yao_average_queries(
    solver: str,
    shape: GridShape,
    trials: int | None = None,
    seed: int | None = None,
    instances: Sequence[Sequence[int]] | None = None,
    override: bool = False,
) -> YaoResult:
    """Mean query count of ``solver`` over hidden points.

    Exhaustive over the grid by default; ``trials`` and ``seed`` sample
    uniform hidden points instead (instance t from ``default_rng(seed + t)``);
    ``instances`` gives them explicitly.
    """
    fn = SOLVERS[solver]
    if instances is None:
        if trials is None:
            shape.check_budget(override)
            instances = [tuple(int(c) for c in p) for p in all_points_array(shape, override)]
        else:
            if seed is None:
                raise ValueError("sampled mode needs a seed")
            instances = [sample_hidden_point(shape, seed, t) for t in range(trials)]
    counts = []
    failures = []
    for a in instances:
        oracle = HiddenPointOracle.of(shape.n, a)
        out = fn(oracle)
        counts.append(out.queries)
        if tuple(oracle(out.point)) != tuple(out.point):
            failures.append(tuple(a))
    return YaoResult(solver, float(np.mean(counts)), int(max(counts)), len(counts), failures)


def sample_hidden_point(shape: GridShape, seed: int, index: int) -> Point:
    rng = np.random.default_rng(seed + index)
    return tuple(int(c) for c in rng.integers(0, shape.n, size=shape.k))
